from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    orbit: int = 10**6
    terms: int = 10**6
    truth_table_n: int = 20
    canonical_n: int = 10
    automorphism_n: int = 16
    chi_box: int = 10**7

    def with_(self, **kw) -> "Caps":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_CAPS = Caps()
