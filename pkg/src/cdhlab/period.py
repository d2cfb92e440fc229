"""Hamming-weight evaluation of closures of symmetry-purified graphs, period
prediction, and the arithmetic of the main bounds.

For a purified graph with summary (l_C, t, l_0..l_{p-1}) and an input of
weight m, an orbit member is fixed by an ordered partition
(C', L'_0, ..., L'_{p-1}); if s_i ones fall in L'_i and s_C in C' its value is

    sum_j t_j * C(s_C, j) + sum_i i * s_i   (mod p).

Counting partitions per vector s = (s_0..s_{p-1}) gives s(G; r)(m).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, HypothesisError, InputError, VerificationError
from .expr import SymmetricExpression, hamming_profile
from .ff import Prime, binom_mod, is_period, multinom_mod, seq_min_period, smallest_exponent_above
from .hypergraph import (
    LabeledHypergraph,
    PurifiedSummary,
    is_symmetry_purified,
    maximal_fully_symmetric,
    purified_summary,
)


def chi_exponent(summary: PurifiedSummary) -> int:
    """Smallest K with p**K > max(sum(l), d)."""
    return smallest_exponent_above(summary.p, max(sum(summary.l), summary.d))


def _value(summary: PurifiedSummary, s_c: int, s: Sequence[int]) -> int:
    p = summary.p
    total = sum(i * si for i, si in enumerate(s))
    for j, tj in enumerate(summary.t, start=1):
        if tj:
            total += tj * binom_mod(s_c, j, p)
    return total % p


def _check_vector(summary: PurifiedSummary, s: Sequence[int]):
    if len(s) != summary.p or any(not 0 <= si <= li for si, li in zip(s, summary.l)):
        raise InputError(f"count vector {list(s)} outside the box {list(summary.l)}")


def chi_member(summary: PurifiedSummary, r: int, m: int, s: Sequence[int]) -> bool:
    """s in chi(m): value r and 0 <= s_C(m) <= l_C."""
    _check_vector(summary, s)
    s_c = m - sum(s)
    if not 0 <= s_c <= summary.l_C:
        return False
    return _value(summary, s_c, s) == r % summary.p


def chi_prime_member(summary: PurifiedSummary, r: int, m: int, s: Sequence[int]) -> bool:
    """As chi without the range condition on s_C(m) (negative binomials read 0)."""
    _check_vector(summary, s)
    return _value(summary, m - sum(s), s) == r % summary.p


def chi_star_member(summary: PurifiedSummary, r: int, m: int, s: Sequence[int], K: int | None = None) -> bool:
    """s_C(m) is shifted by p**K, making membership depend on m mod p**k_p only."""
    _check_vector(summary, s)
    if K is None:
        K = chi_exponent(summary)
    shifted = m - sum(s) + summary.p**K
    if shifted < 0:
        raise InputError("shift p**K too small for this vector")
    return _value(summary, shifted, s) == r % summary.p


def chi_box(summary: PurifiedSummary, caps: Caps = DEFAULT_CAPS):
    size = math.prod(li + 1 for li in summary.l)
    if size > caps.chi_box:
        raise CapExceeded(f"count-vector box of size {size} exceeds cap {caps.chi_box}")
    return itertools.product(*(range(li + 1) for li in summary.l))


def count_partitions(summary: PurifiedSummary, s: Sequence[int], m: int, q: int) -> int:
    """#[s](m) = multinom(m; s, s_C) * multinom(n - m; l - s, l_C - s_C) mod q."""
    q = Prime(q)
    s = list(s)
    s_c = m - sum(s)
    first = multinom_mod(m, s + [s_c], q)
    if not first:
        return 0
    rest = [li - si for li, si in zip(summary.l, s)] + [summary.l_C - s_c]
    return first * multinom_mod(summary.n - m, rest, q) % q


_MEMBERS = {"chi": chi_member, "chi_prime": chi_prime_member, "chi_star": chi_star_member}


def eval_purified(summary: PurifiedSummary, r: int, m: int, q: int, variant: str = "chi_star",
                  caps: Caps = DEFAULT_CAPS, K: int | None = None) -> int:
    """s(G; r) at weight m as the sum of #[s](m) over the chosen chi family.

    The summary is first made maximal so that orbit members correspond to
    ordered partitions one to one.
    """
    if not 0 <= m <= summary.n:
        raise InputError(f"weight {m} outside 0..{summary.n}")
    summary = summary.maximal()
    member = _MEMBERS[variant]
    total = 0
    for s in chi_box(summary, caps):
        if variant == "chi_star":
            ok = chi_star_member(summary, r, m, s, K)
        else:
            ok = member(summary, r, m, s)
        if ok:
            total += count_partitions(summary, s, m, q)
    return total % q


def purified_profile(summary: PurifiedSummary, r: int, q: int, variant: str = "chi_star",
                     caps: Caps = DEFAULT_CAPS) -> list[int]:
    return [eval_purified(summary, r, m, q, variant, caps) for m in range(summary.n + 1)]


# -- period bounds ------------------------------------------------------------


@dataclass(frozen=True)
class PeriodBound:
    p: int
    q: int
    k_p: int
    k_q: int

    @property
    def period(self) -> int:
        return self.p**self.k_p * self.q**self.k_q

    def to_json(self) -> dict:
        return {"k_p": self.k_p, "k_q": self.k_q, "period": self.period}


def predicted_period(summary: PurifiedSummary, q: int, d: int | None = None) -> PeriodBound:
    """p**k_p * q**k_q with p**k_p > d and q**k_q > n - l_C."""
    if 2 * summary.l_C <= summary.n:
        raise HypothesisError(f"|C| = {summary.l_C} is not more than n/2 = {summary.n}/2")
    q = Prime(q)
    d = summary.d if d is None else d
    return PeriodBound(
        int(summary.p),
        int(q),
        smallest_exponent_above(summary.p, d),
        smallest_exponent_above(q, summary.n - summary.l_C),
    )


def main_period_bound(n: int, d: int, s: int, p: int, q: int) -> PeriodBound:
    """Period p**k_p * q**k_q with p**k_p > d and q**k_q > log2(s) + 1.

    q**k > log2(s) + 1 is tested exactly as 2**(q**k - 1) > s.
    """
    p, q = Prime(p), Prime(q)
    if n < 13:
        raise HypothesisError("the bound needs n >= 13")
    if not 1 <= d <= n:
        raise HypothesisError(f"need 1 <= d <= n, got d={d}")
    if s < 1:
        raise HypothesisError("size must be positive")
    if s**9 >= 2**n:
        raise HypothesisError(f"size {s} is not below 2^(n/9)")
    k_q, power = 0, 1
    while 2 ** (power - 1) <= s:
        power *= q
        k_q += 1
    return PeriodBound(int(p), int(q), smallest_exponent_above(p, d), k_q)


@dataclass(frozen=True)
class AndLowerBound:
    """Size lower bound 2**max(n/(2dpq), sqrt(n))."""

    n: int
    linear: Fraction
    dominant: str  # "linear" or "sqrt"

    @property
    def exponent(self):
        """Exact exponent: a Fraction, or an int when sqrt(n) is integral.

        For a non-square n with the root dominating, returns the string
        "sqrt(n)".
        """
        if self.dominant == "linear":
            return self.linear
        root = math.isqrt(self.n)
        return root if root * root == self.n else f"sqrt({self.n})"

    def to_json(self) -> dict:
        e = self.exponent
        if isinstance(e, Fraction):
            e = str(e) if e.denominator != 1 else e.numerator
        return {"exponent": e, "dominant": self.dominant, "linear_term": str(self.linear)}


def and_lower_bound(n: int, d: int, p: int, q: int) -> AndLowerBound:
    p, q = Prime(p), Prime(q)
    if n < max(13, 4 * p * p * q * q):
        raise HypothesisError(f"need n >= max(13, 4p^2q^2) = {max(13, 4 * p * p * q * q)}")
    if d < 1 or n - d < 0 or (n - d) ** 2 < n:
        raise HypothesisError("need 1 <= d <= n - sqrt(n)")
    lin = Fraction(n, 2 * d * p * q)
    # lin >= sqrt(n) iff lin**2 >= n
    return AndLowerBound(n, lin, "linear" if lin * lin > n else "sqrt")


# -- theorem checks -----------------------------------------------------------


@dataclass
class PeriodReport:
    profile: list
    predicted: PeriodBound
    minimal_period: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile),
            "predicted_period": self.predicted.to_json(),
            "minimal_period": self.minimal_period,
            "checks": dict(self.checks),
        }


def check_period_theorem(summary: PurifiedSummary, r: int, q: int, d: int | None = None,
                         caps: Caps = DEFAULT_CAPS, strict: bool = True) -> PeriodReport:
    """Profile via chi*, predicted period, and the shift equation.

    Also compares the chi, chi' and chi* sums and the chi* sum with K + 1.
    With ``strict`` a failed check raises VerificationError.
    """
    bound = predicted_period(summary, q, d)
    profile = purified_profile(summary, r, q, "chi_star", caps)
    checks = {"predicted_is_period": is_period(profile, bound.period)}
    checks["chi_prime_agrees"] = profile == purified_profile(summary, r, q, "chi_prime", caps)
    checks["chi_agrees"] = profile == purified_profile(summary, r, q, "chi", caps)
    k1 = chi_exponent(summary.maximal()) + 1
    checks["larger_K_agrees"] = profile == [
        eval_purified(summary, r, m, q, "chi_star", caps, K=k1) for m in range(summary.n + 1)
    ]
    report = PeriodReport(profile, bound, seq_min_period(profile), checks)
    if strict and not report.ok:
        failed = [k for k, v in checks.items() if not v]
        raise VerificationError(f"period checks failed: {failed}")
    return report


def expression_period_report(e: SymmetricExpression, caps: Caps = DEFAULT_CAPS,
                             cross_check: bool = True) -> PeriodReport:
    """Period report for a combination of closures of purified graphs.

    Each term is read off against its own maximal fully symmetric set; the
    predicted period uses the largest k_p and k_q over the terms (powers of
    the same prime, so each term period divides it).
    """
    n, p, q = e.n, e.p, e.q
    profile = [0] * (n + 1)
    k_p = k_q = 0
    for (g, r), beta in e.sterms.items():
        c = maximal_fully_symmetric(g)
        if c is None or not is_symmetry_purified(g, c):
            raise HypothesisError(f"{g!r} is not symmetry-purified with respect to a set larger than n/2")
        summary = purified_summary(g, c)
        b = predicted_period(summary, q, max(g.d, 1))
        k_p, k_q = max(k_p, b.k_p), max(k_q, b.k_q)
        for m in range(n + 1):
            profile[m] = (profile[m] + beta * eval_purified(summary, r, m, q, caps=caps)) % q
    bound = PeriodBound(int(p), int(q), k_p, k_q)
    checks = {"predicted_is_period": is_period(profile, bound.period)}
    if cross_check:
        try:
            checks["orbit_profile_agrees"] = list(hamming_profile(e, caps).values) == profile
        except CapExceeded:
            pass
    report = PeriodReport(profile, bound, seq_min_period(profile), checks)
    if not report.ok:
        raise VerificationError(f"period checks failed: {[k for k, v in checks.items() if not v]}")
    return report


def orbit_profile(g: LabeledHypergraph, r: int, q: int, caps: Caps = DEFAULT_CAPS) -> list[int]:
    """Brute-force s(G; r) on 1^m 0^(n-m) through the orbit."""
    return list(hamming_profile(SymmetricExpression.single(g, r, q, caps=caps), caps).values)
