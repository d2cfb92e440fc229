"""Expressions over elementary atoms b(G; r) and their symmetric closures.

An :class:`Expression` is an F_q-linear combination of atoms ``b(G; r)``, each
the 0/1 indicator "the polynomial of G takes the value r". A
:class:`SymmetricExpression` is a combination of closures ``s(G; r)``, the sum
of ``b(H; r)`` over the Sym(n)-orbit of G.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InputError, NotSymmetricError
from .ff import Prime, seq_min_period
from .hypergraph import LabeledHypergraph, canonical_form, orbit, orbit_index


class Atom(NamedTuple):
    graph: LabeledHypergraph
    r: int

    def sort_key(self):
        return (self.graph.items, self.r)


def _check_atom(atom: Atom, n: int, p: int) -> Atom:
    g, r = atom
    if not isinstance(g, LabeledHypergraph):
        raise InputError(f"atom graph must be a LabeledHypergraph, got {type(g).__name__}")
    if g.n != n or g.p != p:
        raise InputError(f"atom over (n={g.n}, p={g.p}) in expression over (n={n}, p={p})")
    r = int(r)
    if not 0 <= r < p:
        raise InputError(f"accepting value {r} outside F_{p}")
    return Atom(g, r)


class Expression:
    """Sum of coefficient * b(G; r); duplicate atoms are merged on construction."""

    __slots__ = ("n", "p", "q", "terms")

    def __init__(self, n: int, p: int, q: int, terms: Mapping | Iterable = ()):
        self.n = n
        self.p = Prime(p)
        self.q = Prime(q)
        if self.p == self.q:
            raise InputError("p and q must be distinct primes")
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Atom, int] = {}
        for atom, coeff in pairs:
            atom = _check_atom(atom, n, self.p)
            merged[atom] = (merged.get(atom, 0) + int(coeff)) % self.q
        self.terms = {a: c for a, c in merged.items() if c}

    @classmethod
    def _trusted(cls, n, p, q, terms: dict[Atom, int]):
        e = cls.__new__(cls)
        e.n, e.p, e.q, e.terms = n, p, q, terms
        return e

    @classmethod
    def atom(cls, g: LabeledHypergraph, r: int, q: int, coeff: int = 1) -> "Expression":
        return cls(g.n, g.p, q, [(Atom(g, r), coeff)])

    def sorted_terms(self) -> list[tuple[Atom, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return (self.n, self.p, self.q) == (other.n, other.p, other.q) and self.terms == other.terms

    def __repr__(self):
        return f"Expression(n={self.n}, p={self.p}, q={self.q}, {len(self.terms)} terms)"

    def _check_same_space(self, other: "Expression"):
        if (self.n, self.p, self.q) != (other.n, other.p, other.q):
            raise InputError("expressions over different (n, p, q)")

    def __add__(self, other: "Expression") -> "Expression":
        self._check_same_space(other)
        return Expression(
            self.n, self.p, self.q, list(self.terms.items()) + list(other.terms.items())
        )

    def __sub__(self, other: "Expression") -> "Expression":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Expression":
        c %= self.q
        return Expression._trusted(
            self.n, self.p, self.q, {a: v * c % self.q for a, v in self.terms.items()} if c else {}
        )

    def apply_perm(self, perm) -> "Expression":
        return Expression._trusted(
            self.n,
            self.p,
            self.q,
            {Atom(a.graph.apply_perm(perm), a.r): c for a, c in self.terms.items()},
        )


class SymmetricExpression:
    """Sum of beta * s(G; r), keyed by (canonical form of G, r)."""

    __slots__ = ("n", "p", "q", "sterms", "caps")

    def __init__(self, n: int, p: int, q: int, sterms: Mapping | Iterable = (), caps: Caps = DEFAULT_CAPS):
        self.n = n
        self.p = Prime(p)
        self.q = Prime(q)
        self.caps = caps
        if self.p == self.q:
            raise InputError("p and q must be distinct primes")
        pairs = sterms.items() if isinstance(sterms, Mapping) else sterms
        merged: dict[Atom, int] = {}
        for atom, coeff in pairs:
            g, r = _check_atom(atom, n, self.p)
            key = Atom(canonical_form(g, caps), r)
            merged[key] = (merged.get(key, 0) + int(coeff)) % self.q
        self.sterms = {a: c for a, c in merged.items() if c}

    @classmethod
    def single(cls, g: LabeledHypergraph, r: int, q: int, coeff: int = 1, caps: Caps = DEFAULT_CAPS):
        return cls(g.n, g.p, q, [(Atom(g, r), coeff)], caps=caps)

    def sorted_terms(self) -> list[tuple[Atom, int]]:
        return sorted(self.sterms.items(), key=lambda kv: kv[0].sort_key())

    def __len__(self):
        return len(self.sterms)

    def __eq__(self, other):
        if not isinstance(other, SymmetricExpression):
            return NotImplemented
        return (self.n, self.p, self.q) == (other.n, other.p, other.q) and self.sterms == other.sterms

    def __repr__(self):
        return f"SymmetricExpression(n={self.n}, p={self.p}, q={self.q}, {len(self.sterms)} sterms)"

    def __add__(self, other: "SymmetricExpression") -> "SymmetricExpression":
        if (self.n, self.p, self.q) != (other.n, other.p, other.q):
            raise InputError("expressions over different (n, p, q)")
        return SymmetricExpression(
            self.n, self.p, self.q, list(self.sterms.items()) + list(other.sterms.items()), self.caps
        )

    def scale(self, c: int) -> "SymmetricExpression":
        return SymmetricExpression(
            self.n, self.p, self.q, [(a, v * c) for a, v in self.sterms.items()], self.caps
        )

    def expand(self, caps: Caps | None = None) -> Expression:
        caps = caps or self.caps
        out: dict[Atom, int] = {}
        total = 0
        for (g, r), beta in self.sterms.items():
            members = orbit(g, caps).members
            total += len(members)
            if total > caps.terms:
                raise CapExceeded(f"expansion exceeds {caps.terms} atoms")
            for h in members:
                a = Atom(h, r)
                out[a] = (out.get(a, 0) + beta) % self.q
        return Expression._trusted(self.n, self.p, self.q, {a: c for a, c in out.items() if c})


AnyExpression = Union[Expression, SymmetricExpression]


@dataclass(frozen=True)
class CircuitSpec:
    """Outer MOD_q gate: 1 iff the inner expression's value lies in ``accept``."""

    inner: AnyExpression
    accept: frozenset

    def __post_init__(self):
        acc = frozenset(int(a) for a in self.accept)
        if any(not 0 <= a < self.inner.q for a in acc):
            raise InputError(f"accepting set {sorted(acc)} not inside F_{self.inner.q}")
        object.__setattr__(self, "accept", acc)

    @property
    def n(self):
        return self.inner.n

    @property
    def is_constant(self) -> bool:
        return not self.accept or len(self.accept) == self.inner.q


@dataclass(frozen=True)
class HammingProfile:
    values: tuple[int, ...]
    min_period: int

    @classmethod
    def of(cls, values: Sequence[int]) -> "HammingProfile":
        values = tuple(int(v) for v in values)
        return cls(values, seq_min_period(values))


# -- evaluation -------------------------------------------------------------


def _check_input(x: Sequence[int], n: int):
    if len(x) != n:
        raise InputError(f"input has length {len(x)}, expected {n}")


def eval_atom(atom: Atom, x: Sequence[int]) -> int:
    g, r = atom
    return int(g.evaluate(x) == r)


def eval_expression(e: AnyExpression, x: Sequence[int]) -> int:
    _check_input(x, e.n)
    if isinstance(e, SymmetricExpression):
        e = e.expand()
    total = 0
    for (g, r), c in e.terms.items():
        if g.evaluate(x) == r:
            total += c
    return total % e.q


def eval_circuit(c: CircuitSpec, x: Sequence[int]) -> int:
    return int(eval_expression(c.inner, x) in c.accept)


def all_inputs(n: int) -> np.ndarray:
    """(2**n, n) 0/1 array; row i has x_j = bit j-1 of i."""
    idx = np.arange(2**n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(bool)


@lru_cache(maxsize=1 << 16)
def _edge_column(n: int, e: tuple[int, ...]) -> np.ndarray:
    idx = np.arange(2**n, dtype=np.int64)
    mask = sum(1 << (v - 1) for v in e)
    return ((idx & mask) == mask).astype(np.int64)


def _graph_table(g: LabeledHypergraph) -> np.ndarray:
    tt = g._cache.get("tt")
    if tt is None:
        tt = np.zeros(2**g.n, dtype=np.int64)
        for e, lab in g.items:
            tt += lab * _edge_column(g.n, e)
        tt %= g.p
        g._cache["tt"] = tt
    return tt


def truth_table(e: AnyExpression | CircuitSpec, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """Values on all 2**n inputs (F_q for expressions, 0/1 for circuits)."""
    if isinstance(e, CircuitSpec):
        inner = truth_table(e.inner, caps)
        return np.isin(inner, sorted(e.accept)).astype(np.int64)
    if e.n > caps.truth_table_n:
        raise CapExceeded(f"truth table capped at n={caps.truth_table_n}, got {e.n}")
    if isinstance(e, SymmetricExpression):
        e = e.expand(caps)
    out = np.zeros(2**e.n, dtype=np.int64)
    for (g, r), c in e.terms.items():
        out += c * (_graph_table(g) == r)
    return out % e.q


def equivalent(e1: AnyExpression, e2: AnyExpression, caps: Caps = DEFAULT_CAPS) -> bool:
    """Equal values on every boolean input (exhaustive)."""
    if (e1.n, e1.p, e1.q) != (e2.n, e2.p, e2.q):
        raise InputError("equivalence check needs the same (n, p, q)")
    return bool(np.array_equal(truth_table(e1, caps), truth_table(e2, caps)))


# -- symmetry ---------------------------------------------------------------


def symmetric_closure(g: LabeledHypergraph, r: int, q: int, caps: Caps = DEFAULT_CAPS) -> SymmetricExpression:
    return SymmetricExpression.single(g, r, q, caps=caps)


def is_symmetric_expression(e: Expression, caps: Caps = DEFAULT_CAPS) -> bool:
    """pi(E) == E as term maps, for the adjacent transpositions (they generate Sym(n))."""
    if e.n > caps.truth_table_n:
        raise CapExceeded(f"symmetry check capped at n={caps.truth_table_n}")
    for i in range(1, e.n):
        moved = {Atom(a.graph.transpose(i, i + 1), a.r): c for a, c in e.terms.items()}
        if moved != e.terms:
            return False
    return True


def decompose_symmetric(e: Expression, caps: Caps = DEFAULT_CAPS) -> SymmetricExpression:
    """Write a symmetric expression as a combination of closures s(G; r).

    Repeatedly takes the least remaining atom b(G; r) with coefficient beta and
    subtracts beta * s(G; r). Raises NotSymmetricError if some orbit member
    does not carry the same coefficient.
    """
    remaining = dict(e.terms)
    out: list[tuple[Atom, int]] = []
    while remaining:
        atom = min(remaining, key=Atom.sort_key)
        beta = remaining[atom]
        for h in orbit(atom.graph, caps).members:
            key = Atom(h, atom.r)
            if remaining.get(key) != beta:
                raise NotSymmetricError(
                    f"atom b({h!r}; {atom.r}) has coefficient {remaining.get(key, 0)}, expected {beta}"
                )
            del remaining[key]
        out.append((atom, beta))
    return SymmetricExpression(e.n, e.p, e.q, out, caps)


def normalize(e: Expression | Iterable, n: int | None = None, p: int | None = None, q: int | None = None) -> Expression:
    """Merge duplicate atoms and drop zero coefficients.

    Accepts an Expression or an iterable of (atom, coeff) pairs together with
    ``n``, ``p`` and ``q``.
    """
    if isinstance(e, Expression):
        return Expression(e.n, e.p, e.q, list(e.terms.items()))
    if None in (n, p, q):
        raise InputError("normalize of raw terms needs n, p and q")
    return Expression(n, p, q, list(e))


# -- Hamming-weight view ----------------------------------------------------


def _weight_values(e: AnyExpression, caps: Caps) -> list[int]:
    n, q = e.n, e.q
    values = [0] * (n + 1)
    if isinstance(e, SymmetricExpression):
        pairs = []
        for (g, r), beta in e.sterms.items():
            pairs.extend((h, r, beta) for h in orbit(g, caps).members)
    else:
        pairs = [(g, r, c) for (g, r), c in e.terms.items()]
    for g, r, c in pairs:
        for m in range(n + 1):
            if g.evaluate_weight(m) == r:
                values[m] += c
    return [v % q for v in values]


def hamming_profile(e: AnyExpression | CircuitSpec, caps: Caps = DEFAULT_CAPS) -> HammingProfile:
    """values[m] = value on 1^m 0^(n-m), with the minimal period attached."""
    if isinstance(e, CircuitSpec):
        inner = _weight_values(e.inner, caps)
        return HammingProfile.of([int(v in e.accept) for v in inner])
    return HammingProfile.of(_weight_values(e, caps))


def expression_size(e: SymmetricExpression, caps: Caps = DEFAULT_CAPS) -> int:
    """Number of atoms in the full expansion: sum of orbit indices."""
    return sum(orbit_index(g, caps) for g, _ in e.sterms)


def and_circuit(n: int, p: int, q: int) -> CircuitSpec:
    """AND_n as b(b(x_1...x_n; 1); {1})."""
    g = LabeledHypergraph(n, p, max(n, 1), {tuple(range(1, n + 1)): 1} if n else {})
    return CircuitSpec(Expression.atom(g, 1 if n else 0, q), frozenset({1}))


def counting_expression(n: int, p: int, q: int, r: int = 1) -> SymmetricExpression:
    """s(x_1; r): for r = 1 the number of ones, reduced mod q."""
    g = LabeledHypergraph(n, p, 1, {(1,): 1})
    return SymmetricExpression.single(g, r, q)
