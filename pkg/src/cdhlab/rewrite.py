"""Semantics-preserving rewrite passes.

* DDL: b(g*z1*z2 + y; t) as a combination of b(j1*z1 + j2*z2 + j3*y; r).
* SDDL: b(g*x_1...x_d + y; t) as b(y; t) plus an alternating subset sum.
* Purification: turns any s(G; r) whose graph has a fully symmetric set of
  more than n/2 vertices into a combination of closures over
  symmetry-purified graphs.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, HypothesisError, InputError, InternalConsistencyError, VerificationError
from .expr import Atom, Expression, SymmetricExpression, equivalent, hamming_profile
from .ff import Prime, solve_mod
from .hypergraph import (
    LabeledHypergraph,
    aut_order,
    canonical_form,
    complement_edges,
    crossing_edges,
    edge_orbit,
    is_fully_symmetric,
    is_isomorphic,
    maximal_fully_symmetric,
)

# -- DDL ----------------------------------------------------------------------


@dataclass(frozen=True)
class DdlTable:
    p: int
    q: int
    gamma: int
    t: int
    beta: dict  # (j1, j2, j3, r) -> nonzero F_q coefficient

    def value(self, z1: int, z2: int, y: int) -> int:
        p = self.p
        total = 0
        for (j1, j2, j3, r), b in self.beta.items():
            if (j1 * z1 + j2 * z2 + j3 * y) % p == r:
                total += b
        return total % self.q

    def verify(self) -> bool:
        p = self.p
        for z1, z2, y in itertools.product(range(p), repeat=3):
            want = int((self.gamma * z1 * z2 + y) % p == self.t)
            if self.value(z1, z2, y) != want:
                return False
        return True


@lru_cache(maxsize=None)
def ddl_coefficients(p: int, q: int, gamma: int, t: int) -> DdlTable:
    """Solve for the DDL coefficients over F_q.

    Unknowns beta[j1, j2, j3, r] and equations (z1, z2, y) both run over
    lexicographic order; the solver zeroes free variables.
    """
    p, q = Prime(p), Prime(q)
    if p == q:
        raise InputError("p and q must be distinct primes")
    gamma, t = int(gamma) % p, int(t) % p
    if gamma == 0:
        return DdlTable(int(p), int(q), 0, t, {(0, 0, 1, t): 1})
    unknowns = list(itertools.product(range(p), repeat=4))
    points = list(itertools.product(range(p), repeat=3))
    pts = np.array(points, dtype=np.int64)
    unk = np.array(unknowns, dtype=np.int64)
    lin = pts @ unk[:, :3].T % p
    a = (lin == unk[:, 3]).astype(np.int64)
    b = ((gamma * pts[:, 0] * pts[:, 1] + pts[:, 2]) % p == t).astype(np.int64)
    x = solve_mod(a, b, q)
    if x is None:
        raise InternalConsistencyError(f"DDL system infeasible for p={p}, q={q}, gamma={gamma}, t={t}")
    table = DdlTable(
        int(p), int(q), gamma, t, {u: int(v) for u, v in zip(unknowns, x) if v}
    )
    if not table.verify():
        raise InternalConsistencyError("DDL solver output fails the functional check")
    return table


def apply_ddl(
    z1: LabeledHypergraph,
    z2: LabeledHypergraph,
    rest: LabeledHypergraph,
    gamma: int,
    t: int,
    q: int,
    graph: LabeledHypergraph | None = None,
) -> Expression:
    """Rewrite b(gamma*Z1*Z2 + H'; t).

    When ``graph`` is given it must equal gamma*Z1*Z2 + H' as a multilinear
    polynomial (equivalently, as a function on the boolean cube).
    """
    p = rest.p
    n = rest.n
    gamma %= p
    if graph is not None:
        rebuilt = z1.product(z2).scale(gamma) + rest
        if rebuilt != graph:
            raise InputError("graph does not decompose as gamma*Z1*Z2 + H'")
    table = ddl_coefficients(p, q, gamma, t)
    terms = []
    for (j1, j2, j3, r), b in table.beta.items():
        k = z1.scale(j1) + z2.scale(j2) + rest.scale(j3)
        terms.append((Atom(k, r), b))
    return Expression(n, p, q, terms)


# -- SDDL ---------------------------------------------------------------------


def sddl_base_degree(p: int, q: int, d: int) -> int:
    """Smallest q**k with q**k >= d and q**k = 1 (mod p)."""
    power = 1
    while power < d or power % p != 1 % p:
        power *= q
    return power


@dataclass(frozen=True)
class SddlTable:
    """Coefficients for gamma = 1; other gamma by rescaling both indices."""

    p: int
    q: int
    d: int
    beta1: tuple  # beta1[t][r]

    def beta(self, t: int, r: int, gamma: int = 1) -> int:
        inv = pow(int(gamma) % self.p, self.p - 2, self.p)
        return self.beta1[t * inv % self.p][r * inv % self.p]

    def matrix(self, gamma: int = 1) -> np.ndarray:
        p = self.p
        return np.array(
            [[self.beta(t, r, gamma) for r in range(p)] for t in range(p)], dtype=np.int64
        )

    @staticmethod
    def alpha(s: int) -> int:
        return (-1) ** s

    def rhs(self, x: Sequence[int], y: int, t: int, gamma: int) -> int:
        """b(y; t) + sum_r beta_{t,r} sum_S alpha_|S| b(gamma*Sigma(S) + y; r)."""
        p, q = self.p, self.q
        total = int(y % p == t)
        ones = [i for i, xi in enumerate(x) if xi]
        for sub in itertools.product((0, 1), repeat=len(x)):
            size = sum(sub)
            val = (gamma * sum(1 for i in ones if sub[i]) + y) % p
            total += self.alpha(size) * self.beta(t, val, gamma)
        return total % q

    def verify(self) -> bool:
        p = self.p
        for gamma in range(1, p):
            for x in itertools.product((0, 1), repeat=self.d):
                prod = int(all(x))
                for y in range(p):
                    for t in range(p):
                        want = int((gamma * prod + y) % p == t)
                        if self.rhs(x, y, t, gamma) != want:
                            return False
        return True


@lru_cache(maxsize=None)
def sddl_coefficients(p: int, q: int, d: int) -> SddlTable:
    """beta_{t,r} = [r != t] at d0 = q**k, then step down to d.

    The step is beta'_{t,r} = beta_{t,r} - beta_{t,r+1} (for gamma = 1).
    """
    p, q = Prime(p), Prime(q)
    if p == q:
        raise InputError("p and q must be distinct primes")
    if d < 1:
        raise InputError("SDDL degree must be positive")
    d0 = sddl_base_degree(p, q, d)
    beta = [[int(r != t) for r in range(p)] for t in range(p)]
    for _ in range(d0 - d):
        beta = [[(row[r] - row[(r + 1) % p]) % q for r in range(p)] for row in beta]
    return SddlTable(int(p), int(q), d, tuple(tuple(row) for row in beta))


def _transfer(table: SddlTable, gamma: int, s: int) -> np.ndarray:
    b = table.matrix(gamma)
    if s == 0:
        return (np.eye(table.p, dtype=np.int64) + b) % table.q
    return (table.alpha(s) * b) % table.q


def sddl_tuple_coefficient(table: SddlTable, gamma: int, t: int, r: int, sizes: Sequence[int]) -> int:
    """Coefficient of b(gamma*(Sigma(S_1)+...+Sigma(S_l)) + H'; r) for |S_i| = sizes[i]."""
    m = np.eye(table.p, dtype=np.int64)
    for s in sizes:
        m = m @ _transfer(table, gamma, s) % table.q
    return int(m[t, r])


def apply_sddl_orbit(
    rest: LabeledHypergraph,
    edges: Sequence[Sequence[int]],
    gamma: int,
    t: int,
    q: int,
    caps: Caps = DEFAULT_CAPS,
) -> Expression:
    """Rewrite b(gamma*(e_1 + ... + e_l) + H'; t), one edge at a time.

    The tuples (S_1, ..., S_l) are accumulated as the multiset of added
    singletons, with the coefficient rows composed by transfer matrices.
    """
    p = rest.p
    gamma %= p
    if not gamma:
        raise InputError("SDDL needs gamma != 0")
    edges = [tuple(sorted(e)) for e in edges]
    if not edges:
        return Expression.atom(rest, t, q)
    sizes = {len(e) for e in edges}
    if len(sizes) != 1:
        raise InputError(f"SDDL orbit edges must share a size, got {sorted(sizes)}")
    table = sddl_coefficients(p, q, sizes.pop())
    mats = {s: _transfer(table, gamma, s) for s in range(len(edges[0]) + 1)}
    start = np.zeros(p, dtype=np.int64)
    start[t % p] = 1
    states: dict[tuple[int, ...], np.ndarray] = {(): start}
    for e in edges:
        nxt: dict[tuple[int, ...], np.ndarray] = {}
        for added, row in states.items():
            for k in range(len(e) + 1):
                out_row = row @ mats[k] % q
                if not out_row.any():
                    continue
                for sub in itertools.combinations(e, k):
                    key = tuple(sorted(added + sub))
                    acc = nxt.get(key)
                    nxt[key] = out_row if acc is None else (acc + out_row) % q
        states = {k: v for k, v in nxt.items() if v.any()}
        if len(states) * p > caps.terms:
            raise CapExceeded(f"SDDL expansion exceeds {caps.terms} terms")
    terms = []
    for added, row in states.items():
        k = rest.add_singletons(added, gamma)
        for r in range(p):
            if row[r]:
                terms.append((Atom(k, r), int(row[r])))
    return Expression(rest.n, p, q, terms)


# -- purification -------------------------------------------------------------


def _own_c(h: LabeledHypergraph, base: Iterable[int]) -> tuple[int, ...]:
    c = maximal_fully_symmetric(h)
    if c is None or not set(base) <= set(c):
        raise InternalConsistencyError("rewrite lost the fully symmetric set")
    return c


def _measure(h: LabeledHypergraph, c: Sequence[int]) -> tuple[int, int, int, int]:
    cross = len(crossing_edges(h, c))
    big = [len(e) for e in complement_edges(h, c) if len(e) >= 2]
    top = max(big, default=0)
    return (h.n - len(c), cross, top, big.count(top) if top else 0)


def _group_isomorphic(atoms: dict[Atom, int], caps: Caps) -> list[tuple[LabeledHypergraph, int, list[int]]]:
    """Buckets (K0, r, [coefficients]) of isomorphic atom graphs."""
    groups: dict[tuple, list] = {}
    for (k, r), c in atoms.items():
        if k.n <= caps.canonical_n:
            key = (canonical_form(k, caps), r)
            groups.setdefault(key, [key[0], r, []])[2].append(c)
            continue
        inv = (r, len(k), tuple(sorted(lab for _, lab in k.items)), tuple(sorted(len(e) for e in k.edges())))
        for grp in groups.setdefault(inv, []):
            if is_isomorphic(grp[0], k, caps):
                grp[2].append(c)
                break
        else:
            groups[inv].append([k, r, [c]])
    out = []
    for v in groups.values():
        if isinstance(v[0], LabeledHypergraph):
            out.append(tuple(v))
        else:
            out.extend(tuple(g) for g in v)
    return out


def _regroup(h: LabeledHypergraph, atoms: Expression, caps: Caps) -> list[tuple[LabeledHypergraph, int, int]]:
    """Turn an Aut(H)-invariant rewrite of b(H; r) into closures.

    s(H; r) = sum over classes [K0] of W * |Aut K0| / |Aut H| * s(K0; r'),
    W being the summed coefficients of atoms in the class.
    """
    q = atoms.q
    a_h = aut_order(h, caps)
    out = []
    for k0, r, coeffs in _group_isomorphic(atoms.terms, caps):
        num = sum(coeffs) * aut_order(k0, caps)
        if num % a_h:
            raise InternalConsistencyError("rewrite family is not invariant under Aut(H)")
        c = num // a_h % q
        if c:
            out.append((k0, r, c))
    return out


def _ddl_step(h: LabeledHypergraph, r: int, c: Sequence[int], q: int, caps: Caps) -> Expression:
    cset = set(c)
    cross = crossing_edges(h, c)
    e = cross[0]
    orb = edge_orbit(h, e, caps)
    gamma = h.label(e)
    pset = sorted({tuple(v for v in f if v in cset) for f in orb})
    qset = sorted({tuple(v for v in f if v not in cset) for f in orb})
    if len(orb) != len(pset) * len(qset):
        raise InternalConsistencyError("crossing orbit is not a product P x Q")
    n, p = h.n, h.p
    z1 = LabeledHypergraph._raw(n, p, h.d, {e1: 1 for e1 in pset})
    z2 = LabeledHypergraph._raw(n, p, h.d, {e2: 1 for e2 in qset})
    rest = h - LabeledHypergraph._raw(n, p, h.d, {f: gamma for f in orb})
    return apply_ddl(z1, z2, rest, gamma, r, q, graph=h)


def _sddl_step(h: LabeledHypergraph, r: int, c: Sequence[int], q: int, caps: Caps) -> Expression:
    comp = [e for e in complement_edges(h, c) if len(e) >= 2]
    top = max(len(e) for e in comp)
    e = next(e for e in comp if len(e) == top)
    orb = edge_orbit(h, e, caps)
    gamma = h.label(e)
    rest = h - LabeledHypergraph._raw(h.n, h.p, h.d, {f: gamma for f in orb})
    return apply_sddl_orbit(rest, orb, gamma, r, q, caps)


def _as_pairs(source, q=None, caps: Caps = DEFAULT_CAPS):
    if isinstance(source, SymmetricExpression):
        return source.n, source.p, source.q, list(source.sterms.items())
    g, r, beta = source
    if q is None:
        raise InputError("a bare sterm needs q")
    return g.n, g.p, Prime(q), [(Atom(g, r), beta)]


def _run(source, C, q, caps: Caps, verify: bool, full: bool) -> SymmetricExpression:
    n, p, q, pairs = _as_pairs(source, q, caps)
    work: dict[Atom, int] = {}
    heap: list = []
    bases: dict[Atom, tuple[int, ...]] = {}
    done: dict[Atom, int] = {}
    counter = itertools.count()

    def push(g, r, coeff, min_size):
        g = canonical_form(g, caps)
        key = Atom(g, r)
        own = maximal_fully_symmetric(g)
        if own is None or len(own) < min_size:
            raise InternalConsistencyError("rewrite lost the fully symmetric set")
        m = _measure(g, own)
        finished = m[1] == 0 and (not full or m[2] == 0)
        if finished:
            done[key] = (done.get(key, 0) + coeff) % q
            return
        if key not in work:
            bases[key] = own
            heapq.heappush(heap, (tuple(-x for x in m), next(counter), key))
        work[key] = (work.get(key, 0) + coeff) % q

    for (g, r), beta in pairs:
        c0 = C
        if c0 is None:
            c0 = maximal_fully_symmetric(g)
        if c0 is None or 2 * len(set(c0)) <= n:
            raise HypothesisError(f"no fully symmetric set with more than {n}/2 vertices in {g!r}")
        if not is_fully_symmetric(g, c0):
            raise HypothesisError(f"{sorted(c0)} is not fully symmetric in {g!r}")
        push(g, r, beta, len(set(c0)))

    steps = 0
    while heap:
        _, _, key = heapq.heappop(heap)
        beta = work.pop(key)
        h, r = key
        c = bases.pop(key)
        if not beta:
            continue
        steps += 1
        if crossing_edges(h, c):
            atoms = _ddl_step(h, r, c, q, caps)
        else:
            atoms = _sddl_step(h, r, c, q, caps)
        for k, _ in atoms.terms:
            _own_c(k, c)
        pieces = _regroup(h, atoms, caps)
        if verify:
            _verify_step(h, r, q, pieces, caps)
        for k, r2, coeff in pieces:
            push(k, r2, beta * coeff, len(c))
        if len(work) + len(done) > caps.terms:
            raise CapExceeded(f"purification exceeds {caps.terms} closures")
    out = SymmetricExpression(n, p, q, list(done.items()), caps)
    if verify and not _same_function(SymmetricExpression(n, p, q, pairs, caps), out, caps):
        raise VerificationError("purified expression differs from its input")
    return out


def _same_function(a: SymmetricExpression, b: SymmetricExpression, caps: Caps) -> bool:
    # both sides are symmetric functions, so the Hamming profile decides
    # equality; the truth table is an independent check where it fits
    if a.n <= caps.truth_table_n:
        return equivalent(a, b, caps)
    return hamming_profile(a, caps).values == hamming_profile(b, caps).values


def _verify_step(h, r, q, pieces, caps: Caps):
    before = SymmetricExpression.single(h, r, q, caps=caps)
    after = SymmetricExpression(h.n, h.p, q, [(Atom(k, r2), c) for k, r2, c in pieces], caps)
    if not _same_function(before, after, caps):
        raise VerificationError(f"rewrite step changed the semantics of s({h!r}; {r})")


def partially_purify(source, C: Iterable[int] | None = None, q: int | None = None,
                     caps: Caps = DEFAULT_CAPS, verify: bool = False) -> SymmetricExpression:
    """Remove crossing edges.

    ``source`` is a SymmetricExpression or a sterm ``(G, r, beta)`` (then
    ``q`` is required). Each output graph K has no edge crossing its own
    maximal fully symmetric set, which always contains C.
    """
    return _run(source, None if C is None else tuple(C), q, caps, verify, full=False)


def purify(source, C: Iterable[int] | None = None, q: int | None = None,
           caps: Caps = DEFAULT_CAPS, verify: bool = False) -> SymmetricExpression:
    """Rewrite into closures of symmetry-purified graphs.

    Every output graph K is symmetry-purified with respect to its maximal
    fully symmetric set C_K, and C_K contains C.
    """
    return _run(source, None if C is None else tuple(C), q, caps, verify, full=True)


def purified_sets(e: SymmetricExpression) -> list[tuple[LabeledHypergraph, int, tuple[int, ...]]]:
    """(graph, r, C_K) for every sterm; C_K the graph's maximal fully symmetric set."""
    out = []
    for (g, r) in e.sterms:
        c = maximal_fully_symmetric(g)
        out.append((g, r, c))
    return out
