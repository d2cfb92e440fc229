"""F_p-labeled d-hypergraphs and their symmetries.

A hypergraph on vertices 1..n stores a nonzero F_p label per edge (a sorted
vertex tuple). It is the same object as a multilinear polynomial of degree at
most d: every edge is a monomial and its label the coefficient.

Automorphisms, canonical forms and orbit enumeration are exact. The search
engine is colour refinement with individualisation; vertices whose
transposition is an automorphism (exchange classes) are never branched on
twice.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InputError
from .ff import Prime

Edge = tuple[int, ...]


def _canonical_edge(vertices: Iterable[int], n: int) -> Edge:
    e = tuple(sorted(int(v) for v in vertices))
    if not e:
        raise InputError("edges must be nonempty")
    if len(set(e)) != len(e):
        raise InputError(f"edge {list(vertices)} repeats a vertex")
    if e[0] < 1 or e[-1] > n:
        raise InputError(f"edge {e} has a vertex outside 1..{n}")
    return e


class LabeledHypergraph:
    """Immutable F_p-labeled hypergraph with edges of size at most ``d``.

    Equality and hashing use the vertex count, the field and the label map
    only; ``d`` is a bound and does not take part.
    """

    __slots__ = ("n", "p", "d", "_labels", "_items", "_hash", "_cache")

    def __init__(self, n: int, p: int, d: int, labels: Mapping | None = None):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        if d < 1:
            raise InputError("degree bound must be positive")
        p = Prime(p)
        clean: dict[Edge, int] = {}
        for vertices, lab in (labels or {}).items():
            e = _canonical_edge(
                (vertices,) if isinstance(vertices, int) else vertices, n
            )
            if len(e) > d:
                raise InputError(f"edge {e} exceeds degree bound {d}")
            lab = int(lab) % p
            if e in clean:
                lab = (lab + clean[e]) % p
            if lab:
                clean[e] = lab
            else:
                clean.pop(e, None)
        self._set(n, p, d, clean)

    def _set(self, n, p, d, labels):
        self.n = n
        self.p = p
        self.d = d
        self._labels = labels
        self._items = tuple(sorted(labels.items()))
        self._hash = hash((n, int(p), self._items))
        self._cache = {}

    @classmethod
    def _raw(cls, n: int, p: int, d: int, labels: dict[Edge, int]):
        g = cls.__new__(cls)
        g._set(n, p, d, labels)
        return g

    @classmethod
    def empty(cls, n: int, p: int, d: int = 1):
        return cls(n, p, d)

    @classmethod
    def pseudo_clique(cls, n: int, p: int, labels_by_size: Sequence[int]):
        """All j-subsets of [n] carry ``labels_by_size[j-1]``."""
        d = max(len(labels_by_size), 1)
        labels = {}
        for j, lab in enumerate(labels_by_size, start=1):
            if lab % p:
                for e in itertools.combinations(range(1, n + 1), j):
                    labels[e] = lab % p
        return cls._raw(n, Prime(p), d, labels)

    # -- basic access ---------------------------------------------------

    @property
    def labels(self) -> Mapping[Edge, int]:
        return dict(self._labels)

    @property
    def items(self) -> tuple[tuple[Edge, int], ...]:
        return self._items

    def edges(self) -> list[Edge]:
        return [e for e, _ in self._items]

    def label(self, e: Iterable[int]) -> int:
        return self._labels.get(tuple(sorted(e)), 0)

    def key(self):
        return self._items

    @property
    def max_edge_size(self) -> int:
        return max((len(e) for e in self._labels), default=0)

    def __len__(self):
        return len(self._labels)

    def __eq__(self, other):
        if not isinstance(other, LabeledHypergraph):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.n == other.n
            and self.p == other.p
            and self._items == other._items
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "LabeledHypergraph"):
        return (self.n, self._items) < (other.n, other._items)

    def __repr__(self):
        body = ", ".join(f"{list(e)}:{lab}" for e, lab in self._items)
        return f"LabeledHypergraph(n={self.n}, p={self.p}, d={self.d}, {{{body}}})"

    def with_degree(self, d: int) -> "LabeledHypergraph":
        if d < self.max_edge_size:
            raise InputError(f"graph has edges larger than {d}")
        return LabeledHypergraph._raw(self.n, self.p, d, self._labels)

    # -- polynomial semantics -------------------------------------------

    def evaluate(self, x: Sequence[int]) -> int:
        if len(x) != self.n:
            raise InputError(f"input has length {len(x)}, expected {self.n}")
        total = 0
        for e, lab in self._items:
            if all(x[v - 1] for v in e):
                total += lab
        return total % self.p

    def evaluate_many(self, inputs: np.ndarray) -> np.ndarray:
        """Values on every row of a (N, n) 0/1 array."""
        inputs = np.asarray(inputs, dtype=bool)
        out = np.zeros(inputs.shape[0], dtype=np.int64)
        for e, lab in self._items:
            out += lab * np.all(inputs[:, [v - 1 for v in e]], axis=1)
        return out % self.p

    def evaluate_weight(self, m: int) -> int:
        """Value on the input 1^m 0^(n-m)."""
        return sum(lab for e, lab in self._items if e[-1] <= m) % self.p

    # -- arithmetic -----------------------------------------------------

    def _check_compatible(self, other: "LabeledHypergraph"):
        if self.n != other.n or self.p != other.p:
            raise InputError(
                f"vertex-set/field mismatch: ({self.n}, {self.p}) vs ({other.n}, {other.p})"
            )

    def _combine(self, other, factor: int) -> "LabeledHypergraph":
        self._check_compatible(other)
        p = self.p
        out = dict(self._labels)
        for e, lab in other._items:
            v = (out.get(e, 0) + factor * lab) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LabeledHypergraph._raw(self.n, p, max(self.d, other.d), out)

    def __add__(self, other):
        if not isinstance(other, LabeledHypergraph):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, LabeledHypergraph):
            return NotImplemented
        return self._combine(other, -1)

    def scale(self, c: int) -> "LabeledHypergraph":
        c = int(c) % self.p
        if not c:
            return LabeledHypergraph._raw(self.n, self.p, self.d, {})
        return LabeledHypergraph._raw(
            self.n, self.p, self.d, {e: lab * c % self.p for e, lab in self._items}
        )

    def __mul__(self, c):
        if isinstance(c, LabeledHypergraph):
            return self.product(c)
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def add_singletons(self, vertices: Iterable[int], c: int = 1) -> "LabeledHypergraph":
        """G + c * Sigma(S): add c to the unary label of each vertex of S.

        A vertex listed k times receives k * c.
        """
        p = self.p
        out = dict(self._labels)
        for v in vertices:
            e = _canonical_edge((v,), self.n)
            val = (out.get(e, 0) + c) % p
            if val:
                out[e] = val
            else:
                out.pop(e, None)
        return LabeledHypergraph._raw(self.n, p, self.d, out)

    def product(self, other: "LabeledHypergraph", d: int | None = None) -> "LabeledHypergraph":
        """Polynomial product reduced to multilinear form (x*x = x)."""
        self._check_compatible(other)
        p = self.p
        out: dict[Edge, int] = {}
        for e1, l1 in self._items:
            for e2, l2 in other._items:
                e = tuple(sorted(set(e1) | set(e2)))
                out[e] = (out.get(e, 0) + l1 * l2) % p
        out = {e: v for e, v in out.items() if v}
        size = max((len(e) for e in out), default=1)
        return LabeledHypergraph._raw(self.n, p, max(d or 1, size, self.d), out)

    # -- group action ---------------------------------------------------

    def apply_perm(self, perm: Sequence[int] | Mapping[int, int]) -> "LabeledHypergraph":
        """Image pi(G): the edge e with label g becomes pi(e) with label g.

        ``perm`` lists pi(1), ..., pi(n) (or maps v -> pi(v)).
        """
        img = _perm_images(perm, self.n)
        return self._apply_images(img)

    def _apply_images(self, img: Sequence[int]) -> "LabeledHypergraph":
        # img is 1-indexed images packed in a 0-indexed list
        out = {tuple(sorted(img[v - 1] for v in e)): lab for e, lab in self._items}
        return LabeledHypergraph._raw(self.n, self.p, self.d, out)

    def transpose(self, u: int, v: int) -> "LabeledHypergraph":
        out = {}
        for e, lab in self._items:
            if u in e or v in e:
                e = tuple(sorted(v if w == u else u if w == v else w for w in e))
            out[e] = lab
        return LabeledHypergraph._raw(self.n, self.p, self.d, out)

    # -- structural caches ----------------------------------------------

    def _struct(self) -> "_Structure":
        s = self._cache.get("struct")
        if s is None:
            s = self._cache["struct"] = _Structure(self)
        return s


def _perm_images(perm, n: int) -> list[int]:
    if isinstance(perm, Mapping):
        img = [perm.get(v, v) for v in range(1, n + 1)]
    else:
        img = [int(v) for v in perm]
    if len(img) != n or sorted(img) != list(range(1, n + 1)):
        raise InputError(f"{perm!r} is not a permutation of 1..{n}")
    return img


def compose(pi: Sequence[int], sigma: Sequence[int]) -> list[int]:
    """(pi o sigma)(v) = pi(sigma(v)), both given as image lists."""
    return [pi[s - 1] for s in sigma]


def inverse(pi: Sequence[int]) -> list[int]:
    out = [0] * len(pi)
    for v, w in enumerate(pi, start=1):
        out[w - 1] = v
    return out


# ---------------------------------------------------------------------------
# search engine (0-indexed internally)


class _Structure:
    __slots__ = ("n", "edge_map", "inc", "graph")

    def __init__(self, g: LabeledHypergraph):
        self.graph = g
        self.n = g.n
        self.edge_map = {tuple(v - 1 for v in e): lab for e, lab in g.items}
        inc: list[list[tuple[int, int, tuple[int, ...]]]] = [[] for _ in range(g.n)]
        for e, lab in self.edge_map.items():
            for v in e:
                inc[v].append((lab, len(e), tuple(u for u in e if u != v)))
        self.inc = inc

    def signatures(self, colors: Sequence[int]) -> list:
        sigs = []
        for v in range(self.n):
            parts = sorted(
                (lab, size, tuple(sorted(colors[u] for u in others)))
                for lab, size, others in self.inc[v]
            )
            sigs.append((colors[v], tuple(parts)))
        return sigs

    def refine(self, *colorings: Sequence[int]) -> list[list[int]] | None:
        """Jointly refine colourings to the coarsest equitable partition.

        Returns None if the colourings become distinguishable (no
        colour-preserving isomorphism can exist between them).
        """
        current = [list(c) for c in colorings]
        first = Counter(current[0])
        if any(Counter(c) != first for c in current[1:]):
            return None
        n_colors = len(first)
        while True:
            sigs = [self.signatures(c) for c in current]
            # old colour ascending, then richer neighbourhoods first
            distinct = sorted(set().union(*map(set, sigs)), key=lambda s: s[1], reverse=True)
            distinct.sort(key=lambda s: s[0])
            table = {s: i for i, s in enumerate(distinct)}
            new = [[table[s] for s in sig] for sig in sigs]
            hist = Counter(new[0])
            if any(Counter(c) != hist for c in new[1:]):
                return None
            if len(hist) == n_colors:
                return new
            n_colors = len(hist)
            current = new

    def is_automorphism(self, img: Sequence[int]) -> bool:
        em = self.edge_map
        for e, lab in em.items():
            if em.get(tuple(sorted(img[v] for v in e))) != lab:
                return False
        return True

    def transposition_is_automorphism(self, u: int, v: int) -> bool:
        em = self.edge_map
        for e, lab in em.items():
            if (u in e) == (v in e):
                continue
            swapped = tuple(sorted(v if w == u else u if w == v else w for w in e))
            if em.get(swapped) != lab:
                return False
        return True


def _individualize(colors: Sequence[int], v: int) -> list[int]:
    out = [2 * c for c in colors]
    out[v] += 1
    return out


def _first_nonsingleton(colors: Sequence[int]) -> list[int] | None:
    counts = Counter(colors)
    multi = [c for c, k in counts.items() if k > 1]
    if not multi:
        return None
    target = min(multi)
    return [v for v, c in enumerate(colors) if c == target]


def _exchange_labels(g: LabeledHypergraph) -> list[int]:
    """Class id per 0-indexed vertex for the relation "(u v) is an automorphism"."""
    cached = g._cache.get("xlabels")
    if cached is not None:
        return cached
    s = g._struct()
    colors = s.refine([0] * g.n)[0]
    reps: list[int] = []
    label = [0] * g.n
    for u in range(g.n):
        for cid, r in enumerate(reps):
            if colors[r] == colors[u] and s.transposition_is_automorphism(r, u):
                label[u] = cid
                break
        else:
            label[u] = len(reps)
            reps.append(u)
    g._cache["xlabels"] = label
    return label


def _find_isomorphism(s: _Structure, ca, cb, xl) -> list[int] | None:
    """Automorphism of ``s`` carrying colouring ``ca`` onto ``cb``."""
    res = s.refine(ca, cb)
    if res is None:
        return None
    ca, cb = res
    cell = _first_nonsingleton(ca)
    if cell is None:
        where = {c: v for v, c in enumerate(cb)}
        img = [where[c] for c in ca]
        return img if s.is_automorphism(img) else None
    v = cell[0]
    target = ca[v]
    tried = set()
    for w in range(s.n):
        if cb[w] != target or xl[w] in tried:
            continue
        tried.add(xl[w])
        found = _find_isomorphism(s, _individualize(ca, v), _individualize(cb, w), xl)
        if found is not None:
            return found
    return None


def _orbit_closure(seed: set[int], gens: list[list[int]]) -> set[int]:
    orbit = set(seed)
    frontier = list(seed)
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = g[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def _automorphism_data(g: LabeledHypergraph, caps: Caps) -> tuple[int, list[list[int]]]:
    cached = g._cache.get("aut")
    if cached is not None:
        return cached
    if g.n > caps.automorphism_n:
        raise CapExceeded(f"automorphism search capped at n={caps.automorphism_n}, got {g.n}")
    s = g._struct()
    xl = _exchange_labels(g)
    colors = s.refine([0] * g.n)[0]
    order = 1
    gens: list[list[int]] = []
    while True:
        cell = _first_nonsingleton(colors)
        if cell is None:
            break
        b = cell[0]
        orbit = {b}
        level: list[list[int]] = []
        failed = set()
        for w in cell[1:]:
            if w in orbit or xl[w] in failed:
                continue
            if xl[w] == xl[b]:
                img = list(range(g.n))
                img[b], img[w] = w, b
            else:
                img = _find_isomorphism(
                    s, _individualize(colors, b), _individualize(colors, w), xl
                )
            if img is None:
                failed.add(xl[w])
            else:
                level.append(img)
                orbit = _orbit_closure(orbit, level)
        order *= len(orbit)
        gens.extend(level)
        colors = s.refine(_individualize(colors, b))[0]
    result = (order, gens)
    g._cache["aut"] = result
    return result


def _image_items(g: LabeledHypergraph, order: Sequence[int]):
    """Items of the graph relabelled so that ``order[i]`` becomes vertex i+1."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i + 1
    return tuple(
        sorted((tuple(sorted(pos[v - 1] for v in e)), lab) for e, lab in g.items)
    ), pos


def _canonical_search(g: LabeledHypergraph):
    s = g._struct()
    xl = _exchange_labels(g)
    best = [None, None]

    def rec(colors):
        colors = s.refine(colors)[0]
        cell = _first_nonsingleton(colors)
        if cell is None:
            order = sorted(range(g.n), key=colors.__getitem__)
            items, pos = _image_items(g, order)
            if best[0] is None or items < best[0]:
                best[0], best[1] = items, pos
            return
        tried = set()
        for v in cell:
            if xl[v] in tried:
                continue
            tried.add(xl[v])
            rec(_individualize(colors, v))

    rec([0] * g.n)
    return best[0], best[1]


# ---------------------------------------------------------------------------
# public operations


def evaluate(g: LabeledHypergraph, x: Sequence[int]) -> int:
    return g.evaluate(x)


def apply_perm(g: LabeledHypergraph, perm) -> LabeledHypergraph:
    return g.apply_perm(perm)


def aut_order(g: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> int:
    return _automorphism_data(g, caps)[0]


def aut_generators(g: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> list[list[int]]:
    """Generators of Aut(G) as 1-indexed image lists."""
    return [[w + 1 for w in img] for img in _automorphism_data(g, caps)[1]]


def orbit_index(g: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> int:
    return math.factorial(g.n) // aut_order(g, caps)


def edge_orbit(g: LabeledHypergraph, e: Iterable[int], caps: Caps = DEFAULT_CAPS) -> list[Edge]:
    """Orbit of the vertex set ``e`` under Aut(G), sorted."""
    e = tuple(sorted(e))
    gens = aut_generators(g, caps)
    seen = {e}
    frontier = [e]
    while frontier:
        f = frontier.pop()
        for gen in gens:
            h = tuple(sorted(gen[v - 1] for v in f))
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return sorted(seen)


def exchange_classes(g: LabeledHypergraph) -> list[tuple[int, ...]]:
    """Partition of 1..n: u ~ v iff the transposition (u v) is an automorphism.

    Each class is a maximal fully symmetric set.
    """
    xl = _exchange_labels(g)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(xl):
        classes.setdefault(c, []).append(v + 1)
    return sorted(tuple(c) for c in classes.values())


def maximal_fully_symmetric(g: LabeledHypergraph) -> tuple[int, ...] | None:
    """The unique exchange class with more than n/2 vertices, if any."""
    big = [c for c in exchange_classes(g) if 2 * len(c) > g.n]
    if len(big) > 1:
        raise AssertionError("two fully symmetric sets larger than n/2 cannot be disjoint")
    return big[0] if big else None


def is_fully_symmetric(g: LabeledHypergraph, C: Iterable[int]) -> bool:
    """Sym(C) <= Aut(G), checked on the star transpositions (c0 c)."""
    C = sorted(set(C))
    if len(C) <= 1:
        return True
    s = g._struct()
    c0 = C[0] - 1
    return all(s.transposition_is_automorphism(c0, c - 1) for c in C[1:])


@dataclass(frozen=True)
class AutReport:
    aut_order: int
    index: int
    exchange_classes: tuple[tuple[int, ...], ...]
    max_fully_symmetric: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "aut_order": self.aut_order,
            "index": self.index,
            "exchange_classes": [list(c) for c in self.exchange_classes],
            "max_fully_symmetric": (
                list(self.max_fully_symmetric) if self.max_fully_symmetric else None
            ),
        }


def automorphism_report(g: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> AutReport:
    order = aut_order(g, caps)
    return AutReport(
        aut_order=order,
        index=math.factorial(g.n) // order,
        exchange_classes=tuple(exchange_classes(g)),
        max_fully_symmetric=maximal_fully_symmetric(g),
    )


@dataclass(frozen=True)
class Orbit:
    base: LabeledHypergraph
    members: tuple[LabeledHypergraph, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def orbit(g: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> Orbit:
    """All distinct images pi(G), pi in Sym(n), sorted by label map."""
    cached = g._cache.get("orbit")
    if cached is not None:
        return cached
    if g.n <= caps.automorphism_n:
        index = orbit_index(g, caps)
        if index > caps.orbit:
            raise CapExceeded(f"orbit of size {index} exceeds cap {caps.orbit}")
    seen = {g._items: g}
    frontier = [g]
    while frontier:
        h = frontier.pop()
        for i in range(1, g.n):
            k = h.transpose(i, i + 1)
            if k._items not in seen:
                seen[k._items] = k
                frontier.append(k)
                if len(seen) > caps.orbit:
                    raise CapExceeded(f"orbit exceeds cap {caps.orbit}")
    members = tuple(seen[k] for k in sorted(seen))
    result = Orbit(base=g, members=members)
    g._cache["orbit"] = result
    return result


def canonical_form(g: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> LabeledHypergraph:
    """Lexicographically least image of G under Sym(n).

    Above ``caps.canonical_n`` vertices the graph itself is returned (callers
    then key on exact equality, which is sound but may miss merges).
    """
    cached = g._cache.get("canon")
    if cached is not None:
        return cached
    if g.n > caps.canonical_n or g.n == 0:
        out = g
    else:
        items, _ = _canonical_search(g)
        out = LabeledHypergraph._raw(g.n, g.p, g.d, dict(items))
        out._cache["canon"] = out
    g._cache["canon"] = out
    return out


def canonical_labeling(g: LabeledHypergraph) -> list[int]:
    """A permutation pi (image list) with pi(G) == canonical_form(G)."""
    _, pos = _canonical_search(g)
    return pos


def is_isomorphic(g: LabeledHypergraph, h: LabeledHypergraph, caps: Caps = DEFAULT_CAPS) -> bool:
    if g.n != h.n or g.p != h.p or len(g) != len(h):
        return False
    if g.n <= caps.canonical_n:
        return canonical_form(g, caps) == canonical_form(h, caps)
    return _find_joint_isomorphism(g, h) is not None


def _find_joint_isomorphism(g: LabeledHypergraph, h: LabeledHypergraph):
    # disjoint union on 2n vertices; an isomorphism is an automorphism
    # swapping the halves
    n = g.n
    labels = dict(g.labels)
    for e, lab in h.items:
        labels[tuple(v + n for v in e)] = lab
    u = LabeledHypergraph._raw(2 * n, g.p, max(g.d, h.d), labels)
    s = u._struct()
    xl = _exchange_labels(u)
    ca = [0] * n + [1] * n
    cb = [1] * n + [0] * n
    img = _find_isomorphism(s, ca, cb, xl)
    return None if img is None else [img[v] - n + 1 for v in range(n)]


# -- purification predicates ------------------------------------------------


def crossing_edges(g: LabeledHypergraph, C: Iterable[int]) -> list[Edge]:
    C = set(C)
    return [e for e in g.edges() if any(v in C for v in e) and any(v not in C for v in e)]


def complement_edges(g: LabeledHypergraph, C: Iterable[int]) -> list[Edge]:
    C = set(C)
    return [e for e in g.edges() if not any(v in C for v in e)]


def is_symmetry_purified(g: LabeledHypergraph, C: Iterable[int], partial: bool = False) -> bool:
    C = set(C)
    if not is_fully_symmetric(g, C):
        return False
    if crossing_edges(g, C):
        return False
    if partial:
        return True
    return all(len(e) == 1 for e in complement_edges(g, C))


@dataclass(frozen=True)
class PurifiedSummary:
    """Isomorphism invariant of a symmetry-purified graph.

    ``t[j-1]`` is the common label of the j-subsets of C, ``l[i]`` the number
    of complement vertices whose unary label is i.
    """

    p: int
    n: int
    l_C: int
    t: tuple[int, ...]
    l: tuple[int, ...]

    def __post_init__(self):
        p = Prime(self.p)
        object.__setattr__(self, "p", p)
        t = tuple(int(x) % p for x in self.t)
        if not t:
            t = (0,)
        t = tuple(x if j <= self.l_C else 0 for j, x in enumerate(t, start=1))
        object.__setattr__(self, "t", t)
        l = tuple(int(x) for x in self.l)
        if len(l) != p:
            raise InputError(f"need {p} complement counts, got {len(l)}")
        if any(x < 0 for x in l) or self.l_C < 0:
            raise InputError("summary counts must be nonnegative")
        object.__setattr__(self, "l", l)
        if self.l_C + sum(l) != self.n:
            raise InputError(f"l_C + sum(l) = {self.l_C + sum(l)} != n = {self.n}")

    @property
    def d(self) -> int:
        return len(self.t)

    def maximal(self) -> "PurifiedSummary":
        """Absorb complement vertices that extend C to a larger fully symmetric set.

        That happens exactly when all labels of size >= 2 vanish: then any
        complement vertex whose unary label equals t_1 may join C.
        """
        if any(self.t[1:]) or self.l[self.t[0]] == 0:
            return self
        l = list(self.l)
        extra = l[self.t[0]]
        l[self.t[0]] = 0
        return PurifiedSummary(self.p, self.n, self.l_C + extra, self.t, tuple(l))

    def to_graph(self) -> LabeledHypergraph:
        """Representative: C = 1..l_C, then the L_0, L_1, ... blocks."""
        labels: dict[Edge, int] = {}
        for j, lab in enumerate(self.t, start=1):
            if lab:
                for e in itertools.combinations(range(1, self.l_C + 1), j):
                    labels[e] = lab
        v = self.l_C
        for i, count in enumerate(self.l):
            for _ in range(count):
                v += 1
                if i:
                    labels[(v,)] = i
        return LabeledHypergraph._raw(self.n, self.p, self.d, labels)

    def to_json(self) -> dict:
        return {"p": int(self.p), "n": self.n, "l_C": self.l_C, "t": list(self.t), "l": list(self.l)}


def purified_summary(g: LabeledHypergraph, C: Iterable[int]) -> PurifiedSummary:
    C = set(C)
    if not is_symmetry_purified(g, C):
        raise InputError("graph is not symmetry-purified with respect to C")
    cs = sorted(C)
    t = []
    for j in range(1, g.d + 1):
        t.append(g.label(cs[:j]) if j <= len(cs) else 0)
    counts = [0] * g.p
    for v in range(1, g.n + 1):
        if v not in C:
            counts[g.label((v,))] += 1
    return PurifiedSummary(g.p, g.n, len(C), tuple(t), tuple(counts))


# -- dichotomy --------------------------------------------------------------


@dataclass(frozen=True)
class DichotomyReport:
    n: int
    epsilon: Fraction
    k: int
    largest_fully_symmetric: tuple[int, ...]
    index: int
    branch1: bool
    branch2: bool
    lemma_applies: bool

    @property
    def holds(self) -> bool:
        return self.branch1 or self.branch2

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "epsilon": f"{self.epsilon.numerator}/{self.epsilon.denominator}",
            "floor_eps_n": self.k,
            "largest_fully_symmetric": list(self.largest_fully_symmetric),
            "index": self.index,
            "branch1": self.branch1,
            "branch2": self.branch2,
            "lemma_applies": self.lemma_applies,
        }


def check_dichotomy(g: LabeledHypergraph, epsilon, caps: Caps = DEFAULT_CAPS) -> DichotomyReport:
    """Which alternative of the fully-symmetric-set / large-index dichotomy holds.

    Branch 1: a fully symmetric set on at least n - floor(eps n) vertices.
    Branch 2: [Sym(n) : Aut(G)] > 2**floor(eps n).
    ``lemma_applies`` is n >= 13 and 0 < eps < 1/8; only then must one hold.
    """
    eps = Fraction(epsilon)
    k = math.floor(eps * g.n)
    classes = exchange_classes(g)
    largest = max(classes, key=len) if classes else ()
    index = orbit_index(g, caps)
    return DichotomyReport(
        n=g.n,
        epsilon=eps,
        k=k,
        largest_fully_symmetric=largest,
        index=index,
        branch1=len(largest) >= g.n - k,
        branch2=index > 2**k,
        lemma_applies=g.n >= 13 and 0 < eps < Fraction(1, 8),
    )


# -- a few named graphs used throughout ------------------------------------


def cycle_graph(n: int, p: int = 2, label: int = 1) -> LabeledHypergraph:
    labels = {tuple(sorted((i, i % n + 1))): label for i in range(1, n + 1)}
    return LabeledHypergraph(n, p, 2, labels)
