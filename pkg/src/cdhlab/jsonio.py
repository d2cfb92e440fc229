"""JSON interchange for graphs, expressions, circuits and purified summaries.

Only exact integers appear; floats are rejected.
"""

from __future__ import annotations

import json
from typing import Any

from .caps import DEFAULT_CAPS, Caps
from .errors import InputError
from .expr import Atom, CircuitSpec, Expression, SymmetricExpression
from .ff import Prime
from .hypergraph import LabeledHypergraph, PurifiedSummary


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_path(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, path)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _int(obj: dict, key: str, where: str, default=None) -> int:
    if key not in obj:
        if default is not None:
            return default
        raise InputError(f"{where}: missing field {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def _int_list(v, where: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise InputError(f"{where}: expected a list of integers")
    return v


def _obj(v, where: str) -> dict:
    if not isinstance(v, dict):
        raise InputError(f"{where}: expected an object")
    return v


# -- graphs -------------------------------------------------------------------


def graph_from_json(obj, where: str = "graph", defaults: dict | None = None) -> LabeledHypergraph:
    obj = _obj(obj, where)
    defaults = defaults or {}
    p = Prime(_int(obj, "p", where, defaults.get("p")))
    n = _int(obj, "n", where, defaults.get("n"))
    if "d" not in obj and defaults.get("d") == "auto":
        sizes = [len(e.get("vertices") or []) for e in obj.get("edges", []) if isinstance(e, dict)]
        d = max(sizes + [1])
    else:
        d = _int(obj, "d", where)
    if n < 0 or d < 1:
        raise InputError(f"{where}: need n >= 0 and d >= 1")
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise InputError(f"{where}.edges: expected a list")
    labels = {}
    for i, edge in enumerate(edges):
        w = f"{where}.edges[{i}]"
        edge = _obj(edge, w)
        vs = _int_list(edge.get("vertices"), f"{w}.vertices")
        label = _int(edge, "label", w)
        if not vs:
            raise InputError(f"{w}: empty edge")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise InputError(f"{w}: vertices must be strictly increasing (no duplicates)")
        if vs[0] < 1 or vs[-1] > n:
            raise InputError(f"{w}: vertex outside 1..{n}")
        if len(vs) > d:
            raise InputError(f"{w}: edge of size {len(vs)} exceeds d={d}")
        if not 1 <= label < p:
            raise InputError(f"{w}: label {label} outside 1..{p - 1}")
        key = tuple(vs)
        if key in labels:
            raise InputError(f"{w}: duplicate edge {vs}")
        labels[key] = label
    return LabeledHypergraph(n, p, d, labels)


def graph_to_json(g: LabeledHypergraph) -> dict:
    return {
        "p": int(g.p),
        "d": g.d,
        "n": g.n,
        "edges": [{"vertices": list(e), "label": lab} for e, lab in g.items],
    }


# -- expressions --------------------------------------------------------------


def expression_from_json(obj, caps: Caps = DEFAULT_CAPS, where: str = "expression"):
    """Expression, SymmetricExpression, or CircuitSpec if outer_accept is present."""
    obj = _obj(obj, where)
    p = Prime(_int(obj, "p", where))
    q = Prime(_int(obj, "q", where))
    n = _int(obj, "n", where)
    kind = obj.get("kind", "expression")
    if kind not in ("expression", "symmetric"):
        raise InputError(f"{where}.kind: expected 'expression' or 'symmetric', got {kind!r}")
    terms = obj.get("terms", [])
    if not isinstance(terms, list):
        raise InputError(f"{where}.terms: expected a list")
    pairs = []
    for i, term in enumerate(terms):
        w = f"{where}.terms[{i}]"
        term = _obj(term, w)
        g = graph_from_json(term.get("graph"), f"{w}.graph", {"p": p, "n": n, "d": "auto"})
        if g.n != n or g.p != p:
            raise InputError(f"{w}.graph: (n, p) = ({g.n}, {g.p}) differs from the expression")
        r = _int(term, "r", w)
        if not 0 <= r < p:
            raise InputError(f"{w}.r: {r} outside 0..{p - 1}")
        pairs.append((Atom(g, r), _int(term, "coeff", w, 1)))
    if kind == "symmetric":
        inner = SymmetricExpression(n, p, q, pairs, caps)
    else:
        inner = Expression(n, p, q, pairs)
    if "outer_accept" in obj:
        acc = _int_list(obj["outer_accept"], f"{where}.outer_accept")
        if any(not 0 <= a < q for a in acc):
            raise InputError(f"{where}.outer_accept: values must lie in 0..{q - 1}")
        return CircuitSpec(inner, frozenset(acc))
    return inner


def expression_to_json(e) -> dict:
    if isinstance(e, CircuitSpec):
        out = expression_to_json(e.inner)
        out["outer_accept"] = sorted(e.accept)
        return out
    if isinstance(e, SymmetricExpression):
        kind, items = "symmetric", e.sorted_terms()
    else:
        kind, items = "expression", e.sorted_terms()
    return {
        "p": int(e.p),
        "q": int(e.q),
        "n": e.n,
        "kind": kind,
        "terms": [{"graph": graph_to_json(a.graph), "r": a.r, "coeff": c} for a, c in items],
    }


# -- summaries ----------------------------------------------------------------


def summary_from_json(obj, where: str = "summary") -> tuple[PurifiedSummary, int]:
    obj = _obj(obj, where)
    p = Prime(_int(obj, "p", where))
    q = Prime(_int(obj, "q", where))
    t = _int_list(obj.get("t", []), f"{where}.t")
    l = _int_list(obj.get("l"), f"{where}.l")
    if any(not 0 <= x < p for x in t):
        raise InputError(f"{where}.t: labels must lie in 0..{p - 1}")
    s = PurifiedSummary(p, _int(obj, "n", where), _int(obj, "l_C", where), tuple(t), tuple(l))
    return s, q


def detect_kind(obj) -> str:
    if isinstance(obj, dict):
        if "terms" in obj:
            return "expression"
        if "l_C" in obj:
            return "summary"
        if "edges" in obj:
            return "graph"
    raise InputError("unrecognised JSON document: expected a graph, expression or summary")
