"""Boolean formulas over polynomial atoms, and exact membership."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ..core.algebraic import AlgebraicNumber
from ..core.interval import CI, RI
from ..errors import ParseError
from ..linalg.algexpr import AlgExpr
from ..linalg.matrix import matrix_from_json, matrix_to_json
from .multipoly import MultiPoly

RELS = ("le", "eq")
RAW_RELS = ("le", "eq", "lt", "gt", "ge", "ne")


@dataclass(frozen=True)
class Atom:
    poly: MultiPoly
    rel: str  # "le": poly <= 0, "eq": poly = 0; raw forms allowed before normalize

    def __post_init__(self):
        if self.rel not in RAW_RELS:
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: object


Node = Union[Atom, And, Or, Not]


def normalize(node: Node) -> Node:
    """Rewrite every atom into the {<=, =} alphabet."""
    if isinstance(node, And):
        return And(tuple(normalize(a) for a in node.args))
    if isinstance(node, Or):
        return Or(tuple(normalize(a) for a in node.args))
    if isinstance(node, Not):
        return Not(normalize(node.arg))
    p, rel = node.poly, node.rel
    if rel in RELS:
        return node
    if rel == "ge":
        return Atom(-p, "le")
    if rel == "lt":
        return Not(Atom(-p, "le"))
    if rel == "gt":
        return Not(Atom(p, "le"))
    if rel == "ne":
        return Not(Atom(p, "eq"))
    raise ValueError(rel)


def atoms(node: Node) -> list[Atom]:
    if isinstance(node, Atom):
        return [node]
    if isinstance(node, Not):
        return atoms(node.arg)
    return [a for arg in node.args for a in atoms(arg)]


def _sign(v) -> int:
    if isinstance(v, AlgExpr):
        return v.sign()
    v = Fraction(v)
    return (v > 0) - (v < 0)


def _enclose_poly(poly: MultiPoly, encl: list, p: int) -> CI:
    acc = CI(RI(0, 0, p), RI(0, 0, p))
    pw: dict = {}
    for e, c in poly.terms.items():
        term = CI.from_rational(c, p)
        for i, k in enumerate(e):
            if k:
                v = pw.get((i, k))
                if v is None:
                    v = pw[(i, k)] = encl[i] ** k
                term = term * v
        acc = acc + term
    return acc


def poly_sign(poly: MultiPoly, x: list, encl_cache: dict | None = None) -> int:
    """Exact sign of poly at x; interval evaluation first, exact arithmetic if needed."""
    if all(isinstance(v, Fraction) for v in x):
        s = poly.eval_scaled_int(x)
        return (s > 0) - (s < 0)
    encl_cache = {} if encl_cache is None else encl_cache
    for p in (64, 256):
        encl = encl_cache.get(p)
        if encl is None:
            encl = encl_cache[p] = [
                v.enclosure(p + 16) if isinstance(v, AlgExpr) else CI.from_rational(v, p + 16) for v in x
            ]
        s = _enclose_poly(poly, encl, p + 16).re.sign()
        if s:
            return s
    return _sign(poly(x))


def _point(x: Sequence):
    out = []
    for v in x:
        if isinstance(v, AlgebraicNumber):
            v = AlgExpr.of_algebraic(v)
        elif isinstance(v, AlgExpr):
            if v.is_rational():
                v = v.as_fraction()
        else:
            v = Fraction(v)
        out.append(v)
    return out


def eval_node(node: Node, x, cache: dict | None = None) -> bool:
    cache = {} if cache is None else cache
    if isinstance(node, Atom):
        key = id(node)
        s = cache.get(key)
        if s is None:
            s = cache[key] = poly_sign(node.poly, x, cache.setdefault("encl", {}))
        if node.rel == "le":
            return s <= 0
        if node.rel == "eq":
            return s == 0
        return {"lt": s < 0, "gt": s > 0, "ge": s >= 0, "ne": s != 0}[node.rel]
    if isinstance(node, Not):
        return not eval_node(node.arg, x, cache)
    if isinstance(node, And):
        return all(eval_node(a, x, cache) for a in node.args)
    return any(eval_node(a, x, cache) for a in node.args)


def node_to_json(node: Node) -> dict:
    if isinstance(node, Atom):
        return {"atom": {"poly": node.poly.to_json(), "rel": node.rel}}
    if isinstance(node, Not):
        return {"op": "not", "args": [node_to_json(node.arg)]}
    return {"op": "and" if isinstance(node, And) else "or", "args": [node_to_json(a) for a in node.args]}


def node_from_json(nvars: int, data) -> Node:
    if not isinstance(data, dict):
        raise ParseError("formula node must be an object")
    if "atom" in data:
        a = data["atom"]
        if not isinstance(a, dict) or a.get("rel") not in RAW_RELS:
            raise ParseError(f"bad atom {a!r}")
        return Atom(MultiPoly.from_json(nvars, a.get("poly")), a["rel"])
    op = data.get("op")
    args = data.get("args")
    if op not in ("and", "or", "not") or not isinstance(args, list):
        raise ParseError(f"bad formula node {data!r}")
    kids = tuple(node_from_json(nvars, x) for x in args)
    if op == "not":
        if len(kids) != 1:
            raise ParseError("'not' takes exactly one argument")
        return Not(kids[0])
    return And(kids) if op == "and" else Or(kids)


class SemialgebraicSet:
    def __init__(self, nvars: int, formula: Node):
        self.nvars = nvars
        self.formula = normalize(formula)
        for a in atoms(self.formula):
            if a.poly.nvars != nvars:
                raise ValueError("atom variable count does not match the set")

    @classmethod
    def conj(cls, nvars: int, nodes: Sequence[Node]) -> "SemialgebraicSet":
        return cls(nvars, And(tuple(nodes)))

    def atoms(self) -> list[Atom]:
        return atoms(self.formula)

    def complexity(self) -> tuple[int, int, int]:
        ats = self.atoms()
        d = max((a.poly.total_degree() for a in ats), default=0)
        tau = max((a.poly.coeff_bitsize() for a in ats), default=1)
        return self.nvars, d, tau

    def contains(self, x) -> bool:
        return member(self, x)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "formula": node_to_json(self.formula)}

    @classmethod
    def from_json(cls, data) -> "SemialgebraicSet":
        if not isinstance(data, dict) or not isinstance(data.get("nvars"), int):
            raise ParseError("set JSON needs integer 'nvars'")
        return cls(data["nvars"], node_from_json(data["nvars"], data.get("formula")))

    def __repr__(self):
        return f"SemialgebraicSet(nvars={self.nvars}, complexity={self.complexity()})"


def member(K: SemialgebraicSet, x) -> bool:
    if len(x) != K.nvars:
        raise ValueError(f"point has dimension {len(x)}, set has {K.nvars}")
    return eval_node(K.formula, _point(x))


@dataclass
class EscapeInstance:
    matrix: list
    set: SemialgebraicSet
    provenance: str = "original"  # original | transformed | generated-example
    params: dict | None = None

    def __post_init__(self):
        if len(self.matrix) != self.set.nvars:
            raise ValueError("matrix dimension must equal the set's variable count")

    def to_json(self) -> dict:
        out = {"matrix": matrix_to_json(self.matrix), "set": self.set.to_json(), "provenance": self.provenance}
        if self.params:
            out["params"] = self.params
        return out

    @classmethod
    def from_json(cls, data) -> "EscapeInstance":
        if not isinstance(data, dict):
            raise ParseError("instance JSON must be an object")
        try:
            return cls(
                matrix_from_json(data["matrix"]),
                SemialgebraicSet.from_json(data["set"]),
                data.get("provenance", "original"),
                data.get("params"),
            )
        except KeyError as exc:
            raise ParseError(f"instance JSON missing {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from exc
