"""Syntax and semantics of order constraints.

Variables are dense non-negative integers handed out by a SymbolTable.
An atom relates two variables by ``le``, ``lt`` or ``eq``; a literal attaches
a polarity; formulas combine literal atoms with And/Or/Neg.  Truth is judged
against a finite relation together with a valuation mapping variables into
the relation's carrier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

VarId = int

LE = "le"
LT = "lt"
EQ = "eq"
ATOM_KINDS = (LE, LT, EQ)

_KIND_SYMBOL = {LE: "<=", LT: "<", EQ: "="}


class OrderSatError(Exception):
    """Base class for every error this package raises deliberately."""


class EvaluationError(OrderSatError):
    """A literal or formula could not be evaluated (unmapped variable)."""


class ParseError(OrderSatError):
    """Malformed textual input; the message carries the position."""


class InvariantViolation(OrderSatError):
    """An internal self-check failed; indicates a bug rather than bad input."""


@dataclass(frozen=True)
class OrderAtom:
    kind: str
    x: VarId
    y: VarId

    def __post_init__(self) -> None:
        if self.kind not in ATOM_KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def __str__(self) -> str:
        return f"v{self.x} {_KIND_SYMBOL[self.kind]} v{self.y}"


def le(x: VarId, y: VarId) -> OrderAtom:
    return OrderAtom(LE, x, y)


def lt(x: VarId, y: VarId) -> OrderAtom:
    return OrderAtom(LT, x, y)


def eq(x: VarId, y: VarId) -> OrderAtom:
    return OrderAtom(EQ, x, y)


@dataclass(frozen=True)
class Literal:
    pos: bool
    atom: OrderAtom

    def negate(self) -> Literal:
        return Literal(not self.pos, self.atom)

    def __str__(self) -> str:
        body = str(self.atom)
        return body if self.pos else f"~({body})"


def pos(atom: OrderAtom) -> Literal:
    return Literal(True, atom)


def neg(atom: OrderAtom) -> Literal:
    return Literal(False, atom)


def cache_hash(cls):
    """Memoize the generated hash; recursive trees are hashed constantly."""
    computed = cls.__hash__

    def __hash__(self):
        value = self.__dict__.get("_hash")
        if value is None:
            value = computed(self)
            object.__setattr__(self, "_hash", value)
        return value

    cls.__hash__ = __hash__
    return cls


class Formula:
    """Base class of the formula tree; nodes are Atom, And, Or and Neg."""

    __slots__ = ()


@cache_hash
@dataclass(frozen=True)
class Atom(Formula):
    lit: Literal

    def __str__(self) -> str:
        return str(self.lit)


@cache_hash
@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@cache_hash
@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@cache_hash
@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula

    def __str__(self) -> str:
        return f"~{self.arg}"


class Theory(Enum):
    PARTIAL = "partial"
    LINEAR = "linear"


class SymbolTable:
    """Bidirectional, insertion-ordered mapping between names and variables.

    ``intern`` is idempotent and assigns ids in first-seen order starting
    from 0; both directions of the mapping stay injective.
    """

    def __init__(self) -> None:
        self._ids: dict[str, VarId] = {}
        self._names: list[str] = []

    def intern(self, name: str) -> VarId:
        if not name:
            raise ValueError("variable names must be non-empty")
        var = self._ids.get(name)
        if var is None:
            var = len(self._names)
            self._ids[name] = var
            self._names.append(name)
        return var

    def name_of(self, var: VarId) -> str:
        if not 0 <= var < len(self._names):
            raise KeyError(f"unknown variable id {var}")
        return self._names[var]

    def names(self) -> list[str]:
        return list(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)


@dataclass(frozen=True)
class Relation:
    """A finite binary relation with an explicit carrier set."""

    carrier: frozenset[int]
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for a, b in self.pairs:
            if a not in self.carrier or b not in self.carrier:
                raise ValueError(f"pair ({a}, {b}) leaves the carrier")

    @staticmethod
    def make(carrier: Iterable[int], pairs: Iterable[tuple[int, int]]) -> Relation:
        return Relation(frozenset(carrier), frozenset(pairs))


@dataclass(frozen=True)
class RelationProps:
    refl: bool
    trans: bool
    antisym: bool
    total: bool


def relation_props(r: Relation) -> RelationProps:
    """Decide reflexivity, transitivity, antisymmetry and totality of ``r``."""
    pairs = r.pairs
    refl = all((c, c) in pairs for c in r.carrier)
    antisym = all(a == b or (b, a) not in pairs for a, b in pairs)
    succ: dict[int, set[int]] = {c: set() for c in r.carrier}
    for a, b in pairs:
        succ[a].add(b)
    trans = all(succ[b] <= succ[a] for a, b in pairs)
    total = all(
        (a, b) in pairs or (b, a) in pairs for a in r.carrier for b in r.carrier
    )
    return RelationProps(refl, trans, antisym, total)


Valuation = Mapping[VarId, int]


def _image(r: Relation, v: Valuation, var: VarId) -> int:
    if var not in v:
        raise EvaluationError(f"variable v{var} has no value")
    value = v[var]
    if value not in r.carrier:
        raise EvaluationError(f"variable v{var} maps to {value}, outside the carrier")
    return value


def eval_literal(r: Relation, v: Valuation, lit: Literal) -> bool:
    """Truth of a literal: the polarity must match the atom's truth in ``r``."""
    vx = _image(r, v, lit.atom.x)
    vy = _image(r, v, lit.atom.y)
    kind = lit.atom.kind
    if kind == LE:
        holds = (vx, vy) in r.pairs
    elif kind == LT:
        holds = (vx, vy) in r.pairs and vx != vy
    else:
        holds = vx == vy
    return holds == lit.pos


def eval_formula(r: Relation, v: Valuation, f: Formula) -> bool:
    if isinstance(f, Atom):
        return eval_literal(r, v, f.lit)
    if isinstance(f, And):
        return eval_formula(r, v, f.left) and eval_formula(r, v, f.right)
    if isinstance(f, Or):
        return eval_formula(r, v, f.left) or eval_formula(r, v, f.right)
    if isinstance(f, Neg):
        return not eval_formula(r, v, f.arg)
    raise EvaluationError(f"cannot evaluate {f!r}")


def formula_literals(f: Formula) -> list[Literal]:
    """Leaf literals of ``f`` in left-to-right order."""
    out: list[Literal] = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.append(node.lit)
        elif isinstance(node, Neg):
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)
        else:
            raise EvaluationError(f"not a formula node: {node!r}")
    return out


def formula_vars(f: Formula) -> set[VarId]:
    return {v for l in formula_literals(f) for v in (l.atom.x, l.atom.y)}


def literal_vars(lits: Iterable[Literal]) -> set[VarId]:
    return {v for l in lits for v in (l.atom.x, l.atom.y)}


def iter_valuations(vars: Iterable[VarId], carrier: Iterable[int]) -> Iterator[dict[VarId, int]]:
    """All total maps from ``vars`` into ``carrier``, in a deterministic order."""
    vs = sorted(set(vars))
    elems = sorted(set(carrier))
    if not vs:
        yield {}
        return
    for combo in itertools.product(elems, repeat=len(vs)):
        yield dict(zip(vs, combo))
