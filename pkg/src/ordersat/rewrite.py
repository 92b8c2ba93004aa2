"""Strict-literal elimination and certified DNF conversion.

Each rewrite comes in two flavours: the plain formula transformation and a
companion that emits the conversion certificate replaying it.  Keeping the
two in lock-step (no simplification, no clause deduplication) means a
produced certificate always applies to exactly the formula the solver went
on to analyse.
"""

from __future__ import annotations

from typing import Callable

from .core import (
    LE,
    LT,
    And,
    Atom,
    Formula,
    Literal,
    Neg,
    Or,
    OrderSatError,
    eq,
    le,
)
from .certs import (
    AllConv,
    AndOrLConv,
    AndOrRConv,
    ArgConv,
    AtomConv,
    BinopConv,
    ConvProof,
    LessLe,
    NegAndConv,
    NegAtomConv,
    NegNegConv,
    NegOrConv,
    NleConv,
    NlessConv,
    NlessLe,
    ThenConv,
)


class StructureError(OrderSatError):
    """A formula did not have the shape an operation requires."""


def deless_partial(lit: Literal) -> Formula:
    """Eliminate strict atoms over a partial order.

    ``x < y`` becomes ``x <= y and x != y``; its negation becomes
    ``not x <= y or x = y``; every other literal is kept as an atom.
    """
    a = lit.atom
    if a.kind == LT:
        if lit.pos:
            return And(Atom(Literal(True, le(a.x, a.y))), Atom(Literal(False, eq(a.x, a.y))))
        return Or(Atom(Literal(False, le(a.x, a.y))), Atom(Literal(True, eq(a.x, a.y))))
    return Atom(lit)


def deless_partial_prf(lit: Literal) -> ConvProof:
    if lit.atom.kind == LT:
        return LessLe() if lit.pos else NlessLe()
    return AllConv()


def deless_linear(lit: Literal) -> Formula:
    """Eliminate strict atoms and negated <= over a linear order.

    Totality additionally turns ``not x <= y`` into ``x != y and y <= x``
    and ``not x < y`` into ``y <= x``.
    """
    a = lit.atom
    if a.kind == LT:
        if lit.pos:
            return And(Atom(Literal(True, le(a.x, a.y))), Atom(Literal(False, eq(a.x, a.y))))
        return Atom(Literal(True, le(a.y, a.x)))
    if a.kind == LE and not lit.pos:
        return And(Atom(Literal(False, eq(a.x, a.y))), Atom(Literal(True, le(a.y, a.x))))
    return Atom(lit)


def deless_linear_prf(lit: Literal) -> ConvProof:
    a = lit.atom
    if a.kind == LT:
        return LessLe() if lit.pos else NlessConv()
    if a.kind == LE and not lit.pos:
        return NleConv()
    return AllConv()


def amap_fm(fn: Callable[[Literal], Formula], f: Formula) -> Formula:
    """Replace every atom leaf of ``f`` by ``fn(leaf)``, keeping connectives."""
    if isinstance(f, Atom):
        return fn(f.lit)
    if isinstance(f, And):
        return And(amap_fm(fn, f.left), amap_fm(fn, f.right))
    if isinstance(f, Or):
        return Or(amap_fm(fn, f.left), amap_fm(fn, f.right))
    if isinstance(f, Neg):
        return Neg(amap_fm(fn, f.arg))
    raise StructureError(f"not a formula node: {f!r}")


def amap_fm_prf(ap: Callable[[Literal], ConvProof], f: Formula) -> ConvProof:
    """Certificate for amap_fm: atom rules under AtomConv, congruence above."""
    if isinstance(f, Atom):
        return AtomConv(ap(f.lit))
    if isinstance(f, (And, Or)):
        return BinopConv(amap_fm_prf(ap, f.left), amap_fm_prf(ap, f.right))
    if isinstance(f, Neg):
        return ArgConv(amap_fm_prf(ap, f.arg))
    raise StructureError(f"not a formula node: {f!r}")


def _then(first: ConvProof, second: ConvProof) -> ConvProof:
    if isinstance(first, AllConv):
        return second
    if isinstance(second, AllConv):
        return first
    return ThenConv(first, second)


def _binop(left: ConvProof, right: ConvProof) -> ConvProof:
    if isinstance(left, AllConv) and isinstance(right, AllConv):
        return AllConv()
    return BinopConv(left, right)


def _push_neg(f: Formula) -> tuple[Formula, ConvProof]:
    if isinstance(f, Atom):
        return f, AllConv()
    if isinstance(f, And):
        left, pl = _push_neg(f.left)
        right, pr = _push_neg(f.right)
        return And(left, right), _binop(pl, pr)
    if isinstance(f, Or):
        left, pl = _push_neg(f.left)
        right, pr = _push_neg(f.right)
        return Or(left, right), _binop(pl, pr)
    if isinstance(f, Neg):
        inner = f.arg
        if isinstance(inner, Atom):
            return Atom(inner.lit.negate()), NegAtomConv()
        if isinstance(inner, Neg):
            result, p = _push_neg(inner.arg)
            return result, _then(NegNegConv(), p)
        if isinstance(inner, And):
            left, pl = _push_neg(Neg(inner.left))
            right, pr = _push_neg(Neg(inner.right))
            return Or(left, right), _then(NegAndConv(), _binop(pl, pr))
        if isinstance(inner, Or):
            left, pl = _push_neg(Neg(inner.left))
            right, pr = _push_neg(Neg(inner.right))
            return And(left, right), _then(NegOrConv(), _binop(pl, pr))
    raise StructureError(f"not a formula node: {f!r}")


def _dist_and(left: Formula, right: Formula) -> tuple[Formula, ConvProof]:
    # Both sides are in DNF; fully distribute the conjunction, left first.
    if isinstance(left, Or):
        r1, p1 = _dist_and(left.left, right)
        r2, p2 = _dist_and(left.right, right)
        return Or(r1, r2), _then(AndOrLConv(), _binop(p1, p2))
    if isinstance(right, Or):
        r1, p1 = _dist_and(left, right.left)
        r2, p2 = _dist_and(left, right.right)
        return Or(r1, r2), _then(AndOrRConv(), _binop(p1, p2))
    return And(left, right), AllConv()


def _dist(f: Formula) -> tuple[Formula, ConvProof]:
    if isinstance(f, Atom):
        return f, AllConv()
    if isinstance(f, Or):
        left, pl = _dist(f.left)
        right, pr = _dist(f.right)
        return Or(left, right), _binop(pl, pr)
    if isinstance(f, And):
        left, pl = _dist(f.left)
        right, pr = _dist(f.right)
        result, pd = _dist_and(left, right)
        return result, _then(_binop(pl, pr), pd)
    raise StructureError(f"negation survived NNF: {f!r}")


def to_dnf(f: Formula) -> tuple[Formula, ConvProof]:
    """Convert to disjunctive normal form with a conversion certificate.

    Negations are pushed into the atoms first, then conjunctions are
    distributed over disjunctions outermost-first with a left bias.  The
    result contains no Neg node and no Or node below an And node;
    ``apply_conv`` of the returned certificate on ``f`` reproduces it.
    """
    nnf, p1 = _push_neg(f)
    dnf, p2 = _dist(nnf)
    return dnf, _then(p1, p2)


def is_dnf(f: Formula) -> bool:
    """Shape check: disjunction of conjunctions of atoms."""
    if isinstance(f, Or):
        return is_dnf(f.left) and is_dnf(f.right)
    return _is_clause(f)


def _is_clause(f: Formula) -> bool:
    if isinstance(f, And):
        return _is_clause(f.left) and _is_clause(f.right)
    return isinstance(f, Atom)


def conj_list(f: Formula) -> list[Literal]:
    """Atoms of a pure conjunction, left to right."""
    if isinstance(f, Atom):
        return [f.lit]
    if isinstance(f, And):
        return conj_list(f.left) + conj_list(f.right)
    raise StructureError(f"not a conjunction of atoms: {f}")


def disj_clauses(f: Formula) -> list[Formula]:
    """Maximal non-disjunction subtrees of a DNF, left to right."""
    if isinstance(f, Or):
        return disj_clauses(f.left) + disj_clauses(f.right)
    return [f]
