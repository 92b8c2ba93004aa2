"""Brute-force ground truth, deliberately separate from the solver.

Satisfiability is decided by enumerating every candidate model outright:
all labelled posets on a small carrier for partial orders, all valuations
into a numeric chain for linear orders.  A carrier as large as the variable
count suffices because a satisfying model can always be quotiented onto the
variables themselves.  Per-literal truth across the model space is cached
as a bitmask so the exhaustive suites stay fast; nothing here touches the
closure or model modules.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .core import (
    LE,
    LT,
    And,
    Atom,
    Formula,
    Neg,
    Or,
    Relation,
    Theory,
    VarId,
    formula_vars,
)

MAX_CARRIER = 4


def enumerate_posets(k: int) -> list[Relation]:
    """All labelled posets on {0..k-1}, in a fixed order."""
    if not 1 <= k <= MAX_CARRIER:
        raise ValueError(f"carrier size must be between 1 and {MAX_CARRIER}, got {k}")
    return list(_posets(k))


@lru_cache(maxsize=None)
def _posets(k: int) -> tuple[Relation, ...]:
    elems = range(k)
    diagonal = [(a, a) for a in elems]
    off_diagonal = [(a, b) for a in elems for b in elems if a != b]
    found: list[Relation] = []
    for bits in range(1 << len(off_diagonal)):
        pairs = set(diagonal)
        pairs.update(p for i, p in enumerate(off_diagonal) if bits >> i & 1)
        if _is_poset(pairs):
            found.append(Relation.make(elems, pairs))
    return tuple(found)


def _is_poset(pairs: set[tuple[int, int]]) -> bool:
    for a, b in pairs:
        if a != b and (b, a) in pairs:
            return False
        for c, d in pairs:
            if b == c and (a, d) not in pairs:
                return False
    return True


def _chain_pairs(k: int) -> frozenset[tuple[int, int]]:
    return frozenset((a, b) for a in range(k) for b in range(k) if a <= b)


@lru_cache(maxsize=None)
def _model_space(theory: Theory, k: int) -> tuple[tuple[frozenset, tuple[int, ...]], ...]:
    """Every candidate model as (relation pairs, valuation by position)."""
    assignments = list(itertools.product(range(k), repeat=k))
    if theory is Theory.LINEAR:
        chain = _chain_pairs(k)
        return tuple((chain, assign) for assign in assignments)
    return tuple(
        (poset.pairs, assign) for poset in _posets(k) for assign in assignments
    )


@lru_cache(maxsize=None)
def _literal_mask(theory: Theory, k: int, pol: bool, kind: str, ix: int, iy: int) -> int:
    """Bitmask over the model space where the positional literal holds."""
    mask = 0
    for bit, (pairs, assign) in enumerate(_model_space(theory, k)):
        vx, vy = assign[ix], assign[iy]
        if kind == LE:
            holds = (vx, vy) in pairs
        elif kind == LT:
            holds = (vx, vy) in pairs and vx != vy
        else:
            holds = vx == vy
        if holds == pol:
            mask |= 1 << bit
    return mask


def _formula_mask(f: Formula, theory: Theory, k: int, index: dict[VarId, int], full: int) -> int:
    if isinstance(f, Atom):
        a = f.lit.atom
        return _literal_mask(theory, k, f.lit.pos, a.kind, index[a.x], index[a.y])
    if isinstance(f, And):
        return _formula_mask(f.left, theory, k, index, full) & _formula_mask(
            f.right, theory, k, index, full
        )
    if isinstance(f, Or):
        return _formula_mask(f.left, theory, k, index, full) | _formula_mask(
            f.right, theory, k, index, full
        )
    if isinstance(f, Neg):
        return full & ~_formula_mask(f.arg, theory, k, index, full)
    raise ValueError(f"not a formula node: {f!r}")


def brute_sat(f: Formula, theory: Theory, vars: set[VarId] | None = None) -> bool:
    """True iff some enumerated model of the theory satisfies ``f``."""
    if vars is None:
        vars = formula_vars(f)
    else:
        vars = set(vars)
        missing = formula_vars(f) - vars
        if missing:
            raise ValueError(f"formula mentions variables outside vars: {sorted(missing)}")
    k = max(1, len(vars))
    if k > MAX_CARRIER:
        raise ValueError(f"too many variables for the brute-force oracle: {k}")
    index = {v: i for i, v in enumerate(sorted(vars))}
    full = (1 << len(_model_space(theory, k))) - 1
    return _formula_mask(f, theory, k, index, full) != 0
