import itertools

import pytest

from ordersat.core import And, Atom, Literal, Neg, Theory, eq, le, lt, pos, relation_props
from ordersat.oracle import brute_sat, enumerate_posets


def _count_posets_independent(k: int) -> int:
    # Second filter implementation: relations as boolean matrices, properties
    # checked with straight loops rather than pair-set arithmetic.
    count = 0
    cells = [(i, j) for i in range(k) for j in range(k)]
    for values in itertools.product((False, True), repeat=k * k):
        m = dict(zip(cells, values))
        if not all(m[(i, i)] for i in range(k)):
            continue
        ok = True
        for i in range(k):
            for j in range(k):
                if m[(i, j)] and m[(j, i)] and i != j:
                    ok = False
                for l in range(k):
                    if m[(i, j)] and m[(j, l)] and not m[(i, l)]:
                        ok = False
        if ok:
            count += 1
    return count


def test_poset_counts():
    assert len(enumerate_posets(1)) == 1
    assert len(enumerate_posets(2)) == 3 == _count_posets_independent(2)
    assert len(enumerate_posets(3)) == 19 == _count_posets_independent(3)


def test_posets_satisfy_order_axioms():
    for k in (1, 2, 3, 4):
        for rel in enumerate_posets(k):
            props = relation_props(rel)
            assert props.refl and props.trans and props.antisym


def test_posets_deterministic_and_deduplicated():
    first = enumerate_posets(3)
    second = enumerate_posets(3)
    assert first == second
    assert len({rel.pairs for rel in first}) == len(first)


def test_poset_carrier_bounds():
    with pytest.raises(ValueError):
        enumerate_posets(0)
    with pytest.raises(ValueError):
        enumerate_posets(5)


def test_brute_sat_examples():
    x, y = 0, 1
    assert brute_sat(Atom(pos(le(x, y))), Theory.PARTIAL)
    # The motivating lemma: not x < y, x = y, not x <= y is contradictory.
    unsat = And(And(Neg(Atom(pos(lt(x, y)))), Atom(pos(eq(x, y)))), Neg(Atom(pos(le(x, y)))))
    assert not brute_sat(unsat, Theory.PARTIAL)
    # Incomparability is fine for posets, impossible for linear orders.
    incomparable = And(Atom(Literal(False, le(x, y))), Atom(Literal(False, le(y, x))))
    assert brute_sat(incomparable, Theory.PARTIAL)
    assert not brute_sat(incomparable, Theory.LINEAR)


def test_brute_sat_monotone_under_conjunction():
    import random

    from helpers import random_formula

    rng = random.Random(7)
    for _ in range(200):
        f = random_formula(rng, 3, 3)
        g = random_formula(rng, 3, 3)
        for theory in Theory:
            if brute_sat(And(f, g), theory):
                assert brute_sat(f, theory)


def test_linear_sat_implies_partial_sat():
    import random

    from helpers import random_formula

    rng = random.Random(11)
    for _ in range(200):
        f = random_formula(rng, 3, 3)
        if brute_sat(f, Theory.LINEAR):
            assert brute_sat(f, Theory.PARTIAL)


def test_brute_sat_rejects_oversized_and_mismatched_vars():
    f = Atom(pos(le(0, 1)))
    with pytest.raises(ValueError):
        brute_sat(f, Theory.PARTIAL, vars={0, 1, 2, 3, 4})
    with pytest.raises(ValueError):
        brute_sat(f, Theory.PARTIAL, vars={0})
