import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ordersat.core import (
    ATOM_KINDS,
    And,
    Atom,
    Formula,
    Literal,
    Neg,
    Or,
    OrderAtom,
    Relation,
    eq,
    eval_formula,
    eval_literal,
    formula_literals,
    iter_valuations,
    le,
    lt,
    neg,
    pos,
)
from ordersat.certs import AllConv, AtomConv, BinopConv, LessLe, NleConv, apply_conv
from ordersat.oracle import enumerate_posets
from ordersat.rewrite import (
    StructureError,
    amap_fm,
    amap_fm_prf,
    conj_list,
    deless_linear,
    deless_linear_prf,
    deless_partial,
    deless_partial_prf,
    disj_clauses,
    is_dnf,
    to_dnf,
)

atoms = st.builds(
    OrderAtom, st.sampled_from(ATOM_KINDS), st.integers(0, 3), st.integers(0, 3)
)
literals = st.builds(Literal, st.booleans(), atoms)
formulas = st.recursive(
    st.builds(Atom, literals),
    lambda children: st.one_of(
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Neg, children),
    ),
    max_leaves=10,
)


def _linear_orders(k):
    # Total orders on {0..k-1}: one per permutation.
    for perm in itertools.permutations(range(k)):
        position = {c: i for i, c in enumerate(perm)}
        yield Relation.make(
            range(k), {(a, b) for a in range(k) for b in range(k) if position[a] <= position[b]}
        )


def _all_literals(num_vars=2):
    return [
        Literal(p, OrderAtom(kind, x, y))
        for p in (True, False)
        for kind in ATOM_KINDS
        for x in range(num_vars)
        for y in range(num_vars)
    ]


def test_deless_partial_examples():
    x, y = 0, 1
    assert deless_partial(pos(lt(x, y))) == And(Atom(pos(le(x, y))), Atom(neg(eq(x, y))))
    assert deless_partial(neg(lt(x, y))) == Or(Atom(neg(le(x, y))), Atom(pos(eq(x, y))))
    assert deless_partial(pos(le(x, y))) == Atom(pos(le(x, y)))


def test_deless_linear_examples():
    x, y = 0, 1
    assert deless_linear(neg(le(x, y))) == And(Atom(neg(eq(x, y))), Atom(pos(le(y, x))))
    assert deless_linear(neg(lt(x, y))) == Atom(pos(le(y, x)))
    assert deless_linear(pos(eq(x, y))) == Atom(pos(eq(x, y)))


def test_not_less_equals_flipped_le_on_linear_orders():
    # Truth-table check over every linear order with carrier size <= 2.
    for k in (1, 2):
        for rel in _linear_orders(k):
            for v in iter_valuations({0, 1}, rel.carrier):
                assert eval_literal(rel, v, neg(lt(0, 1))) == eval_literal(
                    rel, v, pos(le(1, 0))
                )


def test_deless_partial_semantics_preserved():
    # Holds for every poset on carriers of size <= 4, not just size 2.
    for lit in _all_literals():
        f = deless_partial(lit)
        for k in (1, 2, 3, 4):
            for rel in enumerate_posets(k):
                for v in iter_valuations({0, 1}, rel.carrier):
                    assert eval_formula(rel, v, f) == eval_literal(rel, v, lit)


def test_deless_linear_semantics_preserved():
    for lit in _all_literals():
        f = deless_linear(lit)
        for k in (1, 2, 3, 4):
            for rel in _linear_orders(k):
                for v in iter_valuations({0, 1}, rel.carrier):
                    assert eval_formula(rel, v, f) == eval_literal(rel, v, lit)


def test_amap_fm_examples():
    x, y = 0, 1
    assert amap_fm(deless_partial, Atom(pos(lt(x, y)))) == And(
        Atom(pos(le(x, y))), Atom(neg(eq(x, y)))
    )
    inner = Atom(pos(lt(x, y)))
    assert amap_fm(deless_partial, Neg(inner)) == Neg(amap_fm(deless_partial, inner))
    f = And(Atom(pos(le(x, y))), Neg(Atom(pos(eq(x, y)))))
    assert amap_fm(Atom, f) == f


def test_amap_fm_prf_examples():
    x, y = 0, 1
    assert amap_fm_prf(deless_partial_prf, Atom(pos(lt(x, y)))) == AtomConv(LessLe())
    a, b = Atom(pos(le(x, y))), Atom(pos(eq(x, y)))
    assert amap_fm_prf(deless_partial_prf, And(a, b)) == BinopConv(
        amap_fm_prf(deless_partial_prf, a), amap_fm_prf(deless_partial_prf, b)
    )
    assert amap_fm_prf(deless_partial_prf, Atom(pos(le(x, y)))) == AtomConv(AllConv())
    assert deless_linear_prf(neg(le(x, y))) == NleConv()


@given(formulas)
@settings(max_examples=150, deadline=None)
def test_deless_conversion_matches_rewrite(f):
    for deless, deless_prf in (
        (deless_partial, deless_partial_prf),
        (deless_linear, deless_linear_prf),
    ):
        assert apply_conv(amap_fm_prf(deless_prf, f), f) == amap_fm(deless, f)


def test_to_dnf_examples():
    a = Atom(pos(le(0, 1)))
    b = Atom(pos(eq(0, 1)))
    c = Atom(pos(le(1, 2)))
    dnf, _ = to_dnf(And(Or(a, b), c))
    assert dnf == Or(And(a, c), And(b, c))

    dnf, _ = to_dnf(Neg(Atom(pos(le(0, 1)))))
    assert dnf == Atom(neg(le(0, 1)))

    dnf, _ = to_dnf(Neg(And(a, b)))
    assert dnf == Or(Atom(a.lit.negate()), Atom(b.lit.negate()))


@given(formulas)
@settings(max_examples=200, deadline=None)
def test_to_dnf_shape(f):
    dnf, _ = to_dnf(f)
    assert is_dnf(dnf)


@given(formulas)
@settings(max_examples=200, deadline=None)
def test_to_dnf_certificate_applies(f):
    dnf, proof = to_dnf(f)
    assert apply_conv(proof, f) == dnf


def _eval_propositional(f: Formula, assignment) -> bool:
    if isinstance(f, Atom):
        value = assignment[f.lit.atom]
        return value if f.lit.pos else not value
    if isinstance(f, And):
        return _eval_propositional(f.left, assignment) and _eval_propositional(f.right, assignment)
    if isinstance(f, Or):
        return _eval_propositional(f.left, assignment) or _eval_propositional(f.right, assignment)
    return not _eval_propositional(f.arg, assignment)


@given(formulas)
@settings(max_examples=150, deadline=None)
def test_to_dnf_propositionally_equivalent(f):
    dnf, _ = to_dnf(f)
    distinct = sorted({l.atom for l in formula_literals(f)}, key=str)
    for values in itertools.product((False, True), repeat=len(distinct)):
        assignment = dict(zip(distinct, values))
        assert _eval_propositional(f, assignment) == _eval_propositional(dnf, assignment)


def test_conj_list_examples():
    a, b, c = pos(le(0, 1)), pos(eq(1, 2)), neg(eq(0, 2))
    assert conj_list(And(Atom(a), And(Atom(b), Atom(c)))) == [a, b, c]
    assert conj_list(Atom(a)) == [a]
    with pytest.raises(StructureError):
        conj_list(Or(Atom(a), Atom(b)))
    with pytest.raises(StructureError):
        conj_list(Neg(Atom(a)))


def test_disj_clauses_examples():
    c1 = Atom(pos(le(0, 1)))
    c2 = And(Atom(pos(eq(0, 1))), Atom(neg(eq(1, 2))))
    c3 = Atom(neg(le(2, 0)))
    assert disj_clauses(Or(c1, Or(c2, c3))) == [c1, c2, c3]
    assert disj_clauses(c2) == [c2]
    assert disj_clauses(c1) == [c1]
