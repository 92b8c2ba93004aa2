import random

import pytest

from ordersat.core import (
    And,
    Atom,
    Neg,
    Or,
    Theory,
    eq,
    formula_vars,
    le,
    lt,
    neg,
    pos,
)
from ordersat.certs import (
    FLS,
    FLS_FORMULA,
    AllConv,
    AntisymP,
    AssmP,
    AtomConv,
    BinopConv,
    ConjE,
    ContrP,
    ConvRule,
    ConversionError,
    DisjE,
    EQE1P,
    EQE2P,
    LessLe,
    Lift,
    NegAndConv,
    NegAtomConv,
    ProofError,
    ReflP,
    ThenConv,
    TransP,
    apply_conv,
    check_atom_proof,
    check_prop_proof,
    is_refutation,
    parse_cert,
    serialize_cert,
)
from ordersat.closure import Unsat, decide
from ordersat.oracle import brute_sat
from ordersat.selfcheck import clause_formula, iter_clauses

from helpers import mutate_cert


def test_check_atom_proof_examples():
    x, y = 0, 1
    a = frozenset({pos(le(x, y))})
    assert check_atom_proof(a, AssmP(pos(le(x, y)))) == pos(le(x, y))
    assert check_atom_proof(frozenset(), ReflP(3)) == pos(le(3, 3))
    full = frozenset({pos(le(x, y)), pos(le(y, x)), neg(eq(x, y))})
    contr = ContrP(neg(eq(x, y)), AntisymP(AssmP(pos(le(x, y))), AssmP(pos(le(y, x)))))
    assert check_atom_proof(full, contr) == FLS


def test_check_atom_proof_transitivity():
    a = frozenset({pos(le(0, 1)), pos(le(1, 2))})
    p = TransP(AssmP(pos(le(0, 1))), AssmP(pos(le(1, 2))))
    assert check_atom_proof(a, p) == pos(le(0, 2))


def test_check_atom_proof_distinct_errors():
    with pytest.raises(ProofError, match="not among the assumptions"):
        check_atom_proof(frozenset(), AssmP(pos(le(0, 1))))
    with pytest.raises(ProofError, match="positive <="):
        check_atom_proof(frozenset({neg(le(0, 1))}), AssmP(neg(le(0, 1))))
    a = frozenset({pos(le(0, 1)), pos(le(2, 3))})
    with pytest.raises(ProofError, match="do not chain"):
        check_atom_proof(a, TransP(AssmP(pos(le(0, 1))), AssmP(pos(le(2, 3)))))
    with pytest.raises(ProofError, match="not converse"):
        check_atom_proof(a, AntisymP(AssmP(pos(le(0, 1))), AssmP(pos(le(2, 3)))))
    with pytest.raises(ProofError, match="negative literal"):
        check_atom_proof(a, ContrP(pos(le(0, 1)), AssmP(pos(le(0, 1)))))
    with pytest.raises(ProofError, match="expects a positive ="):
        check_atom_proof(frozenset({pos(le(0, 1))}), EQE1P(pos(le(0, 1))))


def test_apply_conv_examples():
    x, y = 0, 1
    strict = Atom(pos(lt(x, y)))
    assert apply_conv(LessLe(), strict) == And(Atom(pos(le(x, y))), Atom(neg(eq(x, y))))
    f = Or(Atom(pos(le(x, y))), Neg(Atom(pos(eq(x, y)))))
    assert apply_conv(AllConv(), f) == f
    l1, l2 = pos(le(x, y)), pos(eq(x, y))
    two_step = ThenConv(NegAndConv(), BinopConv(NegAtomConv(), NegAtomConv()))
    assert apply_conv(two_step, Neg(And(Atom(l1), Atom(l2)))) == Or(
        Atom(l1.negate()), Atom(l2.negate())
    )


def test_apply_conv_errors_name_rule():
    with pytest.raises(ConversionError, match="LessLe"):
        apply_conv(LessLe(), Atom(pos(le(0, 1))))
    with pytest.raises(ConversionError, match="NegAtomConv"):
        apply_conv(NegAtomConv(), Atom(pos(le(0, 1))))
    with pytest.raises(ConversionError, match="AtomConv"):
        apply_conv(AtomConv(AllConv()), And(Atom(pos(le(0, 1))), Atom(pos(le(0, 1)))))


def test_check_prop_proof_examples():
    x, y = 0, 1

    # CONJE: falsity from an assumed conjunction, x = y giving both <=.
    lits = And(Atom(pos(eq(x, y))), Atom(neg(eq(x, y))))
    proof = ConjE(
        Atom(pos(eq(x, y))),
        Atom(neg(eq(x, y))),
        Lift(
            ContrP(
                neg(eq(x, y)),
                AntisymP(EQE1P(pos(eq(x, y))), EQE2P(pos(eq(x, y)))),
            )
        ),
    )
    assert check_prop_proof({lits}, proof) == FLS_FORMULA

    # DISJE: both branches must refute.
    branch = Atom(neg(eq(x, x)))
    split = Or(branch, branch)
    one = Lift(ContrP(neg(eq(x, x)), AntisymP(ReflP(x), ReflP(x))))
    assert check_prop_proof({split}, DisjE(branch, branch, one, one)) == FLS_FORMULA

    # CONV: rewrite an assumed strict atom, then refute the result.
    strict = Atom(pos(lt(x, x)))
    rewritten_refutation = ConjE(
        Atom(pos(le(x, x))),
        Atom(neg(eq(x, x))),
        Lift(ContrP(neg(eq(x, x)), AntisymP(ReflP(x), ReflP(x)))),
    )
    cert = ConvRule(strict, AtomConv(LessLe()), rewritten_refutation)
    assert check_prop_proof({strict}, cert) == FLS_FORMULA


def test_check_prop_proof_membership_errors():
    x = 0
    a = Atom(pos(le(x, x)))
    with pytest.raises(ProofError, match="conjunction"):
        check_prop_proof({a}, ConjE(a, a, Lift(ReflP(x))))
    with pytest.raises(ProofError, match="disjunction"):
        check_prop_proof({a}, DisjE(a, a, Lift(ReflP(x)), Lift(ReflP(x))))
    with pytest.raises(ProofError, match="source"):
        check_prop_proof(set(), ConvRule(a, AllConv(), Lift(ReflP(x))))
    bad_branches = DisjE(a, a, Lift(ReflP(0)), Lift(ReflP(1)))
    with pytest.raises(ProofError, match="different"):
        check_prop_proof({Or(a, a)}, bad_branches)


def test_serialization_round_trip():
    cert = Lift(ReflP(0))
    assert serialize_cert(cert) == "(lift (refl v0))"
    assert parse_cert(serialize_cert(cert)) == cert

    x, y = 0, 1
    rich = ConvRule(
        Atom(pos(lt(x, y))),
        AtomConv(LessLe()),
        ConjE(
            Atom(pos(le(x, y))),
            Atom(neg(eq(x, y))),
            DisjE(
                Atom(pos(le(x, y))),
                Atom(neg(eq(x, y))),
                Lift(ContrP(neg(eq(x, y)), AntisymP(AssmP(pos(le(x, y))), AssmP(pos(le(y, x)))))),
                Lift(ReflP(3)),
            ),
        ),
    )
    assert parse_cert(serialize_cert(rich)) == rich


def test_parse_cert_reports_offset():
    from ordersat.core import ParseError

    with pytest.raises(ParseError, match="offset"):
        parse_cert("(lift (refl")
    with pytest.raises(ParseError, match="offset"):
        parse_cert("(lift (refl v0)) extra")


def _unsat_corpus(max_literals=3, num_vars=2):
    corpus = []
    for clause in iter_clauses(max_literals, num_vars):
        f = clause_formula(clause)
        verdict = decide(f, Theory.PARTIAL)
        if isinstance(verdict, Unsat):
            corpus.append((f, verdict.certificate))
    return corpus


def test_kernel_soundness_small_models():
    # Accepted refutations only exist for formulas with no small poset model.
    corpus = _unsat_corpus()
    assert corpus
    for f, cert in corpus[::7]:
        assert check_prop_proof({f}, cert) == FLS_FORMULA
        assert not brute_sat(f, Theory.PARTIAL)


def test_mutation_robustness_small():
    rng = random.Random(2024)
    corpus = _unsat_corpus()
    rejected = 0
    total = 0
    for f, cert in corpus[::11]:
        for _ in range(4):
            mutant = mutate_cert(rng, cert)
            if mutant == cert:
                continue
            total += 1
            if is_refutation(f, mutant):
                # Any accepted mutant must still witness a real contradiction.
                assert not brute_sat(f, Theory.PARTIAL, vars=formula_vars(f))
            else:
                rejected += 1
    assert total > 100
    assert rejected / total >= 0.95
