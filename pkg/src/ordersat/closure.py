"""Proof-carrying transitive closure and the decision pipeline.

The solver side of the artifact: positive literals seed a map from variable
pairs to atom-level certificates, the map is closed under transitivity while
composing the stored certificates, and negative literals are searched for a
contradiction against the closure.  ``decide`` glues this to the rewrite
passes and re-checks every certificate with the trusted kernel before
returning a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    EQ,
    LE,
    And,
    Atom,
    Formula,
    InvariantViolation,
    Literal,
    Or,
    Theory,
    VarId,
    formula_vars,
    literal_vars,
)
from .certs import (
    FLS_FORMULA,
    AntisymP,
    AssmP,
    CertProof,
    ContrP,
    ConvProof,
    ConvRule,
    DisjE,
    EQE1P,
    EQE2P,
    Lift,
    PropProof,
    ReflP,
    TransP,
    ConjE,
    check_prop_proof,
)
from .model import Model, build_linear_model, build_partial_model, verify_model
from .rewrite import (
    StructureError,
    amap_fm,
    amap_fm_prf,
    conj_list,
    deless_linear,
    deless_linear_prf,
    deless_partial,
    deless_partial_prf,
    disj_clauses,
    to_dnf,
)

ProofMap = dict[tuple[VarId, VarId], CertProof]

Pair = tuple[VarId, VarId]


def leq1_member_list(lit: Literal) -> list[tuple[Pair, CertProof]]:
    """Pairs contributed by one literal, each with its one-step certificate."""
    if not lit.pos:
        return []
    a = lit.atom
    if a.kind == LE:
        return [((a.x, a.y), AssmP(lit))]
    if a.kind == EQ:
        return [((a.x, a.y), EQE1P(lit)), ((a.y, a.x), EQE2P(lit))]
    return []


def leq1_mapping(literals: Sequence[Literal]) -> ProofMap:
    """Union of leq1_member_list over the sequence; first writer wins."""
    mapping: ProofMap = {}
    for lit in literals:
        for key, proof in leq1_member_list(lit):
            if key not in mapping:
                mapping[key] = proof
    return mapping


def trancl_mapping(mapping: ProofMap) -> ProofMap:
    """Transitive closure of the key set, composing certificates.

    Iterates composition with the base map at most ``len(mapping)`` times
    (enough to cover every simple path), stopping early once a round adds
    nothing.  Existing entries are never overwritten, so certificates for
    pairs found earlier stay stable.
    """
    result: ProofMap = dict(mapping)
    base_out: dict[VarId, list[tuple[VarId, CertProof]]] = {}
    for (x, y), proof in mapping.items():
        base_out.setdefault(x, []).append((y, proof))
    for _ in range(len(mapping)):
        added: ProofMap = {}
        for (x, y), proof in result.items():
            for z, step in base_out.get(y, ()):
                key = (x, z)
                if key not in result and key not in added:
                    added[key] = TransP(proof, step)
        if not added:
            break
        result.update(added)
    return result


def trancl_floyd_warshall(mapping: ProofMap) -> ProofMap:
    """Same contract as trancl_mapping via the cubic all-pairs scheme."""
    result: ProofMap = dict(mapping)
    vertices = sorted({v for key in mapping for v in key})
    for k in vertices:
        for i in vertices:
            left = result.get((i, k))
            if left is None:
                continue
            for j in vertices:
                if (i, j) in result:
                    continue
                right = result.get((k, j))
                if right is not None:
                    result[(i, j)] = TransP(left, right)
    return result


def is_in_leq(leqm: ProofMap, x: VarId, y: VarId) -> CertProof | None:
    """Certificate for x <= y under the closed map, if the pair is in it."""
    if x == y:
        return ReflP(x)
    return leqm.get((x, y))


def is_in_eq(leqm: ProofMap, x: VarId, y: VarId) -> CertProof | None:
    """Certificate for x = y: both directions of <= combined antisymmetrically."""
    p1 = is_in_leq(leqm, x, y)
    if p1 is None:
        return None
    p2 = is_in_leq(leqm, y, x)
    if p2 is None:
        return None
    return AntisymP(p1, p2)


def contr1_list(leqm: ProofMap, lit: Literal) -> PropProof | None:
    """Falsity certificate from one negative literal against the closure."""
    if lit.pos:
        return None
    a = lit.atom
    if a.kind == LE:
        proof = is_in_leq(leqm, a.x, a.y)
    elif a.kind == EQ:
        proof = is_in_eq(leqm, a.x, a.y)
    else:
        return None
    if proof is None:
        return None
    return Lift(ContrP(lit, proof))


ClosureFn = Callable[[ProofMap], ProofMap]


def contr_list(
    literals: Sequence[Literal], *, closure_fn: ClosureFn = trancl_mapping
) -> PropProof | None:
    """First contradiction in sequence order, or None when none exists."""
    leqm = closure_fn(leq1_mapping(literals))
    for lit in literals:
        found = contr1_list(leqm, lit)
        if found is not None:
            return found
    return None


def from_conj_prf(proof: PropProof, clause: Formula) -> PropProof:
    """Turn a proof assuming every atom of ``clause`` into one assuming it whole."""
    if isinstance(clause, Atom):
        return proof
    if isinstance(clause, And):
        inner = from_conj_prf(from_conj_prf(proof, clause.right), clause.left)
        return ConjE(clause.left, clause.right, inner)
    raise StructureError(f"not a conjunction of atoms: {clause}")


def contr_fm_prf(
    f: Formula, *, closure_fn: ClosureFn = trancl_mapping
) -> PropProof | None:
    """Refute a negation-free DNF: every clause must be contradictory."""
    if isinstance(f, Or):
        p1 = contr_fm_prf(f.left, closure_fn=closure_fn)
        if p1 is None:
            return None
        p2 = contr_fm_prf(f.right, closure_fn=closure_fn)
        if p2 is None:
            return None
        return DisjE(f.left, f.right, p1, p2)
    if isinstance(f, And):
        found = contr_list(conj_list(f), closure_fn=closure_fn)
        if found is None:
            return None
        return from_conj_prf(found, f)
    if isinstance(f, Atom):
        return contr_list([f.lit], closure_fn=closure_fn)
    raise StructureError(f"not in DNF: {f}")


@dataclass(frozen=True)
class Preprocessed:
    """Conversion pipeline: stages[i] rewrites its formula into the next one."""

    stages: tuple[tuple[Formula, ConvProof], ...]
    result: Formula


def preprocess(f: Formula, theory: Theory) -> Preprocessed:
    """Strict elimination, then DNF; linear orders need one more pass.

    Pushing negations during the DNF step can reintroduce negated <= atoms,
    which the linear procedure cannot consume, so the strict/negative
    elimination runs a second time afterwards.  It only maps atoms to atoms
    or conjunctions, so the DNF shape is preserved.
    """
    if theory is Theory.LINEAR:
        deless, deless_prf = deless_linear, deless_linear_prf
    else:
        deless, deless_prf = deless_partial, deless_partial_prf

    stages: list[tuple[Formula, ConvProof]] = []
    current = f

    delessed = amap_fm(deless, current)
    stages.append((current, amap_fm_prf(deless_prf, current)))
    current = delessed

    dnf, dnf_proof = to_dnf(current)
    stages.append((current, dnf_proof))
    current = dnf

    if theory is Theory.LINEAR:
        again = amap_fm(deless, current)
        stages.append((current, amap_fm_prf(deless_prf, current)))
        current = again

    return Preprocessed(tuple(stages), current)


@dataclass(frozen=True)
class Unsat:
    certificate: PropProof


@dataclass(frozen=True)
class Sat:
    model: Model
    clause_index: int


Verdict = Unsat | Sat

_CLOSURE_ALGORITHMS: dict[str, ClosureFn] = {
    "naive": trancl_mapping,
    "fw": trancl_floyd_warshall,
}


def decide(f: Formula, theory: Theory, *, algorithm: str = "naive") -> Verdict:
    """Decide satisfiability of ``f`` over the given order theory.

    Unsat verdicts carry a falsity certificate rooted at ``f`` itself; it is
    re-checked with the trusted kernel before being returned.  Sat verdicts
    carry a verified finite model of the leftmost non-contradictory DNF
    clause, with every variable of ``f`` assigned.
    """
    try:
        closure_fn = _CLOSURE_ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown closure algorithm {algorithm!r}") from None

    prep = preprocess(f, theory)
    refutation = contr_fm_prf(prep.result, closure_fn=closure_fn)

    if refutation is not None:
        certificate = refutation
        for source, conversion in reversed(prep.stages):
            certificate = ConvRule(source, conversion, certificate)
        verdict = _checked_conclusion(f, certificate)
        if verdict != FLS_FORMULA:
            raise InvariantViolation(f"certificate concludes {verdict}, not falsity")
        return Unsat(certificate)

    all_vars = formula_vars(f)
    for index, clause in enumerate(disj_clauses(prep.result)):
        lits = conj_list(clause)
        if contr_list(lits, closure_fn=closure_fn) is not None:
            continue
        extra = all_vars - literal_vars(lits)
        if theory is Theory.LINEAR:
            m = build_linear_model(lits, extra_vars=extra)
        else:
            m = build_partial_model(lits, extra_vars=extra)
        if not verify_model(m, lits):
            raise InvariantViolation("model failed verification")
        return Sat(m, index)
    raise InvariantViolation("no refutation found, yet every clause is contradictory")


def _checked_conclusion(goal: Formula, certificate: PropProof) -> Formula:
    try:
        return check_prop_proof({goal}, certificate)
    except Exception as exc:  # noqa: BLE001 - surface kernel failures loudly
        raise InvariantViolation(f"produced certificate failed to check: {exc}") from exc
