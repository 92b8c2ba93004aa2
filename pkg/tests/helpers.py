"""Shared test utilities: generators and independent oracles.

Everything here is deliberately written against the public types only, with
its own little algorithms, so tests never validate the implementation with
itself.
"""

from __future__ import annotations

import dataclasses
import random
from typing import Iterable

from ordersat.core import (
    ATOM_KINDS,
    And,
    Atom,
    Formula,
    Literal,
    Neg,
    Or,
    OrderAtom,
)
from ordersat.certs import (
    AllConv,
    AndOrLConv,
    AndOrRConv,
    AntisymP,
    ArgConv,
    AssmP,
    AtomConv,
    BinopConv,
    CertProof,
    ConjE,
    ContrP,
    ConvProof,
    ConvRule,
    DisjE,
    EQE1P,
    EQE2P,
    LessLe,
    Lift,
    NegAndConv,
    NegAtomConv,
    NegNegConv,
    NegOrConv,
    NleConv,
    NlessConv,
    NlessLe,
    PropProof,
    ReflP,
    ThenConv,
    TransP,
)


def naive_closure(pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Fixpoint transitive closure, the dumbest possible way."""
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c, d in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    return closed


def random_formula(rng: random.Random, max_depth: int = 4, num_vars: int = 4) -> Formula:
    if max_depth == 0 or rng.random() < 0.35:
        atom = OrderAtom(
            rng.choice(ATOM_KINDS), rng.randrange(num_vars), rng.randrange(num_vars)
        )
        return Atom(Literal(rng.random() < 0.5, atom))
    roll = rng.random()
    if roll < 0.4:
        return And(
            random_formula(rng, max_depth - 1, num_vars),
            random_formula(rng, max_depth - 1, num_vars),
        )
    if roll < 0.8:
        return Or(
            random_formula(rng, max_depth - 1, num_vars),
            random_formula(rng, max_depth - 1, num_vars),
        )
    return Neg(random_formula(rng, max_depth - 1, num_vars))


def random_literal(rng: random.Random, num_vars: int = 3) -> Literal:
    atom = OrderAtom(rng.choice(ATOM_KINDS), rng.randrange(num_vars), rng.randrange(num_vars))
    return Literal(rng.random() < 0.5, atom)


# ---------------------------------------------------------------------------
# Certificate mutation

_NODE_FAMILIES = (PropProof, CertProof, ConvProof, Formula, Literal, OrderAtom)

_NILADIC_CONVS = (
    LessLe(),
    NlessLe(),
    NleConv(),
    NlessConv(),
    AllConv(),
    NegAtomConv(),
    NegNegConv(),
    NegAndConv(),
    NegOrConv(),
    AndOrLConv(),
    AndOrRConv(),
)


def _count_nodes(node) -> int:
    total = 1
    for field in dataclasses.fields(node):
        child = getattr(node, field.name)
        if isinstance(child, _NODE_FAMILIES):
            total += _count_nodes(child)
    return total


def _mutate_node(rng: random.Random, node):
    if isinstance(node, OrderAtom):
        choice = rng.randrange(3)
        if choice == 0:
            kinds = [k for k in ATOM_KINDS if k != node.kind]
            return OrderAtom(rng.choice(kinds), node.x, node.y)
        if choice == 1:
            return OrderAtom(node.kind, node.x + 1, node.y)
        return OrderAtom(node.kind, node.y, node.x)
    if isinstance(node, Literal):
        return node.negate()
    if isinstance(node, AssmP):
        return rng.choice([EQE1P(node.lit), EQE2P(node.lit), AssmP(node.lit.negate())])
    if isinstance(node, ReflP):
        return ReflP(node.var + 1)
    if isinstance(node, TransP):
        return rng.choice([TransP(node.right, node.left), AntisymP(node.left, node.right)])
    if isinstance(node, AntisymP):
        return rng.choice([AntisymP(node.right, node.left), TransP(node.left, node.right)])
    if isinstance(node, EQE1P):
        return EQE2P(node.lit)
    if isinstance(node, EQE2P):
        return EQE1P(node.lit)
    if isinstance(node, ContrP):
        return rng.choice(
            [ContrP(node.lit.negate(), node.proof), ContrP(node.lit, ReflP(node.lit.atom.x))]
        )
    if isinstance(node, Atom):
        return Atom(node.lit.negate())
    if isinstance(node, And):
        return rng.choice([Or(node.left, node.right), And(node.right, node.left)])
    if isinstance(node, Or):
        return rng.choice([And(node.left, node.right), Or(node.right, node.left)])
    if isinstance(node, Neg):
        return node.arg
    if isinstance(node, Lift):
        return Lift(ReflP(0))
    if isinstance(node, ConjE):
        return ConjE(node.right, node.left, node.proof)
    if isinstance(node, DisjE):
        return rng.choice(
            [
                DisjE(node.right, node.left, node.left_proof, node.right_proof),
                DisjE(node.left, node.right, node.right_proof, node.left_proof),
            ]
        )
    if isinstance(node, ConvRule):
        return ConvRule(node.source, AllConv(), node.proof)
    if isinstance(node, AtomConv):
        return ArgConv(node.rule)
    if isinstance(node, ArgConv):
        return AtomConv(node.rule)
    if isinstance(node, BinopConv):
        return rng.choice(
            [BinopConv(node.right, node.left), ThenConv(node.left, node.right)]
        )
    if isinstance(node, ThenConv):
        return ThenConv(node.second, node.first)
    if isinstance(node, ConvProof):
        others = [c for c in _NILADIC_CONVS if type(c) is not type(node)]
        return rng.choice(others)
    raise AssertionError(f"unhandled node {node!r}")


def _rebuild(rng: random.Random, node, target: int, counter: int):
    if counter == target:
        return _mutate_node(rng, node), counter + _count_nodes(node)
    counter += 1
    values = {}
    for field in dataclasses.fields(node):
        child = getattr(node, field.name)
        if isinstance(child, _NODE_FAMILIES):
            child, counter = _rebuild(rng, child, target, counter)
        values[field.name] = child
    return type(node)(**values), counter


def mutate_cert(rng: random.Random, cert: PropProof) -> PropProof:
    """Replace one randomly chosen node of the certificate."""
    target = rng.randrange(_count_nodes(cert))
    mutated, _ = _rebuild(rng, cert, target, 0)
    return mutated
