"""Shared builders for the test suite.

Everything random is driven by explicitly seeded random.Random
instances so reruns are bit-for-bit repeatable.
"""

import itertools
import random

import pytest

from firmring.fields import QQ, GF
from firmring.linalg import Mat, Subspace, solve
from firmring.rings import (
    StructureRing,
    group_ring,
    field_as_ring,
    truncated_sequence_ring,
    matrix_ring,
)
from firmring.modules import (
    LeftModule,
    spin,
    submodule_from_subspace,
    quotient_module,
    direct_sum_modules,
)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def s3_table():
    perms = sorted(itertools.permutations(range(3)),
                   key=lambda p: p != (0, 1, 2))
    idx = {p: i for i, p in enumerate(perms)}
    return [
        [idx[tuple(p[q[i]] for i in range(3))] for q in perms]
        for p in perms
    ]


def zero_action_module(ring, dim, label="zero-action"):
    acts = [Mat.zero(ring.field, dim, dim) for _ in range(ring.dim)]
    return LeftModule(ring, acts, label, check=False)


def random_invertible(field, n, rng):
    while True:
        m = Mat.from_rows(
            [[field.sample(rng) for _ in range(n)] for _ in range(n)])
        if Subspace.from_vectors(field, n, m.data).dim == n:
            return m


def conjugate_module(M, P, label=""):
    """Same module in a different basis: actions become P rho P^{-1}."""
    pinv = solve(P, Mat.identity(M.field, M.dim), M.field)
    acts = [(P @ a) @ pinv for a in M.actions]
    return LeftModule(M.ring, acts, label or (M.label + " (conj)"))


def random_module(A, rng, max_dim=6, allow_non_s_unital=True):
    """A random left module assembled from pieces of the regular module.

    Pieces are spun submodules and quotients of the regular module (all
    s-unital over the corpus rings), optionally a zero-action line, the
    whole summed and conjugated by a random invertible change of basis.
    """
    reg = LeftModule.regular(A)
    pool = [reg]
    for _ in range(3):
        M = pool[rng.randrange(len(pool))]
        if M.dim == 0:
            continue
        v = [A.field.sample(rng) for _ in range(M.dim)]
        S = spin(M, [v])
        if 0 < S.dim:
            sub, _ = submodule_from_subspace(M, S)
            pool.append(sub)
        if 0 < S.dim < M.dim:
            quo, _ = quotient_module(M, S)
            pool.append(quo)
    parts = []
    total = 0
    budget = rng.randrange(1, max_dim + 1)
    for _ in range(6):
        if total >= budget:
            break
        if allow_non_s_unital and rng.random() < 0.12:
            parts.append(zero_action_module(A, 1))
            total += 1
            continue
        M = pool[rng.randrange(len(pool))]
        if M.dim and total + M.dim <= budget:
            parts.append(M)
            total += M.dim
    if not parts:
        parts = [pool[0]]
        total = pool[0].dim
    M = parts[0] if len(parts) == 1 else direct_sum_modules(parts)
    if M.dim > 1 and rng.random() < 0.7:
        M = conjugate_module(M, random_invertible(A.field, M.dim, rng))
    return M


# -- common rings --------------------------------------------------------------


@pytest.fixture(scope="session")
def QQ_ring():
    return field_as_ring(QQ, "Q")


@pytest.fixture(scope="session")
def Q3_ring():
    return truncated_sequence_ring(QQ, 3)


@pytest.fixture(scope="session")
def M2Q():
    return matrix_ring(QQ, 2)


@pytest.fixture(scope="session")
def QC2():
    B = field_as_ring(QQ, "Q")
    return group_ring(B, cyclic_table(2), "Q[C2]")


@pytest.fixture(scope="session")
def F2C2():
    B = field_as_ring(GF(2), "F2")
    return group_ring(B, cyclic_table(2), "F2[C2]")


def seeded(n=0):
    return random.Random(20260826 + n)
