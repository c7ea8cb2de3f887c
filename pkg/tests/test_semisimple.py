import pytest

from firmring.fields import QQ, GF
from firmring.linalg import Mat, Subspace
from firmring.modules import (
    LeftModule,
    spin,
    submodule_from_subspace,
    direct_sum_modules,
)
from firmring.rings import (
    StructureRing,
    group_ring,
    field_as_ring,
    truncated_sequence_ring,
    matrix_ring,
    square_zero_ring,
)
from firmring.semisimple import (
    radical,
    enumerate_subspaces,
    find_proper_submodule,
    is_simple,
    find_complement,
    is_semisimple_module,
    is_left_semisimple_ring,
    maschke_pipeline,
    NotSUnital,
    UnsupportedCharacteristic,
)

from conftest import cyclic_table, s3_table, seeded, random_module


def qv(*vals):
    return [QQ.parse(str(v)) for v in vals]


def upper_triangular_2x2():
    """Basis e00, e01, e11 of the upper triangular 2x2 matrices."""
    z, one = QQ.zero, QQ.one
    c = [[[z] * 3 for _ in range(3)] for _ in range(3)]

    def setp(i, j, k):
        c[i][j][k] = one

    setp(0, 0, 0)  # e00*e00
    setp(0, 1, 1)  # e00*e01
    setp(1, 2, 1)  # e01*e11
    setp(2, 2, 2)  # e11*e11
    return StructureRing.from_constants(QQ, c, "T2(Q)")


def test_radical_of_semisimple_rings_is_zero():
    for A in (field_as_ring(QQ),
              matrix_ring(QQ, 2)[0],
              group_ring(field_as_ring(QQ), cyclic_table(3))[0]):
        assert radical(A).radical.dim == 0


def test_radical_of_f2c2_is_the_augmentation_line(F2C2):
    A, _ = F2C2
    rep = radical(A)
    assert rep.radical.dim == 1
    one = GF(2).one
    assert list(rep.radical.basis[0]) == [one, one]  # span of 1+g


def test_radical_of_upper_triangular():
    T = upper_triangular_2x2()
    rep = radical(T)
    assert rep.radical.dim == 1
    # the strictly upper triangular part
    assert rep.radical.member(qv(0, 1, 0))


def test_radical_of_square_zero_is_everything():
    Z = square_zero_ring(GF(3), 2)
    assert radical(Z).radical.dim == 2


def test_radical_methods_by_characteristic():
    assert radical(field_as_ring(QQ)).method == "TraceForm"
    assert radical(field_as_ring(GF(2))).method == "BruteForceNilpotent"


def test_enumerate_subspaces_count():
    # Gaussian binomial: F2^2 has 1 + 3 + 1 = 5 subspaces
    assert sum(1 for _ in enumerate_subspaces(GF(2), 2)) == 5
    # F3^2: 1 + 4 + 1 = 6
    assert sum(1 for _ in enumerate_subspaces(GF(3), 2)) == 6
    with pytest.raises(UnsupportedCharacteristic):
        next(enumerate_subspaces(QQ, 2))


def test_regular_qc3_is_not_simple():
    """The spinning test alone misses this one; the full finder must not."""
    A, _ = group_ring(field_as_ring(QQ), cyclic_table(3), "Q[C3]")
    M = LeftModule.regular(A)
    S = find_proper_submodule(M)
    assert S is not None and 0 < S.dim < 3
    assert not is_simple(M)


def test_rotation_module_is_simple():
    A, _ = group_ring(field_as_ring(QQ), cyclic_table(3), "Q[C3]")
    # g acts by rotation by 120 degrees: irreducible over Q
    rot = Mat.from_rows([qv(0, -1), qv(1, -1)])
    M = LeftModule(A, [Mat.identity(QQ, 2), rot, rot @ rot])
    assert is_simple(M)


def test_isotypic_square_is_not_simple():
    A, _ = group_ring(field_as_ring(QQ), cyclic_table(3), "Q[C3]")
    rot = Mat.from_rows([qv(0, -1), qv(1, -1)])
    M = LeftModule(A, [Mat.identity(QQ, 2), rot, rot @ rot])
    MM = direct_sum_modules([M, M])
    assert not is_simple(MM)
    res = is_semisimple_module(MM)
    assert res.ok
    assert sorted(s.dim for s, simple in res.decomposition.summands) == [2, 2]


def test_is_simple_guards_non_s_unital():
    Z = square_zero_ring(QQ, 2)
    with pytest.raises(NotSUnital):
        is_simple(LeftModule.regular(Z))


def test_find_complement_in_qc2(QC2):
    A, _ = QC2
    M = LeftModule.regular(A)
    S = spin(M, [qv(1, 1)])
    comp = find_complement(M, S)
    assert comp is not None
    assert comp.dim == 1
    assert S.sum(comp).dim == 2
    # frozen: the complement of span(1+g) is span(1-g)
    assert comp.member(qv(1, -1))


def test_find_complement_fails_in_char_2(F2C2):
    A, _ = F2C2
    M = LeftModule.regular(A)
    one = GF(2).one
    S = Subspace.from_vectors(GF(2), 2, [[one, one]])
    assert find_complement(M, S) is None


def test_semisimple_witness_is_uncomplemented(F2C2):
    A, _ = F2C2
    res = is_semisimple_module(LeftModule.regular(A))
    assert not res.ok
    W = res.witness
    assert W is not None and 0 < W.dim < 2
    assert find_complement(LeftModule.regular(A), W) is None


def test_ring_semisimplicity_cross_check():
    assert is_left_semisimple_ring(matrix_ring(QQ, 2)[0])
    assert is_left_semisimple_ring(truncated_sequence_ring(QQ, 3)[0])
    assert not is_left_semisimple_ring(upper_triangular_2x2())
    with pytest.raises(NotSUnital):
        is_left_semisimple_ring(square_zero_ring(QQ, 1))


def test_maschke_pipeline_green(Q3_ring):
    B, fam = Q3_ring
    report = maschke_pipeline(B, fam, cyclic_table(4))
    assert all(report["checks"][k] for k in (
        "base_locally_unital", "group_order_invertible",
        "base_semisimple", "inclusion_left_s_unital",
        "certificate_verified"))
    assert report["semisimple"] is True
    assert report["prediction_applies"] and report["matches_prediction"]


def test_maschke_pipeline_char_obstruction():
    from firmring.rings import IdempotentFamily
    B = field_as_ring(GF(2), "F2")
    fam = IdempotentFamily(B, [[GF(2).one]])
    report = maschke_pipeline(B, fam, cyclic_table(2))
    assert report["checks"]["group_order_invertible"] is False
    assert report["semisimple"] is False
    assert not report["prediction_applies"]
    assert report["matches_prediction"]  # hypotheses fail, nothing promised


def test_brute_force_oracles_agree_on_f2(F2C2):
    """Exhaustive-subspace oracles vs the implementation, small sample."""
    A, _ = F2C2
    rng = seeded(66)
    compared = 0
    for _ in range(25):
        M = random_module(A, rng, max_dim=4, allow_non_s_unital=False)
        invariant = [
            S for S in enumerate_subspaces(GF(2), M.dim)
            if all(S.member(M.actions[i].apply(list(row)))
                   for row in S.basis for i in range(A.dim))
        ]
        oracle_simple = (M.dim > 0 and
                         sum(1 for S in invariant if 0 < S.dim < M.dim) == 0)
        oracle_ss = all(
            any(T.dim + S.dim == M.dim and S.intersect(T).dim == 0
                for T in invariant)
            for S in invariant)
        assert is_simple(M) == oracle_simple
        assert is_semisimple_module(M).ok == oracle_ss
        compared += 1
    assert compared == 25
