import pytest

from firmring.fields import GF
from firmring.category import (
    FiniteCategory,
    FiniteFunctor,
    CategoryError,
    SearchBudgetExceeded,
    SeparabilityStructure,
    find_separability_structure,
    check_SF1,
    check_SF2,
    check_SF3,
    check_SF2_iff_SF3,
    check_reflection,
    check_pointed_equivalences,
    compose_and_check,
    REFLECTION_PROPERTIES,
    category_from_tables,
    discrete_category,
    terminal_category,
    arrow_only_category,
    chain_poset_category,
    collapse_functor,
    matrix_module_category,
)


def parallel_pair_category():
    """X ==> Y with two parallel arrows (no nonidentity composites)."""
    return category_from_tables(
        ["X", "Y"],
        [("idX", "X", "X"), ("idY", "Y", "Y"),
         ("u", "X", "Y"), ("v", "X", "Y")],
        {("idX", "idX"): "idX", ("idY", "idY"): "idY",
         ("u", "idX"): "u", ("idY", "u"): "u",
         ("v", "idX"): "v", ("idY", "v"): "v"},
        {"X": "idX", "Y": "idY"})


def single_arrow_category():
    return category_from_tables(
        ["X", "Y"],
        [("idX", "X", "X"), ("idY", "Y", "Y"), ("w", "X", "Y")],
        {("idX", "idX"): "idX", ("idY", "idY"): "idY",
         ("w", "idX"): "w", ("idY", "w"): "w"},
        {"X": "idX", "Y": "idY"})


def pointed_two_object_category():
    """A zero object Z plus an object M with Hom(M,M) = {id, 0}."""
    return category_from_tables(
        ["Z", "M"],
        [("idZ", "Z", "Z"), ("idM", "M", "M"),
         ("zm", "Z", "M"), ("mz", "M", "Z"), ("o", "M", "M")],
        {("idZ", "idZ"): "idZ", ("idM", "idM"): "idM",
         ("zm", "idZ"): "zm", ("idM", "zm"): "zm",
         ("mz", "idM"): "mz", ("idZ", "mz"): "mz",
         ("mz", "zm"): "idZ", ("zm", "mz"): "o",
         ("o", "idM"): "o", ("idM", "o"): "o",
         ("o", "o"): "o", ("o", "zm"): "zm", ("mz", "o"): "mz"},
        {"Z": "idZ", "M": "idM"})


def test_bad_associativity_is_named():
    # a 1-object "category" whose composition is not associative:
    # (a a) a = b a = a  but  a (a a) = a b = id
    with pytest.raises(CategoryError, match="associativity"):
        FiniteCategory(
            ["X"], [0, 0, 0], [0, 0, 0],
            {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2,
             (1, 1): 2, (1, 2): 0, (2, 1): 1, (2, 2): 2},
            [0])


def test_missing_identity_law():
    with pytest.raises(CategoryError, match="identity"):
        FiniteCategory(
            ["X"], [0, 0], [0, 0],
            {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1},
            [0])


def test_example_arrow_only_category():
    A = arrow_only_category()
    M, N = 0, 1
    assert len(A.subobject_table(M)) == 2
    assert A.is_subobject_simple(M)
    f = A.names.index("f")
    assert A.is_mono(f)
    assert A.retractions_of(f) == []
    assert not A.is_subobject_semisimple(M)


def test_monos_and_epis_in_parallel_pair():
    C = parallel_pair_category()
    u = C.names.index("u")
    # u and v cannot be distinguished by composition: both mono & epi
    # (vacuously, nothing composes nontrivially)
    assert C.is_mono(u) and C.is_epi(u)


def test_identity_functor_always_has_structure():
    for C in (discrete_category(3), arrow_only_category(),
              chain_poset_category(4), parallel_pair_category(),
              pointed_two_object_category()):
        S = find_separability_structure(FiniteFunctor.identity(C))
        assert S is not None
        assert check_SF1(S) and check_SF2(S)
        assert check_SF2_iff_SF3(S)


def test_non_faithful_functor_has_no_structure():
    C = parallel_pair_category()
    D = single_arrow_category()
    # u and v both collapse onto w
    F = FiniteFunctor(C, D, [0, 1], [0, 1, 2, 2], "collapse-parallel")
    assert find_separability_structure(F) is None


def test_collapse_functor_fails_on_empty_homs():
    assert find_separability_structure(collapse_functor(2)) is None


def test_structure_verification_is_independent():
    C = arrow_only_category()
    S = find_separability_structure(FiniteFunctor.identity(C))
    # swap a value: SF1 must now fail
    bad_R = {k: dict(v) for k, v in S.R.items()}
    bad_R[(1, 0)][C.names.index("f")] = C.names.index("f")  # unchanged
    key = (0, 0)
    bad_R[key][C.identities[0]] = C.identities[0]
    tampered = SeparabilityStructure(S.functor, bad_R)
    assert tampered.verify()  # unchanged copy still fine
    bad_R2 = {k: dict(v) for k, v in S.R.items()}
    bad_R2[(1, 0)][C.names.index("f")] = 99
    broken = SeparabilityStructure(S.functor, bad_R2)
    assert not check_SF1(broken)


def test_budget_exhaustion_raises():
    ring_cat = matrix_module_category_for_budget()
    sub = category_from_tables(
        ["M"], [("idM", "M", "M")], {("idM", "idM"): "idM"}, {"M": "idM"})
    F = FiniteFunctor(sub, ring_cat, [0], [ring_cat.identities[0]])
    with pytest.raises(SearchBudgetExceeded):
        find_separability_structure(F, budget=2)
    # with a real budget the same search succeeds
    assert find_separability_structure(F, budget=10 ** 5) is not None


def matrix_module_category_for_budget():
    from firmring.rings import group_ring, field_as_ring
    from firmring.modules import LeftModule
    B = field_as_ring(GF(3), "F3")
    A, _ = group_ring(B, [[0, 1], [1, 0]], "F3[C2]")
    return matrix_module_category(A, [LeftModule.regular(A)], "modF3C2")


def test_pointed_category_equivalences():
    rep = check_pointed_equivalences(pointed_two_object_category())
    assert rep["pointed"] and rep["equivalent"]
    # Z satisfies all six, M none
    assert rep["objects"][0] == (True,) * 6
    assert rep["objects"][1] == (False,) * 6


def test_chain_poset_is_not_pointed():
    rep = check_pointed_equivalences(chain_poset_category(3))
    assert rep["pointed"] is False


def test_initial_terminal_zero_detection():
    C = chain_poset_category(3)
    assert C.is_initial(0) and not C.is_initial(1)
    assert C.is_terminal(2) and not C.is_terminal(0)
    assert C.zero_objects() == []
    P = pointed_two_object_category()
    assert P.zero_objects() == [0]


def test_reflection_reports_on_identity():
    C = pointed_two_object_category()
    F = FiniteFunctor.identity(C)
    S = find_separability_structure(F)
    for prop in REFLECTION_PROPERTIES:
        r = check_reflection(F, S, prop)
        assert r["holds"], (prop, r["violations"])


def test_reflection_on_module_category_inclusion():
    """Restriction-like inclusion of a one-object subcategory."""
    D = matrix_module_category_for_budget()
    sub = category_from_tables(
        ["M"], [("idM", "M", "M")], {("idM", "idM"): "idM"}, {"M": "idM"})
    F = FiniteFunctor(sub, D, [0], [D.identities[0]])
    S = find_separability_structure(F)
    assert S is not None
    for prop in REFLECTION_PROPERTIES:
        r = check_reflection(F, S, prop)
        assert r["holds"], (prop, r["violations"])


def test_composition_implications():
    C = parallel_pair_category()
    D = single_arrow_category()
    F = FiniteFunctor(C, D, [0, 1], [0, 1, 2, 2])
    G = FiniteFunctor.identity(D)
    rep = compose_and_check(F, G)
    assert rep["compose_implication"] and rep["restrict_implication"]
    rep2 = compose_and_check(FiniteFunctor.identity(C), F)
    assert rep2["compose_implication"] and rep2["restrict_implication"]


def test_functor_validation():
    C = parallel_pair_category()
    with pytest.raises(CategoryError):
        # maps u to idX: wrong endpoints
        FiniteFunctor(C, C, [0, 1], [0, 1, 0, 3])


def test_projective_injective_in_module_category():
    D = matrix_module_category_for_budget()
    # the regular module over a semisimple-looking ring: but F3[C2] is
    # semisimple (|C2| invertible mod 3), so everything splits
    assert D.is_projective(0)
    assert D.is_injective(0)
    assert D.is_subobject_semisimple(0)
    assert D.is_quotient_semisimple(0)
