"""Acceptance gate: eight criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they are produced.  All arithmetic is exact; every comparison below is
an equality, never a tolerance.
"""

import time

import pytest

from firmring.fields import QQ, GF
from firmring.linalg import Mat
from firmring.modules import (
    LeftModule,
    ModuleMap,
    hom_space,
    spin,
    submodule_from_subspace,
    direct_sum_modules,
    is_unitary_module,
    is_s_unital_module,
    is_firm_module,
)
from firmring.rings import (
    RingMorphism,
    IdempotentFamily,
    group_ring,
    field_as_ring,
    truncated_sequence_ring,
    matrix_ring,
    unitalization,
    square_zero_ring,
)
from firmring.separability import (
    solve_separability,
    verify_certificate,
    maschke_certificate,
    restriction_R,
    check_SF,
    ind_separability,
)
from firmring.semisimple import (
    radical,
    enumerate_subspaces,
    is_simple,
    find_complement,
    is_semisimple_module,
    is_left_semisimple_ring,
    maschke_pipeline,
)
from firmring.category import (
    FiniteFunctor,
    find_separability_structure,
    check_SF2_iff_SF3,
    check_pointed_equivalences,
    discrete_category,
    arrow_only_category,
    chain_poset_category,
    category_from_tables,
    collapse_functor,
    matrix_module_category,
)
from firmring import io as fio

from conftest import cyclic_table, s3_table, seeded, random_module


def _verdict(criterion, ok, detail):
    line = "CRITERION %d: %s — %s" % (criterion, "PASS" if ok else "FAIL",
                                      detail)
    print(line)
    assert ok, line


def qv(*vals):
    return [QQ.parse(str(v)) for v in vals]


def _bases():
    q = field_as_ring(QQ, "Q")
    q_fam = IdempotentFamily(q, [[QQ.one]])
    q3, fam3 = truncated_sequence_ring(QQ, 3)
    q5, fam5 = truncated_sequence_ring(QQ, 5)
    return [("Q", q, q_fam), ("Q3", q3, fam3), ("Q5", q5, fam5)]


def _groups():
    return [("C2", cyclic_table(2)), ("C3", cyclic_table(3)),
            ("C4", cyclic_table(4)), ("S3", s3_table())]


def test_criterion_1_maschke_suite():
    start = time.perf_counter()
    ok = True
    detail = []
    for bname, B, fam in _bases():
        for gname, table in _groups():
            cert, A, f = maschke_certificate(B, fam, table)
            verified, reason = verify_certificate(cert)
            report = maschke_pipeline(B, fam, table)
            if not verified or report["semisimple"] is not True:
                ok = False
                detail.append("(%s,%s): verified=%s semisimple=%s"
                              % (bname, gname, verified,
                                 report["semisimple"]))
    elapsed = time.perf_counter() - start
    if elapsed >= 10.0:
        ok = False
        detail.append("took %.2fs (limit 10s)" % elapsed)
    _verdict(1, ok, "12 (B,G) certificates verified, pipelines semisimple, "
             "%.2fs" % elapsed + ("; " + "; ".join(detail) if detail else ""))


def test_criterion_2_characteristic_obstruction():
    cases = [(GF(2), cyclic_table(2), "F2[C2]", 1),
             (GF(3), cyclic_table(3), "F3[C3]", None)]
    ok = True
    detail = []
    for field, table, name, rad_dim in cases:
        B = field_as_ring(field)
        A, inc = group_ring(B, table, name)
        cert, evidence = solve_separability(inc)
        if cert is not None or evidence is None:
            ok = False
            detail.append("%s: solver not infeasible" % name)
        rad = radical(A).radical
        if rad.dim == 0 or (rad_dim is not None and rad.dim != rad_dim):
            ok = False
            detail.append("%s: radical dim %d" % (name, rad.dim))
        if is_left_semisimple_ring(A):
            ok = False
            detail.append("%s: claimed semisimple" % name)
        res = is_semisimple_module(LeftModule.regular(A))
        if res.ok or res.witness is None or \
                find_complement(LeftModule.regular(A), res.witness) is not None:
            ok = False
            detail.append("%s: no complement-failure witness" % name)
    _verdict(2, ok, "infeasible solver, nonzero radical, witnessed "
             "non-semisimplicity for F2[C2] and F3[C3]"
             + ("; " + "; ".join(detail) if detail else ""))


def test_criterion_3_predicate_equivalence():
    corpus = [
        field_as_ring(QQ, "Q"),
        truncated_sequence_ring(QQ, 3)[0],
        matrix_ring(QQ, 2)[0],
        group_ring(field_as_ring(QQ), cyclic_table(2), "Q[C2]")[0],
        group_ring(field_as_ring(GF(3)), cyclic_table(3), "F3[C3]")[0],
        group_ring(field_as_ring(GF(5)), cyclic_table(2), "F5[C2]")[0],
    ]
    ok = True
    checked = 0
    bad = []
    for k, A in enumerate(corpus):
        rng = seeded(300 + k)
        for _ in range(50):
            M = random_module(A, rng, max_dim=6)
            u = is_unitary_module(M)
            s = is_s_unital_module(M)
            f = is_firm_module(M)
            checked += 1
            if not (u == s == f):
                ok = False
                bad.append("%s dim %d: %s/%s/%s" % (A.label, M.dim, u, s, f))
    # hierarchy-only witness over the non-s-unital square-zero ring
    Z = square_zero_ring(QQ, 2)
    R = LeftModule.regular(Z)
    if is_firm_module(R) or is_unitary_module(R):
        ok = False
        bad.append("square-zero regular module unexpectedly firm/unitary")
    _verdict(3, ok, "unitary/s-unital/firm agree on %d random modules over "
             "%d s-unital rings; square-zero witness holds" %
             (checked, len(corpus))
             + ("; " + "; ".join(bad[:3]) if bad else ""))


def _module_pool(A, rng):
    reg = LeftModule.regular(A)
    pool = [reg, direct_sum_modules([reg, reg])]
    v = [A.field.sample(rng) for _ in range(reg.dim)]
    S = spin(reg, [v])
    if 0 < S.dim < reg.dim:
        pool.append(submodule_from_subspace(reg, S)[0])
    return [M for M in pool if M.dim > 0]


def test_criterion_4_restriction_operator():
    extensions = []
    A1, _ = matrix_ring(QQ, 2)
    B1 = field_as_ring(QQ, "Q")
    inc1 = RingMorphism(B1, A1,
                        Mat.from_rows([qv(1), qv(0), qv(0), qv(1)]))
    extensions.append(("M2(Q)/Q", inc1))
    A2, inc2 = group_ring(field_as_ring(QQ, "Q"), cyclic_table(2), "Q[C2]")
    extensions.append(("Q[C2]/Q", inc2))
    ok = True
    counts = []
    for name, inc in extensions:
        cert, evidence = solve_separability(inc)
        assert evidence is None, name
        A = inc.target
        rng = seeded(400)
        pool = _module_pool(A, rng)
        sf1 = sf3 = 0
        while sf1 < 100:
            M = pool[rng.randrange(len(pool))]
            N = pool[rng.randrange(len(pool))]
            basis = hom_space(M, N)
            if not basis:
                continue
            h = Mat.zero(QQ, N.dim, M.dim)
            for b in basis:
                h = h + b.matrix.scale(QQ.sample(rng))
            if not check_SF("SF1", restriction_R, cert, M, N, h):
                ok = False
            sf1 += 1
        while sf3 < 100:
            M = pool[rng.randrange(len(pool))]
            N = pool[rng.randrange(len(pool))]
            P = pool[rng.randrange(len(pool))]
            # base is Q, so any matrix is B-linear
            g = Mat.from_rows([[QQ.sample(rng) for _ in range(M.dim)]
                               for _ in range(N.dim)])
            hb = hom_space(N, P)
            if not hb:
                continue
            h = Mat.zero(QQ, P.dim, N.dim)
            for b in hb:
                h = h + b.matrix.scale(QQ.sample(rng))
            if not check_SF("SF3-case1", restriction_R,
                            cert, M, N, P, g, h):
                ok = False
            # case 2: A-linear first, then B-linear
            gb = hom_space(M, N)
            if gb:
                g2 = Mat.zero(QQ, N.dim, M.dim)
                for b in gb:
                    g2 = g2 + b.matrix.scale(QQ.sample(rng))
                h2 = Mat.from_rows([[QQ.sample(rng) for _ in range(N.dim)]
                                    for _ in range(P.dim)])
                if not check_SF("SF3-case2", restriction_R,
                                cert, M, N, P, g2, h2):
                    ok = False
            sf3 += 1
        counts.append("%s: %d SF1, %d SF3 pairs" % (name, sf1, sf3))
    _verdict(4, ok, "; ".join(counts) +
             "; every output passed the A-linearity assertion")


def test_criterion_5_induction_splittings():
    ok = True
    detail = []
    # Q into Q[C2]
    A, inc = group_ring(field_as_ring(QQ, "Q"), cyclic_table(2), "Q[C2]")
    s = ind_separability(inc)
    if s is None or (s @ inc.matrix).data != Mat.identity(QQ, 1).data:
        ok = False
        detail.append("Q into Q[C2] splitting wrong")
    # diagonal Q^2 into M2(Q)
    M2, _ = matrix_ring(QQ, 2)
    D2, _ = truncated_sequence_ring(QQ, 2)
    diag = RingMorphism(D2, M2, Mat.from_rows(
        [qv(1, 0), qv(0, 0), qv(0, 0), qv(0, 1)]))
    s2 = ind_separability(diag)
    if s2 is None or (s2 @ diag.matrix).data != Mat.identity(QQ, 2).data:
        ok = False
        detail.append("diagonal into M2(Q) splitting wrong")
    else:
        # exact re-substitution of the bimodule law on every basis pair
        for b in range(2):
            for a in range(4):
                fb = diag.matrix.col(b)
                ea = M2.basis_element(a)
                if s2.apply(M2.mul(fb, ea)) != \
                        D2.mul(D2.basis_element(b), s2.apply(ea)) or \
                        s2.apply(M2.mul(ea, fb)) != \
                        D2.mul(s2.apply(ea), D2.basis_element(b)):
                    ok = False
                    detail.append("bimodule law fails at (%d,%d)" % (b, a))
    # dual numbers into M2(Q): no bimodule retraction exists
    DN = unitalization(square_zero_ring(QQ, 1))
    f = RingMorphism(DN, M2, Mat.from_rows(
        [qv(1, 0), qv(0, 1), qv(0, 0), qv(1, 0)]))
    if ind_separability(f) is not None:
        ok = False
        detail.append("dual-number embedding wrongly split")
    _verdict(5, ok, "splittings found and re-substituted for Q in Q[C2] and "
             "diag Q^2 in M2(Q); absent for the dual-number embedding"
             + ("; " + "; ".join(detail) if detail else ""))


def test_criterion_6_oracle_equivalence():
    F2 = GF(2)
    rings = [
        group_ring(field_as_ring(F2), cyclic_table(2), "F2[C2]")[0],
        field_as_ring(F2, "F2"),
        truncated_sequence_ring(F2, 2)[0],
    ]
    ok = True
    compared = 0
    bad = []
    for k, A in enumerate(rings):
        rng = seeded(600 + k)
        for _ in range(70):
            M = random_module(A, rng, max_dim=4, allow_non_s_unital=False)
            invariant = [
                S for S in enumerate_subspaces(F2, M.dim)
                if all(S.member(M.actions[i].apply(list(row)))
                       for row in S.basis for i in range(A.dim))
            ]
            oracle_simple = (M.dim > 0 and not any(
                0 < S.dim < M.dim for S in invariant))
            oracle_ss = all(
                any(T.dim + S.dim == M.dim and S.intersect(T).dim == 0
                    for T in invariant)
                for S in invariant)
            if is_simple(M) != oracle_simple:
                ok = False
                bad.append("%s dim %d simple" % (A.label, M.dim))
            if is_semisimple_module(M).ok != oracle_ss:
                ok = False
                bad.append("%s dim %d semisimple" % (A.label, M.dim))
            compared += 1
    if compared < 200:
        ok = False
        bad.append("only %d modules compared" % compared)
    _verdict(6, ok, "implementation agrees with exhaustive-subspace oracles "
             "on %d random F2 modules" % compared
             + ("; " + "; ".join(bad[:3]) if bad else ""))


def _category_corpus():
    cats = [
        ("point", discrete_category(1)),
        ("discrete3", discrete_category(3)),
        ("arrow-only", arrow_only_category()),
        ("chain2", chain_poset_category(2)),
        ("chain4", chain_poset_category(4)),
    ]
    # parallel pair and its collapse target
    C = category_from_tables(
        ["X", "Y"],
        [("idX", "X", "X"), ("idY", "Y", "Y"),
         ("u", "X", "Y"), ("v", "X", "Y")],
        {("idX", "idX"): "idX", ("idY", "idY"): "idY",
         ("u", "idX"): "u", ("idY", "u"): "u",
         ("v", "idX"): "v", ("idY", "v"): "v"},
        {"X": "idX", "Y": "idY"}, "parallel")
    D = category_from_tables(
        ["X", "Y"],
        [("idX", "X", "X"), ("idY", "Y", "Y"), ("w", "X", "Y")],
        {("idX", "idX"): "idX", ("idY", "idY"): "idY",
         ("w", "idX"): "w", ("idY", "w"): "w"},
        {"X": "idX", "Y": "idY"}, "single-arrow")
    pointed = category_from_tables(
        ["Z", "M"],
        [("idZ", "Z", "Z"), ("idM", "M", "M"),
         ("zm", "Z", "M"), ("mz", "M", "Z"), ("o", "M", "M")],
        {("idZ", "idZ"): "idZ", ("idM", "idM"): "idM",
         ("zm", "idZ"): "zm", ("idM", "zm"): "zm",
         ("mz", "idM"): "mz", ("idZ", "mz"): "mz",
         ("mz", "zm"): "idZ", ("zm", "mz"): "o",
         ("o", "idM"): "o", ("idM", "o"): "o",
         ("o", "o"): "o", ("o", "zm"): "zm", ("mz", "o"): "mz"},
        {"Z": "idZ", "M": "idM"}, "pointed2")
    cats += [("parallel", C), ("single-arrow", D), ("pointed2", pointed)]
    B = field_as_ring(GF(3), "F3")
    A, _ = group_ring(B, cyclic_table(2), "F3[C2]")
    Mcat = matrix_module_category(A, [LeftModule.regular(A)], "modF3C2")
    cats.append(("modF3C2", Mcat))
    nonfaithful = [
        ("collapse-parallel", FiniteFunctor(C, D, [0, 1], [0, 1, 2, 2])),
    ]
    return cats, nonfaithful


def test_criterion_7_category_engine():
    start = time.perf_counter()
    ok = True
    detail = []
    cats, nonfaithful = _category_corpus()
    for name, C in cats:
        S = find_separability_structure(FiniteFunctor.identity(C))
        if S is None or not S.verify():
            ok = False
            detail.append("identity on %s: no verified structure" % name)
        elif not check_SF2_iff_SF3(S):
            ok = False
            detail.append("SF2/SF3 disagree on %s" % name)
        rep = check_pointed_equivalences(C)
        if rep["pointed"] and not rep["equivalent"]:
            ok = False
            detail.append("pointed equivalences fail on %s" % name)
    for name, F in nonfaithful:
        if find_separability_structure(F) is not None:
            ok = False
            detail.append("non-faithful %s wrongly has a structure" % name)
    # empty-hom obstruction, same conclusion as non-faithfulness
    if find_separability_structure(collapse_functor(2)) is not None:
        ok = False
        detail.append("discrete collapse wrongly has a structure")
    # Example facts: |Sub(M)| = 2 and f has no retraction
    A = arrow_only_category()
    f = A.names.index("f")
    if len(A.subobject_table(0)) != 2 or A.retractions_of(f):
        ok = False
        detail.append("arrow-only subobject facts wrong")
    elapsed = time.perf_counter() - start
    if elapsed >= 60.0:
        ok = False
        detail.append("took %.2fs (limit 60s)" % elapsed)
    pointed_count = sum(
        1 for _, C in cats if check_pointed_equivalences(C)["pointed"])
    _verdict(7, ok, "%d corpus categories searched exhaustively, %d pointed, "
             "%.2fs" % (len(cats), pointed_count, elapsed)
             + ("; " + "; ".join(detail) if detail else ""))


def test_criterion_8_determinism():
    ok = True
    detail = []
    # certificates from two independent solver runs
    blobs = []
    for _ in range(2):
        A, _ = matrix_ring(QQ, 2)
        B = field_as_ring(QQ, "Q")
        inc = RingMorphism(B, A,
                           Mat.from_rows([qv(1), qv(0), qv(0), qv(1)]))
        cert, _ = solve_separability(inc)
        blobs.append(fio.dump_canonical(
            fio.certificate_to_json(cert, "M2", "Q")).encode())
    if blobs[0] != blobs[1]:
        ok = False
        detail.append("certificates differ between runs")
    # pipeline reports from two independent runs
    reports = []
    for _ in range(2):
        B, fam = truncated_sequence_ring(QQ, 3)
        rep = maschke_pipeline(B, fam, cyclic_table(4))
        reports.append(fio.dump_canonical(
            {k: str(v) for k, v in sorted(rep["checks"].items())}).encode())
    if reports[0] != reports[1]:
        ok = False
        detail.append("pipeline reports differ between runs")
    _verdict(8, ok, "certificates and reports byte-identical across runs"
             + ("; " + "; ".join(detail) if detail else ""))
