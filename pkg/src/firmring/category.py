"""Finite categories as composition tables, with exhaustive checks.

Morphisms are integers with source/target object indices; composition
is a total table on composable pairs, validated at construction.  On
top of this: cancellability-based monos/epis, subobject and quotient
classes via mutual factoring, an exhaustive backtracking search for
splitting structures on functors (a family R of sections of the functor
action on hom sets), and machine verification of the reflection
properties such structures force.
"""

from __future__ import annotations

from itertools import product


class CategoryError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


DEFAULT_BUDGET = 10 ** 7


class FiniteCategory:
    def __init__(self, objects, src, dst, compose, identities, names=None,
                 label: str = ""):
        """objects: labels; src/dst: per-morphism object indices;
        compose: dict (g, f) -> g o f on composable pairs; identities:
        per-object morphism index."""
        self.objects = list(objects)
        self.src = list(src)
        self.dst = list(dst)
        self.compose_table = dict(compose)
        self.identities = list(identities)
        self.names = list(names) if names else [
            "m%d" % i for i in range(len(src))]
        self.label = label
        self._homs: dict = {}
        for m in range(len(src)):
            self._homs.setdefault((src[m], dst[m]), []).append(m)
        self._validate()

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.src)

    def hom(self, a: int, b: int) -> list:
        return self._homs.get((a, b), [])

    def compose(self, g: int, f: int) -> int:
        """g o f (f first)."""
        if self.dst[f] != self.src[g]:
            raise CategoryError("morphisms not composable")
        return self.compose_table[(g, f)]

    def _validate(self):
        n = self.n_morphisms
        if len(self.identities) != self.n_objects:
            raise CategoryError("need one identity per object")
        for o, i in enumerate(self.identities):
            if self.src[i] != o or self.dst[i] != o:
                raise CategoryError("identity of object %d has wrong ends" % o)
        for g in range(n):
            for f in range(n):
                if self.dst[f] == self.src[g]:
                    if (g, f) not in self.compose_table:
                        raise CategoryError(
                            "composition undefined on (%d, %d)" % (g, f))
                    h = self.compose_table[(g, f)]
                    if self.src[h] != self.src[f] or self.dst[h] != self.dst[g]:
                        raise CategoryError(
                            "composite of (%d, %d) has wrong ends" % (g, f))
                elif (g, f) in self.compose_table:
                    raise CategoryError(
                        "composition defined on non-composable (%d, %d)" % (g, f))
        for f in range(n):
            if self.compose_table[(f, self.identities[self.src[f]])] != f:
                raise CategoryError("right identity law fails at %d" % f)
            if self.compose_table[(self.identities[self.dst[f]], f)] != f:
                raise CategoryError("left identity law fails at %d" % f)
        for h in range(n):
            for g in range(n):
                if self.dst[g] != self.src[h]:
                    continue
                hg = self.compose_table[(h, g)]
                for f in range(n):
                    if self.dst[f] != self.src[g]:
                        continue
                    if self.compose_table[(hg, f)] != \
                            self.compose_table[(h, self.compose_table[(g, f)])]:
                        raise CategoryError(
                            "associativity fails at (%d, %d, %d)" % (h, g, f))

    # -- morphism classes -------------------------------------------------

    def is_mono(self, f: int) -> bool:
        m = self.src[f]
        for p in range(self.n_objects):
            hom = self.hom(p, m)
            for g1 in hom:
                for g2 in hom:
                    if g1 < g2 and \
                            self.compose(f, g1) == self.compose(f, g2):
                        return False
        return True

    def is_epi(self, f: int) -> bool:
        n = self.dst[f]
        for q in range(self.n_objects):
            hom = self.hom(n, q)
            for h1 in hom:
                for h2 in hom:
                    if h1 < h2 and \
                            self.compose(h1, f) == self.compose(h2, f):
                        return False
        return True

    def retractions_of(self, f: int) -> list:
        """All r with r o f = id_{src f}."""
        return [r for r in self.hom(self.dst[f], self.src[f])
                if self.compose(r, f) == self.identities[self.src[f]]]

    def sections_of(self, f: int) -> list:
        """All s with f o s = id_{dst f}."""
        return [s for s in self.hom(self.dst[f], self.src[f])
                if self.compose(f, s) == self.identities[self.dst[f]]]

    def is_iso(self, f: int) -> bool:
        return any(self.compose(f, r) == self.identities[self.dst[f]]
                   for r in self.retractions_of(f))

    def inverses_of(self, f: int) -> list:
        return [g for g in self.retractions_of(f)
                if self.compose(f, g) == self.identities[self.dst[f]]]

    # -- subobjects and quotients -----------------------------------------

    def subobject_table(self, m: int) -> list:
        """Equivalence classes of monomorphisms into object m.

        Two monos f, g are identified when each factors through the
        other (f = g p and g = f q for some p, q).
        """
        monos = [f for f in range(self.n_morphisms)
                 if self.dst[f] == m and self.is_mono(f)]
        classes: list = []
        for f in monos:
            placed = False
            for cls in classes:
                g = cls[0]
                fp = any(self.compose(g, p) == f
                         for p in self.hom(self.src[f], self.src[g]))
                gq = any(self.compose(f, q) == g
                         for q in self.hom(self.src[g], self.src[f]))
                if fp and gq:
                    cls.append(f)
                    placed = True
                    break
            if not placed:
                classes.append([f])
        return classes

    def quotient_table(self, m: int) -> list:
        """Equivalence classes of epimorphisms out of object m."""
        epis = [f for f in range(self.n_morphisms)
                if self.src[f] == m and self.is_epi(f)]
        classes: list = []
        for f in epis:
            placed = False
            for cls in classes:
                g = cls[0]
                fp = any(self.compose(p, g) == f
                         for p in self.hom(self.dst[g], self.dst[f]))
                gq = any(self.compose(q, f) == g
                         for q in self.hom(self.dst[f], self.dst[g]))
                if fp and gq:
                    cls.append(f)
                    placed = True
                    break
            if not placed:
                classes.append([f])
        return classes

    def is_subobject_trivial(self, m: int) -> bool:
        return len(self.subobject_table(m)) == 1

    def is_subobject_simple(self, m: int) -> bool:
        return len(self.subobject_table(m)) == 2

    def is_subobject_semisimple(self, m: int) -> bool:
        for f in range(self.n_morphisms):
            if self.dst[f] == m and self.is_mono(f) and \
                    not self.retractions_of(f):
                return False
        return True

    def is_quotient_trivial(self, m: int) -> bool:
        return len(self.quotient_table(m)) == 1

    def is_quotient_simple(self, m: int) -> bool:
        return len(self.quotient_table(m)) == 2

    def is_quotient_semisimple(self, m: int) -> bool:
        for f in range(self.n_morphisms):
            if self.src[f] == m and self.is_epi(f) and \
                    not self.sections_of(f):
                return False
        return True

    # -- special objects ---------------------------------------------------

    def is_initial(self, m: int) -> bool:
        return all(len(self.hom(m, o)) == 1 for o in range(self.n_objects))

    def is_terminal(self, m: int) -> bool:
        return all(len(self.hom(o, m)) == 1 for o in range(self.n_objects))

    def is_zero_object(self, m: int) -> bool:
        return self.is_initial(m) and self.is_terminal(m)

    def zero_objects(self) -> list:
        return [m for m in range(self.n_objects) if self.is_zero_object(m)]

    def is_projective(self, p: int) -> bool:
        for e in range(self.n_morphisms):
            if not self.is_epi(e):
                continue
            m, n = self.src[e], self.dst[e]
            for f in self.hom(p, n):
                if not any(self.compose(e, g) == f for g in self.hom(p, m)):
                    return False
        return True

    def is_injective(self, q: int) -> bool:
        for mo in range(self.n_morphisms):
            if not self.is_mono(mo):
                continue
            m, n = self.src[mo], self.dst[mo]
            for f in self.hom(m, q):
                if not any(self.compose(g, mo) == f for g in self.hom(n, q)):
                    return False
        return True


class FiniteFunctor:
    def __init__(self, source: FiniteCategory, target: FiniteCategory,
                 object_map, morphism_map, label: str = ""):
        self.source = source
        self.target = target
        self.object_map = list(object_map)
        self.morphism_map = list(morphism_map)
        self.label = label
        C, D = source, target
        for f in range(C.n_morphisms):
            Ff = self.morphism_map[f]
            if D.src[Ff] != self.object_map[C.src[f]] or \
                    D.dst[Ff] != self.object_map[C.dst[f]]:
                raise CategoryError("functor breaks sources/targets at %d" % f)
        for o in range(C.n_objects):
            if self.morphism_map[C.identities[o]] != \
                    D.identities[self.object_map[o]]:
                raise CategoryError("functor breaks identity at object %d" % o)
        for g in range(C.n_morphisms):
            for f in range(C.n_morphisms):
                if C.dst[f] != C.src[g]:
                    continue
                if self.morphism_map[C.compose(g, f)] != \
                        D.compose(self.morphism_map[g], self.morphism_map[f]):
                    raise CategoryError(
                        "functor breaks composition at (%d, %d)" % (g, f))

    def on_object(self, o: int) -> int:
        return self.object_map[o]

    def on_morphism(self, f: int) -> int:
        return self.morphism_map[f]

    def preserves_monos(self) -> bool:
        return all(self.target.is_mono(self.morphism_map[f])
                   for f in range(self.source.n_morphisms)
                   if self.source.is_mono(f))

    def preserves_epis(self) -> bool:
        return all(self.target.is_epi(self.morphism_map[f])
                   for f in range(self.source.n_morphisms)
                   if self.source.is_epi(f))

    @staticmethod
    def identity(C: FiniteCategory) -> "FiniteFunctor":
        return FiniteFunctor(C, C, list(range(C.n_objects)),
                             list(range(C.n_morphisms)), "id")

    def then(self, G: "FiniteFunctor") -> "FiniteFunctor":
        """G o self."""
        if G.source is not self.target:
            raise CategoryError("functors not composable")
        return FiniteFunctor(
            self.source, G.target,
            [G.object_map[o] for o in self.object_map],
            [G.morphism_map[m] for m in self.morphism_map],
            (G.label or "?") + "o" + (self.label or "?"))


class SeparabilityStructure:
    """A family of hom-set sections R_{M,N} passing SF1 and SF2."""

    def __init__(self, functor: FiniteFunctor, R: dict):
        self.functor = functor
        self.R = R  # (M, N) -> dict: target morphism -> source morphism

    def apply(self, M: int, N: int, fprime: int) -> int:
        return self.R[(M, N)][fprime]

    def verify(self) -> bool:
        """Independent SF1 + SF2 re-check over all instances."""
        return check_SF1(self) and check_SF2(self)


def _hom_pairs(F: FiniteFunctor):
    C, D = F.source, F.target
    for M in range(C.n_objects):
        for N in range(C.n_objects):
            yield M, N, D.hom(F.on_object(M), F.on_object(N))


def check_SF1(S: SeparabilityStructure) -> bool:
    F = S.functor
    C = F.source
    for f in range(C.n_morphisms):
        M, N = C.src[f], C.dst[f]
        if S.apply(M, N, F.on_morphism(f)) != f:
            return False
    return True


def check_SF2(S: SeparabilityStructure) -> bool:
    F = S.functor
    C, D = F.source, F.target
    for f in range(C.n_morphisms):
        M, Mp = C.src[f], C.dst[f]
        for g in range(C.n_morphisms):
            N, Np = C.src[g], C.dst[g]
            for fp in D.hom(F.on_object(M), F.on_object(N)):
                for gp in D.hom(F.on_object(Mp), F.on_object(Np)):
                    if D.compose(F.on_morphism(g), fp) != \
                            D.compose(gp, F.on_morphism(f)):
                        continue
                    lhs = C.compose(g, S.apply(M, N, fp))
                    rhs = C.compose(S.apply(Mp, Np, gp), f)
                    if lhs != rhs:
                        return False
    return True


def check_SF3(S: SeparabilityStructure) -> bool:
    F = S.functor
    C, D = F.source, F.target
    for M in range(C.n_objects):
        for N in range(C.n_objects):
            im_MN = {F.on_morphism(h) for h in C.hom(M, N)}
            for P in range(C.n_objects):
                im_NP = {F.on_morphism(h) for h in C.hom(N, P)}
                for f in D.hom(F.on_object(M), F.on_object(N)):
                    for g in D.hom(F.on_object(N), F.on_object(P)):
                        if f not in im_MN and g not in im_NP:
                            continue
                        lhs = S.apply(M, P, D.compose(g, f))
                        rhs = C.compose(S.apply(N, P, g), S.apply(M, N, f))
                        if lhs != rhs:
                            return False
    return True


def check_SF2_iff_SF3(S: SeparabilityStructure) -> bool:
    """Exhaustively confirm the two axioms agree on this structure."""
    return check_SF2(S) == check_SF3(S)


def find_separability_structure(F: FiniteFunctor,
                                budget: int = DEFAULT_BUDGET):
    """Lexicographically first splitting structure on F, or None.

    Values forced by SF1 are assigned first; a contradiction there
    (non-faithfulness, or an empty source hom set against a nonempty
    target one) means no structure exists.  The rest is backtracking
    over source hom sets with incremental SF2 pruning.
    """
    C, D = F.source, F.target
    # variables: one per (M, N, target morphism)
    vars_list = []   # (M, N, fp)
    var_index = {}
    for M, N, dhom in _hom_pairs(F):
        chom = C.hom(M, N)
        if dhom and not chom:
            return None  # SF0 impossible
        for fp in dhom:
            var_index[(M, N, fp)] = len(vars_list)
            vars_list.append((M, N, fp))
    nvars = len(vars_list)
    forced = [None] * nvars
    for f in range(C.n_morphisms):
        M, N = C.src[f], C.dst[f]
        v = var_index[(M, N, F.on_morphism(f))]
        if forced[v] is not None and forced[v] != f:
            return None  # not faithful
        forced[v] = f
    # SF2 instances, each referencing two variables
    instances = []  # (v1, v2, g, f): compose(g, R[v1]) == compose(R[v2], f)
    for f in range(C.n_morphisms):
        M, Mp = C.src[f], C.dst[f]
        for g in range(C.n_morphisms):
            N, Np = C.src[g], C.dst[g]
            for fp in D.hom(F.on_object(M), F.on_object(N)):
                for gp in D.hom(F.on_object(Mp), F.on_object(Np)):
                    if D.compose(F.on_morphism(g), fp) != \
                            D.compose(gp, F.on_morphism(f)):
                        continue
                    v1 = var_index[(M, N, fp)]
                    v2 = var_index[(Mp, Np, gp)]
                    instances.append((v1, v2, g, f))
    by_var: dict = {}
    for idx, (v1, v2, g, f) in enumerate(instances):
        by_var.setdefault(max(v1, v2), []).append(idx)
    assign = list(forced)
    domains = [C.hom(M, N) for (M, N, _) in vars_list]
    spent = 0

    def consistent(upto: int) -> bool:
        for idx in by_var.get(upto, []):
            v1, v2, g, f = instances[idx]
            a1, a2 = assign[v1], assign[v2]
            if a1 is None or a2 is None:
                continue
            if C.compose(g, a1) != C.compose(a2, f):
                return False
        return True

    def backtrack(v: int) -> bool:
        nonlocal spent
        if v == nvars:
            return True
        if forced[v] is not None:
            if not consistent(v):
                return False
            return backtrack(v + 1)
        for cand in domains[v]:
            spent += 1
            if spent > budget:
                raise SearchBudgetExceeded(
                    "splitting-structure search exceeded %d evaluations"
                    % budget)
            assign[v] = cand
            if consistent(v) and backtrack(v + 1):
                return True
            assign[v] = None
        return False

    if not backtrack(0):
        return None
    R: dict = {}
    for (M, N, fp), v in var_index.items():
        R.setdefault((M, N), {})[fp] = assign[v]
    for M in range(C.n_objects):
        for N in range(C.n_objects):
            R.setdefault((M, N), {})
    S = SeparabilityStructure(F, R)
    if not S.verify():
        raise AssertionError("search returned a structure failing re-verification")
    return S


# ---------------------------------------------------------------------------
# reflection reports


REFLECTION_PROPERTIES = (
    "mono", "epi", "retraction", "section", "iso",
    "initial", "terminal", "zero",
    "subobject_simple", "subobject_semisimple",
    "quotient_simple", "quotient_semisimple",
    "projective", "injective",
)


def check_reflection(F: FiniteFunctor, S: SeparabilityStructure,
                     prop: str) -> dict:
    """Instance-by-instance verification of one reflection implication.

    Returns {"property", "holds", "instances", "violations",
    "side_condition"}; properties with a preservation hypothesis report
    whether it holds (instances are skipped vacuously when it fails).
    """
    C, D = F.source, F.target
    violations = []
    instances = 0
    side = None

    def on(f):
        return F.on_morphism(f)

    if prop == "mono":
        for f in range(C.n_morphisms):
            if D.is_mono(on(f)):
                instances += 1
                if not C.is_mono(f):
                    violations.append(("morphism", f))
    elif prop == "epi":
        for f in range(C.n_morphisms):
            if D.is_epi(on(f)):
                instances += 1
                if not C.is_epi(f):
                    violations.append(("morphism", f))
    elif prop == "retraction":
        for f in range(C.n_morphisms):
            M, N = C.src[f], C.dst[f]
            for r in D.retractions_of(on(f)):
                instances += 1
                Rr = S.apply(N, M, r)
                if C.compose(Rr, f) != C.identities[M]:
                    violations.append(("morphism", f, "retraction", r))
    elif prop == "section":
        for f in range(C.n_morphisms):
            M, N = C.src[f], C.dst[f]
            for s in D.sections_of(on(f)):
                instances += 1
                Rs = S.apply(N, M, s)
                if C.compose(f, Rs) != C.identities[N]:
                    violations.append(("morphism", f, "section", s))
    elif prop == "iso":
        for f in range(C.n_morphisms):
            M, N = C.src[f], C.dst[f]
            for g in D.inverses_of(on(f)):
                instances += 1
                Rg = S.apply(N, M, g)
                if C.compose(Rg, f) != C.identities[M] or \
                        C.compose(f, Rg) != C.identities[N]:
                    violations.append(("morphism", f, "inverse", g))
    elif prop in ("initial", "terminal", "zero"):
        test_D = {"initial": D.is_initial, "terminal": D.is_terminal,
                  "zero": D.is_zero_object}[prop]
        test_C = {"initial": C.is_initial, "terminal": C.is_terminal,
                  "zero": C.is_zero_object}[prop]
        for m in range(C.n_objects):
            if test_D(F.on_object(m)):
                instances += 1
                if not test_C(m):
                    violations.append(("object", m))
    elif prop == "subobject_simple":
        side = F.preserves_monos()
        if side:
            for m in range(C.n_objects):
                if len(C.subobject_table(m)) >= 2 and \
                        D.is_subobject_simple(F.on_object(m)):
                    instances += 1
                    if not C.is_subobject_simple(m):
                        violations.append(("object", m))
    elif prop == "subobject_semisimple":
        side = F.preserves_monos()
        if side:
            for m in range(C.n_objects):
                if D.is_subobject_semisimple(F.on_object(m)):
                    instances += 1
                    if not C.is_subobject_semisimple(m):
                        violations.append(("object", m))
    elif prop == "quotient_simple":
        side = F.preserves_epis()
        if side:
            for m in range(C.n_objects):
                if len(C.quotient_table(m)) >= 2 and \
                        D.is_quotient_simple(F.on_object(m)):
                    instances += 1
                    if not C.is_quotient_simple(m):
                        violations.append(("object", m))
    elif prop == "quotient_semisimple":
        side = F.preserves_epis()
        if side:
            for m in range(C.n_objects):
                if D.is_quotient_semisimple(F.on_object(m)):
                    instances += 1
                    if not C.is_quotient_semisimple(m):
                        violations.append(("object", m))
    elif prop == "projective":
        side = F.preserves_epis()
        if side:
            for m in range(C.n_objects):
                if D.is_projective(F.on_object(m)):
                    instances += 1
                    if not C.is_projective(m):
                        violations.append(("object", m))
    elif prop == "injective":
        side = F.preserves_monos()
        if side:
            for m in range(C.n_objects):
                if D.is_injective(F.on_object(m)):
                    instances += 1
                    if not C.is_injective(m):
                        violations.append(("object", m))
    else:
        raise ValueError("unknown property %r" % prop)
    return {
        "property": prop,
        "holds": not violations,
        "instances": instances,
        "violations": violations,
        "side_condition": side,
    }


def check_pointed_equivalences(C: FiniteCategory) -> dict:
    """Six-way zero-object equivalence, object by object.

    For a pointed category the following coincide for every object M:
    being a zero object, admitting an isomorphism from the zero object,
    the zero mono being equivalent to the identity, subobject
    triviality, the zero epi being equivalent to the identity, and
    quotient triviality.
    """
    zeros = C.zero_objects()
    if not zeros:
        return {"pointed": False, "objects": {}}
    Z = zeros[0]
    out = {}
    ok = True
    for m in range(C.n_objects):
        zm = C.hom(Z, m)[0]
        mz = C.hom(m, Z)[0]
        i = C.is_zero_object(m)
        ii = any(C.is_iso(f) for f in C.hom(Z, m))
        # zero mono ~ id_M: mutual factoring of zm and id_M
        idm = C.identities[m]
        iii = any(C.compose(zm, p) == idm for p in C.hom(m, Z)) and \
            any(C.compose(idm, q) == zm for q in C.hom(Z, m))
        iv = C.is_subobject_trivial(m)
        v = any(C.compose(p, mz) == idm for p in C.hom(Z, m)) and \
            any(C.compose(q, idm) == mz for q in C.hom(m, Z))
        vi = C.is_quotient_trivial(m)
        flags = (i, ii, iii, iv, v, vi)
        out[m] = flags
        if len(set(flags)) != 1:
            ok = False
    return {"pointed": True, "equivalent": ok, "objects": out}


def compose_and_check(F: FiniteFunctor, G: FiniteFunctor,
                      budget: int = DEFAULT_BUDGET) -> dict:
    """Search F, G, and G o F and assert the composition implications.

    (a) F and G both admit structures => the composite does;
    (b) the composite admits one => F does.
    """
    H = F.then(G)
    sf = find_separability_structure(F, budget)
    sg = find_separability_structure(G, budget)
    sh = find_separability_structure(H, budget)
    a_ok = not (sf is not None and sg is not None) or sh is not None
    b_ok = not (sh is not None) or sf is not None
    return {
        "F": sf is not None,
        "G": sg is not None,
        "H": sh is not None,
        "compose_implication": a_ok,
        "restrict_implication": b_ok,
    }


# ---------------------------------------------------------------------------
# small builders


def category_from_tables(objects, morphisms, compose, identities,
                         label: str = "") -> FiniteCategory:
    """morphisms: list of (name, src_label, dst_label); compose keyed by
    names; identities: object label -> morphism name."""
    oidx = {o: i for i, o in enumerate(objects)}
    names = [m[0] for m in morphisms]
    midx = {n: i for i, n in enumerate(names)}
    src = [oidx[m[1]] for m in morphisms]
    dst = [oidx[m[2]] for m in morphisms]
    comp = {(midx[g], midx[f]): midx[h] for (g, f), h in compose.items()}
    ids = [midx[identities[o]] for o in objects]
    return FiniteCategory(objects, src, dst, comp, ids, names, label)


def discrete_category(n: int, label: str = "discrete") -> FiniteCategory:
    return FiniteCategory(
        ["X%d" % i for i in range(n)],
        list(range(n)), list(range(n)),
        {(i, i): i for i in range(n)},
        list(range(n)),
        ["id%d" % i for i in range(n)],
        label)


def terminal_category() -> FiniteCategory:
    return discrete_category(1, "point")


def arrow_only_category() -> FiniteCategory:
    """Objects M, N; morphisms id_M, id_N, and a single f: N -> M.

    The subobject classes of M are id_M and f, and f has no retraction:
    M is subobject simple but not subobject semisimple.
    """
    return category_from_tables(
        ["M", "N"],
        [("idM", "M", "M"), ("idN", "N", "N"), ("f", "N", "M")],
        {("idM", "idM"): "idM", ("idN", "idN"): "idN",
         ("idM", "f"): "f", ("f", "idN"): "f"},
        {"M": "idM", "N": "idN"},
        "arrow-only")


def chain_poset_category(n: int) -> FiniteCategory:
    """Poset 0 < 1 < ... < n-1 as a category (one arrow i -> j for i <= j)."""
    objects = ["P%d" % i for i in range(n)]
    morphisms = []
    for i in range(n):
        for j in range(i, n):
            morphisms.append(("a%d_%d" % (i, j), "P%d" % i, "P%d" % j))
    compose = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                compose[("a%d_%d" % (j, k), "a%d_%d" % (i, j))] = "a%d_%d" % (i, k)
    identities = {"P%d" % i: "a%d_%d" % (i, i) for i in range(n)}
    return category_from_tables(objects, morphisms, compose, identities,
                                "chain%d" % n)


def collapse_functor(n: int) -> FiniteFunctor:
    """The unique functor from the n-object discrete category to a point."""
    C = discrete_category(n)
    D = terminal_category()
    return FiniteFunctor(C, D, [0] * n, [0] * n, "collapse")


def matrix_module_category(ring, modules, label: str = "") -> FiniteCategory:
    """Category of the given modules with all their intertwiners.

    Objects are the modules; morphisms are all module maps found by
    exact hom-space computation (every scalar combination over a finite
    field, so the category is finite).
    """
    from .modules import hom_space
    from itertools import product as iproduct

    field = ring.field
    if field.char == 0:
        raise CategoryError("module categories must be over a finite field")
    scalars = [field.from_int(i) for i in range(field.char)]
    objects = [m.label or ("M%d" % i) for i, m in enumerate(modules)]
    src, dst, names, mats = [], [], [], []
    index: dict = {}
    for i, Mi in enumerate(modules):
        for j, Mj in enumerate(modules):
            basis = hom_space(Mi, Mj)
            seen = set()
            for coeffs in iproduct(scalars, repeat=len(basis)):
                mat = None
                from .linalg import Mat
                mat = Mat.zero(field, Mj.dim, Mi.dim)
                for c, h in zip(coeffs, basis):
                    if c:
                        mat = mat + h.matrix.scale(c)
                key = tuple(tuple(row) for row in mat.data)
                if key in seen:
                    continue
                seen.add(key)
                index[(i, j, key)] = len(src)
                src.append(i)
                dst.append(j)
                names.append("h%d" % len(names))
                mats.append(mat)
    compose = {}
    identities = []
    from .linalg import Mat
    for i, Mi in enumerate(modules):
        key = tuple(tuple(row) for row in Mat.identity(field, Mi.dim).data)
        identities.append(index[(i, i, key)])
    for g in range(len(src)):
        for f in range(len(src)):
            if dst[f] != src[g]:
                continue
            prod = mats[g] @ mats[f]
            key = tuple(tuple(row) for row in prod.data)
            compose[(g, f)] = index[(src[f], dst[g], key)]
    cat = FiniteCategory(objects, src, dst, compose, identities, names, label)
    cat.mats = mats
    return cat
