"""Finite-dimensional left/right modules and bimodules over structure rings.

A left module is a list of action matrices rho_i (one per ring basis
element) satisfying rho(e_i e_j) = rho_i rho_j.  Module maps, hom
spaces, kernels/images/quotients, spinning, and the unitality-flavoured
predicates (unitary / s-unital / firm) live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import ScalarField
from .linalg import (
    Mat,
    Subspace,
    Echelon,
    QuotientSpace,
    kernel,
    image,
    solve,
    solve_vec,
)
from .rings import StructureRing, RingMismatch


class ActionViolation(ValueError):
    pass


def _check_action(ring, actions, dim, side):
    if len(actions) != ring.dim:
        raise ActionViolation("need one action matrix per ring basis element")
    for m in actions:
        if m.rows != dim or m.cols != dim:
            raise ActionViolation("action matrix has wrong shape")
    for i in range(ring.dim):
        for j in range(ring.dim):
            want = Mat.zero(ring.field, dim, dim)
            for k, c in ring.table[i][j].items():
                want = want + actions[k].scale(c)
            if side == "left":
                got = actions[i] @ actions[j]
            else:  # right action: rho(ab) = rho(b) rho(a)
                got = actions[j] @ actions[i]
            if got.data != want.data:
                raise ActionViolation(
                    "%s action not multiplicative on basis pair (%d,%d)"
                    % (side, i, j)
                )


class LeftModule:
    def __init__(self, ring: StructureRing, actions: list, label: str = "",
                 check: bool = True):
        self.ring = ring
        self.field = ring.field
        self.dim = actions[0].rows if actions else 0
        self.actions = actions
        self.label = label
        if check:
            _check_action(ring, actions, self.dim, "left")

    @staticmethod
    def zero(ring: StructureRing, label: str = "0") -> "LeftModule":
        return LeftModule(
            ring, [Mat.zero(ring.field, 0, 0) for _ in range(ring.dim)],
            label, check=False)

    @staticmethod
    def regular(ring: StructureRing, label: str | None = None) -> "LeftModule":
        acts = [ring.left_mult_matrix(ring.basis_element(i)) for i in range(ring.dim)]
        return LeftModule(ring, acts, label or (ring.label + " (regular)"),
                          check=False)

    @staticmethod
    def free(ring: StructureRing, rank: int, label: str = "") -> "LeftModule":
        """Direct sum of `rank` copies of the regular module."""
        reg = LeftModule.regular(ring)
        mods = [reg] * rank
        return direct_sum_modules(mods, label or "%s^%d" % (ring.label, rank))

    def act(self, a: list, v: list) -> list:
        out = [self.field.zero] * self.dim
        for i, c in enumerate(a):
            if not c:
                continue
            av = self.actions[i].apply(v)
            out = [x + c * y for x, y in zip(out, av)]
        return out

    def act_basis(self, i: int, v: list) -> list:
        return self.actions[i].apply(v)

    def __repr__(self):
        return "LeftModule(%r, dim=%d)" % (self.label, self.dim)


class RightModule:
    def __init__(self, ring: StructureRing, actions: list, label: str = "",
                 check: bool = True):
        self.ring = ring
        self.field = ring.field
        self.dim = actions[0].rows if actions else 0
        self.actions = actions  # actions[i] = (v |-> v * e_i)
        self.label = label
        if check:
            _check_action(ring, actions, self.dim, "right")

    @staticmethod
    def regular(ring: StructureRing, label: str | None = None) -> "RightModule":
        acts = [ring.right_mult_matrix(ring.basis_element(i)) for i in range(ring.dim)]
        return RightModule(ring, acts, label or (ring.label + " (reg-r)"),
                           check=False)

    def act(self, v: list, a: list) -> list:
        out = [self.field.zero] * self.dim
        for i, c in enumerate(a):
            if not c:
                continue
            va = self.actions[i].apply(v)
            out = [x + c * y for x, y in zip(out, va)]
        return out


class Bimodule:
    """(A,B)-bimodule: commuting left A- and right B-actions."""

    def __init__(self, left_ring, right_ring, left_actions, right_actions,
                 label: str = "", check: bool = True):
        self.left_ring = left_ring
        self.right_ring = right_ring
        self.field = left_ring.field
        self.dim = left_actions[0].rows if left_actions else 0
        self.left_actions = left_actions
        self.right_actions = right_actions
        self.label = label
        if check:
            _check_action(left_ring, left_actions, self.dim, "left")
            _check_action(right_ring, right_actions, self.dim, "right")
            for la in left_actions:
                for ra in right_actions:
                    if (la @ ra).data != (ra @ la).data:
                        raise ActionViolation("left and right actions do not commute")

    @staticmethod
    def regular(ring: StructureRing, label: str | None = None) -> "Bimodule":
        l = [ring.left_mult_matrix(ring.basis_element(i)) for i in range(ring.dim)]
        r = [ring.right_mult_matrix(ring.basis_element(i)) for i in range(ring.dim)]
        return Bimodule(ring, ring, l, r, label or ring.label, check=False)

    def as_left(self) -> LeftModule:
        return Bimodule._left_view(self)

    @staticmethod
    def _left_view(bm) -> LeftModule:
        return LeftModule(bm.left_ring, bm.left_actions, bm.label, check=False)

    def as_right(self) -> RightModule:
        return RightModule(self.right_ring, self.right_actions, self.label,
                           check=False)


@dataclass
class ModuleMap:
    """Linear map between left modules; A-linearity is optional but checked
    on request."""

    source: LeftModule
    target: LeftModule
    matrix: Mat

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise RingMismatch("map matrix has wrong shape")

    def apply(self, v: list) -> list:
        return self.matrix.apply(v)

    def is_linear(self) -> bool:
        """Check commutation with the ring action (on generators)."""
        for i in self.source.ring.generators():
            lhs = self.matrix @ self.source.actions[i]
            rhs = self.target.actions[i] @ self.matrix
            if lhs.data != rhs.data:
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source:
            raise RingMismatch("maps not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)


def restrict_module(M: LeftModule, f) -> LeftModule:
    """Restriction of scalars along a ring morphism f: B -> A."""
    if f.target is not M.ring:
        raise RingMismatch("module is not over the morphism target")
    B = f.source
    acts = []
    for i in range(B.dim):
        a = f.matrix.col(i)
        m = Mat.zero(M.field, M.dim, M.dim)
        for k, c in enumerate(a):
            if c:
                m = m + M.actions[k].scale(c)
        acts.append(m)
    return LeftModule(B, acts, M.label + "|B", check=False)


def direct_sum_modules(mods: list, label: str = "") -> LeftModule:
    ring = mods[0].ring
    if any(m.ring is not ring for m in mods):
        raise RingMismatch("direct sum over mixed rings")
    dim = sum(m.dim for m in mods)
    acts = []
    for i in range(ring.dim):
        blocks = Mat.zero(ring.field, dim, dim)
        off = 0
        for m in mods:
            for r in range(m.dim):
                row = m.actions[i].data[r]
                for c in range(m.dim):
                    if row[c]:
                        blocks.data[off + r][off + c] = row[c]
            off += m.dim
        acts.append(blocks)
    return LeftModule(ring, acts, label or "+".join(m.label for m in mods),
                      check=False)


# ---------------------------------------------------------------------------
# submodules / quotients / hom


def spin(M: LeftModule, vectors: list) -> Subspace:
    """Smallest submodule containing the given vectors."""
    ech = Echelon(M.field, M.dim)
    frontier = []
    for v in vectors:
        if ech.insert(
            {i: c for i, c in enumerate(v)} if isinstance(v, list) else dict(v)
        ):
            frontier.append(list(v) if isinstance(v, list) else _densify(v, M.dim, M.field))
    gens = M.ring.generators()
    while frontier:
        new = []
        for v in frontier:
            for i in gens:
                w = M.actions[i].apply(v)
                if ech.insert({j: c for j, c in enumerate(w) if c}):
                    new.append(w)
        frontier = new
    return ech.to_subspace()


def _densify(v: dict, n: int, field) -> list:
    out = [field.zero] * n
    for i, c in v.items():
        out[i] = c
    return out


def submodule_from_subspace(M: LeftModule, S: Subspace, label: str = "") -> tuple:
    """Module structure on an invariant subspace; returns (module, inclusion).

    Raises ActionViolation when S is not invariant.
    """
    basis = [list(row) for row in S.basis]
    k = len(basis)
    bmat = Mat.from_rows(basis).transpose() if k else Mat.zero(M.field, M.dim, 0)
    acts = []
    for i in range(M.ring.dim):
        cols = []
        for b in basis:
            w = M.actions[i].apply(b)
            cw = S.coords_of(w)
            if cw is None:
                raise ActionViolation("subspace is not action-invariant")
            cols.append(cw)
        m = Mat.zero(M.field, k, k)
        for c, col in enumerate(cols):
            for r in range(k):
                m.data[r][c] = col[r]
        acts.append(m)
    sub = LeftModule(M.ring, acts, label or (M.label + " sub"), check=False)
    inc = ModuleMap(sub, M, bmat)
    return sub, inc


def kernel_module(f: ModuleMap, label: str = "") -> tuple:
    S = kernel(f.matrix, f.source.field)
    return submodule_from_subspace(f.source, S, label or "ker")


def image_module(f: ModuleMap, label: str = "") -> tuple:
    S = image(f.matrix, f.target.field)
    return submodule_from_subspace(f.target, S, label or "im")


def quotient_module(M: LeftModule, S: Subspace, label: str = "") -> tuple:
    """Quotient by an invariant subspace; returns (module, projection map)."""
    Q = QuotientSpace.of(M.dim, S)
    acts = []
    for i in range(M.ring.dim):
        a = (Q.project @ M.actions[i]) @ Q.section
        # well-definedness = invariance; verify project(rho_i s) = 0 for s in S
        for row in S.basis:
            if any(Q.project.apply(M.actions[i].apply(list(row)))):
                raise ActionViolation("subspace is not action-invariant")
        acts.append(a)
    quo = LeftModule(M.ring, acts, label or (M.label + "/S"), check=False)
    proj = ModuleMap(M, quo, Q.project)
    return quo, proj


def hom_space(M: LeftModule, N: LeftModule) -> list:
    """Basis of Hom_A(M, N) as a list of ModuleMaps.

    Solves the intertwining equations F rho_i^M = rho_i^N F over the
    ring's generating subset only (sufficient since the generated
    subalgebra contains every basis action).
    """
    if M.ring is not N.ring:
        raise RingMismatch("hom between modules over different rings")
    field = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return []
    gens = M.ring.generators()
    # unknowns F[r][c], index r*m + c
    rows = []
    for i in gens:
        RM = M.actions[i]
        RN = N.actions[i]
        for r in range(n):
            for c in range(m):
                # (F RM - RN F)[r][c] = 0
                row: dict = {}
                for k in range(m):
                    v = RM.data[k][c]
                    if v:
                        row[r * m + k] = row.get(r * m + k, field.zero) + v
                for k in range(n):
                    v = RN.data[r][k]
                    if v:
                        j = k * m + c
                        row[j] = row.get(j, field.zero) - v
                row = {j: v for j, v in row.items() if v}
                if row:
                    rows.append(row)
    # kernel of the constraint matrix
    nul = _sparse_kernel(rows, n * m, field)
    out = []
    for vec in nul:
        F = Mat.zero(field, n, m)
        for j, v in enumerate(vec):
            if v:
                F.data[j // m][j % m] = v
        out.append(ModuleMap(M, N, F))
    return out


def _sparse_kernel(rows: list, ncols: int, field) -> list:
    dense = []
    for row in rows:
        d = [field.zero] * ncols
        for j, v in row.items():
            d[j] = v
        dense.append(d)
    if not dense:
        dense = [[field.zero] * ncols]
    S = kernel(Mat.from_rows(dense), field)
    return [list(r) for r in S.basis]


# ---------------------------------------------------------------------------
# unitality predicates for modules


def is_unitary_module(M: LeftModule) -> bool:
    """Whether A*M spans M."""
    if M.dim == 0:
        return True
    ech = Echelon(M.field, M.dim)
    for i in range(M.ring.dim):
        for c in range(M.dim):
            col = {r: M.actions[i].data[r][c] for r in range(M.dim)
                   if M.actions[i].data[r][c]}
            if col:
                ech.insert(col)
            if ech.dim == M.dim:
                return True
    return ech.dim == M.dim


def s_unital_witness(M: LeftModule, vectors: list):
    """Joint witness a with a*v = v for all given vectors, or None."""
    if not vectors:
        return M.ring.zero_element()
    field = M.field
    rows = []
    rhs = []
    for v in vectors:
        cols = [M.actions[i].apply(v) for i in range(M.ring.dim)]
        for r in range(M.dim):
            rows.append([col[r] for col in cols])
            rhs.append(v[r])
    return solve_vec(Mat.from_rows(rows), rhs, field)


def is_s_unital_module(M: LeftModule) -> bool:
    """Joint common-unit solvability over a basis of M.

    A single a in A with a*v = v for every basis vector acts as the
    identity on all of M, which is equivalent to the elementwise
    condition m in Am for finite-dimensional M.
    """
    if M.dim == 0:
        return True
    basis = []
    for r in range(M.dim):
        v = [M.field.zero] * M.dim
        v[r] = M.field.one
        basis.append(v)
    return s_unital_witness(M, basis) is not None


def is_firm_module(M: LeftModule) -> bool:
    """Whether the multiplication map A (x)_A M -> M is bijective."""
    from .tensor import mu_module

    mu, T = mu_module(M)
    return T.dim == M.dim and image(mu.matrix, M.field).is_full()
