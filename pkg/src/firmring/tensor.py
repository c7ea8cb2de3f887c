"""Balanced tensor products X (x)_B Y as explicit quotient spaces.

The ambient space is spanned by basis pairs x_i (x) y_j (index i*dimY + j);
the quotient is by all relations (x_i . e_b) (x) y_j - x_i (x) (e_b . y_j).
Induced actions and the multiplication maps of ring extensions live here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, Echelon, QuotientSpace, Subspace, image
from .rings import StructureRing, RingMorphism, RingMismatch
from .modules import (
    LeftModule,
    RightModule,
    Bimodule,
    ModuleMap,
    restrict_module,
    ActionViolation,
)


class RelationNotAnnihilated(ValueError):
    """A would-be induced map fails on a balancing relation."""


@dataclass
class BalancedTensor:
    """X (x)_B Y with canonical coset coordinates."""

    quotient: QuotientSpace
    dimX: int
    dimY: int

    @property
    def dim(self) -> int:
        return self.quotient.coset_dim

    def pure(self, x: list, y: list) -> list:
        """Coset coordinates of the simple tensor x (x) y."""
        vec = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                ab = a * b
                if ab:
                    vec[i * self.dimY + j] = ab
        return self.quotient.project_sparse(vec)


def balanced_tensor(B: StructureRing, X: RightModule, Y: LeftModule) -> BalancedTensor:
    """The tensor product of a right and a left B-module over B."""
    if X.ring is not B or Y.ring is not B:
        raise RingMismatch("modules are not over the balancing ring")
    field = B.field
    dx, dy = X.dim, Y.dim
    relations = []
    for b in range(B.dim):
        xb = X.actions[b]  # x |-> x * e_b
        by = Y.actions[b]  # y |-> e_b * y
        for i in range(dx):
            xbi = [xb.data[r][i] for r in range(dx)]  # column i
            for j in range(dy):
                rel: dict = {}
                for r in range(dx):
                    if xbi[r]:
                        k = r * dy + j
                        rel[k] = rel.get(k, field.zero) + xbi[r]
                for r in range(dy):
                    v = by.data[r][j]
                    if v:
                        k = i * dy + r
                        rel[k] = rel.get(k, field.zero) - v
                rel = {k: v for k, v in rel.items() if v}
                if rel:
                    relations.append(rel)
    S = Subspace.from_vectors(field, dx * dy, relations)
    Q = QuotientSpace.of(dx * dy, S)
    return BalancedTensor(Q, dx, dy)


def induced_left_action(T: BalancedTensor, A: StructureRing,
                        left_actions: list) -> list:
    """Left A-action on X (x)_B Y induced from a left action on X.

    Checks well-definedness: each lifted action must annihilate the
    balancing relations.
    """
    field = A.field
    dy = T.dimY
    acts = []
    for i in range(A.dim):
        la = left_actions[i]
        dx = la.rows
        # ambient action on X (x) Y: la (x) id
        amb = Mat.zero(field, dx * dy, T.dimX * dy)
        for r in range(dx):
            for c in range(T.dimX):
                v = la.data[r][c]
                if v:
                    for j in range(dy):
                        amb.data[r * dy + j][c * dy + j] = v
        for row in T.quotient.relations.basis:
            img: dict = {}
            for c, v in enumerate(row):
                if not v:
                    continue
                r0, j = divmod(c, dy)
                for r in range(dx):
                    w = la.data[r][r0]
                    if w:
                        k = r * dy + j
                        img[k] = img.get(k, field.zero) + v * w
            if img and any(T.quotient.project_sparse(img)):
                raise RelationNotAnnihilated(
                    "left action of basis element %d does not descend" % i)
        acts.append((T.quotient.project @ amb) @ T.quotient.section)
    return acts


def induced_map(T: BalancedTensor, Tprime: "BalancedTensor", amb: Mat) -> Mat:
    """Descend an ambient map X(x)Y -> X'(x)Y' to coset coordinates.

    Raises RelationNotAnnihilated when a balancing relation maps outside
    the target relations.
    """
    field = Tprime.quotient.relations.field
    for row in T.quotient.relations.basis:
        img: dict = {}
        for c, v in enumerate(row):
            if not v:
                continue
            for r in range(amb.rows):
                w = amb.data[r][c]
                if w:
                    img[r] = img.get(r, field.zero) + v * w
        img = {k: x for k, x in img.items() if x}
        if img and any(Tprime.quotient.project_sparse(img)):
            raise RelationNotAnnihilated("ambient map does not descend")
    return (Tprime.quotient.project @ amb) @ T.quotient.section


# ---------------------------------------------------------------------------
# multiplication maps


def mu_module(M: LeftModule):
    """mu: A (x)_A M -> M, a (x) m |-> a.m; returns (map-as-Mat-pair, tensor).

    The source carries the left A-action induced from left multiplication.
    Returns (mu, T) where mu is a ModuleMap from the induced module to M.
    """
    A = M.ring
    X = RightModule.regular(A)
    T = balanced_tensor(A, X, LeftModule(A, M.actions, M.label, check=False))
    field = A.field
    amb = Mat.zero(field, M.dim, A.dim * M.dim)
    for i in range(A.dim):
        act = M.actions[i]
        for j in range(M.dim):
            for r in range(M.dim):
                v = act.data[r][j]
                if v:
                    amb.data[r][i * M.dim + j] = v
    mu = (amb @ T.quotient.section)
    left = induced_left_action(
        T, A, [A.left_mult_matrix(A.basis_element(i)) for i in range(A.dim)])
    src = LeftModule(A, left, "A(x)" + M.label, check=False)
    return ModuleMap(src, M, mu), T


def extension_bimodule(f: RingMorphism) -> Bimodule:
    """A as a (B,B)-bimodule along f: B -> A (used for tensor squares)."""
    A, B = f.target, f.source
    l = []
    r = []
    for i in range(B.dim):
        bi = f.matrix.col(i)
        l.append(A.left_mult_matrix(bi))
        r.append(A.right_mult_matrix(bi))
    return Bimodule(B, B, l, r, A.label + " over " + B.label, check=False)


class ExtensionTensorSquare:
    """A (x)_B A with its A-bimodule structure and multiplication map.

    Left/right multiplication actions on coset coordinates are computed
    lazily, column by column (each coset coordinate lifts to a single
    pure tensor of basis elements); the big ambient matrices are never
    materialised.
    """

    def __init__(self, f: RingMorphism, tensor: BalancedTensor):
        self.f = f
        self.tensor = tensor
        A = f.target
        self.ring = A
        n = A.dim
        pivset = set(tensor.quotient.relations.pivot_cols)
        self._free = [c for c in range(n * n) if c not in pivset]
        self._left_cache: dict = {}
        self._right_cache: dict = {}
        # mu on coset coordinates: column t is e_{i0} e_{j0}
        mu = Mat.zero(A.field, n, tensor.dim)
        for t, amb_idx in enumerate(self._free):
            i0, j0 = divmod(amb_idx, n)
            for k, v in A.table[i0][j0].items():
                mu.data[k][t] = v
        self.mu = mu

    @property
    def dim(self) -> int:
        return self.tensor.dim

    def pure(self, x: list, y: list) -> list:
        return self.tensor.pure(x, y)

    def left_action(self, g: int) -> Mat:
        """Matrix of (e_g . -) on coset coordinates."""
        if g not in self._left_cache:
            A = self.ring
            n = A.dim
            m = Mat.zero(A.field, self.dim, self.dim)
            for t, amb_idx in enumerate(self._free):
                i0, j0 = divmod(amb_idx, n)
                vec = {k * n + j0: v for k, v in A.table[g][i0].items()}
                col = self.tensor.quotient.project_sparse(vec)
                for r in range(self.dim):
                    if col[r]:
                        m.data[r][t] = col[r]
            self._left_cache[g] = m
        return self._left_cache[g]

    def right_action(self, g: int) -> Mat:
        """Matrix of (- . e_g) on coset coordinates."""
        if g not in self._right_cache:
            A = self.ring
            n = A.dim
            m = Mat.zero(A.field, self.dim, self.dim)
            for t, amb_idx in enumerate(self._free):
                i0, j0 = divmod(amb_idx, n)
                vec = {i0 * n + k: v for k, v in A.table[j0][g].items()}
                col = self.tensor.quotient.project_sparse(vec)
                for r in range(self.dim):
                    if col[r]:
                        m.data[r][t] = col[r]
            self._right_cache[g] = m
        return self._right_cache[g]

    def act_left(self, a: list, v: list) -> list:
        out = [self.ring.field.zero] * self.dim
        for g, c in enumerate(a):
            if not c:
                continue
            gv = self.left_action(g).apply(v)
            out = [x + c * y for x, y in zip(out, gv)]
        return out

    def act_right(self, v: list, a: list) -> list:
        out = [self.ring.field.zero] * self.dim
        for g, c in enumerate(a):
            if not c:
                continue
            vg = self.right_action(g).apply(v)
            out = [x + c * y for x, y in zip(out, vg)]
        return out


def tensor_square(f: RingMorphism) -> ExtensionTensorSquare:
    """Build A (x)_B A along f, with mu(a (x) a') = a a'."""
    A, B = f.target, f.source
    bm = extension_bimodule(f)
    X = RightModule(B, bm.right_actions, check=False)
    Y = LeftModule(B, bm.left_actions, check=False)
    T = balanced_tensor(B, X, Y)
    return ExtensionTensorSquare(f, T)


# ---------------------------------------------------------------------------
# induction


def induce(f: RingMorphism, M: LeftModule) -> tuple:
    """Induction A (x)_B M along f: B -> A for a left B-module M.

    Returns (induced A-module, tensor) where the tensor gives the pure
    map for elements.
    """
    A, B = f.target, f.source
    if M.ring is not B:
        raise RingMismatch("module is not over the morphism source")
    bm = extension_bimodule(f)
    X = RightModule(B, bm.right_actions, check=False)
    T = balanced_tensor(B, X, M)
    left = induced_left_action(
        T, A, [A.left_mult_matrix(A.basis_element(i)) for i in range(A.dim)])
    ind = LeftModule(A, left, "Ind " + M.label, check=False)
    return ind, T


def induce_map(f: RingMorphism, g: ModuleMap, TM: BalancedTensor,
               TN: BalancedTensor, ind_M: LeftModule, ind_N: LeftModule) -> ModuleMap:
    """id_A (x) g on induced modules."""
    A = f.target
    n = A.dim
    dm, dn = g.source.dim, g.target.dim
    amb = Mat.zero(A.field, n * dn, n * dm)
    for i in range(n):
        for r in range(dn):
            for c in range(dm):
                v = g.matrix.data[r][c]
                if v:
                    amb.data[i * dn + r][i * dm + c] = v
    mat = induced_map(TM, TN, amb)
    return ModuleMap(ind_M, ind_N, mat)
