"""Finite-dimensional, possibly nonunital algebras by structure constants.

A ring is the data e_i e_j = sum_k c[i][j][k] e_k over an exact field.
Products are stored sparsely (dict k -> coefficient per basis pair),
which keeps group rings and matrix rings cheap to validate and multiply
in.  Elements are dense coefficient lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import ScalarField
from .linalg import Mat, Subspace, Echelon, solve_vec


class AssociativityViolation(ValueError):
    def __init__(self, i, j, l, left, right):
        self.triple = (i, j, l)
        self.left = left
        self.right = right
        super().__init__(
            "associativity fails at basis triple (%d,%d,%d)" % (i, j, l)
        )


class NotAGroup(ValueError):
    pass


class RingMismatch(ValueError):
    pass


class StructureRing:
    """Associative algebra given by a structure-constant table."""

    def __init__(self, field: ScalarField, table, label: str = "", check: bool = True):
        """``table[i][j]`` is a sparse product dict k -> coefficient."""
        self.field = field
        self.dim = len(table)
        self.table = table
        self.label = label
        self._generators = None
        if check:
            self._check_associativity()

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_constants(field: ScalarField, c, label: str = "") -> "StructureRing":
        n = len(c)
        for ci in c:
            if len(ci) != n or any(len(cij) != n for cij in ci):
                raise ValueError("structure tensor must be n x n x n")
        table = [
            [{k: x for k, x in enumerate(cij) if x} for cij in ci] for ci in c
        ]
        return StructureRing(field, table, label)

    def _check_associativity(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                tij = self.table[i][j]
                for l in range(n):
                    left = {}
                    for k, x in tij.items():
                        for m, y in self.table[k][l].items():
                            v = left.get(m, self.field.zero) + x * y
                            if v:
                                left[m] = v
                            else:
                                left.pop(m, None)
                    right = {}
                    for k, x in self.table[j][l].items():
                        for m, y in self.table[i][k].items():
                            v = right.get(m, self.field.zero) + x * y
                            if v:
                                right[m] = v
                            else:
                                right.pop(m, None)
                    if left != right:
                        raise AssociativityViolation(i, j, l, left, right)

    # -- arithmetic --------------------------------------------------------

    def zero_element(self) -> list:
        return [self.field.zero] * self.dim

    def basis_element(self, i: int) -> list:
        e = self.zero_element()
        e[i] = self.field.one
        return e

    def mul(self, x: list, y: list) -> list:
        out = self.zero_element()
        for i, a in enumerate(x):
            if not a:
                continue
            ti = self.table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in ti[j].items():
                    out[k] = out[k] + ab * c
        return out

    def left_mult_matrix(self, x: list) -> Mat:
        """Matrix of a |-> x*a in the basis."""
        m = Mat.zero(self.field, self.dim, self.dim)
        for i, c in enumerate(x):
            if not c:
                continue
            for j in range(self.dim):
                for k, v in self.table[i][j].items():
                    m.data[k][j] = m.data[k][j] + c * v
        return m

    def right_mult_matrix(self, x: list) -> Mat:
        """Matrix of a |-> a*x in the basis."""
        m = Mat.zero(self.field, self.dim, self.dim)
        for j, c in enumerate(x):
            if not c:
                continue
            for i in range(self.dim):
                for k, v in self.table[i][j].items():
                    m.data[k][i] = m.data[k][i] + c * v
        return m

    def is_idempotent(self, e: list) -> bool:
        return self.mul(e, e) == e

    # -- generators ---------------------------------------------------------

    def generators(self) -> list:
        """Indices of a basis subset generating the ring as an algebra.

        Greedy in index order; used to shrink intertwiner systems.  The
        result always generates (in the worst case it is the full basis).
        """
        if self._generators is not None:
            return self._generators
        gens = []
        span = Echelon(self.field, self.dim)
        closed: list[dict] = []  # sparse elements currently spanning the closure
        for i in range(self.dim):
            if not span.reduce({i: self.field.one}):
                continue
            gens.append(i)
            frontier = [{i: self.field.one}]
            span.insert({i: self.field.one})
            closed.append({i: self.field.one})
            while frontier:
                new = []
                for v in frontier:
                    for w in list(closed):
                        for prod in (self._mul_sparse(v, w), self._mul_sparse(w, v)):
                            if prod and span.insert(dict(prod)):
                                closed.append(prod)
                                new.append(prod)
                frontier = new
            if span.dim == self.dim:
                break
        self._generators = gens
        return gens

    def _mul_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            ti = self.table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in ti[j].items():
                    v = out.get(k, self.field.zero) + ab * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def __repr__(self):
        return "StructureRing(%s, dim=%d, %r)" % (self.field, self.dim, self.label)


@dataclass
class RingMorphism:
    source: StructureRing
    target: StructureRing
    matrix: Mat  # target.dim x source.dim

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise RingMismatch("morphism matrix has wrong shape")
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.apply(self.source.mul(
                    self.source.basis_element(i), self.source.basis_element(j)))
                rhs = self.target.mul(self.matrix.col(i), self.matrix.col(j))
                if lhs != rhs:
                    raise RingMismatch(
                        "not multiplicative on basis pair (%d,%d)" % (i, j)
                    )

    def apply(self, x: list) -> list:
        return self.matrix.apply(x)

    def compose(self, other: "RingMorphism") -> "RingMorphism":
        """self after other."""
        if other.target is not self.source:
            raise RingMismatch("morphisms not composable")
        return RingMorphism(other.source, self.target, self.matrix @ other.matrix)


@dataclass
class IdempotentFamily:
    ring: StructureRing
    idempotents: list  # list of elements (dense coefficient lists)
    sup_table: dict | None = None  # frozenset of indices -> dominating idempotent

    def __post_init__(self):
        for e in self.idempotents:
            if not self.ring.is_idempotent(e):
                raise ValueError("family member is not idempotent")
        if self.sup_table:
            for s, e in self.sup_table.items():
                for i in s:
                    x = self.idempotents[i]
                    if self.ring.mul(e, x) != x or self.ring.mul(x, e) != x:
                        raise ValueError("sup_table entry does not dominate %r" % (s,))

    def sup(self, indices) -> list | None:
        """An idempotent dominating the given family members, if available.

        Looks up the sup table, then tries the plain sum (valid when the
        chosen members are pairwise orthogonal).
        """
        s = frozenset(indices)
        if not s:
            return None
        if len(s) == 1:
            return self.idempotents[next(iter(s))]
        if self.sup_table and s in self.sup_table:
            return self.sup_table[s]
        members = [self.idempotents[i] for i in sorted(s)]
        for a in members:
            for b in members:
                if a is not b and any(self.ring.mul(a, b)):
                    return None
        total = self.ring.zero_element()
        for m in members:
            total = [x + y for x, y in zip(total, m)]
        if self.ring.is_idempotent(total):
            return total
        return None


# ---------------------------------------------------------------------------
# standard constructors


def check_group_table(table) -> list:
    """Validate a finite group table (identity at 0); return inverses."""
    n = len(table)
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise NotAGroup("malformed multiplication table")
    for g in range(n):
        if table[0][g] != g or table[g][0] != g:
            raise NotAGroup("index 0 is not an identity")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup("table is not associative at (%d,%d,%d)" % (a, b, c))
    inverses = []
    for g in range(n):
        inv = [h for h in range(n) if table[g][h] == 0 and table[h][g] == 0]
        if not inv:
            raise NotAGroup("element %d has no inverse" % g)
        inverses.append(inv[0])
    return inverses


def group_ring(B: StructureRing, group_table, label: str | None = None):
    """Group ring B[G]; basis (g, i) ordered lexicographically.

    Returns the ring together with the inclusion B -> B[G] sending b to
    (b, identity).
    """
    check_group_table(group_table)
    n = len(group_table)
    d = B.dim
    dim = n * d

    def idx(g, i):
        return g * d + i

    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for g in range(n):
        for h in range(n):
            gh = group_table[g][h]
            for i in range(d):
                for j in range(d):
                    prod = {idx(gh, k): v for k, v in B.table[i][j].items()}
                    table[idx(g, i)][idx(h, j)] = prod
    lbl = label if label is not None else "%s[G%d]" % (B.label or "B", n)
    A = StructureRing(B.field, table, lbl, check=False)
    A._check_associativity()
    inc = Mat.zero(B.field, dim, d)
    for i in range(d):
        inc.data[idx(0, i)][i] = B.field.one
    f = RingMorphism(B, A, inc)
    return A, f


def field_as_ring(field: ScalarField, label: str = "k") -> StructureRing:
    return StructureRing(field, [[{0: field.one}]], label)


def truncated_sequence_ring(field: ScalarField, n: int, label: str | None = None):
    """k^n with componentwise product, plus its coordinate idempotents.

    Finite stage of an infinite direct sum of copies of the base field;
    the sup of a set of coordinates is the partial sum.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    table = [
        [{i: field.one} if i == j else {} for j in range(n)] for i in range(n)
    ]
    ring = StructureRing(field, table, label or "k^%d" % n, check=False)
    idems = [ring.basis_element(i) for i in range(n)]
    fam = IdempotentFamily(ring, idems)
    return ring, fam


def matrix_ring(field: ScalarField, n: int, label: str | None = None):
    """Full n x n matrix ring; basis e_{rc} ordered row-major."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dim = n * n

    def idx(r, c):
        return r * n + c

    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for r in range(n):
        for c in range(n):
            for r2 in range(n):
                for c2 in range(n):
                    if c == r2:
                        table[idx(r, c)][idx(r2, c2)] = {idx(r, c2): field.one}
    ring = StructureRing(field, table, label or "M%d" % n, check=False)
    idems = [ring.basis_element(idx(i, i)) for i in range(n)]
    sups = {}
    fam = IdempotentFamily(ring, idems, sups)
    return ring, fam


def corner_truncation_CRF(field: ScalarField, n: int, label: str | None = None):
    """Finite corner of the column/row-finite matrix ring: just M_n."""
    return matrix_ring(field, n, label or "CRF%d" % n)


def direct_sum(rings: list, label: str | None = None) -> StructureRing:
    field = rings[0].field
    if any(r.field != field for r in rings):
        raise RingMismatch("direct sum over mixed fields")
    dim = sum(r.dim for r in rings)
    offs = []
    o = 0
    for r in rings:
        offs.append(o)
        o += r.dim
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for r, off in zip(rings, offs):
        for i in range(r.dim):
            for j in range(r.dim):
                table[off + i][off + j] = {
                    off + k: v for k, v in r.table[i][j].items()
                }
    return StructureRing(
        field, table, label or "+".join(r.label for r in rings), check=False
    )


def unitalization(A: StructureRing, label: str | None = None) -> StructureRing:
    """k (+) A with adjoined unit at index 0."""
    field = A.field
    dim = A.dim + 1
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    table[0][0] = {0: field.one}
    for i in range(A.dim):
        table[0][i + 1] = {i + 1: field.one}
        table[i + 1][0] = {i + 1: field.one}
        for j in range(A.dim):
            table[i + 1][j + 1] = {k + 1: v for k, v in A.table[i][j].items()}
    return StructureRing(field, table, label or (A.label + "^1"), check=False)


def square_zero_ring(field: ScalarField, n: int = 1, label: str = "Z0") -> StructureRing:
    """All products zero: the standard non-s-unital example."""
    return StructureRing(field, [[{} for _ in range(n)] for _ in range(n)], label)


# ---------------------------------------------------------------------------
# unitality predicates


def is_unital(A: StructureRing):
    """A two-sided identity element, or None.

    The zero ring is vacuously unital but has no identity to return.
    """
    if A.dim == 0:
        return None
    rows = []
    rhs = []
    for i in range(A.dim):
        li = A.left_mult_matrix(A.basis_element(i))
        # e * e_i = e_i: unknown e, coefficient of e_j in e_j*e_i is
        # right-mult-by-e_i; assemble both sides.
        ri = A.right_mult_matrix(A.basis_element(i))
        target = A.basis_element(i)
        for r in range(A.dim):
            rows.append(list(ri.data[r]))
            rhs.append(target[r])
        for r in range(A.dim):
            rows.append(list(li.data[r]))
            rhs.append(target[r])
    e = solve_vec(Mat.from_rows(rows), rhs, A.field)
    return e


def common_left_unit(A: StructureRing, X: list):
    """An element a with a*x = x for each x in X, or None."""
    if not X:
        return A.zero_element()
    rows = []
    rhs = []
    for x in X:
        rx = A.right_mult_matrix(x)  # a |-> a*x
        for r in range(A.dim):
            rows.append(list(rx.data[r]))
            rhs.append(x[r])
    return solve_vec(Mat.from_rows(rows), rhs, A.field)


def is_left_s_unital_ring(A: StructureRing) -> bool:
    """Joint solvability of a*e_i = e_i over the whole basis.

    Over a field a common witness on a basis is a left identity, which
    gives m in Am for arbitrary m.
    """
    if A.dim == 0:
        return True
    return common_left_unit(A, [A.basis_element(i) for i in range(A.dim)]) is not None


def element_in_Am(A: StructureRing, m: list) -> bool:
    """Membership m in A*m (per-element s-unitality test)."""
    from .linalg import image

    rx = A.right_mult_matrix(m)
    return image(rx, A.field).member(m)


def is_unitary_ring(A: StructureRing) -> bool:
    """Whether A*A spans A."""
    vecs = []
    for i in range(A.dim):
        for j in range(A.dim):
            vecs.append(A.table[i][j])
    return Subspace.from_vectors(A.field, A.dim, vecs).is_full()


def is_locally_unital(A: StructureRing, fam: IdempotentFamily, X: list):
    """An idempotent from the family absorbing X two-sidedly, or None.

    Search is restricted to single members, sup_table entries, and sums
    of pairwise-orthogonal members (smallest support first, then index
    order); the general quadratic idempotent equation is never solved.
    """
    if fam.ring is not A:
        raise RingMismatch("family belongs to a different ring")
    if not X:
        return A.zero_element() if A.dim else []

    def absorbs(e):
        return all(A.mul(e, x) == x and A.mul(x, e) == x for x in X)

    # find, per element, which single members already absorb it; then try
    # covers by increasing support size.
    from itertools import combinations

    nfam = len(fam.idempotents)
    for size in range(1, nfam + 1):
        for combo in combinations(range(nfam), size):
            e = fam.sup(combo)
            if e is not None and absorbs(e):
                return e
    return None
