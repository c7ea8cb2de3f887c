"""Exact dense linear algebra over Q and F_p.

Matrices are small row-major lists of exact scalars.  Subspaces are kept
in reduced row-echelon form so value equality is structural equality,
and quotient spaces carry explicit projection/section matrices with
deterministic coset representatives (the non-pivot coordinates).

The incremental :class:`Echelon` builder works on sparse rows (dicts
column -> scalar); the structured systems arising from tensor relations
and intertwiner equations are extremely sparse and this keeps them
cheap without changing any result.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import ScalarField


class DimensionMismatch(ValueError):
    pass


@dataclass
class Mat:
    """Dense matrix; ``data`` is a list of rows."""

    rows: int
    cols: int
    data: list

    @staticmethod
    def zero(field: ScalarField, rows: int, cols: int) -> "Mat":
        z = field.zero
        return Mat(rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: ScalarField, n: int) -> "Mat":
        m = Mat.zero(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @staticmethod
    def from_rows(rows: list) -> "Mat":
        return Mat(len(rows), len(rows[0]) if rows else 0, [list(r) for r in rows])

    def copy(self) -> "Mat":
        return Mat(self.rows, self.cols, [list(r) for r in self.data])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch(
                "cannot multiply %dx%d by %dx%d"
                % (self.rows, self.cols, other.rows, other.cols)
            )
        n, k, m = self.rows, self.cols, other.cols
        z = None
        if n and m:
            z = _zero_like(*self.data, *other.data)
        out = []
        for i in range(n):
            row = self.data[i]
            acc = None
            for j in range(k):
                a = row[j]
                if not a:
                    continue
                orow = other.data[j]
                if acc is None:
                    acc = [a * x if x else z for x in orow]
                else:
                    for c in range(m):
                        x = orow[c]
                        if x:
                            acc[c] = acc[c] + a * x
            out.append(acc if acc is not None else [z] * m)
        return Mat(n, m, out)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return Mat(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return Mat(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def scale(self, c) -> "Mat":
        return Mat(self.rows, self.cols, [[c * x for x in row] for row in self.data])

    def transpose(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)],
        )

    def apply(self, vec: list) -> list:
        """Matrix times a column vector (given and returned as a list)."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length %d != cols %d" % (len(vec), self.cols))
        out = []
        for row in self.data:
            acc = None
            for a, v in zip(row, vec):
                if a and v:
                    term = a * v
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else _zero_like(row, vec))
        return out

    def col(self, c: int) -> list:
        return [self.data[r][c] for r in range(self.rows)]

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)


def _zero_like(*seqs):
    for s in seqs:
        for x in s:
            return x - x
    raise ValueError("cannot infer zero from empty sequences")


# ---------------------------------------------------------------------------
# row reduction


def rref(m: Mat, field: ScalarField):
    """Reduced row-echelon form and pivot columns (unique, canonical)."""
    a = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = field.one / a[r][c]
        if inv != field.one:
            a[r] = [inv * x for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                ai, ar = a[i], a[r]
                for j in range(c, nc):
                    if ar[j]:
                        ai[j] = ai[j] - f * ar[j]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Mat(nr, nc, a), pivots


def solve(a: Mat, b: Mat, field: ScalarField):
    """One exact solution X of aX = b with free variables zeroed, or None."""
    if a.rows != b.rows:
        raise DimensionMismatch("solve: a.rows != b.rows")
    aug = Mat(a.rows, a.cols + b.cols, [ra + rb for ra, rb in zip(a.data, b.data)])
    red, pivots = rref(aug, field)
    piv_in_a = [p for p in pivots if p < a.cols]
    if len(piv_in_a) != len(pivots):
        return None
    x = Mat.zero(field, a.cols, b.cols)
    for r, p in enumerate(piv_in_a):
        for c in range(b.cols):
            x.data[p][c] = red.data[r][a.cols + c]
    return x


def solve_vec(a: Mat, b: list, field: ScalarField):
    res = solve(a, Mat(len(b), 1, [[v] for v in b]), field)
    return None if res is None else [row[0] for row in res.data]


# ---------------------------------------------------------------------------
# sparse incremental echelon


class Echelon:
    """Incrementally maintained reduced echelon basis over sparse rows."""

    def __init__(self, field: ScalarField, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows: dict[int, dict] = {}  # pivot col -> sparse row (pivot entry 1)

    def reduce(self, vec: dict) -> dict:
        """Residue of a sparse vector modulo the current row space."""
        v = {c: x for c, x in vec.items() if x}
        for c in sorted(v):
            if not v.get(c):
                continue
            row = self.rows.get(c)
            if row is None:
                continue
            f = v[c]
            for cc, x in row.items():
                nv = v.get(cc, self.field.zero) - f * x
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v

    def insert(self, vec: dict) -> bool:
        """Insert a sparse vector; True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = self.field.one / v[p]
        row = {c: inv * x for c, x in v.items()}
        for q, other in self.rows.items():
            f = other.get(p)
            if f:
                for cc, x in row.items():
                    nv = other.get(cc, self.field.zero) - f * x
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        self.rows[p] = row
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def to_subspace(self) -> "Subspace":
        pivots = sorted(self.rows)
        z = self.field.zero
        basis = []
        for p in pivots:
            row = [z] * self.ambient_dim
            for c, x in self.rows[p].items():
                row[c] = x
            basis.append(row)
        return Subspace(self.field, self.ambient_dim, basis, tuple(pivots))


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Canonical subspace: basis rows in RREF, ascending pivot columns."""

    field: ScalarField
    ambient_dim: int
    basis: list = dc_field(default_factory=list)
    pivot_cols: tuple = ()

    @staticmethod
    def from_vectors(field: ScalarField, ambient_dim: int, vectors) -> "Subspace":
        ech = Echelon(field, ambient_dim)
        for v in vectors:
            if isinstance(v, dict):
                ech.insert(v)
            else:
                ech.insert({i: x for i, x in enumerate(v) if x})
        return ech.to_subspace()

    @staticmethod
    def zero(field: ScalarField, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, [], ())

    @staticmethod
    def full(field: ScalarField, ambient_dim: int) -> "Subspace":
        return Subspace.from_vectors(
            field, ambient_dim, Mat.identity(field, ambient_dim).data
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivot_cols == other.pivot_cols
            and self.basis == other.basis
        )

    def _echelon(self) -> Echelon:
        ech = Echelon(self.field, self.ambient_dim)
        for p, row in zip(self.pivot_cols, self.basis):
            ech.rows[p] = {c: x for c, x in enumerate(row) if x}
        return ech

    def member(self, v) -> bool:
        if isinstance(v, dict):
            sv = v
        else:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("vector/ambient mismatch")
            sv = {i: x for i, x in enumerate(v) if x}
        return not self._echelon().reduce(sv)

    def contains(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient mismatch")
        ech = self._echelon()
        return all(
            not ech.reduce({i: x for i, x in enumerate(row) if x})
            for row in other.basis
        )

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient mismatch")
        return Subspace.from_vectors(
            self.field, self.ambient_dim, list(self.basis) + list(other.basis)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [U|U; V|0] and read the trailing blocks."""
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient mismatch")
        n = self.ambient_dim
        z = self.field.zero
        rows = [list(r) + list(r) for r in self.basis]
        rows += [list(r) + [z] * n for r in other.basis]
        if not rows:
            return Subspace.zero(self.field, n)
        red, pivots = rref(Mat.from_rows(rows), self.field)
        vecs = []
        for r, p in enumerate(pivots):
            if p >= n:
                vecs.append(red.data[r][n:])
        return Subspace.from_vectors(self.field, n, vecs)

    def complement_basis(self) -> list:
        """Greedy standard-basis extension to the full ambient space."""
        out = []
        ech = self._echelon()
        for i in range(self.ambient_dim):
            if ech.insert({i: self.field.one}):
                e = [self.field.zero] * self.ambient_dim
                e[i] = self.field.one
                out.append(e)
        return out

    def basis_mat(self) -> Mat:
        return Mat(self.dim, self.ambient_dim, [list(r) for r in self.basis])

    def coords_of(self, v):
        """Coordinates of v in the RREF basis, or None if not a member."""
        if isinstance(v, dict):
            dense = [self.field.zero] * self.ambient_dim
            for i, x in v.items():
                dense[i] = x
            v = dense
        coords = [v[p] for p in self.pivot_cols]
        residual = list(v)
        for c, row in zip(coords, self.basis):
            if c:
                residual = [a - c * b for a, b in zip(residual, row)]
        if any(residual):
            return None
        return coords


def kernel(a: Mat, field: ScalarField) -> Subspace:
    """Exact null space of a, canonical."""
    red, pivots = rref(a, field)
    pivset = set(pivots)
    free = [c for c in range(a.cols) if c not in pivset]
    vecs = []
    for fc in free:
        v = [field.zero] * a.cols
        v[fc] = field.one
        for r, p in enumerate(pivots):
            v[p] = -red.data[r][fc]
        vecs.append(v)
    return Subspace.from_vectors(field, a.cols, vecs)


def image(a: Mat, field: ScalarField) -> Subspace:
    """Column space of a, canonical."""
    return Subspace.from_vectors(
        field, a.rows, [a.col(c) for c in range(a.cols)]
    )


# ---------------------------------------------------------------------------
# quotient spaces


@dataclass(frozen=True)
class QuotientSpace:
    """Ambient space modulo a relation subspace.

    Coset coordinates are the non-pivot ambient coordinates of the
    relation RREF: ``project`` (coset_dim x ambient) and ``section``
    (ambient x coset_dim) satisfy project @ section = identity and
    project annihilates every relation.
    """

    ambient_dim: int
    relations: Subspace
    coset_dim: int
    project: Mat
    section: Mat

    @staticmethod
    def of(ambient_dim: int, relations: Subspace) -> "QuotientSpace":
        if relations.ambient_dim != ambient_dim:
            raise DimensionMismatch("relations/ambient mismatch")
        field = relations.field
        z, one = field.zero, field.one
        pivset = set(relations.pivot_cols)
        free = [c for c in range(ambient_dim) if c not in pivset]
        k = len(free)
        proj = Mat.zero(field, k, ambient_dim)
        for t, c in enumerate(free):
            proj.data[t][c] = one
        for r, p in enumerate(relations.pivot_cols):
            row = relations.basis[r]
            for t, c in enumerate(free):
                if row[c]:
                    proj.data[t][p] = -row[c]
        sect = Mat.zero(field, ambient_dim, k)
        for t, c in enumerate(free):
            sect.data[c][t] = one
        return QuotientSpace(ambient_dim, relations, k, proj, sect)

    def project_sparse(self, vec: dict) -> list:
        """Project a sparse ambient vector onto coset coordinates."""
        field = self.relations.field
        out = [field.zero] * self.coset_dim
        cols = {c: None for c in vec}
        for t in range(self.coset_dim):
            row = self.project.data[t]
            acc = field.zero
            for c in cols:
                x = vec[c]
                if x and row[c]:
                    acc = acc + row[c] * x
            out[t] = acc
        return out
