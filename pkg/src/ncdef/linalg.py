"""Exact dense linear algebra over Q and prime fields.

Everything downstream (Hom spaces, Ext cocycles, structure constants)
reduces to rank / kernel / solve over an exact field, so determinism is
fixed here once: leftmost-nonzero pivot, first-nonzero-row tie break.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigurationError, UsageError


class Rationals:
    """The field Q with arbitrary-precision Fraction elements."""

    name = "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def parse(self, s: str):
        return Fraction(s)

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """F_p for a prime p < 2**31; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or p >= 2**31:
            raise UsageError(f"prime field modulus out of range: {p}")
        for d in range(2, min(p, 1 << 16)):
            if d * d > p:
                break
            if p % d == 0:
                raise UsageError(f"prime field modulus is composite: {p}")
        self.p = p
        self.name = f"F{p}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def of(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return (a * pow(b, -1, self.p)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, s: str):
        return int(s) % self.p

    def fmt(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return self.name


QQ = Rationals()


class Matrix:
    """Dense matrix over an exact field; row-major entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise UsageError("entry grid does not match declared shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = [list(r) for r in entries]

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.entries[i][i] = field.one
        return m

    @classmethod
    def column(cls, field, values) -> "Matrix":
        return cls(field, len(values), 1, [[v] for v in values])

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, self.entries)

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ConfigurationError("mixed-field matrix operation")

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.entries!r})"

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.entries for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise UsageError("shape mismatch in matrix addition")
        f = self.field
        return Matrix(
            self.field,
            self.rows,
            self.cols,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(
            self.field,
            self.rows,
            self.cols,
            [[f.mul(c, x) for x in row] for row in self.entries],
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise UsageError("shape mismatch in matrix product")
        f = self.field
        out = Matrix.zeros(self.field, self.rows, other.cols)
        for i in range(self.rows):
            row = self.entries[i]
            orow = out.entries[i]
            for k in range(self.cols):
                a = row[k]
                if f.is_zero(a):
                    continue
                brow = other.entries[k]
                for j in range(other.cols):
                    b = brow[j]
                    if not f.is_zero(b):
                        orow[j] = f.add(orow[j], f.mul(a, b))
        return out

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.rows != other.rows:
            raise UsageError("row mismatch in hstack")
        return Matrix(
            self.field,
            self.rows,
            self.cols + other.cols,
            [ra + rb for ra, rb in zip(self.entries, other.entries)],
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise UsageError("column mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    @classmethod
    def block(cls, grid) -> "Matrix":
        """Assemble a matrix from a rectangular grid of blocks."""
        rows = None
        for brow in grid:
            m = brow[0]
            for b in brow[1:]:
                m = m.hstack(b)
            rows = m if rows is None else rows.vstack(m)
        return rows

    def col(self, j: int):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, field, n_rows: int, cols) -> "Matrix":
        m = cls.zeros(field, n_rows, len(cols))
        for j, c in enumerate(cols):
            if len(c) != n_rows:
                raise UsageError("column length mismatch")
            for i in range(n_rows):
                m.entries[i][j] = c[i]
        return m

    def flatten(self):
        """Row-major vectorization; the fixed convention everywhere."""
        return [x for row in self.entries for x in row]

    @classmethod
    def from_flat(cls, field, rows: int, cols: int, flat) -> "Matrix":
        if len(flat) != rows * cols:
            raise UsageError("flat vector length mismatch")
        return cls(field, rows, cols, [flat[i * cols : (i + 1) * cols] for i in range(rows)])

    # --- elimination kernels -------------------------------------------

    def _echelon(self, augment: "Matrix | None" = None):
        """Row echelon form in place on copies; returns (rows, aug, pivots)."""
        f = self.field
        a = [list(r) for r in self.entries]
        t = [list(r) for r in augment.entries] if augment is not None else None
        pivots = []
        pr = 0
        for pc in range(self.cols):
            src = None
            for i in range(pr, self.rows):
                if not f.is_zero(a[i][pc]):
                    src = i
                    break
            if src is None:
                continue
            if src != pr:
                a[pr], a[src] = a[src], a[pr]
                if t is not None:
                    t[pr], t[src] = t[src], t[pr]
            inv = f.div(f.one, a[pr][pc])
            a[pr] = [f.mul(inv, x) for x in a[pr]]
            if t is not None:
                t[pr] = [f.mul(inv, x) for x in t[pr]]
            for i in range(self.rows):
                if i == pr:
                    continue
                c = a[i][pc]
                if f.is_zero(c):
                    continue
                a[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(a[i], a[pr])]
                if t is not None:
                    t[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(t[i], t[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.rows:
                break
        return a, t, pivots

    def rank(self) -> int:
        return len(self._echelon()[2])

    def rref(self):
        a, _, pivots = self._echelon()
        return Matrix(self.field, self.rows, self.cols, a), pivots

    def kernel_basis(self):
        """Basis of the right null space, as a list of column vectors."""
        f = self.field
        a, _, pivots = self._echelon()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for j in free:
            v = [f.zero] * self.cols
            v[j] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(a[r][j])
            basis.append(v)
        return basis

    def solve(self, b):
        """One exact solution of self @ x = b, or None if inconsistent.

        b is a flat vector; free variables are pinned to zero so the
        output is deterministic.
        """
        if len(b) != self.rows:
            raise UsageError("right-hand side length mismatch")
        f = self.field
        aug = Matrix.column(self.field, list(b))
        a, t, pivots = self._echelon(aug)
        rank = len(pivots)
        for i in range(rank, self.rows):
            if not f.is_zero(t[i][0]):
                return None
        x = [f.zero] * self.cols
        for r, pc in enumerate(pivots):
            # rows are fully reduced, so the pivot row reads off directly
            s = t[r][0]
            for j in range(pc + 1, self.cols):
                if not f.is_zero(a[r][j]) and not f.is_zero(x[j]):
                    s = f.sub(s, f.mul(a[r][j], x[j]))
            x[pc] = s
        return x

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise UsageError("inverse of non-square matrix")
        a, t, pivots = self._echelon(Matrix.identity(self.field, self.rows))
        if len(pivots) != self.rows:
            raise UsageError("matrix is singular")
        return Matrix(self.field, self.rows, self.cols, t)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix):
    return m.kernel_basis()


def solve(a: Matrix, b):
    return a.solve(b)


def column_span_rank(field, n_rows: int, vectors) -> int:
    if not vectors:
        return 0
    return Matrix.from_columns(field, n_rows, vectors).rank()


def coords_in_span(field, n_rows: int, basis_vectors, v):
    """Coordinates of v in the given spanning set, or None."""
    if not basis_vectors:
        return [] if all(field.is_zero(x) for x in v) else None
    return Matrix.from_columns(field, n_rows, basis_vectors).solve(v)


def independent_subset(field, n_rows: int, vectors, seed_vectors=()):
    """Greedy deterministic choice of vectors independent mod span(seed).

    Incremental elimination: each candidate is reduced against the rows
    kept so far, and kept iff a nonzero residual remains.  Same selection
    as rank re-computation, one pass instead of n.
    """
    f = field
    reduced = []          # rows in echelon form: (pivot column, row)
    chosen = []

    def reduce_and_insert(v, keep):
        row = list(v)
        for pc, er in reduced:
            c = row[pc]
            if not f.is_zero(c):
                row = [f.sub(x, f.mul(c, y)) for x, y in zip(row, er)]
        pivot = next((j for j, x in enumerate(row) if not f.is_zero(x)), None)
        if pivot is None:
            return False
        inv = f.div(f.one, row[pivot])
        row = [f.mul(inv, x) for x in row]
        reduced.append((pivot, row))
        if keep:
            chosen.append(v)
        return True

    for v in seed_vectors:
        reduce_and_insert(v, keep=False)
    for v in vectors:
        reduce_and_insert(v, keep=True)
    return chosen


def quotient_map(field, n: int, subspace_vectors) -> Matrix:
    """A surjection q: k^n -> k^(n-r) whose kernel is the given span.

    Deterministic: the span basis is completed with the first standard
    vectors that extend it, and q is the corresponding block of the
    inverse change of basis.
    """
    basis = independent_subset(field, n, subspace_vectors)
    r = len(basis)
    if r == n:
        return Matrix.zeros(field, 0, n)
    std = []
    for i in range(n):
        e = [field.zero] * n
        e[i] = field.one
        std.append(e)
    completion = independent_subset(field, n, std, seed_vectors=basis)
    p = Matrix.from_columns(field, n, basis + completion)
    pinv = p.inverse()
    return Matrix(field, n - r, n, pinv.entries[r:])
