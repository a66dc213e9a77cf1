"""Exact dense linear algebra over the rationals and prime fields.

Rationals are ``gmpy2.mpq`` values (always in lowest terms with a positive
denominator); residues mod p are :class:`Mod` instances.  Every routine is
exact, so equality tests are structural and no tolerance ever appears.

Row reduction works on sparse rows (``dict`` column -> entry) because most
systems built elsewhere in the package (intertwiner equations, tensor
relations) are very sparse.
"""

from __future__ import annotations

import random
import heapq
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import DimensionError, FieldMismatchError, SingularMatrixError

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")
_RESIDUE_RE = re.compile(r"^\d+$")


class Mod:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> Mod:
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (other - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """The rationals (``characteristic == 0``) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c < 0 or (c != 0 and not gmpy2.is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else Mod(0, self.characteristic)

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else Mod(1, self.characteristic)

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, str):
            return self.parse(x)
        if p == 0:
            if isinstance(x, Mod):
                raise FieldMismatchError("residue class used over Q")
            return mpq(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise FieldMismatchError(f"F_{x.p} element used over F_{p}")
            return x
        q = mpq(x)
        return Mod(int(q.numerator), p) / Mod(int(q.denominator), p)

    def parse(self, s: str):
        s = s.strip()
        if self.characteristic == 0:
            if not _RATIONAL_RE.match(s):
                raise ValueError(f"not a rational literal: {s!r}")
            return mpq(s)
        if _RESIDUE_RE.match(s):
            v = int(s)
            if v >= self.characteristic:
                raise ValueError(f"residue {s} not in [0, {self.characteristic})")
            return Mod(v, self.characteristic)
        if _RATIONAL_RE.match(s):
            return self(mpq(s))
        raise ValueError(f"not a residue literal: {s!r}")

    def format(self, x) -> str:
        return str(self(x))

    def sort_key(self, x):
        return x.v if isinstance(x, Mod) else x

    def random_element(self, rng: random.Random, bound: int = 3, nonzero: bool = False):
        while True:
            if self.characteristic:
                x = self(rng.randrange(self.characteristic))
            else:
                x = mpq(rng.randint(-bound, bound))
            if x or not nonzero:
                return x

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def field_of(x) -> Field:
    return Field(x.p) if isinstance(x, Mod) else QQ


# ---------------------------------------------------------------------------
# sparse row reduction


def _sparse(row: Sequence) -> dict:
    return {j: x for j, x in enumerate(row) if x}


class RowReducer:
    """Row space of a growing set of rows, kept in echelon form.

    Inserting only eliminates the new row against the stored ones, so rows
    stay in (unreduced) echelon form with a leading 1 at their pivot.  The
    reduced row echelon form is built lazily by :attr:`pivots` the first
    time it is needed after an insertion.
    """

    def __init__(self, ncols: int, field: Field = QQ):
        self.ncols = ncols
        self.field = field
        self._ech: dict[int, dict] = {}
        self._rref: dict[int, dict] | None = {}

    @property
    def rank(self) -> int:
        return len(self._ech)

    @property
    def full(self) -> bool:
        return len(self._ech) == self.ncols

    @property
    def pivots(self) -> dict[int, dict]:
        """Rows of the reduced row echelon form, keyed by pivot column."""
        if self._rref is None:
            red: dict[int, dict] = {}
            for c in sorted(self._ech, reverse=True):
                row = dict(self._ech[c])
                for k in [k for k in row if k != c and k in red]:
                    f = row.get(k)
                    if not f:
                        continue
                    for j, v in red[k].items():
                        nv = row.get(j, 0) - f * v
                        if nv:
                            row[j] = nv
                        else:
                            row.pop(j, None)
                red[c] = row
            self._rref = red
        return self._rref

    def reduce(self, row) -> dict:
        """Remainder of ``row`` modulo the span: zero in every pivot column."""
        r = dict(row) if isinstance(row, dict) else _sparse(row)
        ech = self._ech
        heap = [c for c in r if c in ech]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            f = r.get(c)
            if not f:
                continue
            for k, v in ech[c].items():
                old = r.get(k)
                if old is None:
                    r[k] = -f * v
                    if k in ech:
                        heapq.heappush(heap, k)
                else:
                    nv = old - f * v
                    if nv:
                        r[k] = nv
                    else:
                        del r[k]
        return r

    def add(self, row) -> bool:
        """Insert ``row``; return True iff it was independent of the current span."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        self._ech[c] = {k: v * inv for k, v in r.items()}
        self._rref = None
        return True

    def extend(self, rows: Iterable) -> RowReducer:
        for row in rows:
            if self.full:
                break
            self.add(row)
        return self

    def contains(self, row) -> bool:
        return not self.reduce(row)

    def pivot_columns(self) -> list[int]:
        return sorted(self._ech)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self._ech]

    def basis_rows(self) -> list[tuple]:
        z = self.field.zero
        out = []
        for c in sorted(self.pivots):
            row = [z] * self.ncols
            for k, v in self.pivots[c].items():
                row[k] = v
            out.append(tuple(row))
        return out

    def kernel_vectors(self) -> tuple[list[tuple], list[int]]:
        """Null space of the stored rows; returns (basis, free columns).

        Basis vector ``i`` has a 1 in free column ``free[i]`` and 0 in every
        other free column, so coordinates of a kernel element are simply its
        entries at the free columns.
        """
        F = self.field
        free = self.free_columns()
        basis = []
        for f in free:
            v = [F.zero] * self.ncols
            v[f] = F.one
            for c, prow in self.pivots.items():
                x = prow.get(f)
                if x:
                    v[c] = -x
            basis.append(tuple(v))
        return basis, free


class Quotient:
    """Quotient ``F^n / W`` with coordinates read off the non-pivot columns of rref(W)."""

    def __init__(self, field: Field, n: int, spanning: Iterable = ()):
        self.field = field
        self.ambient_dim = n
        self._red = RowReducer(n, field).extend(spanning)
        self.free = self._red.free_columns()
        self._free_index = {c: i for i, c in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def subspace_dim(self) -> int:
        return self._red.rank

    def project(self, vec) -> tuple:
        r = self._red.reduce(vec)
        z = self.field.zero
        out = [z] * len(self.free)
        for k, v in r.items():
            out[self._free_index[k]] = v
        return tuple(out)

    def lift(self, coords: Sequence) -> tuple:
        z = self.field.zero
        v = [z] * self.ambient_dim
        for i, c in enumerate(self.free):
            v[c] = coords[i]
        return tuple(v)

    def in_subspace(self, vec) -> bool:
        return self._red.contains(vec)

    def subspace_basis(self) -> list[tuple]:
        return self._red.basis_rows()

    def projection_matrix(self) -> Matrix:
        F = self.field
        cols = []
        for c in range(self.ambient_dim):
            if c in self._free_index:
                col = [F.zero] * self.dim
                col[self._free_index[c]] = F.one
            else:
                col = [F.zero] * self.dim
                for k, v in self._red.pivots[c].items():
                    if k != c:
                        col[self._free_index[k]] = -v
            cols.append(col)
        return Matrix.from_columns(F, cols, self.dim)

    def section_matrix(self) -> Matrix:
        F = self.field
        cols = []
        for c in self.free:
            col = [F.zero] * self.ambient_dim
            col[c] = F.one
            cols.append(col)
        return Matrix.from_columns(F, cols, self.ambient_dim)


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Immutable dense matrix over a :class:`Field`, stored row-major."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise DimensionError("ragged matrix rows")
        self._set(field, rows, len(rows), ncols)

    def _set(self, field, rows, nrows, ncols):
        self.field = field
        self._rows = rows
        self.nrows = nrows
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows, ncols: int) -> Matrix:
        m = cls.__new__(cls)
        m._set(field, tuple(rows), len(rows), ncols)
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls._raw(field, [(z,) * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> Matrix:
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise DimensionError("column length mismatch")
        rows = [tuple(c[i] for c in columns) for i in range(nrows)]
        return cls._raw(field, rows, len(columns))

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> Matrix:
        n = len(entries)
        z = field.zero
        return cls._raw(field, [tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._rows)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.field, [self.column(j) for j in range(self.ncols)], self.nrows)

    def _check(self, other: Matrix):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._rows == other._rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.shape, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field}>[{body}]"

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"{self.shape} + {other.shape}")
        return Matrix._raw(
            self.field,
            [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"{self.shape} - {other.shape}")
        return Matrix._raw(
            self.field,
            [tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.field, [tuple(-a for a in r) for r in self._rows], self.ncols)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._raw(self.field, [tuple(c * a for a in r) for r in self._rows], self.ncols)

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise DimensionError(f"{self.shape} @ {other.shape}")
            z = self.field.zero
            n = other.ncols
            brows = other._rows
            out = []
            for r in self._rows:
                acc = [z] * n
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(brows[k]):
                            if b:
                                acc[j] += a * b
                out.append(tuple(acc))
            return Matrix._raw(self.field, out, n)
        return self.apply(other)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionError(f"{self.shape} @ vector of length {len(vec)}")
        z = self.field.zero
        nz = [(k, x) for k, x in enumerate(vec) if x]
        return tuple(sum((r[k] * x for k, x in nz), z) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(x for r in self._rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def trace(self):
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), self.field.zero)

    def vec(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for r in self._rows for x in r)

    @classmethod
    def unvec(cls, field: Field, v: Sequence, nrows: int, ncols: int) -> Matrix:
        return cls._raw(field, [tuple(v[i * ncols:(i + 1) * ncols]) for i in range(nrows)], ncols)

    def hstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.nrows != other.nrows:
            raise DimensionError("hstack row mismatch")
        return Matrix._raw(self.field, [r + s for r, s in zip(self._rows, other._rows)], self.ncols + other.ncols)

    def vstack(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.ncols:
            raise DimensionError("vstack column mismatch")
        return Matrix._raw(self.field, self._rows + other._rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._raw(self.field, [tuple(self._rows[i][j] for j in cols) for i in rows], len(cols))

    def __pow__(self, e: int) -> Matrix:
        if e < 0:
            return inverse(self) ** (-e)
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def reducer(self) -> RowReducer:
        return RowReducer(self.ncols, self.field).extend(self._rows)


def as_vector(field: Field, v: Iterable) -> tuple:
    return tuple(field(x) for x in v)


def _same_field(*ms: Matrix) -> Field:
    fields = {m.field for m in ms}
    if len(fields) > 1:
        raise FieldMismatchError("operands over different fields: " + ", ".join(map(str, fields)))
    return ms[0].field


def identity(n: int, field: Field = QQ) -> Matrix:
    return Matrix.identity(field, n)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of ``m`` (same shape) and its pivot columns."""
    red = m.reducer()
    rows = red.basis_rows()
    z = m.field.zero
    rows += [(z,) * m.ncols] * (m.nrows - len(rows))
    return Matrix._raw(m.field, rows, m.ncols), red.pivot_columns()


def rank(m: Matrix) -> int:
    return m.reducer().rank


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the null space of ``m``."""
    basis, _ = m.reducer().kernel_vectors()
    return Matrix.from_columns(m.field, basis, m.ncols)


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """A solution of ``m x = b`` or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionError(f"rhs length {len(b)} for a {m.shape} system")
    F = m.field
    n = m.ncols
    red = RowReducer(n + 1, F)
    for r, bi in zip(m.rows, b):
        row = _sparse(r)
        bi = F(bi)
        if bi:
            row[n] = bi
        red.add(row)
    if n in red.pivots:
        return None
    x = [F.zero] * n
    for c, prow in red.pivots.items():
        x[c] = prow.get(n, F.zero)
    return tuple(x)


def solve_many(m: Matrix, bs: Sequence[Sequence]) -> list[tuple | None]:
    """Solutions of ``m x = b`` for several right-hand sides, sharing one reduction."""
    F = m.field
    n, nb = m.ncols, len(bs)
    red = RowReducer(n + nb, F)
    for r in range(m.nrows):
        row = _sparse(m.row(r))
        for j, b in enumerate(bs):
            if b[r]:
                row[n + j] = F(b[r])
        red.add(row)
    piv = red.pivots
    # a row with no entry left of the bar reads 0 = b_j for every system j it touches
    bad = {k - n for c, prow in piv.items() if c >= n for k in prow}
    out = []
    for j in range(nb):
        if j in bad:
            out.append(None)
            continue
        x = [F.zero] * n
        for c, prow in piv.items():
            if c < n:
                x[c] = prow.get(n + j, F.zero)
        out.append(tuple(x))
    return out


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionError(f"inverse of non-square {m.shape}")
    F = m.field
    n = m.nrows
    red = RowReducer(2 * n, F)
    for i, r in enumerate(m.rows):
        row = _sparse(r)
        row[n + i] = F.one
        red.add(row)
    if any(c not in red.pivots for c in range(n)):
        raise SingularMatrixError("matrix is singular")
    z = F.zero
    rows = []
    for c in range(n):
        prow = red.pivots[c]
        rows.append(tuple(prow.get(n + j, z) for j in range(n)))
    return Matrix._raw(F, rows, n)


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.nrows


def determinant(m: Matrix):
    if not m.is_square():
        raise DimensionError("determinant of non-square matrix")
    F = m.field
    rows = [list(r) for r in m.rows]
    n = m.nrows
    det = F.one
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return F.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        pv = rows[c][c]
        det = det * pv
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    F = _same_field(a, b)
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix._raw(F, rows, a.ncols * b.ncols)


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    F = _same_field(a, b)
    z = F.zero
    rows = [r + (z,) * b.ncols for r in a.rows] + [(z,) * a.ncols + r for r in b.rows]
    return Matrix._raw(F, rows, a.ncols + b.ncols)


def block_diagonal(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    out = Matrix.zeros(field, 0, 0)
    for b in blocks:
        out = direct_sum(out, b)
    return out


def random_invertible(n: int, seed: int, field: Field = QQ, bound: int = 3, steps: int | None = None) -> Matrix:
    """Deterministic random matrix of determinant one.

    Built as a product of transvections (add ``c`` times one row to another),
    so the determinant is 1 by construction; a step is skipped when it would
    push an entry above ``bound`` in absolute value (over Q).
    """
    rng = random.Random(seed)
    rows = [list(r) for r in Matrix.identity(field, n).rows]
    if n < 2:
        return Matrix._raw(field, [tuple(r) for r in rows], n)
    steps = 3 * n if steps is None else steps
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = field(rng.choice([-2, -1, 1, 2]))
        new = [a + c * b for a, b in zip(rows[i], rows[j])]
        if field.characteristic == 0 and any(abs(x) > bound for x in new):
            continue
        rows[i] = new
    return Matrix._raw(field, [tuple(r) for r in rows], n)


def span_closure(field: Field, dim: int, start: Iterable[Sequence], operators: Sequence[Matrix]) -> list[tuple]:
    """Basis of the smallest subspace containing ``start`` and stable under ``operators``."""
    red = RowReducer(dim, field)
    basis: list[tuple] = []
    queue = []
    for v in start:
        v = tuple(v)
        if red.add(v):
            basis.append(v)
            queue.append(v)
    while queue and not red.full:
        v = queue.pop()
        for op in operators:
            w = op.apply(v)
            if red.add(w):
                basis.append(w)
                queue.append(w)
    return basis


def restrict(field: Field, basis: Sequence[Sequence], op: Matrix) -> Matrix:
    """Matrix of ``op`` on the invariant subspace spanned by ``basis`` (columns)."""
    return restrict_many(field, basis, [op], [op])[0]


def restrict_many(field: Field, basis: Sequence[Sequence], ops: Sequence[Matrix], checked: Sequence[Matrix] = ()) -> list[Matrix]:
    """``restrict`` for several operators sharing one coordinate system.

    Invariance is verified for the operators in ``checked`` only (enough when
    they generate the others); the rest are read off without a check.
    """
    Q = Matrix.from_columns(field, basis, ops[0].nrows if ops else len(basis[0]))
    coords = CoordinateSystem(Q)
    for op in checked:
        for b in basis:
            coords(op.apply(tuple(b)))
    rows = coords.rows
    return [coords._inv @ (op.submatrix(rows, range(op.ncols)) @ Q) for op in ops]


class CoordinateSystem:
    """Coordinates with respect to the (independent) columns of ``Q``."""

    def __init__(self, Q: Matrix):
        self.Q = Q
        red = Q.T.reducer()
        if red.rank != Q.ncols:
            raise SingularMatrixError("columns are not independent")
        self.rows = red.pivot_columns()
        self._inv = inverse(Q.submatrix(self.rows, range(Q.ncols)))

    @property
    def inverse_matrix(self) -> Matrix:
        """``Q^-1`` (square ``Q`` only)."""
        if not self.Q.is_square():
            raise DimensionError("inverse of a non-square coordinate system")
        return self._inv

    def __call__(self, v: Sequence, check: bool = True) -> tuple:
        c = self._inv.apply(tuple(v[i] for i in self.rows))
        if check and self.Q.apply(c) != tuple(v):
            raise ValueError("vector is not in the column span")
        return c
