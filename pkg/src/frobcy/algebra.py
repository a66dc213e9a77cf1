"""Finite-dimensional associative unital algebras given by structure constants.

Basis elements are ``e_0 .. e_{d-1}``; ``e_i e_j = sum_k c[i][j][k] e_k``.
Elements are coordinate tuples.  Left multiplication by ``e_i`` is the
matrix ``L_i`` with ``L_i[k][j] = c[i][j][k]`` (columns are images of basis
vectors), right multiplication ``R_i[k][j] = c[j][i][k]``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .errors import (
    DimensionError,
    NotSemisimpleError,
    NotSplitError,
    SingularMatrixError,
    UnsupportedCharacteristicError,
)
from .linalg import (
    QQ,
    Field,
    Matrix,
    Quotient,
    RowReducer,
    inverse,
    rank,
    solve,
    span_closure,
)


class Algebra:
    def __init__(self, field: Field, structure_constants, unit: Sequence, name: str | None = None):
        d = len(unit)
        if d < 1:
            raise DimensionError("an algebra has dimension at least 1")
        sc = tuple(
            tuple(tuple(field(x) for x in cij) for cij in ci) for ci in structure_constants
        )
        if len(sc) != d or any(len(ci) != d or any(len(cij) != d for cij in ci) for ci in sc):
            raise DimensionError(f"structure constants must be {d}x{d}x{d}")
        self.field = field
        self.dim = d
        self.structure_constants = sc
        self.unit = tuple(field(x) for x in unit)
        self.name = name
        self._cache: dict = {}
        self._hash = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.unit == other.unit
            and self.structure_constants == other.structure_constants
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.unit, self.structure_constants))
        return self._hash

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} dim={self.dim} over {self.field}>"

    def cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def basis_vector(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def vector(self, coords: Sequence) -> tuple:
        if len(coords) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(self.field(x) for x in coords)

    @property
    def left_regular(self) -> list[Matrix]:
        def build():
            F, d, c = self.field, self.dim, self.structure_constants
            return [
                Matrix._raw(F, [tuple(c[i][j][k] for j in range(d)) for k in range(d)], d)
                for i in range(d)
            ]

        return self.cached("L", build)

    @property
    def right_regular(self) -> list[Matrix]:
        def build():
            F, d, c = self.field, self.dim, self.structure_constants
            return [
                Matrix._raw(F, [tuple(c[j][i][k] for j in range(d)) for k in range(d)], d)
                for i in range(d)
            ]

        return self.cached("R", build)

    def _combine(self, mats: list[Matrix], x: Sequence) -> Matrix:
        F, d = self.field, self.dim
        acc = [[F.zero] * d for _ in range(d)]
        for xi, m in zip(x, mats):
            if xi:
                for r, row in enumerate(m.rows):
                    ar = acc[r]
                    for s, v in enumerate(row):
                        if v:
                            ar[s] += xi * v
        return Matrix._raw(F, [tuple(r) for r in acc], d)

    def left_matrix(self, x: Sequence) -> Matrix:
        return self._combine(self.left_regular, x)

    def right_matrix(self, x: Sequence) -> Matrix:
        return self._combine(self.right_regular, x)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError("element length does not match algebra dimension")
        F, d, c = self.field, self.dim, self.structure_constants
        out = [F.zero] * d
        for i, xi in enumerate(x):
            if not xi:
                continue
            ci = c[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, v in enumerate(ci[j]):
                    if v:
                        out[k] += f * v
        return tuple(out)

    def add(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, s, x: Sequence) -> tuple:
        s = self.field(s)
        return tuple(s * a for a in x)

    def power(self, x: Sequence, n: int) -> tuple:
        out = self.unit
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def commutator(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(a - b for a, b in zip(self.multiply(x, y), self.multiply(y, x)))

    def is_invertible(self, x: Sequence) -> bool:
        return rank(self.left_matrix(x)) == self.dim

    def inverse_element(self, x: Sequence) -> tuple:
        y = solve(self.left_matrix(x), self.unit)
        if y is None:
            raise SingularMatrixError("element is not invertible")
        return y

    def is_central(self, z: Sequence) -> bool:
        return all(
            self.multiply(z, e) == self.multiply(e, z)
            for e in (self.basis_vector(i) for i in range(self.dim))
        )

    def random_element(self, rng: random.Random, bound: int = 3) -> tuple:
        return tuple(self.field.random_element(rng, bound) for _ in range(self.dim))


@dataclass(frozen=True)
class WedderburnData:
    """Central primitive idempotents and block sizes of a split semisimple algebra."""

    idempotents: tuple[tuple, ...]
    block_dims: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.idempotents)


# ---------------------------------------------------------------------------
# validation and elementary structure


def validate_algebra(a: Algebra) -> list[dict]:
    """Every associativity and unit failure, as witness records; empty iff valid."""
    failures: list[dict] = []
    d = a.dim
    L = a.left_regular
    for i in range(d):
        for j in range(d):
            lhs = a.left_matrix(a.structure_constants[i][j])
            rhs = L[i] @ L[j]
            if lhs != rhs:
                for k in range(d):
                    if lhs.column(k) != rhs.column(k):
                        failures.append({"kind": "associativity", "triple": [i, j, k]})
    for j in range(d):
        e = a.basis_vector(j)
        if a.multiply(a.unit, e) != e:
            failures.append({"kind": "left_unit", "basis": j})
        if a.multiply(e, a.unit) != e:
            failures.append({"kind": "right_unit", "basis": j})
    return failures


def multiply(a: Algebra, x: Sequence, y: Sequence) -> tuple:
    return a.multiply(x, y)


def left_regular_matrix(a: Algebra, x: Sequence) -> Matrix:
    if len(x) != a.dim:
        raise DimensionError("element length does not match algebra dimension")
    return a.left_matrix(x)


def center_basis(a: Algebra) -> Matrix:
    """Columns span Z(A) = {z : z e_j = e_j z for all j}."""

    def build():
        d, c = a.dim, a.structure_constants
        red = RowReducer(d, a.field)
        for j in range(d):
            for k in range(d):
                red.add({i: c[i][j][k] - c[j][i][k] for i in range(d) if c[i][j][k] != c[j][i][k]})
                if red.full:
                    break
        basis, _ = red.kernel_vectors()
        return Matrix.from_columns(a.field, basis, d)

    return a.cached("center", build)


def commutator_quotient(a: Algebra) -> Quotient:
    def build():
        d = a.dim
        gens = []
        for i in range(d):
            for j in range(i + 1, d):
                v = a.commutator(a.basis_vector(i), a.basis_vector(j))
                if any(v):
                    gens.append(v)
        return Quotient(a.field, d, gens)

    return a.cached("commutator_quotient", build)


def commutator_subspace(a: Algebra) -> tuple[Matrix, Matrix]:
    """Basis of [A, A] (as columns) and the projection matrix A -> A/[A, A]."""
    q = commutator_quotient(a)
    basis = q.subspace_basis()
    return Matrix.from_columns(a.field, basis, a.dim), q.projection_matrix()


def trace_form(a: Algebra) -> Matrix:
    """Gram matrix of (x, y) -> trace(L_x L_y) on the basis."""
    d, c = a.dim, a.structure_constants
    F = a.field
    t = [sum((c[k][j][j] for j in range(d)), F.zero) for k in range(d)]
    return Matrix._raw(
        F,
        [tuple(sum((c[i][j][k] * t[k] for k in range(d) if c[i][j][k]), F.zero) for j in range(d)) for i in range(d)],
        d,
    )


def is_semisimple(a: Algebra) -> bool:
    """Decide semisimplicity through the regular trace form.

    A non-degenerate trace form proves semisimplicity in every characteristic.
    A degenerate one proves the opposite only in characteristic 0; in
    characteristic p it is inconclusive and UnsupportedCharacteristicError is
    raised instead of guessing.
    """

    def build():
        nondeg = rank(trace_form(a)) == a.dim
        if nondeg:
            return True
        if a.field.characteristic == 0:
            return False
        return None

    verdict = a.cached("semisimple", build)
    if verdict is None:
        raise UnsupportedCharacteristicError(
            f"trace form is degenerate over {a.field}; semisimplicity is undecided"
        )
    return verdict


def minimal_polynomial(a: Algebra, x: Sequence, unit: Sequence | None = None) -> list:
    """Monic minimal polynomial of ``x`` (coefficients, constant term first).

    ``unit`` lets the computation run inside a corner ``eAe`` whose identity is ``e``.
    """
    F = a.field
    one = a.unit if unit is None else tuple(unit)
    powers = [one]
    red = RowReducer(a.dim, F)
    red.add(one)
    while True:
        nxt = a.multiply(x, powers[-1])
        if not red.add(nxt):
            cols = Matrix.from_columns(F, powers, a.dim)
            c = solve(cols, nxt)
            return [-ci for ci in c] + [F.one]
        powers.append(nxt)


def polynomial_roots(field: Field, coeffs: Sequence) -> tuple[list, bool]:
    """Roots in ``field`` (with multiplicity) of a polynomial, plus whether an
    irreducible factor of degree > 1 occurred."""
    import sympy

    t = sympy.Symbol("t")
    if field.characteristic == 0:
        cs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)]
        poly = sympy.Poly(cs, t, domain="QQ")
    else:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], t, modulus=field.characteristic)
    _, factors = poly.factor_list()
    roots = []
    nonlinear = False
    for f, mult in factors:
        if f.degree() == 1:
            c1, c0 = f.all_coeffs()
            if field.characteristic == 0:
                r = sympy.Rational(-c0, c1)
                root = field(f"{r.p}/{r.q}")
            else:
                root = field(-int(c0)) / field(int(c1))
            roots.extend([root] * mult)
        elif f.degree() > 1:
            nonlinear = True
    return roots, nonlinear


def _split_idempotent(a: Algebra, e: tuple, z: tuple) -> list[tuple]:
    """Eigenprojections of the central element ``z e`` inside the corner ``eA``."""
    ze = a.multiply(z, e)
    mp = minimal_polynomial(a, ze, unit=e)
    roots, nonlinear = polynomial_roots(a.field, mp)
    if nonlinear:
        raise NotSplitError("a central element has an irreducible factor of degree > 1")
    distinct = list(dict.fromkeys(roots))
    if len(distinct) != len(roots):
        raise NotSemisimpleError("central element with repeated eigenvalue in its minimal polynomial")
    if len(distinct) == 1:
        return [e]
    out = []
    for mu in distinct:
        proj = e
        for nu in distinct:
            if nu == mu:
                continue
            factor = tuple((zi - nu * ei) / (mu - nu) for zi, ei in zip(ze, e))
            proj = a.multiply(proj, factor)
        out.append(proj)
    return out


def central_primitive_idempotents(a: Algebra, seed: int = 0) -> WedderburnData:
    """Block idempotents and block sizes ``n_i`` (block ``i`` is ``M_{n_i}(K)``).

    A seeded random central element usually separates every block at once;
    the basis of the centre is then used to refine whatever is left, so the
    procedure always terminates.  Output is sorted by ``(n_i, coordinates)``
    and therefore does not depend on ``seed``.
    """
    if not is_semisimple(a):
        raise NotSemisimpleError("algebra is not semisimple")

    def build():
        F = a.field
        Z = center_basis(a).columns()
        r = len(Z)
        rng = random.Random(seed)
        candidates = []
        for _ in range(2):
            coeffs = [F.random_element(rng, bound=5) for _ in range(r)]
            candidates.append(tuple(sum((c * zk[i] for c, zk in zip(coeffs, Z)), F.zero) for i in range(a.dim)))
        candidates.extend(Z)
        idems = [a.unit]
        for z in candidates:
            if len(idems) == r:
                break
            idems = [p for e in idems for p in _split_idempotent(a, e, z)]
        if len(idems) != r:
            raise NotSplitError("centre is not a product of copies of the ground field")
        dims = []
        for e in idems:
            block = rank(a.left_matrix(e))
            n = isqrt(block)
            if n * n != block:
                raise NotSplitError(f"block of dimension {block} is not a full matrix algebra")
            dims.append(n)
        order = sorted(range(r), key=lambda i: (dims[i], tuple(F.sort_key(x) for x in idems[i])))
        return WedderburnData(tuple(idems[i] for i in order), tuple(dims[i] for i in order))

    return a.cached("wedderburn", build)


def algebra_generators(a: Algebra) -> list[tuple]:
    """A small generating set of ``a`` as a unital algebra (deterministic)."""

    def build():
        rng = random.Random(0)
        for k in (1, 2, 3):
            for _ in range(4):
                gens = [a.random_element(rng) for _ in range(k)]
                ops = [a.left_matrix(g) for g in gens]
                if len(span_closure(a.field, a.dim, [a.unit], ops)) == a.dim:
                    return gens
        return [a.basis_vector(i) for i in range(a.dim)]

    return a.cached("generators", build)


# ---------------------------------------------------------------------------
# constructors


def matrix_algebra(n: int, field: Field = QQ) -> Algebra:
    """M_n(K) on the matrix units ``E_ab`` (index ``a*n + b``)."""
    d = n * n
    z, o = field.zero, field.one
    sc = [[[z] * d for _ in range(d)] for _ in range(d)]
    for a_, b in itertools.product(range(n), repeat=2):
        for c in range(n):
            sc[a_ * n + b][b * n + c][a_ * n + c] = o
    unit = [o if i // n == i % n else z for i in range(d)]
    return Algebra(field, sc, unit, name=f"M{n}")


def ground_algebra(field: Field = QQ) -> Algebra:
    return Algebra(field, [[[field.one]]], [field.one], name=str(field))


def product_algebra(a: Algebra, b: Algebra) -> Algebra:
    if a.field != b.field:
        from .errors import FieldMismatchError

        raise FieldMismatchError("product of algebras over different fields")
    F = a.field
    da, db = a.dim, b.dim
    d = da + db
    sc = [[[F.zero] * d for _ in range(d)] for _ in range(d)]
    for i in range(da):
        for j in range(da):
            for k in range(da):
                sc[i][j][k] = a.structure_constants[i][j][k]
    for i in range(db):
        for j in range(db):
            for k in range(db):
                sc[da + i][da + j][da + k] = b.structure_constants[i][j][k]
    name = f"{a.name}x{b.name}" if a.name and b.name else None
    return Algebra(F, sc, list(a.unit) + list(b.unit), name=name)


def power_algebra(r: int, field: Field = QQ) -> Algebra:
    """K^r with the block idempotents as basis."""
    out = ground_algebra(field)
    for _ in range(r - 1):
        out = product_algebra(out, ground_algebra(field))
    out.name = f"{field}^{r}"
    return out


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    """A (x)_K B on the basis ``e_i (x) f_j`` (index ``i*dim(B) + j``)."""
    F = a.field
    da, db = a.dim, b.dim
    d = da * db
    ca, cb = a.structure_constants, b.structure_constants
    sc = [[[F.zero] * d for _ in range(d)] for _ in range(d)]
    for i, ip in itertools.product(range(da), repeat=2):
        for k in range(da):
            x = ca[i][ip][k]
            if not x:
                continue
            for j, jp in itertools.product(range(db), repeat=2):
                for l in range(db):
                    y = cb[j][jp][l]
                    if y:
                        sc[i * db + j][ip * db + jp][k * db + l] = x * y
    unit = [ua * ub for ua in a.unit for ub in b.unit]
    name = f"{a.name}(x){b.name}" if a.name and b.name else None
    return Algebra(F, sc, unit, name=name)


def group_algebra(table: Sequence[Sequence[int]], field: Field = QQ, name: str | None = None) -> Algebra:
    """K[G] from a multiplication table ``table[g][h] = index of gh``."""
    n = len(table)
    ident = [e for e in range(n) if all(table[e][h] == h and table[h][e] == h for h in range(n))]
    if len(ident) != 1:
        raise ValueError("multiplication table has no two-sided identity")
    z, o = field.zero, field.one
    sc = [[[z] * n for _ in range(n)] for _ in range(n)]
    for g in range(n):
        for h in range(n):
            sc[g][h][table[g][h]] = o
    unit = [o if i == ident[0] else z for i in range(n)]
    return Algebra(field, sc, unit, name=name)


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(g + h) % n for h in range(n)] for g in range(n)]


def truncated_polynomial_algebra(n: int, field: Field = QQ) -> Algebra:
    """K[x]/(x^n) on the basis 1, x, ..., x^{n-1}."""
    z, o = field.zero, field.one
    sc = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i + j < n:
                sc[i][j][i + j] = o
    return Algebra(field, sc, [o] + [z] * (n - 1), name=f"K[x]/x^{n}")


def opposite(a: Algebra) -> Algebra:
    op = a._cache.get("opposite")
    if op is None:
        d, c = a.dim, a.structure_constants
        sc = [[c[j][i] for j in range(d)] for i in range(d)]
        op = Algebra(a.field, sc, a.unit, name=f"{a.name}^op" if a.name else None)
        a._cache["opposite"] = op
        op._cache["opposite"] = a
    return op


def change_basis(a: Algebra, g: Matrix) -> Algebra:
    """Same algebra written in the basis whose ``i``-th element is column ``i`` of ``g``."""
    if g.shape != (a.dim, a.dim):
        raise DimensionError(f"basis change must be {a.dim}x{a.dim}")
    try:
        ginv = inverse(g)
    except SingularMatrixError:
        raise SingularMatrixError("basis change matrix is singular") from None
    cols = g.columns()
    sc = [[ginv.apply(a.multiply(cols[i], cols[j])) for j in range(a.dim)] for i in range(a.dim)]
    return Algebra(a.field, sc, ginv.apply(a.unit), name=a.name)
