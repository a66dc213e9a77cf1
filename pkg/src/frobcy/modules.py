"""Modules, bimodules, Hom spaces, duals and tensor products over an algebra.

Conventions:

* A left module over ``A`` is a list of action matrices, one per basis
  element of ``A``, acting on column vectors.
* A right module over ``A`` is a left module over ``opposite(A)``; the
  right action of ``a`` on ``m`` is ``rho(a) m``.  There is no other
  encoding of right actions anywhere in the package.
* Maps are matrices on column vectors, so ``g o f`` is ``g @ f``.
* Elements of ``X (x)_K Y`` are flattened with ``x_p (x) y_q`` at index
  ``p * dim(Y) + q``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    Algebra,
    algebra_generators,
    central_primitive_idempotents,
    change_basis,
    opposite,
    polynomial_roots,
)
from .errors import (
    AlgebraMismatchError,
    DimensionError,
    NotProjectiveError,
    NotSplitError,
    SingularPsiError,
)
from .linalg import (
    Field,
    Matrix,
    CoordinateSystem,
    Quotient,
    RowReducer,
    block_diagonal,
    inverse,
    is_invertible,
    rank,
    solve,
    solve_many,
    span_closure,
)


class LeftModule:
    def __init__(self, algebra: Algebra, actions: Sequence[Matrix], dim: int | None = None, name: str | None = None):
        F = algebra.field
        if len(actions) != algebra.dim:
            raise DimensionError(f"need {algebra.dim} action matrices, got {len(actions)}")
        if dim is None:
            if not actions:
                raise DimensionError("module dimension required")
            dim = actions[0].nrows
        acts = []
        for m in actions:
            if not isinstance(m, Matrix):
                m = Matrix(F, m, dim)
            if m.shape != (dim, dim):
                raise DimensionError(f"action matrix has shape {m.shape}, expected {(dim, dim)}")
            acts.append(m)
        self.algebra = algebra
        self.field = F
        self.dim = dim
        self.actions = tuple(acts)
        self.name = name
        self._cache: dict = {}
        self._hash = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, LeftModule):
            return NotImplemented
        return self.algebra == other.algebra and self.dim == other.dim and self.actions == other.actions

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, self.dim, self.actions))
        return self._hash

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LeftModule{label} dim={self.dim} over {self.algebra!r}>"

    def cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def act(self, x: Sequence) -> Matrix:
        F, m = self.field, self.dim
        acc = [[F.zero] * m for _ in range(m)]
        for xi, rho in zip(x, self.actions):
            if xi:
                for r, row in enumerate(rho.rows):
                    ar = acc[r]
                    for s, v in enumerate(row):
                        if v:
                            ar[s] += xi * v
        return Matrix._raw(F, [tuple(r) for r in acc], m)

    @property
    def generator_actions(self) -> list[Matrix]:
        return self.cached("gen_actions", lambda: [self.act(g) for g in algebra_generators(self.algebra)])

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def submodule(self, vectors: Sequence[Sequence]) -> list[tuple]:
        """Basis of the submodule generated by ``vectors``."""
        return span_closure(self.field, self.dim, vectors, self.generator_actions)


def right_module(algebra: Algebra, actions: Sequence[Matrix], dim: int | None = None, name: str | None = None) -> LeftModule:
    """Right ``algebra``-module with ``m.e_i = actions[i] m`` (a left module over the opposite)."""
    return LeftModule(opposite(algebra), actions, dim, name)


def validate_module(m: LeftModule) -> list[dict]:
    """Failed axioms of a left module; empty iff ``m`` is a module."""
    a = m.algebra
    c = a.structure_constants
    out = []
    for i, j in itertools.product(range(a.dim), repeat=2):
        if m.actions[i] @ m.actions[j] != m.act(c[i][j]):
            out.append({"kind": "multiplicativity", "pair": [i, j]})
    if m.act(a.unit) != m.identity():
        out.append({"kind": "unit"})
    return out


class Bimodule:
    """A (B, A)-bimodule: ``left`` is a left B-module, ``right`` a right A-module, same space."""

    def __init__(self, left: LeftModule, right: LeftModule, name: str | None = None):
        if left.dim != right.dim:
            raise DimensionError("left and right structures live on spaces of different dimension")
        if left.field != right.field:
            from .errors import FieldMismatchError

            raise FieldMismatchError("bimodule sides over different fields")
        self.left = left
        self.right = right
        self.dim = left.dim
        self.field = left.field
        self.name = name

    @property
    def left_algebra(self) -> Algebra:
        return self.left.algebra

    @property
    def right_algebra(self) -> Algebra:
        return opposite(self.right.algebra)

    def __eq__(self, other):
        if not isinstance(other, Bimodule):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"<Bimodule dim={self.dim}>"


def validate_bimodule(m: Bimodule) -> list[dict]:
    out = [dict(r, side="left") for r in validate_module(m.left)]
    out += [dict(r, side="right") for r in validate_module(m.right)]
    for i, L in enumerate(m.left.actions):
        for j, R in enumerate(m.right.actions):
            if L @ R != R @ L:
                out.append({"kind": "commutation", "pair": [i, j]})
    return out


def regular_module(a: Algebra) -> LeftModule:
    return a.cached("regular_module", lambda: LeftModule(a, a.left_regular, a.dim, name="A"))


def right_regular_module(a: Algebra) -> LeftModule:
    """``A`` as a right module over itself."""
    return a.cached("right_regular_module", lambda: LeftModule(opposite(a), a.right_regular, a.dim, name="A_A"))


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(regular_module(a), right_regular_module(a), name="A")


def zero_module(a: Algebra) -> LeftModule:
    z = Matrix._raw(a.field, [], 0)
    return LeftModule(a, [z] * a.dim, 0)


def free_module(a: Algebra, k: int) -> LeftModule:
    if k == 0:
        return zero_module(a)
    return direct_sum_modules([regular_module(a)] * k).module


def transport_module(m: LeftModule, g: Matrix, algebra: Algebra | None = None) -> LeftModule:
    """``m`` viewed over ``change_basis(m.algebra, g)``: the new ``e'_i`` acts as ``sum_j g[j][i] rho(e_j)``."""
    b = algebra if algebra is not None else change_basis(m.algebra, g)
    return LeftModule(b, [m.act(col) for col in g.columns()], m.dim, m.name)


def conjugate_module(m: LeftModule, h: Matrix) -> LeftModule:
    """The same module in the basis given by the columns of ``h`` (actions ``h^-1 rho h``)."""
    hinv = inverse(h)
    return LeftModule(m.algebra, [hinv @ r @ h for r in m.actions], m.dim, m.name)


def random_endomorphism(m: LeftModule, rng: random.Random, bound: int = 3) -> Matrix:
    H = hom_basis(m, m)
    return H.element([m.field.random_element(rng, bound) for _ in range(H.dim)])


# ---------------------------------------------------------------------------
# direct sums


@dataclass(frozen=True)
class DirectSum:
    module: LeftModule
    inclusions: tuple[Matrix, ...]
    projections: tuple[Matrix, ...]


def direct_sum_modules(modules: Sequence[LeftModule]) -> DirectSum:
    """Memoised on the first summand, so repeated sums share their cached data."""
    if not modules:
        raise DimensionError("direct sum of no modules")
    return modules[0].cached(("direct_sum", tuple(modules[1:])), lambda: _direct_sum(modules))


def _direct_sum(modules: Sequence[LeftModule]) -> DirectSum:
    a = modules[0].algebra
    if any(m.algebra != a for m in modules):
        raise AlgebraMismatchError("direct sum of modules over different algebras")
    F = a.field
    total = sum(m.dim for m in modules)
    actions = [block_diagonal(F, [m.actions[i] for m in modules]) if total else Matrix._raw(F, [], 0) for i in range(a.dim)]
    inc, proj = [], []
    offset = 0
    for m in modules:
        cols = []
        for k in range(m.dim):
            col = [F.zero] * total
            col[offset + k] = F.one
            cols.append(col)
        i = Matrix.from_columns(F, cols, total) if m.dim else Matrix._raw(F, [()] * total, 0)
        inc.append(i)
        proj.append(i.T if m.dim else Matrix._raw(F, [], total))
        offset += m.dim
    return DirectSum(LeftModule(a, actions, total), tuple(inc), tuple(proj))


def direct_sum_maps(maps: Sequence[Matrix]) -> Matrix:
    F = maps[0].field
    rows = []
    ncols = sum(m.ncols for m in maps)
    offset = 0
    for m in maps:
        for r in m.rows:
            rows.append((F.zero,) * offset + r + (F.zero,) * (ncols - offset - m.ncols))
        offset += m.ncols
    return Matrix._raw(F, rows, ncols)


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """``Hom_A(source, target)``.

    A homomorphism is determined by the images ``w_i`` of a generating set
    ``g_1..g_k`` of the source.  Spinning the generators gives a basis
    ``b_t = word_t(g_{i_t})`` of the source with ``f(b_t) = word_t(w_{i_t})``;
    requiring ``f(s b_t) = s f(b_t)`` for the algebra generators ``s`` leaves
    a linear system in ``k * dim(target)`` unknowns.  The kernel basis has an
    identity block on the free unknowns, so the coordinates of a map are the
    entries of ``(f g_1, ..., f g_k)`` at those positions.
    """

    def __init__(self, source: LeftModule, target: LeftModule):
        if source.algebra != target.algebra:
            raise AlgebraMismatchError("Hom between modules over different algebras")
        self.source = source
        self.target = target
        F = source.field
        self.field = F
        m, n = source.dim, target.dim
        gens = source.cached("module_generators", lambda: module_generators(source))
        self.generators = gens
        k = len(gens)
        SA, TA = source.generator_actions, target.generator_actions
        # spin: basis vectors b_t with (generator index, matrix of word_t on the target)
        red = RowReducer(m, F)
        spun: list[tuple[tuple, int, Matrix]] = []
        children: set[tuple[int, int]] = set()  # (t, s) with s.b_t itself a spun vector
        for i, g in enumerate(gens):
            if not red.add(g):
                continue
            queue = [len(spun)]
            spun.append((g, i, target.identity()))
            while queue:
                t = queue.pop()
                v, gi, P = spun[t]
                for s, (S, T) in enumerate(zip(SA, TA)):
                    w = S.apply(v)
                    if red.add(w):
                        children.add((t, s))
                        queue.append(len(spun))
                        spun.append((w, gi, T @ P))
        self._spun = spun
        nvar = k * n
        eqs = RowReducer(nvar, F)
        if m and n:
            coords = CoordinateSystem(Matrix.from_columns(F, [b for b, _, _ in spun], m))
            self._coords = coords
            for t, (b, gi, P) in enumerate(spun):
                for s, (S, T) in enumerate(zip(SA, TA)):
                    if (t, s) in children:
                        continue  # the equation holds by construction
                    c = coords(S.apply(b), check=False)
                    lhs = T @ P
                    for r in range(n):
                        eq: dict = {}
                        for col, x in enumerate(lhs.row(r)):
                            if x:
                                eq[gi * n + col] = x
                        for u, cu in enumerate(c):
                            if cu:
                                _, gu, Pu = spun[u]
                                for col, x in enumerate(Pu.row(r)):
                                    if x:
                                        key = gu * n + col
                                        nv = eq.get(key, 0) - cu * x
                                        if nv:
                                            eq[key] = nv
                                        else:
                                            eq.pop(key, None)
                        if eq:
                            eqs.add(eq)
                    if eqs.full:
                        break
        vecs, free = eqs.kernel_vectors()
        self.free = free
        self.basis = [self._from_images(v) for v in vecs] if m else []

    def _from_images(self, w: Sequence) -> Matrix:
        F = self.field
        m, n = self.source.dim, self.target.dim
        cols = [P.apply(tuple(w[gi * n:(gi + 1) * n])) for _, gi, P in self._spun]
        if not cols:
            return Matrix._raw(F, [()] * n, 0) if n else Matrix._raw(F, [], m)
        img = Matrix.from_columns(F, cols, n)
        return img @ self._coords.inverse_matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: Matrix) -> bool:
        if f.shape != (self.target.dim, self.source.dim):
            return False
        return all(RT @ f == f @ RS for RS, RT in zip(self.source.generator_actions, self.target.generator_actions))

    def coordinates_from_images(self, images: Sequence[Sequence]) -> tuple:
        """Coordinates of the map sending generator ``g_i`` to ``images[i]``."""
        w = [x for im in images for x in im]
        return tuple(w[c] for c in self.free)

    def coordinates(self, f: Matrix, check: bool = True) -> tuple:
        if check and not self.contains(f):
            raise ValueError("matrix is not a module homomorphism")
        return self.coordinates_from_images([f.apply(g) for g in self.generators])

    def element(self, coords: Sequence) -> Matrix:
        F = self.field
        n, m = self.target.dim, self.source.dim
        acc = Matrix.zeros(F, n, m)
        for c, B in zip(coords, self.basis):
            if c:
                acc = acc + B.scale(c)
        return acc


def hom_basis(source: LeftModule, target: LeftModule) -> HomSpace:
    return source.cached(("hom", target), lambda: HomSpace(source, target))


def is_module_map(f: Matrix, source: LeftModule, target: LeftModule) -> bool:
    return hom_basis(source, target).contains(f)


# ---------------------------------------------------------------------------
# duals


@dataclass(frozen=True, eq=False)
class DualModule:
    """``M* = Hom_A(M, A)`` as a right A-module, ``(f.a)(m) = f(m) a``.

    ``functionals[j]`` is a ``dim A x dim M`` matrix; ``module`` is the right
    module (left over the opposite) in the basis ``functionals``.
    """

    source: LeftModule
    functionals: tuple[Matrix, ...]
    hom: HomSpace
    module: LeftModule
    _values: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.functionals)

    def coordinates(self, f: Matrix) -> tuple:
        return self.hom.coordinates(f)

    def evaluate(self, coords: Sequence, v: Sequence) -> tuple:
        """``(sum_j coords[j] f_j)(v)``; the values ``f_j(v)`` are cached per ``v``."""
        key = tuple(v)
        vals = self._values.get(key)
        if vals is None:
            vals = self._values[key] = [f.apply(key) for f in self.functionals]
        F = self.source.field
        out = [F.zero] * self.source.algebra.dim
        for c, fv in zip(coords, vals):
            if c:
                for t, x in enumerate(fv):
                    if x:
                        out[t] += c * x
        return tuple(out)


def dual_module(m: LeftModule) -> DualModule:
    def build():
        a = m.algebra
        H = hom_basis(m, regular_module(a))
        R = a.right_regular
        d = a.dim
        # coordinate (j, r) of R_i o f is row r of R_i applied to f(g_j)
        slots = [divmod(c, d) for c in H.free]
        images = [[f.apply(g) for g in H.generators] for f in H.basis]
        actions = []
        for i in range(d):
            rows = R[i].rows
            cols = [tuple(sum((x * y for x, y in zip(rows[r], fg[j]) if y), a.field.zero) for j, r in slots) for fg in images]
            actions.append(Matrix.from_columns(a.field, cols, H.dim) if H.dim else Matrix._raw(a.field, [], 0))
        return DualModule(m, tuple(H.basis), H, LeftModule(opposite(a), actions, H.dim))

    return m.cached("dual", build)


# ---------------------------------------------------------------------------
# tensor products


class TensorSpace:
    """``X (x)_A Y`` for a right module ``X`` and a left module ``Y``.

    With generators ``g_1..g_k`` of ``X`` there is a surjection
    ``A^k -> X`` with kernel ``K``, and ``X (x)_A Y = Y^k / K Y``.  The
    quotient gets coordinates on the non-pivot positions of the reduced
    relations; basis vector ``(i, q)`` is the class of ``g_i (x) y_q``.
    """

    def __init__(self, x: LeftModule, y: LeftModule):
        a = y.algebra
        if x.algebra != opposite(a):
            raise AlgebraMismatchError("left factor is not a right module over the algebra of the right factor")
        self.x, self.y = x, y
        self.field = F = a.field
        d, nx, ny = a.dim, x.dim, y.dim
        gens = x.cached("module_generators", lambda: module_generators(x))
        self.generators = gens
        k = len(gens)
        # phi: A^k -> X, column (i, t) = g_i . e_t
        phi_cols = [x.actions[t].apply(g) for g in gens for t in range(d)]
        if nx:
            phi = Matrix.from_columns(F, phi_cols, nx) if phi_cols else Matrix._raw(F, [()] * nx, 0)
            # a_{p, i}: preimage of the p-th basis vector
            units = [tuple(F.one if r == p else F.zero for r in range(nx)) for p in range(nx)]
            self._sections = [[tuple(sol[i * d:(i + 1) * d]) for i in range(k)] for sol in solve_many(phi, units)]
            kernel = phi.reducer().kernel_vectors()[0]
        else:
            self._sections = []
            kernel = [tuple(F.one if r == c else F.zero for r in range(k * d)) for c in range(k * d)]
        rels = []
        for kappa in kernel:
            acts = [y.act(kappa[i * d:(i + 1) * d]) for i in range(k)]
            for q in range(ny):
                rels.append({i * ny + r: v for i in range(k) for r, v in enumerate(acts[i].column(q)) if v})
        self.quotient = Quotient(F, k * ny, rels)
        self.free = self.quotient.free

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def _lift_pure(self, xv: Sequence, yv: Sequence) -> dict:
        """``x (x) y`` as an element of ``Y^k`` (sparse)."""
        y, d = self.y, self.y.algebra.dim
        F = self.field
        out: dict = {}
        ny = y.dim
        for i in range(len(self.generators)):
            ai = [F.zero] * d
            for p, c in enumerate(xv):
                if c:
                    for t, v in enumerate(self._sections[p][i]):
                        if v:
                            ai[t] += c * v
            img = y.act(ai).apply(yv)
            for r, v in enumerate(img):
                if v:
                    out[i * ny + r] = v
        return out

    def pure(self, xv: Sequence, yv: Sequence) -> tuple:
        """Coordinates of the class of ``x (x) y``."""
        return self.quotient.project(self._lift_pure(xv, yv))

    def project(self, vec: Sequence) -> tuple:
        """Coordinates of an element of ``X (x)_K Y`` (index ``p * dim(Y) + q``)."""
        F, nx, ny = self.field, self.x.dim, self.y.dim
        acc: dict = {}
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for idx, c in items:
            if not c:
                continue
            p, q = divmod(idx, ny)
            xv = tuple(F.one if r == p else F.zero for r in range(nx))
            yv = tuple(c if r == q else F.zero for r in range(ny))
            for key, v in self._lift_pure(xv, yv).items():
                acc[key] = acc.get(key, 0) + v
        return self.quotient.project({key: v for key, v in acc.items() if v})

    def representative(self, k: int) -> tuple[tuple, tuple]:
        """A pure tensor ``(x, y)`` whose class is basis vector ``k``."""
        i, q = divmod(self.free[k], self.y.dim)
        F = self.field
        return self.generators[i], tuple(F.one if r == q else F.zero for r in range(self.y.dim))

    def representative_vector(self, k: int) -> tuple:
        """Basis vector ``k`` lifted to ``X (x)_K Y``."""
        xv, yv = self.representative(k)
        return tuple(a * b for a in xv for b in yv)

    @property
    def pi(self) -> Matrix:
        nx, ny, F = self.x.dim, self.y.dim, self.field
        cols = [self.project({p * ny + q: F.one}) for p in range(nx) for q in range(ny)]
        if not cols or not self.dim:
            return Matrix._raw(F, [()] * self.dim, nx * ny) if self.dim else Matrix._raw(F, [], nx * ny)
        return Matrix.from_columns(F, cols, self.dim)

    @property
    def iota(self) -> Matrix:
        F = self.field
        n = self.x.dim * self.y.dim
        if not self.dim:
            return Matrix._raw(F, [()] * n, 0) if n else Matrix._raw(F, [], 0)
        return Matrix.from_columns(F, [self.representative_vector(k) for k in range(self.dim)], n)

    def balanced_relations(self) -> list[tuple]:
        """Spanning set of ``{x.a (x) y - x (x) a.y}`` inside ``X (x)_K Y``."""
        x, y = self.x, self.y
        nx, ny = x.dim, y.dim
        out = []
        for s in algebra_generators(y.algebra):
            RX, RY = x.act(s), y.act(s)
            for p in range(nx):
                for q in range(ny):
                    v = [self.field.zero] * (nx * ny)
                    for r in range(nx):
                        v[r * ny + q] += RX[r, p]
                    for r in range(ny):
                        v[p * ny + r] -= RY[r, q]
                    out.append(tuple(v))
        return out


def tensor_over_A(x: LeftModule, y: LeftModule) -> TensorSpace:
    return x.cached(("tensor", y), lambda: TensorSpace(x, y))


def induced_map(t1: TensorSpace, t2: TensorSpace, f: Matrix, g: Matrix) -> Matrix:
    """Matrix of ``f (x) g : t1 -> t2`` (f right-linear, g left-linear)."""
    F = t1.field
    cols = []
    for k in range(t1.dim):
        xv, yv = t1.representative(k)
        cols.append(t2.pure(f.apply(xv), g.apply(yv)))
    if t2.dim == 0:
        return Matrix._raw(F, [], t1.dim)
    if t1.dim == 0:
        return Matrix._raw(F, [()] * t2.dim, 0)
    return Matrix.from_columns(F, cols, t2.dim)


def tensor_bimodules(x: Bimodule, y: Bimodule) -> tuple[TensorSpace, Bimodule]:
    """``X (x)_A Y`` with its (left of X, right of Y) bimodule structure."""
    t = tensor_over_A(x.right, y.left)
    idx, idy = x.left.identity(), y.left.identity()
    left = [induced_map(t, t, L, idy) for L in x.left.actions]
    right = [induced_map(t, t, idx, R) for R in y.right.actions]
    return t, Bimodule(LeftModule(x.left_algebra, left, t.dim), LeftModule(y.right.algebra, right, t.dim))


def tensor_left_module(x: Bimodule, y: LeftModule) -> tuple[TensorSpace, LeftModule]:
    """``X (x)_A Y`` as a left module over the left algebra of ``X``."""
    t = tensor_over_A(x.right, y)
    idy = y.identity()
    return t, LeftModule(x.left_algebra, [induced_map(t, t, L, idy) for L in x.left.actions], t.dim)


# ---------------------------------------------------------------------------
# evaluation and Psi


def dual_element(m: LeftModule, coords: Sequence) -> Matrix:
    """The functional ``sum_j coords[j] f_j`` of ``M*`` as a ``dim A x dim M`` matrix."""
    D = dual_module(m)
    F = m.field
    acc = Matrix.zeros(F, m.algebra.dim, m.dim)
    for c, f in zip(coords, D.functionals):
        if c:
            acc = acc + f.scale(c)
    return acc


def ev_representatives(m: LeftModule) -> Matrix:
    """``f_j (x) m_q -> f_j(m_q)`` on ``M* (x)_K M`` (a ``dim A x dim M* dim M`` matrix)."""
    D = dual_module(m)
    F, d = m.field, m.algebra.dim
    cols = [f.column(q) for f in D.functionals for q in range(m.dim)]
    if not cols:
        return Matrix._raw(F, [()] * d, 0)
    return Matrix.from_columns(F, cols, d)


def ev_map(m: LeftModule, check: bool = True) -> Matrix:
    """Evaluation ``M* (x)_A M -> A/[A,A]`` in commutator-quotient coordinates.

    Evaluation is only balanced modulo commutators; with ``check`` every
    balancing relation is verified to land in ``[A,A]``.
    """
    from .algebra import commutator_quotient

    a = m.algebra
    D = dual_module(m)
    t = tensor_over_A(D.module, m)
    E = ev_representatives(m)
    Q = commutator_quotient(a)
    if check:
        for rel in t.balanced_relations():
            if not Q.in_subspace(E.apply(rel)):
                raise ArithmeticError("evaluation is not balanced modulo commutators")
    cols = [Q.project(E.apply(t.representative_vector(k))) for k in range(t.dim)]
    if not cols:
        return Matrix._raw(a.field, [()] * Q.dim, 0) if Q.dim else Matrix._raw(a.field, [], 0)
    if Q.dim == 0:
        return Matrix._raw(a.field, [], len(cols))
    return Matrix.from_columns(a.field, cols, Q.dim)


def psi_map(p: LeftModule, m: LeftModule) -> Matrix:
    """``Psi: P* (x)_A M -> Hom_A(P, M)``, ``f (x) x -> (y -> f(y).x)``, in the
    tensor basis and the Hom basis."""

    def build():
        if p.algebra != m.algebra:
            raise AlgebraMismatchError("Psi between modules over different algebras")
        D = dual_module(p)
        t = tensor_over_A(D.module, m)
        H = hom_basis(p, m)
        F = p.field
        cols = []
        for k in range(t.dim):
            fv, xv = t.representative(k)
            cols.append(H.coordinates_from_images([m.act(D.evaluate(fv, g)).apply(xv) for g in H.generators]))
        if not cols:
            return Matrix._raw(F, [()] * H.dim, 0) if H.dim else Matrix._raw(F, [], 0)
        if H.dim == 0:
            return Matrix._raw(F, [], len(cols))
        return Matrix.from_columns(F, cols, H.dim)

    return p.cached(("psi", m), build)


def psi_inverse(p: LeftModule, m: LeftModule) -> Matrix:
    def build():
        P = psi_map(p, m)
        if P.nrows != P.ncols or not is_invertible(P):
            raise SingularPsiError(
                f"Psi has shape {P.shape} and rank {rank(P)}; the module is not projective"
            )
        return inverse(P)

    return p.cached(("psi_inv", m), build)


# ---------------------------------------------------------------------------
# dual bases


@dataclass(frozen=True)
class DualBasis:
    """Pairs ``(f_i, p_i)`` with ``x = sum_i f_i(x).p_i``."""

    functionals: tuple[Matrix, ...]
    elements: tuple[tuple, ...]

    def reconstruct(self, module: LeftModule, x: Sequence) -> tuple:
        F = module.field
        out = [F.zero] * module.dim
        for f, p in zip(self.functionals, self.elements):
            v = module.act(f.apply(x)).apply(p)
            out = [a + b for a, b in zip(out, v)]
        return tuple(out)

    def check(self, module: LeftModule) -> bool:
        I = module.identity()
        return all(self.reconstruct(module, I.column(k)) == I.column(k) for k in range(module.dim))


def module_generators(m: LeftModule, seed: int = 0) -> list[tuple]:
    """A generating set of ``m`` picked greedily from seeded random vectors."""
    rng = random.Random(seed)
    F = m.field
    gens: list[tuple] = []
    span = RowReducer(m.dim, F)
    candidates = itertools.chain(
        (tuple(F.random_element(rng) for _ in range(m.dim)) for _ in range(2 * m.dim + 4)),
        (tuple(F.one if i == k else F.zero for i in range(m.dim)) for k in range(m.dim)),
    )
    for v in candidates:
        if span.full:
            break
        if span.contains(v):
            continue
        gens.append(v)
        span = RowReducer(m.dim, F).extend(m.submodule(gens))
    return gens


def dual_basis(p: LeftModule, seed: int = 0) -> DualBasis:
    """A dual basis found by splitting the surjection ``A^k -> P``.

    ``p_1..p_k`` generate ``P``.  An A-linear section is a k-tuple of maps
    ``s_i in Hom_A(P, A)`` with ``sum_i s_i(x).p_i = x``; that is a linear
    system in the coordinates of the ``s_i``.  No solution means ``P`` is
    not projective.
    """
    F = p.field
    a = p.algebra
    if p.dim == 0:
        return DualBasis((), ())
    gens = module_generators(p, seed)
    H = hom_basis(p, regular_module(a))
    m = p.dim
    # G[i, l] = matrix of x -> F_l(x).p_i
    unknowns = []
    for pi in gens:
        acted = [p.actions[t].apply(pi) for t in range(a.dim)]
        for Fl in H.basis:
            G = [[F.zero] * m for _ in range(m)]
            for b in range(m):
                for t in range(a.dim):
                    c = Fl[t, b]
                    if c:
                        for r, v in enumerate(acted[t]):
                            if v:
                                G[r][b] += c * v
            unknowns.append(tuple(x for row in G for x in row))
    if not unknowns:
        raise NotProjectiveError("module has no maps to the algebra")
    system = Matrix.from_columns(F, unknowns, m * m)
    sol = solve(system, p.identity().vec())
    if sol is None:
        raise NotProjectiveError("the surjection from a free module does not split")
    k = H.dim
    functionals = tuple(H.element(sol[i * k:(i + 1) * k]) for i in range(len(gens)))
    return DualBasis(functionals, tuple(gens))


def dual_basis_from_psi(p: LeftModule) -> DualBasis:
    """The dual basis read off from ``Psi^{-1}(id_P)``."""
    D = dual_module(p)
    t = tensor_over_A(D.module, p)
    H = hom_basis(p, p)
    coords = psi_inverse(p, p).apply(H.coordinates(p.identity()))
    fs, ps = [], []
    for k, c in enumerate(coords):
        if c:
            fv, xv = t.representative(k)
            fs.append(dual_element(p, fv).scale(c))
            ps.append(xv)
    return DualBasis(tuple(fs), tuple(ps))


# ---------------------------------------------------------------------------
# simple modules and decomposition


def _matrix_minimal_polynomial(F: Field, m: Matrix) -> list:
    n = m.nrows
    I = Matrix.identity(F, n)
    powers = [I]
    red = RowReducer(n * n, F)
    red.add(I.vec())
    while True:
        nxt = m @ powers[-1]
        if not red.add(nxt.vec()):
            sys = Matrix.from_columns(F, [P.vec() for P in powers], n * n)
            c = solve(sys, nxt.vec())
            return [-x for x in c] + [F.one]
        powers.append(nxt)


def _restrict_module(w: LeftModule, basis: Sequence[Sequence]) -> LeftModule:
    from .linalg import restrict_many

    return LeftModule(w.algebra, restrict_many(w.field, basis, w.actions, w.generator_actions), len(basis))


def _candidate_elements(a: Algebra, e: tuple, rng: random.Random):
    d = a.dim
    basis = [a.basis_vector(i) for i in range(d)]
    yield from basis
    for i, j in itertools.combinations(range(d), 2):
        yield a.add(basis[i], basis[j])
        yield tuple(x - y for x, y in zip(basis[i], basis[j]))
    for i, j in itertools.product(range(d), repeat=2):
        yield a.multiply(basis[i], basis[j])
    while True:
        yield a.multiply(a.random_element(rng, bound=2), e)


def _find_simple(a: Algebra, w: LeftModule, n: int, e: tuple, seed: int, budget: int) -> LeftModule:
    """Shrink the block module ``w`` (a direct sum of copies of one simple of
    dimension ``n``) to a single simple summand."""
    F = a.field
    rng = random.Random(seed)
    cands = _candidate_elements(a, e, rng)
    for _ in range(budget):
        if w.dim == n:
            return w
        y = next(cands)
        Y = w.act(y)
        roots, _ = polynomial_roots(F, _matrix_minimal_polynomial(F, Y))
        best = None
        for mu in dict.fromkeys(roots):
            K = Y - Matrix.identity(F, w.dim).scale(mu)
            vecs, _ = K.reducer().kernel_vectors()
            for v in vecs:
                sub = w.submodule([v])
                if len(sub) < w.dim and (best is None or len(sub) < len(best)):
                    best = sub
        if best is not None:
            w = _restrict_module(w, best)
    if w.dim == n:
        return w
    raise NotSplitError(f"could not split a block of size {n} over {F}")


def simple_modules(a: Algebra, seed: int = 0) -> list[LeftModule]:
    """One simple module per block, in block order; ``dim V_i = n_i``.

    Each block ``A e_i`` is a sum of ``n_i`` copies of its simple module.
    Eigenvectors (for rational eigenvalues) of the action of sample elements
    generate proper submodules, which are cut down until dimension ``n_i``.
    """

    def build():
        wd = central_primitive_idempotents(a)
        reg = regular_module(a)
        out = []
        for i, (e, n) in enumerate(zip(wd.idempotents, wd.block_dims)):
            block = reg.submodule([e])
            w = _restrict_module(reg, block)
            v = _find_simple(a, w, n, e, seed + i, budget=400 + 50 * n * n)
            if hom_basis(v, v).dim != 1:
                raise NotSplitError("endomorphism ring of a simple module is larger than the field")
            v.name = f"V{i}"
            out.append(v)
        return out

    return a.cached(("simples", seed), build)


def multiplicities(m: LeftModule, simples: Sequence[LeftModule] | None = None) -> tuple[int, ...]:
    simples = simples if simples is not None else simple_modules(m.algebra)
    return tuple(hom_basis(v, m).dim for v in simples)


@dataclass(frozen=True)
class Decomposition:
    multiplicities: tuple[int, ...]
    isomorphism: Matrix  # columns: the images of the simple summands, block by block
    simples: tuple[LeftModule, ...]


def decompose(m: LeftModule, simples: Sequence[LeftModule] | None = None) -> Decomposition:
    """An explicit isomorphism ``(+)_i V_i^{m_i} -> M`` (verified)."""
    simples = tuple(simples if simples is not None else simple_modules(m.algebra))
    F = m.field
    cols = []
    mults = []
    for v in simples:
        H = hom_basis(v, m)
        mults.append(H.dim)
        for h in H.basis:
            cols.extend(h.columns())
    if len(cols) != m.dim:
        raise NotSplitError("multiplicities do not account for the module dimension")
    iso = Matrix.from_columns(F, cols, m.dim) if cols else Matrix._raw(F, [], 0)
    if m.dim and not is_invertible(iso):
        raise ArithmeticError("summand images are not independent")
    summands = [v for v, k in zip(simples, mults) for _ in range(k)]
    if summands:
        src = direct_sum_modules(summands).module
        if not is_module_map(iso, src, m):
            raise ArithmeticError("decomposition map is not a module map")
    return Decomposition(tuple(mults), iso, simples)


def random_semisimple_module(a: Algebra, rng: random.Random, max_dim: int = 8, simples: Sequence[LeftModule] | None = None) -> LeftModule:
    """A random nonzero direct sum of simples (total dimension at most ``max_dim``)
    written in a random basis."""
    from .linalg import random_invertible

    simples = list(simples if simples is not None else simple_modules(a))
    fitting = [v for v in simples if v.dim <= max_dim]
    if not fitting:
        raise DimensionError(f"no simple module fits in dimension {max_dim}")
    parts = [rng.choice(fitting)]
    while True:
        room = [v for v in fitting if v.dim + sum(p.dim for p in parts) <= max_dim]
        if not room or rng.random() < 0.35:
            break
        parts.append(rng.choice(room))
    rng.shuffle(parts)
    m = direct_sum_modules(parts).module
    h = random_invertible(m.dim, rng.randrange(2**31), m.field)
    return conjugate_module(m, h)
