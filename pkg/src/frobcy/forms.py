"""Frobenius forms: linear functionals whose pairing (a, b) -> lambda(ab) is non-degenerate."""

from __future__ import annotations

from typing import Sequence

from .algebra import Algebra, WedderburnData, central_primitive_idempotents
from .errors import DimensionError, FormError
from .linalg import Matrix, rank


class FrobeniusForm:
    """A functional on ``algebra`` stored by its values on the basis.

    Nothing about the functional is assumed: use :func:`is_frobenius` and
    :func:`is_symmetric` to check it.
    """

    def __init__(self, algebra: Algebra, values: Sequence, name: str | None = None):
        if len(values) != algebra.dim:
            raise DimensionError(f"form needs {algebra.dim} values, got {len(values)}")
        self.algebra = algebra
        self.values = tuple(algebra.field(v) for v in values)
        self.name = name

    def __call__(self, x: Sequence):
        F = self.algebra.field
        return sum((l * xi for l, xi in zip(self.values, x) if xi), F.zero)

    def __eq__(self, other):
        if not isinstance(other, FrobeniusForm):
            return NotImplemented
        return self.algebra == other.algebra and self.values == other.values

    def __hash__(self):
        return hash((self.algebra, self.values))

    def __repr__(self):
        return f"FrobeniusForm({[str(v) for v in self.values]})"

    def scaled(self, c) -> FrobeniusForm:
        c = self.algebra.field(c)
        return FrobeniusForm(self.algebra, [c * v for v in self.values])

    def transport(self, g: Matrix) -> FrobeniusForm:
        """The same functional on ``change_basis(algebra, g)``."""
        from .algebra import change_basis

        return FrobeniusForm(change_basis(self.algebra, g), g.T.apply(self.values))


def pairing_gram(form: FrobeniusForm) -> Matrix:
    a = form.algebra
    d, c = a.dim, a.structure_constants
    return Matrix._raw(a.field, [tuple(form(c[i][j]) for j in range(d)) for i in range(d)], d)


def is_frobenius(form: FrobeniusForm) -> bool:
    return rank(pairing_gram(form)) == form.algebra.dim


def symmetry_witness(form: FrobeniusForm) -> tuple[int, int] | None:
    """A basis pair ``(i, j)`` with lambda(e_i e_j) != lambda(e_j e_i), or None."""
    G = pairing_gram(form)
    for i in range(G.nrows):
        for j in range(i + 1, G.ncols):
            if G[i, j] != G[j, i]:
                return (i, j)
    return None


def is_symmetric(form: FrobeniusForm) -> bool:
    return symmetry_witness(form) is None


def matrix_trace_form(a: Algebra, n: int) -> FrobeniusForm:
    """Usual matrix trace on ``matrix_algebra(n)`` (matrix-unit basis)."""
    F = a.field
    return FrobeniusForm(a, [F.one if i // n == i % n else F.zero for i in range(n * n)], name="trace")


def block_traces(a: Algebra, wd: WedderburnData | None = None, simples=None) -> list[tuple]:
    """The functionals ``tr_i`` (trace of the action on the i-th simple module).

    With ``simples`` the action matrices are used directly.  Otherwise the
    block ``e_i A`` is used: as a left module it is ``n_i`` copies of the
    simple module, so ``tr_i(x) = trace(L_{x e_i}) / n_i``.
    """
    wd = wd or central_primitive_idempotents(a)
    F = a.field
    out = []
    for i, (e, n) in enumerate(zip(wd.idempotents, wd.block_dims)):
        if simples is not None:
            out.append(tuple(m.trace() for m in simples[i].actions))
            continue
        Le = a.left_matrix(e)
        inv_n = F.one / F(n)
        out.append(tuple((L @ Le).trace() * inv_n for L in a.left_regular))
    return out


def weighted_trace_form(a: Algebra, weights: Sequence, wd: WedderburnData | None = None, simples=None) -> FrobeniusForm:
    """lambda = sum_i w_i tr_i."""
    wd = wd or central_primitive_idempotents(a)
    F = a.field
    weights = [F(w) for w in weights]
    if len(weights) != wd.r:
        raise FormError(f"{wd.r} blocks but {len(weights)} weights")
    if any(not w for w in weights):
        raise FormError("block weights must be nonzero")
    trs = block_traces(a, wd, simples)
    values = [sum((w * t[j] for w, t in zip(weights, trs)), F.zero) for j in range(a.dim)]
    return FrobeniusForm(a, values)


def extract_block_weights(form: FrobeniusForm, wd: WedderburnData | None = None) -> tuple:
    """Weights ``w`` with ``form == weighted_trace_form(w)``; w_i = lambda(e_i) / n_i."""
    a = form.algebra
    wd = wd or central_primitive_idempotents(a)
    F = a.field
    weights = tuple(form(e) / F(n) for e, n in zip(wd.idempotents, wd.block_dims))
    if any(not w for w in weights) or weighted_trace_form(a, weights, wd) != form:
        raise FormError("form is not a weighted sum of block traces")
    return weights


def twist_form(form: FrobeniusForm, z: Sequence) -> FrobeniusForm:
    """The form x -> lambda(z x) for a central unit ``z``."""
    a = form.algebra
    z = a.vector(z)
    if not a.is_central(z):
        raise FormError("twisting element is not central")
    if not a.is_invertible(z):
        raise FormError("twisting element is not invertible")
    return FrobeniusForm(a, [form(a.multiply(z, a.basis_vector(i))) for i in range(a.dim)])
