"""From symmetric Frobenius algebras to Calabi-Yau data and back.

A finite semisimple Calabi-Yau category is recorded skeletally: the number
of simple objects, their dimensions over the algebra they came from, and
the trace weights ``t_i = tr(id_{X_i})``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, center_basis, central_primitive_idempotents, power_algebra
from .errors import AlgebraMismatchError, FormError
from .forms import FrobeniusForm, twist_form
from .linalg import Field, Matrix
from .modules import LeftModule, direct_sum_modules, hom_basis, simple_modules
from .morita import (
    MoritaContext,
    check_cy_functor,
    context_from_progenerator,
    endomorphism_algebra,
    is_compatible,
    tensor_functor_module,
)
from .report import Report
from .trace import certify_cy, hs_trace


@dataclass(frozen=True)
class CYPresentation:
    field: Field
    dims: tuple[int, ...]
    weights: tuple
    source: str | None = None

    def __post_init__(self):
        if not self.dims:
            raise FormError("a presentation needs at least one simple object")
        if len(self.dims) != len(self.weights):
            raise FormError("one weight per simple object")
        if any(n < 1 for n in self.dims):
            raise FormError("dimensions must be positive")
        if any(not w for w in self.weights):
            raise FormError("weights must be nonzero")

    @property
    def r(self) -> int:
        return len(self.dims)


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    algebra: Algebra
    form: FrobeniusForm


def rep_fg(a: Algebra, form: FrobeniusForm) -> CYPresentation:
    """Dimensions and trace weights ``tr(id_{V_i})`` of the simple modules."""
    if form.algebra != a:
        raise AlgebraMismatchError("form is not on this algebra")
    simples = simple_modules(a)
    weights = tuple(hs_trace(v, form, v.identity()) for v in simples)
    return CYPresentation(a.field, tuple(v.dim for v in simples), weights, a.name)


def reconstruct_frobenius(cy: CYPresentation) -> FrobeniusAlgebra:
    """``End(X_1 (+) ... (+) X_r)`` of the skeletal category: ``K^r`` with form weights ``t_i``."""
    a = power_algebra(cy.r, cy.field)
    return FrobeniusAlgebra(a, FrobeniusForm(a, cy.weights, name="tr_P"))


def progenerator(a: Algebra) -> LeftModule:
    """``P = V_1 (+) ... (+) V_r``."""
    return a.cached("progenerator", lambda: direct_sum_modules(simple_modules(a)).module)


def trace_form_of_module(p: LeftModule, form: FrobeniusForm) -> FrobeniusForm:
    """``tr_P`` as a form on ``End_A(P)^op`` (basis: the Hom basis of ``End_A(P)``)."""
    B = endomorphism_algebra(p)
    return FrobeniusForm(B, [hs_trace(p, form, h) for h in hom_basis(p, p).basis], name="tr_P")


def reconstruct_from_module_category(a: Algebra, form: FrobeniusForm) -> tuple[FrobeniusAlgebra, MoritaContext]:
    """``B = End_A(P)^op`` with ``lambda^B = tr_P`` and the context between ``A`` and ``B``."""
    p = progenerator(a)
    ctx = context_from_progenerator(a, p)
    return FrobeniusAlgebra(ctx.B, trace_form_of_module(p, form)), ctx


def hom_functor_module(p: LeftModule, x: LeftModule) -> LeftModule:
    """``Hom_A(P, X)`` as a left module over ``End_A(P)^op``: ``b.phi = phi o b``."""
    B = endomorphism_algebra(p)
    H = hom_basis(p, x)
    F = x.field
    acts = []
    for h in hom_basis(p, p).basis:
        cols = [H.coordinates(phi @ h, check=False) for phi in H.basis]
        acts.append(Matrix.from_columns(F, cols, H.dim) if cols else Matrix._raw(F, [], 0))
    return LeftModule(B, acts, H.dim)


def hom_functor_map(p: LeftModule, x: LeftModule, f: Matrix) -> Matrix:
    """``Hom_A(P, f): phi -> f o phi`` on ``Hom_A(P, X)``."""
    H = hom_basis(p, x)
    F = x.field
    cols = [H.coordinates(f @ phi, check=False) for phi in H.basis]
    return Matrix.from_columns(F, cols, H.dim) if cols else Matrix._raw(F, [], 0)


def hom_functor_trace_check(a: Algebra, form: FrobeniusForm, x: LeftModule, f: Matrix, p: LeftModule | None = None) -> bool:
    """``tr^{tr_P}_{Hom(P,X)}(Hom(P,f)) == tr^lambda_X(f)``."""
    p = p if p is not None else progenerator(a)
    hx = hom_functor_module(p, x)
    lam_b = trace_form_of_module(p, form)
    return hs_trace(hx, lam_b, hom_functor_map(p, x, f)) == hs_trace(x, form, f)


def block_coordinates(a: Algebra, z: Sequence) -> tuple:
    """``(z_1, ..., z_r)`` with ``z e_i = z_i e_i`` for a central ``z``."""
    wd = central_primitive_idempotents(a)
    out = []
    for e in wd.idempotents:
        ze = a.multiply(z, e)
        k = next(i for i, v in enumerate(e) if v)
        c = ze[k] / e[k]
        if ze != tuple(c * v for v in e):
            raise FormError("element is not central")
        out.append(c)
    return tuple(out)


def cy_structure_family_check(a: Algebra, form: FrobeniusForm, z: Sequence) -> bool:
    """Twisting by a central unit multiplies the weights by its block coordinates."""
    base = rep_fg(a, form).weights
    twisted = rep_fg(a, twist_form(form, z)).weights
    return twisted == tuple(w * c for w, c in zip(base, block_coordinates(a, z)))


def enumerate_cy_structures(a: Algebra, form: FrobeniusForm) -> set[tuple]:
    """Weight vectors of all twists of ``form`` by central units (finite fields only)."""
    F = a.field
    p = F.characteristic
    if p == 0:
        raise ValueError("enumeration needs a finite field")
    Z = center_basis(a).columns()
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(Z)):
        z = tuple(sum((F(c) * zk[i] for c, zk in zip(coeffs, Z)), F.zero) for i in range(a.dim))
        if a.is_invertible(z):
            out.add(rep_fg(a, twist_form(form, z)).weights)
    return out


def simple_transport(ctx: MoritaContext) -> list[int]:
    """For each simple ``V_i`` of ``A``, the index ``j`` of the simple ``W_j`` of ``B``
    with ``M (x)_A V_i = W_j``."""
    wa, wb = simple_modules(ctx.A), simple_modules(ctx.B)
    out = []
    for v in wa:
        fv = tensor_functor_module(ctx, v)
        hits = [j for j, w in enumerate(wb) if hom_basis(w, fv).dim]
        if len(hits) != 1 or hom_basis(wb[hits[0]], fv).dim * wb[hits[0]].dim != fv.dim:
            raise ArithmeticError("tensor functor does not send simples to simples")
        out.append(hits[0])
    return out


def roundtrip_check(a: Algebra, form: FrobeniusForm, seed: int = 0) -> Report:
    rep = Report("roundtrip", seed)
    cy = rep_fg(a, form)
    rep.data["dims"] = list(cy.dims)
    rep.data["weights"] = list(cy.weights)
    fb, ctx = reconstruct_from_module_category(a, form)
    cyb = rep_fg(fb.algebra, fb.form)
    rep.add("reconstructed-dims-collapse", all(n == 1 for n in cyb.dims), {"dims": list(cyb.dims)})
    key = a.field.sort_key
    same = Counter(map(key, cy.weights)) == Counter(map(key, cyb.weights))
    rep.add("reconstructed-weights-multiset", same, {"weights": list(cyb.weights)})
    match = simple_transport(ctx)
    matched = all(cyb.weights[j] == w for j, w in zip(match, cy.weights))
    rep.add("weights-along-functor", matched, {"transport": match})
    rep.add("context-compatible", is_compatible(ctx, form, fb.form))
    rep.add("functor-preserves-traces", check_cy_functor(ctx, form, fb.form, seed=seed))
    basic = reconstruct_frobenius(cy)
    cert = certify_cy(basic.algebra, basic.form, seed=seed)
    rep.add("basic-algebra-certifies", cert.verdict)
    # block j of K^r is spanned by the unit vector at position k_j; its weight must be t_{k_j}
    order = [next(i for i, v in enumerate(e) if v) for e in central_primitive_idempotents(basic.algebra).idempotents]
    got = tuple(cert.data.get("weights", ()))
    rep.add("basic-algebra-weights", got == tuple(cy.weights[k] for k in order), {"weights": list(got)})
    return rep
