"""The Calabi-Yau trace on modules over a symmetric Frobenius algebra.

``tr_M(f) = lambda(ev(Psi_{M,M}^{-1}(f)))``: write ``f`` as an element of
``M* (x)_A M``, evaluate into ``A`` (well defined modulo commutators) and
apply the form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, is_semisimple
from .errors import AlgebraMismatchError, AsymmetricFormError, FrobCYError, UnsupportedCharacteristicError
from .forms import FrobeniusForm, is_frobenius, symmetry_witness
from .linalg import Matrix, rank
from .modules import (
    HomSpace,
    LeftModule,
    direct_sum_maps,
    direct_sum_modules,
    dual_basis,
    dual_module,
    ev_map,
    hom_basis,
    psi_inverse,
    random_semisimple_module,
    simple_modules,
    tensor_over_A,
)
from .report import Report


def _require_symmetric(m: LeftModule, form: FrobeniusForm) -> None:
    if form.algebra != m.algebra:
        raise AlgebraMismatchError("form and module live over different algebras")
    w = form.algebra.cached(("symmetry_witness", form.values), lambda: symmetry_witness(form))
    if w is not None:
        raise AsymmetricFormError(f"form is not symmetric: lambda(e{w[0]} e{w[1]}) != lambda(e{w[1]} e{w[0]})")


def trace_functional(m: LeftModule, form: FrobeniusForm) -> tuple:
    """Row vector ``tau`` with ``tr_M(f) = tau . coords(f)`` in the basis of ``End_A(M)``."""
    _require_symmetric(m, form)

    def build():
        D = dual_module(m)
        t = tensor_over_A(D.module, m)
        # lambda(f(x)) on the representative f (x) x of each tensor basis vector
        w = []
        for k in range(t.dim):
            fv, xv = t.representative(k)
            w.append(form(D.evaluate(fv, xv)))
        Pinv = psi_inverse(m, m)
        F = m.field
        return tuple(sum((w[k] * Pinv[k, c] for k in range(t.dim)), F.zero) for c in range(Pinv.ncols))

    return m.cached(("trace", form.values), build)


def hs_trace(m: LeftModule, form: FrobeniusForm, f: Matrix):
    tau = trace_functional(m, form)
    coords = hom_basis(m, m).coordinates(f)
    return sum((a * b for a, b in zip(tau, coords) if b), m.field.zero)


def hattori_stallings_class(m: LeftModule, f: Matrix) -> tuple:
    """``ev(Psi^{-1}(f))`` in coordinates of ``A/[A,A]``."""
    c = hom_basis(m, m).coordinates(f)
    return ev_map(m).apply(psi_inverse(m, m).apply(c))


def hs_trace_via_dual_basis(m: LeftModule, form: FrobeniusForm, f: Matrix, seed: int = 0):
    """``lambda(sum_i f_i(f(p_i)))`` for a dual basis found by splitting a free cover."""
    _require_symmetric(m, form)
    if not hom_basis(m, m).contains(f):
        raise ValueError("matrix is not an endomorphism of the module")
    db = dual_basis(m, seed)
    a = m.algebra
    total = a.zero_vector()
    for fi, p in zip(db.functionals, db.elements):
        total = a.add(total, fi.apply(f.apply(p)))
    return form(total)


@dataclass(frozen=True)
class PairingGram:
    hom_mn: HomSpace
    hom_nm: HomSpace
    gram: Matrix  # gram[i][j] = tr_M(g_j o f_i)


def trace_pairing(m: LeftModule, n: LeftModule, form: FrobeniusForm) -> PairingGram:
    hmn, hnm = hom_basis(m, n), hom_basis(n, m)
    F = m.field
    rows = [tuple(hs_trace(m, form, g @ f) for g in hnm.basis) for f in hmn.basis]
    return PairingGram(hmn, hnm, Matrix._raw(F, rows, hnm.dim))


def pairing_nondegenerate(m: LeftModule, n: LeftModule, form: FrobeniusForm) -> bool:
    pg = trace_pairing(m, n, form)
    return pg.hom_mn.dim == pg.hom_nm.dim and rank(pg.gram) == pg.hom_mn.dim


def check_symmetry(m: LeftModule, n: LeftModule, form: FrobeniusForm, f: Matrix, g: Matrix) -> bool:
    """``tr_M(g o f) == tr_N(f o g)`` for ``f: M -> N``, ``g: N -> M``."""
    return hs_trace(m, form, g @ f) == hs_trace(n, form, f @ g)


def check_additivity(x: LeftModule, y: LeftModule, f: Matrix, g: Matrix, form: FrobeniusForm) -> bool:
    s = direct_sum_modules([x, y]).module
    return hs_trace(s, form, direct_sum_maps([f, g])) == hs_trace(x, form, f) + hs_trace(y, form, g)


def check_matrix_form(xs: Sequence[LeftModule], f: Matrix, form: FrobeniusForm) -> bool:
    """``tr(f) == sum_i tr(f_ii)`` for an endomorphism ``f`` of ``(+)_i x_i``."""
    ds = direct_sum_modules(list(xs))
    diag = sum(
        (hs_trace(x, form, p @ f @ i) for x, i, p in zip(xs, ds.inclusions, ds.projections)),
        xs[0].field.zero,
    )
    return hs_trace(ds.module, form, f) == diag


def cy_obstruction_witness(a: Algebra, m: LeftModule, n: LeftModule) -> dict | None:
    """Witness that no trace makes ``Hom(M,N) x Hom(N,M) -> K`` non-degenerate:
    both Hom spaces are nonzero yet every composite ``g o f`` vanishes."""
    if m.algebra != a or n.algebra != a:
        raise AlgebraMismatchError("modules are not over the given algebra")
    hmn, hnm = hom_basis(m, n), hom_basis(n, m)
    if hmn.dim == 0 or hnm.dim == 0:
        return None
    if any(not (g @ f).is_zero() for f in hmn.basis for g in hnm.basis):
        return None
    return {
        "hom_dims": [hmn.dim, hnm.dim],
        "hom_source_target": list(hmn.basis),
        "hom_target_source": list(hnm.basis),
    }


def certify_cy(a: Algebra, form: FrobeniusForm, modules: Sequence[LeftModule] = (), seed: int = 0, max_dim: int = 12, samples: int = 3) -> Report:
    """Check that modules over ``(a, form)`` form a Calabi-Yau category.

    Records the weights ``tr(id_{V_i})``, symmetry and non-degeneracy on all
    pairs of simples and on a few random composite modules.  If the algebra
    is not semisimple the given ``modules`` are searched for an obstruction.
    """
    rep = Report("certify-cy", seed)
    F = a.field
    w = symmetry_witness(form)
    rep.add("form-symmetric", w is None, None if w is None else {"basis_pair": list(w)})
    rep.add("form-nondegenerate", is_frobenius(form))
    if not rep.verdict:
        return rep
    try:
        semisimple = is_semisimple(a)
        reason = None if semisimple else "trace form of the regular representation is degenerate"
    except UnsupportedCharacteristicError as e:
        semisimple, reason = False, str(e)
    if not semisimple:
        found = None
        for m in modules:
            for n in modules:
                if m is not n:
                    found = found or cy_obstruction_witness(a, m, n)
                    if found:
                        found = dict(found, pair=[modules.index(m), modules.index(n)], modules=[m.name, n.name])
        rep.add("semisimple", False, {"reason": reason})
        if found:
            rep.add("pairing-obstruction", False, found)
        return rep
    rep.add("semisimple", True)
    try:
        simples = simple_modules(a)
    except FrobCYError as e:
        rep.add("split", False, {"reason": str(e)})
        return rep
    weights = [hs_trace(v, form, v.identity()) for v in simples]
    rep.data["weights"] = weights
    rep.data["dims"] = [v.dim for v in simples]
    rep.add("weights-nonzero", all(weights), {"weights": weights})
    rng = random.Random(seed)
    for i, v in enumerate(simples):
        for j, u in enumerate(simples):
            pg = trace_pairing(v, u, form)
            ok = pg.hom_mn.dim == pg.hom_nm.dim and rank(pg.gram) == pg.hom_mn.dim
            rep.add(f"nondegenerate[V{i},V{j}]", ok, None if ok else {"gram": pg.gram})
            sym = all(check_symmetry(v, u, form, f, g) for f in pg.hom_mn.basis for g in pg.hom_nm.basis)
            rep.add(f"symmetric[V{i},V{j}]", sym)
    for s in range(samples):
        x = random_semisimple_module(a, rng, max_dim, simples)
        y = random_semisimple_module(a, rng, max_dim, simples)
        ok = pairing_nondegenerate(x, y, form)
        rep.add(f"nondegenerate[sample{s}]", ok, None if ok else {"dims": [x.dim, y.dim]})
        hxy, hyx = hom_basis(x, y), hom_basis(y, x)
        f = hxy.element([F.random_element(rng) for _ in range(hxy.dim)])
        g = hyx.element([F.random_element(rng) for _ in range(hyx.dim)])
        lhs, rhs = hs_trace(x, form, g @ f), hs_trace(y, form, f @ g)
        rep.add(f"symmetric[sample{s}]", lhs == rhs, None if lhs == rhs else {"values": [lhs, rhs]})
    return rep
