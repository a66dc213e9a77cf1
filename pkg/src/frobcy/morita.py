"""Morita contexts, their diagrams, compatibility with Frobenius forms and the
tensor functor ``M (x)_A -``.

A context between ``A`` and ``B`` is ``(M, N, eps, eta)`` with ``M`` a
(B, A)-bimodule, ``N`` an (A, B)-bimodule, ``eps: N (x)_B M -> A`` and
``eta: B -> M (x)_A N``.  ``eps`` and ``eta`` are matrices on the bases of the
tensor spaces computed by :class:`~frobcy.modules.TensorSpace`; diagrams are
checked by evaluating both sides on pure tensors, which is legitimate
because every map involved is balanced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, algebra_generators, commutator_quotient, opposite
from .errors import AlgebraMismatchError, AsymmetricFormError, DimensionError, NotGeneratorError, SingularMatrixError
from .forms import FrobeniusForm, is_symmetric
from .linalg import Matrix, inverse, is_invertible, random_invertible, solve
from .modules import (
    Bimodule,
    LeftModule,
    TensorSpace,
    dual_element,
    dual_module,
    ev_representatives,
    hom_basis,
    induced_map,
    psi_inverse,
    psi_map,
    random_endomorphism,
    random_semisimple_module,
    regular_bimodule,
    simple_modules,
    tensor_left_module,
    tensor_over_A,
    validate_bimodule,
)
from .trace import hs_trace


@dataclass(eq=False)
class MoritaContext:
    A: Algebra
    B: Algebra
    M: Bimodule  # (B, A)
    N: Bimodule  # (A, B)
    eps: Matrix  # dim A x dim(N (x)_B M)
    eta: Matrix  # dim(M (x)_A N) x dim B
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.M.left_algebra != self.B or self.M.right_algebra != self.A:
            raise AlgebraMismatchError("M must be a (B, A)-bimodule")
        if self.N.left_algebra != self.A or self.N.right_algebra != self.B:
            raise AlgebraMismatchError("N must be an (A, B)-bimodule")
        if self.eps.shape != (self.A.dim, self.t_nm.dim):
            raise DimensionError(f"eps has shape {self.eps.shape}, expected {(self.A.dim, self.t_nm.dim)}")
        if self.eta.shape != (self.t_mn.dim, self.B.dim):
            raise DimensionError(f"eta has shape {self.eta.shape}, expected {(self.t_mn.dim, self.B.dim)}")

    @property
    def field(self):
        return self.A.field

    @property
    def t_nm(self) -> TensorSpace:
        """``N (x)_B M``."""
        return tensor_over_A(self.N.right, self.M.left)

    @property
    def t_mn(self) -> TensorSpace:
        """``M (x)_A N``."""
        return tensor_over_A(self.M.right, self.N.left)

    def eps_pure(self, n: Sequence, m: Sequence) -> tuple:
        return self.eps.apply(self.t_nm.pure(n, m))

    @property
    def eta_inverse(self) -> Matrix:
        if "eta_inv" not in self._cache:
            self._cache["eta_inv"] = inverse(self.eta)
        return self._cache["eta_inv"]

    def eta_terms(self, b: Sequence) -> list[tuple[tuple, tuple]]:
        """Pure tensors ``(m_k, n_k)`` with ``eta(b) = sum_k m_k (x) n_k``."""
        t = self.t_mn
        out = []
        for k, c in enumerate(self.eta.apply(b)):
            if c:
                x, y = t.representative(k)
                out.append((tuple(c * v for v in x), y))
        return out

    def eps_inverse_terms(self, representative: Sequence | None = None) -> list[tuple[tuple, tuple]]:
        """Pairs ``(n_k, m_k)`` with ``sum_k n_k (x) m_k`` a preimage of ``1_A``."""
        rep = eps_preimage_of_unit(self) if representative is None else representative
        F = self.field
        nN, nM = self.N.dim, self.M.dim
        out = []
        for idx, c in enumerate(rep):
            if c:
                p, q = divmod(idx, nM)
                out.append(
                    (
                        tuple(c if r == p else F.zero for r in range(nN)),
                        tuple(F.one if r == q else F.zero for r in range(nM)),
                    )
                )
        return out


def _left_action_on(t: TensorSpace, x: Bimodule, y: LeftModule, a: Sequence) -> Matrix:
    return induced_map(t, t, x.left.act(a), y.identity())


def _right_action_on(t: TensorSpace, x: LeftModule, y: Bimodule, a: Sequence) -> Matrix:
    return induced_map(t, t, x.identity(), y.right.act(a))


def _diagram_one_failures(ctx: MoritaContext, limit: int | None = None) -> list[dict]:
    """Basis pairs ``(b, m)`` where ``sum_k m_k . eps(n_k (x) m) != b.m`` for ``eta(b) = sum m_k (x) n_k``."""
    B, M = ctx.B, ctx.M
    out = []
    for s in range(B.dim):
        terms = ctx.eta_terms(B.basis_vector(s))
        for q in range(M.dim):
            mq = M.left.identity().column(q)
            lhs = [ctx.field.zero] * M.dim
            for mk, nk in terms:
                v = M.right.act(ctx.eps_pure(nk, mq)).apply(mk)
                lhs = [a + b for a, b in zip(lhs, v)]
            if tuple(lhs) != M.left.actions[s].column(q):
                out.append({"kind": "diagram1", "b": s, "m": q})
                if limit and len(out) >= limit:
                    return out
    return out


def _diagram_two_failures(ctx: MoritaContext, limit: int | None = None) -> list[dict]:
    """Basis pairs ``(n, b)`` where ``sum_k eps(n (x) m_k) . n_k != n.b``."""
    B, N = ctx.B, ctx.N
    out = []
    for s in range(B.dim):
        terms = ctx.eta_terms(B.basis_vector(s))
        for p in range(N.dim):
            n = N.left.identity().column(p)
            lhs = [ctx.field.zero] * N.dim
            for mk, nk in terms:
                v = N.left.act(ctx.eps_pure(n, mk)).apply(nk)
                lhs = [a + b for a, b in zip(lhs, v)]
            if tuple(lhs) != N.right.actions[s].column(p):
                out.append({"kind": "diagram2", "n": p, "b": s})
                if limit and len(out) >= limit:
                    return out
    return out


def validate_context(ctx: MoritaContext) -> list[dict]:
    """Failures of the context axioms; empty iff ``ctx`` is a Morita context."""
    out = []
    out += [dict(r, bimodule="M") for r in validate_bimodule(ctx.M)]
    out += [dict(r, bimodule="N") for r in validate_bimodule(ctx.N)]
    if out:
        return out
    A, B = ctx.A, ctx.B
    tnm, tmn = ctx.t_nm, ctx.t_mn
    for g in algebra_generators(A):
        if ctx.eps @ _left_action_on(tnm, ctx.N, ctx.M.left, g) != A.left_matrix(g) @ ctx.eps:
            out.append({"kind": "eps-left-linear"})
        if ctx.eps @ _right_action_on(tnm, ctx.N.right, ctx.M, g) != A.right_matrix(g) @ ctx.eps:
            out.append({"kind": "eps-right-linear"})
    for g in algebra_generators(B):
        if ctx.eta @ B.left_matrix(g) != _left_action_on(tmn, ctx.M, ctx.N.left, g) @ ctx.eta:
            out.append({"kind": "eta-left-linear"})
        if ctx.eta @ B.right_matrix(g) != _right_action_on(tmn, ctx.M.right, ctx.N, g) @ ctx.eta:
            out.append({"kind": "eta-right-linear"})
    if not is_invertible(ctx.eps):
        out.append({"kind": "eps-not-invertible", "shape": list(ctx.eps.shape)})
    if not is_invertible(ctx.eta):
        out.append({"kind": "eta-not-invertible", "shape": list(ctx.eta.shape)})
    out += _diagram_one_failures(ctx, limit=5)
    return out


def check_first_diagram(ctx: MoritaContext) -> bool:
    return not _diagram_one_failures(ctx, limit=1)


def check_second_diagram(ctx: MoritaContext) -> bool:
    return not _diagram_two_failures(ctx, limit=1)


def eps_preimage_of_unit(ctx: MoritaContext) -> tuple:
    """A representative in ``N (x)_K M`` (index ``p * dim M + q``) of ``eps^-1(1_A)``."""
    x = solve(ctx.eps, ctx.A.unit)
    if x is None:
        raise SingularMatrixError("1_A is not in the image of eps")
    t = ctx.t_nm
    F = ctx.field
    out = [F.zero] * (ctx.N.dim * ctx.M.dim)
    for k, c in enumerate(x):
        if c:
            for i, v in enumerate(t.representative_vector(k)):
                if v:
                    out[i] += c * v
    return tuple(out)


def random_eps_preimage(ctx: MoritaContext, rng: random.Random) -> tuple:
    """``eps_preimage_of_unit`` shifted by a random combination of balancing relations."""
    base = list(eps_preimage_of_unit(ctx))
    F = ctx.field
    for rel in ctx.t_nm.balanced_relations():
        c = F.random_element(rng, bound=2)
        if c:
            base = [a + c * b for a, b in zip(base, rel)]
    return tuple(base)


def induced_commutator_quotient_map(ctx: MoritaContext, representative: Sequence | None = None) -> Matrix:
    """``A/[A,A] -> B/[B,B]``, ``[a] -> sum_k [eta^-1(m_k.a (x) n_k)]`` where
    ``sum_k n_k (x) m_k`` represents ``eps^-1(1_A)``."""
    A, B = ctx.A, ctx.B
    QA, QB = commutator_quotient(A), commutator_quotient(B)
    terms = ctx.eps_inverse_terms(representative)
    Einv = ctx.eta_inverse
    t = ctx.t_mn
    F = ctx.field
    cols = []
    for k in range(QA.dim):
        a = QA.lift([F.one if i == k else F.zero for i in range(QA.dim)])
        Ra = ctx.M.right.act(a)
        total = [F.zero] * B.dim
        for nk, mk in terms:
            b = Einv.apply(t.pure(Ra.apply(mk), nk))
            total = [x + y for x, y in zip(total, b)]
        cols.append(QB.project(total))
    if not cols:
        return Matrix._raw(F, [()] * QB.dim, 0)
    return Matrix.from_columns(F, cols, QB.dim)


def _quotient_values(form: FrobeniusForm) -> tuple:
    if not is_symmetric(form):
        raise AsymmetricFormError("compatibility needs symmetric forms")
    Q = commutator_quotient(form.algebra)
    F = form.algebra.field
    return tuple(form(Q.lift([F.one if i == k else F.zero for i in range(Q.dim)])) for k in range(Q.dim))


def compatibility_values(ctx: MoritaContext, form_a: FrobeniusForm, form_b: FrobeniusForm) -> tuple[tuple, tuple]:
    """``lambda^A`` and ``lambda^B o f`` on the basis of ``A/[A,A]``."""
    if form_a.algebra != ctx.A or form_b.algebra != ctx.B:
        raise AlgebraMismatchError("forms do not live on the algebras of the context")
    f = induced_commutator_quotient_map(ctx)
    la, lb = _quotient_values(form_a), _quotient_values(form_b)
    pulled = tuple(sum((lb[j] * f[j, k] for j in range(len(lb))), ctx.field.zero) for k in range(len(la)))
    return la, pulled


def is_compatible(ctx: MoritaContext, form_a: FrobeniusForm, form_b: FrobeniusForm) -> bool:
    """``lambda^A == lambda^B o f`` on ``A/[A,A]``."""
    la, pulled = compatibility_values(ctx, form_a, form_b)
    return la == pulled


# ---------------------------------------------------------------------------
# the tensor functor


def tensor_functor_module(ctx: MoritaContext, x: LeftModule) -> LeftModule:
    """``M (x)_A X`` as a left B-module."""
    if x.algebra != ctx.A:
        raise AlgebraMismatchError("module is not over the source algebra of the context")
    key = ("functor", x)
    if key not in ctx._cache:
        ctx._cache[key] = tensor_left_module(ctx.M, x)[1]
    return ctx._cache[key]


def tensor_functor_hom(ctx: MoritaContext, x: LeftModule, y: LeftModule, f: Matrix) -> Matrix:
    """``id_M (x) f : M (x)_A X -> M (x)_A Y``."""
    tensor_functor_module(ctx, x)
    tensor_functor_module(ctx, y)
    tx, ty = tensor_over_A(ctx.M.right, x), tensor_over_A(ctx.M.right, y)
    return induced_map(tx, ty, ctx.M.right.identity(), f)


def cy_functor_discrepancies(
    ctx: MoritaContext,
    form_a: FrobeniusForm,
    form_b: FrobeniusForm,
    samples: Sequence[LeftModule] | None = None,
    seed: int = 0,
    random_modules: int = 3,
    max_dim: int = 8,
    endomorphisms: int = 10,
    stop_early: bool = False,
) -> list[dict]:
    """Sampled ``(X, f)`` with ``tr_{M (x) X}(id (x) f) != tr_X(f)``.

    Default sample: every simple module, ``random_modules`` random modules of
    dimension at most ``max_dim``, the identity plus ``endomorphisms`` random
    endomorphisms of each.
    """
    rng = random.Random(seed)
    if samples is None:
        simples = simple_modules(ctx.A)
        samples = list(simples) + [random_semisimple_module(ctx.A, rng, max_dim, simples) for _ in range(random_modules)]
    out = []
    for i, x in enumerate(samples):
        fx = tensor_functor_module(ctx, x)
        endos = [x.identity()] + [random_endomorphism(x, rng) for _ in range(endomorphisms)]
        for j, f in enumerate(endos):
            lhs = hs_trace(fx, form_b, tensor_functor_hom(ctx, x, x, f))
            rhs = hs_trace(x, form_a, f)
            if lhs != rhs:
                out.append({"sample": i, "endomorphism": j, "image_trace": lhs, "trace": rhs})
                if stop_early:
                    return out
    return out


def check_cy_functor(ctx: MoritaContext, form_a: FrobeniusForm, form_b: FrobeniusForm, **sample_spec) -> bool:
    return not cy_functor_discrepancies(ctx, form_a, form_b, stop_early=True, **sample_spec)


def xi_map(ctx: MoritaContext, t: LeftModule, representative: Sequence | None = None) -> Matrix:
    """``xi: T* (x)_A T -> (M (x)_A T)* (x)_B (M (x)_A T)``,
    ``t* (x) t -> sum_k (x (x) y -> eta^-1(x.t*(y) (x) n_k)) (x) (m_k (x) t)``.

    The sum runs over the terms ``n_k (x) m_k`` of a preimage of ``1_A``.
    """
    F = ctx.field
    B = ctx.B
    ft = tensor_functor_module(ctx, t)
    tt = tensor_over_A(ctx.M.right, t)
    dt, dft = dual_module(t), dual_module(ft)
    src = tensor_over_A(dt.module, t)
    dst = tensor_over_A(dft.module, ft)
    terms = ctx.eps_inverse_terms(representative)
    Einv = ctx.eta_inverse
    tmn = ctx.t_mn
    cols = []
    for k in range(src.dim):
        fv, tv = src.representative(k)
        tstar = dual_element(t, fv)
        total = [F.zero] * dst.dim
        for nk, mk in terms:
            # phi_k on the basis representatives of M (x)_A T
            phi_cols = []
            for r in range(ft.dim):
                x, y = tt.representative(r)
                xa = ctx.M.right.act(tstar.apply(y)).apply(x)
                phi_cols.append(Einv.apply(tmn.pure(xa, nk)))
            phi = Matrix.from_columns(F, phi_cols, B.dim) if phi_cols else Matrix._raw(F, [()] * B.dim, 0)
            phi_coords = dft.coordinates(phi)
            v = dst.pure(phi_coords, tt.pure(mk, tv))
            total = [a + b for a, b in zip(total, v)]
        cols.append(total)
    if not cols:
        return Matrix._raw(F, [()] * dst.dim, 0) if dst.dim else Matrix._raw(F, [], 0)
    return Matrix.from_columns(F, cols, dst.dim)


def check_xi_diagram(ctx: MoritaContext, t: LeftModule, representative: Sequence | None = None) -> bool:
    """``Psi_{M (x) T} o xi == (id_M (x) -) o Psi_{T,T}`` as maps ``T* (x)_A T -> End_B(M (x)_A T)``."""
    ft = tensor_functor_module(ctx, t)
    H = hom_basis(ft, ft)
    lhs = psi_map(ft, ft) @ xi_map(ctx, t, representative)
    HT = hom_basis(t, t)
    P = psi_map(t, t)
    rhs_cols = [H.coordinates(tensor_functor_hom(ctx, t, t, HT.element(P.column(k)))) for k in range(P.ncols)]
    F = ctx.field
    if not rhs_cols:
        return lhs.ncols == 0
    rhs = Matrix.from_columns(F, rhs_cols, H.dim) if H.dim else Matrix._raw(F, [], len(rhs_cols))
    return lhs == rhs


# ---------------------------------------------------------------------------
# constructions


def identity_context(a: Algebra) -> MoritaContext:
    """``(A, A, mult, mult^-1)``."""
    reg = regular_bimodule(a)
    t = tensor_over_A(reg.right, reg.left)
    F = a.field
    eps_cols = [a.multiply(*t.representative(k)) for k in range(t.dim)]
    eps = Matrix.from_columns(F, eps_cols, a.dim)
    eta = Matrix.from_columns(F, [t.pure(a.unit, a.basis_vector(i)) for i in range(a.dim)], t.dim)
    return MoritaContext(a, a, reg, reg, eps, eta)


def standard_context(n: int, field=None) -> MoritaContext:
    """Context between ``K`` and ``M_n(K)``: ``M`` = columns, ``N`` = rows,
    ``eps(r (x) c) = r c``, ``eta(E_ab) = e_a (x) e_b``."""
    from .algebra import ground_algebra, matrix_algebra
    from .linalg import QQ

    F = field or QQ
    A = ground_algebra(F)
    B = matrix_algebra(n, F)

    def unit(a_, b):
        return Matrix._raw(F, [tuple(F.one if (i, j) == (a_, b) else F.zero for j in range(n)) for i in range(n)], n)

    I = Matrix.identity(F, n)
    cols_left = LeftModule(B, [unit(a_, b) for a_ in range(n) for b in range(n)], n, name="columns")
    cols_right = LeftModule(opposite(A), [I], n)
    rows_left = LeftModule(A, [I], n)
    rows_right = LeftModule(opposite(B), [unit(b, a_) for a_ in range(n) for b in range(n)], n, name="rows")
    M = Bimodule(cols_left, cols_right, name="columns")
    N = Bimodule(rows_left, rows_right, name="rows")
    tnm = tensor_over_A(N.right, M.left)
    tmn = tensor_over_A(M.right, N.left)
    eps_cols = []
    for k in range(tnm.dim):
        r, c = tnm.representative(k)
        eps_cols.append((sum((x * y for x, y in zip(r, c)), F.zero),))
    eps = Matrix.from_columns(F, eps_cols, 1)
    e = [I.column(i) for i in range(n)]
    eta = Matrix.from_columns(F, [tmn.pure(e[a_], e[b]) for a_ in range(n) for b in range(n)], tmn.dim)
    return MoritaContext(A, B, M, N, eps, eta)


def endomorphism_algebra(p: LeftModule) -> Algebra:
    """``End_A(P)^op`` on the Hom basis ``H_l``: ``H_i * H_j = H_j o H_i``."""

    def build():
        H = hom_basis(p, p)
        sc = [[H.coordinates(Hj @ Hi, check=False) for Hj in H.basis] for Hi in H.basis]
        return Algebra(p.field, sc, H.coordinates(p.identity(), check=False), name="End(P)^op")

    return p.cached("end_op", build)


def is_generator(p: LeftModule) -> bool:
    """Whether the trace ideal ``sum f(P)`` over ``f in P*`` is all of ``A``."""
    from .linalg import rank

    E = ev_representatives(p)
    return E.ncols > 0 and rank(E) == p.algebra.dim


def context_from_progenerator(a: Algebra, p: LeftModule) -> MoritaContext:
    """Context between ``A`` and ``B = End_A(P)^op`` with ``M = P*``, ``N = P``,
    ``eps(p (x) f) = f(p)`` and ``eta = Psi_{P,P}^-1``."""
    if p.algebra != a:
        raise AlgebraMismatchError("module is not over the algebra")
    if not is_generator(p):
        raise NotGeneratorError("module does not contain every simple module")
    B = endomorphism_algebra(p)
    H = hom_basis(p, p)
    D = dual_module(p)
    F = a.field
    # left B action on P*: F -> F o H_l
    m_left = LeftModule(
        B,
        [Matrix.from_columns(F, [D.hom.coordinates(f @ h, check=False) for f in D.functionals], D.dim) for h in H.basis],
        D.dim,
    )
    M = Bimodule(m_left, D.module, name="P*")
    N = Bimodule(p, LeftModule(opposite(B), list(H.basis), p.dim), name="P")
    tnm = tensor_over_A(N.right, M.left)
    eps_cols = []
    for k in range(tnm.dim):
        pv, fv = tnm.representative(k)
        eps_cols.append(dual_element(p, fv).apply(pv))
    eps = Matrix.from_columns(F, eps_cols, a.dim)
    eta = psi_inverse(p, p)  # M (x)_A N is the tensor space Psi_{P,P} is computed on
    return MoritaContext(a, B, M, N, eps, eta)


def transport(ctx: MoritaContext, g_m: Matrix, g_n: Matrix) -> MoritaContext:
    """The same context with ``M`` and ``N`` rewritten in the bases given by the
    columns of ``g_m`` and ``g_n``; ``eps`` and ``eta`` are carried along."""
    from .modules import conjugate_module

    M = Bimodule(conjugate_module(ctx.M.left, g_m), conjugate_module(ctx.M.right, g_m))
    N = Bimodule(conjugate_module(ctx.N.left, g_n), conjugate_module(ctx.N.right, g_n))
    tnm_new = tensor_over_A(N.right, M.left)
    tmn_new = tensor_over_A(M.right, N.left)
    eps = ctx.eps @ induced_map(tnm_new, ctx.t_nm, g_n, g_m)
    eta = induced_map(ctx.t_mn, tmn_new, inverse(g_m), inverse(g_n)) @ ctx.eta
    return MoritaContext(ctx.A, ctx.B, M, N, eps, eta)


def perturb(ctx: MoritaContext, z_a: Sequence | None = None, z_b: Sequence | None = None) -> MoritaContext:
    """``eps' = z_a eps`` and ``eta' = eta o (z_b .)``; central units keep both maps bimodule isomorphisms."""
    eps = ctx.eps if z_a is None else ctx.A.left_matrix(z_a) @ ctx.eps
    eta = ctx.eta if z_b is None else ctx.eta @ ctx.B.left_matrix(z_b)
    return MoritaContext(ctx.A, ctx.B, ctx.M, ctx.N, eps, eta)


def random_context(a: Algebra, p: LeftModule, seed: int) -> MoritaContext:
    """``context_from_progenerator`` followed by random basis changes of ``M`` and ``N``."""
    ctx = context_from_progenerator(a, p)
    g_m = random_invertible(ctx.M.dim, 2 * seed + 1, a.field)
    g_n = random_invertible(ctx.N.dim, 2 * seed + 2, a.field)
    return transport(ctx, g_m, g_n)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(eq=False)
class MoritaMorphism:
    source: MoritaContext
    target: MoritaContext
    alpha: Matrix  # M -> M'
    beta: Matrix  # N -> N'


def _is_bimodule_map(f: Matrix, x: Bimodule, y: Bimodule) -> bool:
    return hom_basis(x.left, y.left).contains(f) and hom_basis(x.right, y.right).contains(f)


def validate_morphism(mor: MoritaMorphism) -> list[dict]:
    c, d = mor.source, mor.target
    if c.A != d.A or c.B != d.B:
        return [{"kind": "algebra-mismatch"}]
    out = []
    if not _is_bimodule_map(mor.alpha, c.M, d.M):
        out.append({"kind": "alpha-not-bimodule-map"})
    if not _is_bimodule_map(mor.beta, c.N, d.N):
        out.append({"kind": "beta-not-bimodule-map"})
    if out:
        return out
    if induced_map(c.t_mn, d.t_mn, mor.alpha, mor.beta) @ c.eta != d.eta:
        out.append({"kind": "eta-square"})
    if d.eps @ induced_map(c.t_nm, d.t_nm, mor.beta, mor.alpha) != c.eps:
        out.append({"kind": "eps-square"})
    return out


def induced_transformation_component(mor: MoritaMorphism, x: LeftModule) -> Matrix:
    """``alpha (x) id_X : M (x)_A X -> M' (x)_A X``."""
    c, d = mor.source, mor.target
    tensor_functor_module(c, x)
    tensor_functor_module(d, x)
    return induced_map(tensor_over_A(c.M.right, x), tensor_over_A(d.M.right, x), mor.alpha, x.identity())
