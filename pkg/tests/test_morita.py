from __future__ import annotations

import random

import pytest

from frobcy.algebra import commutator_quotient, ground_algebra, matrix_algebra, power_algebra, product_algebra
from frobcy.errors import NotGeneratorError
from frobcy.forms import FrobeniusForm, matrix_trace_form, weighted_trace_form
from frobcy.linalg import QQ, Matrix, is_invertible
from frobcy.modules import (
    direct_sum_modules,
    hom_basis,
    random_endomorphism,
    random_semisimple_module,
    regular_module,
    simple_modules,
)
from frobcy.morita import (
    MoritaMorphism,
    check_cy_functor,
    check_first_diagram,
    check_second_diagram,
    check_xi_diagram,
    compatibility_values,
    context_from_progenerator,
    cy_functor_discrepancies,
    endomorphism_algebra,
    eps_preimage_of_unit,
    identity_context,
    induced_commutator_quotient_map,
    induced_transformation_component,
    is_compatible,
    is_generator,
    perturb,
    random_context,
    random_eps_preimage,
    standard_context,
    tensor_functor_hom,
    tensor_functor_module,
    validate_context,
    validate_morphism,
)
from frobcy.trace import hs_trace


@pytest.fixture(scope="module")
def std():
    return standard_context(2)


@pytest.fixture(scope="module")
def ident():
    return identity_context(product_algebra(matrix_algebra(2), ground_algebra()))


def test_standard_and_identity_contexts_are_valid(std, ident):
    assert validate_context(std) == []
    assert validate_context(ident) == []
    assert check_first_diagram(std) and check_second_diagram(std)
    assert check_first_diagram(ident) and check_second_diagram(ident)


def test_scaled_eta_breaks_the_diagrams(std):
    bad = perturb(std, z_b=std.B.scale(QQ(2), std.B.unit))
    assert validate_context(bad) != []
    assert not check_first_diagram(bad)
    assert not check_second_diagram(bad)


def test_scaling_both_sides_compensates(std):
    c = QQ(3)
    ok = perturb(std, z_a=std.A.scale(c, std.A.unit), z_b=std.B.scale(1 / c, std.B.unit))
    assert check_first_diagram(ok) == check_second_diagram(ok)


def test_eps_preimage(std, ident):
    for ctx in (std, ident):
        rep = eps_preimage_of_unit(ctx)
        assert ctx.eps.apply(ctx.t_nm.project(rep)) == ctx.A.unit


def test_induced_map_examples(std, ident):
    f = induced_commutator_quotient_map(ident)
    assert f == Matrix.identity(QQ, f.nrows)
    g = induced_commutator_quotient_map(std)
    assert g.shape == (1, 1) and is_invertible(g)
    # [1_K] goes to [E_11], whose trace is 1
    tr = matrix_trace_form(std.B, 2)
    la, pulled = compatibility_values(std, FrobeniusForm(std.A, [1]), tr)
    assert la == pulled == (1,)


def test_induced_map_independent_of_representative(std):
    rng = random.Random(0)
    base = induced_commutator_quotient_map(std)
    for _ in range(5):
        assert induced_commutator_quotient_map(std, random_eps_preimage(std, rng)) == base


def test_induced_map_of_regular_progenerator_is_identity():
    a = product_algebra(matrix_algebra(2), ground_algebra())
    ctx = context_from_progenerator(a, regular_module(a))
    f = induced_commutator_quotient_map(ctx)
    # B = End(A)^op on the Hom basis; a -> (x -> x a) identifies A with B
    H = hom_basis(regular_module(a), regular_module(a))
    qa, qb = commutator_quotient(a), commutator_quotient(ctx.B)
    cols = []
    for k in range(qa.dim):
        x = qa.lift([QQ(int(i == k)) for i in range(qa.dim)])
        cols.append(qb.project(H.coordinates(a.right_matrix(x))))
    assert f == Matrix.from_columns(QQ, cols, qb.dim)


def test_compatibility_examples(std, ident):
    lam = FrobeniusForm(std.A, [1])
    tr = matrix_trace_form(std.B, 2)
    assert is_compatible(std, lam, tr)
    assert not is_compatible(std, lam, tr.scaled(2))
    a = ident.A
    form = weighted_trace_form(a, [3, -1])
    assert is_compatible(ident, form, form)


def test_compatibility_iff_cy_functor(std):
    lam = FrobeniusForm(std.A, [1])
    tr = matrix_trace_form(std.B, 2)
    for c in (1, 2, QQ(1) / 3):
        lb = tr.scaled(c)
        assert is_compatible(std, lam, lb) == check_cy_functor(std, lam, lb, random_modules=1, max_dim=3, endomorphisms=2)


def test_scaled_form_is_off_by_the_scale(std):
    lam = FrobeniusForm(std.A, [1])
    c = QQ(5)
    bad = cy_functor_discrepancies(std, lam, matrix_trace_form(std.B, 2).scaled(c), random_modules=1, max_dim=3, endomorphisms=2)
    assert bad
    for d in bad:
        if d["trace"]:
            assert d["trace"] / d["image_trace"] == 1 / c


def test_tensor_functor_on_standard_context(std):
    k = regular_module(std.A)
    for n in (1, 2, 3):
        x = direct_sum_modules([k] * n).module
        fx = tensor_functor_module(std, x)
        assert fx.dim == 2 * n
        assert hom_basis(simple_modules(std.B)[0], fx).dim == n


def test_tensor_functor_is_a_functor(std):
    x = direct_sum_modules([regular_module(std.A)] * 2).module
    rng = random.Random(3)
    f, g = random_endomorphism(x, rng), random_endomorphism(x, rng)
    Ff = tensor_functor_hom(std, x, x, f)
    Fg = tensor_functor_hom(std, x, x, g)
    assert tensor_functor_hom(std, x, x, g @ f) == Fg @ Ff
    fx = tensor_functor_module(std, x)
    assert tensor_functor_hom(std, x, x, x.identity()) == fx.identity()


def test_identity_context_functor_preserves_traces(ident):
    a = ident.A
    form = weighted_trace_form(a, [2, 7])
    assert check_cy_functor(ident, form, form, random_modules=1, max_dim=4, endomorphisms=2)


def test_xi_diagram(std, ident):
    assert check_xi_diagram(std, regular_module(std.A))
    assert check_xi_diagram(ident, simple_modules(ident.A)[1])


def test_xi_diagram_on_random_context(pool):
    inst = pool[0]
    a = inst.algebra
    p = direct_sum_modules(simple_modules(a)).module
    ctx = random_context(a, p, 4)
    t = random_semisimple_module(a, random.Random(1), 4)
    assert check_xi_diagram(ctx, t)
    assert check_xi_diagram(ctx, t, random_eps_preimage(ctx, random.Random(2)))


def test_progenerator_examples(m2, m2xm3):
    a, _, col = m2
    ctx = context_from_progenerator(a, col)
    assert ctx.B.dim == 1 and validate_context(ctx) == []
    b, _ = m2xm3
    ctx = context_from_progenerator(b, direct_sum_modules(simple_modules(b)).module)
    assert ctx.B.dim == 2 and validate_context(ctx) == []
    assert endomorphism_algebra(regular_module(a)).dim == 4


def test_generator_check(m2xm3):
    a, _ = m2xm3
    v1, v2 = simple_modules(a)
    assert is_generator(direct_sum_modules([v1, v2]).module)
    assert not is_generator(v1)
    with pytest.raises(NotGeneratorError):
        context_from_progenerator(a, v1)


@pytest.mark.parametrize("seed", range(6))
def test_random_contexts_valid_and_diagrams_agree(pool, seed):
    inst = pool[seed]
    a = inst.algebra
    p = direct_sum_modules(simple_modules(a)).module
    ctx = random_context(a, p, seed)
    assert validate_context(ctx) == []
    assert check_first_diagram(ctx) and check_second_diagram(ctx)
    z = ctx.B.scale(QQ(2), ctx.B.unit)
    bad = perturb(ctx, z_b=z)
    assert check_first_diagram(bad) == check_second_diagram(bad) is False


def test_block_count_preserved(pool):
    for inst in pool[:4]:
        a = inst.algebra
        ctx = context_from_progenerator(a, direct_sum_modules(simple_modules(a)).module)
        f = induced_commutator_quotient_map(ctx)
        assert f.nrows == f.ncols == len(inst.block_dims)


def test_morphisms(std):
    c = QQ(3)
    M, N = std.M.left, std.N.left
    good = MoritaMorphism(std, std, M.identity().scale(c), N.identity().scale(1 / c))
    assert validate_morphism(good) == []
    assert validate_morphism(MoritaMorphism(std, std, M.identity(), N.identity())) == []
    bad = MoritaMorphism(std, std, M.identity().scale(c), N.identity())
    assert validate_morphism(bad) != []


def test_induced_transformation_is_natural(std):
    c = QQ(3)
    mor = MoritaMorphism(std, std, std.M.left.identity().scale(c), std.N.left.identity().scale(1 / c))
    x = direct_sum_modules([regular_module(std.A)] * 2).module
    f = random_endomorphism(x, random.Random(8))
    alpha_x = induced_transformation_component(mor, x)
    Ff = tensor_functor_hom(std, x, x, f)
    assert alpha_x @ Ff == Ff @ alpha_x
    assert alpha_x == tensor_functor_module(std, x).identity().scale(c)


def test_functor_traces_on_random_context(pool):
    inst = pool[1]
    a = inst.algebra
    p = direct_sum_modules(simple_modules(a)).module
    ctx = random_context(a, p, 9)
    from frobcy.equivalence import trace_form_of_module

    lb = trace_form_of_module(p, inst.form)
    # B = End(P)^op carries tr_P; the functor P* (x) - then preserves traces
    assert is_compatible(ctx, inst.form, lb)
    x = random_semisimple_module(a, random.Random(0), 4)
    f = random_endomorphism(x, random.Random(1))
    fx = tensor_functor_module(ctx, x)
    assert hs_trace(fx, lb, tensor_functor_hom(ctx, x, x, f)) == hs_trace(x, inst.form, f)


def test_perturbed_context_on_power_algebra():
    a = power_algebra(2)
    ctx = identity_context(a)
    z = a.add(a.basis_vector(0), a.scale(QQ(-1), a.basis_vector(1)))
    bad = perturb(ctx, z_a=z)
    assert not check_first_diagram(bad)
    assert not check_second_diagram(bad)
