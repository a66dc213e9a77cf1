from __future__ import annotations

import random

import pytest

from frobcy.algebra import matrix_algebra, power_algebra, product_algebra, truncated_polynomial_algebra
from frobcy.errors import AlgebraMismatchError, NotProjectiveError, SingularPsiError
from frobcy.linalg import QQ, Matrix, rank
from frobcy.modules import (
    DualBasis,
    LeftModule,
    decompose,
    direct_sum_modules,
    dual_basis,
    dual_basis_from_psi,
    dual_element,
    dual_module,
    ev_map,
    free_module,
    hom_basis,
    induced_map,
    is_module_map,
    multiplicities,
    psi_inverse,
    psi_map,
    random_semisimple_module,
    regular_module,
    right_regular_module,
    simple_modules,
    tensor_over_A,
    validate_module,
    zero_module,
)


def test_validate_module(f2z2):
    a, _, s, p = f2z2
    assert validate_module(regular_module(a)) == []
    assert validate_module(s) == []
    assert validate_module(p) == []
    broken = LeftModule(a, [Matrix.identity(a.field, 2), Matrix(a.field, [[1, 1], [1, 1]])], 2)
    assert validate_module(broken) != []


def test_hom_examples(m2, f2z2):
    _, _, col = m2
    assert hom_basis(col, col).dim == 1
    _, _, s, p = f2z2
    (ps,) = hom_basis(p, s).basis
    (sp,) = hom_basis(s, p).basis
    assert ps == Matrix(s.field, [[0, 1]])
    assert sp == Matrix(s.field, [[1], [0]])


def test_hom_requires_same_algebra(m2):
    _, _, col = m2
    with pytest.raises(AlgebraMismatchError):
        hom_basis(col, regular_module(power_algebra(2)))


@pytest.mark.parametrize("i", range(8))
def test_hom_basis_intertwines_and_dimension_formula(pool, i):
    inst = pool[i]
    rng = random.Random(i)
    simples = simple_modules(inst.algebra)
    x = random_semisimple_module(inst.algebra, rng, 7, simples)
    y = random_semisimple_module(inst.algebra, rng, 7, simples)
    H = hom_basis(x, y)
    assert all(is_module_map(f, x, y) for f in H.basis)
    assert rank(Matrix.from_columns(QQ, [f.vec() for f in H.basis], x.dim * y.dim)) == H.dim if H.dim else True
    mx, my = multiplicities(x, simples), multiplicities(y, simples)
    assert H.dim == sum(p * q for p, q in zip(mx, my))
    # Hom(M (+) N, K) = Hom(M, K) (+) Hom(N, K)
    s = direct_sum_modules([x, y]).module
    assert hom_basis(s, y).dim == H.dim + hom_basis(y, y).dim


def test_simple_modules_examples(m2xm3):
    assert [v.dim for v in simple_modules(matrix_algebra(2))] == [2]
    assert [v.dim for v in simple_modules(power_algebra(2))] == [1, 1]
    a, _ = m2xm3
    simples = simple_modules(a)
    assert [v.dim for v in simples] == [2, 3]
    for i, v in enumerate(simples):
        for j, u in enumerate(simples):
            assert hom_basis(v, u).dim == (i == j)


def test_decompose(m2, pool):
    a, _, col = m2
    assert multiplicities(regular_module(a)) == (2,)
    assert decompose(col).multiplicities == (1,)
    inst = pool[4]
    x = random_semisimple_module(inst.algebra, random.Random(0), 8)
    d = decompose(x)
    assert sum(m * v.dim for m, v in zip(d.multiplicities, d.simples)) == x.dim
    src = direct_sum_modules([v for v, k in zip(d.simples, d.multiplicities) for _ in range(k)]).module
    assert is_module_map(d.isomorphism, src, x)


def test_direct_sum_idempotents(m2):
    _, _, col = m2
    ds = direct_sum_modules([col, zero_module(col.algebra), col])
    assert ds.module.dim == 4
    total = sum((i @ p for i, p in zip(ds.inclusions, ds.projections)), Matrix.zeros(QQ, 4, 4))
    assert total == Matrix.identity(QQ, 4)
    assert direct_sum_modules([col, zero_module(col.algebra)]).module.dim == col.dim


def test_dual_module_dimensions(m2, pool):
    a, _, col = m2
    assert dual_module(col).dim == 2
    assert dual_module(zero_module(a)).dim == 0
    assert validate_module(dual_module(col).module) == []
    for inst in pool[:4]:
        x = random_semisimple_module(inst.algebra, random.Random(1), 6)
        assert dual_module(x).dim == x.dim


def test_dual_of_regular_is_right_regular(m2):
    a, _, _ = m2
    D = dual_module(regular_module(a))
    # a -> (m -> m a) is an isomorphism of right modules A -> A*
    phi = Matrix.from_columns(QQ, [D.coordinates(a.right_matrix(a.basis_vector(i))) for i in range(a.dim)], D.dim)
    assert rank(phi) == a.dim
    assert is_module_map(phi, right_regular_module(a), D.module)


def test_dual_action_formula(m2):
    a, _, col = m2
    D = dual_module(col)
    rng = random.Random(2)
    for _ in range(5):
        coords = [QQ(rng.randint(-2, 2)) for _ in range(D.dim)]
        x = a.random_element(rng)
        f = dual_element(col, coords)
        fa = dual_element(col, D.module.act(x).apply(coords))
        v = tuple(QQ(rng.randint(-2, 2)) for _ in range(col.dim))
        assert fa.apply(v) == a.multiply(f.apply(v), x)


def test_tensor_examples(m2):
    a, _, col = m2
    rows = dual_module(col).module
    assert tensor_over_A(rows, col).dim == 1
    assert tensor_over_A(right_regular_module(a), col).dim == col.dim
    assert tensor_over_A(rows, zero_module(a)).dim == 0


@pytest.mark.parametrize("i", range(6))
def test_tensor_space_invariants(pool, i):
    inst = pool[i]
    rng = random.Random(i)
    simples = simple_modules(inst.algebra)
    x = dual_module(random_semisimple_module(inst.algebra, rng, 5, simples)).module
    y = random_semisimple_module(inst.algebra, rng, 5, simples)
    t = tensor_over_A(x, y)
    assert t.pi @ t.iota == Matrix.identity(QQ, t.dim)
    for rel in t.balanced_relations():
        assert not any(t.project(rel))
    assert rank(t.pi) == t.dim


def test_tensor_unit_constraint(m2):
    a, _, col = m2
    t = tensor_over_A(right_regular_module(a), col)
    # u (x) y -> y is an isomorphism A (x)_A Y -> Y
    iso = Matrix.from_columns(QQ, [col.act(t.representative(k)[0]).apply(t.representative(k)[1]) for k in range(t.dim)], col.dim)
    assert rank(iso) == col.dim


def test_ev_map(m2):
    a, _, col = m2
    e = ev_map(col)
    assert e.shape == (1, 1) and rank(e) == 1  # surjects onto A/[A,A] = K
    e = ev_map(regular_module(a))
    assert rank(e) == 1
    assert ev_map(zero_module(a)).ncols == 0


def test_psi_examples(m2):
    a, _, col = m2
    for p in (col, regular_module(a)):
        P, Pinv = psi_map(p, p), psi_inverse(p, p)
        assert P @ Pinv == Matrix.identity(QQ, P.nrows)
        assert dual_basis_from_psi(p).check(p)


def test_psi_singular_for_non_projective():
    a = truncated_polynomial_algebra(2)
    F = a.field
    s = LeftModule(a, [Matrix.identity(F, 1), Matrix.zeros(F, 1, 1)], 1)
    with pytest.raises(SingularPsiError):
        psi_inverse(s, s)
    with pytest.raises(NotProjectiveError):
        dual_basis(s)


def test_column_dual_basis_of_matrix_units(m2):
    a, _, col = m2
    # f_1(e_k) = E_k1, f_2 = 0; then x = f_1(x).e_1
    f1 = Matrix.from_columns(QQ, [a.basis_vector(0), a.basis_vector(2)], 4)
    db = DualBasis((f1, Matrix.zeros(QQ, 4, 2)), ((QQ(1), QQ(0)), (QQ(0), QQ(1))))
    assert db.check(col)
    assert is_module_map(f1, col, regular_module(a))


@pytest.mark.parametrize("seed", range(3))
def test_dual_basis_identity(pool, seed):
    inst = pool[seed + 2]
    p = random_semisimple_module(inst.algebra, random.Random(seed), 7)
    db = dual_basis(p, seed)
    assert db.check(p)
    assert dual_basis(p, seed + 11).check(p)
    assert dual_basis_from_psi(p).check(p)


def test_free_module_dual_basis(m2):
    a, _, _ = m2
    f = free_module(a, 2)
    assert dual_basis(f).check(f)


@pytest.mark.parametrize("i", range(5))
def test_psi_composition(pool, i):
    # Psi(f (x) m) o Psi(g (x) n) = Psi(g (x) f(n).m)
    inst = pool[i]
    a = inst.algebra
    rng = random.Random(100 + i)
    simples = simple_modules(a)
    p, n, m = (random_semisimple_module(a, rng, 5, simples) for _ in range(3))
    Dp, Dn = dual_module(p), dual_module(n)
    g = [QQ(rng.randint(-2, 2)) for _ in range(Dp.dim)]
    f = [QQ(rng.randint(-2, 2)) for _ in range(Dn.dim)]
    nv = tuple(QQ(rng.randint(-2, 2)) for _ in range(n.dim))
    mv = tuple(QQ(rng.randint(-2, 2)) for _ in range(m.dim))
    h_pn, h_nm, h_pm = hom_basis(p, n), hom_basis(n, m), hom_basis(p, m)
    t_pn, t_nm, t_pm = tensor_over_A(Dp.module, n), tensor_over_A(Dn.module, m), tensor_over_A(Dp.module, m)
    first = h_pn.element(psi_map(p, n).apply(t_pn.pure(g, nv)))
    second = h_nm.element(psi_map(n, m).apply(t_nm.pure(f, mv)))
    fn_m = m.act(dual_element(n, f).apply(nv)).apply(mv)
    composite = h_pm.element(psi_map(p, m).apply(t_pm.pure(g, fn_m)))
    assert second @ first == composite


@pytest.mark.parametrize("i", range(5))
def test_psi_natural_in_target(pool, i):
    inst = pool[i]
    a = inst.algebra
    rng = random.Random(200 + i)
    simples = simple_modules(a)
    p, m, n = (random_semisimple_module(a, rng, 5, simples) for _ in range(3))
    H = hom_basis(m, n)
    h = H.element([QQ(rng.randint(-2, 2)) for _ in range(H.dim)])
    Dp = dual_module(p)
    t_m, t_n = tensor_over_A(Dp.module, m), tensor_over_A(Dp.module, n)
    lift = induced_map(t_m, t_n, Matrix.identity(QQ, Dp.dim), h)
    h_pm, h_pn = hom_basis(p, m), hom_basis(p, n)
    for k in range(t_m.dim):
        e = tuple(QQ(int(j == k)) for j in range(t_m.dim))
        lhs = psi_map(p, n).apply(lift.apply(e))
        rhs = h_pn.coordinates(h @ h_pm.element(psi_map(p, m).apply(e)))
        assert lhs == rhs


def test_psi_dimension_matches_hom(m2xm3):
    a, _ = m2xm3
    rng = random.Random(5)
    x = random_semisimple_module(a, rng, 8)
    y = random_semisimple_module(a, rng, 8)
    assert tensor_over_A(dual_module(x).module, y).dim == hom_basis(x, y).dim


def test_module_over_product_requires_all_actions():
    a = product_algebra(matrix_algebra(2), power_algebra(1))
    with pytest.raises(ValueError):
        LeftModule(a, [Matrix.identity(QQ, 2)] * 3, 2)
