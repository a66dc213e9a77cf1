from __future__ import annotations

import random

import pytest

from frobcy.algebra import (
    central_primitive_idempotents,
    commutator_subspace,
    cyclic_group_table,
    ground_algebra,
    group_algebra,
    matrix_algebra,
    power_algebra,
    product_algebra,
)
from frobcy.errors import DimensionError, FormError, NotSplitError
from frobcy.forms import (
    FrobeniusForm,
    extract_block_weights,
    is_frobenius,
    is_symmetric,
    matrix_trace_form,
    pairing_gram,
    symmetry_witness,
    twist_form,
    weighted_trace_form,
)
from frobcy.fuzz import random_instance
from frobcy.linalg import GF, QQ, Matrix, determinant, rank


def test_gram_of_matrix_trace():
    a = matrix_algebra(2)
    g = pairing_gram(matrix_trace_form(a, 2))
    # tr(E_ab E_cd) = [b == c][a == d]: the transposition permutation on matrix units
    expected = Matrix(QQ, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert g == expected
    assert determinant(g) in (1, -1)


def test_gram_of_group_algebra_form(f2z2):
    _, form, _, _ = f2z2
    assert pairing_gram(form) == Matrix.identity(GF(2), 2)
    assert is_frobenius(form) and is_symmetric(form)


def test_zero_form():
    a = matrix_algebra(2)
    zero = FrobeniusForm(a, [0] * 4)
    assert pairing_gram(zero).is_zero()
    assert not is_frobenius(zero)


def test_matrix_trace_is_symmetric_frobenius():
    a = matrix_algebra(2)
    form = matrix_trace_form(a, 2)
    assert is_frobenius(form) and is_symmetric(form)


def test_dual_of_a_single_matrix_unit_is_degenerate():
    # lambda(x) = x_12 only sees E_1b E_b2, so its Gram has rank 2 on M_2
    a = matrix_algebra(2)
    form = FrobeniusForm(a, [0, 1, 0, 0])
    assert rank(pairing_gram(form)) == 2
    assert not is_frobenius(form)
    assert not is_symmetric(form)


def test_non_symmetric_frobenius_form():
    a = matrix_algebra(2)
    form = FrobeniusForm(a, [1, 1, 0, 1])  # trace + x_12
    assert is_frobenius(form)
    assert not is_symmetric(form)
    i, j = symmetry_witness(form)
    ei, ej = a.basis_vector(i), a.basis_vector(j)
    assert form(a.multiply(ei, ej)) != form(a.multiply(ej, ei))


def test_form_length_checked():
    with pytest.raises(DimensionError):
        FrobeniusForm(matrix_algebra(2), [1, 0, 1])


def test_weighted_trace_examples():
    a = matrix_algebra(2)
    assert weighted_trace_form(a, [1]) == matrix_trace_form(a, 2)
    b = product_algebra(matrix_algebra(2), matrix_algebra(3))
    assert weighted_trace_form(b, [2, 5])(b.unit) == 19
    c = power_algebra(2)
    form = weighted_trace_form(c, [1, -1])
    assert is_frobenius(form)
    g = pairing_gram(form)
    assert g[0, 1] == g[1, 0] == 0
    assert sorted([g[0, 0], g[1, 1]]) == [-1, 1]  # diag(1, -1) up to block order


def test_zero_weight_rejected():
    with pytest.raises(FormError):
        weighted_trace_form(power_algebra(2), [1, 0])
    with pytest.raises(FormError):
        weighted_trace_form(power_algebra(2), [1])


@pytest.mark.parametrize("seed", range(100))
def test_weights_round_trip(seed):
    rng = random.Random(seed)
    F = QQ if seed % 4 else GF(5)
    inst = random_instance(rng, F)
    wd = central_primitive_idempotents(inst.algebra)
    weights = extract_block_weights(inst.form, wd)
    assert sorted(weights, key=F.sort_key) == sorted(inst.weights, key=F.sort_key)
    assert weighted_trace_form(inst.algebra, weights, wd) == inst.form
    assert is_frobenius(inst.form) and is_symmetric(inst.form)


@pytest.mark.parametrize("seed", range(20))
def test_symmetry_iff_commutators_vanish(seed):
    rng = random.Random(seed)
    a = product_algebra(matrix_algebra(2), ground_algebra())
    form = FrobeniusForm(a, [rng.randint(-2, 2) if rng.random() < 0.6 else 0 for _ in range(a.dim)])
    basis, _ = commutator_subspace(a)
    vanishes = all(form(c) == 0 for c in basis.columns())
    assert is_symmetric(form) == vanishes


def test_twists():
    a = matrix_algebra(2)
    tr = matrix_trace_form(a, 2)
    assert twist_form(tr, a.unit) == tr
    assert extract_block_weights(twist_form(tr, a.scale(QQ(3), a.unit))) == (3,)
    b = product_algebra(matrix_algebra(2), matrix_algebra(3))
    form = weighted_trace_form(b, [2, 5])
    wd = central_primitive_idempotents(b)
    z = b.add(b.scale(QQ(2), wd.idempotents[0]), b.scale(QQ(-1), wd.idempotents[1]))
    z2 = b.add(b.scale(QQ(7), wd.idempotents[0]), b.scale(QQ(1) / 3, wd.idempotents[1]))
    assert extract_block_weights(twist_form(form, z)) == (4, -5)
    assert twist_form(twist_form(form, z), z2) == twist_form(form, b.multiply(z, z2))
    assert twist_form(twist_form(form, z), b.inverse_element(z)) == form


def test_twist_requires_central_unit():
    a = matrix_algebra(2)
    tr = matrix_trace_form(a, 2)
    with pytest.raises(FormError):
        twist_form(tr, (1, 1, 0, 1))  # invertible but not central
    with pytest.raises(FormError):
        twist_form(tr, (0, 0, 0, 0))


def test_extract_rejects_inexpressible_form():
    a = power_algebra(2)
    with pytest.raises(FormError):
        extract_block_weights(FrobeniusForm(a, [1, 0]))


def test_group_algebra_form_over_q():
    a = group_algebra(cyclic_group_table(2))
    delta = FrobeniusForm(a, [1, 0])
    assert is_frobenius(delta) and is_symmetric(delta)
    assert extract_block_weights(delta) == (QQ(1) / 2, QQ(1) / 2)


def test_non_split_group_algebra_refused():
    # Q[Z_3] has the block Q(zeta_3), which is not split over Q
    a = group_algebra(cyclic_group_table(3))
    with pytest.raises(NotSplitError):
        extract_block_weights(FrobeniusForm(a, [1, 0, 0]))
