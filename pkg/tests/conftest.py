from __future__ import annotations

import random
from pathlib import Path

import pytest

from frobcy.algebra import cyclic_group_table, group_algebra, matrix_algebra, product_algebra
from frobcy.forms import FrobeniusForm, matrix_trace_form, weighted_trace_form
from frobcy.fuzz import instance_pool
from frobcy.linalg import GF, QQ, Matrix
from frobcy.modules import LeftModule

DATA = Path(__file__).parent / "data"

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def column_module(a, n: int = 2) -> LeftModule:
    """K^n over M_n(K) in the matrix-unit basis."""
    F = a.field
    acts = []
    for i in range(n * n):
        r0, c0 = divmod(i, n)
        acts.append(Matrix(F, [[1 if (r, c) == (r0, c0) else 0 for c in range(n)] for r in range(n)]))
    return LeftModule(a, acts, n, name="column")


@pytest.fixture(scope="session")
def m2():
    a = matrix_algebra(2)
    return a, matrix_trace_form(a, 2), column_module(a)


@pytest.fixture(scope="session")
def m2xm3():
    a = product_algebra(matrix_algebra(2), matrix_algebra(3))
    return a, weighted_trace_form(a, [2, 5])


def f2z2_data():
    """F_2[Z_2] with lambda(g) = delta_{g,e}, the trivial module S and the
    projective P on which g acts by [[1, 1], [0, 1]]."""
    F = GF(2)
    a = group_algebra(cyclic_group_table(2), F, name="F2[Z2]")
    s = LeftModule(a, [Matrix(F, [[1]]), Matrix(F, [[1]])], 1, name="S")
    p = LeftModule(a, [Matrix.identity(F, 2), Matrix(F, [[1, 1], [0, 1]])], 2, name="P")
    return a, FrobeniusForm(a, [1, 0], name="delta_e"), s, p


@pytest.fixture(scope="session")
def f2z2():
    return f2z2_data()


@pytest.fixture(scope="session")
def pool():
    return instance_pool(0, QQ)


@pytest.fixture(scope="session")
def pool_f3():
    return instance_pool(0, GF(3))


@pytest.fixture
def rng(request):
    return random.Random(request.node.name)
