"""Seeded random instances and the fuzz report.

Instance ``i`` of a run with seed ``s`` draws everything from
``random.Random(f"{s}:{i}")``, so records do not depend on each other and a
run is reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Algebra, central_primitive_idempotents, ground_algebra, matrix_algebra, product_algebra
from .forms import FrobeniusForm, extract_block_weights, is_frobenius, is_symmetric, weighted_trace_form
from .linalg import QQ, Field, random_invertible
from .modules import (
    LeftModule,
    hom_basis,
    multiplicities,
    random_endomorphism,
    random_semisimple_module,
    simple_modules,
    tensor_over_A,
    dual_module,
)
from .report import Report
from .trace import check_additivity, check_symmetry, hs_trace, hs_trace_via_dual_basis, pairing_nondegenerate

MAX_BLOCKS = 3
MAX_BLOCK_DIM = 3
WEIGHT_BOUND = 7
BASIS_BOUND = 3


@dataclass(eq=False)
class Instance:
    algebra: Algebra  # basis-changed: the block structure is hidden
    form: FrobeniusForm
    block_dims: tuple[int, ...]
    weights: tuple
    seed: str


def random_weight(F: Field, rng: random.Random):
    """Nonzero ``p/q`` with ``|p|, q <= 7`` (reduced mod p over F_p)."""
    while True:
        num, den = rng.randint(-WEIGHT_BOUND, WEIGHT_BOUND), rng.randint(1, WEIGHT_BOUND)
        if F.characteristic and den % F.characteristic == 0:
            continue
        w = F(num) / F(den)
        if w:
            return w


def random_block_dims(F: Field, rng: random.Random) -> tuple[int, ...]:
    # over F_p a block M_n with p | n has a degenerate regular trace form; leave those out
    allowed = [n for n in range(1, MAX_BLOCK_DIM + 1) if F.characteristic == 0 or n % F.characteristic]
    r = rng.randint(1, MAX_BLOCKS)
    return tuple(sorted((rng.choice(allowed) for _ in range(r)), reverse=True))


def split_semisimple(dims, F: Field = QQ) -> Algebra:
    blocks = [matrix_algebra(n, F) if n > 1 else ground_algebra(F) for n in dims]
    a = blocks[0]
    for b in blocks[1:]:
        a = product_algebra(a, b)
    return a


def random_instance(rng: random.Random, F: Field = QQ, label: str = "", dims: tuple[int, ...] | None = None) -> Instance:
    """Random weights on ``prod_i M_{n_i}`` in a random basis (``dims`` random unless given)."""
    dims = dims if dims is not None else random_block_dims(F, rng)
    base = split_semisimple(dims, F)
    wd = central_primitive_idempotents(base)
    weights = tuple(random_weight(F, rng) for _ in dims)
    form = weighted_trace_form(base, weights, wd)
    g = random_invertible(base.dim, rng.randrange(2**32), F, bound=BASIS_BOUND)
    hidden = form.transport(g)
    return Instance(hidden.algebra, hidden, tuple(wd.block_dims), weights, label)


def random_module_pair(inst: Instance, rng: random.Random, max_dim: int) -> tuple[LeftModule, LeftModule]:
    simples = simple_modules(inst.algebra)
    return (
        random_semisimple_module(inst.algebra, rng, max_dim, simples),
        random_semisimple_module(inst.algebra, rng, max_dim, simples),
    )


def fuzz_instance(seed: int, index: int, F: Field = QQ, max_dim: int = 8) -> dict:
    """One record: the instance parameters and a verdict per identity."""
    label = f"{seed}:{index}"
    rng = random.Random(label)
    inst = random_instance(rng, F, label)
    a, form = inst.algebra, inst.form
    checks: dict[str, bool] = {}
    checks["form-symmetric"] = is_symmetric(form)
    checks["form-frobenius"] = is_frobenius(form)
    checks["weights-recovered"] = sorted(extract_block_weights(form), key=F.sort_key) == sorted(inst.weights, key=F.sort_key)
    simples = simple_modules(a)
    got = sorted((v.dim, F.sort_key(hs_trace(v, form, v.identity()))) for v in simples)
    checks["simple-weights"] = got == sorted((n, F.sort_key(w)) for n, w in zip(inst.block_dims, inst.weights))
    x, y = random_module_pair(inst, rng, max_dim)
    f = random_endomorphism(x, rng)
    checks["oracle-agrees"] = hs_trace(x, form, f) == hs_trace_via_dual_basis(x, form, f)
    hxy, hyx = hom_basis(x, y), hom_basis(y, x)
    phi = hxy.element([F.random_element(rng) for _ in range(hxy.dim)])
    psi = hyx.element([F.random_element(rng) for _ in range(hyx.dim)])
    checks["symmetry"] = check_symmetry(x, y, form, phi, psi)
    v = rng.choice(simples)  # a small second summand keeps the direct sum cheap
    checks["additivity"] = check_additivity(x, v, f, random_endomorphism(v, rng), form)
    checks["pairing-nondegenerate"] = pairing_nondegenerate(x, y, form)
    mx, my = multiplicities(x, simples), multiplicities(y, simples)
    # X* has the dual simples with the multiplicities of X, and V_i* (x)_A V_j is K or 0
    xr = dual_module(x).module
    expected_dim = sum(p * q for p, q in zip(mx, my))
    checks["tensor-dimension"] = tensor_over_A(xr, y).dim == expected_dim
    return {
        "instance": label,
        "block_dims": list(inst.block_dims),
        "weights": [F.format(w) for w in inst.weights],
        "algebra_dim": a.dim,
        "module_dims": [x.dim, y.dim],
        "checks": checks,
        "verdict": all(checks.values()),
    }


def fuzz(seed: int, count: int, field: Field = QQ, max_dim: int = 8) -> Report:
    rep = Report("fuzz", seed, count=count, field=field.characteristic, max_dim=max_dim)
    records = [fuzz_instance(seed, i, field, max_dim) for i in range(count)]
    rep.data["instances"] = records
    names = sorted({k for r in records for k in r["checks"]})
    for name in names:
        bad = [r["instance"] for r in records if not r["checks"].get(name, True)]
        rep.add(name, not bad, {"failing_instances": bad} if bad else None, passed=count - len(bad))
    return rep


POOL_SHAPES = ((2, 1), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1), (3,), (2,), (3, 2))


def instance_pool(seed: int = 0, F: Field = QQ, shapes=POOL_SHAPES) -> list[Instance]:
    """One hidden-basis instance per block shape (shapes with ``p | n_i`` skipped over F_p)."""
    p = F.characteristic
    out = []
    for i, dims in enumerate(shapes):
        if p and any(n % p == 0 for n in dims):
            continue
        label = f"pool:{seed}:{i}"
        out.append(random_instance(random.Random(label), F, label, dims))
    return out
