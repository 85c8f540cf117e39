"""Shared fixtures and independent oracles.

The dense-matrix oracle here deliberately avoids the library's sparse solver
and map-composition code paths: coboundary matrices are assembled entrywise
from the differential's raw coefficients, and ranks come from a plain dense
Gaussian elimination over raw Fractions / residues.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dgdeform import GF, QQ, Complex, FieldSpec, GradedMap, GradedModule
from dgdeform.cochain import _delta_matrix, cochain_basis
from dgdeform.linalg import nullspace_sparse


@pytest.fixture
def base5():
    from dgdeform import base_complex

    return base_complex(5, QQ)


# -- dense brute-force oracle --------------------------------------------------


def raw_d_coefficients(cx: Complex) -> dict[tuple[int, int], object]:
    """(target index, source index) -> raw coefficient of the differential."""
    return {(i, j): c.value for j, i, c in cx.d.entries()}


def dense_delta_matrix(cx: Complex, p: int):
    """Dense matrix of delta^p: rows C^{p+1} pairs, columns C^p pairs.

    Built directly from delta(E_{ij}) = sum_k d[k,i] E_{kj}
    - (-1)^p sum_l d[j,l] E_{il}, with no graded-map composition involved.
    """
    module = cx.module
    dcoef = raw_d_coefficients(cx)
    zero = Fraction(0) if cx.field.modulus is None else 0
    pairs_p = [
        (j, i)
        for j in range(module.dim)
        for i in range(module.dim)
        if module.degree_of(i) == module.degree_of(j) - p
    ]
    pairs_q = [
        (j, i)
        for j in range(module.dim)
        for i in range(module.dim)
        if module.degree_of(i) == module.degree_of(j) - p - 1
    ]
    row_of = {pair: r for r, pair in enumerate(pairs_q)}
    sign = 1 if p % 2 else -1  # coefficient of the f d term
    mat = [[zero] * len(pairs_p) for _ in pairs_q]
    for c, (j, i) in enumerate(pairs_p):
        for (k, ii), v in dcoef.items():
            if ii == i:  # d o E_{ij} contributes E_{kj}
                mat[row_of[(j, k)]][c] += v
        for (ii, l), v in dcoef.items():
            if ii == j:  # E_{ij} o d contributes E_{il}
                mat[row_of[(l, i)]][c] += sign * v
    if cx.field.modulus is not None:
        q = cx.field.modulus
        mat = [[x % q for x in row] for row in mat]
    return pairs_p, pairs_q, mat


def dense_rank(mat, modulus=None) -> int:
    """Rank by plain dense Gaussian elimination over Q or GF(modulus)."""
    mat = [row[:] for row in mat]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            v = mat[r][col] % modulus if modulus else mat[r][col]
            if v:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        for r in range(nrows):
            if r == rank:
                continue
            v = mat[r][col] % modulus if modulus else mat[r][col]
            if not v:
                continue
            if modulus:
                factor = v * pow(pv, modulus - 2, modulus) % modulus
                mat[r] = [(a - factor * b) % modulus for a, b in zip(mat[r], mat[rank])]
            else:
                factor = Fraction(v, pv)
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def oracle_cohomology_dims(cx: Complex, p: int) -> tuple[int, int, int]:
    """(dim cocycles, dim coboundaries, dim H) from the dense oracle."""
    pairs_p, _, mat_p = dense_delta_matrix(cx, p)
    _, _, mat_prev = dense_delta_matrix(cx, p - 1)
    q = cx.field.modulus
    cocycles = len(pairs_p) - dense_rank(mat_p, q)
    coboundaries = dense_rank(mat_prev, q)
    return cocycles, coboundaries, cocycles - coboundaries


# -- random instances -----------------------------------------------------------


def random_scalar(rng: random.Random, field: FieldSpec, nonzero=False):
    if field.modulus is None:
        num = rng.randint(-4, 4)
        if nonzero and num == 0:
            num = 1
        return field.scalar(num, rng.randint(1, 3))
    v = rng.randint(1 if nonzero else 0, field.modulus - 1)
    return field.scalar(v)


def random_complex(
    rng: random.Random,
    field: FieldSpec,
    total_dim: int,
    acyclic: bool = False,
    singleton_degrees=None,
    name: str = "R",
) -> Complex:
    """A random direct sum of two-term exact pairs and zero-differential
    singletons; d^2 = 0 holds by construction."""
    basis: list[tuple[str, int]] = []
    entries = []
    count = 0
    while count < total_dim:
        if count + 1 < total_dim and (acyclic or rng.random() < 0.6):
            deg = rng.randint(-2, 4)
            a, b = f"e{count}", f"e{count + 1}"
            basis.append((a, deg))
            basis.append((b, deg - 1))
            entries.append((a, b, random_scalar(rng, field, nonzero=True)))
            count += 2
        else:
            pool = singleton_degrees if singleton_degrees is not None else range(-2, 5)
            basis.append((f"e{count}", rng.choice(list(pool))))
            count += 1
    module = GradedModule(name, field, basis)
    return Complex(module, GradedMap.from_entries(module, -1, entries))


def random_cochain(rng: random.Random, cx: Complex, p: int, density: float = 0.5):
    """A random p-cochain (possibly zero) on the complex."""
    pairs = cochain_basis(cx.module, cx.module, p)
    entries = []
    for j, i in pairs:
        if rng.random() < density:
            c = random_scalar(rng, cx.field)
            if c:
                entries.append((cx.module.name_of(j), cx.module.name_of(i), c))
    return GradedMap.from_entries(cx.module, -p, entries)


def random_cocycle(rng: random.Random, cx: Complex, p: int = 1):
    """A random combination of the canonical cocycle basis in C^p."""
    dom, _, rows = _delta_matrix(cx, cx, p)
    kernel = nullspace_sparse(rows, len(dom), cx.field)
    entries = []
    for vec in kernel:
        c = random_scalar(rng, cx.field)
        if not c:
            continue
        for col, v in vec.items():
            j, i = dom[col]
            entries.append((cx.module.name_of(j), cx.module.name_of(i), c * v))
    return GradedMap.from_entries(cx.module, -p, entries)


def random_document(rng: random.Random):
    """A random well-formed .dgm document (no deformation block)."""
    from dgdeform import Document

    field = rng.choice([QQ, GF(2), GF(5), GF(7)])
    dim = rng.randint(1, 8)
    module = GradedModule(
        rng.choice(["V", "M", "W"]), field,
        [(f"e{i}", rng.randint(-3, 3)) for i in range(dim)],
    )
    maps = {}
    for m_idx in range(rng.randint(0, 3)):
        degree = rng.randint(-2, 2)
        entries = []
        for j in range(dim):
            for i in range(dim):
                if module.degree_of(i) != module.degree_of(j) + degree:
                    continue
                if rng.random() < 0.4:
                    c = random_scalar(rng, field)
                    if c:
                        entries.append((module.name_of(j), module.name_of(i), c))
        maps[f"m{m_idx}"] = GradedMap.from_entries(module, degree, entries)
    return Document(field, module, maps, [])
