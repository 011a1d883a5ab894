"""Exhaustive sweeps, excluded by default; run with ``pytest -m slow``."""

import random

import pytest

from congrkit.congruence_fn import class_key_fn, principal_fn
from congrkit.matrices import MatrixMonoid
from congrkit.matrix_product import matrix_product_monoid, principal_fmfn
from congrkit.oracle import build_table, congruence_closure, partition_from_key, predicate_matches

pytestmark = pytest.mark.slow


def test_full_matrix_product_sweep():
    table = build_table(matrix_product_monoid(MatrixMonoid(2, 2), MatrixMonoid(2, 2)))
    els = table.elements
    bad = []
    for i in range(table.size):
        for j in range(i, table.size):
            desc = principal_fmfn(els[i], els[j])
            if partition_from_key(els, desc.key) != congruence_closure(table, [(i, j)]):
                bad.append((i, j))
    assert bad == []


def test_predicate_sweep_on_matrix_product_sample():
    table = build_table(matrix_product_monoid(MatrixMonoid(2, 2), MatrixMonoid(2, 2)))
    els = table.elements
    rng = random.Random(11)
    for _ in range(5000):
        i, j = rng.randrange(table.size), rng.randrange(table.size)
        desc = principal_fmfn(els[i], els[j])
        assert predicate_matches(els, desc.related, congruence_closure(table, [(i, j)])) is None


def test_full_principal_sweep_f3_gf2():
    table = build_table(MatrixMonoid(2, 3))
    els = table.elements
    for i in range(table.size):
        for j in range(i + 1, table.size, 7):
            theta = principal_fn(els[i], els[j])
            part = partition_from_key(els, lambda z: class_key_fn(theta, z))
            assert part == congruence_closure(table, [(i, j)])
