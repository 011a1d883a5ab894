import random

import pytest
from hypothesis import given, settings, strategies as st

from congrkit.matrices import (
    MatrixMonoid,
    all_matrices,
    Matrix,
    general_linear,
    inverse,
    identity_matrix,
    parse_matrix,
    partial_identity,
    reduce_to_partial_identity,
    zero_matrix,
)
from congrkit.matrix_product import (
    associated_normal_subgroup,
    coordinate_kind,
    format_matrix_pair,
    matrix_product_monoid,
    parse_matrix_pair_element,
    parse_matrix_product,
    principal_fmfn,
)
from congrkit.oracle import build_table, congruence_closure, partition_from_key, predicate_matches


def table_for(p, m, n):
    return build_table(matrix_product_monoid(MatrixMonoid(p, m), MatrixMonoid(p, n)))


def check(table, x, y):
    desc = principal_fmfn(x, y)
    i, j = table.index[x], table.index[y]
    oracle = congruence_closure(table, [(i, j)])
    assert partition_from_key(table.elements, desc.key) == oracle
    assert predicate_matches(table.elements, desc.related, oracle) is None
    return desc


def test_scalar_scalar_gf3_units():
    table = table_for(3, 1, 1)
    one, two = parse_matrix("1", 3), parse_matrix("2", 3)
    desc = check(table, (one, one), (two, two))
    assert desc.case == "scalar-scalar"
    for a, b in table.elements:
        assert desc.related((a, b), (a.scale(2), b.scale(2)))
    assert not desc.related((one, one), (one, two))


def test_rees_case():
    table = table_for(2, 1, 2)
    x = (identity_matrix(2, 1), partial_identity(2, 2, 1))
    y = (zero_matrix(2, 1), parse_matrix("0,0;1,0", 2))
    desc = check(table, x, y)
    assert desc.case == "nonH-nonH"


def test_every_case_on_small_products():
    seen = set()
    for p, m, n in ((3, 1, 1), (2, 1, 2)):
        table = table_for(p, m, n)
        rng = random.Random(p + n)
        for _ in range(120):
            x, y = rng.choice(table.elements), rng.choice(table.elements)
            seen.add(check(table, x, y).case)
    assert {"scalar-scalar", "nonH-nonH"} <= seen


def test_kinds():
    e = identity_matrix(3, 2)
    assert coordinate_kind(e, e.scale(2)) == "scalar"
    assert coordinate_kind(e, parse_matrix("0,1;1,0", 3)) == "H"
    assert coordinate_kind(e, zero_matrix(3, 2)) == "nonH"


def test_associated_subgroup_trivial_for_equal_pairs():
    x = (identity_matrix(2, 2), partial_identity(2, 2, 1))
    assert associated_normal_subgroup(x, x) == {(identity_matrix(2, 2), identity_matrix(2, 1))}


def test_associated_subgroup_swap_pair():
    e, s = identity_matrix(2, 2), parse_matrix("0,1;1,0", 2)
    group = associated_normal_subgroup((e, e), (s, s))
    # GL(2,2) is S3; the closure is the pairs of equal sign
    odd = {g for g in general_linear(2, 2) if g * g == e and g != e}
    assert len(group) == 18
    assert all((a in odd) == (b in odd) for a, b in group)


def test_associated_subgroup_needs_h():
    with pytest.raises(ValueError):
        associated_normal_subgroup((identity_matrix(2, 2),) * 2, (zero_matrix(2, 2), identity_matrix(2, 2)))


def block_diagonal(g, n):
    r = g.n
    rows = tuple(
        tuple(g.rows[i][j] if i < r and j < r else int(i == j and i >= r) for j in range(n)) for i in range(n)
    )
    return Matrix(g.p, rows)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_reduction_invariance(data):
    mats = sorted(all_matrices(2, 2), key=str)
    gl = sorted(general_linear(2, 2), key=str)
    k = data.draw(st.sampled_from([a for a in mats if a.rank]))
    k2 = data.draw(st.sampled_from([b for b in mats if coordinate_kind(k, b) != "nonH"]))
    l, l2 = identity_matrix(2, 2), data.draw(st.sampled_from(gl))
    base = associated_normal_subgroup((k, l), (k2, l2))
    s1, s3 = reduce_to_partial_identity(k)
    # twisting by a block-diagonal unit keeps the reduction valid
    g = data.draw(st.sampled_from(sorted(general_linear(2, k.rank), key=str)))
    t = block_diagonal(g, 2)
    twisted = ((t * s1, s3 * inverse(t)), reduce_to_partial_identity(l))
    assert associated_normal_subgroup((k, l), (k2, l2), twisted) == base


def test_parsing_and_format():
    mon = parse_matrix_product("F1@GF(3)xF2@GF(3)")
    x = parse_matrix_pair_element("([2],[1,0;0,1])", mon)
    assert format_matrix_pair(x) == "([2],[1,0;0,1])"
    with pytest.raises(ValueError):
        parse_matrix_product("F1@GF(2)xF1@GF(3)")
