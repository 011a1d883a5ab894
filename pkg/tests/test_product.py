import pytest

from congrkit.groups import NormalSubgroupProduct
from congrkit.oracle import build_table, congruence_closure, partition_from_key
from congrkit.product import (
    BothH,
    EqualCoordinate,
    OneSidedH,
    ReesProduct,
    alternative_equal_related,
    parse_product,
    parse_product_element,
    principal_product,
    theta_slice,
)
from congrkit.congruence_qn import CongruenceQn, related_qn
from congrkit.transformations import enumerate_elements, parse_family

T2T2 = parse_product("T2xT2")


def el(text, monoid=T2T2):
    return parse_product_element(text, monoid)


def oracle_matches(monoid, x, y):
    table = build_table(monoid)
    desc = principal_product(x, y)
    oracle = congruence_closure(table, [(table.index[x], table.index[y])])
    return partition_from_key(table.elements, desc.key) == oracle, oracle


def test_t1_factor_rejected():
    with pytest.raises(ValueError):
        parse_product("T1xT2")


def test_parity_case():
    x, y = el("([1,2],[1,2])"), el("([2,1],[2,1])")
    desc = principal_product(x, y)
    assert isinstance(desc, BothH) and desc.group == NormalSubgroupProduct.parity_diagonal(2, 2)
    ok, oracle = oracle_matches(T2T2, x, y)
    assert ok and len(set(oracle)) == 5
    assert desc.related(el("([1,2],[2,1])"), el("([2,1],[1,2])"))
    assert not desc.related(el("([1,2],[1,2])"), el("([1,2],[2,1])"))


def test_one_sided_case():
    x, y = el("([1,1],[1,2])"), el("([2,2],[2,1])")
    desc = principal_product(x, y)
    assert isinstance(desc, OneSidedH)
    ok, oracle = oracle_matches(T2T2, x, y)
    assert ok
    # constants x permutations, constants x constants, and singletons above
    assert sorted(oracle.count(label) for label in set(oracle)) == [1] * 8 + [4, 4]


def test_rees_case_mixed_sizes():
    monoid = parse_product("T3xT2")
    x, y = el("([1,1,1],[1,1])", monoid), el("([1,1,2],[2,2])", monoid)
    desc = principal_product(x, y)
    assert isinstance(desc, ReesProduct) and desc.corners == ((1, 1), (2, 1))
    assert oracle_matches(monoid, x, y)[0]


def test_equal_coordinate_case_and_slice():
    x, y = el("([1,1],[1,2])"), el("([1,1],[2,1])")
    desc = principal_product(x, y)
    assert isinstance(desc, EqualCoordinate) and desc.case == "eq-left"
    assert oracle_matches(T2T2, x, y)[0]
    c2 = el("([2,2],[1,2])")[0]
    sl = theta_slice(desc.related, c2, enumerate_elements(parse_family("T2")))
    full = CongruenceQn.theta(parse_family("T2"), 2, "S")
    elems = enumerate_elements(parse_family("T2"))
    assert sl == {(g, h) for g in elems for h in elems if related_qn(full, g, h)}


def test_swapped_orientation():
    x, y = el("([1,2],[1,1])"), el("([2,1],[1,1])")
    desc = principal_product(x, y)
    assert desc.case == "eq-right" and oracle_matches(T2T2, x, y)[0]


def test_alternative_variant_is_diagnostic_only():
    x, y = el("([1,1],[1,2])"), el("([1,1],[2,1])")
    desc = principal_product(x, y)
    elems = T2T2.elements()
    diffs = [(a, b) for a in elems for b in elems if desc.related(a, b) != alternative_equal_related(desc, a, b)]
    # the variant also relates (p, id) and (p, swap) for the permutations p, which the oracle does not
    assert len(diffs) == 4
    assert all(a[0] == b[0] and a[0].rank == 2 and alternative_equal_related(desc, a, b) for a, b in diffs)
    assert oracle_matches(T2T2, x, y)[0]


def test_alternative_variant_differs_on_larger_monoid():
    monoid = parse_product("T3xT2")
    x, y = el("([1,1,1],[1,2])", monoid), el("([1,1,1],[2,1])", monoid)
    desc = principal_product(x, y)
    table = build_table(monoid)
    oracle = congruence_closure(table, [(table.index[x], table.index[y])])
    assert partition_from_key(table.elements, desc.key) == oracle
    a, b = el("([1,2,3],[1,2])", monoid), el("([1,2,3],[2,1])", monoid)
    assert alternative_equal_related(desc, a, b)
    assert not desc.related(a, b)
    assert oracle[table.index[a]] != oracle[table.index[b]]
