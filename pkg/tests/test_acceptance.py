"""Acceptance suite: every formula against brute-force closures on small monoids.

Each test prints (via the terminal summary in conftest) one PASS/FAIL line
with its runtime; the time budgets are part of the criteria.
"""

import itertools
import random

from conftest import criterion

from congrkit.congruence_fn import (
    class_key_fn,
    enumerate_congruences_fn,
    fixes_hyperplanes,
    principal_fn,
    related_fn,
)
from congrkit.congruence_qn import class_key, congruence_chain, principal_qn, related_qn
from congrkit.groups import (
    all_normal_subgroups_product,
    conjugacy_classes,
    direct_product_ops,
    exhaustive_normal_subgroups,
    normal_closure,
    normal_closure_product,
    normal_subgroups_sk,
)
from congrkit.landscape import (
    enumerate_landscapes,
    landscape_key,
    landscape_of_principal,
    related_landscape,
    validate_landscape,
)
from congrkit.matrices import (
    Matrix,
    MatrixMonoid,
    all_matrices_unchecked,
    general_linear,
    h_related_matrix,
    identity_matrix,
    inverse,
    is_scalar_multiple,
    reduce_to_partial_identity,
)
from congrkit.matrix_product import associated_normal_subgroup, matrix_product_monoid, principal_fmfn
from congrkit.oracle import (
    all_congruences,
    build_table,
    congruence_closure,
    is_congruence,
    partition_from_key,
    partition_pairs,
    predicate_matches,
    refines,
)
from congrkit.permutations import Permutation, symmetric_group
from congrkit.product import principal_product, product_monoid
from congrkit.render import parse_landscape, render_landscape
from congrkit.transformations import act, enumerate_elements, hclass_witness, parse_family


def _table(spec):
    if "x" in spec:
        left, right = spec.split("x")
        return build_table(product_monoid(parse_family(left), parse_family(right)))
    return build_table(parse_family(spec))


def _principal_sweep(table, describe, pairs):
    """Count generating pairs whose description disagrees with the oracle."""
    els = table.elements
    bad = []
    for i, j in pairs:
        key, related = describe(els[i], els[j])
        oracle = congruence_closure(table, [(i, j)])
        if partition_from_key(els, key) != oracle or predicate_matches(els, related, oracle) is not None:
            bad.append((els[i], els[j]))
    return bad


def _all_pairs(n):
    return [(i, j) for i in range(n) for j in range(n)]


def _describe_qn(f, g):
    theta = principal_qn(f, g)
    return (lambda x: class_key(theta, x)), (lambda x, y: related_qn(theta, x, y))


def _describe_product(x, y):
    desc = principal_product(x, y)
    return desc.key, desc.related


def test_criterion_1_single_monoid_principal():
    with criterion(1, "single-monoid principal congruences equal oracle closures", 30):
        for spec in ("T2", "T3", "PT2", "I2", "I3"):
            table = _table(spec)
            assert _principal_sweep(table, _describe_qn, _all_pairs(table.size)) == [], spec


def test_criterion_2_congruence_counts():
    with criterion(2, "congruence counts and chain order", 60):
        for spec, expected in (("T2", 4), ("T3", 7), ("PT3", 7), ("I3", 7)):
            table = _table(spec)
            oracle = all_congruences(table)
            chain = [partition_from_key(table.elements, lambda x, c=c: class_key(c, x))
                     for c in congruence_chain(parse_family(spec))]
            assert len(oracle) == expected, spec
            assert set(chain) == oracle and len(set(chain)) == len(chain), spec
            assert all(refines(a, b) for a, b in zip(chain, chain[1:])), spec


def test_criterion_3_product_principal_sweep():
    with criterion(3, "product principal sweep equals oracle closures", 300):
        for spec in ("T2xT2", "I2xI2", "PT2xT2"):
            table = _table(spec)
            assert _principal_sweep(table, _describe_product, _all_pairs(table.size)) == [], spec
        table = _table("T3xT2")
        pairs = random.Random(2024).sample(_all_pairs(table.size), 500)
        assert _principal_sweep(table, _describe_product, pairs) == []


LANDSCAPES = {}


def _landscapes(spec):
    if spec not in LANDSCAPES:
        left, right = spec.split("x")
        LANDSCAPES[spec] = list(enumerate_landscapes(parse_family(left), parse_family(right)))
    return LANDSCAPES[spec]


def test_criterion_4_landscape_soundness_completeness():
    with criterion(4, "landscape enumeration matches the oracle lattice", 300):
        rng = random.Random(4)
        for spec in ("T2xT2", "I2xT2"):
            table = _table(spec)
            els = table.elements
            lands = _landscapes(spec)
            assert all(validate_landscape(land) == [] for land in lands), spec
            parts = [partition_from_key(els, lambda x, land=land: landscape_key(land, x)) for land in lands]
            assert all(is_congruence(table, p) for p in parts), spec
            oracle = all_congruences(table)
            assert len(lands) == len(oracle) == len(set(parts)), spec
            assert set(parts) == oracle, spec
            for x, y in itertools.product(els, repeat=2):
                desc = principal_product(x, y)
                land = landscape_of_principal(desc)
                sample = rng.sample(els, 16)
                for a, b in itertools.product(sample, repeat=2):
                    assert related_landscape(land, a, b) == desc.related(a, b), (spec, x, y, a, b)


def test_criterion_5_normal_subgroups_of_products():
    with criterion(5, "normal subgroups of S_i x S_k and their closures", 120):
        for (i, k), expected in (((2, 2), 5), ((3, 3), 10), ((3, 4), 13)):
            ambient = [(a, b) for a in symmetric_group(i) for b in symmetric_group(k)]
            mul = direct_product_ops(Permutation.__mul__, Permutation.__mul__)
            found = exhaustive_normal_subgroups(ambient, mul, _pair_inverse, _pair_identity(i, k))
            formula = all_normal_subgroups_product(i, k)
            assert len(found) == len(formula) == expected
            assert set(found) == {frozenset(n.elements()) for n in formula}
        for i, k in itertools.product(range(1, 5), repeat=2):
            ambient = [(a, b) for a in symmetric_group(i) for b in symmetric_group(k)]
            mul = direct_product_ops(Permutation.__mul__, Permutation.__mul__)
            for cls in conjugacy_classes(ambient, mul, _pair_inverse):
                bfs = normal_closure([next(iter(cls))], ambient, mul, _pair_inverse, _pair_identity(i, k))
                for pair in cls:
                    assert frozenset(normal_closure_product(i, k, pair).elements()) == bfs, (i, k, pair)


def _pair_inverse(x):
    return (x[0].inverse(), x[1].inverse())


def _pair_identity(i, k):
    return (Permutation.identity(i), Permutation.identity(k))


def test_criterion_6_matrix_single_monoid():
    with criterion(6, "F_2 over GF(2) and GF(3): principal and lattice", 120):
        for p in (2, 3):
            table = build_table(MatrixMonoid(p, 2))
            els = table.elements

            def describe(a, b):
                theta = principal_fn(a, b)
                return (lambda x: class_key_fn(theta, x)), (lambda x, y: related_fn(theta, x, y))

            assert _principal_sweep(table, describe, _all_pairs(table.size)) == [], p
            formula = [partition_from_key(els, lambda x, c=c: class_key_fn(c, x))
                       for c in enumerate_congruences_fn(p, 2)]
            assert len(set(formula)) == len(formula)
            assert set(formula) == all_congruences(table), p


MATRIX_SAMPLES = 5000
EXACT_PREDICATE_SAMPLES = 1500


def test_criterion_7_matrix_product_sweep():
    with criterion(7, f"F_2(GF(2)) x F_2(GF(2)): {MATRIX_SAMPLES} seeded generating pairs", 600):
        table = build_table(matrix_product_monoid(MatrixMonoid(2, 2), MatrixMonoid(2, 2)))
        els = table.elements
        rng = random.Random(7)
        pairs = [(rng.randrange(table.size), rng.randrange(table.size)) for _ in range(MATRIX_SAMPLES)]
        bad = []
        for n, (i, j) in enumerate(pairs):
            desc = principal_fmfn(els[i], els[j])
            oracle = congruence_closure(table, [(i, j)])
            if partition_from_key(els, desc.key) != oracle:
                bad.append((i, j, "key"))
            elif n < EXACT_PREDICATE_SAMPLES and predicate_matches(els, desc.related, oracle) is not None:
                bad.append((i, j, "predicate"))
        assert bad == []


def _slices(table, partition, left_elements, right_elements):
    """For each left element f, the partition of the right factor induced at f."""
    out = {}
    for f in left_elements:
        out[f] = tuple(partition[table.index[(f, g)]] for g in right_elements)
    return out


def _relation(labels):
    return {(a, b) for a in range(len(labels)) for b in range(len(labels)) if labels[a] == labels[b]}


def test_criterion_8_property_suites():
    with criterion(8, "structural property suites", 120):
        rng = random.Random(8)
        # the right action of S_rank on each element, H-preservation and unique witnesses
        for spec in ("T3", "PT3", "I3"):
            for f in enumerate_elements(parse_family(spec)):
                group = symmetric_group(f.rank)
                images = {}
                for s in group:
                    g = act(f, s)
                    assert hclass_witness(f, g) == s
                    images[g] = s
                    for t in rng.sample(group, min(3, len(group))):
                        assert act(g, t) == act(f, s * t)
                assert len(images) == len(group)

        # membership in theta(k, N) does not depend on how the image is ordered
        for f in enumerate_elements(parse_family("T4")):
            if f.rank < 2:
                continue
            group = symmetric_group(f.rank)
            for order in itertools.permutations(f.image):
                for g in (act(f, s) for s in rng.sample(group, min(4, len(group)))):
                    w = _witness_for_order(f, g, order)
                    for n in normal_subgroups_sk(f.rank):
                        assert (w in n) == (hclass_witness(f, g) in n)

        # slices of a product congruence are congruences, shrinking the fixed rank coarsens them
        for spec in ("T2xT2", "I2xT2"):
            table = _table(spec)
            left, right = (parse_family(s) for s in spec.split("x"))
            lefts, rights = enumerate_elements(left), enumerate_elements(right)
            right_table = build_table(right)
            for part in all_congruences(table):
                sl = _slices(table, part, lefts, rights)
                for f in lefts:
                    order = [right_table.index[g] for g in rights]
                    labels = [0] * len(rights)
                    for pos, idx in enumerate(order):
                        labels[idx] = sl[f][pos]
                    assert is_congruence(right_table, _canon(labels))
                    for f2 in lefts:
                        if f2.rank <= f.rank:
                            assert _relation(sl[f]) <= _relation(sl[f2])

        # the same for matrices, on oracle closures in F_2(GF(2)) x F_2(GF(2))
        m22 = MatrixMonoid(2, 2)
        table = build_table(matrix_product_monoid(m22, m22))
        mats = m22.elements()
        for _ in range(15):
            i, j = rng.randrange(table.size), rng.randrange(table.size)
            sl = _slices(table, congruence_closure(table, [(i, j)]), mats, mats)
            for a in mats:
                for b in mats:
                    if b.rank <= a.rank:
                        assert _relation(sl[a]) <= _relation(sl[b])

        # a matrix fixes every hyperplane exactly when it is a nonzero scalar
        for p, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
            one = identity_matrix(p, n)
            for a in all_matrices_unchecked(p, n):
                assert fixes_hyperplanes(a) == (is_scalar_multiple(a, one) is not None)

        # the normal subgroup attached to an H-related pair ignores the choice of reduction
        for p in (2, 3):
            mats = MatrixMonoid(p, 2).elements()
            for _ in range(40):
                k, l = rng.choice(mats), rng.choice(mats)
                k2 = rng.choice([m for m in mats if h_related_matrix(m, k)])
                l2 = rng.choice([m for m in mats if h_related_matrix(m, l)])
                base = associated_normal_subgroup((k, l), (k2, l2))
                other = associated_normal_subgroup((k, l), (k2, l2), (_other_reduction(k, rng), _other_reduction(l, rng)))
                assert base == other

        # closure is idempotent and monotone
        table = _table("T2xT2")
        for _ in range(100):
            gens = [(rng.randrange(16), rng.randrange(16)) for _ in range(rng.randrange(1, 4))]
            more = gens + [(rng.randrange(16), rng.randrange(16))]
            closed = congruence_closure(table, gens)
            assert congruence_closure(table, partition_pairs(closed)) == closed
            assert refines(closed, congruence_closure(table, more))


def _canon(labels):
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _witness_for_order(f, g, order):
    """Witness read off with the image listed in ``order`` instead of sorted.

    It is a conjugate of the usual witness, so normal subgroups cannot tell
    the two apart.
    """
    pos = {a: j for j, a in enumerate(order, start=1)}
    sigma = [0] * f.rank
    for v, w in zip(f.images, g.images):
        if v:
            sigma[pos[v] - 1] = pos[w]
    return Permutation(tuple(sigma))


def _other_reduction(a, rng):
    """A second pair (t1, t2) with t1 * a * t2 = E_rank, built from a random block-diagonal twist."""
    s1, s2 = reduce_to_partial_identity(a)
    p, n, r = a.p, a.n, a.rank
    g = rng.choice(general_linear(p, r)) if r else None
    h = rng.choice(general_linear(p, n - r)) if n - r else None
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x < r and y < r:
                rows[x][y] = g.rows[x][y]
            elif x >= r and y >= r:
                rows[x][y] = h.rows[x - r][y - r]
    d = Matrix(p, tuple(map(tuple, rows)))
    return d * s1, s2 * inverse(d)


def test_criterion_9_render_round_trip():
    with criterion(9, "render/parse round trip on every enumerated landscape", 30):
        for spec in ("T2xT2", "I2xT2"):
            for land in _landscapes(spec):
                for mode in ("diamond", "matrix"):
                    assert parse_landscape(render_landscape(land, mode)) == land
