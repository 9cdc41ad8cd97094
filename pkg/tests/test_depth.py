import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from edgedepth.depth import (DepthReport, SizeLimitExceeded, betti_table,
                             betti_table_bruteforce, depth, depth_both, depth_quotient,
                             koszul_complex, lcm_lattice, reduced_homology_dims,
                             witness_colon_maximal)
from edgedepth.graphs import build_cycle, build_path, edge_ideal
from edgedepth.monomials import (Monomial, MonomialIdeal, colon_monomial, contains, extend,
                                 ideal_sum, power, product as ideal_product)
from strategies import ideals, monomials


def ideal(n, *gens):
    return MonomialIdeal(n, gens)


def cycle(ws, t=1):
    return power(edge_ideal(build_cycle(len(ws), ws)), t)


def brute_lattice(I):
    pts = set()
    for k in range(1, len(I.gens) + 1):
        for sub in combinations(I.gens, k):
            pts.add(tuple(max(c) for c in zip(*sub)))
    return sorted(pts)


# projective plane on six vertices; its Stanley-Reisner ring is Cohen-Macaulay
# over Q but not over GF(2)
RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
       (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]


def rp2_ideal():
    faces = {frozenset(f) for f in RP2}
    non = [c for c in combinations(range(6), 3) if frozenset(c) not in faces]
    return MonomialIdeal(6, [[int(j in c) for j in range(6)] for c in non])


class TestLattice:
    def test_one_join(self):
        lat = lcm_lattice(ideal(3, (1, 1, 0), (0, 1, 1)))
        assert lat.multidegrees == [(0, 1, 1), (1, 1, 0), (1, 1, 1)]

    def test_principal(self):
        assert lcm_lattice(ideal(2, (3, 1))).multidegrees == [(3, 1)]

    def test_four_cycle_against_subsets(self):
        I = cycle([1, 1, 1, 1])
        assert lcm_lattice(I).multidegrees == brute_lattice(I)

    @given(ideals(max_gens=6))
    def test_matches_subset_lcms(self, I):
        assert lcm_lattice(I).multidegrees == brute_lattice(I)

    def test_caps(self):
        I = cycle([3, 1, 1, 1, 1, 1, 1], 4)
        with pytest.raises(SizeLimitExceeded, match="max_gens=50"):
            lcm_lattice(I, max_gens=50)
        with pytest.raises(SizeLimitExceeded, match="max_lattice=100"):
            lcm_lattice(I, max_lattice=100)

    def test_zero_ideal(self):
        with pytest.raises(ValueError):
            lcm_lattice(MonomialIdeal.zero(2))


class TestKoszul:
    def test_single_generator(self):
        K = koszul_complex(ideal(2, (1, 1)), (1, 1))
        assert K.face_sets() == {frozenset()}
        assert reduced_homology_dims(K) == (1, 0, 0)

    def test_two_points(self):
        K = koszul_complex(ideal(3, (1, 1, 0), (0, 1, 1)), (1, 1, 1))
        assert K.face_sets() == {frozenset(), frozenset({1}), frozenset({3})}
        assert reduced_homology_dims(K, "rational")[1] == 1

    def test_generator_degree(self):
        I = cycle([2, 1, 1, 1])
        for g in I.gens:
            assert koszul_complex(I, g).faces == {0}


class TestBetti:
    def test_principal(self):
        assert betti_table(ideal(2, (1, 1))).entries == {(0, (1, 1)): 1}

    def test_two_generators(self):
        T = betti_table(ideal(3, (1, 1, 0), (0, 1, 1)))
        assert T[1, (1, 1, 1)] == 1
        assert T.totals() == {0: 2, 1: 1}

    @given(ideals(max_gens=6), st.sampled_from(["gf2", "rational"]))
    def test_generators_row(self, I, field):
        assert set(betti_table(I, field).row(0)) == set(I.gens)

    @settings(max_examples=60, deadline=None)
    @given(ideals(max_gens=6), st.sampled_from(["gf2", "rational"]))
    def test_bruteforce_equivalence(self, I, field):
        assert betti_table(I, field).entries == betti_table_bruteforce(I, field).entries

    def test_bruteforce_on_seeded_sample(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 4)
            gens = [[rng.randint(0, 2) for _ in range(n)] for _ in range(rng.randint(1, 6))]
            gens = [g for g in gens if any(g)] or [[1] * n]
            I = MonomialIdeal(n, gens)
            for field in ("gf2", "rational"):
                assert betti_table(I, field).entries == betti_table_bruteforce(I, field).entries

    def test_koszul_resolution_of_maximal_ideal(self):
        T = betti_table(MonomialIdeal.maximal(4))
        assert T.totals() == {0: 4, 1: 6, 2: 4, 3: 1}


class TestDepth:
    @pytest.mark.parametrize("I, expected", [
        (cycle([1, 1, 1]), 1),
        (edge_ideal(build_path(3, [1, 1])), 1),
        (edge_ideal(build_path(2, [1])), 1),
        (cycle([1] * 5), 2),
        (cycle([2, 1, 2, 1, 2, 1], 2), 2),
        (MonomialIdeal.maximal(3), 0),
        (MonomialIdeal.zero(4), 4),
    ])
    def test_examples(self, I, expected):
        assert depth(I) == expected
        assert depth(I, "rational") == expected

    def test_report(self):
        r = depth_quotient(cycle([1] * 5), "gf2")
        assert (r.n, r.depth, r.pd, r.witness_i) == (5, 2, 3, 2)
        assert r.witness_b == [1, 1, 1, 1, 1]
        assert DepthReport.from_json(r.to_json()).same_result(r)

    def test_zero_ideal_report(self):
        r = depth_quotient(MonomialIdeal.zero(3))
        assert (r.depth, r.pd, r.witness_b) == (3, 0, None)

    def test_field_disagreement_flagged(self):
        a, b = depth_both(rp2_ideal())
        assert (a.depth, b.depth) == (2, 3)
        assert a.flags == b.flags == ["field disagreement: gf2=2 rational=3"]

    def test_fields_agree_on_cycles(self):
        for ws in ([2, 1, 1, 1, 1], [2, 1, 2, 1, 1], [1] * 6):
            a, b = depth_both(cycle(ws, 2), t=2)
            assert a.depth == b.depth and not a.flags

    @settings(max_examples=60, deadline=None)
    @given(ideals(max_gens=5))
    def test_bounds(self, I):
        assert 0 <= depth(I) <= I.arity

    @settings(max_examples=40, deadline=None)
    @given(ideals(max_n=3, max_gens=3), ideals(max_n=3, max_gens=3))
    def test_sum_and_product_rules(self, I, J):
        n = I.arity + J.arity
        Ie = extend(I, n, range(1, I.arity + 1))
        Je = extend(J, n, range(I.arity + 1, n + 1))
        assert depth(ideal_sum(Ie, Je)) == depth(I) + depth(J)
        assert depth(ideal_product(Ie, Je)) == depth(I) + depth(J) + 1

    def test_sum_rule_example(self):
        I = ideal(4, (1, 1, 0, 0), (0, 0, 1, 1))
        assert depth(I) == 2
        assert depth(ideal_product(ideal(4, (1, 1, 0, 0)), ideal(4, (0, 0, 1, 1)))) == 3

    @settings(max_examples=80, deadline=None)
    @given(ideals(min_n=2, max_gens=5), st.data())
    def test_colon_inequalities(self, I, data):
        f = data.draw(monomials(I.arity, 2))
        if contains(I, f) or not any(f):
            return
        d = depth(I)
        colon = depth(colon_monomial(I, f))
        added = depth(ideal_sum(I, MonomialIdeal(I.arity, [f])))
        assert d <= colon
        assert d >= min(colon, added)


class TestWitness:
    def test_weighted_odd_cycle(self):
        f = Monomial((2, 2, 1, 1, 1))
        assert witness_colon_maximal(edge_ideal(build_cycle(5, [2, 1, 1, 1, 1])), 3, f)

    def test_trivial_odd_cycle(self):
        assert witness_colon_maximal(edge_ideal(build_cycle(5, [1] * 5)), 3, (1, 1, 1, 1, 1))

    def test_even_cycle_never_depth_zero(self):
        I = edge_ideal(build_cycle(4, [1] * 4))
        It = power(I, 3)
        assert depth(It) == 1
        for f in product(range(5), repeat=4):
            if not contains(It, f):
                assert not witness_colon_maximal(I, 3, f)

    def test_member_rejected(self):
        with pytest.raises(ValueError):
            witness_colon_maximal(edge_ideal(build_cycle(3, [1] * 3)), 1, (1, 1, 0))
