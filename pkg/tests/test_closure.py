from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from edgedepth.closure import (closure_witness, convex_certificate, integral_closure,
                               is_integrally_closed_ideal, newton_membership)
from edgedepth.graphs import build_cycle, build_path, edge_ideal, is_integrally_closed_graph
from edgedepth.monomials import MonomialIdeal, contains, is_subset
from edgedepth.suites import closure_agreement, exhaustive_closure_agreement
from strategies import ideals


def ideal(n, *gens):
    return MonomialIdeal(n, gens)


def brute_closure_member(I, a, denom=6):
    """Search convex combinations with denominators dividing ``denom``."""
    gens = I.gens
    for ks in product(range(denom + 1), repeat=len(gens)):
        if sum(ks) != denom:
            continue
        if all(sum(k * g[j] for k, g in zip(ks, gens)) <= denom * a[j] for j in range(I.arity)):
            return True
    return False


class TestMembership:
    def test_midpoint(self):
        I = ideal(2, (2, 0), (0, 2))
        assert newton_membership(I, (1, 1))
        assert convex_certificate(I, (1, 1)) == {(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)}
        assert not newton_membership(I, (1, 0))

    def test_disjoint_heavy_edges(self):
        I = ideal(4, (2, 2, 0, 0), (0, 0, 2, 2))
        assert newton_membership(I, (1, 1, 1, 1))
        assert not contains(I, (1, 1, 1, 1))

    def test_certificate_is_valid(self):
        I = ideal(3, (3, 0, 0), (0, 3, 0), (0, 0, 3))
        lam = convex_certificate(I, (1, 1, 1))
        assert sum(lam.values()) == 1
        for j in range(3):
            assert sum(l * g[j] for g, l in lam.items()) <= 1

    def test_zero_ideal(self):
        with pytest.raises(ValueError):
            newton_membership(MonomialIdeal.zero(2), (1, 1))
        with pytest.raises(ValueError):
            integral_closure(MonomialIdeal.zero(2))

    @settings(max_examples=40, deadline=None)
    @given(ideals(max_gens=3, max_exp=3, max_n=3))
    def test_generators_are_members(self, I):
        for g in I.gens:
            assert newton_membership(I, g)

    @settings(max_examples=25, deadline=None)
    @given(ideals(max_gens=3, max_exp=2, max_n=2))
    def test_matches_rational_search(self, I):
        # small exponents: closure points have certificates with denominators <= 6 here
        for a in product(range(3), repeat=I.arity):
            if brute_closure_member(I, a):
                assert newton_membership(I, a)


class TestClosure:
    def test_principal(self):
        assert integral_closure(ideal(2, (1, 1))) == ideal(2, (1, 1))

    def test_two_heavy_edges(self):
        I = ideal(4, (2, 2, 0, 0), (0, 0, 2, 2))
        assert contains(integral_closure(I), (1, 1, 1, 1))
        assert not is_integrally_closed_ideal(I)

    def test_trivial_five_cycle(self):
        I = edge_ideal(build_cycle(5, [1] * 5))
        assert integral_closure(I) == I

    def test_heavy_path(self):
        I = ideal(3, (2, 2, 0), (0, 2, 2))
        assert not is_integrally_closed_ideal(I)
        assert contains(integral_closure(I), (1, 2, 1))
        assert closure_witness(I) is not None

    def test_alternating_six_cycle(self):
        assert is_integrally_closed_ideal(edge_ideal(build_cycle(6, [2, 1, 2, 1, 2, 1])))

    def test_closure_of_squares(self):
        assert integral_closure(ideal(2, (2, 0), (0, 2))) == ideal(2, (2, 0), (1, 1), (0, 2))

    @settings(max_examples=30, deadline=None)
    @given(ideals(max_gens=3, max_exp=3, max_n=3))
    def test_idempotent_and_contains(self, I):
        C = integral_closure(I)
        assert is_subset(I, C)
        assert integral_closure(C) == C


class TestGraphAgreement:
    def test_triangle_all_heavy(self):
        G = build_cycle(3, [2, 2, 2])
        assert not is_integrally_closed_graph(G)[0]
        assert not is_integrally_closed_ideal(edge_ideal(G))

    def test_two_vertices(self):
        assert all(c.passed for c in exhaustive_closure_agreement(2, 2))

    def test_up_to_four_vertices(self):
        checks = [c for n in (2, 3, 4) for c in exhaustive_closure_agreement(n, 2)]
        assert sum(c.params["members"] for c in checks) == (3 - 1) + (27 - 1) + (729 - 1)
        assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]

    def test_five_vertex_cycles_and_paths(self):
        graphs = [build_cycle(5, ws) for ws in product((1, 2), repeat=5)]
        graphs += [build_path(5, ws) for ws in product((1, 2), repeat=4)]
        checks = closure_agreement(graphs)
        assert len(checks) == 48 and all(c.passed for c in checks)

    def test_weights_up_to_three_on_cycles(self):
        graphs = [build_cycle(n, ws) for n in (3, 4) for ws in product((1, 2, 3), repeat=n)]
        assert all(c.passed for c in closure_agreement(graphs))

    @pytest.mark.slow
    def test_full_five_vertex_corpus(self):
        checks = exhaustive_closure_agreement(5, 2)
        assert sum(c.params["members"] for c in checks) == 3 ** 10 - 1
        assert all(c.passed for c in checks)
