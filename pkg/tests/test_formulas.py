from itertools import product

import pytest
from hypothesis import given, strategies as st

from edgedepth import formulas as F
from edgedepth.depth import depth
from edgedepth.graphs import (CASE_ONE, CASE_THREE, CASE_TWO, build_cycle, build_path,
                              cycle_family, edge_ideal, integrally_closed_cycles,
                              is_integrally_closed_graph)
from edgedepth.monomials import Monomial, MonomialIdeal, colon_monomial, contains, power


def engine(ws, t, kind="cycle"):
    G = build_cycle(len(ws), ws) if kind == "cycle" else build_path(len(ws) + 1, ws)
    return depth(power(edge_ideal(G), t))


@given(st.integers(-50, 50), st.integers(1, 9))
def test_ceil_div_is_true_ceiling(a, b):
    c = F.ceil_div(a, b)
    assert c * b >= a > (c - 1) * b


def test_ceil_div_negative_numerator():
    assert F.ceil_div(-1, 3) == 0 and F.ceil_div(-4, 3) == -1


class TestClosedForms:
    @pytest.mark.parametrize("n, t, value", [(4, 1, 2), (3, 5, 1), (7, 2, 2)])
    def test_trivial_path(self, n, t, value):
        assert F.trivial_path_depth(n, t) == F.FormulaResult(F.EXACT, value, "trivial-path")

    @pytest.mark.parametrize("n, t, value", [(5, 1, 2), (5, 3, 0), (6, 4, 1), (6, 3, 2), (7, 2, 2)])
    def test_trivial_cycle(self, n, t, value):
        r = F.trivial_cycle_depth(n, t)
        assert (r.kind, r.value) == (F.EXACT, value)

    @pytest.mark.parametrize("n, ws, t, value", [
        (5, (2, 1, 1, 1, 1), 3, 0),
        (4, (2, 1, 2, 1), 2, 1),
        (6, (2, 1, 2, 1, 2, 1), 7, 2),
        (6, (2, 1, 1, 1, 1, 1), 4, 1),
        (3, (2, 1, 2), 3, 1),
    ])
    def test_weighted_cycle(self, n, ws, t, value):
        r = F.weighted_cycle_depth(cycle_family(n, ws), t)
        assert (r.kind, r.value) == (F.EXACT, value)

    def test_weighted_path_t1(self):
        assert F.weighted_path_depth_t1((2, 1)).value == 1
        assert F.weighted_path_depth_t1((2, 1, 1)).value == 2
        # value checked against the engine before freezing
        assert F.weighted_path_depth_t1((2, 1, 1, 1), 1).value == 2
        assert engine((2, 1, 1, 1), 1, "path") == 2

    def test_weighted_path_lower(self):
        assert F.weighted_path_depth_lower((2, 1), 2) == F.FormulaResult(F.EXACT, 1, "weighted-path-power", "n <= 3")
        r = F.weighted_path_depth_lower((2, 1, 2, 1, 1), 3)
        assert (r.kind, r.value) == (F.LOWER, 2)
        r = F.weighted_path_depth_lower((1, 1, 1, 2, 1, 1, 1), 2, 4)
        assert (r.kind, r.value) == (F.LOWER, 3)

    def test_path_index_must_be_first_heavy_edge(self):
        with pytest.raises(F.FormulaDomainError):
            F.weighted_path_depth_t1((1, 2, 1, 2, 1, 1), 4)
        ws, i, a, b = F.path_parameters((1, 2, 1, 3, 1))
        assert (ws, i) == ((1, 3, 1, 2, 1), 2)

    def test_domain_errors(self):
        with pytest.raises(F.FormulaDomainError):
            F.trivial_cycle_depth(2, 1)
        with pytest.raises(F.FormulaDomainError):
            F.weighted_path_depth_t1((2, 2, 1))  # not integrally closed
        with pytest.raises(F.FormulaDomainError):
            F.weighted_path_depth_t1((1, 1, 1))
        assert not F.two_edge_lower_bound(3, 1).covered
        assert not F.one_edge_g_lower_bound(7, 4).covered

    def test_result_semantics(self):
        assert F.FormulaResult(F.LOWER, 2, "x").agrees(3)
        assert not F.FormulaResult(F.EXACT, 2, "x").agrees(3)
        assert not F.not_covered("x", "why").agrees(0)


def closed_cycle_families(max_n=7, max_w=3):
    seen = {}
    for n in range(3, max_n + 1):
        for fam in integrally_closed_cycles(n, max_w):
            seen[(n, fam.weights)] = fam
    return list(seen.values())


class TestAgainstEngine:
    def test_every_closed_cycle_small_powers(self):
        fams = closed_cycle_families()
        assert {f.case for f in fams} == {CASE_ONE, CASE_TWO, CASE_THREE}
        for fam in fams:
            for t in (1, 2, 3):
                r = F.weighted_cycle_depth(fam, t)
                got = depth(power(fam.ideal, t))
                assert r.kind == F.EXACT and r.value == got, (fam, t, got)
                if t == 1:
                    assert F.cycle_t1_depth(fam.n).value == got

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_trivial_cycles(self, n):
        for t in (1, 2, 3):
            assert F.trivial_cycle_depth(n, t).value == engine([1] * n, t)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_trivial_paths(self, n):
        for t in (1, 2, 3):
            assert F.trivial_path_depth(n, t).value == engine([1] * (n - 1), t, "path")

    def test_weighted_paths(self):
        count = 0
        for n in range(2, 8):
            for ws in product((1, 2, 3), repeat=n - 1):
                if max(ws) == 1 or not is_integrally_closed_graph(build_path(n, ws))[0]:
                    continue
                count += 1
                assert F.weighted_path_depth_t1(ws).value == engine(ws, 1, "path"), ws
                for t in (2, 3):
                    r = F.weighted_path_depth_lower(ws, t)
                    assert r.agrees(engine(ws, t, "path")), (ws, t, r)
        assert count > 50

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_one_edge_g_bound(self, n):
        for w1 in (2, 3):
            ws = (w1,) + (1,) * (n - 1)
            I = edge_ideal(build_cycle(n, ws))
            for t in range(2, F.ceil_div(n + 1, 2)):
                Itg = F.one_edge_g_ideal(n, t, ws, power(I, t))
                assert F.one_edge_g_lower_bound(n, t).agrees(depth(Itg))

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_two_edge_bound(self, n):
        for w1, w3 in ((2, 2), (3, 2)):
            ws = (w1, 1, w3) + (1,) * (n - 3)
            for t in (1, 2, 3):
                assert F.two_edge_lower_bound(n, t).agrees(engine(ws, t))


class TestWitnesses:
    def test_four_cycle(self):
        W = F.build_witness(cycle_family(4, (2, 1, 2, 1)), 2)
        assert W.f == Monomial((1, 0, 2, 2))
        assert W.expected_colon == MonomialIdeal.variables(4, [1, 2, 4])

    def test_even_n4(self):
        W = F.build_witness(cycle_family(4, (2, 1, 1, 1)), 3)
        assert W.expected_colon == MonomialIdeal(4, [(1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])

    def test_odd_n5(self):
        W = F.build_witness(cycle_family(5, (2, 1, 1, 1, 1)), 3)
        assert W.expected_colon == MonomialIdeal.maximal(5)

    def test_no_witness_for_trivial(self):
        with pytest.raises(F.FormulaDomainError):
            F.build_witness(cycle_family(5, (1,) * 5), 2)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_all_in_range(self, n):
        specs = []
        for w1 in (2, 3):
            ws = (w1,) + (1,) * (n - 1)
            for t in range(2, 5):
                specs.append(F.build_witness(cycle_family(n, ws), t))
                if t < F.ceil_div(n + 1, 2):
                    specs.append(F.one_edge_g_witness(n, t, ws))
            for w3 in range(2, w1 + 1):
                ws2 = (w1, 1, w3) + (1,) * (n - 3)
                specs += [F.build_witness(cycle_family(n, ws2), t) for t in range(2, 5)]
        for W in specs:
            It = power(W.ideal, W.t)
            assert not contains(It, W.f), W
            assert colon_monomial(It, W.f) == W.expected_colon, W

    def test_zero_depth_instances_agree_with_engine(self):
        for n, t in ((5, 3), (7, 4)):
            ws = (2,) + (1,) * (n - 1)
            W = F.odd_cycle_witness(n, t, ws)
            assert colon_monomial(power(W.ideal, t), W.f) == MonomialIdeal.maximal(n)
            assert engine(ws, t) == 0
