"""Closed-form depth values and bounds for weighted paths and cycles, and the
witness monomials ``f`` whose colon ideals ``(I^t : f)`` pin the depth down.

Vertices are ``x_1..x_n``, edges ``e_i = x_i x_{i+1}`` (cyclically for cycles),
``w_i`` is the weight of ``e_i`` and ``u_i = (x_i x_{i+1})^{w_i}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import (CASE_ONE, CASE_THREE, CASE_TRIVIAL, CASE_TWO, CycleFamily,
                     build_cycle, build_path, edge_ideal, is_integrally_closed_graph)
from .monomials import Monomial, MonomialIdeal, ideal_sum

EXACT = "Exact"
LOWER = "LowerBound"
UPPER = "UpperBound"
NOT_COVERED = "NotCovered"


class FormulaDomainError(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    """Mathematical ceiling of ``a / b`` for any integer ``a`` and ``b > 0``."""
    return -((-a) // b)


@dataclass(frozen=True)
class FormulaResult:
    kind: str
    value: int | None
    case: str
    note: str = ""

    def __post_init__(self):
        if self.kind == NOT_COVERED:
            return
        if self.value is None or self.value < 0:
            raise ValueError(f"formula value must be a non-negative integer, got {self.value}")

    @property
    def covered(self) -> bool:
        return self.kind != NOT_COVERED

    def agrees(self, depth: int) -> bool:
        """Whether an actual depth is consistent with this result."""
        if self.kind == EXACT:
            return depth == self.value
        if self.kind == LOWER:
            return depth >= self.value
        if self.kind == UPPER:
            return depth <= self.value
        return False

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": self.value, "case": self.case, "note": self.note}


def not_covered(case: str, note: str) -> FormulaResult:
    return FormulaResult(NOT_COVERED, None, case, note)


# -- trivially weighted graphs ------------------------------------------------

def trivial_path_depth(n: int, t: int) -> FormulaResult:
    if n < 2 or t < 1:
        raise FormulaDomainError("need n >= 2 and t >= 1")
    return FormulaResult(EXACT, max(ceil_div(n - t + 1, 3), 1), "trivial-path")


def trivial_cycle_depth(n: int, t: int) -> FormulaResult:
    if n < 3 or t < 1:
        raise FormulaDomainError("need n >= 3 and t >= 1")
    if t == 1:
        return FormulaResult(EXACT, ceil_div(n - 1, 3), "trivial-cycle", "t = 1")
    if t < ceil_div(n + 1, 2):
        return FormulaResult(EXACT, ceil_div(n - t + 1, 3), "trivial-cycle", "2 <= t < ceil((n+1)/2)")
    if n % 2 == 0:
        return FormulaResult(EXACT, 1, "trivial-cycle", "n even, t >= n/2 + 1")
    return FormulaResult(EXACT, 0, "trivial-cycle", "n odd, t >= (n+1)/2")


# -- weighted paths -------------------------------------------------------------

def path_parameters(weights: Sequence[int], i: int | None = None) -> tuple:
    """``(weights, i, a, b)`` for a non-trivially weighted path.

    ``i`` is the first non-trivial edge and must satisfy ``w_i >= w_{i+2}``;
    when ``i`` is not given and that fails, the path is reversed first, so the
    returned weights may be the reflection of the input.  ``a = 0`` iff
    ``w_2 = 1`` and ``b = 0`` iff ``w_{i+2} = 1`` (missing edges count as 1).
    """
    w = list(weights)
    m = len(w)

    def at(v, k):
        return v[k - 1] if 1 <= k <= m else 1

    first = next((k for k in range(1, m + 1) if w[k - 1] >= 2), None)
    if first is None:
        raise FormulaDomainError("path is trivially weighted")
    if i is None:
        if at(w, first) < at(w, first + 2):
            w = w[::-1]
            first = next(k for k in range(1, m + 1) if w[k - 1] >= 2)
        i = first
    elif i != first or at(w, i) < at(w, i + 2):
        raise FormulaDomainError(
            f"edge {i} must be the first non-trivial edge with w_i >= w_(i+2)")
    a = 0 if at(w, 2) == 1 else 1
    b = 0 if at(w, i + 2) == 1 else 1
    return tuple(w), i, a, b


def _check_closed_path(weights: Sequence[int]) -> None:
    G = build_path(len(weights) + 1, weights)
    ok, cert = is_integrally_closed_graph(G)
    if not ok:
        raise FormulaDomainError(f"path is not integrally closed: {cert}")
    if G.is_trivially_weighted():
        raise FormulaDomainError("path is trivially weighted; use trivial_path_depth")


def weighted_path_depth_t1(weights: Sequence[int], i: int | None = None) -> FormulaResult:
    """``depth S/I(P_w^n)`` for an integrally closed non-trivially weighted path."""
    _check_closed_path(weights)
    n = len(weights) + 1
    _, i, a, b = path_parameters(weights, i)
    if n <= 3:
        return FormulaResult(EXACT, 1, "weighted-path-t1", "n <= 3")
    if n == 4:
        return FormulaResult(EXACT, 2 - a, "weighted-path-t1", f"n = 4, a = {a}")
    value = min(ceil_div(i, 3) + ceil_div(n - i - b, 3),
                ceil_div(i - 2, 3) + ceil_div(n - i - 2, 3) + 1)
    return FormulaResult(EXACT, value, "weighted-path-t1", f"n >= 5, i = {i}, b = {b}")


def weighted_path_depth_lower(weights: Sequence[int], t: int, i: int | None = None) -> FormulaResult:
    """Lower bound on ``depth S/I(P_w^n)^t`` for ``t >= 2`` (exact when ``n <= 3``)."""
    if t < 2:
        raise FormulaDomainError("the power bounds need t >= 2; use weighted_path_depth_t1")
    _check_closed_path(weights)
    n = len(weights) + 1
    weights, i, _, _ = path_parameters(weights, i)
    w = list(weights) + [1, 1]

    def at(k):
        return w[k - 1] if k >= 1 else 1

    case = "weighted-path-power"
    if n <= 3:
        return FormulaResult(EXACT, 1, case, "n <= 3")
    if n == 4:
        v = 2 if at(1) > 1 and at(3) > 1 and at(2) == 1 else 1
        return FormulaResult(LOWER, v, case, "n = 4")
    if i == 1:
        floor = 2 if at(3) > 1 else 1
        return FormulaResult(LOWER, max(ceil_div(n - t + 1, 3), floor), case, f"n >= 5, i = 1, w_3 {'>' if floor == 2 else '='} 1")
    if at(i + 2) > 1:
        return FormulaResult(LOWER, max(ceil_div(n - t, 3), 2), case, "n >= 5, i > 1, w_(i+2) > 1")
    if i % 3 == 1 and n % 3 == 2 and t == 2:
        return FormulaResult(LOWER, ceil_div(n - 1, 3), case, "n >= 5, i = 1 mod 3, n = 2 mod 3, t = 2")
    return FormulaResult(LOWER, max(ceil_div(n - t, 3), 1), case, "n >= 5, i > 1, w_(i+2) = 1")


# -- weighted cycles ------------------------------------------------------------

def weighted_cycle_depth(family: CycleFamily, t: int) -> FormulaResult:
    """``depth S/I(C_w^n)^t`` for an integrally closed cycle family."""
    if t < 1:
        raise FormulaDomainError("t must be at least 1")
    n = family.n
    if family.case == CASE_TRIVIAL:
        return trivial_cycle_depth(n, t)
    if family.case == CASE_ONE:
        if t < ceil_div(n + 1, 2):
            return FormulaResult(EXACT, ceil_div(n - t, 3), CASE_ONE, "1 <= t < ceil((n+1)/2)")
        if n % 2 == 0:
            return FormulaResult(EXACT, 1, CASE_ONE, "t >= ceil((n+1)/2), n even")
        return FormulaResult(EXACT, 0, CASE_ONE, "t >= ceil((n+1)/2), n odd")
    if family.case == CASE_TWO:
        if n == 3:
            return FormulaResult(EXACT, 1, CASE_TWO, "n = 3")
        return FormulaResult(EXACT, max(ceil_div(n - t, 3), 1), CASE_TWO, "n >= 4")
    return FormulaResult(EXACT, 2, CASE_THREE)


def cycle_t1_depth(n: int) -> FormulaResult:
    """``depth S/I(C_w^n)`` for any non-trivially weighted integrally closed cycle."""
    if n < 3:
        raise FormulaDomainError("need n >= 3")
    return FormulaResult(EXACT, ceil_div(n - 1, 3), "cycle-t1")


def two_edge_lower_bound(n: int, t: int) -> FormulaResult:
    """``depth S/I^t >= max(ceil((n-t)/3), 1)`` for two non-trivial edges, ``n >= 4``."""
    if n < 4 or t < 1:
        return not_covered("two-edge-lower", "needs n >= 4 and t >= 1")
    return FormulaResult(LOWER, max(ceil_div(n - t, 3), 1), "two-edge-lower")


def one_edge_g_lower_bound(n: int, t: int) -> FormulaResult:
    """``depth S/(I^t, g) >= ceil((n-t)/3)`` with ``g`` from :func:`one_edge_g`."""
    if n < 4 or not 2 <= t < ceil_div(n + 1, 2):
        return not_covered("one-edge-g-lower", "needs n >= 4 and 2 <= t < ceil((n+1)/2)")
    return FormulaResult(LOWER, ceil_div(n - t, 3), "one-edge-g-lower")


# -- witness monomials and their colon ideals ----------------------------------

@dataclass(frozen=True)
class WitnessSpec:
    family: str
    n: int
    t: int
    weights: tuple
    f: Monomial
    expected_colon: MonomialIdeal
    label: str = ""

    @property
    def ideal(self) -> MonomialIdeal:
        return edge_ideal(build_cycle(self.n, self.weights))


def _mono(n: int, powers: dict) -> Monomial:
    """Monomial from ``{index: exponent}``; indices are reduced cyclically mod ``n``."""
    e = [0] * n
    for k, p in powers.items():
        e[(k - 1) % n] += p
    return Monomial(e)


class _Builder:
    """Accumulates a monomial as a product of cyclic factors."""

    def __init__(self, n):
        self.n = n
        self.e = [0] * n

    def x(self, k, p=1):
        self.e[(k - 1) % self.n] += p
        return self

    def edge(self, k, p=1):
        return self.x(k, p).x(k + 1, p)

    def mono(self):
        return Monomial(self.e)


def _vars(n: int, idx) -> list:
    return [_mono(n, {k: 1}) for k in idx]


def _pairs(n: int, pairs) -> list:
    out = []
    for a, b in pairs:
        d: dict = {}
        for k in (a, b):
            d[k] = d.get(k, 0) + 1
        out.append(_mono(n, d))
    return out


def _two_edge_shape(w: tuple) -> None:
    if not (w[0] >= w[2] >= 2 and all(x == 1 for k, x in enumerate(w) if k not in (0, 2))):
        raise FormulaDomainError(f"expected w_1 >= w_3 >= 2 and all other weights 1, got {w}")


def _one_edge_shape(w: tuple, allow_trivial: bool = False) -> None:
    if not ((w[0] >= 2 or allow_trivial) and all(x == 1 for x in w[1:])):
        raise FormulaDomainError(f"expected w_1 >= 2 and all other weights 1, got {w}")


def four_cycle_witness(n: int, t: int, weights: Sequence[int]) -> WitnessSpec:
    w = tuple(weights)
    _two_edge_shape(w)
    if n != 4 or t < 2:
        raise FormulaDomainError("four-cycle witness needs n = 4 and t >= 2")
    f = _Builder(4).x(1).edge(3, (t - 1) * w[2]).mono()
    return WitnessSpec(CASE_TWO, n, t, w, f, MonomialIdeal(4, _vars(4, [1, 2, 4])), "two-edge-c4")


def two_edge_witness(n: int, t: int, weights: Sequence[int]) -> WitnessSpec:
    """Witness for two non-trivial edges ``e_1, e_3`` on ``C^n``, ``n >= 5``, ``t >= 2``.

    The colon is taken against ``I^t``.
    """
    w = tuple(weights)
    if n < 5 or t < 2:
        raise FormulaDomainError("two-edge witness needs n >= 5 and t >= 2")
    _two_edge_shape(w)
    I = edge_ideal(build_cycle(n, w))
    b = _Builder(n).x(5)
    if t <= n - 3:
        b.edge(3, w[2])
        for k in range(5, t + 3):
            b.edge(k)
        gens = list(I.gens) + _vars(n, [2] + list(range(4, t + 5)))
        label = "two-edge (t <= n-3)"
    else:
        b.edge(3, (t - n + 3) * w[2])
        for k in range(5, n + 1):
            b.edge(k)
        gens = _vars(n, [j for j in range(1, n + 1) if j != 3])
        label = "two-edge (t >= n-2)"
    return WitnessSpec(CASE_TWO, n, t, w, b.mono(), MonomialIdeal(n, gens), label)


def one_edge_witness(n: int, t: int, weights: Sequence[int]) -> WitnessSpec:
    """One non-trivial edge ``e_1``, ``n >= 4``, ``2 <= t < ceil((n+1)/2)``."""
    w = tuple(weights)
    if n < 4 or not 2 <= t < ceil_div(n + 1, 2):
        raise FormulaDomainError("one-edge witness needs n >= 4 and 2 <= t < ceil((n+1)/2)")
    _one_edge_shape(w)
    b = _Builder(n).x(3).edge(1, w[0])
    for k in range(3, t + 1):
        b.edge(k)
    I = edge_ideal(build_cycle(n, w))
    gens = list(I.gens) + _vars(n, list(range(2, t + 3)) + [n])
    return WitnessSpec(CASE_ONE, n, t, w, b.mono(), MonomialIdeal(n, gens), "one-edge")


def one_edge_g(n: int, t: int, weights: Sequence[int]) -> Monomial:
    """``g = (x_1 x_2)^{w_1} x_3 x_4 ... x_{2t-2}``."""
    b = _Builder(n).edge(1, weights[0])
    for k in range(3, 2 * t - 1):
        b.x(k)
    return b.mono()


def one_edge_g_witness(n: int, t: int, weights: Sequence[int]) -> WitnessSpec:
    """Colon of ``I^t`` by ``g`` in the union form, same window as :func:`one_edge_witness`."""
    w = tuple(weights)
    if n < 4 or not 2 <= t < ceil_div(n + 1, 2):
        raise FormulaDomainError("g-witness needs n >= 4 and 2 <= t < ceil((n+1)/2)")
    _one_edge_shape(w)
    I = edge_ideal(build_cycle(n, w))
    pairs = [(n, n)]
    pairs += [(3, 2 * i + 3) for i in range(0, t - 1)]
    pairs += [(2 * j + 1, n) for j in range(1, t)]
    pairs += [(2 * p, 2 * p + 2 * q + 3) for p in range(1, t - 1) for q in range(0, t - p - 1)]
    gens = list(I.gens) + _pairs(n, pairs)
    return WitnessSpec(CASE_ONE, n, t, w, one_edge_g(n, t, w), MonomialIdeal(n, gens), "one-edge-g")


def odd_cycle_witness(n: int, t: int, weights: Sequence[int]) -> WitnessSpec:
    """``n`` odd, ``t >= (n+1)/2``: ``(I^t : f)`` is the maximal ideal."""
    w = tuple(weights)
    if n % 2 == 0 or t < (n + 1) // 2:
        raise FormulaDomainError("odd-cycle witness needs n odd and t >= (n+1)/2")
    _one_edge_shape(w, allow_trivial=True)
    b = _Builder(n).edge(1, (t - (n - 1) // 2) * w[0])
    for j in range(3, n + 1):
        b.x(j)
    return WitnessSpec(CASE_ONE, n, t, w, b.mono(), MonomialIdeal.maximal(n), "odd-maximal")


def even_cycle_witness(n: int, t: int, weights: Sequence[int]) -> WitnessSpec:
    """``n`` even, ``t >= n/2 + 1``, one non-trivial edge ``e_1``."""
    w = tuple(weights)
    if n % 2 or n < 4 or t < n // 2 + 1:
        raise FormulaDomainError("even-cycle witness needs n even and t >= n/2 + 1")
    _one_edge_shape(w, allow_trivial=True)
    b = _Builder(n).edge(1, (t - n // 2) * w[0])
    for k in range(3, n + 1):
        b.x(k)
    h = n // 2
    pairs = [(1, 2 * k) for k in range(1, h)]
    pairs += [(2 * i + 1, 2 * j) for i in range(2, h) for j in range(1, h)]
    gens = _pairs(n, pairs) + _vars(n, [3, n])
    return WitnessSpec(CASE_ONE, n, t, w, b.mono(), MonomialIdeal(n, gens), "even-high-power")


def build_witness(family: CycleFamily, t: int) -> WitnessSpec:
    """The witness matching the family's case and ``t``.

    Raises :class:`FormulaDomainError` when no witness is stated for ``(n, t)``.
    """
    n, w = family.n, family.weights
    if family.case == CASE_TWO:
        if n == 4:
            return four_cycle_witness(n, t, w)
        if n >= 5:
            return two_edge_witness(n, t, w)
    elif family.case == CASE_ONE:
        if t < ceil_div(n + 1, 2):
            return one_edge_witness(n, t, w)
        if n % 2:
            return odd_cycle_witness(n, t, w)
        return even_cycle_witness(n, t, w)
    raise FormulaDomainError(f"no witness for case {family.case} at n = {n}, t = {t}")


def one_edge_g_ideal(n: int, t: int, weights: Sequence[int], It: MonomialIdeal) -> MonomialIdeal:
    """``(I^t, g)`` given ``I^t``."""
    return ideal_sum(It, MonomialIdeal(n, [one_edge_g(n, t, weights)]))
