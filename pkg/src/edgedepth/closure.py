"""Integral closure of monomial ideals through their Newton polyhedra.

A monomial ``x^a`` is integral over ``I`` iff ``a`` lies in
``conv{exponents of G(I)} + R_{>=0}^n``, i.e. iff some convex combination of
the generator exponents is componentwise ``<= a``.  That is a small linear
feasibility problem, solved here exactly over the rationals.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .monomials import MonomialIdeal, contains


def _check(I: MonomialIdeal, a: Sequence[int]) -> None:
    if I.is_zero():
        raise ValueError("integral closure of the zero ideal is not supported")
    if len(a) != I.arity:
        raise ValueError("exponent vector has the wrong length")


def convex_certificate(I: MonomialIdeal, a: Sequence[int]) -> dict | None:
    """Weights ``λ_g >= 0`` with ``sum λ_g = 1`` and ``sum λ_g g <= a``, or ``None``.

    Maximises ``sum λ`` subject to ``sum λ_g g <= a`` and ``sum λ <= 1`` with a
    dense exact simplex (Bland's rule, so no cycling).  Every basis visited has
    at most ``n + 1`` generator columns, as Carathéodory's theorem allows.
    The point is in the Newton polyhedron iff the optimum reaches 1.
    """
    _check(I, a)
    for g in I.gens:
        if all(x <= y for x, y in zip(g, a)):
            return {tuple(g): Fraction(1)}
    gens = [g for g in I.gens]
    n, m = I.arity, len(gens)
    # rows 0..n-1: coordinate constraints, row n: sum λ <= 1
    # columns 0..m-1: λ, columns m..m+n: slacks
    rows = n + 1
    cols = m + rows
    T = []
    for j in range(n):
        row = [Fraction(g[j]) for g in gens] + [Fraction(0)] * rows + [Fraction(a[j])]
        row[m + j] = Fraction(1)
        T.append(row)
    last = [Fraction(1)] * m + [Fraction(0)] * rows + [Fraction(1)]
    last[m + n] = Fraction(1)
    T.append(last)
    basis = [m + r for r in range(rows)]
    # reduced costs for maximising sum λ: c_j - z_j, start with c
    cost = [Fraction(1)] * m + [Fraction(0)] * rows
    obj = Fraction(0)
    while True:
        enter = next((c for c in range(cols) if cost[c] > 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for r in range(rows):
            coef = T[r][enter]
            if coef > 0:
                ratio = T[r][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:  # cannot happen: sum λ <= 1 bounds the problem
            raise RuntimeError("unbounded Newton-polyhedron LP")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for r in range(rows):
            if r != leave and T[r][enter] != 0:
                f = T[r][enter]
                T[r] = [x - f * y for x, y in zip(T[r], T[leave])]
        f = cost[enter]
        cost = [c - f * y for c, y in zip(cost, T[leave][:-1])]
        obj += f * T[leave][-1]
        basis[leave] = enter
        if obj == 1:
            break
    if obj < 1:
        return None
    lam = {}
    for r, v in enumerate(basis):
        if v < m and T[r][-1] != 0:
            lam[tuple(gens[v])] = T[r][-1]
    return lam


def newton_membership(I: MonomialIdeal, a: Sequence[int]) -> bool:
    """Whether ``x^a`` lies in the integral closure of ``I``."""
    return convex_certificate(I, a) is not None


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Minimal generators of ``Ī``.

    Only the box ``0 <= a <= max(generator exponents)`` needs scanning: if
    ``p = sum λ_g g <= a`` then also ``p <= min(a, M)`` since every ``g <= M``,
    so truncating a member at ``M`` keeps it a member that divides it.
    """
    if I.is_zero():
        raise ValueError("integral closure of the zero ideal is not supported")
    top = [max(g[j] for g in I.gens) for j in range(I.arity)]
    found = list(I.gens)
    for a in sorted(product(*(range(x + 1) for x in top)), key=lambda v: (sum(v), v)):
        if any(all(x <= y for x, y in zip(g, a)) for g in found):
            continue
        if newton_membership(I, a):
            found.append(a)
    return MonomialIdeal(I.arity, found)


def is_integrally_closed_ideal(I: MonomialIdeal) -> bool:
    return integral_closure(I) == I


def closure_witness(I: MonomialIdeal):
    """A monomial in ``Ī`` but not in ``I``, or ``None`` when ``I`` is closed."""
    for g in integral_closure(I).gens:
        if not contains(I, g):
            return g
    return None
