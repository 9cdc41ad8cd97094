"""Monomials and monomial ideals over a polynomial ring in ``n`` variables.

Everything here is exact and immutable.  An ideal always stores its minimal
generators sorted lexicographically by exponent vector, so two ideals are
equal exactly when their ``gens`` tuples are equal.
"""
from __future__ import annotations

import hashlib
import json
from typing import Iterable, Sequence

MAX_EXPONENT = 2**32 - 1


class ArityMismatch(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class ExponentOverflow(OverflowError):
    pass


class Monomial(tuple):
    """Exponent vector ``(a_1, ..., a_n)`` standing for ``x_1^a_1 ... x_n^a_n``.

    A plain tuple underneath, so monomials hash, compare lexicographically and
    unpack like tuples.
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        for e in exps:
            if e < 0:
                raise ValueError(f"negative exponent in {exps}")
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} does not fit in 32 bits")
        return super().__new__(cls, exps)

    @classmethod
    def one(cls, arity: int) -> "Monomial":
        return cls((0,) * arity)

    @classmethod
    def var(cls, arity: int, i: int, power: int = 1) -> "Monomial":
        """The monomial ``x_i^power`` with 1-based ``i``."""
        if not 1 <= i <= arity:
            raise ValueError(f"variable index {i} outside 1..{arity}")
        e = [0] * arity
        e[i - 1] = power
        return cls(e)

    @classmethod
    def from_dict(cls, arity: int, powers: dict) -> "Monomial":
        """Build from ``{variable (1-based): exponent}``."""
        e = [0] * arity
        for i, p in powers.items():
            if not 1 <= i <= arity:
                raise ValueError(f"variable index {i} outside 1..{arity}")
            e[i - 1] += p
        return cls(e)

    @property
    def arity(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def support(self) -> frozenset:
        return frozenset(i + 1 for i, e in enumerate(self) if e)

    def divides(self, other: Sequence[int]) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        _check_arity(self.arity, other.arity)
        return Monomial(a + b for a, b in zip(self, other))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(a * k for a in self)

    def lcm(self, other: "Monomial") -> "Monomial":
        _check_arity(self.arity, other.arity)
        return Monomial(max(a, b) for a, b in zip(self, other))

    def gcd(self, other: "Monomial") -> "Monomial":
        _check_arity(self.arity, other.arity)
        return Monomial(min(a, b) for a, b in zip(self, other))

    def quotient(self, other: "Monomial") -> "Monomial":
        """``self / gcd(self, other)``."""
        _check_arity(self.arity, other.arity)
        return Monomial(max(a - b, 0) for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Monomial({tuple(self)})"

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) or "1"


def _check_arity(a: int, b: int) -> None:
    if a != b:
        raise ArityMismatch(f"arity {a} vs {b}")


def _minimal(gens: Iterable[tuple]) -> tuple:
    # Sorting by degree first means a divisor is always seen before its multiples.
    cands = sorted(set(gens), key=lambda g: (sum(g), g))
    kept: list = []
    for g in cands:
        for h in kept:
            if all(a <= b for a, b in zip(h, g)):
                break
        else:
            kept.append(g)
    return tuple(sorted(Monomial(g) if not isinstance(g, Monomial) else g for g in kept))


class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    The zero ideal has no generators.  The unit ideal is deliberately not
    representable; constructing one raises ``ValueError``.
    """

    __slots__ = ("arity", "gens", "_hash")

    def __init__(self, arity: int, gens: Iterable[Sequence[int]] = (), *, _trusted: bool = False):
        if arity < 1:
            raise ValueError("arity must be positive")
        if _trusted:
            mins = tuple(gens)
        else:
            mons = []
            for g in gens:
                m = g if isinstance(g, Monomial) else Monomial(g)
                _check_arity(arity, m.arity)
                mons.append(m)
            mins = _minimal(mons)
        if any(not any(g) for g in mins):
            raise ValueError("the unit ideal is not representable")
        self.arity = arity
        self.gens = mins
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "MonomialIdeal":
        return cls(arity, ())

    @classmethod
    def maximal(cls, arity: int) -> "MonomialIdeal":
        return cls(arity, [Monomial.var(arity, i) for i in range(1, arity + 1)])

    @classmethod
    def variables(cls, arity: int, indices: Iterable[int]) -> "MonomialIdeal":
        """The ideal ``(x_i : i in indices)``."""
        return cls(arity, [Monomial.var(arity, i) for i in indices])

    # -- basic protocol ---------------------------------------------------
    @property
    def generators(self) -> tuple:
        return self.gens

    def is_zero(self) -> bool:
        return not self.gens

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.arity == other.arity and self.gens == other.gens

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, self.gens))
        return self._hash

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __pow__(self, t: int) -> "MonomialIdeal":
        return power(self, t)

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.arity}, {[tuple(g) for g in self.gens]})"

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"arity": self.arity, "generators": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialIdeal":
        return cls(int(data["arity"]), [tuple(g) for g in data["generators"]])

    def canonical(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


def minimalize(gens: Iterable[Sequence[int]], arity: int | None = None) -> MonomialIdeal:
    """Drop every generator divisible by another one.

    ``arity`` is only needed when ``gens`` is empty.
    """
    mons = [g if isinstance(g, Monomial) else Monomial(g) for g in gens]
    if not mons:
        if arity is None:
            raise ValueError("arity is required for an empty generator set")
        return MonomialIdeal.zero(arity)
    n = mons[0].arity
    for m in mons:
        _check_arity(n, m.arity)
    if arity is not None:
        _check_arity(arity, n)
    return MonomialIdeal(n, _minimal(mons), _trusted=True)


def contains(I: MonomialIdeal, m: Sequence[int]) -> bool:
    if len(m) != I.arity:
        raise ArityMismatch(f"arity {I.arity} vs {len(m)}")
    return any(all(a <= b for a, b in zip(g, m)) for g in I.gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_arity(I.arity, J.arity)
    return MonomialIdeal(I.arity, _minimal(I.gens + J.gens), _trusted=True)


def _mul_checked(g, h) -> tuple:
    e = tuple(a + b for a, b in zip(g, h))
    if max(e) > MAX_EXPONENT:
        raise ExponentOverflow(f"product exponent exceeds 32 bits: {max(e)}")
    return e


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_arity(I.arity, J.arity)
    prods = {_mul_checked(g, h) for g in I.gens for h in J.gens}
    return MonomialIdeal(I.arity, _minimal(prods), _trusted=True)


def power(I: MonomialIdeal, t: int) -> MonomialIdeal:
    """``I^t`` by repeated multiplication, minimalizing after every step."""
    if t < 1:
        raise ValueError("power must be at least 1 (the unit ideal is not representable)")
    out = I
    for _ in range(t - 1):
        out = product(out, I)
    return out


def colon_monomial(I: MonomialIdeal, f: Sequence[int]) -> MonomialIdeal:
    """``(I : f)``, generated by ``g / gcd(g, f)`` over the generators ``g``."""
    if len(f) != I.arity:
        raise ArityMismatch(f"arity {I.arity} vs {len(f)}")
    quots = [tuple(max(a - b, 0) for a, b in zip(g, f)) for g in I.gens]
    if any(not any(q) for q in quots):
        # f already lies in I; the colon is the whole ring.
        raise ValueError(f"{f} lies in the ideal, so the colon is the unit ideal")
    return MonomialIdeal(I.arity, _minimal(quots), _trusted=True)


def intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_arity(I.arity, J.arity)
    lcms = {tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens}
    return MonomialIdeal(I.arity, _minimal(lcms), _trusted=True)


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """``(I : J)`` as the intersection of ``(I : g)`` over the generators of ``J``.

    Generators already in ``I`` contribute the unit ideal and drop out of the
    intersection; if all of them do (``J ⊆ I``) the result is the unit ideal,
    which is not representable, and ``ValueError`` is raised.
    """
    _check_arity(I.arity, J.arity)
    if J.is_zero():
        raise ValueError("colon by the zero ideal is the unit ideal")
    out = None
    for g in J.gens:
        if contains(I, g):
            continue
        c = colon_monomial(I, g)
        out = c if out is None else intersection(out, c)
    if out is None:
        raise ValueError("J lies in I, so the colon is the unit ideal")
    return out


def equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    _check_arity(I.arity, J.arity)
    return I.gens == J.gens


def is_subset(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """``I ⊆ J``."""
    _check_arity(I.arity, J.arity)
    return all(contains(J, g) for g in I.gens)


def extend(I: MonomialIdeal, arity: int, positions: Sequence[int]) -> MonomialIdeal:
    """Embed ``I`` into a bigger ring, sending variable ``k`` to ``positions[k-1]`` (1-based)."""
    if len(positions) != I.arity:
        raise ArityMismatch("one position per variable is required")
    out = []
    for g in I.gens:
        e = [0] * arity
        for k, p in enumerate(positions):
            e[p - 1] = g[k]
        out.append(tuple(e))
    return MonomialIdeal(arity, out)
