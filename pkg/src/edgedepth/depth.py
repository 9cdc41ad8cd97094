"""Depth of ``S/I`` from multigraded Betti numbers.

``beta_{i,b}(I) = dim H~_{i-1}(K^b(I))`` where ``K^b(I)`` is the upper Koszul
complex; the Betti numbers live on the lcm lattice of ``I``.  Then
``pd(S/I) = 1 + max{i : beta_{i,b}(I) != 0}`` and ``depth(S/I) = n - pd(S/I)``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

import numpy as np

from .homology import check_field, closure, maximal, reduced_homology
from .monomials import MonomialIdeal, colon_monomial, contains, power

DEFAULT_MAX_GENS = 600
DEFAULT_MAX_LATTICE = 200_000
ENGINE_VERSION = "edgedepth-engine-1"

_CHUNK = 2048


class SizeLimitExceeded(RuntimeError):
    """An ideal or its lcm lattice is larger than the configured cap."""


class FieldDisagreement(RuntimeError):
    pass


@dataclass(frozen=True)
class LcmLattice:
    ideal: MonomialIdeal
    points: np.ndarray  # (size, n) int64, rows sorted lexicographically

    def __len__(self) -> int:
        return len(self.points)

    @property
    def multidegrees(self) -> list:
        return [tuple(int(x) for x in row) for row in self.points]


@dataclass(frozen=True)
class KoszulComplex:
    b: tuple
    ground: frozenset  # 1-based variables in the support of b
    faces: frozenset  # bitmasks, bit j-1 for variable x_j

    def face_sets(self) -> set:
        return {frozenset(j + 1 for j in range(len(self.b)) if f >> j & 1) for f in self.faces}


@dataclass
class BettiTable:
    field: str
    entries: dict  # (i, b) -> dim, nonzero entries only

    def __getitem__(self, key) -> int:
        i, b = key
        return self.entries.get((i, tuple(b)), 0)

    def row(self, i: int) -> dict:
        return {b: v for (j, b), v in self.entries.items() if j == i}

    def max_index(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def totals(self) -> dict:
        out: dict = {}
        for (i, _), v in self.entries.items():
            out[i] = out.get(i, 0) + v
        return dict(sorted(out.items()))


@dataclass
class DepthReport:
    ideal_hash: str
    n: int
    t: int
    depth: int
    pd: int
    field: str
    witness_b: list | None
    witness_i: int | None  # Betti index i of I with beta_{i,b}(I) != 0 attaining pd(S/I) = i + 1
    elapsed_ms: float = 0.0
    flags: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        d = {
            "ideal_hash": self.ideal_hash,
            "n": self.n,
            "t": self.t,
            "depth": self.depth,
            "pd": self.pd,
            "field": self.field,
            "witness_b": self.witness_b,
            "witness_i": self.witness_i,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.flags:
            d["flags"] = list(self.flags)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "DepthReport":
        return cls(d["ideal_hash"], d["n"], d["t"], d["depth"], d["pd"], d["field"],
                   d["witness_b"], d["witness_i"], d.get("elapsed_ms", 0.0), list(d.get("flags", [])))

    def same_result(self, other: "DepthReport") -> bool:
        """Equal up to timing."""
        a, b = self.to_json(), other.to_json()
        a.pop("elapsed_ms")
        b.pop("elapsed_ms")
        return a == b


def lcm_lattice(I: MonomialIdeal, max_gens: int = DEFAULT_MAX_GENS,
                max_lattice: int = DEFAULT_MAX_LATTICE) -> LcmLattice:
    """Join-closure of the generator exponents, built by a worklist of joins."""
    if I.is_zero():
        raise ValueError("the lcm lattice of the zero ideal is empty")
    if len(I) > max_gens:
        raise SizeLimitExceeded(f"{len(I)} generators exceed max_gens={max_gens}")
    gens = np.array(I.gens, dtype=np.int64)
    radix = gens.max(axis=0) + 1
    weights = np.cumprod(np.concatenate([[1], radix[:-1]]))
    if float(np.prod(radix.astype(float))) >= 2**62:
        raise SizeLimitExceeded("exponent box too large to encode")

    seen = set((gens @ weights).tolist())
    layers = [gens]
    frontier = gens
    while len(frontier):
        codes_parts, pts_parts = [], []
        for s in range(0, len(frontier), _CHUNK):
            joined = np.maximum(frontier[s:s + _CHUNK, None, :], gens[None, :, :]).reshape(-1, gens.shape[1])
            codes, idx = np.unique(joined @ weights, return_index=True)
            codes_parts.append(codes)
            pts_parts.append(joined[idx])
        codes = np.concatenate(codes_parts)
        pts = np.concatenate(pts_parts)
        codes, idx = np.unique(codes, return_index=True)
        fresh = np.fromiter((c not in seen for c in codes.tolist()), dtype=bool, count=len(codes))
        frontier = pts[idx][fresh]
        seen.update(codes[fresh].tolist())
        if len(seen) > max_lattice:
            raise SizeLimitExceeded(f"lcm lattice exceeds max_lattice={max_lattice}")
        layers.append(frontier)
    points = np.concatenate(layers)
    order = np.lexsort(points.T[::-1])
    return LcmLattice(I, points[order])


def koszul_complex(I: MonomialIdeal, b: Sequence[int]) -> KoszulComplex:
    """Faces ``τ ⊆ supp(b)`` with ``x^(b - e_τ) ∈ I``, by direct membership tests."""
    b = tuple(int(x) for x in b)
    if len(b) != I.arity:
        raise ValueError("multidegree has the wrong length")
    supp = [j for j in range(len(b)) if b[j] > 0]
    faces = set()
    for k in range(len(supp) + 1):
        for tau in combinations(supp, k):
            m = list(b)
            for j in tau:
                m[j] -= 1
            if contains(I, m):
                faces.add(sum(1 << j for j in tau))
    return KoszulComplex(b, frozenset(j + 1 for j in supp), frozenset(faces))


def reduced_homology_dims(K: KoszulComplex, field: str = "gf2") -> tuple:
    """``(H~_{-1}, ..., H~_{|ground|-1})`` of the complex."""
    return reduced_homology(K.faces, field, size=len(K.ground))


def _koszul_facets(gens: np.ndarray, bits: np.ndarray, points: np.ndarray) -> list:
    """Per lattice point, the maximal sets ``{j : g_j < b_j}`` over generators ``g | x^b``.

    These generate ``K^b(I)``: ``x^(b - e_τ) ∈ I`` iff some ``g | x^b`` has
    ``g_j <= b_j - 1`` for all ``j ∈ τ``.
    """
    out = []
    for s in range(0, len(points), _CHUNK):
        block = points[s:s + _CHUNK]
        below = gens[None, :, :] <= block[:, None, :]
        divides = below.all(axis=2)
        strict = (gens[None, :, :] < block[:, None, :]) @ bits
        for row_div, row_mask in zip(divides, strict):
            out.append(maximal(row_mask[row_div].tolist()))
    return out


def betti_table(I: MonomialIdeal, field: str = "gf2", max_gens: int = DEFAULT_MAX_GENS,
                max_lattice: int = DEFAULT_MAX_LATTICE) -> BettiTable:
    check_field(field)
    if I.is_zero():
        return BettiTable(field, {})
    lat = lcm_lattice(I, max_gens, max_lattice)
    gens = np.array(I.gens, dtype=np.int64)
    bits = np.array([1 << j for j in range(I.arity)], dtype=object if I.arity > 62 else np.int64)
    facet_sets = _koszul_facets(gens, bits, lat.points)
    homology: dict = {}
    entries: dict = {}
    for b, facets in zip(lat.multidegrees, facet_sets):
        h = homology.get(facets)
        if h is None:
            h = reduced_homology(closure(facets), field)
            homology[facets] = h
        for k, d in enumerate(h):
            if d:
                entries[(k, b)] = d  # H~_{k-1} gives beta_k
    return BettiTable(field, entries)


def betti_table_bruteforce(I: MonomialIdeal, field: str = "gf2") -> BettiTable:
    """Reference Betti table: lcms of every generator subset, direct Koszul complexes.

    Exponential in the number of generators; meant for tiny ideals only.
    """
    check_field(field)
    gens = list(I.gens)
    degrees = set()
    for k in range(1, len(gens) + 1):
        for sub in combinations(gens, k):
            degrees.add(tuple(max(c) for c in zip(*sub)))
    entries = {}
    for b in sorted(degrees):
        h = reduced_homology_dims(koszul_complex(I, b), field)
        for k, d in enumerate(h):
            if d:
                entries[(k, b)] = d
    return BettiTable(field, entries)


def depth_quotient(I: MonomialIdeal, field: str = "gf2", t: int = 1,
                   max_gens: int = DEFAULT_MAX_GENS, max_lattice: int = DEFAULT_MAX_LATTICE) -> DepthReport:
    """``depth(S/I)`` with the Betti number that certifies the projective dimension.

    ``t`` is bookkeeping only: pass the exponent when ``I`` is already a power.
    """
    start = time.perf_counter()
    n = I.arity
    if I.is_zero():
        return DepthReport(I.digest(), n, t, n, 0, field, None, None,
                           (time.perf_counter() - start) * 1e3)
    table = betti_table(I, field, max_gens, max_lattice)
    top = table.max_index()
    witness = min(b for (i, b) in table.entries if i == top)
    pd = top + 1
    return DepthReport(I.digest(), n, t, n - pd, pd, field, list(witness), top,
                       (time.perf_counter() - start) * 1e3)


def depth(I: MonomialIdeal, field: str = "gf2", **caps) -> int:
    return depth_quotient(I, field, **caps).depth


def depth_both(I: MonomialIdeal, t: int = 1, **caps) -> tuple:
    """GF(2) and rational reports; a disagreement is flagged on both, never resolved."""
    a = depth_quotient(I, "gf2", t, **caps)
    b = depth_quotient(I, "rational", t, **caps)
    if a.depth != b.depth:
        flag = f"field disagreement: gf2={a.depth} rational={b.depth}"
        a.flags.append(flag)
        b.flags.append(flag)
    return a, b


def witness_colon_maximal(I: MonomialIdeal, t: int, f: Sequence[int]) -> bool:
    """Whether ``(I^t : f)`` is the maximal ideal, which forces ``depth(S/I^t) = 0``."""
    It = power(I, t)
    if contains(It, f):
        raise ValueError("the witness must lie outside I^t")
    return colon_monomial(It, f) == MonomialIdeal.maximal(I.arity)
