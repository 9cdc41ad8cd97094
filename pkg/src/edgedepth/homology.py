"""Reduced simplicial homology of small complexes over GF(2) or the rationals.

Faces are encoded as integer bitmasks over the ground set: bit ``j`` set means
vertex ``j`` is in the face, and the empty face is ``0``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

FIELDS = ("gf2", "rational")


def check_field(field: str) -> str:
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}")
    return field


def rank_gf2(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix whose rows are packed into Python ints."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def rank_rational(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix over Q by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in matrix]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, m):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col, n):
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def closure(facets: Iterable[int]) -> frozenset:
    """All faces (bitmasks) of the complex generated by ``facets``."""
    faces = set()
    for f in facets:
        if f in faces:
            continue
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    return frozenset(faces)


def maximal(masks: Iterable[int]) -> frozenset:
    """Keep the inclusion-maximal bitmasks."""
    ms = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    out: list[int] = []
    for m in ms:
        if not any(m & o == m for o in out):
            out.append(m)
    return frozenset(out)


def _by_dim(faces: Iterable[int]) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for f in faces:
        groups.setdefault(bin(f).count("1") - 1, []).append(f)
    for g in groups.values():
        g.sort()
    return groups


def _boundary_rank(higher: list[int], lower: list[int], field: str) -> int:
    if not higher or not lower:
        return 0
    index = {f: i for i, f in enumerate(lower)}
    if field == "gf2":
        rows = []
        for f in higher:
            r = 0
            bits = f
            while bits:
                low = bits & -bits
                r |= 1 << index[f ^ low]
                bits ^= low
            rows.append(r)
        return rank_gf2(rows)
    matrix = []
    for f in higher:
        row = [0] * len(lower)
        sign = 1
        bits = f
        # vertices in increasing order; the k-th removal carries sign (-1)^k
        while bits:
            low = bits & -bits
            row[index[f ^ low]] = sign
            sign = -sign
            bits ^= low
        matrix.append(row)
    return rank_rational(matrix)


@lru_cache(maxsize=65536)
def _reduced_homology(faces: frozenset, field: str) -> tuple:
    if not faces:
        return ()
    groups = _by_dim(faces)
    top = max(groups)
    ranks = {d: _boundary_rank(groups.get(d, []), groups.get(d - 1, []), field)
             for d in range(0, top + 1)}
    dims = []
    for d in range(-1, top + 1):
        count = len(groups.get(d, []))
        dims.append(count - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return tuple(dims)


def reduced_homology(faces: Iterable[int], field: str = "gf2", size: int | None = None) -> tuple:
    """Dimensions ``(H~_{-1}, H~_0, ..., H~_{size-1})`` of reduced homology.

    ``faces`` must be downward closed.  The void complex (no faces) has all
    homology zero; the complex ``{∅}`` has ``H~_{-1} = 1``.  ``size`` pads the
    result to the length expected for a ground set of that many vertices.
    """
    check_field(field)
    dims = list(_reduced_homology(frozenset(faces), field))
    if size is not None:
        if size + 1 < len(dims):
            raise ValueError("faces use more vertices than the stated ground set")
        dims += [0] * (size + 1 - len(dims))
    return tuple(dims)


def euler_characteristic(faces: Iterable[int]) -> int:
    """Reduced Euler characteristic ``sum_d (-1)^d f_d`` counting the empty face at ``d = -1``."""
    return sum((-1) ** (bin(f).count("1") - 1) for f in faces)
