"""Batch checks: formula-vs-engine tables, colon identity replay, closure
agreement sweeps and randomized invariant suites.

Each suite returns a list of :class:`Check` (or :class:`ComparisonRow`) in a
deterministic order so reports diff cleanly between runs.
"""
from __future__ import annotations

import csv
import io
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence

import numpy as np

from . import formulas as F
from .cache import ReportCache, cached_depth
from .closure import is_integrally_closed_ideal
from .depth import SizeLimitExceeded, betti_table, betti_table_bruteforce, depth, depth_quotient
from .graphs import (CASE_ONE, CASE_THREE, CASE_TRIVIAL, CASE_TWO, WeightedGraph, build_cycle,
                     build_path, cycle_family, edge_ideal, enumerate_weighted_graphs,
                     is_integrally_closed_graph, restrict_edges)
from .homology import euler_characteristic, reduced_homology
from .monomials import (Monomial, MonomialIdeal, colon_monomial, contains, extend, ideal_sum,
                        power, product as ideal_product)

DEFAULT_SEED = 20240607

CSV_COLUMNS = ("family", "n", "weights", "t", "formula_kind", "formula_value",
               "engine_gf2", "engine_rat", "match", "ms")


@dataclass
class Check:
    suite: str
    name: str
    params: dict
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        p = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"[{status}] {self.suite}:{self.name} {p}" + (f"  -- {self.detail}" if self.detail and not self.passed else "")


@dataclass
class ComparisonRow:
    family: str
    n: int
    weights: list
    t: int
    formula_kind: str
    formula_value: int | None
    engine_gf2: int | None
    engine_rat: int | None
    match: bool | None  # None when skipped for caps
    ms: float
    note: str = field(default="", compare=False)

    @property
    def skipped(self) -> bool:
        return self.match is None

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("note")
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ComparisonRow":
        return cls(**{k: d[k] for k in CSV_COLUMNS})

    def to_csv_cells(self) -> list:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, list):
                return " ".join(str(x) for x in v)
            return str(v)
        d = self.to_json()
        return [cell(d[k]) for k in CSV_COLUMNS]

    @classmethod
    def from_csv_cells(cls, cells: Sequence[str]) -> "ComparisonRow":
        d = dict(zip(CSV_COLUMNS, cells))

        def opt_int(v):
            return None if v == "" else int(v)
        return cls(d["family"], int(d["n"]), [int(x) for x in d["weights"].split()], int(d["t"]),
                   d["formula_kind"], opt_int(d["formula_value"]), opt_int(d["engine_gf2"]),
                   opt_int(d["engine_rat"]), {"true": True, "false": False, "": None}[d["match"]],
                   float(d["ms"]))


def rows_to_csv(rows: Iterable[ComparisonRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.to_csv_cells())
    return buf.getvalue()


def rows_from_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    return [ComparisonRow.from_csv_cells(cells) for cells in reader]



# -- family instances -----------------------------------------------------------

def family_weights(case: str, n: int, w1: int = 2, w3: int = 2, w5: int = 2) -> tuple:
    """Normalized weight vector for a family tag on ``C^n``."""
    w = [1] * n
    if case == CASE_TRIVIAL:
        return tuple(w)
    if case == CASE_ONE:
        w[0] = w1
    elif case == CASE_TWO:
        if n < 3:
            raise ValueError("two-edge cycles need n >= 3")
        w[0], w[2] = w1, w3
    elif case == CASE_THREE:
        if n != 6:
            raise ValueError("three-edge cycles need n = 6")
        w[0], w[2], w[4] = w1, w3, w5
    else:
        raise ValueError(f"unknown family {case!r}")
    return tuple(w)


def _compare_one(args) -> ComparisonRow:
    case, n, weights, t, fields, caps, cache_dir = args
    cache = ReportCache(cache_dir) if cache_dir else None
    fam = cycle_family(n, weights)
    res = F.weighted_cycle_depth(fam, t)
    start = time.perf_counter()
    got = {}
    try:
        I = power(fam.ideal, t)
        for fld in fields:
            got[fld] = cached_depth(I, fld, t, cache, **caps).depth
    except SizeLimitExceeded as exc:
        return ComparisonRow(case, n, list(fam.weights), t, res.kind, res.value, None, None, None,
                             round((time.perf_counter() - start) * 1e3, 3), f"skipped: {exc}")
    ms = round((time.perf_counter() - start) * 1e3, 3)
    if not res.covered:
        match = None
    else:
        match = all(res.agrees(d) for d in got.values()) and len(set(got.values())) == 1
    return ComparisonRow(case, n, list(fam.weights), t, res.kind, res.value,
                         got.get("gf2"), got.get("rational"), match, ms,
                         "" if res.covered else "formula not covered")


def _run(fn: Callable, jobs: Iterable, workers: int) -> list:
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))  # map keeps input order


def comparison_table(case: str, ns: Iterable[int], ts: Iterable[int], *, w1=2, w3=2, w5=2,
                     fields=("gf2",), caps: dict | None = None, workers: int = 1,
                     cache_dir: str | None = None) -> list:
    caps = caps or {}
    cache_dir = str(cache_dir) if cache_dir else None
    jobs = [(case, n, family_weights(case, n, w1, w3, w5), t, tuple(fields), caps, cache_dir)
            for n in ns for t in ts]
    return _run(_compare_one, jobs, workers)


# -- colon replay -------------------------------------------------------------------

def _var_ideal(n, *idx) -> MonomialIdeal:
    return MonomialIdeal.variables(n, idx)


def _add_vars(I: MonomialIdeal, *idx) -> MonomialIdeal:
    return ideal_sum(I, _var_ideal(I.arity, *idx))


def _colon_var(I: MonomialIdeal, *idx) -> MonomialIdeal:
    return colon_monomial(I, Monomial.from_dict(I.arity, {k: 1 for k in idx}))


def _deleted(G, *vs) -> MonomialIdeal:
    return edge_ideal(restrict_edges(G, set(G.vertices) - set(vs)))


def _identity(suite, name, params, lhs: Callable, rhs: Callable) -> Check:
    try:
        a, b = lhs(), rhs()
    except Exception as exc:  # a failure to even form the ideals is a failed identity
        return Check(suite, name, params, False, f"error: {exc}")
    return Check(suite, name, params, a == b, "" if a == b else f"lhs={a} rhs={b}")


def _witness_check(W: F.WitnessSpec) -> Check:
    params = {"n": W.n, "t": W.t, "w": list(W.weights)}
    It = power(W.ideal, W.t)
    if contains(It, W.f):
        return Check("colon", W.label, params, False, f"f={W.f} lies in I^t")
    got = colon_monomial(It, W.f)
    ok = got == W.expected_colon
    return Check("colon", W.label, params, ok, "" if ok else f"f={W.f} colon={got} expected={W.expected_colon}")


def colon_suite() -> list:
    checks = []
    two_edge_ws = [(2, 2), (3, 2)]
    for w1, w3 in two_edge_ws:
        for t in (2, 3, 4):
            checks.append(_witness_check(F.four_cycle_witness(4, t, (w1, 1, w3, 1))))
    for n in (5, 6):
        for w1, w3 in two_edge_ws:
            for t in range(2, n + 1):
                checks.append(_witness_check(F.two_edge_witness(n, t, family_weights(CASE_TWO, n, w1, w3))))
    for n in (4, 5, 6, 7):
        for w1 in (2, 3):
            w = family_weights(CASE_ONE, n, w1)
            for t in range(2, F.ceil_div(n + 1, 2)):
                checks.append(_witness_check(F.one_edge_witness(n, t, w)))
                checks.append(_witness_check(F.one_edge_g_witness(n, t, w)))
    for n, ts in ((4, (3, 4)), (6, (4, 5))):
        for w1 in (2, 3):
            for t in ts:
                checks.append(_witness_check(F.even_cycle_witness(n, t, family_weights(CASE_ONE, n, w1))))
    for n, ts in ((5, (3, 4)), (7, (4,))):
        for w1 in (1, 2, 3):
            for t in ts:
                checks.append(_witness_check(F.odd_cycle_witness(n, t, family_weights(CASE_ONE, n, w1))))
    checks += path_colon_checks()
    checks += cycle_colon_checks()
    return checks


def path_colon_checks(ns=(3, 4, 5, 6), ts=(2, 3), max_w: int = 2) -> list:
    """Five colon/sum identities for weighted paths with ``w_{n-1} = 1``."""
    out = []
    for n in ns:
        for ws in product(range(1, max_w + 1), repeat=n - 1):
            if ws[-1] != 1:
                continue
            G = build_path(n, ws)
            if not is_integrally_closed_graph(G)[0]:
                continue
            I = edge_ideal(G)
            for t in ts:
                It = power(I, t)
                p = {"n": n, "t": t, "w": list(ws)}
                a, b = n - 1, n
                out.append(_identity("colon", "path-end(1)", p,
                                     lambda: _colon_var(It, a, b), lambda: power(I, t - 1)))
                out.append(_identity("colon", "path-end(2)", p,
                                     lambda: _add_vars(_colon_var(It, b), a),
                                     lambda: _add_vars(power(_deleted(G, a), t), a)))
                out.append(_identity("colon", "path-end(3)", p,
                                     lambda: _add_vars(It, b),
                                     lambda: _add_vars(power(_deleted(G, b), t), b)))
                out.append(_identity("colon", "path-end(4)", p,
                                     lambda: _add_vars(It, a),
                                     lambda: _add_vars(power(_deleted(G, a), t), a)))
                out.append(_identity("colon", "path-end(5)", p,
                                     lambda: _add_vars(_colon_var(It, a), b),
                                     lambda: _add_vars(_colon_var(power(_deleted(G, b), t), a), b)))
    return out


def cycle_colon_checks(ts=(2, 3)) -> list:
    """Colon/sum identities behind the induction steps on cycles."""
    out = []
    for ws in ((2, 1, 2, 1, 2, 1), (3, 1, 2, 1, 2, 1), (3, 1, 3, 1, 2, 1)):
        G = build_cycle(6, ws)
        I = edge_ideal(G)
        for t in ts:
            It = power(I, t)
            p = {"n": 6, "t": t, "w": list(ws)}
            out.append(_identity("colon", "three-edge-c6:(I^t,x1)", p, lambda: _add_vars(It, 1),
                                 lambda: _add_vars(power(_deleted(G, 1), t), 1)))
            out.append(_identity("colon", "three-edge-c6:(I^t:x1x6)", p, lambda: _colon_var(It, 1, 6),
                                 lambda: power(I, t - 1)))
            out.append(_identity("colon", "three-edge-c6:((I^t:x1),x6)", p,
                                 lambda: _add_vars(_colon_var(It, 1), 6),
                                 lambda: _colon_var(_add_vars(It, 6), 1)))
            out.append(_identity("colon", "three-edge-c6:(I^t,x6)", p, lambda: _add_vars(It, 6),
                                 lambda: _add_vars(power(_deleted(G, 6), t), 6)))
            out.append(_identity("colon", "three-edge-c6:((I^t,x6),x1)", p, lambda: _add_vars(It, 1, 6),
                                 lambda: _add_vars(power(_deleted(G, 1, 6), t), 1, 6)))
    for n in (4, 5, 6, 7):
        for w1, w3 in ((2, 2), (3, 2)):
            ws = family_weights(CASE_TWO, n, w1, w3)
            G = build_cycle(n, ws)
            I = edge_ideal(G)
            for t in ts:
                It = power(I, t)
                p = {"n": n, "t": t, "w": list(ws)}
                out.append(_identity("colon", "two-edge-step:(I^t,x3)", p, lambda: _add_vars(It, 3),
                                     lambda: _add_vars(power(_deleted(G, 3), t), 3)))
                out.append(_identity("colon", "two-edge-step:(I^t:x3x2)", p, lambda: _colon_var(It, 2, 3),
                                     lambda: power(I, t - 1)))
                out.append(_identity("colon", "two-edge-step:((I^t:x3),x2)", p,
                                     lambda: _add_vars(_colon_var(It, 3), 2),
                                     lambda: _colon_var(_add_vars(It, 2), 3)))
                out.append(_identity("colon", "two-edge-step:((I^t,x2),x3)", p, lambda: _add_vars(It, 2, 3),
                                     lambda: _add_vars(power(_deleted(G, 2, 3), t), 2, 3)))
    for w1, w3 in ((2, 2), (3, 2), (3, 3)):
        ws = (w1, 1, w3)
        I = edge_ideal(build_cycle(3, ws))
        for t in ts:
            It = power(I, t)
            p = {"n": 3, "t": t, "w": list(ws)}
            out.append(_identity("colon", "triangle:(I^t:x2x3)", p, lambda: _colon_var(It, 2, 3),
                                 lambda: power(I, t - 1)))
            out.append(_identity("colon", "triangle:((I^t:x2),x3)", p,
                                 lambda: _add_vars(_colon_var(It, 2), 3),
                                 lambda: MonomialIdeal(3, [(w1 * t, w1 * t - 1, 0), (0, 0, 1)])))
            out.append(_identity("colon", "triangle:(I^t,x2)", p, lambda: _add_vars(It, 2),
                                 lambda: MonomialIdeal(3, [(w3 * t, 0, w3 * t), (0, 1, 0)])))
    return out


# -- closure agreement -------------------------------------------------------------

def closure_agreement(graphs: Iterable, suite_name: str = "closure") -> list:
    """Forbidden-subgraph test vs Newton-polyhedron oracle; edgeless graphs are skipped
    (the zero ideal is outside the oracle's domain and trivially closed)."""
    out = []
    for G in graphs:
        if not G.edges:
            continue
        by_graph, cert = is_integrally_closed_graph(G)
        by_ideal = is_integrally_closed_ideal(edge_ideal(G))
        out.append(Check(suite_name, "graph==ideal", {"n": G.n, "edges": [list(e) for e in G.edges]},
                         by_graph == by_ideal, f"graph={by_graph} ({cert}) ideal={by_ideal}"))
    return out


def closure_corpus(max_n: int, max_w: int) -> Iterable:
    for n in range(1, max_n + 1):
        yield from enumerate_weighted_graphs(n, max_w)


def _isomorphism_classes(n: int, max_w: int) -> dict:
    """Group every edge-state vector on ``n`` labelled vertices by a canonical code.

    A graph is a vector of pair states (0 = no edge, else the weight); its code
    is the smallest base-``max_w+1`` integer over all vertex relabellings.
    """
    pairs = list(combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    base = max_w + 1
    states = np.array(list(product(range(base), repeat=len(pairs))), dtype=np.int64).reshape(-1, len(pairs))
    place = base ** np.arange(len(pairs) - 1, -1, -1, dtype=np.int64)
    best = None
    for perm in permutations(range(n)):
        # position of the image of each pair under the relabelling
        moved = [index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs]
        codes = states[:, np.argsort(moved)] @ place
        best = codes if best is None else np.minimum(best, codes)
    classes: dict = {}
    for row, code in zip(states.tolist(), best.tolist()):
        edges = tuple((a + 1, b + 1, w) for (a, b), w in zip(pairs, row) if w)
        classes.setdefault(code, []).append(WeightedGraph(n, edges))
    return classes


def exhaustive_closure_agreement(n: int, max_w: int) -> list:
    """Every graph on ``n`` labelled vertices: the graph test runs on each one,
    the ideal oracle once per isomorphism class (closedness ignores labels)."""
    out = []
    for code, members in sorted(_isomorphism_classes(n, max_w).items()):
        rep = members[0]
        if not rep.edges:
            continue
        by_ideal = is_integrally_closed_ideal(edge_ideal(rep))
        bad = [G for G in members if is_integrally_closed_graph(G)[0] != by_ideal]
        detail = f"ideal={by_ideal}; disagreeing graph {bad[0].edges}" if bad else ""
        out.append(Check("closure", "graph==ideal", {"n": n, "class": [list(e) for e in rep.edges],
                                                     "members": len(members)}, not bad, detail))
    return out


def closure_suite(max_n: int = 4, max_w: int = 2, cycles_paths_n: int | None = 5,
                  sample: int = 2000, seed: int = DEFAULT_SEED) -> list:
    """Exhaustive up to ``max_n <= 5, max_w <= 2``; larger corpora are sampled.

    Exhaustive checks are grouped by isomorphism class, each check covering
    every labelled graph in its class.
    """
    out = []
    if max_n <= 5 and max_w <= 2:
        for n in range(2, max_n + 1):
            out += exhaustive_closure_agreement(n, max_w)
        graphs = []
    else:
        rng = random.Random(seed)
        graphs = []
        for _ in range(sample):
            n = rng.randint(2, max_n)
            pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
            edges = [(i, j, rng.randint(1, max_w)) for (i, j) in pairs if rng.random() < 0.5]
            graphs.append(WeightedGraph(n, tuple(edges)))
    if cycles_paths_n:
        k = cycles_paths_n
        for ws in product(range(1, max_w + 1), repeat=k):
            graphs.append(build_cycle(k, ws))
        for ws in product(range(1, max_w + 1), repeat=k - 1):
            graphs.append(build_path(k, ws))
    return out + closure_agreement(graphs)


# -- randomized invariants ---------------------------------------------------------

def random_ideal(rng: random.Random, n: int, max_gens: int = 4, max_exp: int = 2) -> MonomialIdeal:
    while True:
        k = rng.randint(1, max_gens)
        gens = []
        for _ in range(k):
            e = [rng.randint(0, max_exp) for _ in range(n)]
            if any(e):
                gens.append(e)
        if gens:
            return MonomialIdeal(n, gens)


def random_monomial(rng: random.Random, n: int, max_exp: int = 3) -> Monomial:
    return Monomial(rng.randint(0, max_exp) for _ in range(n))


def sum_rule_checks(rng: random.Random, count: int = 20) -> list:
    out = []
    for k in range(count):
        m, r = rng.randint(1, 3), rng.randint(1, 3)
        I, J = random_ideal(rng, m), random_ideal(rng, r)
        n = m + r
        Ie = extend(I, n, range(1, m + 1))
        Je = extend(J, n, range(m + 1, n + 1))
        lhs = depth(ideal_sum(Ie, Je))
        rhs = depth(I) + depth(J)
        out.append(Check("property", "sum-additivity", {"k": k, "I": str(I), "J": str(J)},
                         lhs == rhs, f"{lhs} != {rhs}"))
    return out


def product_rule_checks(rng: random.Random, count: int = 10) -> list:
    out = []
    for k in range(count):
        m, r = rng.randint(1, 3), rng.randint(1, 3)
        I, J = random_ideal(rng, m), random_ideal(rng, r)
        n = m + r
        Ie = extend(I, n, range(1, m + 1))
        Je = extend(J, n, range(m + 1, n + 1))
        lhs = depth(ideal_product(Je, Ie))
        rhs = depth(I) + depth(J) + 1
        out.append(Check("property", "product-rule", {"k": k, "I": str(I), "J": str(J)},
                         lhs == rhs, f"{lhs} != {rhs}"))
    return out


def colon_inequality_checks(rng: random.Random, count: int = 100) -> list:
    """``depth S/I <= depth S/(I:f)`` and ``depth S/I >= min(depth S/(I:f), depth S/(I,f))``."""
    out = []
    k = 0
    while k < count:
        n = rng.randint(2, 4)
        I = random_ideal(rng, n, max_gens=5)
        f = random_monomial(rng, n, 2)
        if contains(I, f) or not any(f):
            continue
        d = depth(I)
        dc = depth(colon_monomial(I, f))
        ds = depth(ideal_sum(I, MonomialIdeal(n, [f])))
        ok = d <= dc and d >= min(dc, ds)
        out.append(Check("property", "colon-inequality", {"k": k, "I": str(I), "f": str(f)},
                         ok, f"depth={d} colon={dc} sum={ds}"))
        k += 1
    return out


def betti_bruteforce_checks(rng: random.Random, count: int = 50) -> list:
    out = []
    for k in range(count):
        n = rng.randint(1, 4)
        I = random_ideal(rng, n, max_gens=6)
        ok = True
        for fld in ("gf2", "rational"):
            a = betti_table(I, fld).entries
            b = betti_table_bruteforce(I, fld).entries
            ok &= a == b
        out.append(Check("property", "betti-bruteforce", {"k": k, "I": str(I)}, ok))
    return out


def euler_checks(rng: random.Random, count: int = 30) -> list:
    from .depth import koszul_complex, lcm_lattice

    out = []
    for k in range(count):
        I = random_ideal(rng, rng.randint(2, 4), max_gens=5)
        ok = True
        for b in lcm_lattice(I).multidegrees:
            K = koszul_complex(I, b)
            for fld in ("gf2", "rational"):
                h = reduced_homology(K.faces, fld)
                ok &= euler_characteristic(K.faces) == sum((-1) ** (d - 1) * x for d, x in enumerate(h))
        out.append(Check("property", "euler-characteristic", {"k": k, "I": str(I)}, ok))
    return out


def field_agreement_checks(rng: random.Random, count: int = 30) -> list:
    out = []
    for k in range(count):
        I = random_ideal(rng, rng.randint(2, 5), max_gens=6, max_exp=3)
        a, b = depth(I, "gf2"), depth(I, "rational")
        out.append(Check("property", "field-agreement", {"k": k, "I": str(I)}, a == b, f"gf2={a} rational={b}"))
    return out


def cache_replay_checks(rng: random.Random, cache_dir, count: int = 20) -> list:
    """A report written to disk and read back matches a fresh computation."""
    out = []
    for k in range(count):
        I = random_ideal(rng, rng.randint(2, 4), max_gens=5)
        fld = rng.choice(("gf2", "rational"))
        cache = ReportCache(cache_dir)
        first = cached_depth(I, fld, 1, cache)
        replay = cached_depth(I, fld, 1, ReportCache(cache_dir))
        fresh = depth_quotient(I, fld, 1)
        ok = replay.same_result(fresh) and first.same_result(fresh)
        out.append(Check("property", "cache-replay", {"k": k, "I": str(I), "field": fld}, ok))
    return out


def property_suite(seed: int = DEFAULT_SEED, cache_dir=None) -> list:
    """Every randomized invariant, deterministic in ``seed``.

    Without ``cache_dir`` the cache replay runs in a throwaway directory.
    """
    rng = random.Random(seed)
    out = (sum_rule_checks(rng) + product_rule_checks(rng) + colon_inequality_checks(rng)
           + betti_bruteforce_checks(rng) + euler_checks(rng) + field_agreement_checks(rng))
    if cache_dir is None:
        with tempfile.TemporaryDirectory() as tmp:
            out += cache_replay_checks(rng, tmp)
    else:
        out += cache_replay_checks(rng, cache_dir)
    return out
