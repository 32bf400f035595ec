"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in an
"acceptance criteria" section at the end of the pytest report.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache

import pytest

import oracles
from corpus import atlas_connected, full_corpus, random_graphs
from twsep.cayley import cyclic_group, free_product_ball, infinite_cyclic
from twsep.generators import (
    complete_graph,
    cycle_graph,
    grid_graph,
    random_gluing_spec,
    random_gnm,
)
from twsep.graph import Graph
from twsep.layout import cutwidth_exact, is_path_decomposition, pathwidth_exact
from twsep.profiles import profile
from twsep.separation import (
    balanced_separator_min,
    cutset_to_balanced_separator,
    cutsize_exact,
    separation_number,
    validate_balanced_separator,
)
from twsep.treegraded import compose, tw_profile_via_pieces, tw_via_grading, validate_tree_grading
from twsep.treewidth import treewidth_exact, validate_tree_decomposition

CAYLEY_PAIRS = {
    "Z2*Z2": (lambda: cyclic_group(2), lambda: cyclic_group(2)),
    "Z2*Z3": (lambda: cyclic_group(2), lambda: cyclic_group(3)),
    "Z3*Z3": (lambda: cyclic_group(3), lambda: cyclic_group(3)),
    "Z*Z": (infinite_cyclic, infinite_cyclic),
}
MAX_RADIUS = 6


def _edges(g: Graph):
    return sorted(g.edges)


@lru_cache(maxsize=None)
def _solved(g: Graph):
    """Exact values and certificates shared by several criteria."""
    tw, td = treewidth_exact(g)
    pw, pd = pathwidth_exact(g)
    cut, s = cutsize_exact(g)
    bsep, sep = balanced_separator_min(g)
    return {"tw": tw, "td": td, "pw": pw, "pd": pd, "cut": cut, "S": s, "bsep": bsep, "sep": sep}


@lru_cache(maxsize=None)
def _layout_oracle(g: Graph):
    return oracles.layout_costs(g.n, _edges(g))


@lru_cache(maxsize=None)
def _ball(name: str, radius: int):
    g, h = CAYLEY_PAIRS[name]
    return free_product_ball(g(), h(), radius)


def test_criterion_1_certificate_soundness(acceptance_report):
    failures = []
    oracle_checked = 0
    for idx, g in enumerate(full_corpus()):
        res = _solved(g)
        edges = _edges(g)
        td, pd, sep = res["td"], res["pd"], res["sep"]
        checks = {
            "td valid": validate_tree_decomposition(td) is None
            and oracles.is_tree_decomposition(g.n, edges, [sorted(b) for b in td.bags], td.tree_edges),
            "td width": td.width == res["tw"],
            "pd valid": validate_tree_decomposition(pd) is None and is_path_decomposition(pd)
            and oracles.is_tree_decomposition(g.n, edges, [sorted(b) for b in pd.bags], pd.tree_edges),
            "pd width": pd.width == res["pw"],
            "cutset": len(res["S"]) == res["cut"] and oracles.is_half_cutset(g.n, edges, res["S"]),
            "bsep": sep.size == res["bsep"] and oracles.is_balanced_separator(g.n, edges, sep.A, sep.B),
        }
        if g.n <= 7:
            oracle_checked += 1
            checks["tw oracle"] = res["tw"] == oracles.treewidth(g.n, edges)
            checks["pw oracle"] = res["pw"] == _layout_oracle(g)[1]
            checks["cut oracle"] = res["cut"] == oracles.cutsize(g.n, edges)
            checks["bsep oracle"] = res["bsep"] == oracles.balanced_separator_size(g.n, edges)
        failures += [(idx, name) for name, ok in checks.items() if not ok]
    ok = not failures
    acceptance_report(1, ok, f"{len(full_corpus())} graphs, {oracle_checked} oracle-checked (n<=7), "
                             f"{len(failures)} violations {failures[:5]}")
    assert ok


def test_criterion_2_graph_sandwich(acceptance_report):
    violations = []
    max_ratio, arg = 0.0, None
    for idx, g in enumerate(full_corpus()):
        res = _solved(g)
        sn, _ = separation_number(g)
        if not (res["cut"] - 1 <= res["tw"] <= 15 * sn):
            violations.append((idx, res["cut"], res["tw"], sn))
        ratio = res["tw"] / sn
        if ratio > max_ratio:
            max_ratio, arg = ratio, (g.n, g.m, res["tw"], sn)
    ok = not violations
    acceptance_report(2, ok, f"cut-1 <= tw <= 15 sn on {len(full_corpus())} graphs, {len(violations)} violations; "
                             f"max tw/sn = {max_ratio:.3f} at (n, m, tw, sn) = {arg}")
    assert ok


def _sandwich_targets():
    rnd = [g for g in random_graphs() if g.n >= 9][:12]
    targets = [("C12", cycle_graph(12), "all-induced"), ("grid4x4", grid_graph(4, 4), "all-induced"),
               ("K7", complete_graph(7), "all-induced")]
    targets += [(f"random#{i}(n={g.n})", g, "all-induced") for i, g in enumerate(rnd)]
    # the balls are too large for all-induced enumeration; connected subgraphs only
    for name in CAYLEY_PAIRS:
        targets.append((f"{name} ball r={MAX_RADIUS}", _ball(name, MAX_RADIUS)[0],
                        "all-induced" if _ball(name, MAX_RADIUS)[0].n <= 16 else "connected"))
    return targets


def test_criterion_3_profile_sandwich(acceptance_report):
    bad, partial = [], []
    for name, x, mode in _sandwich_targets():
        sep = profile(x, 8, "cut", mode=mode)
        tw = profile(x, 8, "tw", mode=mode)
        if sep.partial or tw.partial:
            partial.append(name)
        for k, (s, t) in enumerate(zip(sep.values(), tw.values()), 1):
            if not (s - 1 <= t <= 15 * s):
                bad.append((name, k, s, t))
    ok = not bad and not partial
    acceptance_report(3, ok, f"{len(_sandwich_targets())} targets, r<=8, {len(bad)} violations {bad[:3]}, "
                             f"truncated enumerations: {partial or 'none'}")
    assert ok


def test_criterion_4_conversion(acceptance_report):
    pairs = 0
    bad = []
    for idx, g in enumerate(full_corpus()):
        edges = _edges(g)
        res = _solved(g)
        if g.n <= 9:
            cutsets = oracles.minimal_half_cutsets(g.n, edges)
        else:
            cutsets = [sorted(res["S"])]
        for c in cutsets:
            pairs += 1
            sep = cutset_to_balanced_separator(g, c)
            if validate_balanced_separator(sep) is not None or sep.size != len(c) \
                    or not oracles.is_balanced_separator(g.n, edges, sep.A, sep.B):
                bad.append((idx, c))
        if res["bsep"] > res["cut"]:
            bad.append((idx, "bsep > cut"))
    ok = not bad
    acceptance_report(4, ok, f"{pairs} (graph, minimal cutset) pairs; bsep <= cut on {len(full_corpus())} graphs; "
                             f"{len(bad)} violations {bad[:3]}")
    assert ok


def test_criterion_5_treegraded_identities(acceptance_report):
    bad = []
    sizes = []
    for seed in range(200):
        spec, templates = random_gluing_spec(seed, max_vertices=14)
        tg = compose(spec, templates)
        sizes.append(tg.host.n)
        if validate_tree_grading(tg) is not None:
            bad.append((seed, "grading"))
            continue
        width, td = tw_via_grading(tg)
        exact, _ = treewidth_exact(tg.host)
        if width != exact or validate_tree_decomposition(td) is not None:
            bad.append((seed, "join", width, exact))
        host_prof = profile(tg.host, 8, "tw").values()
        piece_prof = tw_profile_via_pieces(tg, 8).values()
        if host_prof != piece_prof:
            bad.append((seed, "profile", host_prof, piece_prof))
    ok = not bad
    acceptance_report(5, ok, f"200 compositions (hosts {min(sizes)}..{max(sizes)} vertices), "
                             f"{len(bad)} violations {bad[:3]}")
    assert ok


def test_criterion_6_free_product_balls(acceptance_report):
    bad = []
    for name in CAYLEY_PAIRS:
        for radius in range(MAX_RADIUS + 1):
            g, tg, _ = _ball(name, radius)
            if validate_tree_grading(tg) is not None or validate_tree_grading(tg, loop_check="cycles") is not None:
                bad.append((name, radius, "grading"))
    for radius in range(1, MAX_RADIUS + 1):
        g = _ball("Z2*Z2", radius)[0]
        is_path = g.n == 2 * radius + 1 and g.m == g.n - 1 and g.is_connected() \
            and max(g.degree(v) for v in range(g.n)) <= 2
        prof = profile(g, 8, "tw").values()
        if not is_path or any(v != 1 for v in prof[1:]):
            bad.append(("Z2*Z2", radius, g.n, prof))
    for radius in range(MAX_RADIUS + 1):
        g = _ball("Z*Z", radius)[0]
        if g.n != 1 + 2 * (3 ** radius - 1) or g.m != g.n - 1 or not g.is_connected():
            bad.append(("Z*Z", radius, g.n, g.m))
    triangle = profile(cycle_graph(3), 8, "tw").values()
    z3 = _ball("Z3*Z3", MAX_RADIUS)[0]
    z3_prof = profile(z3, 8, "tw").values()
    for k in range(3, MAX_RADIUS // 2 + 1):
        if z3_prof[k - 1] != 2 or triangle[k - 1] != 2:
            bad.append(("Z3*Z3", k, z3_prof[k - 1], triangle[k - 1]))
    ok = not bad
    acceptance_report(6, ok, f"4 free products, radius 0..{MAX_RADIUS}: gradings valid, Z2*Z2 paths, Z*Z trees "
                             f"with 1+2(3^r-1) vertices, Z3*Z3 tw profile {z3_prof} vs triangle {triangle}; "
                             f"{len(bad)} violations {bad[:3]}")
    assert ok


def test_criterion_7_layout_chain(acceptance_report):
    bad = []
    count = 0
    for idx, g in enumerate(full_corpus()):
        if g.n > 8:
            continue
        count += 1
        res = _solved(g)
        cw, _ = cutwidth_exact(g)
        if not res["tw"] <= res["pw"] <= cw:
            bad.append((idx, res["tw"], res["pw"], cw))
        if g.n <= 7 and res["pw"] != _layout_oracle(g)[1]:
            bad.append((idx, "pw != vsn oracle"))
    kn = []
    for n in range(1, 8):
        k = complete_graph(n)
        brute = oracles.layout_costs(n, _edges(k))[0]
        formula = (n // 2) * ((n + 1) // 2)
        kn.append(brute)
        if not brute == formula == cutwidth_exact(k)[0]:
            bad.append((f"K{n}", brute, formula))
    ok = not bad
    acceptance_report(7, ok, f"tw <= pw <= cw on {count} graphs with n<=8, pw = vsn brute force on n<=7, "
                             f"cw(K_1..K_7) = {kn}; {len(bad)} violations {bad[:3]}")
    assert ok


def test_criterion_8_parallel_determinism(acceptance_report):
    rnd = next(g for g in random_graphs() if g.n == 12)
    targets = [("grid4x4", grid_graph(4, 4)), ("C12", cycle_graph(12)), ("random n=12", rnd)]
    bad = []
    for name, x in targets:
        for inv in ("tw", "cut"):
            tables = {jobs: profile(x, 8, inv, jobs=jobs).to_csv().encode() for jobs in (1, 2, 8)}
            if len(set(tables.values())) != 1:
                bad.append((name, inv))
    ok = not bad
    acceptance_report(8, ok, f"tw and cut profile CSVs with 1/2/8 workers on {len(targets)} graphs; "
                             f"{len(bad)} mismatches {bad}")
    assert ok


def test_criterion_9_performance(acceptance_report):
    g = random_gnm(20, 40, seed=9)
    t0 = time.perf_counter()
    tw, td = treewidth_exact(g)
    t_tw = time.perf_counter() - t0
    grid = grid_graph(4, 4)
    t0 = time.perf_counter()
    sep = profile(grid, 8, "cut")
    twp = profile(grid, 8, "tw")
    t_prof = time.perf_counter() - t0
    ok = t_tw < 300 and t_prof < 600 and not sep.partial and not twp.partial \
        and validate_tree_decomposition(td) is None
    acceptance_report(9, ok, f"tw(G(20,40)) = {tw} in {t_tw:.2f}s (limit 300s); 4x4 grid r=8 sep {sep.values()} "
                             f"and tw {twp.values()} in {t_prof:.2f}s (limit 600s)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
