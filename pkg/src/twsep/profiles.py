"""Profiles: ``k -> max invariant over subgraphs with at most k vertices``.

Subgraphs are enumerated as vertex bitmasks; each is scored on its induced
adjacency. The reduction keeps, per size, the largest value and the earliest
enumeration index attaining it, so the result (witnesses included) does not
depend on how the work is split across processes.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from twsep import kernels
from twsep.errors import InputError
from twsep.graph import (
    Graph,
    enumerate_connected_induced_subgraphs,
    enumerate_induced_subsets,
    local_adjacency,
    members,
)

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "TWSEP_BUDGET"

INVARIANTS = ("tw", "cut", "cw", "pw", "sumcut")
MODES = ("connected", "all-induced")


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _scorer(invariant: str):
    if invariant == "tw":
        return lambda adj: kernels.tw_order(adj)[0]
    if invariant == "cut":
        return lambda adj: kernels.cutsize_search(adj)[0]
    if invariant == "cw":
        return lambda adj: kernels.cutwidth_order(adj)[0]
    if invariant == "pw":
        return lambda adj: kernels.vsn_order(adj)[0]
    if invariant == "sumcut":
        return lambda adj: kernels.sumcut_order(adj)[0]
    raise InputError(f"unknown profile invariant {invariant!r}; choose from {', '.join(INVARIANTS)}")


@dataclass(frozen=True)
class ProfileRow:
    k: int
    value: int
    witness: tuple[int, ...]


@dataclass
class Profile:
    invariant: str
    mode: str
    rows: list[ProfileRow]
    partial: bool = False
    examined: int = 0
    notes: list[str] = field(default_factory=list)

    def values(self) -> list[int]:
        return [row.value for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "value", "lower_bound", "witness"])
        for row in self.rows:
            w.writerow([row.k, row.value, str(self.partial).lower(), " ".join(map(str, row.witness))])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "mode": self.mode,
            "partial": self.partial,
            "examined": self.examined,
            "rows": [{"k": r.k, "value": r.value, "witness": list(r.witness)} for r in self.rows],
            "notes": list(self.notes),
        }


def _score_chunk(adj, invariant, masks, base, deadline):
    """Per-size best ``(value, index, mask)`` over one contiguous chunk."""
    score = _scorer(invariant)
    memo: dict[tuple[int, ...], int] = {}
    best: dict[int, tuple[int, int, int]] = {}
    done = 0
    for offset, mask in enumerate(masks):
        if deadline is not None and offset % 256 == 0 and time.monotonic() > deadline:
            break
        local = tuple(local_adjacency(adj, mask))
        val = memo.get(local)
        if val is None:
            val = memo[local] = score(local)
        size = len(local)
        cur = best.get(size)
        if cur is None or val > cur[0]:
            best[size] = (val, base + offset, mask)
        done += 1
    return best, done


def _merge(into, part):
    for size, cand in part.items():
        cur = into.get(size)
        if cur is None or cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1]):
            into[size] = cand


def profile(
    x: Graph,
    r: int,
    invariant: str,
    mode: str = "connected",
    budget: int | None = None,
    jobs: int = 1,
    time_limit: float | None = None,
) -> Profile:
    """Compute the ``invariant`` profile of ``x`` for k = 1..r.

    ``mode="connected"`` ranges over connected induced subgraphs,
    ``"all-induced"`` over every induced subgraph. At most ``budget`` subgraphs
    are scored (in enumeration order); if the budget or ``time_limit`` cuts the
    run short the profile is flagged ``partial`` and its values are lower
    bounds.
    """
    if r < 1:
        raise InputError("size bound r must be >= 1")
    if x.n < 1:
        raise InputError("profile of the empty graph is undefined")
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    _scorer(invariant)
    budget = default_budget() if budget is None else budget
    deadline = None if time_limit is None else time.monotonic() + time_limit
    source = (enumerate_connected_induced_subgraphs if mode == "connected" else enumerate_induced_subsets)(x, r)
    adj = x.adj

    # one extra element tells us whether the budget truncated the stream
    masks = list(islice(source, budget + 1))
    partial = len(masks) > budget
    masks = masks[:budget]

    best: dict[int, tuple[int, int, int]] = {}
    examined = 0
    if jobs <= 1 or len(masks) < 2:
        part, examined = _score_chunk(adj, invariant, masks, 0, deadline)
        _merge(best, part)
    else:
        nchunks = min(len(masks), jobs * 4)
        step = -(-len(masks) // nchunks)
        starts = range(0, len(masks), step)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_score_chunk, adj, invariant, masks[s:s + step], s, deadline)
                for s in starts
            ]
            for fut in futures:
                part, done = fut.result()
                _merge(best, part)
                examined += done
    if examined < len(masks):
        partial = True

    rows = []
    running = None
    for k in range(1, r + 1):
        cand = best.get(k)
        if cand is not None and (running is None or cand[0] > running[0]
                                 or (cand[0] == running[0] and cand[1] < running[1])):
            running = cand
        if running is None:
            rows.append(ProfileRow(k, 0, ()))
        else:
            rows.append(ProfileRow(k, running[0], tuple(members(running[2]))))
    notes = []
    if invariant == "sumcut":
        notes.append("sumcut = min over orders of the summed vertex boundary of prefixes (chosen definition)")
    return Profile(invariant, mode, rows, partial, examined, notes)
