"""Discrete p-median over a fixed candidate set.

Selecting p of m candidate columns to minimize the weighted sum of each
demand row's distance to its closest selected column. Solved exactly by
chunked enumeration of p-subsets when C(m, p) is small, by best-first
branch-and-bound with an assignment-relaxation bound otherwise, and
heuristically by multistart greedy construction plus vertex substitution.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .candidates import CandidateSite, candidates_xy
from .instances import Instance

ENUM_LIMIT = 10_000_000  # max p-subsets enumerated before switching to B&B
DEFAULT_NODE_BUDGET = 10_000_000


class InfeasibleCardinalityError(ValueError):
    """Fewer candidates than facilities requested (m < p)."""


@dataclass
class DiscreteSolution:
    selected: tuple[int, ...]  # p column indices, ascending
    assignment: np.ndarray  # (nd,) column index of the serving facility
    objective: float
    proven: bool  # True when optimality was proven


def build_matrix(instance: Instance, candidates: list[CandidateSite]) -> np.ndarray:
    """Dense (nd, m) Euclidean distance matrix demand x candidate."""
    if instance.n_demand == 0 or not candidates:
        raise ValueError("demand and candidate lists must be non-empty")
    sites = candidates_xy(candidates)
    diff = instance.demand_xy[:, None, :] - sites[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _assignment(matrix: np.ndarray, selected) -> tuple[np.ndarray, np.ndarray]:
    """Closest selected column per demand row (ties: lowest column index)."""
    cols = np.asarray(sorted(selected), dtype=int)
    sub = matrix[:, cols]
    pos = np.argmin(sub, axis=1)  # argmin takes the first minimum
    return cols[pos], sub[np.arange(len(sub)), pos]


def evaluate(matrix: np.ndarray, weights: np.ndarray, selected) -> DiscreteSolution:
    """Solution record for a given selected set (not necessarily optimal)."""
    assignment, dist = _assignment(matrix, selected)
    return DiscreteSolution(
        selected=tuple(sorted(int(c) for c in selected)),
        assignment=assignment,
        objective=float(weights @ dist),
        proven=False,
    )


def _enumerate_exact(matrix, weights, p) -> tuple[tuple[int, ...], float]:
    nd, m = matrix.shape
    block = max(128, 4_000_000 // (nd * p))
    best_obj = math.inf
    best = None
    combos = itertools.combinations(range(m), p)
    while True:
        chunk = np.array(list(itertools.islice(combos, block)), dtype=int)
        if len(chunk) == 0:
            break
        # (nd, B, p) gather -> min over the p columns -> weighted sum
        objs = weights @ matrix[:, chunk].min(axis=2)
        k = int(np.argmin(objs))
        if objs[k] < best_obj:
            best_obj = float(objs[k])
            best = tuple(int(c) for c in chunk[k])
    return best, best_obj


def _branch_and_bound(matrix, weights, p, node_budget, incumbent, incumbent_obj):
    """Best-first search over include/exclude decisions on candidate columns.

    Lower bound of a node: every demand row served by its cheapest column
    among those not yet excluded (valid since at most p of them stay).
    """
    nd, m = matrix.shape
    order = np.argsort(matrix.mean(axis=0))  # promising columns first
    d = matrix[:, order]

    def lb(excluded_mask) -> float:
        return float(weights @ d[:, ~excluded_mask].min(axis=1))

    root_excl = np.zeros(m, dtype=bool)
    heap = [(lb(root_excl), 0, (), 0, root_excl)]
    tick = itertools.count(1)
    nodes = 0
    proven = True
    while heap:
        bound, _, chosen, idx, excl = heapq.heappop(heap)
        nodes += 1
        if nodes > node_budget:
            proven = False
            break
        if bound >= incumbent_obj - 1e-12:
            continue  # heap is bound-ordered; everything left is pruned
        remaining = m - idx
        need = p - len(chosen)
        if need == 0 or remaining == need:
            sel = list(chosen) + list(range(idx, idx + need))
            obj = float(weights @ d[:, sel].min(axis=1))
            if obj < incumbent_obj:
                incumbent_obj = obj
                incumbent = tuple(sel)
            continue
        # include idx: bound unchanged (idx was already allowed)
        heapq.heappush(heap, (bound, next(tick), chosen + (idx,), idx + 1, excl))
        # exclude idx: bound must be recomputed
        excl2 = excl.copy()
        excl2[idx] = True
        if m - (idx + 1) >= need:
            b2 = lb(excl2)
            if b2 < incumbent_obj - 1e-12:
                heapq.heappush(heap, (b2, next(tick), chosen, idx + 1, excl2))
    selected = tuple(sorted(int(order[j]) for j in incumbent))
    return selected, incumbent_obj, proven


def solve_exact(
    matrix: np.ndarray,
    weights,
    p: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> DiscreteSolution:
    """Optimal p-subset of columns, or the best incumbent flagged non-proven
    when the branch-and-bound node budget runs out.
    """
    weights = np.asarray(weights, dtype=float)
    nd, m = matrix.shape
    if p < 1:
        raise ValueError("p must be >= 1")
    if m < p:
        raise InfeasibleCardinalityError(f"{m} candidates < p={p}")

    if math.comb(m, p) <= ENUM_LIMIT:
        selected, _ = _enumerate_exact(matrix, weights, p)
        proven = True
    else:
        # warm-start the search with a quick heuristic incumbent, mapped
        # into the branch-and-bound column order
        warm = solve_interchange(matrix, weights, p, starts=20, seed=0)
        order = np.argsort(matrix.mean(axis=0))
        inv = np.empty_like(order)
        inv[order] = np.arange(len(order))
        warm_local = tuple(sorted(int(inv[c]) for c in warm.selected))
        selected, _, proven = _branch_and_bound(
            matrix, weights, p, node_budget, warm_local, warm.objective
        )
    sol = evaluate(matrix, weights, selected)
    sol.proven = proven
    return sol


def _greedy(d, weights, first: int | None, p: int) -> list[int]:
    """Greedy construction: best single column (or a given first column),
    then repeatedly the column with the largest cost reduction."""
    m = d.shape[1]
    if first is None:
        first = int(np.argmin(weights @ d))
    chosen = [first]
    in_sel = np.zeros(m, dtype=bool)
    in_sel[first] = True
    cur = d[:, first].copy()
    while len(chosen) < p:
        reduction = weights @ np.maximum(cur[:, None] - d, 0.0)
        reduction[in_sel] = -1.0
        j = int(np.argmax(reduction))
        chosen.append(j)
        in_sel[j] = True
        cur = np.minimum(cur, d[:, j])
    return chosen


def _first_two_nearest(d, sel: np.ndarray):
    """Per demand row: nearest and second-nearest among selected columns."""
    sub = d[:, sel]
    if len(sel) == 1:
        zeros = np.zeros(len(sub), dtype=int)
        return zeros, sub[:, 0], np.full(len(sub), np.inf)
    part = np.argpartition(sub, 1, axis=1)[:, :2]
    rows = np.arange(len(sub))
    dpair = sub[rows[:, None], part]
    swap = dpair[:, 0] > dpair[:, 1]
    part[swap] = part[swap][:, ::-1]
    dpair[swap] = dpair[swap][:, ::-1]
    return part[:, 0], dpair[:, 0], dpair[:, 1]


def _local_search(d, weights, sel: list[int], rng) -> tuple[list[int], float]:
    """Vertex substitution to a local optimum.

    Swap deltas for all (inserted, removed) pairs are evaluated in closed
    form from the nearest/second-nearest distances; the first improving swap
    in a per-iteration random order is applied.
    """
    nd, m = d.shape
    p = len(sel)
    sel = np.array(sorted(sel), dtype=int)
    if p == m:
        obj = float(weights @ d.min(axis=1))
        return sorted(int(c) for c in sel), obj

    while True:
        pos1, d1, d2 = _first_two_nearest(d, sel)
        obj = float(weights @ d1)
        closed = np.setdiff1d(np.arange(m), sel)
        dc = d[:, closed]  # (nd, C)
        # gain of inserting column a while keeping all of sel
        gain = weights @ np.maximum(d1[:, None] - dc, 0.0)  # (C,)
        # extra cost rows assigned to r pay if r is removed and a inserted
        per_row = (np.minimum(dc, d2[:, None]) - np.minimum(dc, d1[:, None])) * weights[:, None]
        onehot = (pos1[:, None] == np.arange(p)[None, :]).astype(float)  # (nd, p)
        loss = onehot.T @ per_row  # (p, C)
        delta = loss - gain[None, :]  # new_obj = obj + delta[r, a]
        if not (delta < -1e-9).any():
            return sorted(int(c) for c in sel), obj
        # first improving pair in this iteration's random scan order
        order = rng.permutation(p * len(closed))
        hit = order[np.nonzero((delta.ravel() < -1e-9)[order])[0][0]]
        r_pos, a_pos = divmod(int(hit), len(closed))
        sel = np.sort(np.concatenate([np.delete(sel, r_pos), [closed[a_pos]]]))


def solve_interchange(
    matrix: np.ndarray,
    weights,
    p: int,
    starts: int = 100,
    seed: int = 0,
) -> DiscreteSolution:
    """Best of `starts` greedy + vertex-substitution runs.

    The first run grows greedily from the best single column; later runs
    greedily complete a random first column. Scan order of the substitution
    neighborhood is re-randomized per iteration from the run's stream.
    """
    weights = np.asarray(weights, dtype=float)
    nd, m = matrix.shape
    if p < 1 or starts < 1:
        raise ValueError("p and starts must be >= 1")
    if m < p:
        raise InfeasibleCardinalityError(f"{m} candidates < p={p}")

    best_obj = math.inf
    best_sel = None
    master = np.random.default_rng(seed)
    for run in range(starts):
        rng = np.random.default_rng(master.integers(2**63))
        first = None if run == 0 else int(rng.integers(m))
        chosen = _greedy(matrix, weights, first, p)
        sel, obj = _local_search(matrix, weights, chosen, rng)
        if obj < best_obj - 1e-12 or (
            abs(obj - best_obj) <= 1e-12 and (best_sel is None or sel < best_sel)
        ):
            best_obj, best_sel = obj, sel
    return evaluate(matrix, weights, best_sel)
