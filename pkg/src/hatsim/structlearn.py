"""Score-based structure search over discrete data: BIC, hill climbing, tabu."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .core import ValidationError
from .dataset import DiscreteDataset
from .graphs import Dag


@dataclass(frozen=True)
class ScoredGraph:
    dag: Dag
    bic: float
    ll: float
    free_params: int


@dataclass(frozen=True)
class SearchOptions:
    max_indegree: int = 5
    max_variables: int = 40
    tabu_length: int = 10
    max_worsening_steps: int = 10
    time_budget_s: float | None = None


class _Scorer:
    """Per-family decomposable BIC scorer with caching.

    Family scores depend only on the child and its parent set, so a move
    re-scores at most two families. Parent configurations are encoded with
    parents in sorted-name order, making scores independent of dataset column
    order.
    """

    def __init__(self, data: DiscreteDataset):
        self.data = data
        self.n = data.n
        self.codes = {v: data.codes[:, i].astype(np.int64)
                      for i, v in enumerate(data.variables)}
        self.states = {v: len(data.categories[v]) for v in data.variables}
        self.penalty_unit = math.log2(self.n) / 2.0
        self._cache: dict[tuple, tuple[float, int]] = {}

    def family(self, node: str, parents: frozenset[str]) -> tuple[float, int]:
        """(log2-likelihood contribution, free parameter count) of one family."""
        key = (node, parents)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        s = self.states[node]
        ordered = sorted(parents)
        q = 1
        cfg = np.zeros(self.n, dtype=np.int64)
        for p in ordered:
            cfg = cfg * self.states[p] + self.codes[p]
            q *= self.states[p]
        counts = np.bincount(cfg * s + self.codes[node], minlength=q * s)
        counts = counts.reshape(q, s)
        row_totals = counts.sum(axis=1, keepdims=True)
        nz = counts > 0
        ratios = np.divide(counts, row_totals, out=np.ones_like(counts, dtype=float),
                           where=row_totals > 0)
        ll = float(np.sum(counts[nz] * np.log2(ratios[nz])))
        k = (s - 1) * q
        self._cache[key] = (ll, k)
        return ll, k

    def family_score(self, node: str, parents: frozenset[str]) -> float:
        ll, k = self.family(node, parents)
        return ll - self.penalty_unit * k

    def total(self, parent_map: dict[str, frozenset[str]]) -> tuple[float, float, int]:
        ll_total, k_total = 0.0, 0
        for node, parents in parent_map.items():
            ll, k = self.family(node, parents)
            ll_total += ll
            k_total += k
        return ll_total - self.penalty_unit * k_total, ll_total, k_total


def bic_score(g: Dag, d: DiscreteDataset) -> ScoredGraph:
    """Score a DAG against a dataset: base-2 log likelihood minus the
    dimensionality penalty (log2 n / 2 per free parameter)."""
    if set(g.nodes) != set(d.variables):
        raise ValidationError("graph nodes must match dataset variables")
    if d.n < 1:
        raise ValidationError("dataset is empty")
    scorer = _Scorer(d)
    parent_map = {v: frozenset(g.parents(v)) for v in g.nodes}
    bic, ll, k = scorer.total(parent_map)
    return ScoredGraph(g, bic, ll, k)


_MOVE_ORDER = {"add": 0, "delete": 1, "reverse": 2}

#: Minimum gain that counts as an improvement. Score-equivalent moves (for
#: example reversing a covered edge) have a true gain of exactly zero, but
#: float summation order can surface it as +-1e-13 in either direction;
#: without a threshold greedy search ping-pongs between the two forever.
GAIN_EPSILON = 1e-9


class _SearchState:
    def __init__(self, data: DiscreteDataset, opts: SearchOptions):
        if len(data.variables) > opts.max_variables:
            raise ValidationError(
                f"dataset has {len(data.variables)} variables; "
                f"the search is capped at {opts.max_variables} (see SearchOptions)")
        self.opts = opts
        self.scorer = _Scorer(data)
        self.nodes = sorted(data.variables)
        self.parents: dict[str, set[str]] = {v: set() for v in self.nodes}

    def edges(self) -> set[tuple[str, str]]:
        return {(p, c) for c, ps in self.parents.items() for p in ps}

    def _creates_cycle(self, src: str, dst: str, skip: tuple | None = None) -> bool:
        # Would src -> dst close a cycle, i.e. can src be reached from dst?
        seen = {dst}
        stack = [dst]
        while stack:
            node = stack.pop()
            for child, ps in self.parents.items():
                if node in ps and (skip is None or (node, child) != skip):
                    if child == src:
                        return True
                    if child not in seen:
                        seen.add(child)
                        stack.append(child)
        return False

    def legal_moves(self):
        """Yield (move, gain) over all add/delete/reverse candidates."""
        sc = self.scorer
        cap = self.opts.max_indegree
        for src, dst in permutations(self.nodes, 2):
            if src in self.parents[dst]:
                continue
            if dst in self.parents[src]:
                continue  # reverse of an existing edge is handled below
            if len(self.parents[dst]) >= cap:
                continue
            if self._creates_cycle(src, dst):
                continue
            old = frozenset(self.parents[dst])
            gain = sc.family_score(dst, old | {src}) - sc.family_score(dst, old)
            yield ("add", src, dst), gain
        for src, dst in sorted(self.edges()):
            old = frozenset(self.parents[dst])
            gain = sc.family_score(dst, old - {src}) - sc.family_score(dst, old)
            yield ("delete", src, dst), gain
        for src, dst in sorted(self.edges()):
            if len(self.parents[src]) >= cap:
                continue
            if self._creates_cycle(dst, src, skip=(src, dst)):
                continue
            old_dst = frozenset(self.parents[dst])
            old_src = frozenset(self.parents[src])
            gain = (self.scorer.family_score(dst, old_dst - {src})
                    + self.scorer.family_score(src, old_src | {dst})
                    - self.scorer.family_score(dst, old_dst)
                    - self.scorer.family_score(src, old_src))
            yield ("reverse", src, dst), gain

    def apply(self, move: tuple[str, str, str]) -> None:
        op, src, dst = move
        if op == "add":
            self.parents[dst].add(src)
        elif op == "delete":
            self.parents[dst].remove(src)
        else:
            self.parents[dst].remove(src)
            self.parents[src].add(dst)

    def best_move(self, forbidden: set[frozenset] | None = None):
        """Highest-gain legal move under the stable tie-break, or None.

        `forbidden` holds edge-set signatures of graphs the move may not
        lead back to.
        """
        best = None
        for move, gain in self.legal_moves():
            if forbidden is not None and self._signature_after(move) in forbidden:
                continue
            key = (-gain, _MOVE_ORDER[move[0]], move[1], move[2])
            if best is None or key < best[0]:
                best = (key, move, gain)
        if best is None:
            return None
        return best[1], best[2]

    def _signature_after(self, move) -> frozenset:
        op, src, dst = move
        edges = self.edges()
        if op == "add":
            edges.add((src, dst))
        elif op == "delete":
            edges.remove((src, dst))
        else:
            edges.remove((src, dst))
            edges.add((dst, src))
        return frozenset(edges)

    def signature(self) -> frozenset:
        return frozenset(self.edges())

    def current_bic(self) -> float:
        bic, _, _ = self.scorer.total(
            {v: frozenset(self.parents[v]) for v in self.nodes})
        return bic

    def scored_graph(self, data: DiscreteDataset) -> ScoredGraph:
        dag = Dag.of(data.variables, self.edges())
        bic, ll, k = self.scorer.total(
            {v: frozenset(self.parents[v]) for v in self.nodes})
        return ScoredGraph(dag, bic, ll, k)


def hill_climb(d: DiscreteDataset, opts: SearchOptions | None = None) -> ScoredGraph:
    """Greedy local search from the empty graph.

    Applies the single best-gaining add/delete/reverse move while one exists,
    never accepting cycles, with ties broken on (move type, source, target)
    names so results do not depend on the dataset's column order.
    """
    opts = opts or SearchOptions()
    state = _SearchState(d, opts)
    deadline = (time.monotonic() + opts.time_budget_s
                if opts.time_budget_s is not None else None)
    while True:
        if deadline is not None and time.monotonic() > deadline:
            break
        found = state.best_move()
        if found is None or found[1] <= GAIN_EPSILON:
            break
        state.apply(found[0])
    return state.scored_graph(d)


def tabu_search(d: DiscreteDataset, opts: SearchOptions | None = None) -> ScoredGraph:
    """Hill climbing with memory: worsening moves allowed to escape local maxima.

    When no move improves, the least-worsening move whose resulting graph is
    not on the recent-visits list is taken; the search stops after
    `max_worsening_steps` consecutive steps without a new global best and
    returns the best graph seen.
    """
    opts = opts or SearchOptions()
    state = _SearchState(d, opts)
    deadline = (time.monotonic() + opts.time_budget_s
                if opts.time_budget_s is not None else None)

    best = state.scored_graph(d)
    visited: list[frozenset] = [state.signature()]
    steps_without_best = 0

    while steps_without_best <= opts.max_worsening_steps:
        if deadline is not None and time.monotonic() > deadline:
            break
        found = state.best_move(set(visited))
        if found is None:
            break
        move, gain = found
        if gain <= GAIN_EPSILON and steps_without_best >= opts.max_worsening_steps:
            break
        state.apply(move)
        visited.append(state.signature())
        if len(visited) > max(opts.tabu_length, 1):
            visited.pop(0)
        if state.current_bic() > best.bic + GAIN_EPSILON:
            best = state.scored_graph(d)
            steps_without_best = 0
        else:
            steps_without_best += 1
    return best
