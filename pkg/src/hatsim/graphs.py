"""Directed/partially-directed graph types, equivalence-class conversion, and
structural comparison metrics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable

from .core import ValidationError

Edge = tuple[str, str]


def _has_cycle(nodes: Iterable[str], edges: set[Edge]) -> bool:
    adj: dict[str, list[str]] = {n: [] for n in nodes}
    for u, v in edges:
        adj[u].append(v)
    state: dict[str, int] = {}

    def visit(n: str) -> bool:
        state[n] = 1
        for m in adj[n]:
            s = state.get(m, 0)
            if s == 1 or (s == 0 and visit(m)):
                return True
        state[n] = 2
        return False

    return any(state.get(n, 0) == 0 and visit(n) for n in adj)


@dataclass(frozen=True)
class Dag:
    nodes: tuple[str, ...]
    edges: frozenset[Edge]

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ValidationError("duplicate node names")
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise ValidationError(f"edge ({u}, {v}) references unknown node")
            if (v, u) in self.edges:
                raise ValidationError(f"both ({u},{v}) and ({v},{u}) present")
        if _has_cycle(self.nodes, set(self.edges)):
            raise ValidationError("graph contains a cycle")

    @classmethod
    def of(cls, nodes: Iterable[str], edges: Iterable[Edge]) -> "Dag":
        return cls(tuple(nodes), frozenset((str(u), str(v)) for u, v in edges))

    def parents(self, node: str) -> set[str]:
        return {u for u, v in self.edges if v == node}

    def to_json_dict(self) -> dict[str, Any]:
        return {"nodes": list(self.nodes),
                "edges": sorted([list(e) for e in self.edges]),
                "undirected": []}


@dataclass(frozen=True)
class Cpdag:
    """Equivalence-class graph: some edges directed, the rest undirected.

    Undirected edges are stored as one canonical (min, max) pair.
    """

    nodes: tuple[str, ...]
    directed: frozenset[Edge]
    undirected: frozenset[Edge]

    def __post_init__(self):
        known = set(self.nodes)
        und_pairs = {frozenset(e) for e in self.undirected}
        dir_pairs = {frozenset(e) for e in self.directed}
        for u, v in self.directed | self.undirected:
            if u == v:
                raise ValidationError(f"self-loop on {u!r}")
            if u not in known or v not in known:
                raise ValidationError(f"edge ({u}, {v}) references unknown node")
        if und_pairs & dir_pairs:
            raise ValidationError("an edge cannot be both directed and undirected")
        if any((v, u) in self.directed for u, v in self.directed):
            raise ValidationError("conflicting directed edge pair")

    @classmethod
    def of(cls, nodes: Iterable[str], directed: Iterable[Edge],
           undirected: Iterable[Edge]) -> "Cpdag":
        und = frozenset((min(u, v), max(u, v)) for u, v in undirected)
        return cls(tuple(nodes), frozenset(directed), und)

    def skeleton(self) -> set[frozenset]:
        return ({frozenset(e) for e in self.directed}
                | {frozenset(e) for e in self.undirected})

    def status(self, pair: frozenset) -> str | None:
        """'->', '<-' (w.r.t. sorted pair order), '--', or None."""
        u, v = sorted(pair)
        if (u, v) in self.directed:
            return "->"
        if (v, u) in self.directed:
            return "<-"
        if (u, v) in self.undirected:
            return "--"
        return None

    def is_extendable(self) -> bool:
        """True when some DAG orients every undirected edge consistently.

        Repeatedly removes a potential sink: a node whose outgoing edges are
        all undirected and whose undirected neighbours are adjacent to all of
        its other neighbours.
        """
        nodes = set(self.nodes)
        directed = set(self.directed)
        undirected = {frozenset(e) for e in self.undirected}

        def neighbours(x):
            out = set()
            for u, v in directed:
                if u == x:
                    out.add(v)
                if v == x:
                    out.add(u)
            for e in undirected:
                if x in e:
                    out |= e - {x}
            return out

        while nodes:
            sink = None
            for x in sorted(nodes):
                if any(u == x for u, v in directed):
                    continue
                und_nb = set().union(*[e - {x} for e in undirected if x in e]) if undirected else set()
                nb = neighbours(x)
                if all(nb - {y} <= neighbours(y) for y in und_nb):
                    sink = x
                    break
            if sink is None:
                return False
            nodes.remove(sink)
            directed = {(u, v) for u, v in directed if sink not in (u, v)}
            undirected = {e for e in undirected if sink not in e}
        return True

    def to_json_dict(self) -> dict[str, Any]:
        return {"nodes": list(self.nodes),
                "edges": sorted([list(e) for e in self.directed]),
                "undirected": sorted([list(e) for e in self.undirected])}


def dag_to_cpdag(g: Dag) -> Cpdag:
    """Equivalence-class representative of a DAG.

    Orients the collider edges of the skeleton, then closes under the Meek
    orientation rules; every remaining edge is undirected.
    """
    skeleton = {frozenset((u, v)) for u, v in g.edges}
    directed: set[Edge] = set()

    def adjacent(a, b):
        return frozenset((a, b)) in skeleton

    for c in g.nodes:
        for a, b in combinations(sorted(g.parents(c)), 2):
            if not adjacent(a, b):
                directed.add((a, c))
                directed.add((b, c))

    _meek_closure(skeleton, directed)
    undirected = {e for e in skeleton if
                  tuple(sorted(e)) not in directed and tuple(sorted(e, reverse=True)) not in directed}
    return Cpdag.of(g.nodes, directed, [tuple(sorted(e)) for e in undirected])


def _meek_closure(skeleton: set[frozenset], directed: set[Edge]) -> None:
    """Orient compelled edges in place until no rule fires."""
    nodes = set()
    for e in skeleton:
        nodes |= e

    def adjacent(a, b):
        return frozenset((a, b)) in skeleton

    def undirected_pairs():
        for e in skeleton:
            u, v = tuple(e)
            if (u, v) not in directed and (v, u) not in directed:
                yield u, v

    changed = True
    while changed:
        changed = False
        for u, v in list(undirected_pairs()):
            for a, b in ((u, v), (v, u)):
                # R1: c -> a, a -- b, c and b non-adjacent  =>  a -> b
                if any((c, a) in directed and not adjacent(c, b)
                       for c in nodes if c not in (a, b)):
                    directed.add((a, b))
                    changed = True
                    break
                # R2: a -> c -> b and a -- b  =>  a -> b
                if any((a, c) in directed and (c, b) in directed
                       for c in nodes if c not in (a, b)):
                    directed.add((a, b))
                    changed = True
                    break
                # R3: a -- c1 -> b, a -- c2 -> b, c1,c2 non-adjacent  =>  a -> b
                spokes = [c for c in nodes if c not in (a, b)
                          and frozenset((a, c)) in skeleton
                          and (a, c) not in directed and (c, a) not in directed
                          and (c, b) in directed]
                if any(not adjacent(c1, c2)
                       for c1, c2 in combinations(spokes, 2)):
                    directed.add((a, b))
                    changed = True
                    break


@dataclass(frozen=True)
class GraphComparison:
    tp: float
    fp: float
    fn: float
    tn: float
    f1: float
    bsf: float
    shd: float

    def to_json_dict(self) -> dict[str, float]:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn,
                "f1": self.f1, "bsf": self.bsf, "shd": self.shd}


def _as_cpdag(g: Dag | Cpdag, convert: bool) -> Cpdag:
    if isinstance(g, Cpdag):
        return g
    if convert:
        return dag_to_cpdag(g)
    return Cpdag.of(g.nodes, g.edges, [])


def compare_graphs(learned: Dag | Cpdag, truth: Dag | Cpdag,
                   as_cpdag: bool = True) -> GraphComparison:
    """Confusion counts, F1, balanced score, and structural hamming distance.

    An adjacency present in both graphs but with mismatching status or
    orientation is not a true positive: it counts one false positive plus one
    false negative in the confusion matrix, and half an error in SHD.
    """
    lg = _as_cpdag(learned, as_cpdag)
    tg = _as_cpdag(truth, as_cpdag)
    if set(lg.nodes) != set(tg.nodes):
        raise ValidationError("graphs must share the same node set")

    n = len(tg.nodes)
    e_truth = len(tg.skeleton())
    m_truth = n * (n - 1) // 2 - e_truth

    tp = fp = fn = tn = 0.0
    shd = 0.0
    for pair in map(frozenset, combinations(sorted(tg.nodes), 2)):
        ls, ts = lg.status(pair), tg.status(pair)
        if ls is None and ts is None:
            tn += 1
        elif ls == ts:
            tp += 1
        elif ls is None:
            fn += 1
            shd += 1
        elif ts is None:
            fp += 1
            shd += 1
        else:
            fp += 1
            fn += 1
            shd += 0.5

    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall > 0 else 0.0)
    # Degenerate denominators (no present or no absent edges in the truth)
    # score their side as vacuously perfect: nothing there to get wrong.
    present = (tp - fn) / e_truth if e_truth else 1.0
    absent = (tn - fp) / m_truth if m_truth else 1.0
    bsf = (present + absent) / 2.0
    return GraphComparison(tp, fp, fn, tn, f1, bsf, shd)


def model_average(graphs: list[Dag], min_count: int = 1) -> Dag:
    """Consensus DAG from per-edge occurrence counts.

    Edges enter in descending count order (ties resolved on descending
    lexicographic endpoints); an edge that would close a cycle is reversed
    when its reverse was also observed and stays acyclic, and dropped
    otherwise.
    """
    if not graphs:
        raise ValidationError("need at least one graph")
    nodes = graphs[0].nodes
    if any(set(g.nodes) != set(nodes) for g in graphs):
        raise ValidationError("graphs must share the same node set")

    counts: dict[Edge, int] = {}
    for g in graphs:
        for e in g.edges:
            counts[e] = counts.get(e, 0) + 1

    accepted: set[Edge] = set()
    skeleton: set[frozenset] = set()
    order = sorted(counts, key=lambda e: (counts[e], e), reverse=True)
    for edge in order:
        if counts[edge] < min_count:
            continue
        if frozenset(edge) in skeleton:
            continue  # reverse already accepted
        if not _has_cycle(nodes, accepted | {edge}):
            accepted.add(edge)
            skeleton.add(frozenset(edge))
            continue
        rev = (edge[1], edge[0])
        if counts.get(rev, 0) > 0 and not _has_cycle(nodes, accepted | {rev}):
            accepted.add(rev)
            skeleton.add(frozenset(rev))
    return Dag.of(nodes, accepted)


# --- JSON I/O ----------------------------------------------------------------

def graph_from_json(doc: dict) -> Dag | Cpdag:
    """Parse the shared graph JSON shape; undirected edges make it a CPDAG."""
    if not isinstance(doc, dict) or "nodes" not in doc:
        raise ValidationError("graph document needs a 'nodes' list", "nodes")
    nodes = [str(n) for n in doc["nodes"]]
    edges = [tuple(map(str, e)) for e in doc.get("edges", [])]
    undirected = [tuple(map(str, e)) for e in doc.get("undirected", [])]
    if undirected:
        return Cpdag.of(nodes, edges, undirected)
    return Dag.of(nodes, edges)


def graph_to_json(g: Dag | Cpdag) -> str:
    return json.dumps(g.to_json_dict(), indent=2)
