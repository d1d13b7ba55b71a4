from itertools import combinations, product

from hatsim import Dag, TeamProfile


def make_profile(**overrides) -> TeamProfile:
    """Bare valid profile: all ratings 15 unless overridden, no roster."""
    base = dict(left_att=15, mid_att=15, right_att=15,
                left_def=15, mid_def=15, right_def=15,
                midfield=15, isp_att=15, isp_def=15)
    base.update(overrides)
    return TeamProfile(**base)


def all_dags(nodes):
    """Every DAG over the node list, by brute-force orientation enumeration."""
    nodes = list(nodes)
    pairs = list(combinations(nodes, 2))
    out = []
    for assignment in product((None, 0, 1), repeat=len(pairs)):
        edges = []
        for (u, v), direction in zip(pairs, assignment):
            if direction == 0:
                edges.append((u, v))
            elif direction == 1:
                edges.append((v, u))
        try:
            out.append(Dag.of(nodes, edges))
        except Exception:
            continue
    return out


def v_structures(dag: Dag):
    """Colliders a->c<-b with a, b non-adjacent, as canonical triples."""
    adjacent = {frozenset(e) for e in dag.edges}
    found = set()
    for c in dag.nodes:
        parents = sorted(dag.parents(c))
        for a, b in combinations(parents, 2):
            if frozenset((a, b)) not in adjacent:
                found.add((a, c, b))
    return frozenset(found)


def mec_key(dag: Dag):
    """Markov equivalence class signature: skeleton plus v-structures."""
    skeleton = frozenset(frozenset(e) for e in dag.edges)
    return skeleton, v_structures(dag)


def sample_discrete_bn(rng, nodes, edges, cpts, n_rows):
    """Vectorised ancestral sampling of a small discrete network.

    `cpts` maps node -> array of shape (parent configurations, states) with
    parent configurations encoded over the node's sorted parents.
    """
    import numpy as np

    from hatsim import Dag, DiscreteDataset

    dag = Dag.of(nodes, edges)
    parents = {v: sorted(dag.parents(v)) for v in nodes}
    states = {v: cpts[v].shape[1] for v in nodes}
    order = []
    placed = set()
    while len(order) < len(nodes):
        for v in nodes:
            if v not in placed and all(p in placed for p in parents[v]):
                order.append(v)
                placed.add(v)
    cols = {}
    for v in order:
        table = cpts[v]
        cfg = np.zeros(n_rows, dtype=np.int64)
        for p in parents[v]:
            cfg = cfg * states[p] + cols[p]
        cum = table.cumsum(axis=1)
        draws = rng.random(n_rows)
        cols[v] = (draws[:, None] > cum[cfg]).sum(axis=1).astype(np.int32)
    codes = np.column_stack([cols[v] for v in nodes])
    cats = {v: [str(i) for i in range(states[v])] for v in nodes}
    return DiscreteDataset(tuple(nodes), cats, codes)


def consensus_cpdag_edges(members):
    """Directed edges shared by every DAG of a class; the rest are undirected."""
    directed = set.intersection(*[set(m.edges) for m in members])
    undirected = set()
    for u, v in members[0].edges:
        u, v = sorted((u, v))
        if (u, v) not in directed and (v, u) not in directed:
            undirected.add((u, v))
    return directed, undirected
