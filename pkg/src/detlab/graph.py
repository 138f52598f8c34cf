"""Small directed-graph routines on bitset adjacency lists.

``adj[u]`` is an int whose bit ``v`` marks the edge ``u -> v``, which is the
row layout of :class:`~detlab.boolmatrix.BoolMatrix`.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .boolmatrix import bits


def strongly_connected_components(adj: Sequence[int]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components come out in reverse topological order."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(bits(adj[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(bits(adj[w]))))
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


def component_ids(adj: Sequence[int]) -> list[int]:
    ids = [0] * len(adj)
    for k, comp in enumerate(strongly_connected_components(adj)):
        for v in comp:
            ids[v] = k
    return ids


def vertex_disjoint_paths(adj: Sequence[int], source: int, sink: int, limit: int | None = None) -> int:
    """Number of internally vertex-disjoint ``source -> sink`` paths, capped at ``limit``.

    Unit-capacity augmenting paths on the split graph: vertex ``x`` becomes
    ``2x -> 2x+1`` with capacity one (unbounded for the endpoints), and edge
    ``x -> y`` becomes ``2x+1 -> 2y``.  A direct ``source -> sink`` edge counts
    as one path.
    """
    if source == sink:
        raise ValueError("source and sink must differ")
    n = len(adj)
    if limit is None:
        limit = n
    big = n + 1
    cap: dict[int, dict[int, int]] = {i: {} for i in range(2 * n)}

    def add(u, v, c):
        cap[u][v] = cap[u].get(v, 0) + c
        cap[v].setdefault(u, 0)

    for x in range(n):
        add(2 * x, 2 * x + 1, big if x in (source, sink) else 1)
        for y in bits(adj[x]):
            if y != x:
                add(2 * x + 1, 2 * y, 1)
    s, t = 2 * source + 1, 2 * sink
    flow = 0
    while flow < limit:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v, c in cap[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            break
        v = t
        while parent[v] is not None:
            u = parent[v]
            cap[u][v] -= 1
            cap[v][u] += 1
            v = u
        flow += 1
    return flow


def is_r_connected(adj: Sequence[int], r: int) -> bool:
    """Every ordered non-adjacent pair ``u != v`` has at least ``r`` disjoint ``u -> v`` paths."""
    n = len(adj)
    for u in range(n):
        for v in range(n):
            if u != v and not adj[u] >> v & 1:
                if vertex_disjoint_paths(adj, u, v, limit=r) < r:
                    return False
    return True


def perfect_matching(adj: Sequence[int]) -> list[int] | None:
    """Row -> column perfect matching in the bipartite graph of ``adj`` (Kuhn), or None."""
    n = len(adj)
    match_col = [-1] * n

    def augment(row, seen):
        for col in bits(adj[row]):
            if col in seen:
                continue
            seen.add(col)
            if match_col[col] == -1 or augment(match_col[col], seen):
                match_col[col] = row
                return True
        return False

    for row in range(n):
        if not augment(row, set()):
            return None
    match_row = [-1] * n
    for col, row in enumerate(match_col):
        match_row[row] = col
    return match_row
