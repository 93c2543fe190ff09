"""Completion of linear-forest decompositions into Hamiltonian cycle
decompositions.

Input: K_m split into n classes, each a linear forest with at least
2m - 2n - 1 edges.  Vertices 2n-1, 2n-2, ... are appended one at a time;
each new vertex hands one edge to every old vertex, and a feasible flow
chooses the receiving classes so that every class stays a linear forest
and keeps pace with the growing size bound.  At order 2n every class is a
spanning path, and the last vertex closes each of them into a cycle.
"""

from __future__ import annotations

from .errors import InternalInfeasible, PreconditionViolation
from .graph_core import Decomposition, analyze_linear_forest, edge

_INF = 1 << 30


class _Dinic:
    """Plain max-flow with deterministic arc order."""

    def __init__(self) -> None:
        self.adj: list[list[int]] = []
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_node(self) -> int:
        self.adj.append([])
        return len(self.adj) - 1

    def add_arc(self, u: int, v: int, cap: int) -> int:
        aid = len(self.to)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[u].append(aid)
        self.to.append(u)
        self.cap.append(0)
        self.adj[v].append(aid + 1)
        return aid

    def flow_on(self, aid: int) -> int:
        return self.cap[aid ^ 1]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = [-1] * len(self.adj)
            level[s] = 0
            queue = [s]
            for u in queue:
                for aid in self.adj[u]:
                    v = self.to[aid]
                    if self.cap[aid] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return total
            it = [0] * len(self.adj)

            def dfs(u: int, limit: int) -> int:
                if u == t:
                    return limit
                while it[u] < len(self.adj[u]):
                    aid = self.adj[u][it[u]]
                    v = self.to[aid]
                    if self.cap[aid] > 0 and level[v] == level[u] + 1:
                        pushed = dfs(v, min(limit, self.cap[aid]))
                        if pushed:
                            self.cap[aid] -= pushed
                            self.cap[aid ^ 1] += pushed
                            return pushed
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, _INF)
                if not pushed:
                    break
                total += pushed


def single_vertex_step(dec: Decomposition, n: int) -> None:
    """Attach vertex m to K_m in place, one new edge per old vertex.

    Every class may take at most two new edges, must take enough to reach
    2(m+1) - 2n - 1 edges, may touch a path only at one of its endpoints,
    and may touch each isolated vertex once.  A feasible flow picks the
    assignment; one always exists for in-contract states.
    """
    m = dec.order
    if not 1 <= m <= 2 * n - 1:
        raise PreconditionViolation(f"cannot grow order {m} toward 2n+1, n={n}")
    w = m
    target = 2 * (m + 1) - 2 * n - 1

    fl = _Dinic()
    src = fl.add_node()
    snk = fl.add_node()
    ssrc = fl.add_node()
    ssnk = fl.add_node()
    vnode = [fl.add_node() for _ in range(m)]
    excess: dict[int, int] = {}

    def push_excess(node: int, amount: int) -> None:
        excess[node] = excess.get(node, 0) + amount

    choice_arcs: list[tuple[int, int, int]] = []
    for i, cls in enumerate(dec.classes):
        view = analyze_linear_forest(cls, range(m))
        needed = max(0, target - len(cls))
        assert needed <= 2, "class fell behind the size schedule"
        cnode = fl.add_node()
        fl.add_arc(src, cnode, 2 - needed)
        if needed:
            push_excess(cnode, needed)
            push_excess(src, -needed)
        for p in view.paths:
            gate = fl.add_node()
            fl.add_arc(cnode, gate, 1)
            for v in (p[0], p[-1]):
                choice_arcs.append((fl.add_arc(gate, vnode[v], 1), i, v))
        for v in view.isolated:
            gate = fl.add_node()
            fl.add_arc(cnode, gate, 1)
            choice_arcs.append((fl.add_arc(gate, vnode[v], 1), i, v))
    for v in range(m):
        # each old vertex gets exactly one new edge
        push_excess(snk, 1)
        push_excess(vnode[v], -1)
    fl.add_arc(snk, src, _INF)

    demand = 0
    for node in sorted(excess):
        ex = excess[node]
        if ex > 0:
            fl.add_arc(ssrc, node, ex)
            demand += ex
        elif ex < 0:
            fl.add_arc(node, ssnk, -ex)
    if fl.max_flow(ssrc, ssnk) != demand:
        raise InternalInfeasible(f"no feasible attachment for vertex {w}")

    for aid, i, v in choice_arcs:
        if fl.flow_on(aid):
            dec.classes[i].add(edge(v, w))
    dec.order = m + 1

    added = 0
    for i, cls in enumerate(dec.classes):
        analyze_linear_forest(cls, range(m + 1))
        assert len(cls) >= target, f"class {i} below schedule after step"
        added += sum(1 for e in cls if w in e)
    assert added == m


def close_final_vertex(dec: Decomposition, n: int) -> None:
    """Join vertex 2n to both ends of each spanning path, closing cycles."""
    m = dec.order
    if m != 2 * n:
        raise PreconditionViolation(f"closing needs order 2n, got {m}")
    w = m
    for i, cls in enumerate(dec.classes):
        view = analyze_linear_forest(cls, range(m))
        if len(view.paths) != 1 or view.isolated:
            raise InternalInfeasible(f"class {i} is not a spanning path")
        p = view.paths[0]
        cls.add(edge(w, p[0]))
        cls.add(edge(w, p[-1]))
    dec.order = m + 1
    dec.check_hcd()


def extend_to_hcd(dec: Decomposition, n: int) -> Decomposition:
    """Grow a qualifying decomposition of K_m into an n-cycle decomposition
    of K_{2n+1}, in place.

    Requires n classes partitioning K_m with m <= 2n, each class a linear
    forest of at least 2m - 2n - 1 edges.
    """
    if n < 1:
        raise PreconditionViolation("need n >= 1")
    if len(dec.classes) != n:
        raise PreconditionViolation(f"expected {n} classes, got {len(dec.classes)}")
    if not 1 <= dec.order <= 2 * n:
        raise PreconditionViolation(f"order {dec.order} not in 1..2n")
    dec.check_partition()
    bound = 2 * dec.order - 2 * n - 1
    for i, cls in enumerate(dec.classes):
        analyze_linear_forest(cls, range(dec.order))
        if len(cls) < bound:
            raise PreconditionViolation(
                f"class {i} has {len(cls)} edges, needs {bound}"
            )
    while dec.order < 2 * n:
        single_vertex_step(dec, n)
    close_final_vertex(dec, n)
    return dec


def truncate_to_order(dec: Decomposition, m: int) -> Decomposition:
    """Restriction of every class to the vertices 0..m-1, as a new object."""
    if not 1 <= m <= dec.order:
        raise PreconditionViolation("bad truncation order")
    return Decomposition(
        m, [{e for e in cls if e[1] < m} for cls in dec.classes]
    )
