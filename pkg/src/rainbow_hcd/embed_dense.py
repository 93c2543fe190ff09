"""Embedding the dense part of an instance.

Input: a graph on dense labels 0..r-1 whose components all have at least
two edges (t edges total, t <= n).  Output: the edges of K_r split into n
linear forests, edge i sitting alone-per-class in class i, every class
meeting the size floor needed by the later completion stages:
2r - 2n - 1 edges for the first t classes, 2r - 2n for the rest.

Two regimes.  With few vertices (r <= n) the floors are vacuous and a
round-robin matching schedule settles everything.  Otherwise the instance
is shrunk: a subgraph with s = ceil(r/2) edges is solved recursively on
K_{2s+1}, the surplus vertices are cut away leaving s large forests, and
edges are moved out of them into the remaining classes, with blocker
bookkeeping so no move ever breaks a forest or touches a protected edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInfeasible, InvariantViolation, PreconditionViolation
from .graph_core import (
    Decomposition,
    Edge,
    analyze_linear_forest,
    edge,
    edge_vertices,
    relabel_decomposition,
)
from .hilton import truncate_to_order


def verify_embedded_forests(
    dec: Decomposition, h_edges: list[Edge], n: int
) -> None:
    """Re-check every promise made by embed_dense."""
    t = len(h_edges)
    r = dec.order
    if len(dec.classes) != n:
        raise InvariantViolation("wrong class count")
    dec.check_partition()
    for i, cls in enumerate(dec.classes):
        analyze_linear_forest(cls, range(r))
        floor = 2 * r - 2 * n - 1 if i < t else 2 * r - 2 * n
        if len(cls) < floor:
            raise InvariantViolation(
                f"class {i} has {len(cls)} edges, floor {floor}"
            )
    for i, e in enumerate(h_edges):
        if e not in dec.classes[i]:
            raise InvariantViolation(f"edge {i} missing from class {i}")


def embed_dense(
    h_edges: list[Edge],
    n: int,
    recurse,
    seed: int = 0,
    trace: list[str] | None = None,
) -> Decomposition:
    """Build the n-forest split of K_r described in the module docstring.

    recurse(edges, m, seed) must solve a smaller instance outright and
    return its certificate; it is only called when r > n.
    """
    t = len(h_edges)
    vs = edge_vertices(h_edges)
    r = len(vs)
    if not 1 <= t <= n:
        raise PreconditionViolation(f"need 1 <= t <= n, got t={t}, n={n}")
    if vs != list(range(r)):
        raise PreconditionViolation("dense labels 0..r-1 required")
    if len(set(h_edges)) != t:
        raise PreconditionViolation("repeated edge")
    for grp in _component_groups(h_edges):
        if len(grp) < 2:
            raise PreconditionViolation("every component needs >= 2 edges")
    if trace is None:
        trace = []

    if r <= n:
        trace.append(f"embed: r={r} t={t} direct matchings")
        dec = _direct_small(h_edges, r, t, n)
    else:
        dec = _recursive_dense(h_edges, r, t, n, recurse, seed, trace)
    verify_embedded_forests(dec, h_edges, n)
    return dec


# ---------------------------------------------------------------------------
# small-r regime: one matching per class


def _round_robin(r: int) -> list[list[Edge]]:
    """Matchings partitioning K_r: r-1 perfect ones for even r, r
    near-perfect ones for odd r."""
    rounds: list[list[Edge]] = []
    if r < 2:
        return rounds
    if r % 2 == 0:
        m = r - 1
        for k in range(m):
            match = [edge(k, r - 1)]
            match += [
                edge((k - i) % m, (k + i) % m) for i in range(1, m // 2 + 1)
            ]
            rounds.append(match)
    else:
        for k in range(r):
            rounds.append(
                [edge((k - i) % r, (k + i) % r) for i in range(1, r // 2 + 1)]
            )
    flat = [e for match in rounds for e in match]
    assert len(flat) == len(set(flat)) == r * (r - 1) // 2
    return rounds


def _direct_small(h_edges: list[Edge], r: int, t: int, n: int) -> Decomposition:
    classes: list[set[Edge]] = [set() for _ in range(n)]
    for i, e in enumerate(h_edges):
        classes[i].add(e)
    h_set = set(h_edges)
    rounds = _round_robin(r)
    assert len(rounds) <= n, "matching schedule exceeds the class count"
    for k, match in enumerate(rounds):
        classes[k].update(e for e in match if e not in h_set)
    return Decomposition(r, classes)


# ---------------------------------------------------------------------------
# large-r regime: recursion plus edge moves


@dataclass
class _Cls:
    edges: set[Edge]
    owner: int | None  # index into h_edges, None for filler classes
    keep: Edge | None = None  # protected edge, never moved out


def _component_groups(h_edges: list[Edge]) -> list[list[int]]:
    """Edge indices grouped by component, ordered by smallest vertex."""
    adj: dict[int, list[int]] = {}
    for idx, (u, v) in enumerate(h_edges):
        adj.setdefault(u, []).append(idx)
        adj.setdefault(v, []).append(idx)
    seen_v: set[int] = set()
    groups: list[list[int]] = []
    for start in sorted(adj):
        if start in seen_v:
            continue
        stack = [start]
        seen_v.add(start)
        verts = []
        while stack:
            x = stack.pop()
            verts.append(x)
            for idx in adj[x]:
                for w in h_edges[idx]:
                    if w not in seen_v:
                        seen_v.add(w)
                        stack.append(w)
        vset = set(verts)
        groups.append(
            [i for i, (u, v) in enumerate(h_edges) if u in vset]
        )
    return groups


def _bfs_prefix(h_edges: list[Edge], grp: list[int], need: int) -> list[int]:
    """First `need` edges of the component in breadth-first order from its
    smallest vertex; the chosen part stays connected."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for idx in grp:
        u, v = h_edges[idx]
        adj.setdefault(u, []).append((v, idx))
        adj.setdefault(v, []).append((u, idx))
    start = min(adj)
    taken: list[int] = []
    taken_set: set[int] = set()
    seen = {start}
    queue = [start]
    qi = 0
    while qi < len(queue) and len(taken) < need:
        u = queue[qi]
        qi += 1
        for v, idx in sorted(adj[u]):
            if len(taken) == need:
                break
            if idx in taken_set:
                continue
            taken.append(idx)
            taken_set.add(idx)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    assert len(taken) == need
    return taken


def _choose_subgraph(h_edges: list[Edge], s: int) -> list[int]:
    """Pick s edge indices: whole components first, then a connected prefix
    of the component that would overflow."""
    chosen: list[int] = []
    for grp in _component_groups(h_edges):
        if len(chosen) + len(grp) <= s:
            chosen.extend(grp)
        else:
            chosen.extend(_bfs_prefix(h_edges, grp, s - len(chosen)))
        if len(chosen) == s:
            break
    assert len(chosen) == s
    return sorted(chosen)


def _move(donor: _Cls, target: _Cls, count: int, exclude: set[Edge], r: int) -> None:
    """Shift the `count` smallest allowed donor edges into the target, then
    re-check that the target is still a linear forest."""
    assert count >= 0
    avail = sorted(e for e in donor.edges if e not in exclude)
    if len(avail) < count:
        raise InternalInfeasible(
            f"donor has {len(avail)} spare edges, needs {count}"
        )
    moved = avail[:count]
    donor.edges.difference_update(moved)
    target.edges.update(moved)
    analyze_linear_forest(target.edges, range(r))
    analyze_linear_forest(donor.edges, range(r))


def _toward(path: tuple[int, ...], src: int, dst: int) -> Edge:
    """Edge leaving src in the direction of dst along the path holding both."""
    i, j = path.index(src), path.index(dst)
    step = 1 if j > i else -1
    return edge(src, path[i + step])


def _first_donor_blockers(ab: Edge, donor: _Cls, r: int) -> set[Edge]:
    """Edges that must stay put so any moved subset keeps degrees at the
    target edge's endpoints at most one and never links them."""
    a, b = ab
    view = analyze_linear_forest(donor.edges, range(r))
    path_of: dict[int, tuple[int, ...]] = {}
    for p in view.paths:
        for v in p:
            path_of[v] = p
    blockers: set[Edge] = set()
    if a in path_of and b in path_of and path_of[a] is path_of[b]:
        blockers.add(_toward(path_of[a], a, b))
        blockers.add(_toward(path_of[b], b, a))
    else:
        for v in (a, b):
            p = path_of.get(v)
            if p is not None and v in p[1:-1]:
                # interior vertex: withhold one of its two edges
                blockers.add(edge(v, p[p.index(v) - 1]))
    return blockers


def _second_donor_cut(target: _Cls, donor: _Cls, r: int) -> set[Edge]:
    """Withheld donor edges: everything at the target's interior vertices,
    plus the inbound edge of every target path endpoint, walking each donor
    path from its lower endpoint.  What remains can be moved freely."""
    tview = analyze_linear_forest(target.edges, range(r))
    interior = set(tview.interior)
    ends = set(tview.endpoints)
    dview = analyze_linear_forest(donor.edges, range(r))
    withheld: set[Edge] = set()
    for p in dview.paths:
        for prev, v in zip(p, p[1:]):
            e = edge(prev, v)
            if prev in interior or v in interior or v in ends:
                withheld.add(e)
    return withheld


def _case1_moves(
    big: list[_Cls], singles: list[_Cls], empties: list[_Cls], r: int, n: int
) -> None:
    s = len(big)
    t = s + len(singles)
    assert n - s <= s
    if len(big[n - s - 1].edges) < 4 * r - 4 * n - 1:
        raise InternalInfeasible("donor classes below the spread bound")
    for pos, cls in enumerate(singles):
        donor = big[pos]
        ab = next(iter(cls.edges))
        blockers = _first_donor_blockers(ab, donor, r)
        _move(donor, cls, 2 * r - 2 * n - 2, blockers | {donor.keep}, r)
    for pos, cls in enumerate(empties):
        donor = big[t - s + pos]
        _move(donor, cls, 2 * r - 2 * n, {donor.keep}, r)
    for j, donor in enumerate(big):
        floor = 2 * r - 2 * n - 1
        assert len(donor.edges) >= floor, f"donor {j} drained below floor"


def _case2_moves(
    big: list[_Cls],
    singles: list[_Cls],
    empties: list[_Cls],
    r: int,
    n: int,
) -> None:
    s = len(big)
    t = s + len(singles)
    eps = 1 if t == n else 0
    assert 2 * n - 2 * s <= s
    if len(big[2 * n - 2 * s - 1].edges) < 3 * r - 3 * n - eps:
        raise InternalInfeasible("donor classes below the spread bound")
    for pos, cls in enumerate(singles):
        donor = big[pos]
        ab = next(iter(cls.edges))
        blockers = _first_donor_blockers(ab, donor, r)
        _move(donor, cls, r - n - 2, blockers | {donor.keep}, r)
        donor2 = big[t - s + pos]
        cut = _second_donor_cut(cls, donor2, r)
        _move(donor2, cls, r - n, cut | {donor2.keep}, r)
    for pos, cls in enumerate(empties):
        donor = big[2 * t - 2 * s + pos]
        _move(donor, cls, r - n - 1, {donor.keep}, r)
        donor2 = big[n + t - 2 * s + pos]
        cut = _second_donor_cut(cls, donor2, r)
        _move(donor2, cls, r - n + 1, cut | {donor2.keep}, r)
    for j, donor in enumerate(big):
        assert len(donor.edges) >= 2 * r - 2 * n - 1, f"donor {j} drained below floor"


def _recursive_dense(
    h_edges: list[Edge],
    r: int,
    t: int,
    n: int,
    recurse,
    seed: int,
    trace: list[str],
) -> Decomposition:
    s = (r + 1) // 2
    if not 1 <= s < n:
        raise InternalInfeasible(f"recursion size s={s} out of range for n={n}")
    sub_idx = _choose_subgraph(h_edges, s)
    sub_edges = [h_edges[i] for i in sub_idx]
    case = 1 if 3 * r <= 4 * n - 1 else 2
    trace.append(f"embed: r={r} t={t} s={s} case={case}")
    child = recurse(sub_edges, s, seed)

    # send each child host vertex to its place in the parent layout: the
    # subgraph keeps its labels, everything else fills the gaps upward
    sub_vs = edge_vertices(sub_edges)
    pi: dict[int, int] = {}
    for x in sub_vs:
        pi[child.label_map[x]] = x
    free_parent = [v for v in range(2 * s + 1) if v not in set(sub_vs)]
    rest_child = [
        v for v in range(2 * s + 1) if v not in set(pi)
    ]
    for cv, slot in zip(rest_child, free_parent):
        pi[cv] = slot
    relab = relabel_decomposition(child.decomposition, pi)
    cut = truncate_to_order(relab, r)
    for cls in cut.classes:
        assert len(cls) >= r - 2, "truncated cycle lost too many edges"

    owner_of_class: dict[int, int] = {}
    for j, eidx in enumerate(sub_idx):
        owner_of_class[child.assignment[j]] = eidx
    assert sorted(owner_of_class) == list(range(s))

    big = [
        _Cls(set(cut.classes[ci]), owner_of_class[ci], h_edges[owner_of_class[ci]])
        for ci in range(s)
    ]
    # pull the leftover input edges out of the truncated classes; each one
    # restarts as a singleton class of its own
    sub_set = set(sub_idx)
    leftover = {h_edges[i] for i in range(t) if i not in sub_set}
    for cls in big:
        cls.edges.difference_update(leftover)
    for cls in big:
        assert cls.keep in cls.edges
    big.sort(key=lambda c: len(c.edges), reverse=True)
    singles = [_Cls({h_edges[i]}, i) for i in range(t) if i not in sub_set]
    empties = [_Cls(set(), None) for _ in range(n - t)]

    if case == 1:
        _case1_moves(big, singles, empties, r, n)
    else:
        _case2_moves(big, singles, empties, r, n)

    final: list[set[Edge] | None] = [None] * n
    fillers = iter(range(t, n))
    for cls in big + singles + empties:
        slot = cls.owner if cls.owner is not None else next(fillers)
        assert final[slot] is None
        final[slot] = cls.edges
    assert all(c is not None for c in final)
    return Decomposition(r, final)
