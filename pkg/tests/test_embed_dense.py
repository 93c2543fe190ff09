import pytest

from rainbow_hcd.embed_dense import (
    _choose_subgraph,
    _round_robin,
    embed_dense,
    verify_embedded_forests,
)
from rainbow_hcd.errors import PreconditionViolation
from rainbow_hcd.families import (
    cycle_graph,
    disjoint_union,
    path_graph,
    star_graph,
)
from rainbow_hcd.graph_core import edge
from rainbow_hcd.solver import solve


def recurse(edges, m, seed):
    return solve(edges, seed)


def run(h_edges, n, seed=0):
    trace = []
    dec = embed_dense(h_edges, n, recurse, seed=seed, trace=trace)
    verify_embedded_forests(dec, h_edges, n)
    return dec, trace


class TestRoundRobin:
    @pytest.mark.parametrize("r", range(2, 13))
    def test_partitions_complete_graph(self, r):
        rounds = _round_robin(r)
        flat = [e for match in rounds for e in match]
        assert len(flat) == len(set(flat)) == r * (r - 1) // 2
        assert len(rounds) == (r - 1 if r % 2 == 0 else r)
        for match in rounds:
            ends = [v for e in match for v in e]
            assert len(ends) == len(set(ends))

    def test_trivial_sizes(self):
        assert _round_robin(0) == []
        assert _round_robin(1) == []


class TestPreconditions:
    def test_rejects_empty(self):
        with pytest.raises(PreconditionViolation):
            embed_dense([], 3, recurse)

    def test_rejects_too_many_edges(self):
        with pytest.raises(PreconditionViolation):
            embed_dense(path_graph(4), 3, recurse)

    def test_rejects_sparse_labels(self):
        with pytest.raises(PreconditionViolation):
            embed_dense([edge(0, 1), edge(1, 3)], 5, recurse)

    def test_rejects_repeated_edge(self):
        with pytest.raises(PreconditionViolation):
            embed_dense([edge(0, 1), edge(0, 1), edge(1, 2)], 5, recurse)

    def test_rejects_single_edge_component(self):
        with pytest.raises(PreconditionViolation):
            embed_dense(disjoint_union(path_graph(2), path_graph(1)), 6, recurse)


class TestDirectRegime:
    # r <= n: one near-perfect matching schedule carries the split
    def test_small_path(self):
        h = path_graph(3)
        dec, trace = run(h, 6)
        assert dec.order == 4
        assert trace == ["embed: r=4 t=3 direct matchings"]
        for i, e in enumerate(h):
            assert e in dec.classes[i]

    def test_triangle_plus_path(self):
        h = disjoint_union(cycle_graph(3), path_graph(2))
        dec, trace = run(h, 6)
        assert dec.order == 6
        assert "direct matchings" in trace[0]

    def test_boundary_r_equals_n(self):
        h = disjoint_union(cycle_graph(4), path_graph(3))
        dec, trace = run(h, 8)
        assert dec.order == 8
        assert "direct" in trace[0]


class TestRecursiveRegime:
    def test_case1_even_r(self):
        # r=10, n=9: 3r <= 4n-1 picks the single-donor moves
        h = disjoint_union(star_graph(3), path_graph(2), path_graph(2))
        dec, trace = run(h, 9)
        assert dec.order == 10
        assert trace[-1] == "embed: r=10 t=7 s=5 case=1"

    def test_case1_odd_r(self):
        h = disjoint_union(star_graph(3), path_graph(6))
        dec, trace = run(h, 9)
        assert dec.order == 11
        assert "case=1" in trace[-1]

    def test_case2_even_r(self):
        # 3r >= 4n forces the two-donor moves
        h = disjoint_union(
            cycle_graph(3), path_graph(2), path_graph(2), path_graph(2)
        )
        dec, trace = run(h, 9)
        assert dec.order == 12
        assert "case=2" in trace[-1]

    def test_case2_odd_r(self):
        h = disjoint_union(star_graph(3), path_graph(3), path_graph(2))
        dec, trace = run(h, 8)
        assert dec.order == 11
        assert "case=2" in trace[-1]

    def test_case2_thick_below_n(self):
        h = disjoint_union(star_graph(3), *[path_graph(2)] * 4)
        dec, trace = run(h, 12)
        assert dec.order == 16
        assert "case=2" in trace[-1]

    def test_keeps_every_input_edge_in_own_class(self):
        h = disjoint_union(cycle_graph(3), *[path_graph(2)] * 5)
        dec, _ = run(h, 13)
        for i, e in enumerate(h):
            assert e in dec.classes[i]

    def test_deterministic_for_fixed_seed(self):
        h = disjoint_union(star_graph(3), path_graph(6))
        a, _ = run(h, 9, seed=5)
        b, _ = run(h, 9, seed=5)
        assert a.classes == b.classes


class TestChooseSubgraph:
    def test_whole_components_first(self):
        h = disjoint_union(path_graph(2), path_graph(3), path_graph(2))
        picked = _choose_subgraph(h, 4)
        # the 2-edge head component fits whole; the rest is a connected prefix
        assert picked[:2] == [0, 1]
        assert len(picked) == 4

    def test_connected_prefix_when_overflowing(self):
        h = path_graph(6)
        for s in range(1, 7):
            picked = _choose_subgraph(h, s)
            assert len(picked) == s
            sub = [h[i] for i in picked]
            vs = {v for e in sub for v in e}
            assert len(vs) == s + 1

    def test_sorted_and_stable(self):
        h = disjoint_union(cycle_graph(3), path_graph(4))
        assert _choose_subgraph(h, 5) == _choose_subgraph(h, 5)
        assert _choose_subgraph(h, 5) == sorted(_choose_subgraph(h, 5))
