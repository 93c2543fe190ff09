import pytest

from rainbow_hcd.errors import InfeasibleInput
from rainbow_hcd.families import (
    cycle_graph,
    disjoint_union,
    path_graph,
    star_graph,
)
from rainbow_hcd.files import certificate_to_text
from rainbow_hcd.graph_core import edge, verify_certificate
from rainbow_hcd.oracle import exhaustive_rainbow_hcd
from rainbow_hcd.solver import (
    ComponentSplit,
    Strategy,
    relabel_hosts,
    route,
    solve,
    split_components,
)


def k2s(count):
    return disjoint_union(*[path_graph(1)] * count)


class TestSplitComponents:
    def test_mixed_instance(self):
        h = disjoint_union(cycle_graph(3), path_graph(1), path_graph(1))
        split = split_components(h)
        assert split.thick_idx == [[0, 1, 2]]
        assert split.k2_idx == [3, 4]
        assert split.t == 3
        assert split.k2_count == 2

    def test_all_single_edges(self):
        split = split_components(k2s(4))
        assert split.thick_idx == []
        assert split.k2_idx == [0, 1, 2, 3]

    def test_component_order_follows_smallest_vertex(self):
        h = [edge(5, 6), edge(0, 1), edge(1, 2), edge(6, 7)]
        split = split_components(h)
        assert split.thick_idx == [[1, 2], [0, 3]]


class TestRoute:
    def test_small_instances_always_base(self):
        for h in (path_graph(5), disjoint_union(cycle_graph(3), k2s(2))):
            split = split_components(h)
            assert route(split, h, len(h)) is Strategy.BASE_SMALL

    def test_matching_route(self):
        h = k2s(7)
        assert route(split_components(h), h, 7) is Strategy.ALL_K2

    def test_linear_forest_route(self):
        h = disjoint_union(path_graph(2), k2s(4))
        assert route(split_components(h), h, 6) is Strategy.LINEAR_FOREST

    def test_pipeline_route_cycle(self):
        h = disjoint_union(cycle_graph(3), k2s(3))
        assert route(split_components(h), h, 6) is Strategy.MAIN_PIPELINE

    def test_pipeline_route_high_degree(self):
        h = disjoint_union(star_graph(3), k2s(3))
        assert route(split_components(h), h, 6) is Strategy.MAIN_PIPELINE

    def test_tag_strings(self):
        assert {s.value for s in Strategy} == {
            "base-small", "all-k2", "linear-forest", "pipeline",
        }


class TestValidation:
    def test_rejects_empty(self):
        with pytest.raises(InfeasibleInput):
            solve([])

    def test_rejects_loop(self):
        with pytest.raises(InfeasibleInput):
            solve([(0, 0)])

    def test_rejects_repeat(self):
        with pytest.raises(InfeasibleInput):
            solve([(0, 1), (1, 0)])

    def test_rejects_non_integer_labels(self):
        with pytest.raises(InfeasibleInput):
            solve([("a", "b")])


class TestSolveRoutes:
    @pytest.mark.parametrize(
        "h,tag",
        [
            (path_graph(4), "base-small"),
            (k2s(7), "all-k2"),
            (disjoint_union(path_graph(2), k2s(4)), "linear-forest"),
            (disjoint_union(cycle_graph(3), k2s(3)), "pipeline"),
        ],
    )
    def test_route_tag_recorded_and_verified(self, h, tag):
        cert = solve(h, seed=3)
        assert cert.trace[0] == f"route: {tag}"
        assert verify_certificate(cert).ok

    def test_pipeline_trace_names_stages(self):
        cert = solve(disjoint_union(cycle_graph(3), k2s(3)), seed=0)
        joined = " ".join(cert.trace)
        assert "embed:" in joined
        assert "attach:" in joined
        assert "hilton:" in joined

    def test_single_edge(self):
        cert = solve([(0, 1)])
        assert cert.order == 3
        assert cert.assignment == [0]


class TestCanonicalHosts:
    def test_labels_map_to_prefix_in_sorted_order(self):
        cert = solve([(100, 7), (7, 42)], seed=1)
        assert cert.label_map == {7: 0, 42: 1, 100: 2}

    @pytest.mark.parametrize("seed", range(4))
    def test_every_route_lands_on_prefix(self, seed):
        cases = [
            path_graph(4),
            k2s(6),
            disjoint_union(path_graph(3), k2s(4)),
            disjoint_union(star_graph(3), k2s(4)),
        ]
        for h in cases:
            cert = solve(h, seed=seed)
            nv = len({v for e in cert.h_edges for v in e})
            assert sorted(cert.label_map.values()) == list(range(nv))


class TestRelabelHosts:
    def test_round_trip(self):
        cert = solve(path_graph(4), seed=2)
        o = cert.order
        perm = {i: (i + 3) % o for i in range(o)}
        moved = relabel_hosts(cert, perm)
        assert verify_certificate(moved).ok
        back = relabel_hosts(moved, {v: k for k, v in perm.items()})
        assert back.decomposition.classes == cert.decomposition.classes
        assert back.label_map == cert.label_map


class TestDeterminism:
    @pytest.mark.parametrize(
        "h",
        [
            path_graph(5),
            k2s(8),
            disjoint_union(path_graph(2), k2s(4)),
            disjoint_union(cycle_graph(3), k2s(4)),
        ],
    )
    def test_same_seed_same_bytes(self, h):
        a = certificate_to_text(solve(h, seed=11))
        b = certificate_to_text(solve(h, seed=11))
        assert a == b


class TestOracleAgreement:
    def test_solver_assignment_is_completable(self):
        # force the oracle to use the solver's classes for the planted edges
        h = path_graph(3)
        cert = solve(h, seed=4)
        out = exhaustive_rainbow_hcd(h, 3, precoloring=list(cert.assignment))
        assert out.status == "found"
