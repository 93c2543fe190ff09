import pytest

from rainbow_hcd.errors import BudgetExceeded, InfeasibleInput, PreconditionViolation
from rainbow_hcd.graph_core import is_hamiltonian_cycle
from rainbow_hcd.oracle import (
    enumerate_hcds,
    exhaustive_rainbow_hcd,
)


class TestRainbowSearch:
    def test_empty_instance_builds_hcd(self):
        out = exhaustive_rainbow_hcd([], 2)
        assert out.status == "found"
        out.decomposition.check_hcd()

    def test_planted_path_on_k5(self):
        out = exhaustive_rainbow_hcd([(0, 1), (1, 2)], 2)
        assert out.status == "found"
        dec = out.decomposition
        assert out.assignment[0] != out.assignment[1]
        assert (0, 1) in dec.classes[out.assignment[0]]
        assert (1, 2) in dec.classes[out.assignment[1]]

    def test_two_disjoint_edges_on_k5(self):
        out = exhaustive_rainbow_hcd([(0, 1), (2, 3)], 2)
        assert out.status == "found"

    def test_triangle_on_k7(self):
        out = exhaustive_rainbow_hcd([(0, 1), (1, 2), (0, 2)], 3)
        assert out.status == "found"
        assert sorted(out.assignment) == [0, 1, 2]

    def test_too_many_edges_rejected(self):
        with pytest.raises(InfeasibleInput):
            exhaustive_rainbow_hcd([(0, 1), (1, 2), (0, 2)], 2)

    def test_out_of_host_rejected(self):
        with pytest.raises(InfeasibleInput):
            exhaustive_rainbow_hcd([(0, 9)], 2)

    def test_large_n_guarded(self):
        with pytest.raises(PreconditionViolation):
            exhaustive_rainbow_hcd([], 6)

    def test_budget_enforced(self):
        with pytest.raises(BudgetExceeded):
            exhaustive_rainbow_hcd([], 4, budget=50)


class TestPrecolored:
    def test_feasible_precoloring(self):
        # both path edges forced into one class: legal, just not rainbow
        out = exhaustive_rainbow_hcd([(0, 1), (1, 2)], 2, precoloring=[0, 0])
        assert out.status == "found"
        assert {(0, 1), (1, 2)} <= out.decomposition.classes[0]

    def test_k5_negative_regression(self):
        # a path forced into class 0 and the opposite edge into class 1
        # leaves K_5 with no completing pair of Hamiltonian cycles
        out = exhaustive_rainbow_hcd(
            [(0, 1), (1, 2), (3, 4)], 2, precoloring=[0, 0, 1]
        )
        assert out.status == "none"

    def test_length_mismatch_rejected(self):
        with pytest.raises(InfeasibleInput):
            exhaustive_rainbow_hcd([(0, 1)], 2, precoloring=[0, 1])

    def test_class_range_checked(self):
        with pytest.raises(InfeasibleInput):
            exhaustive_rainbow_hcd([(0, 1)], 2, precoloring=[5])


class TestEnumeration:
    def test_k3_unique(self):
        assert len(enumerate_hcds(1)) == 1

    def test_k5_count_frozen(self):
        # complement of a Hamiltonian cycle of K_5 is again one, so the
        # 12 labeled cycles pair into 6 decompositions
        sols = enumerate_hcds(2)
        assert len(sols) == 6
        for sol in sols:
            assert all(is_hamiltonian_cycle(c, 5) for c in sol)

    def test_k7_methods_agree(self):
        # value first computed by the two independent enumerations here
        assert len(enumerate_hcds(3)) == 960

    def test_guard(self):
        with pytest.raises(PreconditionViolation):
            enumerate_hcds(4)
