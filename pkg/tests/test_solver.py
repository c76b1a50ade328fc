from itertools import combinations

import pytest

from resfault.families import (
    KPartiteShape,
    complete_network,
    complete_orbit_representatives,
    measurement_orbit_representatives,
)
from resfault.network import FaultMode, Measurement, Network
from resfault.signatures import build_signature, is_distinguishing
from resfault.solver import (
    ExactSolution,
    Infeasible,
    TimedOut,
    analyze_measurement_graph,
    solve_exact,
    solve_greedy,
)


def enumeration_optimum(net, mode):
    """Ground truth by subset enumeration over all candidate probes."""
    candidates = net.measurements()
    sig = build_signature(net, candidates, mode)
    cols = sig.columns()
    for size in range(1, len(candidates) + 1):
        for subset in combinations(range(len(candidates)), size):
            proj = [tuple(col[i] for i in subset) for col in cols]
            if len(set(proj)) == len(proj):
                return size
    raise AssertionError("full pool does not distinguish")


class TestExactSolver:
    @pytest.mark.parametrize("n,want", [(6, 4), (7, 5)])
    def test_complete_graphs(self, n, want):
        net = complete_network(n)
        result = solve_exact(
            net, first_probe_orbits=complete_orbit_representatives(n), family=f"complete({n})"
        )
        assert isinstance(result, ExactSolution)
        assert len(result.plan) == want
        assert is_distinguishing(net, result.plan.measurements, FaultMode.REMOVED)

    def test_matches_enumeration_on_k6(self):
        net = complete_network(6)
        result = solve_exact(net)
        assert isinstance(result, ExactSolution)
        assert len(result.plan) == enumeration_optimum(net, FaultMode.REMOVED)

    def test_matches_enumeration_on_small_bipartite(self):
        net = KPartiteShape((2, 3)).network()
        result = solve_exact(net)
        assert isinstance(result, ExactSolution)
        assert len(result.plan) == enumeration_optimum(net, FaultMode.REMOVED) == 3

    def test_matches_enumeration_on_weighted_graph(self):
        net = Network.from_edge_list(
            4, [(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 3), (0, 2, 1)]
        )
        for mode in FaultMode:
            result = solve_exact(net, mode=mode)
            assert isinstance(result, ExactSolution)
            assert len(result.plan) == enumeration_optimum(net, mode)

    def test_matches_enumeration_on_random_networks(self):
        import random
        from fractions import Fraction

        rng = random.Random(99)
        for _ in range(8):
            n = rng.randint(4, 5)
            edges = [
                (rng.randrange(v), v, Fraction(rng.randint(1, 4), rng.randint(1, 3)))
                for v in range(1, n)
            ]
            for u in range(n):
                for v in range(u + 1, n):
                    if rng.random() < 0.6:
                        edges.append((u, v, Fraction(rng.randint(1, 4))))
            net = Network.from_edge_list(n, edges)
            mode = rng.choice(list(FaultMode))
            result = solve_exact(net, mode=mode)
            assert isinstance(result, ExactSolution)
            assert len(result.plan) == enumeration_optimum(net, mode), (net.edges, mode)

    def test_without_symmetry_same_optimum(self):
        net = KPartiteShape((3, 3)).network()
        shape = KPartiteShape((3, 3))
        with_sym = solve_exact(net, first_probe_orbits=measurement_orbit_representatives(shape))
        without = solve_exact(net)
        assert isinstance(with_sym, ExactSolution) and isinstance(without, ExactSolution)
        assert len(with_sym.plan) == len(without.plan) == 3

    def test_restricted_pool_infeasible(self):
        net = complete_network(6)
        # probes confined to vertices 0..2 cannot separate far-apart faults
        pool = [Measurement(0, 1), Measurement(0, 2), Measurement(1, 2)]
        result = solve_exact(net, candidates=pool)
        assert isinstance(result, Infeasible)
        assert result.witness_pairs

    def test_single_edge_network_needs_no_probes(self):
        net = Network.from_edge_list(2, [(0, 1, 1)])
        result = solve_exact(net)
        assert isinstance(result, ExactSolution)
        assert len(result.plan) == 0

    def test_budget_exhaustion_reports_incumbent_and_bound(self):
        net = complete_network(8)
        result = solve_exact(net, budget_seconds=0.0)
        assert isinstance(result, TimedOut)
        assert result.incumbent is not None
        assert is_distinguishing(net, result.incumbent.measurements, FaultMode.REMOVED)
        assert 1 <= result.lower_bound <= len(result.incumbent)

    def test_shorted_mode_solves_independently(self):
        net = KPartiteShape((2, 2)).network()
        result = solve_exact(net, mode=FaultMode.SHORTED)
        assert isinstance(result, ExactSolution)
        assert len(result.plan) == enumeration_optimum(net, FaultMode.SHORTED)


class TestGreedy:
    def test_result_is_distinguishing(self):
        for net in [complete_network(7), KPartiteShape((3, 4)).network()]:
            plan = solve_greedy(net)
            assert is_distinguishing(net, plan.measurements, FaultMode.REMOVED)

    def test_never_beats_the_exact_optimum(self):
        net = complete_network(6)
        greedy = solve_greedy(net)
        assert len(greedy) >= 4

    def test_infeasible_pool_detected(self):
        net = complete_network(6)
        pool = [Measurement(0, 1), Measurement(0, 2)]
        assert isinstance(solve_greedy(net, candidates=pool), Infeasible)

    def test_deterministic(self):
        net = KPartiteShape((2, 2, 3)).network()
        assert solve_greedy(net).measurements == solve_greedy(net).measurements


class TestMeasurementGraph:
    def test_empty_plan_is_all_isolated(self):
        report = analyze_measurement_graph(5, [])
        assert len(report.isolated) == 5
        assert len(report.components) == 5

    def test_complete_strategy_structure(self):
        from resfault.strategies import complete_strategy

        plan = complete_strategy(6)
        report = analyze_measurement_graph(6, plan.measurements)
        assert report.violations == ()
        assert report.isolated == ()
        assert all(len(c) == 3 for c in report.components)

    def test_double_isolated_in_one_partition_flagged(self):
        shape = KPartiteShape((4, 4))
        probes = [Measurement(0, 4), Measurement(1, 5)]
        report = analyze_measurement_graph(8, probes, shape)
        assert report.isolated_by_partition == (2, 2)
        assert any("isolated" in v for v in report.violations)

    def test_intra_partition_pair_flagged(self):
        shape = KPartiteShape((3, 3))
        probes = [Measurement(0, 1), Measurement(3, 4), Measurement(2, 5)]
        report = analyze_measurement_graph(6, probes, shape)
        assert any("inside partition" in v for v in report.violations)

    def test_size_two_component_flagged_for_complete(self):
        probes = [Measurement(0, 1), Measurement(2, 3), Measurement(3, 4)]
        report = analyze_measurement_graph(6, probes)
        assert any("size two" in v for v in report.violations)
        assert report.size_two_components == ((0, 1),)
