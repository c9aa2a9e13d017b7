from fractions import Fraction

import pytest

from eliastream.verify import (
    balanced_paths,
    exhaustive_equivalence,
    statistical_battery,
    theorem_bound,
    yield_bound_sweep,
)


def test_equivalence_two_bits_node_populations():
    report = exhaustive_equivalence(2)
    assert report.ok
    records = {(r.t, r.l): r.string_count for r in report.nodes}
    assert records == {(0, 0): 1, (1, 1): 2, (2, 0): 1}


def test_equivalence_four_bits_type_two_counts():
    report = exhaustive_equivalence(4)
    assert report.ok
    records = {(r.t, r.l): r.string_count for r in report.nodes if r.t == 2}
    assert records == {(2, 2): 4, (2, 1): 2}


@pytest.mark.parametrize("n", range(13))
def test_equivalence_holds_exhaustively(n):
    report = exhaustive_equivalence(n)
    assert report.ok, report.violations


def test_equivalence_cap():
    with pytest.raises(ValueError):
        exhaustive_equivalence(21)


def test_node_populations_consistent_across_sizes():
    # nodes at n+1 derive from nodes at n by the carry recursion; in
    # particular reachable (t, l) sets match the layouts at both sizes
    small = {(r.t, r.l): r.string_count for r in exhaustive_equivalence(7).nodes}
    large = {(r.t, r.l): r.string_count for r in exhaustive_equivalence(8).nodes}
    assert sum(small.values()) * 2 == sum(large.values())
    for (t, l), count in large.items():
        assert count == 1 << l


def test_balanced_two_bits():
    report = balanced_paths(2)
    assert report.ok
    assert report.nodes_checked == 1  # only node (1,1) has any output
    assert report.positions_checked == 1


@pytest.mark.parametrize("n", range(11))
def test_balanced_holds_exhaustively(n):
    report = balanced_paths(n)
    assert report.ok, report.violations


def test_balanced_cap():
    with pytest.raises(ValueError):
        balanced_paths(15)


def test_streamed_yield_equals_block_yield_exactly():
    # group the exhaustive walk by final node and weight each node's output
    # length by its exact type probability: the mean must be the very same
    # rational the block-side calculator produces
    from eliastream.elias import SourceModel, expected_yield
    from eliastream.verify import _walk_outputs

    for n in (1, 4, 9, 13, 16):
        node_counts = {}
        for state, output in _walk_outputs(n):
            key = (state.t, len(output))
            node_counts[key] = node_counts.get(key, 0) + 1
        for p in (Fraction(3, 10), Fraction(1, 2), Fraction(9, 10)):
            model = SourceModel(p)
            mean = sum(
                count * l * model.string_prob(n, t)
                for (t, l), count in node_counts.items()
            )
            assert mean == expected_yield(n, model)


def test_yield_bound_trivial_at_one_bit():
    assert theorem_bound(1, Fraction(1, 2)) < 0


def test_yield_bound_sweep_small():
    report = yield_bound_sweep(12)
    assert report.ok, report.violations
    assert len(report.rows) == 12 * 5


def test_battery_is_deterministic():
    a = statistical_battery(0.4, 20_000, seed=7)
    b = statistical_battery(0.4, 20_000, seed=7)
    assert a == b
    c = statistical_battery(0.4, 20_000, seed=8)
    assert c.output_len != a.output_len or c.monobit_z != a.monobit_z


def test_battery_smoke():
    report = statistical_battery(0.5, 50_000, seed=3)
    assert report.ok
    assert abs(report.rate - 1.0) < 0.05
    assert report.max_position_bias < 0.05


def test_battery_rejects_tiny_samples():
    with pytest.raises(ValueError):
        statistical_battery(0.5, 5_000, seed=1)
