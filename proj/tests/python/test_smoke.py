"""Smoke tests for the python bindings."""

import fleetcharge as fc
import pytest


@pytest.fixture(scope="module")
def instance():
    return fc.generate_instance(fc.small_preset(5, 42))


def test_generation_is_deterministic(instance):
    again = fc.generate_instance(fc.small_preset(5, 42))
    assert [t.demand_kwh for t in again.trucks] == [t.demand_kwh for t in instance.trucks]
    assert [t.arrival_min for t in again.trucks] == [t.arrival_min for t in instance.trucks]


def test_default_tariff_segments():
    tariff = fc.default_tariff()
    assert [(p.start_min, p.price_eur_per_kwh) for p in tariff.points] == [
        (0.0, 0.101),
        (360.0, 0.174),
        (540.0, 0.128),
        (720.0, 0.110),
        (1020.0, 0.202),
        (1260.0, 0.101),
    ]
    assert fc.price_at(tariff, 7 * 60 + 30) == 0.174


def test_rollout_improves_on_each_base(instance):
    for base in (fc.PolicyKind.FCFS, fc.PolicyKind.EDF, fc.PolicyKind.SCDF):
        base_cost = fc.inner_solve(instance, fc.base_order(instance, base)).cost.total_eur
        trace = fc.rollout_solve(instance, base)
        assert trace.final_solution.cost.total_eur <= base_cost * (1 + 1e-9)
        assert not fc.validate_schedule(instance, trace.final_solution.schedule)


def test_evaluation_counter(instance):
    trace = fc.rollout_solve(instance, fc.PolicyKind.EDF)
    n, c = 5, 3
    assert trace.inner_evaluations == c * n * (n + 1) // 2 + 1


def test_exact_dominates_on_tiny_instance():
    inst = fc.generate_instance(fc.small_preset(3, 7))
    exact = fc.exact_solve(inst)
    assert exact.evaluated == fc.ordering_count(3, 3)
    for base in (fc.PolicyKind.FCFS, fc.PolicyKind.EDF, fc.PolicyKind.SCDF):
        cost = fc.inner_solve(inst, fc.base_order(inst, base)).cost.total_eur
        assert exact.solution.cost.total_eur <= cost * (1 + 1e-9)


def test_instance_file_round_trip(tmp_path, instance):
    path = tmp_path / "inst.json"
    fc.save_instance(instance, path)
    back = fc.load_instance(path)
    assert back.num_trucks() == instance.num_trucks()
    assert [t.demand_kwh for t in back.trucks] == [t.demand_kwh for t in instance.trucks]
    assert fc.hash_file(path).startswith("fnv1a64:")


def test_schedule_surface(instance):
    solution = fc.inner_solve(instance, fc.base_order(instance, fc.PolicyKind.FCFS))
    assert solution.cost.total_eur == pytest.approx(
        solution.cost.energy_eur + solution.cost.waiting_eur + solution.cost.tardiness_eur
    )
    for ts in solution.schedule.trucks:
        assert ts.finish_min > ts.start_min
        assert all(sp.power_kw > 0 for sp in ts.profile)
