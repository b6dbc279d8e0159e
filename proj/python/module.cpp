#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fleetcharge/exact.hpp"
#include "fleetcharge/inner_solver.hpp"
#include "fleetcharge/io.hpp"
#include "fleetcharge/model.hpp"
#include "fleetcharge/policies.hpp"
#include "fleetcharge/rollout.hpp"
#include "fleetcharge/scenario.hpp"

namespace py = pybind11;
using namespace fleetcharge;

PYBIND11_MODULE(_fleetcharge, m) {
  m.doc() = "fleet charging schedule optimization";

  py::class_<TruckSpec>(m, "TruckSpec")
      .def(py::init<>())
      .def_readwrite("id", &TruckSpec::id)
      .def_readwrite("arrival_min", &TruckSpec::arrival_min)
      .def_readwrite("initial_energy_kwh", &TruckSpec::initial_energy_kwh)
      .def_readwrite("demand_kwh", &TruckSpec::demand_kwh)
      .def_readwrite("capacity_kwh", &TruckSpec::capacity_kwh)
      .def_readwrite("deadline_min", &TruckSpec::deadline_min)
      .def_readwrite("power_cap_kw", &TruckSpec::power_cap_kw)
      .def_readwrite("waiting_rate_eur_min", &TruckSpec::waiting_rate_eur_min)
      .def_readwrite("tardiness_rate_eur_min", &TruckSpec::tardiness_rate_eur_min);

  py::class_<StationSpec>(m, "StationSpec")
      .def(py::init<>())
      .def_readwrite("port_powers_kw", &StationSpec::port_powers_kw)
      .def_readwrite("station_cap_kw", &StationSpec::station_cap_kw)
      .def("num_ports", &StationSpec::num_ports);

  py::class_<TariffPoint>(m, "TariffPoint")
      .def(py::init<>())
      .def_readwrite("start_min", &TariffPoint::start_min)
      .def_readwrite("price_eur_per_kwh", &TariffPoint::price_eur_per_kwh);

  py::class_<Tariff>(m, "Tariff")
      .def(py::init<>())
      .def_readwrite("points", &Tariff::points)
      .def("tiled_daily", &Tariff::tiled_daily);

  py::class_<Timeline>(m, "Timeline")
      .def(py::init<>())
      .def_readwrite("origin_min", &Timeline::origin_min)
      .def_readwrite("slot_minutes", &Timeline::slot_minutes)
      .def_readwrite("num_slots", &Timeline::num_slots)
      .def("slot_start_min", &Timeline::slot_start_min);

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def_readwrite("trucks", &Instance::trucks)
      .def_readwrite("station", &Instance::station)
      .def_readwrite("tariff", &Instance::tariff)
      .def_readwrite("timeline", &Instance::timeline)
      .def("num_trucks", &Instance::num_trucks)
      .def("validate", &Instance::validate);

  py::class_<Ordering>(m, "Ordering")
      .def(py::init<>())
      .def(py::init([](std::vector<std::vector<int>> per_port) {
        return Ordering{std::move(per_port)};
      }))
      .def_readwrite("per_port", &Ordering::per_port);

  py::class_<SlotPower>(m, "SlotPower")
      .def_readonly("slot", &SlotPower::slot)
      .def_readonly("power_kw", &SlotPower::power_kw);

  py::class_<TruckSchedule>(m, "TruckSchedule")
      .def_readonly("truck_id", &TruckSchedule::truck_id)
      .def_readonly("port", &TruckSchedule::port)
      .def_readonly("start_min", &TruckSchedule::start_min)
      .def_readonly("finish_min", &TruckSchedule::finish_min)
      .def_readonly("profile", &TruckSchedule::profile);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("trucks", &Schedule::trucks)
      .def_readonly("ordering", &Schedule::ordering);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("energy_eur", &CostBreakdown::energy_eur)
      .def_readonly("waiting_eur", &CostBreakdown::waiting_eur)
      .def_readonly("tardiness_eur", &CostBreakdown::tardiness_eur)
      .def_readonly("total_eur", &CostBreakdown::total_eur);

  py::class_<Violation>(m, "Violation")
      .def_readonly("trucks", &Violation::trucks)
      .def_readonly("magnitude", &Violation::magnitude)
      .def_readonly("detail", &Violation::detail)
      .def_property_readonly("constraint",
                             [](const Violation& v) { return constraint_name(v.constraint); });

  py::class_<InnerStats>(m, "InnerStats")
      .def_readonly("dp_states", &InnerStats::dp_states)
      .def_readonly("flow_augmentations", &InnerStats::flow_augmentations)
      .def_readonly("flow_solves", &InnerStats::flow_solves)
      .def_readonly("repair_iterations", &InnerStats::repair_iterations);

  py::class_<InnerSolution>(m, "InnerSolution")
      .def_readonly("schedule", &InnerSolution::schedule)
      .def_readonly("cost", &InnerSolution::cost)
      .def_readonly("stats", &InnerSolution::stats);

  py::enum_<PolicyKind>(m, "PolicyKind")
      .value("FCFS", PolicyKind::Fcfs)
      .value("EDF", PolicyKind::Edf)
      .value("SCDF", PolicyKind::Scdf);

  py::class_<PartialState>(m, "PartialState")
      .def(py::init([](std::vector<std::vector<int>> per_port) {
        return PartialState{std::move(per_port)};
      }))
      .def_static("empty", &PartialState::empty)
      .def_readwrite("per_port", &PartialState::per_port)
      .def("stage", &PartialState::stage)
      .def("unassigned", &PartialState::unassigned);

  py::class_<Action>(m, "Action")
      .def(py::init([](int truck_id, int port) { return Action{truck_id, port}; }),
           py::arg("truck_id"), py::arg("port"))
      .def_readwrite("truck_id", &Action::truck_id)
      .def_readwrite("port", &Action::port);

  py::class_<RolloutTrace>(m, "RolloutTrace")
      .def_readonly("final_ordering", &RolloutTrace::final_ordering)
      .def_readonly("final_solution", &RolloutTrace::final_solution)
      .def_readonly("inner_evaluations", &RolloutTrace::inner_evaluations)
      .def_readonly("base_cost", &RolloutTrace::base_cost)
      .def_readonly("fell_back_to_base", &RolloutTrace::fell_back_to_base);

  py::class_<ExactResult>(m, "ExactResult")
      .def_readonly("ordering", &ExactResult::ordering)
      .def_readonly("solution", &ExactResult::solution)
      .def_readonly("evaluated", &ExactResult::evaluated);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("n_trucks", &ScenarioConfig::n_trucks)
      .def_readwrite("n_ports", &ScenarioConfig::n_ports)
      .def_readwrite("port_power_choices_kw", &ScenarioConfig::port_power_choices_kw)
      .def_readwrite("station_cap_kw", &ScenarioConfig::station_cap_kw)
      .def_readwrite("slack", &ScenarioConfig::slack)
      .def_readwrite("arrival_start_min", &ScenarioConfig::arrival_start_min)
      .def_readwrite("arrival_end_min", &ScenarioConfig::arrival_end_min)
      .def_readwrite("battery_capacity_kwh", &ScenarioConfig::battery_capacity_kwh)
      .def_readwrite("truck_power_cap_kw", &ScenarioConfig::truck_power_cap_kw)
      .def_readwrite("soc_min", &ScenarioConfig::soc_min)
      .def_readwrite("soc_max", &ScenarioConfig::soc_max)
      .def_readwrite("waiting_rate_eur_min", &ScenarioConfig::waiting_rate_eur_min)
      .def_readwrite("tardiness_rate_eur_min", &ScenarioConfig::tardiness_rate_eur_min)
      .def_readwrite("rng_seed", &ScenarioConfig::rng_seed)
      .def_readwrite("origin_min", &ScenarioConfig::origin_min)
      .def_readwrite("slot_minutes", &ScenarioConfig::slot_minutes)
      .def_readwrite("horizon_slots", &ScenarioConfig::horizon_slots);

  m.def("effective_cap", &effective_cap);
  m.def("price_at", &price_at);
  m.def("evaluate_cost", &evaluate_cost);
  m.def("validate_schedule", &validate_schedule);
  m.def("aggregate_power_kw", &aggregate_power_kw);
  m.def("default_tariff", &default_tariff);
  m.def("small_preset", &small_preset, py::arg("n_trucks"), py::arg("seed"));
  m.def("large_preset", &large_preset, py::arg("n_trucks"), py::arg("seed"));
  m.def("generate_instance", &generate_instance);
  m.def("base_order", &base_order);
  m.def("complete_partial", &complete_partial);
  m.def("transition", &transition);
  m.def(
      "inner_solve",
      [](const Instance& instance, const Ordering& ordering) {
        return inner_solve(instance, ordering);
      },
      py::call_guard<py::gil_scoped_release>());
  m.def("inner_bruteforce", &inner_bruteforce, py::call_guard<py::gil_scoped_release>());
  m.def(
      "rollout_solve",
      [](const Instance& instance, PolicyKind base, int threads) {
        RolloutConfig config;
        config.threads = threads;
        return rollout_solve(instance, base, config);
      },
      py::arg("instance"), py::arg("base"), py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "lookahead_cost",
      [](const Instance& instance, const PartialState& state, const Action& action,
         PolicyKind base) { return lookahead_cost(instance, state, action, base); });
  m.def(
      "exact_solve",
      [](const Instance& instance, int guard_limit, bool symmetry_pruning, int threads) {
        ExactConfig config;
        config.guard_limit = guard_limit;
        config.symmetry_pruning = symmetry_pruning;
        config.threads = threads;
        return exact_solve(instance, config);
      },
      py::arg("instance"), py::arg("guard_limit") = 8, py::arg("symmetry_pruning") = false,
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("ordering_count", &ordering_count);
  m.def("save_instance", &save_instance);
  m.def("load_instance", &load_instance);
  m.def("hash_file", &hash_file);

  m.attr("__version__") = "0.1.0";
}
