#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcond/eraser.hpp"
#include "qcond/everett.hpp"
#include "qcond/measure.hpp"
#include "qcond/orderprop.hpp"
#include "qcond/version.hpp"
#include "qcond/wheeler.hpp"

namespace py = pybind11;
using namespace qcond;

namespace {

py::dict dist_to_dict(const JointDistribution& dist) {
  py::dict out;
  for (const auto& [outcome, p] : dist.entries) {
    py::tuple key(outcome.size());
    for (std::size_t i = 0; i < outcome.size(); ++i) key[i] = outcome[i];
    out[key] = p;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projective-measurement calculus for entangled subsystems with "
            "EPR, quantum-eraser, Wheeler and Everett-branch experiments";
  m.attr("__version__") = kVersion;

  // --- core types ---------------------------------------------------------
  py::class_<StateVector>(m, "StateVector")
      .def_readonly("dims", &StateVector::dims)
      .def_readonly("amps", &StateVector::amps)
      .def("norm", &StateVector::norm)
      .def("__len__", [](const StateVector& s) { return s.amps.size(); });

  py::class_<LinearOperator>(m, "LinearOperator")
      .def_readonly("dims", &LinearOperator::dims)
      .def_readonly("entries", &LinearOperator::entries)
      .def("side", &LinearOperator::side);

  py::class_<Projector, LinearOperator>(m, "Projector");

  py::class_<ProjectiveFamily>(m, "ProjectiveFamily")
      .def_readonly("projectors", &ProjectiveFamily::projectors)
      .def("__len__", &ProjectiveFamily::size);

  py::class_<MeasurementEvent>(m, "MeasurementEvent")
      .def(py::init<std::size_t, ProjectiveFamily, std::size_t>(), py::arg("slot"),
           py::arg("family"), py::arg("outcome"))
      .def_readonly("slot", &MeasurementEvent::slot)
      .def_readonly("outcome", &MeasurementEvent::outcome);

  py::class_<BayesReport>(m, "BayesReport")
      .def_readonly("forward", &BayesReport::forward)
      .def_readonly("reverse", &BayesReport::reverse)
      .def_readonly("joint", &BayesReport::joint)
      .def_readonly("max_difference", &BayesReport::max_difference);

  // --- core + measurement operations --------------------------------------
  m.def("make_state", &make_state, py::arg("dims"), py::arg("amps"));
  m.def("tensor_state", &tensor_state);
  m.def("family_from_basis", &family_from_basis, py::arg("vectors"));
  m.def("lift", &lift, py::arg("projector"), py::arg("dims"), py::arg("slot"));
  m.def("apply", &apply, py::arg("op"), py::arg("state"));
  m.def("identity_operator", &identity_operator, py::arg("dims"));

  m.def("born_probability",
        py::overload_cast<const StateVector&, const MeasurementEvent&>(&born_probability),
        py::arg("state"), py::arg("event"));
  m.def("collapse",
        py::overload_cast<const StateVector&, const MeasurementEvent&>(&collapse),
        py::arg("state"), py::arg("event"));
  m.def("conditional_probability", &conditional_probability, py::arg("state"),
        py::arg("target"), py::arg("given"));
  m.def(
      "joint_probability",
      [](const StateVector& s, const std::vector<MeasurementEvent>& events) {
        return joint_probability(s, Schedule{events});
      },
      py::arg("state"), py::arg("events"));
  m.def(
      "ordered_expectation",
      [](const StateVector& s, const std::vector<MeasurementEvent>& events) {
        return ordered_expectation(s, Schedule{events});
      },
      py::arg("state"), py::arg("events"));
  m.def(
      "joint_distribution",
      [](const StateVector& s,
         const std::vector<std::pair<std::size_t, ProjectiveFamily>>& measurements) {
        std::vector<FamilySlot> ms;
        for (const auto& [slot, fam] : measurements) ms.push_back({slot, fam});
        return dist_to_dict(joint_distribution(s, ms));
      },
      py::arg("state"), py::arg("measurements"));
  m.def("bayes_symmetry_check", &bayes_symmetry_check, py::arg("state"), py::arg("a"),
        py::arg("b"));

  // --- order-invariance fuzzing -------------------------------------------
  py::class_<orderprop::InterleavingReport>(m, "InterleavingReport")
      .def_readonly("num_interleavings", &orderprop::InterleavingReport::num_interleavings)
      .def_readonly("probabilities", &orderprop::InterleavingReport::probabilities)
      .def_readonly("max_spread", &orderprop::InterleavingReport::max_spread)
      .def_readonly("seed", &orderprop::InterleavingReport::seed);

  py::class_<orderprop::FuzzSummary>(m, "FuzzSummary")
      .def_readonly("seed", &orderprop::FuzzSummary::seed)
      .def_readonly("trials", &orderprop::FuzzSummary::trials)
      .def_readonly("worst_spread", &orderprop::FuzzSummary::worst_spread)
      .def_readonly("worst_trial", &orderprop::FuzzSummary::worst_trial)
      .def_readonly("generator", &orderprop::FuzzSummary::generator);

  m.def("random_state",
        py::overload_cast<std::vector<std::size_t>, std::uint64_t>(&orderprop::random_state),
        py::arg("dims"), py::arg("seed"));
  m.def("random_family",
        py::overload_cast<std::size_t, std::uint64_t>(&orderprop::random_family),
        py::arg("dim"), py::arg("seed"));
  m.def("random_unitary",
        py::overload_cast<std::size_t, std::uint64_t>(&orderprop::random_unitary),
        py::arg("dim"), py::arg("seed"));
  m.def("check_interleavings", &orderprop::check_interleavings, py::arg("state"),
        py::arg("seq_a"), py::arg("seq_b"), py::arg("seed") = 0);
  m.def("fuzz_campaign", &orderprop::fuzz_campaign, py::arg("trials"), py::arg("max_dim"),
        py::arg("max_len"), py::arg("seed"));

  // --- fringe patterns ------------------------------------------------------
  py::class_<FringePattern>(m, "FringePattern")
      .def_readonly("theta", &FringePattern::theta)
      .def_readonly("intensity", &FringePattern::intensity)
      .def_readonly("visibility", &FringePattern::visibility);

  // --- delayed-choice quantum eraser ---------------------------------------
  py::module_ er = m.def_submodule("eraser", "delayed-choice quantum eraser");
  py::enum_<eraser::Mode>(er, "Mode")
      .value("paper", eraser::Mode::paper)
      .value("unitary", eraser::Mode::unitary);
  py::enum_<eraser::Detector>(er, "Detector")
      .value("D1", eraser::Detector::D1)
      .value("D2", eraser::Detector::D2)
      .value("D3", eraser::Detector::D3)
      .value("D4", eraser::Detector::D4);
  py::class_<eraser::Config>(er, "Config")
      .def_readonly("k", &eraser::Config::k)
      .def_readonly("d", &eraser::Config::d)
      .def_readonly("theta_grid", &eraser::Config::theta_grid)
      .def_readonly("mode", &eraser::Config::mode);
  py::class_<eraser::ScreenTable>(er, "ScreenTable")
      .def_readonly("theta", &eraser::ScreenTable::theta)
      .def_readonly("joint", &eraser::ScreenTable::joint)
      .def("row_sum", &eraser::ScreenTable::row_sum);
  py::class_<eraser::ScheduleEquivalenceReport>(er, "ScheduleEquivalenceReport")
      .def_readonly("signal_first", &eraser::ScheduleEquivalenceReport::signal_first)
      .def_readonly("idler_first", &eraser::ScheduleEquivalenceReport::idler_first)
      .def_readonly("max_abs_diff", &eraser::ScheduleEquivalenceReport::max_abs_diff);

  er.def("make_config", &eraser::make_config, py::arg("k"), py::arg("d"),
         py::arg("theta_grid"), py::arg("mode"));
  er.def("sin_spaced_grid", &eraser::sin_spaced_grid, py::arg("sin_min"),
         py::arg("sin_max"), py::arg("bins"));
  er.def("build_state", &eraser::build_state, py::arg("mode"));
  er.def("detector_family", &eraser::detector_family);
  er.def("idler_marginals",
         [](const StateVector& s) { return dist_to_dict(eraser::idler_marginals(s)); });
  er.def("conditional_pattern", &eraser::conditional_pattern, py::arg("state"),
         py::arg("detector"), py::arg("config"));
  er.def(
      "joint_screen_distribution",
      [](const StateVector& s, const eraser::Config& c, bool idler_first) {
        return eraser::joint_screen_distribution(
            s, c,
            idler_first ? eraser::ScheduleOrder::idler_first
                        : eraser::ScheduleOrder::signal_first);
      },
      py::arg("state"), py::arg("config"), py::arg("idler_first") = false);
  er.def("schedule_equivalence", &eraser::schedule_equivalence, py::arg("state"),
         py::arg("config"));

  // --- Wheeler's delayed choice --------------------------------------------
  py::module_ wh = m.def_submodule("wheeler", "double slit with telescopes");
  py::class_<wheeler::Vec2>(wh, "Vec2")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readonly("x", &wheeler::Vec2::x)
      .def_readonly("y", &wheeler::Vec2::y);
  py::class_<wheeler::Config>(wh, "Config")
      .def_readonly("k", &wheeler::Config::k)
      .def_readonly("screen_distance", &wheeler::Config::screen_distance)
      .def_readonly("theta_grid", &wheeler::Config::theta_grid);
  py::class_<wheeler::TelescopeProbabilities>(wh, "TelescopeProbabilities")
      .def_readonly("p1", &wheeler::TelescopeProbabilities::p1)
      .def_readonly("p2", &wheeler::TelescopeProbabilities::p2);

  wh.def("make_config", &wheeler::make_config, py::arg("k"), py::arg("r1"),
         py::arg("r2"), py::arg("screen_distance"), py::arg("theta_grid"),
         py::arg("telescope_aim"), py::arg("acceptance_halfwidth"));
  wh.def("psi_exact", &wheeler::psi_exact, py::arg("r"), py::arg("config"));
  wh.def("path_difference", &wheeler::path_difference, py::arg("theta"), py::arg("d"));
  wh.def("far_field_intensity", &wheeler::far_field_intensity, py::arg("theta"),
         py::arg("config"));
  wh.def("far_field_pattern", &wheeler::far_field_pattern, py::arg("config"));
  wh.def("exact_screen_intensity", &wheeler::exact_screen_intensity, py::arg("config"));
  wh.def("telescope_probabilities", &wheeler::telescope_probabilities, py::arg("config"));
  wh.def("delayed_choice", &wheeler::delayed_choice, py::arg("config"),
         py::arg("screen_in"));

  // --- Everett branch ledger -------------------------------------------------
  py::module_ ev = m.def_submodule("everett", "premeasurement and branch ledger");
  py::class_<everett::PointerSlot>(ev, "PointerSlot")
      .def_readonly("slot", &everett::PointerSlot::slot)
      .def_readonly("observer", &everett::PointerSlot::observer)
      .def_readonly("outcome_names", &everett::PointerSlot::outcome_names);
  py::class_<everett::Branch>(ev, "Branch")
      .def_property_readonly("label",
                             [](const everett::Branch& b) { return b.label.str(); })
      .def_readonly("outcomes", &everett::Branch::outcomes)
      .def_readonly("amplitude", &everett::Branch::amplitude)
      .def_readonly("weight", &everett::Branch::weight);
  py::class_<everett::Premeasurement>(ev, "Premeasurement")
      .def_readonly("state", &everett::Premeasurement::state)
      .def_readonly("pointer", &everett::Premeasurement::pointer);
  py::class_<everett::PremeasureEvent>(ev, "PremeasureEvent")
      .def(py::init<std::size_t, ProjectiveFamily, std::string,
                    std::vector<std::string>>(),
           py::arg("slot"), py::arg("family"), py::arg("observer"),
           py::arg("outcome_names") = std::vector<std::string>{});
  py::class_<everett::OrderIndependenceReport>(ev, "OrderIndependenceReport")
      .def_readonly("branches_a", &everett::OrderIndependenceReport::branches_a)
      .def_readonly("branches_b", &everett::OrderIndependenceReport::branches_b)
      .def_readonly("labels_match", &everett::OrderIndependenceReport::labels_match)
      .def_readonly("max_amplitude_difference",
                    &everett::OrderIndependenceReport::max_amplitude_difference);
  py::class_<everett::BranchStabilityReport>(ev, "BranchStabilityReport")
      .def_readonly("weights_before", &everett::BranchStabilityReport::weights_before)
      .def_readonly("weights_after", &everett::BranchStabilityReport::weights_after)
      .def_readonly("max_drift", &everett::BranchStabilityReport::max_drift);

  ev.def("premeasure", &everett::premeasure, py::arg("state"), py::arg("slot"),
         py::arg("family"), py::arg("observer"),
         py::arg("outcome_names") = std::vector<std::string>{});
  ev.def("branch_decompose", &everett::branch_decompose, py::arg("state"),
         py::arg("pointers"));
  ev.def("order_independence", &everett::order_independence, py::arg("state"),
         py::arg("order_a"), py::arg("order_b"));
  ev.def("branch_stability", &everett::branch_stability, py::arg("state"),
         py::arg("pointers"), py::arg("slot"), py::arg("unitary"));
}
