// module.cpp - Python bindings for the AFDM ISAC core

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <sstream>

#include <afdm/common.hpp>
#include <afdm/chirp_params.hpp>
#include <afdm/frame.hpp>
#include <afdm/daft.hpp>
#include <afdm/channel.hpp>
#include <afdm/sensing.hpp>
#include <afdm/sic.hpp>
#include <afdm/experiment.hpp>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace afdm;

PYBIND11_MODULE(_core, m) {
    m.doc() = "AFDM-based integrated sensing and communications core";
    m.attr("__version__") = kVersionString;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<RngStream>(m, "RngStream",
            "Counter-seeded random stream; (seed, stream) fully determine "
            "the draw sequence")
        .def(py::init<std::uint64_t, std::uint64_t>(), "seed"_a, "stream"_a)
        .def("uniform", py::overload_cast<>(&RngStream::uniform),
             "uniform draw in [0, 1)")
        .def("uniform", py::overload_cast<double, double>(&RngStream::uniform),
             "lo"_a, "hi"_a)
        .def("normal", &RngStream::normal)
        .def("cnormal", &RngStream::cnormal, "variance"_a,
             "circularly symmetric complex gaussian")
        .def("raw", &RngStream::raw);

    py::class_<ChirpParams>(m, "ChirpParams")
        .def(py::init<>())
        .def_readwrite("N", &ChirpParams::N)
        .def_readwrite("M", &ChirpParams::M)
        .def_readwrite("c1", &ChirpParams::c1)
        .def_readwrite("c2", &ChirpParams::c2)
        .def_readwrite("dt", &ChirpParams::dt)
        .def("T", &ChirpParams::T, "frame body duration N*dt")
        .def("C", &ChirpParams::C, "chirp slope 2*c1*N")
        .def("integer_slope", &ChirpParams::integer_slope, "tol"_a = 1e-9)
        .def("validate", &ChirpParams::validate)
        .def_static("default_c1", &ChirpParams::default_c1, "n"_a, "k_f"_a,
                    "k_max"_a,
                    "smallest echo-separating slope (k_f + k_max) / N");

    py::class_<FrameConfig>(m, "FrameConfig")
        .def(py::init<>())
        .def_readwrite("N", &FrameConfig::N)
        .def_readwrite("k_f", &FrameConfig::k_f)
        .def_readwrite("k_max", &FrameConfig::k_max)
        .def_readwrite("l_max", &FrameConfig::l_max)
        .def_readwrite("m0", &FrameConfig::m0)
        .def_readwrite("overhead", &FrameConfig::overhead)
        .def_readwrite("modulation_bits", &FrameConfig::modulation_bits);

    py::class_<FrameLayout>(m, "FrameLayout")
        .def_readonly("N", &FrameLayout::N)
        .def_readonly("m0", &FrameLayout::m0)
        .def_readonly("p_gi", &FrameLayout::p_gi)
        .def_readonly("d_gi", &FrameLayout::d_gi)
        .def_readonly("d_data", &FrameLayout::d_data)
        .def_readonly("boost", &FrameLayout::boost)
        .def_readonly("window_lo", &FrameLayout::window_lo)
        .def_readonly("window_hi", &FrameLayout::window_hi)
        .def("overhead", &FrameLayout::overhead)
        .def("pilot_window", &FrameLayout::pilot_window,
             "ordered walk m0-window_lo .. m0+window_hi (mod N)")
        .def("window_position", &FrameLayout::window_position, "m"_a);

    m.def("build_layout", &build_layout, "config"_a, "params"_a,
          "pilot/guard/data partition of the DAFT grid");

    py::class_<DaftFrame>(m, "DaftFrame")
        .def_readwrite("x", &DaftFrame::x)
        .def_readonly("layout", &DaftFrame::layout);

    m.def("assemble_frame",
          py::overload_cast<const FrameLayout&, const CVec&>(&assemble_frame),
          "layout"_a, "data"_a,
          "pilot sqrt(boost) at m0, given unit-power symbols over D_data");
    m.def("assemble_frame",
          py::overload_cast<const FrameLayout&, RngStream&>(&assemble_frame),
          "layout"_a, "rng"_a, "same, with random QPSK data");
    m.def("random_qpsk", &random_qpsk, "count"_a, "rng"_a);
    m.def("extract_pilot_slice", &extract_pilot_slice, "y_tot"_a, "layout"_a,
          "pilot observation window out of a full DAFT-domain vector");

    m.def("idaft", &idaft, "x"_a, "params"_a,
          "DAFT-domain symbols to time-domain frame body");
    m.def("daft", &daft, "r"_a, "params"_a,
          "time-domain frame body to DAFT-domain samples");
    m.def("add_cpp", &add_cpp, "body"_a, "params"_a,
          "prepend the M-sample chirp-periodic prefix");
    m.def("remove_cpp", &remove_cpp, "with_prefix"_a, "params"_a);

    py::class_<Target>(m, "Target")
        .def(py::init<>())
        .def(py::init([](cd h, double tau, double f) {
                 return Target{h, tau, f};
             }),
             "h"_a, "tau"_a, "f"_a)
        .def_readwrite("h", &Target::h)
        .def_readwrite("tau", &Target::tau)
        .def_readwrite("f", &Target::f)
        .def("l_eq", &Target::l_eq, "params"_a,
             "equivalent integer-delay position T*f + C*tau/dt");

    py::class_<Scene>(m, "Scene")
        .def(py::init<>())
        .def_readwrite("targets", &Scene::targets)
        .def_readwrite("h0", &Scene::h0)
        .def_readwrite("N0", &Scene::N0);

    m.def("gen_scene", &gen_scene, "p"_a, "tau_max"_a, "f_max"_a, "rng"_a,
          "tau ~ U[0, tau_max], f ~ U[-f_max, f_max], h ~ CN(0, 1)");
    m.def("apply_channel",
          py::overload_cast<const CVec&, const Scene&, const ChirpParams&>(
              &apply_channel),
          "x"_a, "scene"_a, "params"_a,
          "noise-free received frame body after prefix removal");
    m.def("apply_channel",
          py::overload_cast<const DaftFrame&, const Scene&, const ChirpParams&>(
              &apply_channel),
          "frame"_a, "scene"_a, "params"_a);
    m.def("add_noise", &add_noise, "r"_a, "n0"_a, "rng"_a,
          "adds CN(0, N0) per complex sample");

    py::enum_<SensingMode>(m, "SensingMode")
        .value("WholeFrame", SensingMode::WholeFrame)
        .value("PilotOnly", SensingMode::PilotOnly);

    py::class_<GridSpec> grid(m, "GridSpec");
    py::enum_<GridSpec::Strategy>(grid, "Strategy")
        .value("TwoStage", GridSpec::Strategy::TwoStage)
        .value("FullFine", GridSpec::Strategy::FullFine);
    grid.def(py::init<>())
        .def_readwrite("l_max", &GridSpec::l_max)
        .def_readwrite("k_max", &GridSpec::k_max)
        .def_readwrite("d_tau", &GridSpec::d_tau)
        .def_readwrite("d_f", &GridSpec::d_f)
        .def_readwrite("strategy", &GridSpec::strategy)
        .def("validate", &GridSpec::validate);

    py::class_<TargetEstimate>(m, "TargetEstimate")
        .def(py::init<>())
        .def(py::init([](double tau, double f) {
                 return TargetEstimate{tau, f, 0.0};
             }),
             "tau"_a, "f"_a)
        .def_readwrite("tau", &TargetEstimate::tau)
        .def_readwrite("f", &TargetEstimate::f)
        .def_readwrite("metric", &TargetEstimate::metric);

    py::class_<SensingEstimate>(m, "SensingEstimate")
        .def_readonly("targets", &SensingEstimate::targets)
        .def_readonly("degraded", &SensingEstimate::degraded)
        .def_readonly("metric_evals", &SensingEstimate::metric_evals);

    m.def("estimate", &estimate, "y"_a, "frame"_a, "grid"_a, "p"_a, "params"_a,
          "mode"_a,
          "refined-grid matched-filter search for P delay/Doppler peaks");

    py::class_<PhysicalEstimate>(m, "PhysicalEstimate")
        .def_readonly("range_m", &PhysicalEstimate::range_m)
        .def_readonly("velocity_mps", &PhysicalEstimate::velocity_mps);

    m.def("to_range_velocity", &to_range_velocity, "est"_a, "f_c"_a,
          "monostatic conversion r = c*tau/2, v = c*f/(2*f_c)");

    py::class_<SicDiagnostics>(m, "SicDiagnostics")
        .def_readonly("si_before", &SicDiagnostics::si_before)
        .def_readonly("si_after", &SicDiagnostics::si_after)
        .def_readonly("data_before", &SicDiagnostics::data_before)
        .def_readonly("data_after", &SicDiagnostics::data_after)
        .def_readonly("desired_power", &SicDiagnostics::desired_power);

    py::class_<SicResult>(m, "SicResult")
        .def_readonly("y_p", &SicResult::y_p)
        .def_readonly("diag", &SicResult::diag);

    py::class_<SiReport>(m, "SiReport")
        .def_readonly("si_suppression_db", &SiReport::si_suppression_db)
        .def_readonly("data_suppression_db", &SiReport::data_suppression_db)
        .def_readonly("desired_power", &SiReport::desired_power);

    m.def("run_sic", &run_sic, "frame"_a, "scene"_a, "params"_a, "l_os"_a,
          "rng"_a = static_cast<RngStream*>(nullptr),
          "dechirp + tri-band filter front end reducing the scene to the "
          "pilot vector");
    m.def("si_report", &si_report, "diag"_a,
          "suppression figures in dB, clamped to +-150");

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("frame", &ExperimentConfig::frame)
        .def_readwrite("M", &ExperimentConfig::M)
        .def_readwrite("c1", &ExperimentConfig::c1)
        .def_readwrite("c2", &ExperimentConfig::c2)
        .def_readwrite("dt", &ExperimentConfig::dt)
        .def_readwrite("d_tau", &ExperimentConfig::d_tau)
        .def_readwrite("d_f", &ExperimentConfig::d_f)
        .def_readwrite("strategy", &ExperimentConfig::strategy)
        .def_readwrite("P", &ExperimentConfig::P)
        .def_readwrite("tau_max", &ExperimentConfig::tau_max)
        .def_readwrite("f_max", &ExperimentConfig::f_max)
        .def_readwrite("integer_shifts", &ExperimentConfig::integer_shifts)
        .def_readwrite("snr_db", &ExperimentConfig::snr_db)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("sic", &ExperimentConfig::sic)
        .def_readwrite("l_os", &ExperimentConfig::l_os)
        .def_readwrite("si_power_db", &ExperimentConfig::si_power_db)
        .def_readwrite("f_c", &ExperimentConfig::f_c)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def("chirp", &ExperimentConfig::chirp)
        .def("grid_spec", &ExperimentConfig::grid_spec)
        .def("effective_tau_max", &ExperimentConfig::effective_tau_max)
        .def("effective_f_max", &ExperimentConfig::effective_f_max)
        .def("validate", &ExperimentConfig::validate);

    py::class_<TargetError>(m, "TargetError")
        .def_readonly("range_m", &TargetError::range_m)
        .def_readonly("velocity_mps", &TargetError::velocity_mps)
        .def_readonly("delay_samples", &TargetError::delay_samples)
        .def_readonly("doppler_bins", &TargetError::doppler_bins);

    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("errors", &TrialResult::errors)
        .def_readonly("degraded", &TrialResult::degraded);

    py::class_<RmseRow>(m, "RmseRow")
        .def_readonly("snr_db", &RmseRow::snr_db)
        .def_readonly("range_rmse_m", &RmseRow::range_rmse_m)
        .def_readonly("velocity_rmse_mps", &RmseRow::velocity_rmse_mps)
        .def_readonly("trials", &RmseRow::trials)
        .def_readonly("mode", &RmseRow::mode)
        .def_readonly("overhead", &RmseRow::overhead)
        .def_readonly("degraded_trials", &RmseRow::degraded_trials);

    py::class_<RmseTable>(m, "RmseTable")
        .def_readonly("rows", &RmseTable::rows);

    m.def("match_to_truth", &match_to_truth, "est"_a, "truth"_a, "params"_a,
          "f_c"_a,
          "signed per-target errors under the best assignment (P <= 4)");
    m.def("run_trial", &run_trial, "config"_a, "snr_db"_a, "trial_index"_a,
          "one seeded trial: scene, channel, noise, estimate, match");
    m.def("run_sweep", &run_sweep, "config"_a,
          "trials x SNR grid, reduced in trial-index order",
          py::call_guard<py::gil_scoped_release>());
    m.def("throughput", &throughput, "config"_a,
          "|D_data| * modulation_bits / ((N + M) * dt) in bits/s");
    m.def("table1_config", &table1_config,
          "reference N=2048 configuration");
    m.def("desk_config", &desk_config,
          "fast N=1024 configuration for interactive sweeps");
    m.def("load_config", &load_config, "path"_a);
    m.def(
        "parse_config",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_config(in);
        },
        "text"_a, "parse the key=value config grammar from a string");
    m.def("rmse_csv", &rmse_csv, "table"_a);
    m.def("rmse_json", &rmse_json, "config"_a, "table"_a);
}
