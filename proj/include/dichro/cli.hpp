#pragma once

/// Command implementations behind the command-line tool.  Each command
/// reads a scenario file, runs the requested computation, and writes a
/// deterministic report.json (plus trajectory.csv for simulate) into the
/// output directory.
///
/// Exit codes: 0 on success; 2 on numeric failure (e.g. a loop that does
/// not close within tolerance), with a machine-readable error object in
/// report.json; schema and I/O problems throw and the tool exits 1.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "phases.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "sim.hpp"
#include "wilson.hpp"

namespace dichro {

struct CliConfig {
    std::string subcommand;
    std::string scenario_path;
    std::string output_dir = ".";
    std::optional<int> wilson_steps;
    std::optional<int> trace_samples;
    std::optional<double> tolerance;
    bool complete_closure = false;
};

namespace detail {

inline Scenario load_scenario(const CliConfig& cfg) {
    Scenario s = parse_scenario_file(cfg.scenario_path);
    if (cfg.wilson_steps) s.options.wilson_steps = *cfg.wilson_steps;
    if (cfg.trace_samples) s.options.trace_samples = *cfg.trace_samples;
    if (cfg.tolerance) s.options.tolerance = *cfg.tolerance;
    if (cfg.complete_closure) s.options.complete_closure = true;
    return s;
}

inline std::string report_path(const CliConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    return (std::filesystem::path(cfg.output_dir) / "report.json").string();
}

inline int fail_numeric(const CliConfig& cfg, const std::string& code, const std::string& message,
                        double residual) {
    JsonObject err;
    err["code"] = code;
    err["message"] = message;
    err["residual_rapidity"] = residual;
    JsonObject doc;
    doc["error"] = err;
    doc["subcommand"] = cfg.subcommand;
    write_file(report_path(cfg), json_to_string(JsonObject{doc}));
    std::cerr << "error: " << message << "\n";
    return 2;
}

inline std::vector<AbsorberSpec> absorbers_only(const std::vector<Element>& els,
                                                const std::string& what) {
    std::vector<AbsorberSpec> out;
    for (const Element& e : els) {
        if (!std::holds_alternative<AbsorberSpec>(e))
            throw std::runtime_error(what + ": scenario must contain only absorbers");
        out.push_back(std::get<AbsorberSpec>(e));
    }
    return out;
}

inline void put_rotation(JsonObject& doc, const RotationResult& r) {
    doc["rotation_axis"] = json_vec3(r.axis.s);
    doc["rotation_angle_deg"] = rad_to_deg(r.angle);
}

inline void put_phase_report(JsonObject& doc, const PhaseReport& rep, double total_alpha0) {
    put_rotation(doc, rep.rotation);
    doc["degenerate"] = rep.degenerate;
    doc["omega_sr"] = rep.omega;
    doc["phase_n_deg"] = rad_to_deg(rep.phase_n);
    doc["phase_s_deg"] = rad_to_deg(rep.phase_s);
    if (!rep.degenerate) {
        doc["pole_n"] = json_vec3(rep.pole_n.s);
        doc["pole_s"] = json_vec3(rep.pole_s.s);
    }
    // Insertion loss of the train: 10 log10 of the overall intensity
    // factor e^{-2 sum(alpha0)}; the state-dependent relative part is
    // reported per state in the trajectory records instead.
    doc["insertion_loss_db"] = 10.0 * std::log10(std::exp(-2.0 * total_alpha0));
}

}  // namespace detail

inline int cmd_simulate(const CliConfig& cfg) {
    Scenario s = detail::load_scenario(cfg);
    if (s.inputs.empty())
        throw std::runtime_error(cfg.scenario_path + ".inputs: simulate needs at least one input");
    ScenarioResult res = run_scenario(s);

    std::filesystem::create_directories(cfg.output_dir);
    std::string csv_path = (std::filesystem::path(cfg.output_dir) / "trajectory.csv").string();
    write_file(csv_path, trajectory_csv(res.records));

    JsonObject doc;
    doc["subcommand"] = "simulate";
    doc["closed"] = res.closed;
    doc["residual_rapidity"] = res.residual;
    detail::put_rotation(doc, res.rotation);
    doc["insertion_loss_db"] = 10.0 * std::log10(std::exp(-2.0 * res.total_alpha0));
    doc["num_elements"] = static_cast<int>(res.elements.size());
    doc["num_inputs"] = static_cast<int>(s.inputs.size());
    doc["num_records"] = static_cast<int>(res.records.size());
    doc["trajectory_file"] = "trajectory.csv";
    if (res.phase) {
        JsonObject ph;
        detail::put_phase_report(ph, *res.phase, res.total_alpha0);
        doc["phase"] = ph;
    }
    write_file(detail::report_path(cfg), json_to_string(doc));
    return 0;
}

inline int cmd_closure(const CliConfig& cfg) {
    Scenario s = detail::load_scenario(cfg);
    std::vector<AbsorberSpec> els = detail::absorbers_only(s.elements, "closure");
    if (els.size() != 2)
        throw std::runtime_error(cfg.scenario_path +
                                 ".elements: closure needs exactly two absorbers");
    ClosedSequence seq = close_sequence(els[0], els[1], s.options.tolerance);
    const AbsorberSpec& third = seq.elements.back();

    JsonObject doc;
    doc["subcommand"] = "closure";
    doc["closing_axis"] = json_vec3(third.axis.s);
    doc["closing_alpha"] = third.alpha;
    detail::put_phase_report(doc, thomas_report(seq), seq.total_alpha0());
    write_file(detail::report_path(cfg), json_to_string(doc));
    return 0;
}

inline int cmd_wilson(const CliConfig& cfg) {
    Scenario s = detail::load_scenario(cfg);
    std::vector<AbsorberSpec> els = detail::absorbers_only(s.elements, "wilson");
    if (s.options.complete_closure) els = complete_sequence(els);

    LorentzMatrix prod = LorentzMatrix::identity();
    for (const AbsorberSpec& a : els) prod = lorentz_of_jones(absorber_matrix(a)) * prod;
    if (!is_closed(prod, FourVelocity::rest(), s.options.tolerance))
        return detail::fail_numeric(cfg, "not_closed",
                                    "element train does not close; rerun with --close",
                                    residual_rapidity(prod));

    // reversed traversal: holonomy equals the state rotation of the train
    HyperbolicPolyline loop = reversed(velocity_loop(els));
    RotationResult integrated = wilson_loop(loop, s.options.wilson_steps);
    RotationResult exact = exact_loop_rotation(loop, s.options.tolerance);

    JsonObject doc;
    doc["subcommand"] = "wilson";
    doc["wilson_steps"] = s.options.wilson_steps;
    doc["wilson_axis"] = json_vec3(integrated.axis.s);
    doc["wilson_angle_deg"] = rad_to_deg(integrated.angle);
    doc["oracle_axis"] = json_vec3(exact.axis.s);
    doc["oracle_angle_deg"] = rad_to_deg(exact.angle);
    doc["angle_difference_deg"] = rad_to_deg(std::abs(integrated.angle - exact.angle));
    write_file(detail::report_path(cfg), json_to_string(doc));
    return 0;
}

inline int cmd_phase(const CliConfig& cfg) {
    Scenario s = detail::load_scenario(cfg);
    std::vector<AbsorberSpec> els = detail::absorbers_only(s.elements, "phase");
    if (s.options.complete_closure) els = complete_sequence(els);

    std::vector<AbsorberSpec> check = els;
    LorentzMatrix prod = LorentzMatrix::identity();
    for (const AbsorberSpec& a : check) prod = lorentz_of_jones(absorber_matrix(a)) * prod;
    if (!is_closed(prod, FourVelocity::rest(), s.options.tolerance))
        return detail::fail_numeric(cfg, "not_closed",
                                    "element train does not close; rerun with --close",
                                    residual_rapidity(prod));

    ClosedSequence seq = ClosedSequence::make(els, s.options.tolerance);
    JsonObject doc;
    doc["subcommand"] = "phase";
    detail::put_phase_report(doc, thomas_report(seq), seq.total_alpha0());
    write_file(detail::report_path(cfg), json_to_string(doc));
    return 0;
}

inline int run_cli(const CliConfig& cfg) {
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg);
    if (cfg.subcommand == "closure") return cmd_closure(cfg);
    if (cfg.subcommand == "wilson") return cmd_wilson(cfg);
    if (cfg.subcommand == "phase") return cmd_phase(cfg);
    throw std::runtime_error("unknown subcommand: " + cfg.subcommand);
}

}  // namespace dichro
