// Copyright 2026 The ifm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ifm/cli.hpp"

#include "ifm/classical.hpp"
#include "ifm/dynamics.hpp"
#include "ifm/measures.hpp"
#include "ifm/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace ifm::cli {

namespace fs = std::filesystem;

namespace {

struct KeySpec {
    std::string_view key;
    std::string_view fallback;  // empty: required
};

const std::map<std::string, std::vector<KeySpec>, std::less<>>& experiment_keys() {
    static const std::map<std::string, std::vector<KeySpec>, std::less<>> table{
        {"classical-ev", {{"t1", "0.70710678118654752"}, {"t2", "0.70710678118654752"}}},
        {"optimize-bs", {{"t1", "0.70710678118654752"}}},
        {"resonator", {{"R", ""}}},
        {"coupled-mz", {{"Omega_R_tau", ""}, {"t2", "0.70710678118654752"}}},
        {"cavity-ifm",
         {{"gamma_a", ""},
          {"gamma_b", ""},
          {"gamma_c", "0"},
          {"t_max", "50"},
          {"dt", "0.001"},
          {"sample_every", "100"},
          {"atom_present", "true"}}},
        {"eraser", {}},
    };
    return table;
}

const std::vector<std::string_view>& known_keys() {
    static const std::vector<std::string_view> keys{"experiment", "Omega_R_tau", "gamma_a", "gamma_b",
                                                    "gamma_c",    "t_max",       "dt",      "sample_every",
                                                    "t1",         "t2",          "R",       "atom_present",
                                                    "output_path"};
    return keys;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + text + "'");
    }
    return value;
}

SummaryRow row(std::string name, double value, std::string note) {
    return {std::move(name), value, std::move(note)};
}

// --------------------------- experiments ------------------------------------

void run_classical_ev(const RunConfig& cfg, RunOutput& out) {
    const classical::TwoBSScheme scheme{cfg.number("t1"), cfg.number("t2")};
    try {
        scheme.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: t1/t2: ") + e.what());
    }
    const auto table = classical::enumerate_outcomes(scheme);
    const auto l = classical::likelihood(table);
    auto& rows = out.summary.rows;
    rows.push_back(row("p_abs_u", table.p_abs_u, "absorption probability given object in interaction arm"));
    rows.push_back(row("p_R_u", table.p_R_u, "P(R | object present)"));
    rows.push_back(row("p_T_u", table.p_T_u, "P(T | object present)"));
    rows.push_back(row("p_R_l", table.p_R_l, "P(R | object absent)"));
    rows.push_back(row("p_T_l", table.p_T_l, "P(T | object absent)"));
    rows.push_back(row("P_absorbed", 0.5 * table.p_abs_u, "joint probability, equal priors"));
    rows.push_back(row("P_U_R", 0.5 * table.p_R_u, "joint probability, equal priors"));
    rows.push_back(row("P_U_T", 0.5 * table.p_T_u, "joint probability, equal priors"));
    rows.push_back(row("P_L_R", 0.5 * table.p_R_l, "joint probability, equal priors"));
    rows.push_back(row("P_L_T", 0.5 * table.p_T_l, "joint probability, equal priors"));
    rows.push_back(row("L_m", l.L_m, "maximum-likelihood path estimate"));
    rows.push_back(row("A", l.A, "prior-weighted absorption"));
    rows.push_back(row("L_m_minus_A", l.L_m - l.A, "interaction-free figure of merit"));
}

void run_optimize_bs(const RunConfig& cfg, RunOutput& out) {
    const double t1 = cfg.number("t1");
    if (!(t1 >= 0.0 && t1 <= 1.0)) throw ConfigError("config: key 't1' must lie in [0, 1]");
    const auto best = classical::optimize_second_bs(t1, classical::Objective::likelihood);
    const auto best_free = classical::optimize_second_bs(t1, classical::Objective::likelihood_minus_absorption);
    const auto l = classical::likelihood(classical::enumerate_outcomes({t1, best.t2_star}));
    auto& rows = out.summary.rows;
    rows.push_back(row("t2_star", best.t2_star, "golden-section argmax of L_m over t2"));
    rows.push_back(row("L_m_star", best.value, "maximal likelihood"));
    rows.push_back(row("A", l.A, "absorption at t2_star"));
    rows.push_back(row("L_m_star_minus_A", best.value - l.A, "figure of merit at t2_star"));
    rows.push_back(row("t2_star_Lm_minus_A", best_free.t2_star, "golden-section argmax of L_m - A over t2"));
    rows.push_back(row("Lm_minus_A_star", best_free.value, "maximal L_m - A"));
}

void run_resonator(const RunConfig& cfg, RunOutput& out) {
    const double r = cfg.number("R");
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("config: key 'R' must lie in [0, 1]");
    const auto fig = classical::resonator_figures(r);
    auto& rows = out.summary.rows;
    rows.push_back(row("R", fig.R, "resonator power reflectance"));
    rows.push_back(row("L_m", fig.L_m, "opaque object: always identified"));
    rows.push_back(row("A", fig.A, "absorption 1 - R"));
    rows.push_back(row("L_m_minus_A", fig.L_m - fig.A, "equals R"));
}

StateVector mz_ket(const CompositeSpace& space, std::size_t atom_index, std::size_t up, std::size_t low) {
    return StateVector::basis(space, {atom_index, up, low});
}

void run_coupled_mz(const RunConfig& cfg, RunOutput& out) {
    const double t2 = cfg.number("t2");
    if (!(t2 >= 0.0 && t2 <= 1.0)) throw ConfigError("config: key 't2' must lie in [0, 1]");
    const CoupledMZ mz = build_coupled_mz({cfg.number("Omega_R_tau"), t2});
    const auto history = unitary_sequence_history(mz.initial, mz.stages);
    const StateVector& final_state = history.back();
    const CompositeSpace& space = final_state.space;

    // (-i|0,1,g,-> + i|1,0,-,g>)/sqrt2 and |1,0> ⊗ (|g,-> + i|-,g>)/sqrt2
    const double h = std::numbers::sqrt2 / 2.0;
    StateVector entangled(space, h * (Complex(0, -1) * mz_ket(space, atom::g_upper, 0, 1).amplitudes +
                                      Complex(0, 1) * mz_ket(space, atom::g_lower, 1, 0).amplitudes));
    StateVector product(space, h * (mz_ket(space, atom::g_upper, 1, 0).amplitudes +
                                    Complex(0, 1) * mz_ket(space, atom::g_lower, 1, 0).amplitudes));

    const DensityMatrix rho = DensityMatrix::pure(final_state);
    const MeasureRecord m = measure_state(rho);

    const auto after_split = std::find_if(mz.stages.begin(), mz.stages.end(),
                                          [](const UnitaryStage& s) { return s.name == "atom_splitter"; });
    const DensityMatrix split_state =
        DensityMatrix::pure(history[static_cast<std::size_t>(after_split - mz.stages.begin()) + 1]);
    const DensityMatrix at_split = partial_trace(split_state, {std::string(labels::atom)});
    const DensityMatrix at_final = partial_trace(rho, {std::string(labels::atom)});

    auto& rows = out.summary.rows;
    rows.push_back(row("V", m.V, "atomic fringe visibility"));
    rows.push_back(row("D", m.D, "distinguishability"));
    rows.push_back(row("D_m", m.D_m, "number-basis distinguishability"));
    rows.push_back(row("D2_plus_V2", m.D * m.D + m.V * m.V, "duality sum"));
    rows.push_back(row("L_opt", m.L_opt, "(1 + D)/2"));
    rows.push_back(row("L_m", m.L_m, "(1 + D_m)/2"));
    rows.push_back(row("fidelity_entangled_anchor", fidelity(final_state, entangled), "anchor for Omega_R_tau = pi"));
    rows.push_back(row("fidelity_product_anchor", fidelity(final_state, product), "anchor for Omega_R_tau = 2 pi"));
    rows.push_back(row("N_g_after_atom_splitter", at_split.matrix(atom::g_upper, atom::g_upper).real(), "QND check"));
    rows.push_back(row("N_g_final", at_final.matrix(atom::g_upper, atom::g_upper).real(), "QND check"));
    rows.push_back(row("p_lower_after_atom_splitter", at_split.matrix(atom::g_lower, atom::g_lower).real(), "QND check"));
    rows.push_back(row("p_lower_final", at_final.matrix(atom::g_lower, atom::g_lower).real(), "QND check"));
    rows.push_back(row("norm_final", final_state.norm(), "unitarity"));
}

void run_cavity_ifm(const RunConfig& cfg, RunOutput& out) {
    CavityIFMParams p;
    p.gamma_a = cfg.number("gamma_a");
    p.gamma_b = cfg.number("gamma_b");
    p.gamma_c = cfg.number("gamma_c");
    p.t_max = cfg.number("t_max");
    p.dt = cfg.number("dt");
    const double every = cfg.number("sample_every");
    if (!(every >= 1.0) || every != std::floor(every)) {
        throw ConfigError("config: key 'sample_every' must be a positive integer");
    }
    p.sample_every = static_cast<std::size_t>(every);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const LindbladModel model = build_cavity_ifm(p, cfg.flag("atom_present"));
    const Trajectory traj = evolve_master(model, model.initial, p.grid());
    const auto measures = measure_timeseries(traj);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double max_duality = 0.0, max_dm_excess = -1.0, min_eig = 1.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const MeasureRecord& m = measures[k];
        double gg = nan, coh = nan;
        if (detector_probability(traj.states[k], labels::detector_r) >= 1e-12) {
            const DensityMatrix cond = condition_on_detector(traj.states[k], labels::detector_r);
            gg = cond.matrix(atom::g_upper, atom::g_upper).real();
            coh = std::abs(cond.matrix(atom::g_upper, atom::g_lower));
        }
        out.timeseries.push_back({m.t, m.V, m.D, m.D_m, m.L_m, m.A, traj.record(k, "trace"),
                                  traj.record(k, "min_eig"), traj.record(k, "p_dR"), traj.record(k, "p_dT"),
                                  traj.record(k, "p_a"), traj.record(k, "p_b"), gg, coh});
        max_duality = std::max(max_duality, m.D * m.D + m.V * m.V);
        max_dm_excess = std::max(max_dm_excess, m.D_m - m.D);
        min_eig = std::min(min_eig, traj.record(k, "min_eig"));
    }

    const TimeseriesRow& last = out.timeseries.back();
    auto& rows = out.summary.rows;
    rows.push_back(row("final_t", last.t, "Omega_R t"));
    rows.push_back(row("final_V", last.V, "atomic fringe visibility"));
    rows.push_back(row("final_D", last.D, "distinguishability"));
    rows.push_back(row("final_D_m", last.D_m, "number-basis distinguishability"));
    rows.push_back(row("final_L_m", last.L_m, "(1 + D_m)/2"));
    rows.push_back(row("final_Dm2_plus_V2", last.D_m * last.D_m + last.V * last.V, "measured duality sum"));
    rows.push_back(row("final_A", last.A, "gamma_c times integrated excited population"));
    rows.push_back(row("final_p_dR", last.p_dR, "reflected-detector population"));
    rows.push_back(row("final_p_dT", last.p_dT, "transmitted-detector population"));
    rows.push_back(row("final_rho_gg_cond", last.rho_gg_cond, "atom in IFM path given a d_R click"));
    rows.push_back(row("final_coh_cond", last.coh_cond, "|rho_g-| given a d_R click"));
    rows.push_back(row("max_D2_plus_V2", max_duality, "duality bound check"));
    rows.push_back(row("max_Dm_minus_D", max_dm_excess, "D_m <= D check"));
    rows.push_back(row("min_eigenvalue", min_eig, "positivity check"));
}

void run_eraser(const RunConfig&, RunOutput& out) {
    const DensityMatrix marked = which_path_marked_state();
    const DensityMatrix rotated = eraser_rotate(marked);
    const CompositeSpace at_space({{std::string(labels::atom), atom::dim}});
    const double h = std::numbers::sqrt2 / 2.0;
    Vector even = Vector::Zero(atom::dim), odd = Vector::Zero(atom::dim);
    even(atom::g_upper) = h;
    even(atom::g_lower) = h;
    odd(atom::g_upper) = h;
    odd(atom::g_lower) = -h;

    const DensityMatrix cond_r = condition_on_detector(rotated, labels::detector_r);
    const DensityMatrix cond_t = condition_on_detector(rotated, labels::detector_t);
    auto cond_v = [](const DensityMatrix& at) { return 2.0 * std::abs(at.matrix(atom::g_upper, atom::g_lower)); };

    auto& rows = out.summary.rows;
    rows.push_back(row("V_before", visibility(marked), "which-path marked state"));
    rows.push_back(row("D_before", distinguishability(path_split(marked)), "which-path marked state"));
    rows.push_back(row("p_dR_rotated", detector_probability(rotated, labels::detector_r), "rotated detector"));
    rows.push_back(row("p_dT_rotated", detector_probability(rotated, labels::detector_t), "rotated detector"));
    rows.push_back(row("fidelity_even_given_dR", fidelity(cond_r, StateVector(at_space, even)), "(|g-> + |-g>)/sqrt2"));
    rows.push_back(row("fidelity_odd_given_dT", fidelity(cond_t, StateVector(at_space, odd)), "(|g-> - |-g>)/sqrt2"));
    rows.push_back(row("V_given_dR", cond_v(cond_r), "restored visibility"));
    rows.push_back(row("V_given_dT", cond_v(cond_t), "restored visibility"));
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

double RunConfig::number(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ConfigError("config: missing required key '" + key + "'");
    return parse_double(key, it->second);
}

bool RunConfig::flag(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ConfigError("config: missing required key '" + key + "'");
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "' expects true/false, got '" + v + "'");
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, std::string> raw;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) + " is not a 'key = value' pair");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto& known = known_keys();
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
        if (value.empty()) throw ConfigError("config: key '" + key + "' has no value");
        if (!raw.emplace(key, value).second) throw ConfigError("config: duplicate key '" + key + "'");
    }

    RunConfig cfg;
    const auto exp = raw.find("experiment");
    if (exp == raw.end()) throw ConfigError("config: missing required key 'experiment'");
    cfg.experiment = exp->second;
    const auto spec = experiment_keys().find(cfg.experiment);
    if (spec == experiment_keys().end()) {
        throw ConfigError("config: key 'experiment' has unsupported value '" + cfg.experiment + "'");
    }
    raw.erase(exp);

    if (const auto op = raw.find("output_path"); op != raw.end()) {
        cfg.output_path = op->second;
        raw.erase(op);
    } else {
        cfg.defaulted.emplace_back("output_path");
    }

    for (const auto& k : spec->second) {
        const std::string key(k.key);
        if (const auto it = raw.find(key); it != raw.end()) {
            cfg.params[key] = it->second;
            raw.erase(it);
        } else if (k.fallback.empty()) {
            throw ConfigError("config: missing required key '" + key + "'");
        } else {
            cfg.params[key] = std::string(k.fallback);
            cfg.defaulted.push_back(key);
        }
    }
    if (!raw.empty()) {
        throw ConfigError("config: key '" + raw.begin()->first + "' does not apply to experiment '" +
                          cfg.experiment + "'");
    }
    // Fail early on malformed values.
    for (const auto& [key, value] : cfg.params) {
        if (key == "atom_present") (void)cfg.flag(key);
        else (void)parse_double(key, value);
    }
    return cfg;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const RunConfig& config) {
    std::string canonical = "experiment=" + config.experiment + "\n";
    for (const auto& [key, value] : config.params) canonical += key + "=" + value + "\n";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
    return buf;
}

double SummaryTable::value(std::string_view name) const {
    for (const auto& r : rows) {
        if (r.name == name) return r.value;
    }
    throw std::out_of_range("SummaryTable: no row named '" + std::string(name) + "'");
}

RunOutput execute(const RunConfig& config) {
    RunOutput out;
    out.summary.config_hash = config_hash(config);
    const std::string& e = config.experiment;
    if (e == "classical-ev") run_classical_ev(config, out);
    else if (e == "optimize-bs") run_optimize_bs(config, out);
    else if (e == "resonator") run_resonator(config, out);
    else if (e == "coupled-mz") run_coupled_mz(config, out);
    else if (e == "cavity-ifm") run_cavity_ifm(config, out);
    else if (e == "eraser") run_eraser(config, out);
    else throw ConfigError("config: key 'experiment' has unsupported value '" + e + "'");
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (x == 0.0) x = 0.0;  // drop negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
    return out;
}

}  // namespace

void write_summary_csv(const SummaryTable& table, const fs::path& file) {
    auto out = open_out(file);
    out << "# config_hash=" << table.config_hash << '\n';
    for (const auto& r : table.rows) out << "# " << r.name << ": " << r.note << '\n';
    out << "name,value\n";
    for (const auto& r : table.rows) out << r.name << ',' << format_number(r.value) << '\n';
}

void write_timeseries_csv(const std::vector<TimeseriesRow>& rows, const fs::path& file) {
    auto out = open_out(file);
    out << kTimeseriesHeader << '\n';
    for (const auto& r : rows) {
        const double cols[] = {r.t,       r.V,     r.D,    r.D_m,  r.L_m,  r.A,           r.trace,
                               r.min_eig, r.p_dR,  r.p_dT, r.p_a,  r.p_b,  r.rho_gg_cond, r.coh_cond};
        for (std::size_t c = 0; c < std::size(cols); ++c) {
            if (c) out << ',';
            out << format_number(cols[c]);
        }
        out << '\n';
    }
}

void emit_plot_data(const std::vector<TimeseriesRow>& rows, const fs::path& dir) {
    if (rows.empty()) throw std::invalid_argument("emit_plot_data: empty timeseries");
    struct Curve {
        const char* file;
        double (*value)(const TimeseriesRow&);
    };
    const Curve curves[] = {
        {"fig3_V.dat", [](const TimeseriesRow& r) { return r.V; }},
        {"fig3_Lm.dat", [](const TimeseriesRow& r) { return r.L_m; }},
        {"fig3_duality.dat", [](const TimeseriesRow& r) { return r.D_m * r.D_m + r.V * r.V; }},
        {"fig4_rho_gg.dat", [](const TimeseriesRow& r) { return r.rho_gg_cond; }},
        {"fig4_coh.dat", [](const TimeseriesRow& r) { return r.coh_cond; }},
    };
    for (const auto& c : curves) {
        auto out = open_out(dir / c.file);
        for (const auto& r : rows) {
            const double v = c.value(r);
            if (std::isnan(v)) continue;  // conditioned state undefined before the first click
            out << format_number(r.t) << ' ' << format_number(v) << '\n';
        }
    }
}

fs::path resolve_output_dir(const RunConfig& config) {
    if (const char* env = std::getenv("IFM_OUTPUT_DIR"); env != nullptr && *env != '\0') return fs::path(env);
    return config.output_path;
}

namespace {

int run_into(const fs::path& config_path, const fs::path* forced_dir, std::ostream& log) {
    try {
        const RunConfig cfg = load_config(config_path);
        const fs::path dir = forced_dir ? *forced_dir : resolve_output_dir(cfg);
        log << "experiment = " << cfg.experiment << '\n';
        for (const auto& [key, value] : cfg.params) {
            const bool dflt = std::find(cfg.defaulted.begin(), cfg.defaulted.end(), key) != cfg.defaulted.end();
            log << key << " = " << value << (dflt ? "  (default)" : "") << '\n';
        }
        log << "output_path = " << dir.string() << '\n';

        const RunOutput result = execute(cfg);
        fs::create_directories(dir);
        if (!result.timeseries.empty()) {
            write_timeseries_csv(result.timeseries, dir / "timeseries.csv");
            emit_plot_data(result.timeseries, dir);
        }
        write_summary_csv(result.summary, dir / "summary.csv");
        for (const auto& r : result.summary.rows) log << r.name << " = " << format_number(r.value) << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalAbort& e) {
        log << "numerical abort: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int run(const fs::path& config_path, std::ostream& log) { return run_into(config_path, nullptr, log); }

int sweep(const fs::path& config_dir, std::ostream& log) {
    if (!fs::is_directory(config_dir)) {
        log << "error: '" << config_dir.string() << "' is not a directory\n";
        return kExitConfig;
    }
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(config_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cfg") configs.push_back(entry.path());
    }
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) {
        log << "error: no .cfg files in '" << config_dir.string() << "'\n";
        return kExitConfig;
    }
    int status = kExitOk;
    for (const auto& path : configs) {
        log << "== " << path.filename().string() << '\n';
        fs::path base;
        try {
            base = resolve_output_dir(load_config(path));
        } catch (const ConfigError& e) {
            log << "error: " << e.what() << '\n';
            status = std::max(status, kExitConfig);
            continue;
        }
        const fs::path dir = base / path.stem();
        status = std::max(status, run_into(path, &dir, log));
    }
    return status;
}

}  // namespace ifm::cli
