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

// cli.hpp — configuration parsing and experiment dispatch behind `ifm-lab`.
//
// Config files are flat `key = value` lines; `#` starts a comment.

#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ifm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string experiment;
    // Resolved parameters (defaults applied), keyed by config name.
    std::map<std::string, std::string> params;
    std::vector<std::string> defaulted;
    std::filesystem::path output_path{"."};

    double number(const std::string& key) const;
    bool flag(const std::string& key) const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// FNV-1a over the resolved `key=value` lines, hex encoded. output_path is
// excluded so relocating a run does not change its hash.
std::string config_hash(const RunConfig& config);

struct SummaryRow {
    std::string name;
    double value{0.0};
    std::string note;
};

struct SummaryTable {
    std::string config_hash;
    std::vector<SummaryRow> rows;

    double value(std::string_view name) const;
};

// One line of timeseries.csv.
struct TimeseriesRow {
    double t, V, D, D_m, L_m, A, trace, min_eig, p_dR, p_dT, p_a, p_b, rho_gg_cond, coh_cond;
};

inline constexpr std::string_view kTimeseriesHeader =
    "t,V,D,D_m,L_m,A,trace,min_eig,p_dR,p_dT,p_a,p_b,rho_gg_cond,coh_cond";

struct RunOutput {
    SummaryTable summary;
    std::vector<TimeseriesRow> timeseries;  // empty for static experiments
};

// Runs the experiment in memory; no files are touched.
RunOutput execute(const RunConfig& config);

// 12 significant digits, '.' decimal separator.
std::string format_number(double x);

void write_summary_csv(const SummaryTable& table, const std::filesystem::path& file);
void write_timeseries_csv(const std::vector<TimeseriesRow>& rows, const std::filesystem::path& file);
// fig3_V.dat, fig3_Lm.dat, fig3_duality.dat, fig4_rho_gg.dat, fig4_coh.dat.
// Throws std::invalid_argument and writes nothing when `rows` is empty.
void emit_plot_data(const std::vector<TimeseriesRow>& rows, const std::filesystem::path& dir);

// Output directory after the IFM_OUTPUT_DIR override.
std::filesystem::path resolve_output_dir(const RunConfig& config);

// `ifm-lab run <config>`; returns the process exit code.
int run(const std::filesystem::path& config_path, std::ostream& log);
// Runs every *.cfg in the directory (sorted) into <output>/<stem>/.
int sweep(const std::filesystem::path& config_dir, std::ostream& log);

}  // namespace ifm::cli
