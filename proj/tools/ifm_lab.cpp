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

// ifm-lab — run interaction-free measurement experiments from config files.

#include "ifm/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"ifm-lab: interaction-free measurement simulations"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run one experiment config");
    run->add_option("config", config_path, "Path to a key = value config file")->required();

    std::string config_dir;
    auto* sweep = app.add_subcommand("sweep", "Run every *.cfg in a directory");
    sweep->add_option("config-dir", config_dir, "Directory of config files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ifm::cli::kExitConfig;
    }

    if (*run) return ifm::cli::run(config_path, std::cout);
    return ifm::cli::sweep(config_dir, std::cout);
}
