// Copyright 2026 The pulseamb Authors
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

// pulseamb command-line front end.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "pulseamb/cli/commands.hpp"
#include "pulseamb/cli/selfcheck.hpp"
#include "pulseamb/pulseamb.hpp"

namespace {

namespace pc = pulseamb::cli;

enum Exit : int { ok = 0, usage = 1, parse = 2, io = 3, check = 4 };

struct Common {
    std::string scenario;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c, bool stochastic) {
    cmd->add_option("--scenario", c.scenario, "scenario JSON file")->required();
    cmd->add_option("--out", c.out, "output path prefix (overrides the scenario)");
    cmd->add_option("--threads", c.threads, "worker threads; results do not depend on it")
        ->check(CLI::Range(1u, 1024u));
    if (stochastic) {
        cmd->add_option("--seed", c.seed, "RNG seed (overrides the scenario)");
        cmd->add_option("--samples", c.samples, "Monte-Carlo samples per cell (overrides the scenario)")
            ->check(CLI::PositiveNumber);
    }
}

int run_selfcheck() {
    const auto results = pc::run_selfcheck();
    int failures = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " observed=" << pc::format_number(r.observed)
                  << " expected=" << pc::format_number(r.expected) << " tol=" << pc::format_number(r.tolerance)
                  << '\n';
        failures += r.pass ? 0 : 1;
    }
    std::cout << (failures ? "selfcheck: " + std::to_string(failures) + " failed\n" : "selfcheck: all passed\n");
    return failures ? check : ok;
}

int run_command(const std::string& name, const Common& c) {
    const auto start = std::chrono::steady_clock::now();
    auto s = pc::load_scenario(c.scenario);
    if (c.out) s.output = *c.out;
    if (c.seed || c.samples) {
        if (!s.monte_carlo) s.monte_carlo.emplace();
        if (c.seed) s.monte_carlo->seed = *c.seed;
        if (c.samples) s.monte_carlo->samples = *c.samples;
    }

    std::vector<pc::Table> tables;
    if (name == "ambiguity") tables = pc::cmd_ambiguity(s);
    else if (name == "capacity-systematic") tables = pc::cmd_capacity_systematic(s);
    else if (name == "capacity-stochastic") tables = pc::cmd_capacity_stochastic(s, c.threads);
    else tables = pc::cmd_homodyne(s);

    pc::RunManifest m;
    m.tool_version = std::string(pulseamb::version);
    m.command = name;
    m.scenario_hash = pc::scenario_hash(s);
    if (s.monte_carlo) m.seed = s.monte_carlo->seed;
    m.threads = c.threads;
    m.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& path : pc::write_outputs(s.output, tables, m)) std::cout << path << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pulse-shape ambiguity functions and channel capacity bounds"};
    app.set_version_flag("--version", std::string(pulseamb::version));
    app.require_subcommand(1);

    Common common;
    const char* names[] = {"ambiguity", "capacity-systematic", "capacity-stochastic", "homodyne"};
    const char* help[] = {"Woodward ambiguity grids per profile and pairwise differences",
                          "PLOB bound under a constant Doppler shift",
                          "Monte-Carlo capacity grids, ratio matrices and slice",
                          "Homodyne statistics under mode mismatch vs the equivalent channel"};
    std::vector<CLI::App*> cmds;
    for (int i = 0; i < 4; ++i) {
        cmds.push_back(app.add_subcommand(names[i], help[i]));
        add_common(cmds.back(), common, i == 2);
    }
    auto* selfcheck = app.add_subcommand("selfcheck", "Closed forms vs quadrature, asymptotics, normalization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    pulseamb::set_warning_handler([](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; });
    try {
        if (selfcheck->parsed()) return run_selfcheck();
        for (int i = 0; i < 4; ++i)
            if (cmds[i]->parsed()) return run_command(names[i], common);
    } catch (const pc::scenario_error& e) {
        std::cerr << "error: " << common.scenario << ": " << e.what() << '\n';
        return parse;
    } catch (const pc::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    } catch (const pulseamb::invalid_parameter& e) {
        std::cerr << "error: " << common.scenario << ": " << e.what() << '\n';
        return parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
