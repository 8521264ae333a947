// Copyright 2026 The sssb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sssb/runner.hpp"

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item = text.substr(start, end - start);
        if (item.empty()) throw sssb::PreconditionError("empty entry in list '" + text + "'");
        std::size_t used = 0;
        if constexpr (std::is_floating_point_v<T>) {
            out.push_back(std::stod(item, &used));
        } else {
            if (item.front() == '-') throw sssb::PreconditionError("negative entry in list '" + text + "'");
            out.push_back(static_cast<T>(std::stoull(item, &used)));
        }
        if (used != item.size()) throw sssb::PreconditionError("malformed entry '" + item + "'");
        start = end + 1;
    }
    return out;
}

std::vector<std::string> parse_names(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

void print_report(const sssb::RunReport& report, bool quiet) {
    if (!quiet) std::cout << sssb::to_csv(report.rows);
    for (const std::string& f : report.failures) std::cerr << "invariant failure: " << f << '\n';
    std::cerr << report.rows.size() << " rows, " << report.failures.size() << " invariant failures\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong-to-weak symmetry breaking scenarios"};
    app.require_subcommand(1);

    sssb::Scenario sc;
    std::string l_list, p_list, theta_list, r_list, obs_list, k_list;
    std::string seed_flag, threads_flag;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "Evaluate a scenario and write CSV + JSON");
    run->add_option("--scenario", sc.name, "Scenario name")
        ->required()
        ->check(CLI::IsMember(sssb::scenario_names()));
    run->add_option("--L", l_list, "Chain length(s), comma separated; square side for 2D scenarios");
    run->add_option("--Lx", sc.lx, "Lattice width");
    run->add_option("--Ly", sc.ly, "Lattice height");
    run->add_option("--p", p_list, "Error rate grid, comma separated");
    run->add_option("--theta", theta_list, "Gate angle grid (alternative to --p)");
    run->add_option("--r", r_list, "Distances, comma separated");
    run->add_option("--observables", obs_list, "Subset of observables, comma separated");
    run->add_option("--group", sc.group, "Group representation for the groups scenario");
    run->add_option("--K", k_list, "Coupling grid for pc-scan");
    run->add_option("--sweeps", sc.sweeps, "Monte Carlo sweeps per chain");
    run->add_option("--thermalization", sc.thermalization, "Monte Carlo thermalization sweeps");
    run->add_option("--seed", seed_flag, "RNG seed (overrides SSSB_SEED)");
    run->add_option("--threads", threads_flag, "Worker threads (overrides SSSB_THREADS)");
    run->add_option("--out", sc.out, "CSV output path; JSON goes to <out>.json");
    run->add_flag("--quiet", quiet, "Do not echo rows to stdout");

    std::string fixture, actual;
    double tolerance = 1e-10;
    auto* cmp = app.add_subcommand("compare", "Diff a run output against a golden CSV");
    cmp->add_option("--fixture", fixture, "Golden CSV")->required();
    cmp->add_option("--out", actual, "Run output CSV")->required();
    cmp->add_option("--tolerance", tolerance, "Absolute tolerance for numeric columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            if (!l_list.empty()) sc.lengths = parse_list<std::size_t>(l_list);
            if (!p_list.empty()) sc.p_grid = parse_list<double>(p_list);
            if (!theta_list.empty()) sc.theta_grid = parse_list<double>(theta_list);
            if (!r_list.empty()) sc.distances = parse_list<std::size_t>(r_list);
            if (!obs_list.empty()) sc.observables = parse_names(obs_list);
            if (!k_list.empty()) sc.couplings = parse_list<double>(k_list);
            sc.seed = parse_list<std::uint64_t>(env_or("SSSB_SEED", "7")).at(0);
            if (!seed_flag.empty()) sc.seed = parse_list<std::uint64_t>(seed_flag).at(0);
            sc.threads = parse_list<std::size_t>(env_or("SSSB_THREADS", "1")).at(0);
            if (!threads_flag.empty()) sc.threads = parse_list<std::size_t>(threads_flag).at(0);
            const sssb::RunReport report = sssb::run(sc);
            print_report(report, quiet);
            return report.ok() ? 0 : 1;
        }
        const sssb::DiffReport diff = sssb::compare(fixture, actual, tolerance);
        for (const auto& d : diff.entries) {
            std::cout << "row " << d.line << " column " << d.column << ": expected " << d.expected << ", got "
                      << d.actual << '\n';
        }
        std::cerr << diff.rows_compared << " rows compared, " << diff.entries.size() << " differences\n";
        return diff.ok() ? 0 : 1;
    } catch (const sssb::PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const sssb::SchemaError& e) {
        std::cerr << "schema mismatch: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
