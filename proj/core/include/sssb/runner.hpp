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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sssb/statmech.hpp"

namespace sssb {

/// Raised by compare() when two CSV files do not share the row schema.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& scenario_names();

struct Scenario {
    std::string name;
    std::vector<std::size_t> lengths;  // --L; a list for 1D sweeps and pc-scan
    std::size_t lx = 0;                // --Lx / --Ly for 2D scenarios; 0 means default
    std::size_t ly = 0;
    std::vector<double> p_grid;
    std::vector<double> theta_grid;    // alternative to p_grid
    std::vector<std::size_t> distances;
    std::vector<std::string> observables;  // empty: every observable of the scenario
    std::string group = "z2";          // groups scenario only
    std::vector<double> couplings;     // pc-scan grid in K = 2 beta; empty: default grid
    std::uint64_t seed = 7;
    std::size_t threads = 1;
    std::size_t sweeps = 100000;
    std::size_t thermalization = 10000;
    std::string out;                   // CSV path; the JSON sidecar is out + ".json"
};

/// Checks names, sizes and grids against the module budgets; throws PreconditionError.
void validate(const Scenario& s);
/// Observables a scenario can emit.
std::vector<std::string> scenario_observables(const std::string& name);

struct ResultRow {
    std::string scenario;
    std::string label;  // lattice or group tag
    std::size_t lx = 0;
    std::size_t ly = 0;
    std::optional<ParameterMap> params;
    std::optional<std::size_t> r;
    std::string observable;
    double value = 0.0;
    std::optional<double> error;
    std::optional<double> oracle;
    std::optional<double> tolerance;

    std::optional<double> abs_delta() const;
    /// True unless an oracle and a tolerance are present and |delta| exceeds it.
    bool passes() const;
};

struct RunReport {
    std::vector<ResultRow> rows;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Rows come back in canonical grid order regardless of `threads`.
RunReport run(const Scenario& s);

inline constexpr const char* kCsvHeader =
    "scenario,label,lx,ly,p,theta,beta,r,observable,value,error,oracle,abs_delta,tolerance";

/// CSV without the timestamp comment line; byte-identical for identical inputs.
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const Scenario& s, const std::vector<ResultRow>& rows);
/// Writes `# generated <UTC time>` followed by to_csv, and the JSON sidecar.
void write_outputs(const Scenario& s, const RunReport& report);

/// Shortest round-trip decimal; "inf" for infinity.
std::string format_number(double v);

struct DiffEntry {
    std::size_t line = 0;  // 1-based data row
    std::string column;
    std::string expected;
    std::string actual;
    double delta = 0.0;
};

struct DiffReport {
    std::size_t rows_compared = 0;
    std::vector<DiffEntry> entries;
    bool ok() const { return entries.empty(); }
};

/// Numeric columns must agree within `tolerance`, text columns exactly.
/// Lines starting with '#' are ignored.
DiffReport compare_csv(const std::string& expected, const std::string& actual, double tolerance = 1e-10);
DiffReport compare(const std::string& fixture_path, const std::string& run_output_path, double tolerance = 1e-10);

/// Sites (a, a + r) centred on an open chain of length L.
std::pair<std::size_t, std::size_t> centred_pair(std::size_t length, std::size_t r);

}  // namespace sssb
