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

#include "sssb/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "parallel.hpp"
#include "sssb/channels.hpp"
#include "sssb/groups.hpp"
#include "sssb/observables.hpp"
#include "sssb/purify.hpp"

namespace sssb {

namespace {

constexpr std::size_t kDenseDensityBudget = 10;
constexpr double kDenseTol = 1e-10;
constexpr double kOracleTol1d = 1e-9;
constexpr double kOracleTol2d = 1e-8;
constexpr double kPcTol = 0.005;

using Rows = std::vector<ResultRow>;

struct Ctx {
    const Scenario& s;
    std::string label;
    std::size_t lx = 0, ly = 0;
    std::optional<ParameterMap> pm;

    ResultRow row(std::string obs, double value, std::optional<std::size_t> r = std::nullopt) const {
        ResultRow out;
        out.scenario = s.name;
        out.label = label;
        out.lx = lx;
        out.ly = ly;
        out.params = pm;
        out.r = r;
        out.observable = std::move(obs);
        out.value = value;
        return out;
    }
    ResultRow checked(std::string obs, double value, double oracle, double tolerance,
                      std::optional<std::size_t> r = std::nullopt) const {
        ResultRow out = row(std::move(obs), value, r);
        out.oracle = oracle;
        out.tolerance = tolerance;
        return out;
    }
};

std::vector<ParameterMap> parameter_grid(const Scenario& s) {
    std::vector<ParameterMap> out;
    if (!s.theta_grid.empty()) {
        for (double t : s.theta_grid) out.push_back(param_from_theta(t));
    } else if (!s.p_grid.empty()) {
        for (double p : s.p_grid) out.push_back(param_from_p(p));
    } else {
        out.push_back(param_from_p(0.5));
    }
    return out;
}

bool is_half(const ParameterMap& pm) { return pm.beta.is_infinite(); }

std::size_t default_length(const std::string& name) {
    if (name == "groups") return 4;
    if (name == "gapless-1d") return 8;
    return 8;
}

std::pair<std::size_t, std::size_t> plane_size(const Scenario& s) {
    std::size_t def = (s.name == "oneform-2d" || s.name == "toric-dephase" || s.name == "toric-fermion") ? 2 : 3;
    if (!s.lengths.empty()) def = s.lengths.front();
    return {s.lx ? s.lx : def, s.ly ? s.ly : def};
}

std::vector<std::size_t> lengths_of(const Scenario& s) {
    if (!s.lengths.empty()) return s.lengths;
    if (s.name == "pc-scan") return {8, 16, 32};
    return {default_length(s.name)};
}

std::vector<std::size_t> distances_for(const Scenario& s, std::size_t limit) {
    if (!s.distances.empty()) return s.distances;
    std::vector<std::size_t> out;
    for (std::size_t r = 1; r < limit; ++r) out.push_back(r);
    return out;
}

std::vector<double> default_couplings() {
    std::vector<double> out;
    for (int i = 0; i <= 12; ++i) out.push_back(0.41 + 0.005 * i);
    return out;
}

DensityMatrix plus_density(std::size_t n) { return DensityMatrix::from_pure(StateVector::plus_state(n)); }

// ---------------------------------------------------------------------------
// Scenario bodies

Rows run_sssb_1d(const Ctx& c, std::size_t length) {
    const ParameterMap& pm = *c.pm;
    const Lattice lat = Lattice::chain(length, Boundary::Open);
    const DensityMatrix rho = bond_dephase_1d(lat, pm.p).apply(plus_density(length));
    const StateVector trivial = StateVector::plus_state(length);
    Rows rows;
    rows.push_back(c.checked("trace", rho.trace().real(), 1.0, kDenseTol));
    for (std::size_t r : distances_for(c.s, length)) {
        const ChargedPair pair = ChargedPair::zz(length, 0, r);
        rows.push_back(c.checked("renyi2", renyi2_correlator(rho, pair),
                                 ising1d_corr(pm.renyi2_coupling(), r, length), kOracleTol1d, r));
        rows.push_back(c.checked("conventional", conventional_correlator(rho, pair), 0.0, kDenseTol, r));
        rows.push_back(c.checked("typeII", typeII_strange_correlator(rho, trivial, pair),
                                 ising1d_corr(pm.typeII_coupling(), r, length), kOracleTol1d, r));
        rows.push_back(c.row("fidelity", fidelity_correlator(rho, pair), r));
    }
    return rows;
}

Rows run_sssb_2d(const Ctx& c) {
    const ParameterMap& pm = *c.pm;
    const Lattice lat = Lattice::square(c.lx, c.ly, Boundary::Periodic);
    const std::size_t n = lat.n_qubits();
    const DensityMatrix rho = bond_dephase_2d(lat, pm.p).apply(plus_density(n));
    const StateVector trivial = StateVector::plus_state(n);
    Rows rows;
    rows.push_back(c.checked("trace", rho.trace().real(), 1.0, kDenseTol));
    for (std::size_t r : distances_for(c.s, c.lx)) {
        const ChargedPair pair = ChargedPair::zz(n, lat.vertex(0, 0), lat.vertex(r, 0));
        rows.push_back(c.checked("renyi2", renyi2_correlator(rho, pair),
                                 ising2d_tm_corr(pm.renyi2_coupling(), c.lx, c.ly, r), kOracleTol2d, r));
        rows.push_back(c.checked("conventional", conventional_correlator(rho, pair), 0.0, kDenseTol, r));
        rows.push_back(c.checked("typeII", typeII_strange_correlator(rho, trivial, pair),
                                 ising2d_tm_corr(pm.typeII_coupling(), c.lx, c.ly, r), kOracleTol2d, r));
        rows.push_back(c.row("fidelity", fidelity_correlator(rho, pair), r));
    }
    return rows;
}

// Loop-type order parameters have exact values at p = 1/2 (1) and p = 0 (0).
void push_loop_order(const Ctx& c, Rows& rows, const DensityMatrix& rho, const PauliString& o, std::size_t r) {
    const double v = renyi2_order_param(rho, o);
    if (is_half(*c.pm)) {
        rows.push_back(c.checked("renyi2", v, 1.0, kDenseTol, r));
    } else if (c.pm->p == 0.0) {
        rows.push_back(c.checked("renyi2", v, 0.0, kDenseTol, r));
    } else {
        rows.push_back(c.row("renyi2", v, r));
    }
    rows.push_back(c.checked("conventional", expectation(rho, o).real(), 0.0, kDenseTol, r));
}

Rows run_oneform(const Ctx& c) {
    const Lattice lat = Lattice::square(c.lx, c.ly, Boundary::Periodic, Layout::LinkSystem);
    const std::size_t n = lat.n_qubits();
    const DensityMatrix rho = star_channel(lat, c.pm->p).apply(DensityMatrix::from_pure(StateVector::basis(n, 0)));
    Rows rows;
    rows.push_back(c.checked("trace", rho.trace().real(), 1.0, kDenseTol));
    for (std::size_t r : distances_for(c.s, c.lx)) {
        push_loop_order(c, rows, rho, wilson_line(lat, 0) * wilson_line(lat, r), r);
    }
    return rows;
}

Rows run_subsystem(const Ctx& c) {
    const Lattice lat = Lattice::square(c.lx, c.ly, Boundary::Periodic);
    const std::size_t n = lat.n_qubits();
    const DensityMatrix rho = plaquette_channel(lat, c.pm->p).apply(plus_density(n));
    Rows rows;
    rows.push_back(c.checked("trace", rho.trace().real(), 1.0, kDenseTol));
    for (std::size_t r : distances_for(c.s, std::min(c.lx, c.ly))) {
        const std::vector<std::size_t> corners{lat.vertex(0, 0), lat.vertex(r, 0), lat.vertex(0, r), lat.vertex(r, r)};
        push_loop_order(c, rows, rho, pauli_on(n, corners, 'Z'), r);
    }
    return rows;
}

Rows run_toric(const Ctx& c, bool fermion) {
    const Lattice lat = Lattice::square(c.lx, c.ly, Boundary::Periodic, Layout::LinkSystem);
    const std::size_t n = lat.n_qubits();
    const ChannelSequence ch = fermion ? toric_fermion_channel(lat, c.pm->p) : toric_dephase(lat, c.pm->p);
    const DensityMatrix rho = ch.apply(DensityMatrix::from_pure(build_toric_code(c.lx, c.ly)));
    Rows rows;
    rows.push_back(c.checked("trace", rho.trace().real(), 1.0, kDenseTol));
    for (std::size_t r : distances_for(c.s, c.lx)) {
        PauliString o(n);
        for (std::size_t x = 0; x < r; ++x) {
            o *= fermion ? fermion_hop(lat, lat.x_link(x, 0))
                         : PauliString::single(n, lat.system_qubit(lat.x_link(x, 0)), 'Z');
        }
        push_loop_order(c, rows, rho, o, r);
    }
    if (fermion) {
        const auto strong = [&](const PauliString& loop) {
            return is_strong_symmetric_channel(ch, SymmetryOp::pauli(loop, SymmetrySupport::Loop)) ? 1.0 : 0.0;
        };
        rows.push_back(c.checked("strong_f_loop_h", strong(fermion_loop_horizontal(lat, 0)), 1.0, 0.0));
        rows.push_back(c.checked("strong_f_loop_v", strong(fermion_loop_vertical(lat, 0)), 1.0, 0.0));
    }
    return rows;
}

Rows run_groups(const Ctx& c, std::size_t length) {
    const LocalRep rep = rep_by_name(c.s.group);
    const OrderParamMultiplet mult = default_multiplet(rep);
    const auto n_i = static_cast<double>(identity_sector_count(rep, length));
    Rows rows;
    rows.push_back(c.checked("sectors", n_i, static_cast<double>(dense_projector_rank(rep, length)), 0.0));
    const CMatrix rho = build_sssb_state(rep, length);
    const double pur = (rho * rho).trace().real();
    rows.push_back(c.checked("purity", pur, 1.0 / n_i, 1e-12));
    const auto q = static_cast<double>(scalar_subgroup(rep).quotient_order());
    rows.push_back(c.row("purity_ratio", pur * static_cast<double>(rho.rows()) / q));
    const double formula = multiplet_renyi2_trace_formula(rep, mult, length);
    for (std::size_t r : distances_for(c.s, length)) {
        const MultipletCorrelators mc = multiplet_correlators(rep, mult, length, 0, r);
        rows.push_back(c.checked("conventional", std::abs(mc.conventional), 0.0, 1e-12, r));
        rows.push_back(c.checked("renyi2", mc.renyi2, formula, kDenseTol, r));
    }
    rows.push_back(c.checked("single_renyi2", multiplet_single_renyi2(rep, mult, length, 0), 0.0, kDenseTol));
    return rows;
}

Rows run_gapless(const Ctx& c, std::size_t length) {
    const GaplessResult g = build_gapless_spt(length);
    const DensityMatrix rho = g.psi.system_density();
    Rows rows;
    rows.push_back(c.row("energy", g.energy));
    rows.push_back(c.row("product_energy", gapless_product_energy(length)));
    rows.push_back(c.checked("residual", g.residual, 0.0, 1e-8));
    std::vector<double> xs, ys;
    for (std::size_t r : distances_for(c.s, length)) {
        auto [a, b] = centred_pair(length, r);
        const double v = renyi2_correlator(rho, ChargedPair::zz(length, a, b));
        rows.push_back(c.row("renyi2", v, r));
        if (r >= 2 && r <= 6) {
            xs.push_back(static_cast<double>(r));
            ys.push_back(v);
        }
    }
    if (xs.size() >= 2) rows.push_back(c.row("renyi2_exponent", fit_decay_exponent(xs, ys)));
    return rows;
}

Rows run_pc_scan(const Scenario& s) {
    const std::vector<std::size_t> lengths = lengths_of(s);
    const std::vector<double> ks = s.couplings.empty() ? default_couplings() : s.couplings;
    McOptions opts;
    opts.seed = s.seed;
    opts.sweeps = s.sweeps;
    opts.thermalization = s.thermalization;
    const BinderScan scan = binder_scan(lengths, ks, opts, s.threads);

    Rows rows;
    Ctx c{s, "torus", 0, 0, std::nullopt};
    for (const BinderCurve& curve : scan.curves) {
        c.lx = c.ly = curve.length;
        for (std::size_t j = 0; j < ks.size(); ++j) {
            c.pm = param_from_p(error_rate_from_renyi2_coupling(ks[j]));
            ResultRow row = c.row("binder", curve.binder[j]);
            row.error = curve.binder_err[j];
            rows.push_back(row);
        }
    }
    c.lx = c.ly = 0;
    for (std::size_t i = 0; i < scan.crossings.size(); ++i) {
        c.label = "L" + std::to_string(lengths[i]) + "-L" + std::to_string(lengths[i + 1]);
        c.pm = param_from_p(error_rate_from_renyi2_coupling(scan.crossings[i]));
        rows.push_back(c.row("crossing_K", scan.crossings[i]));
    }
    c.label = "torus";
    c.pm = param_from_p(scan.p_star);
    rows.push_back(c.checked("p_c", scan.p_star, critical_error_rate(), kPcTol));
    const ParameterMap exact = param_from_p(critical_error_rate());
    c.pm = exact;
    rows.push_back(c.checked("tanh_K_c", std::tanh(exact.renyi2_coupling().value()), std::sqrt(2.0) - 1.0, 1e-12));
    return rows;
}

std::string label_for(const std::string& name, const Scenario& s) {
    if (name == "sssb-1d" || name == "gapless-1d") return "chain-open";
    if (name == "groups") return s.group;
    return "torus";
}

void check_budget(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"sssb-1d",      "sssb-2d",       "oneform-2d",
                                                "subsystem-2d", "toric-dephase", "toric-fermion",
                                                "groups",       "gapless-1d",    "pc-scan"};
    return names;
}

std::vector<std::string> scenario_observables(const std::string& name) {
    if (name == "sssb-1d" || name == "sssb-2d") return {"trace", "renyi2", "conventional", "typeII", "fidelity"};
    if (name == "oneform-2d" || name == "subsystem-2d" || name == "toric-dephase") {
        return {"trace", "renyi2", "conventional"};
    }
    if (name == "toric-fermion") return {"trace", "renyi2", "conventional", "strong_f_loop_h", "strong_f_loop_v"};
    if (name == "groups") {
        return {"sectors", "purity", "purity_ratio", "conventional", "renyi2", "single_renyi2"};
    }
    if (name == "gapless-1d") return {"energy", "product_energy", "residual", "renyi2", "renyi2_exponent"};
    if (name == "pc-scan") return {"binder", "crossing_K", "p_c", "tanh_K_c"};
    throw PreconditionError("unknown scenario '" + name + "'");
}

std::pair<std::size_t, std::size_t> centred_pair(std::size_t length, std::size_t r) {
    if (r == 0 || r >= length) throw PreconditionError("distance r must lie in [1, L)");
    const std::size_t a = (length - 1 - r) / 2;
    return {a, a + r};
}

void validate(const Scenario& s) {
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), s.name) == names.end()) {
        throw PreconditionError("unknown scenario '" + s.name + "'");
    }
    const std::vector<std::string> known = scenario_observables(s.name);
    for (const std::string& o : s.observables) {
        if (std::find(known.begin(), known.end(), o) == known.end()) {
            throw PreconditionError("observable '" + o + "' is not produced by scenario " + s.name);
        }
    }
    if (!s.p_grid.empty() && !s.theta_grid.empty()) throw PreconditionError("--p and --theta are exclusive");
    for (double p : s.p_grid) check_budget(p >= 0.0 && p <= 0.5, "p must lie in [0, 1/2]");
    for (double t : s.theta_grid) check_budget(t >= 0.0 && t <= M_PI / 4 + 1e-15, "theta must lie in [0, pi/4]");
    check_budget(s.threads >= 1, "threads must be at least 1");

    const std::string& n = s.name;
    if (n == "sssb-1d" || n == "gapless-1d" || n == "groups") {
        for (std::size_t L : lengths_of(s)) {
            check_budget(L >= 2, "L must be at least 2");
            if (n == "sssb-1d") check_budget(L <= kDenseDensityBudget, "sssb-1d: L exceeds the dense budget of 10 qubits");
            if (n == "gapless-1d") check_budget(2 * L - 1 <= kGaplessQubitBudget, "gapless-1d: 2L-1 exceeds 18 qubits");
            for (std::size_t r : s.distances) check_budget(r >= 1 && r < L, "distance r must lie in [1, L)");
        }
        if (n == "groups") {
            const LocalRep rep = rep_by_name(s.group);
            for (std::size_t L : lengths_of(s)) identity_sector_count(rep, L);
        }
        if (n == "groups" || n == "gapless-1d") {
            check_budget(s.p_grid.empty() && s.theta_grid.empty(), n + " takes no p or theta grid");
        }
        return;
    }
    if (n == "pc-scan") {
        const auto ls = lengths_of(s);
        check_budget(ls.size() >= 2, "pc-scan needs at least two sizes");
        for (std::size_t L : ls) check_budget(L >= 4 && L <= 256, "pc-scan: L must lie in [4, 256]");
        check_budget(s.sweeps >= 100, "pc-scan: sweeps must be at least 100");
        check_budget(s.p_grid.empty() && s.theta_grid.empty(), "pc-scan scans the coupling grid; no --p or --theta");
        if (!s.couplings.empty()) check_budget(s.couplings.size() >= 2, "pc-scan needs at least two couplings");
        return;
    }
    auto [lx, ly] = plane_size(s);
    check_budget(lx >= 2 && ly >= 2, "Lx and Ly must be at least 2");
    const std::size_t qubits = (n == "sssb-2d" || n == "subsystem-2d") ? lx * ly : 2 * lx * ly;
    check_budget(qubits <= kDenseDensityBudget,
                 n + ": " + std::to_string(qubits) + " qubits exceed the dense budget of 10 qubits");
    const std::size_t limit = n == "subsystem-2d" ? std::min(lx, ly) : lx;
    for (std::size_t r : s.distances) check_budget(r >= 1 && r < limit, "distance r out of range for the lattice");
}

RunReport run(const Scenario& s) {
    validate(s);
    std::vector<Rows> chunks;
    if (s.name == "pc-scan") {
        chunks.push_back(run_pc_scan(s));
    } else {
        const bool one_d = s.name == "sssb-1d" || s.name == "gapless-1d" || s.name == "groups";
        const bool needs_p = s.name != "gapless-1d" && s.name != "groups";
        const std::vector<std::size_t> lengths = one_d ? lengths_of(s) : std::vector<std::size_t>{0};
        const std::vector<std::optional<ParameterMap>> params = [&] {
            std::vector<std::optional<ParameterMap>> out;
            if (!needs_p) return std::vector<std::optional<ParameterMap>>{std::nullopt};
            for (const auto& pm : parameter_grid(s)) out.emplace_back(pm);
            return out;
        }();
        chunks.resize(lengths.size() * params.size());
        detail::parallel_for(chunks.size(), s.threads, [&](std::size_t idx) {
            const std::size_t L = lengths[idx / params.size()];
            Ctx c{s, label_for(s.name, s), L, std::size_t{one_d ? 1u : 0u}, params[idx % params.size()]};
            if (!one_d) std::tie(c.lx, c.ly) = plane_size(s);
            if (s.name == "sssb-1d") chunks[idx] = run_sssb_1d(c, L);
            else if (s.name == "gapless-1d") chunks[idx] = run_gapless(c, L);
            else if (s.name == "groups") chunks[idx] = run_groups(c, L);
            else if (s.name == "sssb-2d") chunks[idx] = run_sssb_2d(c);
            else if (s.name == "oneform-2d") chunks[idx] = run_oneform(c);
            else if (s.name == "subsystem-2d") chunks[idx] = run_subsystem(c);
            else chunks[idx] = run_toric(c, s.name == "toric-fermion");
        });
    }
    RunReport report;
    const std::set<std::string> keep(s.observables.begin(), s.observables.end());
    for (Rows& chunk : chunks) {
        for (ResultRow& row : chunk) {
            if (!keep.empty() && !keep.count(row.observable)) continue;
            if (!row.passes()) {
                report.failures.push_back(row.observable + (row.r ? " r=" + std::to_string(*row.r) : std::string()) +
                                          " |delta| " + format_number(*row.abs_delta()) + " exceeds " +
                                          format_number(*row.tolerance));
            }
            report.rows.push_back(std::move(row));
        }
    }
    if (!s.out.empty()) write_outputs(s, report);
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

std::optional<double> ResultRow::abs_delta() const {
    if (!oracle) return std::nullopt;
    if (std::isinf(value) && std::isinf(*oracle) && value == *oracle) return 0.0;
    return std::abs(value - *oracle);
}

bool ResultRow::passes() const {
    if (!oracle || !tolerance) return true;
    const double d = *abs_delta();
    return d <= *tolerance;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const ResultRow& r : rows) {
        os << r.scenario << ',' << r.label << ',' << r.lx << ',' << r.ly << ',';
        if (r.params) os << format_number(r.params->p) << ',' << format_number(r.params->theta) << ',' << r.params->beta.str();
        else os << ",,";
        os << ',' << (r.r ? std::to_string(*r.r) : std::string()) << ',' << r.observable << ','
           << format_number(r.value) << ',' << opt(r.error) << ',' << opt(r.oracle) << ',' << opt(r.abs_delta()) << ','
           << opt(r.tolerance) << '\n';
    }
    return os.str();
}

std::string to_json(const Scenario& s, const std::vector<ResultRow>& rows) {
    using nlohmann::json;
    auto coupling = [](const Coupling& c) -> json {
        if (c.is_infinite()) return "inf";
        return c.value();
    };
    json doc;
    doc["scenario"] = s.name;
    doc["seed"] = s.seed;
    doc["columns"] = kCsvHeader;
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ResultRow& r = rows[i];
        json row{{"row", i + 1}, {"observable", r.observable}};
        if (r.r) row["r"] = *r.r;
        if (r.params) {
            const ParameterMap& pm = *r.params;
            row["params"] = {{"p", pm.p},
                             {"theta", pm.theta},
                             {"beta", coupling(pm.beta)},
                             {"beta_tilde", coupling(pm.beta_tilde)},
                             {"renyi2_coupling", coupling(pm.renyi2_coupling())},
                             {"typeII_coupling", coupling(pm.typeII_coupling())}};
        } else {
            row["params"] = nullptr;
        }
        arr.push_back(std::move(row));
    }
    doc["rows"] = std::move(arr);
    return doc.dump(2) + "\n";
}

void write_outputs(const Scenario& s, const RunReport& report) {
    namespace fs = std::filesystem;
    const fs::path path(s.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ofstream csv(path);
    if (!csv) throw std::runtime_error("cannot open " + s.out + " for writing");
    csv << "# generated " << stamp << '\n' << to_csv(report.rows);
    std::ofstream js(s.out + ".json");
    if (!js) throw std::runtime_error("cannot open " + s.out + ".json for writing");
    js << to_json(s, report.rows);
}

// ---------------------------------------------------------------------------
// Compare

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        out.push_back(line);
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool numeric_column(const std::string& name) {
    static const std::set<std::string> cols{"lx", "ly",    "p",      "theta",     "beta",
                                            "r",  "value", "error",  "oracle",    "abs_delta",
                                            "tolerance"};
    return cols.count(name) > 0;
}

}  // namespace

DiffReport compare_csv(const std::string& expected, const std::string& actual, double tolerance) {
    const auto exp_lines = data_lines(expected);
    const auto act_lines = data_lines(actual);
    if (exp_lines.empty() || act_lines.empty()) throw SchemaError("missing CSV header");
    if (exp_lines.front() != act_lines.front()) {
        throw SchemaError("header mismatch: '" + exp_lines.front() + "' vs '" + act_lines.front() + "'");
    }
    if (exp_lines.size() != act_lines.size()) {
        throw SchemaError("row count mismatch: " + std::to_string(exp_lines.size() - 1) + " vs " +
                          std::to_string(act_lines.size() - 1));
    }
    const auto header = split(exp_lines.front(), ',');
    DiffReport report;
    for (std::size_t i = 1; i < exp_lines.size(); ++i) {
        const auto e = split(exp_lines[i], ',');
        const auto a = split(act_lines[i], ',');
        if (e.size() != header.size() || a.size() != header.size()) {
            throw SchemaError("row " + std::to_string(i) + " has the wrong number of columns");
        }
        ++report.rows_compared;
        for (std::size_t col = 0; col < header.size(); ++col) {
            if (e[col] == a[col]) continue;
            DiffEntry d{i, header[col], e[col], a[col], std::numeric_limits<double>::infinity()};
            if (numeric_column(header[col]) && !e[col].empty() && !a[col].empty()) {
                const double x = std::strtod(e[col].c_str(), nullptr);
                const double y = std::strtod(a[col].c_str(), nullptr);
                if (std::isfinite(x) && std::isfinite(y)) {
                    d.delta = std::abs(x - y);
                    if (d.delta <= tolerance) continue;
                }
            }
            report.entries.push_back(d);
        }
    }
    return report;
}

DiffReport compare(const std::string& fixture_path, const std::string& run_output_path, double tolerance) {
    return compare_csv(slurp(fixture_path), slurp(run_output_path), tolerance);
}

}  // namespace sssb
