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

#include <array>
#include <cmath>
#include <random>

#include "parallel.hpp"
#include "sssb/statmech.hpp"

namespace sssb {

namespace {

class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t substream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
        engine_.seed(seq);
    }
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

struct Jackknife {
    double mean = 0;
    double error = 0;
};

// Leave-one-bin-out estimate of f applied to bin averages.
template <typename F>
Jackknife jackknife(const std::vector<std::vector<double>>& bins, F f) {
    const std::size_t nb = bins.size();
    const std::size_t nq = bins.front().size();
    std::vector<double> total(nq, 0.0);
    for (const auto& b : bins)
        for (std::size_t q = 0; q < nq; ++q) total[q] += b[q];
    std::vector<double> full(nq);
    for (std::size_t q = 0; q < nq; ++q) full[q] = total[q] / static_cast<double>(nb);
    std::vector<double> loo(nb);
    std::vector<double> tmp(nq);
    double avg = 0;
    for (std::size_t j = 0; j < nb; ++j) {
        for (std::size_t q = 0; q < nq; ++q) tmp[q] = (total[q] - bins[j][q]) / static_cast<double>(nb - 1);
        loo[j] = f(tmp);
        avg += loo[j];
    }
    avg /= static_cast<double>(nb);
    double var = 0;
    for (double v : loo) var += (v - avg) * (v - avg);
    return {f(full), std::sqrt(var * static_cast<double>(nb - 1) / static_cast<double>(nb))};
}

void check_mc_options(const McOptions& o) {
    if (o.bins < 2 || o.sweeps < o.bins || o.measure_every == 0) {
        throw PreconditionError("MC options need >= 2 bins, sweeps >= bins and measure_every >= 1");
    }
}

}  // namespace

McResult ising2d_mc(double k, std::size_t length, const McOptions& options) {
    check_mc_options(options);
    if (length < 2 || length > 256) {
        throw PreconditionError("ising2d_mc: L outside [2, 256]");
    }
    const std::size_t L = length, n = L * L;
    std::vector<std::int8_t> s(n, 1);
    Rng rng(options.seed, options.substream);
    // Acceptance exp(-2 K s h) for s*h in {2, 4}; s*h <= 0 always accepted.
    const std::array<double, 2> accept{std::exp(-4.0 * k), std::exp(-8.0 * k)};
    std::vector<std::size_t> right(n), left(n), up(n), down(n);
    for (std::size_t y = 0; y < L; ++y) {
        for (std::size_t x = 0; x < L; ++x) {
            const std::size_t i = y * L + x;
            right[i] = y * L + (x + 1) % L;
            left[i] = y * L + (x + L - 1) % L;
            up[i] = ((y + 1) % L) * L + x;
            down[i] = ((y + L - 1) % L) * L + x;
        }
    }
    auto sweep = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            const int sh = s[i] * (s[right[i]] + s[left[i]] + s[up[i]] + s[down[i]]);
            if (sh <= 0 || rng.uniform() < accept[static_cast<std::size_t>(sh / 2 - 1)]) s[i] = static_cast<std::int8_t>(-s[i]);
        }
    };
    for (std::size_t t = 0; t < options.thermalization; ++t) sweep();

    const std::size_t nd = options.distances.size();
    const std::size_t per_bin = options.sweeps / options.bins;
    std::vector<std::vector<double>> bins(options.bins, std::vector<double>(2 + nd, 0.0));
    std::size_t samples = 0;
    for (std::size_t bin = 0; bin < options.bins; ++bin) {
        std::size_t in_bin = 0;
        for (std::size_t t = 0; t < per_bin; ++t) {
            sweep();
            if ((t + 1) % options.measure_every != 0) continue;
            long mag = 0;
            for (std::int8_t v : s) mag += v;
            const double m = static_cast<double>(mag) / static_cast<double>(n);
            bins[bin][0] += m * m;
            bins[bin][1] += m * m * m * m;
            for (std::size_t d = 0; d < nd; ++d) {
                const std::size_t r = options.distances[d] % L;
                long c = 0;
                for (std::size_t y = 0; y < L; ++y)
                    for (std::size_t x = 0; x < L; ++x)
                        c += s[y * L + x] * (s[y * L + (x + r) % L] + s[((y + r) % L) * L + x]);
                bins[bin][2 + d] += static_cast<double>(c) / static_cast<double>(2 * n);
            }
            ++in_bin;
        }
        for (double& v : bins[bin]) v /= static_cast<double>(in_bin);
        samples += in_bin;
    }

    McResult res;
    res.samples = samples;
    const Jackknife m2 = jackknife(bins, [](const std::vector<double>& q) { return q[0]; });
    const Jackknife m4 = jackknife(bins, [](const std::vector<double>& q) { return q[1]; });
    const Jackknife u4 = jackknife(bins, [](const std::vector<double>& q) { return 1.0 - q[1] / (3.0 * q[0] * q[0]); });
    res.m2 = m2.mean;
    res.m2_err = m2.error;
    res.m4 = m4.mean;
    res.binder = u4.mean;
    res.binder_err = u4.error;
    for (std::size_t d = 0; d < nd; ++d) {
        const Jackknife c = jackknife(bins, [d](const std::vector<double>& q) { return q[2 + d]; });
        res.corr.push_back(c.mean);
        res.corr_err.push_back(c.error);
    }
    return res;
}

std::optional<double> binder_crossing(const BinderCurve& small, const BinderCurve& large) {
    if (small.couplings != large.couplings || small.binder.size() != small.couplings.size() ||
        large.binder.size() != large.couplings.size()) {
        throw PreconditionError("binder_crossing: curves must share a coupling grid");
    }
    for (std::size_t i = 0; i + 1 < small.couplings.size(); ++i) {
        const double d0 = large.binder[i] - small.binder[i];
        const double d1 = large.binder[i + 1] - small.binder[i + 1];
        if (d0 == 0) return small.couplings[i];
        if ((d0 < 0) != (d1 < 0)) {
            const double k0 = small.couplings[i], k1 = small.couplings[i + 1];
            return k0 + (k1 - k0) * d0 / (d0 - d1);
        }
    }
    return std::nullopt;
}

BinderScan binder_scan(const std::vector<std::size_t>& lengths, const std::vector<double>& couplings,
                       const McOptions& options, std::size_t threads) {
    if (lengths.size() < 2 || couplings.size() < 2) {
        throw PreconditionError("binder_scan: need two sizes and two couplings");
    }
    const std::size_t nk = couplings.size();
    std::vector<McResult> results(lengths.size() * nk);
    detail::parallel_for(results.size(), threads, [&](std::size_t idx) {
        McOptions o = options;
        o.substream = options.substream + idx;
        results[idx] = ising2d_mc(couplings[idx % nk], lengths[idx / nk], o);
    });
    BinderScan scan;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        BinderCurve curve;
        curve.length = lengths[i];
        curve.couplings = couplings;
        for (std::size_t j = 0; j < nk; ++j) {
            curve.binder.push_back(results[i * nk + j].binder);
            curve.binder_err.push_back(results[i * nk + j].binder_err);
        }
        scan.curves.push_back(std::move(curve));
    }
    for (std::size_t i = 0; i + 1 < scan.curves.size(); ++i) {
        if (auto c = binder_crossing(scan.curves[i], scan.curves[i + 1])) scan.crossings.push_back(*c);
    }
    if (scan.crossings.empty()) {
        throw std::runtime_error("binder_scan: no crossing inside the coupling grid");
    }
    double sum = 0;
    for (double c : scan.crossings) sum += c;
    scan.k_star = sum / static_cast<double>(scan.crossings.size());
    scan.p_star = error_rate_from_renyi2_coupling(scan.k_star);
    return scan;
}

PlaquetteMcResult plaquette_ising_mc(Coupling k, std::size_t length, std::size_t separation, const McOptions& options,
                                     Boundary boundary) {
    if (length < 2 || length > 32) {
        throw PreconditionError("plaquette_ising_mc: L outside [2, 32]");
    }
    const bool open = boundary == Boundary::Open;
    if (separation == 0 || separation >= length - (open ? 1 : 0)) {
        throw PreconditionError("plaquette_ising_mc: separation outside [1, L)");
    }
    if (k.is_infinite()) return {1.0, 0.0, 0};
    if (k.value() == 0.0) return {0.0, 0.0, 0};
    check_mc_options(options);
    const double kv = k.value();
    const std::size_t L = length, n = L * L;
    std::vector<std::int8_t> s(n, 1);
    Rng rng(options.seed, options.substream);
    auto at = [&](std::size_t x, std::size_t y) -> std::int8_t& { return s[(y % L) * L + (x % L)]; };
    auto plaq = [&](std::size_t x, std::size_t y) { return at(x, y) * at(x + 1, y) * at(x, y + 1) * at(x + 1, y + 1); };
    // Plaquette (x, y) has lower-left corner (x, y); open boundaries keep x, y <= L - 2.
    const long last = static_cast<long>(L) - 2;
    // Energy change 2 K sum_P P for sum_P P in {1, 2, 3, 4}.
    std::array<double, 4> accept{};
    for (std::size_t i = 0; i < 4; ++i) accept[i] = std::exp(-2.0 * kv * static_cast<double>(i + 1));
    auto sweep = [&] {
        for (std::size_t y = 0; y < L; ++y) {
            for (std::size_t x = 0; x < L; ++x) {
                int sum = 0;
                for (int dy = -1; dy <= 0; ++dy) {
                    for (int dx = -1; dx <= 0; ++dx) {
                        const long px = static_cast<long>(x) + dx, py = static_cast<long>(y) + dy;
                        if (open && (px < 0 || py < 0 || px > last || py > last)) continue;
                        sum += plaq(static_cast<std::size_t>(px + static_cast<long>(L)),
                                    static_cast<std::size_t>(py + static_cast<long>(L)));
                    }
                }
                if (sum <= 0 || rng.uniform() < accept[static_cast<std::size_t>(sum - 1)]) at(x, y) = static_cast<std::int8_t>(-at(x, y));
            }
        }
    };
    for (std::size_t t = 0; t < options.thermalization; ++t) sweep();

    const std::size_t per_bin = options.sweeps / options.bins;
    const std::size_t d = separation;
    const std::size_t span = open ? L - d : L;
    std::vector<std::vector<double>> bins(options.bins, std::vector<double>(1, 0.0));
    std::size_t samples = 0;
    for (std::size_t bin = 0; bin < options.bins; ++bin) {
        std::size_t in_bin = 0;
        for (std::size_t t = 0; t < per_bin; ++t) {
            sweep();
            if ((t + 1) % options.measure_every != 0) continue;
            long c = 0;
            for (std::size_t y = 0; y < span; ++y)
                for (std::size_t x = 0; x < span; ++x) c += at(x, y) * at(x + d, y) * at(x, y + d) * at(x + d, y + d);
            bins[bin][0] += static_cast<double>(c) / static_cast<double>(span * span);
            ++in_bin;
        }
        bins[bin][0] /= static_cast<double>(in_bin);
        samples += in_bin;
    }
    const Jackknife j = jackknife(bins, [](const std::vector<double>& q) { return q[0]; });
    return {j.mean, j.error, samples};
}

}  // namespace sssb
