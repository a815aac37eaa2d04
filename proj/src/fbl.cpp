// SPDX-License-Identifier: Apache-2.0
//
// minislot: finite-blocklength link evaluation for mini-slot OFDM
// Copyright (C) 2026 The minislot authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "minislot/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minislot {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

template <class Range>
double log_sum_exp(const Range& x)
{
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : x)
        mx = std::max(mx, v);
    double s = 0.0;
    for (double v : x)
        s += std::exp(v - mx);
    return mx + std::log(s);
}

} // namespace

CapacityDispersion awgn_capacity_dispersion(double gamma)
{
    require(gamma >= 0.0, "SNR must be >= 0");
    const double g1 = 1.0 + gamma;
    return {std::log2(g1), gamma * (2.0 + gamma) / (g1 * g1)};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double normal_approx_bler(double I, double V, int N, double R)
{
    require(N >= 2, "blocklength must be >= 2");
    require(V >= 0.0, "dispersion must be >= 0");
    const double margin = I - R + std::log2(static_cast<double>(N)) / (2.0 * N);
    if (V == 0.0)
        return margin > 0.0 ? 0.0 : 1.0;
    return q_function(std::sqrt(N / V) * margin);
}

double diff_transition_logpdf(const std::array<double, 4>& z, double deltaPhi, const DiffChannelParams& p)
{
    require(p.gamma > 0.0, "SNR must be positive");
    require(std::abs(p.rho) <= 1.0, "correlation magnitude must be <= 1");
    const double s2 = (1.0 + p.gamma) / (2.0 * p.gamma);
    const double eta = p.rho / 2.0;
    const double det = s2 * s2 - eta * eta;
    if (!(det > 0.0))
        throw NumericalError("differential channel covariance is not positive definite");
    const auto [x1, y1, x2, y2] = z;
    const double c = std::cos(deltaPhi);
    const double s = std::sin(deltaPhi);
    const double u = x1 + x2 * c + y2 * s;
    const double v = y1 - x2 * s + y2 * c;
    const double F = u * u + v * v;
    const double energy = x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2;
    return -std::log(4.0 * kPi * kPi * det) + eta * F / (2.0 * det) - (s2 + eta) * energy / (2.0 * det);
}

DiffDensitySampler::DiffDensitySampler(const DiffChannelParams& p)
    : p_(p)
{
    require(p.gamma > 0.0, "SNR must be positive");
    require(std::abs(p.rho) <= 1.0, "correlation magnitude must be <= 1");
    require(p.M >= 2, "PSK order must be >= 2");
    const double g = p.gamma;
    c_ = g * g * p.rho / (1.0 + 2.0 * g + g * g - g * g * p.rho * p.rho);
    const double s2 = (1.0 + g) / (2.0 * g);
    const double eta = p.rho / 2.0;
    a_ = std::sqrt(s2);
    const double rest = s2 - eta * eta / s2;
    if (!(rest > 0.0))
        throw NumericalError("differential channel covariance is not positive definite");
    b_ = std::sqrt(rest);
    cos_.resize(static_cast<std::size_t>(p.M));
    sin_.resize(static_cast<std::size_t>(p.M));
    for (int m = 0; m < p.M; ++m) {
        cos_[static_cast<std::size_t>(m)] = std::cos(2.0 * kPi * m / p.M);
        sin_[static_cast<std::size_t>(m)] = std::sin(2.0 * kPi * m / p.M);
    }
}

double DiffDensitySampler::operator()(Rng& rng) const
{
    std::normal_distribution<double> n(0.0, 1.0);
    const double u1 = n(rng), u2 = n(rng), u3 = n(rng), u4 = n(rng);
    // Cholesky factor of the deltaPhi = 0 covariance: z2 = (eta / s^2) z1 + b w.
    const double x1 = a_ * u1;
    const double y1 = a_ * u2;
    const double cross = (p_.rho / 2.0) / a_;
    const double x2 = cross * u1 + b_ * u3;
    const double y2 = cross * u2 + b_ * u4;

    const std::size_t M = cos_.size();
    double mx = -std::numeric_limits<double>::infinity();
    std::array<double, 64> e{};
    std::vector<double> big;
    double* ex = e.data();
    if (M > e.size()) {
        big.resize(M);
        ex = big.data();
    }
    for (std::size_t m = 0; m < M; ++m) {
        const double u = x1 + x2 * cos_[m] + y2 * sin_[m];
        const double v = y1 - x2 * sin_[m] + y2 * cos_[m];
        ex[m] = c_ * (u * u + v * v);
        mx = std::max(mx, ex[m]);
    }
    double s = 0.0;
    for (std::size_t m = 0; m < M; ++m)
        s += std::exp(ex[m] - mx);
    const double lse = mx + std::log(s);
    return std::log2(static_cast<double>(M)) - (lse - ex[0]) / kLn2;
}

CoherentDensitySampler::CoherentDensitySampler(double gammaHat, Constellation constellation)
    : gammaHat_(gammaHat)
    , amp_(std::sqrt(gammaHat))
    , constellation_(std::move(constellation))
{
    require(gammaHat >= 0.0 && std::isfinite(gammaHat), "effective SNR must be finite and >= 0");
}

double CoherentDensitySampler::operator()(Rng& rng) const
{
    const auto& x = constellation_.points();
    const int M = constellation_.order();
    std::uniform_int_distribution<int> pick(0, M - 1);
    const int j = pick(rng);
    const cx w = complex_normal(rng);
    const cx h = complex_normal(rng);
    const cx s = amp_ * h;
    const double w2 = std::norm(w);
    std::array<double, 256> e{};
    require(static_cast<std::size_t>(M) <= e.size(), "constellation too large");
    for (int i = 0; i < M; ++i)
        e[static_cast<std::size_t>(i)] = w2 - std::norm(w + s * (x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)]));
    const double lse = log_sum_exp(std::span<const double>(e.data(), static_cast<std::size_t>(M)));
    return constellation_.bits_per_symbol() - lse / kLn2;
}

InfoEstimate estimate_information(const DensitySampler& sampler, std::size_t nSamples, std::uint64_t seed)
{
    require(nSamples >= 2, "need at least two samples");
    const std::vector<double> draws = draw_samples(nSamples, seed, sampler);
    const MomentSummary m = summarize(draws);
    return {m.mean, m.variance, m.stderrMean, m.stderrVariance, m.n};
}

InfoEstimate diff_capacity_dispersion(const DiffChannelParams& p, std::size_t nSamples, std::uint64_t seed)
{
    return estimate_information(DensitySampler(DiffDensitySampler(p)), nSamples, seed);
}

InfoEstimate coherent_capacity_dispersion(double gammaHat, const Constellation& constellation,
                                          std::size_t nSamples, std::uint64_t seed)
{
    return estimate_information(DensitySampler(CoherentDensitySampler(gammaHat, constellation)), nSamples,
                                seed);
}

SchemeChannel scheme_channel(Scheme scheme, const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                             const DopplerSpec& doppler, double gamma, const Constellation& constellation)
{
    require(gamma > 0.0, "SNR must be positive");
    const int N = data_symbol_count(grid, scheme);
    if (scheme == Scheme::PA) {
        const MseBreakdown mse = analyze_mse(grid, pdp, doppler, gamma);
        const double gh = effective_snr_at(mse.sigmaE2, gamma);
        SchemeChannel ch{scheme, N, CoherentDensitySampler(gh, constellation), cx{1.0, 0.0}, mse, gh, {}};
        return ch;
    }
    require(constellation.kind() == Modulation::PSK, "differential schemes carry PSK symbols");
    const cx rho = scheme == Scheme::FDDi ? freq_correlation(1, pdp, grid.K())
                                          : cx{time_correlation(1, doppler), 0.0};
    SchemeChannel ch{scheme, N, DiffDensitySampler({gamma, rho.real(), constellation.order()}), rho, {}, 0.0, {}};
    if (std::abs(rho.imag()) > 0.05)
        ch.warning = "|Im(rho_f)| = " + std::to_string(std::abs(rho.imag()))
            + " > 0.05; only Re(rho_f) enters the differential model";
    return ch;
}

FblResult scheme_fbl(Scheme scheme, const MiniSlotGrid& grid, const PowerDelayProfile& pdp,
                     const DopplerSpec& doppler, double gamma, int B, const Constellation& constellation,
                     std::size_t nSamples, std::uint64_t seed)
{
    require(B > 0, "payload must be positive");
    const SchemeChannel ch = scheme_channel(scheme, grid, pdp, doppler, gamma, constellation);
    const double R = static_cast<double>(B) / ch.N;
    if (R > constellation.bits_per_symbol())
        throw InfeasiblePayload(std::string(to_string(scheme)) + ": rate " + std::to_string(R)
                                + " exceeds log2 M = " + std::to_string(constellation.bits_per_symbol()));

    const std::uint64_t stream = scheme == Scheme::PA ? kCoherentDensityStream : kDiffDensityStream;
    const InfoEstimate info = estimate_information(ch.sampler, nSamples, derive_seed(seed, stream));

    FblResult r;
    r.scheme = scheme;
    r.N = ch.N;
    r.R = R;
    r.I = info.I;
    r.V = info.V;
    r.stderrI = info.stderrI;
    r.stderrV = info.stderrV;
    r.nSamples = info.nSamples;
    r.epsilon = normal_approx_bler(info.I, info.V, ch.N, R);
    if (ch.mse) {
        r.sigmaE2 = ch.mse->sigmaE2;
        r.gammaHat = ch.gammaHat;
    }
    r.warning = ch.warning;
    return r;
}

} // namespace minislot
