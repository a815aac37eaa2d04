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

#include "minislot/channel.hpp"
#include "minislot/montecarlo.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace minislot;

TEST_CASE("J0 agrees with the power series and the library Bessel function")
{
    for (double x = 0.0; x <= 30.0; x += 0.37) {
        CHECK(bessel_j0(x) == doctest::Approx(std::cyl_bessel_j(0.0, x)).epsilon(1e-11).scale(1.0));
        if (x <= 12.0)
            CHECK(std::abs(bessel_j0(x) - oracle::bessel_j0_series(x)) < 1e-12);
    }
}

TEST_CASE("time correlation")
{
    CHECK(time_correlation(0, DopplerSpec(0.3)) == 1.0);
    CHECK(time_correlation(1, DopplerSpec(0.01)) == doctest::Approx(0.999013).epsilon(1e-6));
    CHECK(time_correlation(1, DopplerSpec(0.1)) == doctest::Approx(0.90371).epsilon(1e-5));
    CHECK(time_correlation(-2, DopplerSpec(0.1)) == time_correlation(2, DopplerSpec(0.1)));
    for (int dt = 0; dt < 7; ++dt) {
        const double r = time_correlation(dt, DopplerSpec(0.25));
        CHECK(r <= 1.0);
        CHECK(r >= -1.0);
    }
    CHECK_THROWS_AS(DopplerSpec(-0.1), InvalidArgument);
}

TEST_CASE("frequency correlation")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    CHECK(std::abs(freq_correlation(0, pdp, 64) - cx(1.0, 0.0)) < 1e-15);
    const PowerDelayProfile flat({1.0});
    CHECK(std::abs(freq_correlation(7, flat, 64) - cx(1.0, 0.0)) < 1e-15);

    const PowerDelayProfile two({0.5, 0.5});
    const cx want = 0.5 + 0.5 * std::exp(cx(0.0, -2.0 * kPi / 256.0));
    CHECK(std::abs(freq_correlation(1, two, 256) - want) < 1e-15);

    for (int dk = -10; dk <= 10; ++dk) {
        const cx r = freq_correlation(dk, pdp, 64);
        CHECK(std::abs(r) <= 1.0 + 1e-15);
        CHECK(std::abs(freq_correlation(-dk, pdp, 64) - std::conj(r)) < 1e-14);
    }
}

TEST_CASE("joint correlation factorizes")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    const DopplerSpec d(0.05);
    CHECK(std::abs(time_freq_correlation(0, 0, pdp, d, 64) - cx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(time_freq_correlation(3, 0, pdp, d, 64) - freq_correlation(3, pdp, 64)) < 1e-15);
    CHECK(std::abs(time_freq_correlation(0, 2, pdp, d, 64) - time_correlation(2, d)) < 1e-15);
}

TEST_CASE("exponential power-delay profile")
{
    CHECK(exponential_pdp(1, 3.0).taps() == std::vector<double>{1.0});
    const PowerDelayProfile uniform = exponential_pdp(5, 0.0);
    for (double p : uniform.taps())
        CHECK(p == doctest::Approx(0.2).epsilon(1e-15));
    const auto two = exponential_pdp(2, std::log(2.0)).taps();
    CHECK(two[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(two[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(PowerDelayProfile({0.5, 0.4}), InvalidArgument);
    CHECK_THROWS_AS(PowerDelayProfile({1.2, -0.2}), InvalidArgument);
}

TEST_CASE("static channel has identical columns; sampling is reproducible")
{
    const PowerDelayProfile pdp = exponential_pdp(5);
    const ChannelGrid g = sample_channel_grid(pdp, DopplerSpec(0.0), 64, 7, 11);
    for (int t = 1; t < 7; ++t)
        CHECK(g.taps.col(t) == g.taps.col(0));
    const ChannelGrid a = sample_channel_grid(pdp, DopplerSpec(0.1), 64, 4, 5);
    const ChannelGrid b = sample_channel_grid(pdp, DopplerSpec(0.1), 64, 4, 5);
    CHECK(a.H == b.H);
    CHECK(a.H.isApprox(frequency_response(a.taps, 64), 1e-13));
}

TEST_CASE("correlation square root")
{
    const RMatrix C = jakes_covariance(DopplerSpec(0.05), 7);
    const RMatrix S = correlation_square_root(C);
    CHECK((S * S.transpose() - C).cwiseAbs().maxCoeff() < 1e-12);
    const RMatrix ones = RMatrix::Ones(4, 4);
    const RMatrix S1 = correlation_square_root(ones);
    CHECK((S1 * S1.transpose() - ones).cwiseAbs().maxCoeff() < 1e-14);
    RMatrix bad = RMatrix::Identity(2, 2);
    bad(0, 1) = bad(1, 0) = 2.0;
    CHECK_THROWS_AS(correlation_square_root(bad), NumericalError);
}

TEST_CASE("Monte Carlo second-order statistics of the sampled grid")
{
    const int K = 64, T = 2;
    const std::size_t n = 100'000;
    const PowerDelayProfile pdp = exponential_pdp(5);
    const DopplerSpec d(0.1);
    const ChannelSampler sampler(pdp, d, K, T);
    std::vector<double> pw(n), fr(n), fi(n), tr(n), ti(n), mr(n);
    Rng rng(2024);
    for (std::size_t i = 0; i < n; ++i) {
        const ChannelGrid g = sampler(rng);
        pw[i] = std::norm(g.H(10, 1));
        const cx f = g.H(11, 0) * std::conj(g.H(10, 0));
        const cx t = g.H(3, 1) * std::conj(g.H(3, 0));
        fr[i] = f.real();
        fi[i] = f.imag();
        tr[i] = t.real();
        ti[i] = t.imag();
        mr[i] = g.H(20, 0).real();
    }
    auto within = [](std::span<const double> x, double want) {
        const MomentSummary m = summarize(x);
        return std::abs(m.mean - want) <= 3.0 * m.stderrMean;
    };
    const cx rf = freq_correlation(1, pdp, K);
    CHECK(within(pw, 1.0));
    CHECK(within(mr, 0.0));
    CHECK(within(fr, rf.real()));
    CHECK(within(fi, rf.imag()));
    CHECK(within(tr, time_correlation(1, d)));
    CHECK(within(ti, 0.0));
}
