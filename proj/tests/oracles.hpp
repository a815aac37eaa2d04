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

// Independent reference computations shared by the test suites.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace oracle {

// Plain power series, long double accumulation.
inline double bessel_j0_series(double x)
{
    long double term = 1.0L, sum = 1.0L;
    const long double q = static_cast<long double>(x) * x / 4.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::fabs(static_cast<double>(term)) < 1e-20)
            break;
    }
    return static_cast<double>(sum);
}

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Golub-Welsch for Gauss-Hermite with weight exp(-x^2).
inline Rule gauss_hermite(int n)
{
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    const double mu0 = std::sqrt(M_PI);
    for (int i = 0; i < n; ++i) {
        r.x.push_back(es.eigenvalues()(i));
        r.w.push_back(mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
    }
    return r;
}

// Golub-Welsch for Gauss-Laguerre with weight exp(-x) on [0, inf).
inline Rule gauss_laguerre(int n)
{
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = 2.0 * i + 1.0;
        if (i + 1 < n)
            J(i, i + 1) = J(i + 1, i) = i + 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    for (int i = 0; i < n; ++i) {
        r.x.push_back(es.eigenvalues()(i));
        r.w.push_back(es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
    }
    return r;
}

// Log-density of a zero-mean real Gaussian vector.
inline double mvn_logpdf(const Eigen::VectorXd& z, const Eigen::MatrixXd& cov)
{
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    const Eigen::VectorXd y = llt.matrixL().solve(z);
    double logdet = 0.0;
    for (int i = 0; i < cov.rows(); ++i)
        logdet += 2.0 * std::log(llt.matrixL()(i, i));
    return -0.5 * (z.size() * std::log(2.0 * M_PI) + logdet + y.squaredNorm());
}

// Covariance of (x1, y1, x2, y2) for a differential use with phase
// difference dphi: blocks s2 I on the diagonal and eta R(dphi) off it.
inline Eigen::Matrix4d diff_covariance(double gamma, double rho, double dphi)
{
    const double s2 = (1.0 + gamma) / (2.0 * gamma);
    const double eta = rho / 2.0;
    const double c = std::cos(dphi), s = std::sin(dphi);
    Eigen::Matrix4d S = Eigen::Matrix4d::Identity() * s2;
    // x2 = c x1 - s y1 (scaled), y2 = s x1 + c y1
    S(0, 2) = S(2, 0) = eta * c;
    S(0, 3) = S(3, 0) = eta * s;
    S(1, 2) = S(2, 1) = -eta * s;
    S(1, 3) = S(3, 1) = eta * c;
    return S;
}

struct QuadResult {
    double I = 0.0;
    double V = 0.0;
};

// E over z ~ N(0, Sigma(0)) of the differential density, by a tensor
// Gauss-Hermite rule. Densities come from generic Gaussian algebra.
inline QuadResult diff_density_quadrature(double gamma, double rho, int M, int order)
{
    const oracle::Rule gh = oracle::gauss_hermite(order);
    std::vector<Eigen::Matrix4d> inv(static_cast<std::size_t>(M));
    std::vector<double> logdet(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const Eigen::Matrix4d S = oracle::diff_covariance(gamma, rho, 2.0 * M_PI * m / M);
        inv[static_cast<std::size_t>(m)] = S.inverse();
        logdet[static_cast<std::size_t>(m)] = std::log(S.determinant());
    }
    const Eigen::Matrix4d L = Eigen::LLT<Eigen::Matrix4d>(oracle::diff_covariance(gamma, rho, 0.0)).matrixL();
    long double s1 = 0.0L, s2 = 0.0L;
    std::vector<double> lp(static_cast<std::size_t>(M));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                for (int d = 0; d < order; ++d) {
                    const Eigen::Vector4d x(gh.x[a], gh.x[b], gh.x[c], gh.x[d]);
                    const Eigen::Vector4d z = L * (std::sqrt(2.0) * x);
                    double mx = -1e300;
                    for (int m = 0; m < M; ++m) {
                        const auto k = static_cast<std::size_t>(m);
                        lp[k] = -0.5 * (logdet[k] + z.dot(inv[k] * z));
                        mx = std::max(mx, lp[k]);
                    }
                    double acc = 0.0;
                    for (int m = 0; m < M; ++m)
                        acc += std::exp(lp[static_cast<std::size_t>(m)] - mx);
                    const double i = std::log2(M) - (mx + std::log(acc) - lp[0]) / std::log(2.0);
                    const double w = gh.w[a] * gh.w[b] * gh.w[c] * gh.w[d] / (M_PI * M_PI);
                    s1 += w * i;
                    s2 += w * i * i;
                }
    return {static_cast<double>(s1), static_cast<double>(s2 - s1 * s1)};
}

// BPSK over Rayleigh fading: with u = |h|^2 ~ Exp(1) and v ~ N(0, 1/2),
// i = 1 - log2(1 + exp(-4 g u - 4 sqrt(g u) v)).
inline QuadResult bpsk_quadrature(double g, int nu, int nv)
{
    const oracle::Rule gl = oracle::gauss_laguerre(nu);
    const oracle::Rule gh = oracle::gauss_hermite(nv);
    long double s1 = 0.0L, s2 = 0.0L;
    for (int a = 0; a < nu; ++a)
        for (int b = 0; b < nv; ++b) {
            const double u = gl.x[a];
            const double v = gh.x[b];
            const double e = -4.0 * g * u - 4.0 * std::sqrt(g * u) * v;
            const double soft = e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
            const double i = 1.0 - soft / std::log(2.0);
            const double w = gl.w[a] * gh.w[b] / std::sqrt(M_PI);
            s1 += w * i;
            s2 += w * i * i;
        }
    return {static_cast<double>(s1), static_cast<double>(s2 - s1 * s1)};
}

} // namespace oracle
