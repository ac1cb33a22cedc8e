// SPDX-License-Identifier: Apache-2.0
//
// sula - sparse uniform linear array analysis and simulation toolkit
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

#ifndef sula_beamform_H
#define sula_beamform_H

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "array.hpp"
#include "common.hpp"

namespace sula
{

enum class Beamformer
{
    MRC,
    ZF,
    MMSE
};

inline const char *to_string(Beamformer b)
{
    switch (b)
    {
    case Beamformer::MRC:
        return "mrc";
    case Beamformer::ZF:
        return "zf";
    default:
        return "mmse";
    }
}

// One uplink channel realization. Noise power is normalized to 1, so snr
// holds the normalized per-user SNR P̄_k = |beta_k|^2 P_k / sigma^2.
struct UplinkSnapshot
{
    std::vector<cvec> channels;
    std::vector<double> snr;

    void validate() const
    {
        if (channels.empty() || channels.size() != snr.size())
            throw validation_error("UplinkSnapshot: need K >= 1 channels with matching SNR list");
        Eigen::Index m = channels.front().size();
        for (const auto &h : channels)
            if (h.size() != m)
                throw validation_error("UplinkSnapshot: channel length mismatch");
        for (double p : snr)
            if (!(p > 0.0) || !std::isfinite(p))
                throw validation_error("UplinkSnapshot: SNR values must be positive and finite");
    }

    int users() const { return static_cast<int>(channels.size()); }
    int elements() const { return static_cast<int>(channels.front().size()); }
};

struct SinrReport
{
    std::vector<double> per_user_sinr; // linear
    std::vector<double> per_user_rate; // bits/s/Hz
    Beamformer beamformer;
};

inline double rate_from_sinr(double sinr)
{
    if (sinr < 0.0)
        throw validation_error("rate_from_sinr: SINR must be nonnegative");
    return std::log2(1.0 + sinr);
}

// Solve A x = b for Hermitian positive definite A via LDLT. Refuses systems
// whose condition estimate (from the pivot spread) exceeds 1e12.
inline Eigen::VectorXcd hermitian_solve(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &b)
{
    if (A.rows() != A.cols() || A.rows() != b.size())
        throw validation_error("hermitian_solve: dimension mismatch");
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    Eigen::VectorXd d = ldlt.vectorD().real();
    double dmax = d.maxCoeff(), dmin = d.minCoeff();
    double cond = (dmin > 0.0) ? dmax / dmin : std::numeric_limits<double>::infinity();
    if (!(dmin > 0.0) || cond > 1e12 || ldlt.info() != Eigen::Success)
        throw singular_matrix_error("hermitian_solve: matrix singular or ill-conditioned "
                                    "(condition estimate " + std::to_string(cond) + ")",
                                    cond);
    return ldlt.solve(b);
}

namespace detail
{

inline double sinr_mrc_user(const UplinkSnapshot &s, int k)
{
    const cvec &hk = s.channels[k];
    double nk2 = hk.squaredNorm();
    if (nk2 < 1e-300)
        throw degenerate_channel_error("sinr_mrc: zero-norm channel for user " + std::to_string(k));
    double interference = 0.0;
    for (int i = 0; i < s.users(); i++)
        if (i != k)
            interference += s.snr[i] * std::norm(hk.dot(s.channels[i]));
    return s.snr[k] * nk2 / (interference / nk2 + 1.0);
}

inline double sinr_zf_user(const UplinkSnapshot &s, int k)
{
    int K = s.users(), M = s.elements();
    if (K - 1 >= M)
        throw validation_error("sinr_zf: ZF needs K-1 < M (K=" + std::to_string(K) +
                               ", M=" + std::to_string(M) + ")");
    const cvec &hk = s.channels[k];
    double nk2 = hk.squaredNorm();
    if (nk2 < 1e-300)
        throw degenerate_channel_error("sinr_zf: zero-norm channel for user " + std::to_string(k));
    if (K == 1)
        return s.snr[k] * nk2;

    Eigen::MatrixXcd Hbar(M, K - 1);
    int c = 0;
    for (int i = 0; i < K; i++)
        if (i != k)
            Hbar.col(c++) = s.channels[i];
    Eigen::MatrixXcd gram = Hbar.adjoint() * Hbar;
    Eigen::VectorXcd rhs = Hbar.adjoint() * hk;
    Eigen::VectorXcd x;
    try
    {
        x = hermitian_solve(gram, rhs);
    }
    catch (const singular_matrix_error &e)
    {
        throw singular_matrix_error("sinr_zf: interferer matrix of user " + std::to_string(k) +
                                    " is rank deficient or ill-conditioned: " + e.what(),
                                    e.cond);
    }
    double g = nk2 - rhs.dot(x).real(); // h_k^H (I - P) h_k, real by construction
    return s.snr[k] * std::max(g, 0.0);
}

inline double sinr_mmse_user(const UplinkSnapshot &s, int k)
{
    int K = s.users(), M = s.elements();
    const cvec &hk = s.channels[k];
    if (hk.squaredNorm() < 1e-300)
        throw degenerate_channel_error("sinr_mmse: zero-norm channel for user " + std::to_string(k));
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Identity(M, M);
    for (int i = 0; i < K; i++)
        if (i != k)
            C.noalias() += s.snr[i] * (s.channels[i] * s.channels[i].adjoint());
    Eigen::VectorXcd x = Eigen::LLT<Eigen::MatrixXcd>(C).solve(hk);
    return s.snr[k] * std::max(hk.dot(x).real(), 0.0);
}

inline double sinr_user(const UplinkSnapshot &s, int k, Beamformer b)
{
    switch (b)
    {
    case Beamformer::MRC:
        return sinr_mrc_user(s, k);
    case Beamformer::ZF:
        return sinr_zf_user(s, k);
    default:
        return sinr_mmse_user(s, k);
    }
}

inline SinrReport report(const UplinkSnapshot &s, Beamformer b)
{
    s.validate();
    SinrReport r;
    r.beamformer = b;
    r.per_user_sinr.reserve(s.users());
    r.per_user_rate.reserve(s.users());
    for (int k = 0; k < s.users(); k++)
    {
        double g = sinr_user(s, k, b);
        r.per_user_sinr.push_back(g);
        r.per_user_rate.push_back(rate_from_sinr(g));
    }
    return r;
}

} // namespace detail

inline SinrReport sinr_mrc(const UplinkSnapshot &s) { return detail::report(s, Beamformer::MRC); }
inline SinrReport sinr_zf(const UplinkSnapshot &s) { return detail::report(s, Beamformer::ZF); }
inline SinrReport sinr_mmse(const UplinkSnapshot &s) { return detail::report(s, Beamformer::MMSE); }

} // namespace sula

#endif
