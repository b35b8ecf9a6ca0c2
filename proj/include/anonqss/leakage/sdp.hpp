// Copyright 2026 The anonqss Authors
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

#ifndef ANONQSS_LEAKAGE_SDP_HPP
#define ANONQSS_LEAKAGE_SDP_HPP

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <limits>
#include <sstream>

#include "anonqss/core/linalg.hpp"

// Dense primal-dual interior-point solver for the operator-dominance program
//
//   dual:    minimize Tr σ        s.t.  I_K ⊗ σ ⪰ ρ
//   primal:  maximize Tr(ρ X)     s.t.  Tr_R X = I,  X ⪰ 0
//
// with ρ on R ⊗ E (R is the K-dimensional leading factor). Search directions
// are HKM with a Mehrotra predictor-corrector; the Schur system is a Hermitian
// positive definite operator on E-matrices.

namespace anonqss {

struct SdpOptions {
    double feasibility_tol = 1e-9;
    double gap_tol = 1e-8;
    double certificate_gap = 1e-7;
    int max_iterations = 200;
    double step_fraction = 0.98;
    double support_cutoff = 1e-12;
};

struct SdpSolution {
    double primal = 0;  // Tr(ρ X) of the certified primal point
    double dual = 0;    // Tr σ of the certified dual point
    double gap = 0;     // dual - primal
    int iterations = 0;
    ComplexMatrix X;      // primal point on R ⊗ E (full E)
    ComplexMatrix sigma;  // dual point on E (full E)
};

/// Raised when the iteration cap is hit; carries the best certified bounds.
struct SolverError : std::runtime_error {
    double lower;
    double upper;
    SolverError(const std::string &msg, double lo, double hi) : std::runtime_error(msg), lower(lo), upper(hi) {}
};

namespace sdp_detail {

inline ComplexMatrix herm(const ComplexMatrix &m) { return 0.5 * (m + m.adjoint()); }

/// Tr_R of an operator on R ⊗ E with R the leading factor.
inline ComplexMatrix trace_ref(const ComplexMatrix &y, Eigen::Index k, Eigen::Index m) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (Eigen::Index r = 0; r < k; r++) out += y.block(r * m, r * m, m, m);
    return out;
}

/// I_K ⊗ s.
inline ComplexMatrix lift_ref(const ComplexMatrix &s, Eigen::Index k) {
    Eigen::Index m = s.rows();
    ComplexMatrix out = ComplexMatrix::Zero(k * m, k * m);
    for (Eigen::Index r = 0; r < k; r++) out.block(r * m, r * m, m, m) = s;
    return out;
}

/// Largest α with x + α d ⪰ 0, for x ≻ 0 (infinity if unbounded).
inline double max_step(const ComplexMatrix &x, const ComplexMatrix &d) {
    Eigen::LLT<ComplexMatrix> llt(x);
    if (llt.info() != Eigen::Success) {
        return 0;
    }
    ComplexMatrix li_d = llt.matrixL().solve(d);
    ComplexMatrix s = llt.matrixL().solve(li_d.adjoint());
    double lmin = HermitianEigen(s).values.minCoeff();
    return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

inline double min_eigenvalue(const ComplexMatrix &m) { return HermitianEigen(m).values.minCoeff(); }

inline ComplexMatrix inverse_sqrt(const ComplexMatrix &m) {
    return hermitian_function(m, [](double v) { return 1.0 / std::sqrt(v); });
}

struct Certificate {
    double primal, dual;
    ComplexMatrix X, sigma;
};

/// Repairs an approximate (X, y) into exactly feasible points.
inline Certificate certify(const ComplexMatrix &rho, const ComplexMatrix &x, const ComplexMatrix &y, Eigen::Index k) {
    Eigen::Index m = y.rows();
    Certificate c;
    ComplexMatrix t = herm(trace_ref(x, k, m));
    ComplexMatrix ti = lift_ref(inverse_sqrt(t), k);
    c.X = herm(ti * x * ti);
    c.primal = (rho * c.X).trace().real();
    ComplexMatrix ys = herm(y);
    double shift = std::max(0.0, -min_eigenvalue(lift_ref(ys, k) - rho));
    c.sigma = ys + shift * ComplexMatrix::Identity(m, m);
    c.dual = c.sigma.trace().real();
    return c;
}

}  // namespace sdp_detail

/// Solves the program for ρ on C^K ⊗ C^m (row/column index r*m + e).
inline SdpSolution solve_operator_dominance(const ComplexMatrix &rho_in, std::size_t ref_dim,
                                            const SdpOptions &opt = {}) {
    using namespace sdp_detail;
    const Eigen::Index k = static_cast<Eigen::Index>(ref_dim);
    if (rho_in.rows() != rho_in.cols() || rho_in.rows() % k != 0) {
        throw std::invalid_argument("operator size is not a multiple of the reference dimension");
    }
    const Eigen::Index m_full = rho_in.rows() / k;
    ComplexMatrix rho_full = herm(rho_in);

    // Restrict E to the support of ρ_E; exact because ρ lives on R ⊗ supp(ρ_E).
    ComplexMatrix basis = support_basis(trace_ref(rho_full, k, m_full), opt.support_cutoff);
    const Eigen::Index m = basis.cols();
    SdpSolution sol;
    if (m == 0) {
        sol.X = ComplexMatrix::Zero(k * m_full, k * m_full);
        sol.X.topLeftCorner(m_full, m_full).setIdentity();
        sol.sigma = ComplexMatrix::Zero(m_full, m_full);
        return sol;
    }
    ComplexMatrix lift_v = ComplexMatrix::Zero(k * m_full, k * m);
    for (Eigen::Index r = 0; r < k; r++) lift_v.block(r * m_full, r * m, m_full, m) = basis;
    const ComplexMatrix rho = herm(lift_v.adjoint() * rho_full * lift_v);
    const Eigen::Index n = k * m;
    const ComplexMatrix eye_m = ComplexMatrix::Identity(m, m);
    const double rho_norm = rho.norm();

    ComplexMatrix x = ComplexMatrix::Identity(n, n) / static_cast<double>(k);
    ComplexMatrix y = (HermitianEigen(rho).values.maxCoeff() + 1.0) * eye_m;
    ComplexMatrix z = herm(lift_ref(y, k) - rho);

    double best_lo = -std::numeric_limits<double>::infinity();
    double best_hi = std::numeric_limits<double>::infinity();
    auto finish = [&](const Certificate &c, int it) {
        sol.primal = c.primal;
        sol.dual = c.dual;
        sol.gap = c.dual - c.primal;
        sol.iterations = it;
        sol.sigma = basis * c.sigma * basis.adjoint();
        ComplexMatrix complement = ComplexMatrix::Identity(m_full, m_full) - basis * basis.adjoint();
        sol.X = lift_v * c.X * lift_v.adjoint();
        sol.X.topLeftCorner(m_full, m_full) += herm(complement);
        return sol;
    };

    for (int it = 0; it <= opt.max_iterations; it++) {
        ComplexMatrix rp = eye_m - trace_ref(x, k, m);
        ComplexMatrix rd = lift_ref(y, k) - z - rho;
        double pobj = (rho * x).trace().real();
        double dobj = y.trace().real();
        double mu = (x * z).trace().real() / static_cast<double>(n);

        bool feasible = rp.norm() <= opt.feasibility_tol * (1 + std::sqrt(static_cast<double>(m))) &&
                        rd.norm() <= opt.feasibility_tol * (1 + rho_norm);
        bool small_gap = std::abs(dobj - pobj) <= opt.gap_tol * (1 + std::abs(pobj) + std::abs(dobj));
        if ((feasible && small_gap) || it == opt.max_iterations) {
            Eigen::LLT<ComplexMatrix> tchk(herm(trace_ref(x, k, m)));
            if (tchk.info() == Eigen::Success) {
                Certificate c = certify(rho, x, y, k);
                best_lo = std::max(best_lo, c.primal);
                best_hi = std::min(best_hi, c.dual);
                if (c.dual - c.primal <= opt.certificate_gap) {
                    return finish(c, it);
                }
            }
            if (it == opt.max_iterations) {
                break;
            }
        }

        Eigen::LLT<ComplexMatrix> zchol(z);
        if (zchol.info() != Eigen::Success) {
            break;
        }
        ComplexMatrix w = herm(zchol.solve(ComplexMatrix::Identity(n, n)));

        // Schur operator M(Δ) = ½ Σ_{r,t} (X_rt Δ W_tr + W_rt Δ X_tr), column-major vec.
        ComplexMatrix schur = ComplexMatrix::Zero(m * m, m * m);
        for (Eigen::Index r = 0; r < k; r++) {
            for (Eigen::Index t = 0; t < k; t++) {
                schur += kron(ComplexMatrix(w.block(t * m, r * m, m, m).transpose()), ComplexMatrix(x.block(r * m, t * m, m, m)));
                schur += kron(ComplexMatrix(x.block(t * m, r * m, m, m).transpose()), ComplexMatrix(w.block(r * m, t * m, m, m)));
            }
        }
        schur = herm(0.5 * schur);
        Eigen::LLT<ComplexMatrix> schur_llt(schur);
        bool use_lu = schur_llt.info() != Eigen::Success;
        Eigen::PartialPivLU<ComplexMatrix> schur_lu;
        if (use_lu) schur_lu.compute(schur);

        auto direction = [&](double target_mu, const ComplexMatrix *corr, ComplexMatrix &dx, ComplexMatrix &dy,
                             ComplexMatrix &dz) {
            ComplexMatrix g = target_mu * w - x - herm(x * rd * w);
            if (corr) g -= herm(*corr);
            ComplexMatrix rhs = trace_ref(g, k, m) - rp;
            Eigen::Map<const ComplexVector> rv(rhs.data(), m * m);
            ComplexVector sv = use_lu ? ComplexVector(schur_lu.solve(rv)) : ComplexVector(schur_llt.solve(rv));
            dy = herm(Eigen::Map<const ComplexMatrix>(sv.data(), m, m));
            dz = herm(lift_ref(dy, k) + rd);
            ComplexMatrix h = target_mu * w - x - x * dz * w;
            if (corr) h -= *corr;
            dx = herm(h);
        };

        ComplexMatrix dxp, dyp, dzp;
        direction(0.0, nullptr, dxp, dyp, dzp);
        double ap = std::min(1.0, max_step(x, dxp));
        double bp = std::min(1.0, max_step(z, dzp));
        double mu_aff = ((x + ap * dxp) * (z + bp * dzp)).trace().real() / static_cast<double>(n);
        double centering = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        ComplexMatrix corr = dxp * dzp * w;
        ComplexMatrix dx, dy, dz;
        direction(centering * mu, &corr, dx, dy, dz);
        double a = std::min(1.0, opt.step_fraction * max_step(x, dx));
        double b = std::min(1.0, opt.step_fraction * max_step(z, dz));
        if (!(a > 0) || !(b > 0)) {
            break;
        }
        x = herm(x + a * dx);
        y = herm(y + b * dy);
        z = herm(z + b * dz);
    }
    std::ostringstream msg;
    msg << "SDP did not converge within " << opt.max_iterations << " iterations; best bounds [" << best_lo << ", "
        << best_hi << "]";
    throw SolverError(msg.str(), best_lo, best_hi);
}

}  // namespace anonqss

#endif
