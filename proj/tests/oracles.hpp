#pragma once

// Reference computations for tests. Everything here works with dense
// density matrices in the Fock basis and the operator definitions directly,
// without the superoperator lifts of the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "goalg/algebra.hpp"

namespace oracle {

using cd = std::complex<double>;
using CM = Eigen::MatrixXcd;

struct Ops {
    int dim;
    CM a, ad, x, p, id;

    explicit Ops(int cutoff) : dim(cutoff + 1) {
        a = CM::Zero(dim, dim);
        for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
        ad = a.adjoint();
        x = (a + ad) / std::sqrt(2.0);
        p = cd(0, 1) * (ad - a) / std::sqrt(2.0);
        id = CM::Identity(dim, dim);
    }
};

// Right-hand side of the master equation for a single-mode element, built from
// ad_H = i[H, .], L+ and L- written out term by term and collected as
// K rho + rho K^+ + sum_jk c_jk A_j rho A_k with A = (x, p).
// The L- anticommutator uses the exact [p, x] = -i rather than the truncated
// commutator, whose top-level entry would pump population into level N.
class Lindblad {
public:
    Lindblad(const Ops& o, const goalg::GoElement& g) : o_(o) {
        const cd I(0, 1);
        const CM N = 0.5 * (o.x * o.x + o.p * o.p);
        const CM X = 0.5 * (o.x * o.p + o.p * o.x);
        const CM Y = 0.5 * (o.x * o.x - o.p * o.p);
        CM H = CM::Zero(o.dim, o.dim);
        K_ = CM::Zero(o.dim, o.dim);
        c_.setZero();
        const CM* A[2] = {&o.x, &o.p};
        auto plus = [&](int a, int b, double c) {
            c_(a, b) += c;
            c_(b, a) += c;
            K_ -= 0.5 * c * (*A[b] * *A[a] + *A[a] * *A[b]);
        };
        for (const auto& [id, c] : g.coeffs) {
            using goalg::Kind;
            switch (id.kind) {
                case Kind::AdX: H += c * o.x; break;
                case Kind::AdP: H += c * o.p; break;
                case Kind::AdN: H += c * N; break;
                case Kind::AdXsq: H += c * X; break;
                case Kind::AdYsq: H += c * Y; break;
                case Kind::LppXX: plus(0, 0, c); break;
                case Kind::LppPP: plus(1, 1, c); break;
                case Kind::LppXP: plus(0, 1, c); break;
                case Kind::LmXP:
                    // i x.p - i p.x - 1/2 {i[p, x], .} with i[p, x] = 1.
                    c_(0, 1) += I * c;
                    c_(1, 0) -= I * c;
                    K_ -= 0.5 * c * o.id;
                    break;
                default: throw std::logic_error("oracle handles single-mode elements only");
            }
        }
        K_ += I * H;
    }

    CM operator()(const CM& rho) const {
        CM out = K_ * rho + rho * K_.adjoint();
        const CM xr = o_.x * rho, pr = o_.p * rho;
        if (c_(0, 0) != 0.0) out += c_(0, 0) * (xr * o_.x);
        if (c_(1, 1) != 0.0) out += c_(1, 1) * (pr * o_.p);
        if (c_(0, 1) != 0.0) out += c_(0, 1) * (xr * o_.p);
        if (c_(1, 0) != 0.0) out += c_(1, 0) * (pr * o_.x);
        return out;
    }

private:
    const Ops& o_;
    CM K_;
    Eigen::Matrix2cd c_;
};

inline CM rk4(const Lindblad& L, CM rho, double t, double h) {
    const int steps = static_cast<int>(std::ceil(t / h - 1e-12));
    const double dt = t / steps;
    for (int s = 0; s < steps; ++s) {
        const CM k1 = L(rho);
        const CM k2 = L(rho + 0.5 * dt * k1);
        const CM k3 = L(rho + 0.5 * dt * k2);
        const CM k4 = L(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

inline CM fock_dm(int cutoff, int n) {
    CM r = CM::Zero(cutoff + 1, cutoff + 1);
    r(n, n) = 1.0;
    return r;
}

inline Eigen::VectorXcd coherent_ket(int cutoff, cd alpha) {
    Eigen::VectorXcd v(cutoff + 1);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k <= cutoff; ++k) v(k) = v(k - 1) * alpha / std::sqrt(static_cast<double>(k));
    return v;
}

inline CM cat_dm(int cutoff, cd alpha, int parity) {
    Eigen::VectorXcd v = coherent_ket(cutoff, alpha) + static_cast<double>(parity) * coherent_ket(cutoff, -alpha);
    v.normalize();
    return v * v.adjoint();
}

inline CM thermal_dm(int cutoff, double nbar) {
    CM r = CM::Zero(cutoff + 1, cutoff + 1);
    const double q = nbar / (nbar + 1.0);
    for (int k = 0; k <= cutoff; ++k) r(k, k) = std::pow(q, k) / (nbar + 1.0);
    return r;
}

struct Moments {
    Eigen::Vector2d mean;
    Eigen::Matrix2d cov;
};

inline Moments moments(const Ops& o, const CM& rho) {
    auto ev = [&](const CM& A) { return (rho * A).trace().real(); };
    Moments m;
    m.mean << ev(o.x), ev(o.p);
    const double sxx = ev(o.x * o.x) - m.mean(0) * m.mean(0);
    const double spp = ev(o.p * o.p) - m.mean(1) * m.mean(1);
    const double sxp = 0.5 * ev(o.x * o.p + o.p * o.x) - m.mean(0) * m.mean(1);
    m.cov << sxx, sxp, sxp, spp;
    return m;
}

// Wigner function of rho at (x, p) by the iterative Laguerre scheme, with
// A = (x + i p)/sqrt2 so that a coherent |alpha> peaks at sqrt2 (Re alpha, Im alpha).
inline double wigner(const CM& rho, double x, double p) {
    const int M = static_cast<int>(rho.rows());
    const cd A = cd(x, p) / std::sqrt(2.0);
    std::vector<cd> w(M);
    w[0] = std::exp(-2.0 * std::norm(A)) / std::numbers::pi;
    double W = rho(0, 0).real() * w[0].real();
    for (int n = 1; n < M; ++n) {
        w[n] = 2.0 * A * w[n - 1] / std::sqrt(static_cast<double>(n));
        W += 2.0 * (rho(0, n) * w[n]).real();
    }
    for (int m = 1; m < M; ++m) {
        cd temp = w[m];
        w[m] = (2.0 * std::conj(A) * temp - std::sqrt(static_cast<double>(m)) * w[m - 1]) /
               std::sqrt(static_cast<double>(m));
        W += (rho(m, m) * w[m]).real();
        for (int n = m + 1; n < M; ++n) {
            const cd t2 = (2.0 * A * w[n - 1] - std::sqrt(static_cast<double>(m)) * temp) /
                          std::sqrt(static_cast<double>(n));
            temp = w[n];
            w[n] = t2;
            W += 2.0 * (rho(m, n) * w[n]).real();
        }
    }
    return W;
}

// Parity form at the origin: W(0,0) = sum_n (-1)^n rho_nn / pi.
inline double wigner_origin(const CM& rho) {
    double s = 0.0;
    for (int k = 0; k < rho.rows(); ++k) s += (k % 2 ? -1.0 : 1.0) * rho(k, k).real();
    return s / std::numbers::pi;
}

}  // namespace oracle
