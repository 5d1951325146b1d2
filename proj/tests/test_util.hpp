#pragma once

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>

#include "goalg/algebra.hpp"
#include "goalg/gaussian_states.hpp"
#include "goalg/rng.hpp"

namespace tu {

using goalg::GeneratorId;
using goalg::GoElement;
using goalg::Kind;

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Every basis coefficient drawn independently.
inline GoElement random_element(goalg::CounterRng& rng, int n, double scale = 1.0) {
    GoElement g(n);
    for (const auto& id : goalg::basis(n)) g.add(id, scale * rng.normal());
    return g;
}

// Same but with coefficients that are exact multiples of 2^-8 in [-4, 4).
inline GoElement random_dyadic(goalg::CounterRng& rng, int n) {
    GoElement g(n);
    for (const auto& id : goalg::basis(n)) g.add(id, rng.dyadic(-4.0, 4.0));
    return g;
}

// Element with only Hamiltonian (ad) generators.
inline GoElement random_hamiltonian(goalg::CounterRng& rng, int n, double scale = 1.0) {
    GoElement g(n);
    for (const auto& id : goalg::basis(n)) {
        switch (id.kind) {
            case Kind::LppXX: case Kind::LppPP: case Kind::LppXP: case Kind::LmXP:
            case Kind::LmXX: case Kind::LmPP: break;
            default: g.add(id, scale * rng.normal());
        }
    }
    return g;
}

// Generator of the element whose Kossakowski matrix over (x_1..x_n, p_1..p_n) is gamma.
inline GoElement from_kossakowski(const Eigen::MatrixXcd& gamma, int n) {
    GoElement g(n);
    auto mode = [n](int r) { return r % n; };
    auto is_p = [n](int r) { return r >= n; };
    for (int r = 0; r < 2 * n; ++r) {
        for (int s = r; s < 2 * n; ++s) {
            const int i = mode(r), j = mode(s);
            if (r == s) {
                g.add({is_p(r) ? Kind::LppPP : Kind::LppXX, i, -1}, 0.5 * gamma(r, r).real());
                continue;
            }
            const double re = gamma(r, s).real();
            const double im = -gamma(r, s).imag();
            if (!is_p(r) && is_p(s)) {
                const int jj = (i == j) ? -1 : j;
                g.add({Kind::LppXP, i, jj}, re);
                g.add({Kind::LmXP, i, jj}, im);
            } else if (!is_p(r)) {
                g.add({Kind::LppXX, i, j}, re);
                g.add({Kind::LmXX, i, j}, im);
            } else {
                g.add({Kind::LppPP, i, j}, re);
                g.add({Kind::LmPP, i, j}, im);
            }
        }
    }
    return g.pruned();
}

inline Eigen::MatrixXcd random_psd(goalg::CounterRng& rng, int dim, int rank, double scale) {
    Eigen::MatrixXcd b(dim, rank);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < rank; ++c) b(r, c) = {rng.normal(), rng.normal()};
    return scale * b * b.adjoint();
}

// CP generator: random Hamiltonian plus a dissipator with PSD Kossakowski matrix.
inline GoElement random_cp(goalg::CounterRng& rng, int n, double ham_scale = 0.5, double diss_scale = 0.25,
                           int rank = -1) {
    if (rank < 0) rank = 2 * n;
    return random_hamiltonian(rng, n, ham_scale) + from_kossakowski(random_psd(rng, 2 * n, rank, diss_scale), n);
}

// Gaussian state obtained from a thermal state by a random symplectic map and displacement.
inline goalg::GaussianState random_state(goalg::CounterRng& rng, int n, double spread = 0.5) {
    Eigen::MatrixXd h(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < 2 * n; ++c) h(r, c) = rng.normal();
    h = (spread * 0.5 * (h + h.transpose())).eval();
    // exp(Omega h) is symplectic for symmetric h.
    const Eigen::MatrixXd S = (goalg::omega(n) * h).exp();
    Eigen::MatrixXd th = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int m = 0; m < n; ++m) th(m, m) = th(n + m, n + m) = 0.5 + rng.uniform(0.05, 1.0);
    goalg::GaussianState s;
    s.sigma = S * th * S.transpose();
    s.sigma = 0.5 * (s.sigma + s.sigma.transpose()).eval();
    s.d = Eigen::VectorXd(2 * n);
    for (int i = 0; i < 2 * n; ++i) s.d(i) = rng.normal();
    return s;
}

}  // namespace tu
