#pragma once

#include <Eigen/Dense>
#include <optional>

#include "goalg/algebra.hpp"
#include "goalg/propagator.hpp"

namespace goalg {

using CMat = Eigen::MatrixXcd;

struct CptpReport {
    bool is_tp = true;
    bool is_cp = true;
    // Kossakowski matrix over (x_1..x_n, p_1..p_n): the dissipator is
    // sum_jk gamma_jk (zeta_k . zeta_j - 1/2 {zeta_j zeta_k, .}).
    CMat gamma_matrix;
    double min_eigenvalue = 0.0;
    // min_eigenvalue / ||gamma||_1, 0 for a purely Hamiltonian generator.
    double margin = 0.0;
    // n = 1 only: the closed-form inequalities 4 a b >= c^2 + d^2, a + b >= 0.
    std::optional<bool> closed_form_cp;
};

constexpr double kDefaultCpTol = 1e-10;

CMat kossakowski_matrix(const GoElement& g);
CptpReport check_generator(const GoElement& g, double tol = kDefaultCpTol);
bool check_translation_cone(const MinkowskiVector& t);

struct ChannelCpReport {
    bool is_cp = true;
    double min_eigenvalue = 0.0;
    double margin = 0.0;
};

// Gaussian channel physicality: 2D + (i/2)(Omega - M Omega M^T) >= 0.
ChannelCpReport check_channel(const ChannelRep& e, double tol = kDefaultCpTol);

}  // namespace goalg
