#pragma once

#include <string>
#include <vector>

#include "goalg/propagator.hpp"

namespace goalg {

// sigma_ij = <{z_i, z_j}>/2 - <z_i><z_j>, vacuum sigma = I/2.
struct GaussianState {
    Mat sigma;
    Vec d;

    int n() const { return static_cast<int>(d.size() / 2); }
    static GaussianState vacuum(int n);
    static GaussianState thermal(int n, double nbar);
};

void check_shape(const GaussianState& s);
std::vector<double> symplectic_eigenvalues(const Mat& sigma);
bool is_physical(const GaussianState& s, double tol = 1e-10);

GaussianState apply_channel(const ChannelRep& e, const GaussianState& s);

struct WilliamsonForm {
    Mat S;
    std::vector<double> nu;
    // ln((nbar+1)/nbar), +infinity for a pure mode (nu == 1/2).
    std::vector<double> beta;
};

// sigma = S diag(nu, nu) S^T. Each mode's 2x2 diagonal block of S is made
// symmetric with positive trace, which fixes S uniquely for one mode.
WilliamsonForm williamson(const GaussianState& s, double tol = 1e-10);

Mat symplectic_inverse(const Mat& S);

struct ConnectSegment {
    std::string label;
    ChannelRep channel;
    // Set for segments generated by a go(n) element run for `duration`.
    bool has_generator = false;
    GoElement generator;
    double duration = 0.0;
};

struct ConnectResult {
    ChannelRep channel;
    std::vector<ConnectSegment> segments;
    double sigma_residual = 0.0;
    double d_residual = 0.0;
    // True when some target mode had beta above beta_cap and was approximated.
    bool capped = false;
};

ConnectResult connect_states(const GaussianState& from, const GaussianState& to,
                             double beta_cap = 30.0);

}  // namespace goalg
