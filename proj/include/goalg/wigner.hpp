#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "goalg/gaussian_states.hpp"
#include "goalg/propagator.hpp"

namespace goalg {

struct Axis {
    double min = -6.0;
    double max = 6.0;
    int points = 121;

    double spacing() const { return (max - min) / (points - 1); }
    double at(int i) const { return min + i * spacing(); }
};

void validate_axis(const Axis& a, const std::string& what);

// Single-mode grid over (x, p); values[ix * p.points + ip].
struct WignerGrid {
    int n_modes = 1;
    Axis x;
    Axis p;
    std::vector<double> values;
    bool normalized = false;
    std::vector<std::string> warnings;
    // Filled by push_forward.
    double mass_before = 0.0;
    double mass_after = 0.0;
    int skipped_directions = 0;
    bool delta_limit = false;

    double& at(int ix, int ip) { return values[static_cast<size_t>(ix) * p.points + ip]; }
    double at(int ix, int ip) const { return values[static_cast<size_t>(ix) * p.points + ip]; }
    double cell() const { return x.spacing() * p.spacing(); }
    double mass() const;
    // Bilinear interpolation, zero outside the grid.
    double sample(double xv, double pv) const;
};

struct StateSpec {
    enum class Kind { Vacuum, Coherent, Squeezed, Fock, Cat, GaussianFrom };
    Kind kind = Kind::Vacuum;
    std::complex<double> alpha{0.0, 0.0};  // Coherent, Cat
    double r = 0.0;                        // Squeezed
    double phi = 0.0;                      // Squeezed
    int n = 0;                             // Fock
    int parity = 1;                        // Cat: +1 even, -1 odd
    GaussianState gaussian;                // GaussianFrom

    static StateSpec vacuum();
    static StateSpec coherent(std::complex<double> a);
    // Vacuum squeezed by exp(r cos(phi) ad_X - r sin(phi) ad_Y); phi = 0 narrows x.
    static StateSpec squeezed(double r, double phi);
    static StateSpec fock(int n);
    static StateSpec cat(std::complex<double> a, int parity);
    static StateSpec gaussian_from(const GaussianState& s);
};

// Covariance and mean of a Gaussian StateSpec (Vacuum, Coherent, Squeezed, GaussianFrom).
GaussianState gaussian_of(const StateSpec& s);
double wigner_value(const StateSpec& s, double x, double p);

WignerGrid render(const StateSpec& s, const Axis& x, const Axis& p);

struct PushOptions {
    // Accept the all-zero channel M = 0 and render the limiting point mass.
    bool allow_delta = false;
};

WignerGrid push_forward(const ChannelRep& e, const WignerGrid& w, const PushOptions& opts = {});

struct Moments {
    double mass = 0.0;
    Vec mean;
    Mat cov;
};
Moments grid_moments(const WignerGrid& w);

// Relative L2 distance between w and the Gaussian with the same mass, mean and covariance.
double gaussianity_check(const WignerGrid& w);

// W(x, p) -> W(x, p - kappa x^2): a non-Gaussian shear used as a negative control.
WignerGrid cubic_shear(const WignerGrid& w, double kappa);

std::string to_wgrd(const WignerGrid& w);
WignerGrid from_wgrd(const std::string& bytes);
std::string to_csv(const WignerGrid& w);
// Binary P5 heatmap: columns follow x, rows run from p max (top) to p min.
std::string to_pgm(const WignerGrid& w);

}  // namespace goalg
