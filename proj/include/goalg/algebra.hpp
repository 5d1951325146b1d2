#pragma once

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace goalg {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Basis generators of go(n). Names follow the operator they are built from:
// AdXsq/AdYsq are ad of the squeezing Hamiltonians X = (xp+px)/2 and Y = (x^2-p^2)/2.
enum class Kind {
    AdX,       // ad_x
    AdP,       // ad_p
    AdN,       // ad_N, N = (x^2+p^2)/2
    AdXsq,     // ad_X
    AdYsq,     // ad_Y
    AdNplus,   // ad of (a_i^+ a_j + a_j^+ a_i)/2
    AdNminus,  // ad of i(a_i^+ a_j - a_j^+ a_i)/2
    AdXij,     // ad of i(a_i^+ a_j^+ - a_i a_j)/2
    AdYij,     // ad of (a_i^+ a_j^+ + a_i a_j)/2
    LppXX,     // L+ x_i x_j (i == j allowed as single-mode)
    LppPP,     // L+ p_i p_j
    LppXP,     // L+ x_i p_j, ordered pair
    LmXP,      // L- x_i p_j, ordered pair
    LmXX,      // L- x_i x_j, i < j
    LmPP,      // L- p_i p_j, i < j
};

// Single-mode kinds use j = -1. Mixed x/p kinds on two modes are keyed by the
// ordered pair (i, j) meaning the operator pair (x_i, p_j); every other
// two-mode kind needs i < j.
struct GeneratorId {
    Kind kind;
    int i = 0;
    int j = -1;

    bool single() const { return j < 0; }
    auto operator<=>(const GeneratorId&) const = default;
};

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& s);
std::string to_string(const GeneratorId& id);

// Throws ValidationError when the id is not a basis element of go(n).
void validate(const GeneratorId& id, int n);

// Every basis element of go(n) in a fixed order: per mode the nine single-mode
// generators, then per pair i<j the twelve two-mode generators.
std::vector<GeneratorId> basis(int n);

struct GoElement {
    int n = 1;
    std::map<GeneratorId, double> coeffs;

    GoElement() = default;
    explicit GoElement(int modes) : n(modes) {}

    static GoElement unit(int n, GeneratorId id, double c = 1.0);

    double coeff(const GeneratorId& id) const;
    GoElement& add(const GeneratorId& id, double c);

    GoElement operator+(const GoElement& o) const;
    GoElement operator-(const GoElement& o) const;
    GoElement operator*(double s) const;

    // Drops exact zeros.
    GoElement pruned() const;
    bool operator==(const GoElement& o) const;
    bool is_finite() const;
};

inline GoElement operator*(double s, const GoElement& g) { return g * s; }

// Moment equations d<zeta>/dt = gamma_M <zeta> + gamma_v and
// d sigma/dt = gamma_M sigma + sigma gamma_M^T + 2 gamma_D, zeta = (x_1..x_n, p_1..p_n).
struct GeneratorMatrices {
    Mat gamma_M;
    Mat gamma_D;
    Vec gamma_v;

    int n() const { return static_cast<int>(gamma_v.size() / 2); }
    static GeneratorMatrices zero(int n);
};

GeneratorMatrices to_matrices(const GoElement& g);
GoElement from_matrices(const GeneratorMatrices& m);

GeneratorMatrices bracket(const GeneratorMatrices& a, const GeneratorMatrices& b);
GoElement bracket(const GoElement& a, const GoElement& b);

// Symplectic form in zeta ordering, [[0, I], [-I, 0]].
Mat omega(int n);

struct MinkowskiVector {
    double dtau = 0.0;
    double dx = 0.0;
    double dy = 0.0;
};

enum class LorentzPlane { XY, TauX, TauY };

GoElement poincare_to_go(const MinkowskiVector& t);
GoElement lorentz_to_go(LorentzPlane plane, double angle);

// Common single-mode elements.
namespace elements {
GoElement damping(int n = 1, int mode = 0, double rate = 1.0);  // 1/4 L+xx + 1/4 L+pp - 1/2 L-xp
GoElement heating(int n = 1, int mode = 0, double rate = 1.0);  // 1/4 L+xx + 1/4 L+pp + 1/2 L-xp
GoElement rotation(int n = 1, int mode = 0, double rate = 1.0); // ad_N
}  // namespace elements

}  // namespace goalg
