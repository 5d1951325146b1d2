#pragma once

#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "goalg/algebra.hpp"

namespace goalg {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using CVec = Eigen::VectorXcd;
using CMatD = Eigen::MatrixXcd;

// Truncated Fock space of n modes, levels 0..cutoff per mode. Mode 0 is the
// most significant factor of the tensor product.
struct FockSpace {
    int cutoff = 4;
    int n = 1;

    int levels() const { return cutoff + 1; }
    int dim() const;       // Hilbert space dimension (cutoff+1)^n
    int super_dim() const; // dim()^2

    SpMat identity() const;
    SpMat annihilation(int mode) const;
    SpMat creation(int mode) const;
    SpMat x(int mode) const;  // (a + a^+)/sqrt2
    SpMat p(int mode) const;  // i(a^+ - a)/sqrt2

    // Occupation of `mode` in the Hilbert basis index.
    int occupation(int index, int mode) const;
};

// Superoperator on column-stacked vec(rho), vec(A rho B) = (B^T kron A) vec(rho).
struct FockSuperOp {
    FockSpace space;
    SpMat matrix;
};

SpMat left_mul(const FockSpace& fs, const SpMat& a);
SpMat right_mul(const FockSpace& fs, const SpMat& b);
SpMat ad(const FockSpace& fs, const SpMat& h);       // i[h, .]
SpMat anti_ad(const FockSpace& fs, const SpMat& o);  // {o, .}
SpMat l_plus(const FockSpace& fs, const SpMat& o1, const SpMat& o2);
SpMat l_minus(const FockSpace& fs, const SpMat& o1, const SpMat& o2);

FockSuperOp lift(const GoElement& g, int cutoff);
SpMat lift_generator(const FockSpace& fs, const GeneratorId& id);

// Basis of the extended single-mode algebra. LmXPShifted is L-_xp plus
// `shift` times the identity superoperator.
enum class EgoId {
    AdX, AdP, AdN, AdXsq, AdYsq, LppXX, LppPP, LppXP, LmXPShifted,
    AntiX, AntiP, AntiXX, AntiXP, AntiPP,
};

// Scalar that makes {Y_i, Y_j}/2 land in the span (see verify_osp14).
constexpr double kEgoShift = 1.0;

FockSuperOp lift(EgoId id, int cutoff, double shift = kEgoShift);
std::string ego_name(EgoId id);

// vec(rho) index is col * dim + row. A vec index is interior when every
// mode occupation of both row and column is <= cutoff - k.
std::vector<char> interior_mask(const FockSpace& fs, int k);

CVec vectorize(const CMatD& rho);
CMatD unvectorize(const CVec& v, int dim);

// max |a - b| over interior rows and columns.
double interior_residual(const SpMat& a, const SpMat& b, const std::vector<char>& mask);
double interior_max_abs(const SpMat& a, const std::vector<char>& mask);
double interior_max_abs(const CVec& v, const std::vector<char>& mask);

struct VerifyRow {
    std::string name;
    double residual = 0.0;
    bool pass = true;
};

struct VerifyReport {
    std::string suite;
    int cutoff = 0;
    int interior = 0;
    double threshold = 0.0;
    double max_residual = 0.0;
    bool pass = true;
    std::vector<VerifyRow> rows;

    void add(const std::string& name, double residual);
};

// Relative residual per pair: |commutator - lift(bracket)| / max(1, |commutator|).
VerifyReport verify_structure_constants(int n, int cutoff, int k_interior = 4);
VerifyReport verify_kg_dirac(int cutoff, int trials, std::uint64_t seed = 1, int k_interior = 4);
VerifyReport verify_super_poincare(int cutoff, int k_interior = 4);
VerifyReport verify_osp14(int cutoff, int k_interior = 4);
// Sign pattern (-1)^(m-l) on every matrix unit |l><m|, compared exactly.
VerifyReport rotation_parity(int cutoff);

// Residual of the X_{2,-2} identification when the shift on L-_xp is `shift`.
double osp_identification_residual(int cutoff, int k_interior, double shift);

}  // namespace goalg
