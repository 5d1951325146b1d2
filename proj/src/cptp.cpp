#include "goalg/cptp.hpp"

#include <complex>

#include "goalg/errors.hpp"

namespace goalg {

namespace {

using cd = std::complex<double>;

double norm1(const CMat& m) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) best = std::max(best, m.col(c).cwiseAbs().sum());
    return best;
}

double min_eig(const CMat& h) {
    if (h.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    return es.eigenvalues()(0);
}

}  // namespace

CMat kossakowski_matrix(const GoElement& g) {
    const int n = g.n;
    CMat gm = CMat::Zero(2 * n, 2 * n);
    for (const auto& [id, c] : g.coeffs) {
        validate(id, n);
        const int i = id.i;
        const int j = id.single() ? id.i : id.j;
        int r = -1, s = -1;
        bool plus = true;
        switch (id.kind) {
            case Kind::LppXX: r = i; s = j; break;
            case Kind::LppPP: r = n + i; s = n + j; break;
            case Kind::LppXP: r = i; s = n + j; break;
            case Kind::LmXP: r = i; s = n + j; plus = false; break;
            case Kind::LmXX: r = i; s = j; plus = false; break;
            case Kind::LmPP: r = n + i; s = n + j; plus = false; break;
            default: continue;  // Hamiltonian parts carry no dissipation
        }
        if (plus) {
            if (r == s) {
                gm(r, r) += 2 * c;
            } else {
                gm(r, s) += c;
                gm(s, r) += c;
            }
        } else {
            gm(s, r) += cd(0, c);
            gm(r, s) -= cd(0, c);
        }
    }
    return gm;
}

CptpReport check_generator(const GoElement& g, double tol) {
    if (tol < 0) throw ValidationError("tolerance must be non-negative");
    CptpReport rep;
    rep.gamma_matrix = kossakowski_matrix(g);
    rep.min_eigenvalue = min_eig(rep.gamma_matrix);
    const double nrm = norm1(rep.gamma_matrix);
    rep.margin = nrm > 0 ? rep.min_eigenvalue / nrm : 0.0;
    rep.is_cp = rep.min_eigenvalue >= -tol * nrm;
    rep.is_tp = true;
    if (g.n == 1) {
        const double a = g.coeff({Kind::LppXX, 0});
        const double b = g.coeff({Kind::LppPP, 0});
        const double c = g.coeff({Kind::LppXP, 0});
        const double d = g.coeff({Kind::LmXP, 0});
        rep.closed_form_cp = (4 * a * b >= c * c + d * d) && (a + b >= 0);
    }
    return rep;
}

bool check_translation_cone(const MinkowskiVector& t) {
    return check_generator(poincare_to_go(t)).is_cp;
}

ChannelCpReport check_channel(const ChannelRep& e, double tol) {
    const int n = e.n();
    const Mat W = omega(n);
    const Mat mw = e.M * W * e.M.transpose();
    CMat h = (2.0 * e.D).cast<cd>() + cd(0, 0.5) * (W - mw).cast<cd>();
    h = 0.5 * (h + h.adjoint()).eval();
    ChannelCpReport rep;
    rep.min_eigenvalue = min_eig(h);
    const double scale = norm1((2.0 * e.D).cast<cd>()) + 0.5 * norm1(W.cast<cd>()) +
                         0.5 * norm1(mw.cast<cd>());
    rep.margin = rep.min_eigenvalue / scale;
    rep.is_cp = rep.min_eigenvalue >= -tol * scale;
    return rep;
}

}  // namespace goalg
