#include "goalg/gaussian_states.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "goalg/errors.hpp"

namespace goalg {

namespace {

using cd = std::complex<double>;

Mat sym_sqrt(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on covariance");
    Vec ev = es.eigenvalues();
    if (ev(0) <= 0) throw ValidationError("covariance matrix is not positive definite");
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

GaussianState GaussianState::vacuum(int n) { return thermal(n, 0.0); }

GaussianState GaussianState::thermal(int n, double nbar) {
    return {(nbar + 0.5) * Mat::Identity(2 * n, 2 * n), Vec::Zero(2 * n)};
}

void check_shape(const GaussianState& s) {
    const auto dim = s.d.size();
    if (dim == 0 || dim % 2 != 0) throw ValidationError("displacement must have even, nonzero length");
    if (s.sigma.rows() != dim || s.sigma.cols() != dim)
        throw ValidationError("sigma dimension does not match displacement");
    if (!s.sigma.allFinite() || !s.d.allFinite()) throw ValidationError("state has non-finite entries");
    const double asym = (s.sigma - s.sigma.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * std::max(1.0, s.sigma.cwiseAbs().maxCoeff()))
        throw ValidationError("sigma is not symmetric");
}

std::vector<double> symplectic_eigenvalues(const Mat& sigma) {
    const int n = static_cast<int>(sigma.rows() / 2);
    const Mat r = sym_sqrt(0.5 * (sigma + sigma.transpose()));
    const Eigen::MatrixXcd k = cd(0, 1) * (r * omega(n) * r).cast<cd>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k, Eigen::EigenvaluesOnly);
    std::vector<double> nu(n);
    for (int i = 0; i < n; ++i) nu[i] = es.eigenvalues()(n + i);
    return nu;
}

bool is_physical(const GaussianState& s, double tol) {
    check_shape(s);
    const int n = s.n();
    Eigen::MatrixXcd h = s.sigma.cast<cd>() + cd(0, 0.5) * omega(n).cast<cd>();
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) >= -tol * std::max(1.0, s.sigma.cwiseAbs().maxCoeff());
}

GaussianState apply_channel(const ChannelRep& e, const GaussianState& s) {
    check_shape(s);
    if (e.v.size() != s.d.size() || e.M.rows() != s.d.size() || e.M.cols() != s.d.size())
        throw ValidationError("channel and state dimensions differ");
    GaussianState out;
    Mat sg = e.M * s.sigma * e.M.transpose() + 2.0 * e.D;
    out.sigma = 0.5 * (sg + sg.transpose());
    out.d = e.M * s.d + e.v;
    return out;
}

Mat symplectic_inverse(const Mat& S) {
    const Mat W = omega(static_cast<int>(S.rows() / 2));
    return -W * S.transpose() * W;
}

WilliamsonForm williamson(const GaussianState& s, double tol) {
    check_shape(s);
    const int n = s.n();
    const Mat sigma = 0.5 * (s.sigma + s.sigma.transpose());
    const Mat r = sym_sqrt(sigma);

    // i R Omega R is Hermitian with eigenvalues +-nu. For an eigenvector u = c + i d of +nu,
    // A c = nu d and A d = -nu c, so (sqrt2 d, sqrt2 c) spans an (x, p) block [[0, nu], [-nu, 0]].
    const Eigen::MatrixXcd k = cd(0, 1) * (r * omega(n) * r).cast<cd>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed in williamson");

    WilliamsonForm wf;
    Mat O(2 * n, 2 * n);
    for (int m = 0; m < n; ++m) {
        const double nu = es.eigenvalues()(n + m);
        if (nu < 0.5 - tol) throw ValidationError("state is not physical: symplectic eigenvalue " +
                                                  std::to_string(nu) + " < 1/2");
        const Eigen::VectorXcd u = es.eigenvectors().col(n + m);
        O.col(m) = std::sqrt(2.0) * u.imag();
        O.col(n + m) = std::sqrt(2.0) * u.real();
        wf.nu.push_back(nu);
    }
    Mat S = r * O;
    for (int m = 0; m < n; ++m) {
        S.col(m) /= std::sqrt(wf.nu[m]);
        S.col(n + m) /= std::sqrt(wf.nu[m]);
    }
    // Gauge: rotate the (x_m, p_m) columns so the mode's diagonal block is symmetric.
    for (int m = 0; m < n; ++m) {
        const double a = S(m, m), b = S(m, n + m), c = S(n + m, m), d = S(n + m, n + m);
        const double th = std::atan2(b - c, a + d);
        const double cs = std::cos(th), sn = std::sin(th);
        const Vec cx = S.col(m), cp = S.col(n + m);
        S.col(m) = cs * cx + sn * cp;
        S.col(n + m) = -sn * cx + cs * cp;
    }
    wf.S = S;
    for (double nu : wf.nu) {
        const double nbar = nu - 0.5;
        wf.beta.push_back(nbar <= tol ? std::numeric_limits<double>::infinity()
                                      : std::log1p(1.0 / nbar));
    }
    return wf;
}

ConnectResult connect_states(const GaussianState& from, const GaussianState& to, double beta_cap) {
    check_shape(from);
    check_shape(to);
    if (from.n() != to.n()) throw ValidationError("states have different mode counts");
    if (!(beta_cap > 0) || !std::isfinite(beta_cap)) throw ValidationError("beta_cap must be positive and finite");
    const int n = from.n();
    const WilliamsonForm wa = williamson(from);
    const WilliamsonForm wb = williamson(to);

    ConnectResult res;
    ConnectSegment un;
    un.label = "unrotate";
    un.channel.M = symplectic_inverse(wa.S);
    un.channel.D = Mat::Zero(2 * n, 2 * n);
    un.channel.v = -un.channel.M * from.d;
    res.segments.push_back(un);

    const double nbar_cap = 1.0 / std::expm1(beta_cap);
    for (int m = 0; m < n; ++m) {
        const double n0 = std::max(0.0, wa.nu[m] - 0.5);
        double n1 = std::max(0.0, wb.nu[m] - 0.5);
        if (wb.beta[m] > beta_cap) {
            res.capped = true;
            // Pure target from a pure source needs no thermal step.
            n1 = (std::isinf(wb.beta[m]) && n0 == 0.0) ? 0.0 : nbar_cap;
        }
        if (n1 == n0) continue;
        ConnectSegment seg;
        seg.has_generator = true;
        if (n1 > n0) {
            seg.label = "heat mode " + std::to_string(m);
            seg.generator = elements::heating(n, m);
            seg.duration = std::log((n1 + 1) / (n0 + 1));
        } else {
            seg.label = "cool mode " + std::to_string(m);
            seg.generator = elements::damping(n, m);
            seg.duration = std::log(n0 / n1);
        }
        seg.channel = evolve_const(seg.generator, seg.duration);
        res.segments.push_back(seg);
    }

    ConnectSegment re;
    re.label = "rotate";
    re.channel.M = wb.S;
    re.channel.D = Mat::Zero(2 * n, 2 * n);
    re.channel.v = to.d;
    res.segments.push_back(re);

    res.channel = ChannelRep::identity(n);
    for (const auto& s : res.segments) res.channel = compose(s.channel, res.channel);
    const GaussianState got = apply_channel(res.channel, from);
    res.sigma_residual = (got.sigma - to.sigma).cwiseAbs().maxCoeff();
    res.d_residual = (got.d - to.d).cwiseAbs().maxCoeff();
    return res;
}

}  // namespace goalg
