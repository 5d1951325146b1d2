#include "goalg/propagator.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "goalg/errors.hpp"

namespace goalg {

ChannelRep ChannelRep::identity(int n) {
    return {Mat::Identity(2 * n, 2 * n), Mat::Zero(2 * n, 2 * n), Vec::Zero(2 * n)};
}

bool ChannelRep::is_finite() const {
    return M.allFinite() && D.allFinite() && v.allFinite();
}

ChannelRep compose(const ChannelRep& e2, const ChannelRep& e1) {
    if (e1.n() != e2.n()) throw ValidationError("mode mismatch in compose");
    ChannelRep r;
    r.M = e2.M * e1.M;
    Mat d = e2.M * e1.D * e2.M.transpose() + e2.D;
    r.D = 0.5 * (d + d.transpose());
    r.v = e2.M * e1.v + e2.v;
    return r;
}

ChannelRep evolve_const(const GoElement& g, double t, const EvolveOptions& opts) {
    if (!std::isfinite(t)) throw ValidationError("evolution time is not finite");
    if (t < 0 && !opts.unsafe_inverse)
        throw ValidationError("negative evolution time (set unsafe_inverse to allow)");
    if (!g.is_finite()) throw ValidationError("generator has non-finite coefficients");

    const GeneratorMatrices gm = to_matrices(g);
    const int dim = 2 * g.n;

    // Van Loan block: exp([[G, Q], [0, -G^T]] t) = [[e^{Gt}, F], [0, e^{-G^T t}]],
    // D(t) = F e^{G^T t}.
    Mat big = Mat::Zero(2 * dim, 2 * dim);
    big.topLeftCorner(dim, dim) = gm.gamma_M * t;
    big.topRightCorner(dim, dim) = gm.gamma_D * t;
    big.bottomRightCorner(dim, dim) = -gm.gamma_M.transpose() * t;
    const Mat eb = big.exp();

    Mat aff = Mat::Zero(dim + 1, dim + 1);
    aff.topLeftCorner(dim, dim) = gm.gamma_M * t;
    aff.topRightCorner(dim, 1) = gm.gamma_v * t;
    const Mat ea = aff.exp();

    ChannelRep r;
    r.M = eb.topLeftCorner(dim, dim);
    Mat d = eb.topRightCorner(dim, dim) * r.M.transpose();
    r.D = 0.5 * (d + d.transpose());
    r.v = ea.topRightCorner(dim, 1);
    if (!r.is_finite()) throw NumericalError("matrix exponential overflowed");
    return r;
}

ChannelRep evolve_segments(const std::vector<Segment>& segs, int n) {
    ChannelRep acc = ChannelRep::identity(n);
    for (const auto& s : segs) {
        if (s.generator.n != n) throw ValidationError("schedule segments disagree on n_modes");
        if (!(s.duration > 0)) throw ValidationError("segment duration must be positive");
        acc = compose(evolve_const(s.generator, s.duration), acc);
    }
    return acc;
}

namespace {

struct Deriv {
    Mat M, D;
    Vec v;
};

Deriv rhs(const GeneratorMatrices& g, const Mat& M, const Mat& D, const Vec& v) {
    Mat gd = g.gamma_M * D;
    return {g.gamma_M * M, g.gamma_D + gd + gd.transpose(), g.gamma_M * v + g.gamma_v};
}

GeneratorMatrices sample(const SampledGenerator& s, double t) {
    GoElement g = s.at(t);
    if (g.n != s.n) throw ValidationError("sampled generator changed n_modes");
    if (!g.is_finite())
        throw NumericalError("non-finite generator sample at t = " + std::to_string(t));
    return to_matrices(g);
}

}  // namespace

ChannelRep rk4(const SampledGenerator& s, int steps) {
    ChannelRep y = ChannelRep::identity(s.n);
    if (steps <= 0 || s.t_end == 0.0) return y;
    const double h = s.t_end / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const GeneratorMatrices g0 = sample(s, t);
        const GeneratorMatrices gh = sample(s, t + h / 2);
        const GeneratorMatrices g1 = sample(s, t + h);
        Deriv k1 = rhs(g0, y.M, y.D, y.v);
        Deriv k2 = rhs(gh, y.M + h / 2 * k1.M, y.D + h / 2 * k1.D, y.v + h / 2 * k1.v);
        Deriv k3 = rhs(gh, y.M + h / 2 * k2.M, y.D + h / 2 * k2.D, y.v + h / 2 * k2.v);
        Deriv k4 = rhs(g1, y.M + h * k3.M, y.D + h * k3.D, y.v + h * k3.v);
        y.M += h / 6 * (k1.M + 2 * k2.M + 2 * k3.M + k4.M);
        y.D += h / 6 * (k1.D + 2 * k2.D + 2 * k3.D + k4.D);
        y.v += h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
        y.D = 0.5 * (y.D + y.D.transpose());
    }
    if (!y.is_finite()) throw NumericalError("RK4 integration diverged");
    return y;
}

ScheduleResult evolve_schedule(const Schedule& s) {
    if (const auto* segs = std::get_if<std::vector<Segment>>(&s)) {
        const int n = segs->empty() ? 1 : segs->front().generator.n;
        return {evolve_segments(*segs, n), 0.0, static_cast<int>(segs->size())};
    }
    const auto& sg = std::get<SampledGenerator>(s);
    if (!sg.at) throw ValidationError("sampled generator has no callback");
    if (!(sg.step > 0) || !std::isfinite(sg.step)) throw ValidationError("step hint must be positive");
    if (!(sg.t_end >= 0) || !std::isfinite(sg.t_end)) throw ValidationError("t_end must be >= 0");
    const int steps = std::max(1, static_cast<int>(std::ceil(sg.t_end / sg.step - 1e-9)));
    ChannelRep coarse = rk4(sg, steps);
    ChannelRep fine = rk4(sg, 2 * steps);
    return {fine, max_abs_diff(coarse, fine) / 15.0, 2 * steps};
}

ChannelRep partial_transpose_channel(int n, int mode) {
    if (mode < 0 || mode >= n) throw ValidationError("partial transpose mode out of range");
    ChannelRep e = ChannelRep::identity(n);
    e.M(n + mode, n + mode) = -1.0;
    return e;
}

double max_abs_diff(const ChannelRep& a, const ChannelRep& b) {
    double m = (a.M - b.M).cwiseAbs().maxCoeff();
    m = std::max(m, (a.D - b.D).cwiseAbs().maxCoeff());
    m = std::max(m, (a.v - b.v).cwiseAbs().maxCoeff());
    return m;
}

}  // namespace goalg
