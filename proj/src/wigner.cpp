#include "goalg/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <sstream>

#include "goalg/errors.hpp"

namespace goalg {

namespace {

constexpr double kPi = std::numbers::pi;

double gauss2(const Mat& sigma, const Vec& d, double x, double p) {
    const double a = sigma(0, 0), b = sigma(0, 1), c = sigma(1, 1);
    const double det = a * c - b * b;
    const double dx = x - d(0), dp = p - d(1);
    const double q = (c * dx * dx - 2 * b * dx * dp + a * dp * dp) / det;
    return std::exp(-0.5 * q) / (2 * kPi * std::sqrt(det));
}

// e^{-y/2} L_n(y) by the three-term recurrence.
double scaled_laguerre(int n, double y) {
    double l0 = std::exp(-0.5 * y);
    if (n == 0) return l0;
    double l1 = (1.0 - y) * l0;
    for (int k = 1; k < n; ++k) {
        const double l2 = ((2 * k + 1 - y) * l1 - k * l0) / (k + 1);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

// Snapping onto nodes keeps node-aligned maps exact.
double snap(double t) {
    const double r = std::round(t);
    return std::abs(t - r) < 1e-9 ? r : t;
}

double frac_index(const Axis& a, double v) { return snap((v - a.min) / a.spacing()); }

void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& s, double d) {
    std::uint64_t u;
    std::memcpy(&u, &d, 8);
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& s;
    size_t pos = 0;

    std::uint64_t take(int bytes) {
        if (pos + bytes > s.size()) throw ValidationError("grid file truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + i])) << (8 * i);
        pos += bytes;
        return v;
    }
    double f64() {
        std::uint64_t u = take(8);
        double d;
        std::memcpy(&d, &u, 8);
        return d;
    }
};

WignerGrid empty_like(const WignerGrid& w) {
    WignerGrid o;
    o.n_modes = 1;
    o.x = w.x;
    o.p = w.p;
    o.values.assign(w.values.size(), 0.0);
    o.normalized = w.normalized;
    o.warnings = w.warnings;
    return o;
}

void check_grid(const WignerGrid& w) {
    if (w.n_modes != 1) throw ValidationError("only single-mode grids are supported");
    validate_axis(w.x, "x axis");
    validate_axis(w.p, "p axis");
    if (w.values.size() != static_cast<size_t>(w.x.points) * w.p.points)
        throw ValidationError("grid value count does not match axes");
}

}  // namespace

void validate_axis(const Axis& a, const std::string& what) {
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.max > a.min))
        throw ValidationError(what + ": need finite min < max");
    if (a.points < 16) throw ValidationError(what + ": need at least 16 points");
}

double WignerGrid::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * cell();
}

double WignerGrid::sample(double xv, double pv) const {
    const double tx = frac_index(x, xv), tp = frac_index(p, pv);
    if (tx < 0 || tp < 0 || tx > x.points - 1 || tp > p.points - 1) return 0.0;
    int ix = static_cast<int>(std::floor(tx)), ip = static_cast<int>(std::floor(tp));
    if (ix == x.points - 1) --ix;
    if (ip == p.points - 1) --ip;
    const double fx = tx - ix, fp = tp - ip;
    double v = 0.0;
    if (fx != 1.0 && fp != 1.0) v += (1 - fx) * (1 - fp) * at(ix, ip);
    if (fx != 0.0 && fp != 1.0) v += fx * (1 - fp) * at(ix + 1, ip);
    if (fx != 1.0 && fp != 0.0) v += (1 - fx) * fp * at(ix, ip + 1);
    if (fx != 0.0 && fp != 0.0) v += fx * fp * at(ix + 1, ip + 1);
    return v;
}

StateSpec StateSpec::vacuum() { return {}; }

StateSpec StateSpec::coherent(std::complex<double> a) {
    StateSpec s;
    s.kind = Kind::Coherent;
    s.alpha = a;
    return s;
}

StateSpec StateSpec::squeezed(double r, double phi) {
    StateSpec s;
    s.kind = Kind::Squeezed;
    s.r = r;
    s.phi = phi;
    return s;
}

StateSpec StateSpec::fock(int n) {
    StateSpec s;
    s.kind = Kind::Fock;
    s.n = n;
    return s;
}

StateSpec StateSpec::cat(std::complex<double> a, int parity) {
    StateSpec s;
    s.kind = Kind::Cat;
    s.alpha = a;
    s.parity = parity;
    return s;
}

StateSpec StateSpec::gaussian_from(const GaussianState& g) {
    StateSpec s;
    s.kind = Kind::GaussianFrom;
    s.gaussian = g;
    return s;
}

GaussianState gaussian_of(const StateSpec& s) {
    switch (s.kind) {
        case StateSpec::Kind::Vacuum: return GaussianState::vacuum(1);
        case StateSpec::Kind::Coherent: {
            GaussianState g = GaussianState::vacuum(1);
            g.d << std::sqrt(2.0) * s.alpha.real(), std::sqrt(2.0) * s.alpha.imag();
            return g;
        }
        case StateSpec::Kind::Squeezed: {
            Mat k(2, 2);
            k << -std::cos(s.phi), -std::sin(s.phi), -std::sin(s.phi), std::cos(s.phi);
            GaussianState g = GaussianState::vacuum(1);
            g.sigma = 0.5 * (std::cosh(2 * s.r) * Mat::Identity(2, 2) + std::sinh(2 * s.r) * k);
            return g;
        }
        case StateSpec::Kind::GaussianFrom: return s.gaussian;
        default: throw ValidationError("state is not Gaussian");
    }
}

double wigner_value(const StateSpec& s, double x, double p) {
    switch (s.kind) {
        case StateSpec::Kind::Fock: {
            const double r2 = x * x + p * p;
            const double sign = (s.n % 2 == 0) ? 1.0 : -1.0;
            return sign / kPi * scaled_laguerre(s.n, 2 * r2);
        }
        case StateSpec::Kind::Cat: {
            const double x0 = std::sqrt(2.0) * s.alpha.real(), p0 = std::sqrt(2.0) * s.alpha.imag();
            const double a2 = std::norm(s.alpha);
            const double par = s.parity >= 0 ? 1.0 : -1.0;
            const double norm = 1.0 / (2.0 * (1.0 + par * std::exp(-2 * a2)));
            const double g1 = std::exp(-((x - x0) * (x - x0) + (p - p0) * (p - p0)));
            const double g2 = std::exp(-((x + x0) * (x + x0) + (p + p0) * (p + p0)));
            const double in = 2 * par * std::exp(-(x * x + p * p)) * std::cos(2 * (x0 * p - p0 * x));
            return norm / kPi * (g1 + g2 + in);
        }
        default: {
            const GaussianState g = gaussian_of(s);
            return gauss2(g.sigma, g.d, x, p);
        }
    }
}

WignerGrid render(const StateSpec& s, const Axis& x, const Axis& p) {
    validate_axis(x, "x axis");
    validate_axis(p, "p axis");
    switch (s.kind) {
        case StateSpec::Kind::Fock:
            if (s.n < 0 || s.n > 50) throw ValidationError("Fock level must be in [0, 50]");
            break;
        case StateSpec::Kind::Cat:
        case StateSpec::Kind::Coherent:
            if (!std::isfinite(s.alpha.real()) || !std::isfinite(s.alpha.imag()))
                throw ValidationError("alpha must be finite");
            if (s.kind == StateSpec::Kind::Cat && s.parity != 1 && s.parity != -1)
                throw ValidationError("cat parity must be +1 or -1");
            if (s.kind == StateSpec::Kind::Cat && std::abs(s.alpha) == 0.0 && s.parity < 0)
                throw ValidationError("odd cat needs alpha != 0");
            break;
        case StateSpec::Kind::Squeezed:
            if (!std::isfinite(s.r) || !std::isfinite(s.phi)) throw ValidationError("squeezing must be finite");
            break;
        case StateSpec::Kind::GaussianFrom: {
            check_shape(s.gaussian);
            if (s.gaussian.n() != 1) throw ValidationError("grid states are single-mode");
            if (!is_physical(s.gaussian)) throw ValidationError("Gaussian state is not physical");
            break;
        }
        case StateSpec::Kind::Vacuum: break;
    }

    WignerGrid w;
    w.x = x;
    w.p = p;
    w.values.resize(static_cast<size_t>(x.points) * p.points);
    for (int i = 0; i < x.points; ++i)
        for (int j = 0; j < p.points; ++j) w.at(i, j) = wigner_value(s, x.at(i), p.at(j));
    w.normalized = true;
    if (x.spacing() > 0.5 || p.spacing() > 0.5) w.warnings.push_back("coarse grid spacing > 0.5");
    const double m = w.mass();
    if (std::abs(m - 1.0) > 1e-3) {
        std::ostringstream os;
        os << "low coverage: grid mass " << m;
        w.warnings.push_back(os.str());
    }
    w.mass_before = w.mass_after = m;
    return w;
}

WignerGrid push_forward(const ChannelRep& e, const WignerGrid& w, const PushOptions& opts) {
    check_grid(w);
    if (e.n() != 1 || e.M.rows() != 2 || e.M.cols() != 2 || e.D.rows() != 2 || e.D.cols() != 2)
        throw ValidationError("push_forward needs a single-mode channel");
    if (!e.is_finite()) throw ValidationError("channel has non-finite entries");

    const Mat D = 0.5 * (e.D + e.D.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(D);
    if (es.eigenvalues()(0) < -1e-8)
        throw ValidationError("diffusion matrix has a negative eigenvalue (non-physical)");

    WignerGrid out = empty_like(w);
    out.mass_before = w.mass();
    const double scale = std::max(1.0, e.M.cwiseAbs().maxCoeff());
    const double det = e.M.determinant();
    const double hx = w.x.spacing(), hp = w.p.spacing();

    if (std::abs(det) <= 1e-14 * scale * scale) {
        if (!opts.allow_delta) throw ValidationError("det M = 0 (set the delta-limit flag for M = 0)");
        if (e.M.cwiseAbs().maxCoeff() != 0.0)
            throw ValidationError("singular M other than the all-zero channel is not supported");
        // Point mass at v smeared by 2D plus one grid cell.
        Mat cov = 2.0 * D + Mat::Identity(2, 2) * (hx * hp);
        const double m = out.mass_before;
        for (int i = 0; i < w.x.points; ++i)
            for (int j = 0; j < w.p.points; ++j) out.at(i, j) = m * gauss2(cov, e.v, w.x.at(i), w.p.at(j));
        out.delta_limit = true;
        out.warnings.push_back("delta limit: point mass rendered with grid-cell width");
        out.mass_after = out.mass();
        return out;
    }

    // Stage 1: W1(z) = W(M^{-1}(z - v)) / |det M|.
    const Mat Minv = e.M.inverse();
    for (int i = 0; i < w.x.points; ++i)
        for (int j = 0; j < w.p.points; ++j) {
            Eigen::Vector2d z(w.x.at(i) - e.v(0), w.p.at(j) - e.v(1));
            Eigen::Vector2d u = Minv * z;
            out.at(i, j) = w.sample(u(0), u(1)) / std::abs(det);
        }

    // Stage 2: Gaussian convolution with covariance 2D along eigen-directions of D.
    const double tr = D.trace();
    const double h = std::min(hx, hp);
    for (int k = 0; k < 2; ++k) {
        const double lam = es.eigenvalues()(k);
        if (!(lam > 1e-12 * tr) || lam <= 0) {
            ++out.skipped_directions;
            continue;
        }
        Eigen::Vector2d dir = es.eigenvectors().col(k);
        // Snap numerically axis-aligned directions.
        for (int c = 0; c < 2; ++c)
            if (std::abs(dir(c)) < 1e-14) dir(c) = 0.0;
        dir.normalize();
        const double sd = std::sqrt(2.0 * lam);
        const int half = static_cast<int>(std::ceil(6.0 * sd / h));
        std::vector<double> wt(2 * half + 1);
        double tot = 0.0;
        for (int s = -half; s <= half; ++s) {
            const double t = s * h / sd;
            wt[s + half] = std::exp(-0.5 * t * t);
            tot += wt[s + half];
        }
        for (double& v : wt) v /= tot;
        // Every tap shifts the whole grid by the same fractional offset, so the
        // bilinear weights are shared across points.
        const WignerGrid src = out;
        std::fill(out.values.begin(), out.values.end(), 0.0);
        const int nx = w.x.points, np = w.p.points;
        for (int s = -half; s <= half; ++s) {
            const double ox = snap(-s * h * dir(0) / hx), op = snap(-s * h * dir(1) / hp);
            const int di = static_cast<int>(std::floor(ox)), dj = static_cast<int>(std::floor(op));
            const double fx = ox - di, fp = op - dj;
            const double corner[2][2] = {{(1 - fx) * (1 - fp), (1 - fx) * fp}, {fx * (1 - fp), fx * fp}};
            for (int cx = 0; cx < 2; ++cx)
                for (int cp = 0; cp < 2; ++cp) {
                    const double c = wt[s + half] * corner[cx][cp];
                    if (c == 0.0) continue;
                    const int sx = di + cx, sp = dj + cp;
                    const int i0 = std::max(0, -sx), i1 = std::min(nx, nx - sx);
                    const int j0 = std::max(0, -sp), j1 = std::min(np, np - sp);
                    for (int i = i0; i < i1; ++i) {
                        double* dst = &out.values[static_cast<size_t>(i) * np];
                        const double* row = &src.values[static_cast<size_t>(i + sx) * np + sp];
                        for (int j = j0; j < j1; ++j) dst[j] += c * row[j];
                    }
                }
        }
    }
    if (out.skipped_directions > 0 && tr > 0)
        out.warnings.push_back("diffusion is rank deficient; skipped directions below 1e-12 tr(D)");
    out.mass_after = out.mass();
    if (std::abs(out.mass_after - out.mass_before) > 1e-3) {
        std::ostringstream os;
        os << "mass changed from " << out.mass_before << " to " << out.mass_after;
        out.warnings.push_back(os.str());
    }
    return out;
}

Moments grid_moments(const WignerGrid& w) {
    check_grid(w);
    Moments m;
    m.mean = Vec::Zero(2);
    m.cov = Mat::Zero(2, 2);
    double s0 = 0.0;
    for (int i = 0; i < w.x.points; ++i)
        for (int j = 0; j < w.p.points; ++j) {
            const double v = w.at(i, j);
            s0 += v;
            m.mean(0) += v * w.x.at(i);
            m.mean(1) += v * w.p.at(j);
        }
    if (!(s0 > 0)) throw NumericalError("grid has no positive mass");
    m.mean /= s0;
    for (int i = 0; i < w.x.points; ++i)
        for (int j = 0; j < w.p.points; ++j) {
            const double v = w.at(i, j);
            const double dx = w.x.at(i) - m.mean(0), dp = w.p.at(j) - m.mean(1);
            m.cov(0, 0) += v * dx * dx;
            m.cov(0, 1) += v * dx * dp;
            m.cov(1, 1) += v * dp * dp;
        }
    m.cov /= s0;
    m.cov(1, 0) = m.cov(0, 1);
    m.mass = s0 * w.cell();
    return m;
}

double gaussianity_check(const WignerGrid& w) {
    const Moments m = grid_moments(w);
    const double det = m.cov.determinant();
    if (!(m.cov(0, 0) > 0) || !(det > 1e-300))
        throw NumericalError("degenerate covariance in Gaussian fit");
    double num = 0.0, den = 0.0;
    for (int i = 0; i < w.x.points; ++i)
        for (int j = 0; j < w.p.points; ++j) {
            const double g = m.mass * gauss2(m.cov, m.mean, w.x.at(i), w.p.at(j));
            const double v = w.at(i, j);
            num += (v - g) * (v - g);
            den += v * v;
        }
    if (!(den > 0)) throw NumericalError("empty grid");
    return std::sqrt(num / den);
}

WignerGrid cubic_shear(const WignerGrid& w, double kappa) {
    check_grid(w);
    WignerGrid out = empty_like(w);
    for (int i = 0; i < w.x.points; ++i)
        for (int j = 0; j < w.p.points; ++j) {
            const double xv = w.x.at(i);
            out.at(i, j) = w.sample(xv, w.p.at(j) - kappa * xv * xv);
        }
    out.mass_before = w.mass();
    out.mass_after = out.mass();
    return out;
}

std::string to_wgrd(const WignerGrid& w) {
    check_grid(w);
    std::string s = "WGRD";
    put_u16(s, 1);
    put_u16(s, 1);
    for (const Axis* a : {&w.x, &w.p}) {
        put_f64(s, a->min);
        put_f64(s, a->max);
        put_u32(s, static_cast<std::uint32_t>(a->points));
    }
    for (double v : w.values) put_f64(s, v);
    return s;
}

WignerGrid from_wgrd(const std::string& bytes) {
    if (bytes.size() < 8 || bytes.compare(0, 4, "WGRD") != 0) throw ValidationError("not a WGRD file");
    Reader r{bytes, 4};
    if (r.take(2) != 1) throw ValidationError("unsupported WGRD version");
    if (r.take(2) != 1) throw ValidationError("only single-mode WGRD grids are supported");
    WignerGrid w;
    for (Axis* a : {&w.x, &w.p}) {
        a->min = r.f64();
        a->max = r.f64();
        a->points = static_cast<int>(r.take(4));
    }
    validate_axis(w.x, "x axis");
    validate_axis(w.p, "p axis");
    w.values.resize(static_cast<size_t>(w.x.points) * w.p.points);
    for (double& v : w.values) v = r.f64();
    if (r.pos != bytes.size()) throw ValidationError("trailing bytes after WGRD payload");
    w.normalized = true;
    return w;
}

std::string to_csv(const WignerGrid& w) {
    check_grid(w);
    std::string s = "x,p,W\n";
    char buf[96];
    for (int i = 0; i < w.x.points; ++i)
        for (int j = 0; j < w.p.points; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", w.x.at(i), w.p.at(j), w.at(i, j));
            s += buf;
        }
    return s;
}

std::string to_pgm(const WignerGrid& w) {
    check_grid(w);
    double lo = w.values.front(), hi = w.values.front();
    for (double v : w.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "P5\n# linear value->gray: %.17g -> 0, %.17g -> 255\n%d %d\n255\n",
                  lo, hi, w.x.points, w.p.points);
    std::string s = buf;
    const double span = hi > lo ? hi - lo : 1.0;
    for (int j = w.p.points - 1; j >= 0; --j)
        for (int i = 0; i < w.x.points; ++i) {
            const double g = std::round(255.0 * (w.at(i, j) - lo) / span);
            s.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(g, 0.0, 255.0))));
        }
    return s;
}

}  // namespace goalg
