#include "goalg/algebra.hpp"

#include <cmath>
#include <sstream>

#include "goalg/errors.hpp"

namespace goalg {

namespace {

struct KindName {
    Kind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {Kind::AdX, "ad_x"},        {Kind::AdP, "ad_p"},        {Kind::AdN, "ad_N"},
    {Kind::AdXsq, "ad_X"},      {Kind::AdYsq, "ad_Y"},      {Kind::AdNplus, "Np"},
    {Kind::AdNminus, "Nm"},     {Kind::AdXij, "Xij"},       {Kind::AdYij, "Yij"},
    {Kind::LppXX, "Lxx+"},      {Kind::LppPP, "Lpp+"},      {Kind::LppXP, "Lxp+"},
    {Kind::LmXP, "Lxp-"},       {Kind::LmXX, "Lxx-"},       {Kind::LmPP, "Lpp-"},
};

bool single_only(Kind k) {
    return k == Kind::AdX || k == Kind::AdP || k == Kind::AdN || k == Kind::AdXsq ||
           k == Kind::AdYsq;
}

bool pair_only(Kind k) {
    return k == Kind::AdNplus || k == Kind::AdNminus || k == Kind::AdXij ||
           k == Kind::AdYij || k == Kind::LmXX || k == Kind::LmPP;
}

bool ordered_pair(Kind k) { return k == Kind::LppXP || k == Kind::LmXP; }

Vec unit_vec(int dim, int idx) {
    Vec e = Vec::Zero(dim);
    e(idx) = 1.0;
    return e;
}

Mat sym_outer(const Vec& a, const Vec& b) { return a * b.transpose() + b * a.transpose(); }

}  // namespace

std::string kind_name(Kind k) {
    for (const auto& kn : kKindNames)
        if (kn.kind == k) return kn.name;
    return "?";
}

Kind kind_from_name(const std::string& s) {
    for (const auto& kn : kKindNames)
        if (s == kn.name) return kn.kind;
    throw ValidationError("unknown generator kind '" + s + "'");
}

std::string to_string(const GeneratorId& id) {
    std::ostringstream os;
    os << kind_name(id.kind) << "[" << id.i;
    if (!id.single()) os << "," << id.j;
    os << "]";
    return os.str();
}

void validate(const GeneratorId& id, int n) {
    auto bad = [&](const std::string& why) {
        throw ValidationError("generator " + to_string(id) + ": " + why);
    };
    if (id.i < 0 || id.i >= n) bad("mode index out of range");
    if (id.single()) {
        if (pair_only(id.kind)) bad("kind needs two modes");
        return;
    }
    if (id.j >= n) bad("mode index out of range");
    if (single_only(id.kind)) bad("kind takes one mode");
    if (id.i == id.j) bad("two-mode kind with equal modes");
    if (!ordered_pair(id.kind) && id.i > id.j) bad("modes must satisfy i < j");
}

std::vector<GeneratorId> basis(int n) {
    std::vector<GeneratorId> out;
    for (int k = 0; k < n; ++k) {
        for (Kind kind : {Kind::AdX, Kind::AdP, Kind::AdN, Kind::AdXsq, Kind::AdYsq,
                          Kind::LppXX, Kind::LppPP, Kind::LppXP, Kind::LmXP})
            out.push_back({kind, k, -1});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (Kind kind : {Kind::AdNplus, Kind::AdNminus, Kind::AdXij, Kind::AdYij,
                              Kind::LppXX, Kind::LppPP, Kind::LmXX, Kind::LmPP})
                out.push_back({kind, i, j});
            out.push_back({Kind::LppXP, i, j});
            out.push_back({Kind::LppXP, j, i});
            out.push_back({Kind::LmXP, i, j});
            out.push_back({Kind::LmXP, j, i});
        }
    }
    return out;
}

GoElement GoElement::unit(int n, GeneratorId id, double c) {
    GoElement g(n);
    g.add(id, c);
    return g;
}

double GoElement::coeff(const GeneratorId& id) const {
    auto it = coeffs.find(id);
    return it == coeffs.end() ? 0.0 : it->second;
}

GoElement& GoElement::add(const GeneratorId& id, double c) {
    validate(id, n);
    coeffs[id] += c;
    return *this;
}

GoElement GoElement::operator+(const GoElement& o) const {
    if (o.n != n) throw ValidationError("mode mismatch in sum");
    GoElement r = *this;
    for (const auto& [id, c] : o.coeffs) r.coeffs[id] += c;
    return r;
}

GoElement GoElement::operator-(const GoElement& o) const { return *this + o * -1.0; }

GoElement GoElement::operator*(double s) const {
    GoElement r = *this;
    for (auto& [id, c] : r.coeffs) c *= s;
    return r;
}

GoElement GoElement::pruned() const {
    GoElement r(n);
    for (const auto& [id, c] : coeffs)
        if (c != 0.0) r.coeffs[id] = c;
    return r;
}

bool GoElement::operator==(const GoElement& o) const {
    return n == o.n && pruned().coeffs == o.pruned().coeffs;
}

bool GoElement::is_finite() const {
    for (const auto& [id, c] : coeffs)
        if (!std::isfinite(c)) return false;
    return true;
}

GeneratorMatrices GeneratorMatrices::zero(int n) {
    return {Mat::Zero(2 * n, 2 * n), Mat::Zero(2 * n, 2 * n), Vec::Zero(2 * n)};
}

Mat omega(int n) {
    Mat w = Mat::Zero(2 * n, 2 * n);
    w.topRightCorner(n, n) = Mat::Identity(n, n);
    w.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return w;
}

GeneratorMatrices to_matrices(const GoElement& g) {
    const int n = g.n;
    const int dim = 2 * n;
    GeneratorMatrices m = GeneratorMatrices::zero(n);
    const Mat W = omega(n);
    auto ex = [&](int k) { return unit_vec(dim, k); };
    auto ep = [&](int k) { return unit_vec(dim, n + k); };

    // Hamiltonian H = 1/2 zeta^T Hq zeta + c^T zeta  ->  gamma_M = -W Hq, gamma_v = -W c.
    auto ham = [&](const Mat& Hq, double c) { m.gamma_M += c * (-W * Hq); };
    // L+_{a.zeta, b.zeta} -> gamma_D = 1/2 W^T (a b^T + b a^T) W.
    auto lplus = [&](const Vec& a, const Vec& b, double c) {
        m.gamma_D += c * 0.5 * (W.transpose() * sym_outer(a, b) * W);
    };
    // L-_{a.zeta, b.zeta} -> gamma_M = W^T (a b^T - b a^T).
    auto lminus = [&](const Vec& a, const Vec& b, double c) {
        m.gamma_M += c * (W.transpose() * (a * b.transpose() - b * a.transpose()));
    };

    for (const auto& [id, c] : g.coeffs) {
        validate(id, n);
        if (c == 0.0) continue;
        const int i = id.i;
        const int j = id.single() ? id.i : id.j;
        switch (id.kind) {
            case Kind::AdX: m.gamma_v += c * (-W * ex(i)); break;
            case Kind::AdP: m.gamma_v += c * (-W * ep(i)); break;
            case Kind::AdN:
                ham(ex(i) * ex(i).transpose() + ep(i) * ep(i).transpose(), c);
                break;
            case Kind::AdXsq: ham(sym_outer(ex(i), ep(i)), c); break;
            case Kind::AdYsq:
                ham(ex(i) * ex(i).transpose() - ep(i) * ep(i).transpose(), c);
                break;
            case Kind::AdNplus:
                ham(0.5 * (sym_outer(ex(i), ex(j)) + sym_outer(ep(i), ep(j))), c);
                break;
            case Kind::AdNminus:
                ham(0.5 * (sym_outer(ex(j), ep(i)) - sym_outer(ex(i), ep(j))), c);
                break;
            case Kind::AdXij:
                ham(0.5 * (sym_outer(ex(i), ep(j)) + sym_outer(ex(j), ep(i))), c);
                break;
            case Kind::AdYij:
                ham(0.5 * (sym_outer(ex(i), ex(j)) - sym_outer(ep(i), ep(j))), c);
                break;
            case Kind::LppXX: lplus(ex(i), ex(j), c); break;
            case Kind::LppPP: lplus(ep(i), ep(j), c); break;
            case Kind::LppXP: lplus(ex(i), ep(j), c); break;
            case Kind::LmXP: lminus(ex(i), ep(j), c); break;
            case Kind::LmXX: lminus(ex(i), ex(j), c); break;
            case Kind::LmPP: lminus(ep(i), ep(j), c); break;
        }
    }
    return m;
}

GoElement from_matrices(const GeneratorMatrices& m) {
    const int dim = static_cast<int>(m.gamma_v.size());
    if (dim % 2 != 0 || dim == 0) throw ValidationError("gamma_v must have even, nonzero length");
    if (m.gamma_M.rows() != dim || m.gamma_M.cols() != dim || m.gamma_D.rows() != dim ||
        m.gamma_D.cols() != dim)
        throw ValidationError("generator matrix dimensions disagree");
    if ((m.gamma_D - m.gamma_D.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("gamma_D is not symmetric");

    const int n = dim / 2;
    const Mat& M = m.gamma_M;
    const Mat& D = m.gamma_D;
    const Vec& v = m.gamma_v;
    GoElement g(n);
    auto put = [&](Kind k, int i, int j, double c) {
        if (c != 0.0) g.coeffs[{k, i, j}] = c;
    };

    for (int k = 0; k < n; ++k) {
        const int X = k, P = n + k;
        put(Kind::LmXP, k, -1, (M(X, X) + M(P, P)) / 2);
        put(Kind::AdXsq, k, -1, (M(P, P) - M(X, X)) / 2);
        put(Kind::AdYsq, k, -1, (M(X, P) + M(P, X)) / 2);
        put(Kind::AdN, k, -1, (M(P, X) - M(X, P)) / 2);
        put(Kind::LppXX, k, -1, D(P, P));
        put(Kind::LppPP, k, -1, D(X, X));
        put(Kind::LppXP, k, -1, -2 * D(X, P));
        put(Kind::AdX, k, -1, v(P));
        put(Kind::AdP, k, -1, -v(X));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int xi = i, xj = j, pi = n + i, pj = n + j;
            const double A = M(xi, xj), B = M(xj, xi), C = M(pi, pj), Dd = M(pj, pi);
            const double E = M(xi, pj), F = M(xj, pi), G = M(pi, xj), H = M(pj, xi);
            put(Kind::LmXP, j, i, (A + Dd) / 2);
            put(Kind::LmXP, i, j, (B + C) / 2);
            put(Kind::AdXij, i, j, (Dd - A + C - B) / 2);
            put(Kind::AdNminus, i, j, (Dd - A - C + B) / 2);
            put(Kind::LmPP, i, j, (F - E) / 2);
            put(Kind::LmXX, i, j, (G - H) / 2);
            put(Kind::AdYij, i, j, (E + F + G + H) / 2);
            put(Kind::AdNplus, i, j, (G + H - E - F) / 2);
            put(Kind::LppXX, i, j, 2 * D(pi, pj));
            put(Kind::LppPP, i, j, 2 * D(xi, xj));
            put(Kind::LppXP, i, j, -2 * D(pi, xj));
            put(Kind::LppXP, j, i, -2 * D(pj, xi));
        }
    }
    return g;
}

GeneratorMatrices bracket(const GeneratorMatrices& a, const GeneratorMatrices& b) {
    if (a.gamma_v.size() != b.gamma_v.size()) throw ValidationError("mode mismatch in bracket");
    GeneratorMatrices r;
    r.gamma_M = a.gamma_M * b.gamma_M - b.gamma_M * a.gamma_M;
    Mat t = a.gamma_M * b.gamma_D - b.gamma_M * a.gamma_D;
    r.gamma_D = t + t.transpose();
    r.gamma_v = a.gamma_M * b.gamma_v - b.gamma_M * a.gamma_v;
    return r;
}

GoElement bracket(const GoElement& a, const GoElement& b) {
    if (a.n != b.n) throw ValidationError("mode mismatch in bracket");
    return from_matrices(bracket(to_matrices(a), to_matrices(b)));
}

GoElement poincare_to_go(const MinkowskiVector& t) {
    GoElement g(1);
    g.add({Kind::LppXX, 0}, (t.dtau + t.dx) / 2);
    g.add({Kind::LppPP, 0}, (t.dtau - t.dx) / 2);
    g.add({Kind::LppXP, 0}, t.dy);
    return g.pruned();
}

GoElement lorentz_to_go(LorentzPlane plane, double angle) {
    GoElement g(1);
    switch (plane) {
        case LorentzPlane::XY: g.add({Kind::AdN, 0}, -angle / 2); break;
        case LorentzPlane::TauX: g.add({Kind::AdXsq, 0}, angle / 2); break;
        case LorentzPlane::TauY: g.add({Kind::AdYsq, 0}, -angle / 2); break;
    }
    return g.pruned();
}

namespace elements {

GoElement damping(int n, int mode, double rate) {
    GoElement g(n);
    g.add({Kind::LppXX, mode}, rate / 4).add({Kind::LppPP, mode}, rate / 4);
    g.add({Kind::LmXP, mode}, -rate / 2);
    return g;
}

GoElement heating(int n, int mode, double rate) {
    GoElement g(n);
    g.add({Kind::LppXX, mode}, rate / 4).add({Kind::LppPP, mode}, rate / 4);
    g.add({Kind::LmXP, mode}, rate / 2);
    return g;
}

GoElement rotation(int n, int mode, double rate) {
    return GoElement::unit(n, {Kind::AdN, mode}, rate);
}

}  // namespace elements

}  // namespace goalg
