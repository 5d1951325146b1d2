#include "goalg/fockrep.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

#include "goalg/errors.hpp"
#include "goalg/rng.hpp"

namespace goalg {

namespace {

const cplx I1(0.0, 1.0);

SpMat kron(const SpMat& a, const SpMat& b) {
    SpMat r = Eigen::kroneckerProduct(a, b);
    return r;
}

void drop_zeros(SpMat& m) {
    m.prune([](Eigen::Index, Eigen::Index, const cplx& v) { return v != cplx(0.0); });
}

SpMat single_annihilation(int cutoff) {
    const int L = cutoff + 1;
    SpMat a(L, L);
    std::vector<Eigen::Triplet<cplx>> t;
    for (int k = 1; k < L; ++k) t.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

SpMat sp_identity(int d) {
    SpMat i(d, d);
    i.setIdentity();
    return i;
}

SpMat commutator(const SpMat& a, const SpMat& b) {
    SpMat r = a * b - b * a;
    drop_zeros(r);
    return r;
}

SpMat anticommutator(const SpMat& a, const SpMat& b) {
    SpMat r = a * b + b * a;
    drop_zeros(r);
    return r;
}

}  // namespace

int FockSpace::dim() const {
    int d = 1;
    for (int i = 0; i < n; ++i) d *= levels();
    return d;
}

int FockSpace::super_dim() const { return dim() * dim(); }

SpMat FockSpace::identity() const { return sp_identity(dim()); }

SpMat FockSpace::annihilation(int mode) const {
    if (mode < 0 || mode >= n) throw ValidationError("mode index out of range");
    SpMat out = sp_identity(1);
    for (int m = 0; m < n; ++m)
        out = kron(out, m == mode ? single_annihilation(cutoff) : sp_identity(levels()));
    return out;
}

SpMat FockSpace::creation(int mode) const {
    SpMat a = annihilation(mode);
    return SpMat(a.adjoint());
}

SpMat FockSpace::x(int mode) const {
    SpMat r = (annihilation(mode) + creation(mode)) * cplx(1.0 / std::sqrt(2.0));
    return r;
}

SpMat FockSpace::p(int mode) const {
    SpMat r = (creation(mode) - annihilation(mode)) * (I1 / std::sqrt(2.0));
    return r;
}

int FockSpace::occupation(int index, int mode) const {
    int div = 1;
    for (int m = n - 1; m > mode; --m) div *= levels();
    return (index / div) % levels();
}

SpMat left_mul(const FockSpace& fs, const SpMat& a) { return kron(fs.identity(), a); }

SpMat right_mul(const FockSpace& fs, const SpMat& b) {
    SpMat bt = b.transpose();
    return kron(bt, fs.identity());
}

SpMat ad(const FockSpace& fs, const SpMat& h) {
    SpMat r = (left_mul(fs, h) - right_mul(fs, h)) * I1;
    drop_zeros(r);
    return r;
}

SpMat anti_ad(const FockSpace& fs, const SpMat& o) {
    SpMat r = left_mul(fs, o) + right_mul(fs, o);
    drop_zeros(r);
    return r;
}

// o1 . o2 + o2 . o1 - 1/2 {{o2, o1}, .}
SpMat l_plus(const FockSpace& fs, const SpMat& o1, const SpMat& o2) {
    SpMat o1t = o1.transpose(), o2t = o2.transpose();
    SpMat c = anticommutator(o2, o1);
    SpMat r = kron(o2t, o1) + kron(o1t, o2) - 0.5 * anti_ad(fs, c);
    drop_zeros(r);
    return r;
}

// i o1 . o2 - i o2 . o1 - 1/2 {i[o2, o1], .}
SpMat l_minus(const FockSpace& fs, const SpMat& o1, const SpMat& o2) {
    SpMat o1t = o1.transpose(), o2t = o2.transpose();
    SpMat c = commutator(o2, o1) * I1;
    SpMat r = (kron(o2t, o1) - kron(o1t, o2)) * I1 - 0.5 * anti_ad(fs, c);
    drop_zeros(r);
    return r;
}

SpMat lift_generator(const FockSpace& fs, const GeneratorId& id) {
    validate(id, fs.n);
    const int i = id.i;
    const int j = id.single() ? id.i : id.j;
    const SpMat ai = fs.annihilation(i), ci = fs.creation(i);
    const SpMat aj = fs.annihilation(j), cj = fs.creation(j);
    switch (id.kind) {
        case Kind::AdX: return ad(fs, fs.x(i));
        case Kind::AdP: return ad(fs, fs.p(i));
        case Kind::AdN: return ad(fs, SpMat(0.5 * (ci * ai + ai * ci)));
        case Kind::AdXsq: return ad(fs, SpMat((ci * ci - ai * ai) * (0.5 * I1)));
        case Kind::AdYsq: return ad(fs, SpMat(0.5 * (ci * ci + ai * ai)));
        case Kind::AdNplus: return ad(fs, SpMat(0.5 * (ci * aj + cj * ai)));
        case Kind::AdNminus: return ad(fs, SpMat((ci * aj - cj * ai) * (0.5 * I1)));
        case Kind::AdXij: return ad(fs, SpMat((ci * cj - ai * aj) * (0.5 * I1)));
        case Kind::AdYij: return ad(fs, SpMat(0.5 * (ci * cj + ai * aj)));
        case Kind::LppXX: return l_plus(fs, fs.x(i), fs.x(j));
        case Kind::LppPP: return l_plus(fs, fs.p(i), fs.p(j));
        case Kind::LppXP: return l_plus(fs, fs.x(i), fs.p(j));
        case Kind::LmXP: return l_minus(fs, fs.x(i), fs.p(j));
        case Kind::LmXX: return l_minus(fs, fs.x(i), fs.x(j));
        case Kind::LmPP: return l_minus(fs, fs.p(i), fs.p(j));
    }
    throw ValidationError("unhandled generator kind");
}

FockSuperOp lift(const GoElement& g, int cutoff) {
    if (cutoff < 2) throw ValidationError("Fock cutoff too small");
    FockSpace fs{cutoff, g.n};
    SpMat acc(fs.super_dim(), fs.super_dim());
    for (const auto& [id, c] : g.coeffs) {
        if (c == 0.0) continue;
        acc += cplx(c) * lift_generator(fs, id);
    }
    drop_zeros(acc);
    return {fs, acc};
}

std::string ego_name(EgoId id) {
    switch (id) {
        case EgoId::AdX: return "ad_x";
        case EgoId::AdP: return "ad_p";
        case EgoId::AdN: return "ad_N";
        case EgoId::AdXsq: return "ad_X";
        case EgoId::AdYsq: return "ad_Y";
        case EgoId::LppXX: return "Lxx+";
        case EgoId::LppPP: return "Lpp+";
        case EgoId::LppXP: return "Lxp+";
        case EgoId::LmXPShifted: return "Lxp-+s";
        case EgoId::AntiX: return "ad+_x";
        case EgoId::AntiP: return "ad+_p";
        case EgoId::AntiXX: return "ad+_x ad+_x";
        case EgoId::AntiXP: return "ad+_x ad+_p";
        case EgoId::AntiPP: return "ad+_p ad+_p";
    }
    return "?";
}

FockSuperOp lift(EgoId id, int cutoff, double shift) {
    if (cutoff < 2) throw ValidationError("Fock cutoff too small");
    FockSpace fs{cutoff, 1};
    auto go = [&](Kind k) { return lift_generator(fs, {k, 0}); };
    SpMat m;
    switch (id) {
        case EgoId::AdX: m = go(Kind::AdX); break;
        case EgoId::AdP: m = go(Kind::AdP); break;
        case EgoId::AdN: m = go(Kind::AdN); break;
        case EgoId::AdXsq: m = go(Kind::AdXsq); break;
        case EgoId::AdYsq: m = go(Kind::AdYsq); break;
        case EgoId::LppXX: m = go(Kind::LppXX); break;
        case EgoId::LppPP: m = go(Kind::LppPP); break;
        case EgoId::LppXP: m = go(Kind::LppXP); break;
        case EgoId::LmXPShifted:
            m = go(Kind::LmXP) + cplx(shift) * sp_identity(fs.super_dim());
            break;
        case EgoId::AntiX: m = anti_ad(fs, fs.x(0)); break;
        case EgoId::AntiP: m = anti_ad(fs, fs.p(0)); break;
        case EgoId::AntiXX: {
            SpMat ax = anti_ad(fs, fs.x(0));
            m = ax * ax;
            break;
        }
        case EgoId::AntiXP: {
            SpMat ax = anti_ad(fs, fs.x(0)), ap = anti_ad(fs, fs.p(0));
            m = ax * ap;
            break;
        }
        case EgoId::AntiPP: {
            SpMat ap = anti_ad(fs, fs.p(0));
            m = ap * ap;
            break;
        }
    }
    drop_zeros(m);
    return {fs, m};
}

std::vector<char> interior_mask(const FockSpace& fs, int k) {
    const int d = fs.dim();
    std::vector<char> hil(d, 1);
    for (int idx = 0; idx < d; ++idx)
        for (int m = 0; m < fs.n; ++m)
            if (fs.occupation(idx, m) > fs.cutoff - k) hil[idx] = 0;
    std::vector<char> mask(static_cast<size_t>(d) * d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) mask[static_cast<size_t>(c) * d + r] = hil[r] && hil[c];
    return mask;
}

CVec vectorize(const CMatD& rho) {
    return Eigen::Map<const CVec>(rho.data(), rho.size());
}

CMatD unvectorize(const CVec& v, int dim) {
    return Eigen::Map<const CMatD>(v.data(), dim, dim);
}

double interior_max_abs(const SpMat& a, const std::vector<char>& mask) {
    double best = 0.0;
    for (int c = 0; c < a.outerSize(); ++c) {
        if (!mask[c]) continue;
        for (SpMat::InnerIterator it(a, c); it; ++it)
            if (mask[it.row()]) best = std::max(best, std::abs(it.value()));
    }
    return best;
}

double interior_max_abs(const CVec& v, const std::vector<char>& mask) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (mask[i]) best = std::max(best, std::abs(v(i)));
    return best;
}

double interior_residual(const SpMat& a, const SpMat& b, const std::vector<char>& mask) {
    SpMat d = a - b;
    return interior_max_abs(d, mask);
}

void VerifyReport::add(const std::string& name, double residual) {
    const bool ok = residual <= threshold;
    rows.push_back({name, residual, ok});
    max_residual = std::max(max_residual, residual);
    pass = pass && ok;
}

namespace {

double rel(double residual, double scale) { return residual / std::max(1.0, scale); }

void check_args(int cutoff, int min_cutoff, int k) {
    if (cutoff < min_cutoff)
        throw ValidationError("cutoff must be at least " + std::to_string(min_cutoff));
    if (k < 0 || k >= cutoff) throw ValidationError("interior width out of range");
}

}  // namespace

VerifyReport verify_structure_constants(int n, int cutoff, int k_interior) {
    if (n != 1 && n != 2) throw ValidationError("structure-constant suite supports n = 1 or 2");
    check_args(cutoff, 8, k_interior);
    if (k_interior < 2) throw ValidationError("interior width must be at least 2");
    VerifyReport rep;
    rep.suite = n == 1 ? "go1" : "go2";
    rep.cutoff = cutoff;
    rep.interior = k_interior;
    rep.threshold = 1e-10;

    FockSpace fs{cutoff, n};
    const auto mask = interior_mask(fs, k_interior);
    const auto ids = basis(n);
    std::vector<SpMat> lifts;
    lifts.reserve(ids.size());
    for (const auto& id : ids) lifts.push_back(lift_generator(fs, id));

    for (size_t a = 0; a < ids.size(); ++a) {
        for (size_t b = a + 1; b < ids.size(); ++b) {
            const SpMat comm = commutator(lifts[a], lifts[b]);
            const GoElement br = bracket(GoElement::unit(n, ids[a]), GoElement::unit(n, ids[b]));
            const SpMat expect = lift(br, cutoff).matrix;
            const double r = rel(interior_residual(comm, expect, mask), interior_max_abs(comm, mask));
            rep.add("[" + to_string(ids[a]) + ", " + to_string(ids[b]) + "]", r);
        }
    }
    return rep;
}

VerifyReport verify_kg_dirac(int cutoff, int trials, std::uint64_t seed, int k_interior) {
    check_args(cutoff, 10, k_interior);
    if (trials < 0) throw ValidationError("trials must be non-negative");
    VerifyReport rep;
    rep.suite = "kg-dirac";
    rep.cutoff = cutoff;
    rep.interior = k_interior;
    rep.threshold = 1e-9;

    FockSpace fs{cutoff, 1};
    const auto mask = interior_mask(fs, k_interior);
    const SpMat lxx = lift_generator(fs, {Kind::LppXX, 0});
    const SpMat lpp = lift_generator(fs, {Kind::LppPP, 0});
    const SpMat lxp = lift_generator(fs, {Kind::LppXP, 0});
    const SpMat adx = lift_generator(fs, {Kind::AdX, 0});
    const SpMat adp = lift_generator(fs, {Kind::AdP, 0});
    const int d = fs.dim();

    struct Res {
        double kg, dirac, fact;
    };
    auto apply_all = [&](const CMatD& rho) -> Res {
        const CVec v = vectorize(rho);
        const double scale = std::max(1e-300, v.cwiseAbs().maxCoeff());
        const CVec a = lxx * v, b = lpp * v;
        const CVec s = a + b, t = a - b;
        const CVec kg = 0.25 * (lxx * s + lpp * s) - 0.25 * (lxx * t - lpp * t) - lxp * (lxp * v);
        const CVec q1 = -(adx * v), q2 = adp * v;
        const CVec r1 = lxp * q1 + lxx * q2;
        const CVec r2 = -(lpp * q1) - lxp * q2;
        const CVec f = lxx * (lpp * v) - lxp * (lxp * v);
        return {interior_max_abs(kg, mask) / scale,
                std::max(interior_max_abs(r1, mask), interior_max_abs(r2, mask)) / scale,
                interior_max_abs(f, mask) / scale};
    };

    CounterRng rng(seed);
    const int top = cutoff - 4;
    Res worst{0, 0, 0};
    for (int t = 0; t < trials; ++t) {
        CMatD a = CMatD::Zero(d, d);
        for (int l = 0; l <= top; ++l)
            for (int m = 0; m <= top; ++m) a(l, m) = cplx(rng.normal(), rng.normal());
        CMatD rho = 0.5 * (a + a.adjoint());
        rho /= rho.cwiseAbs().maxCoeff();
        Res r = apply_all(rho);
        worst.kg = std::max(worst.kg, r.kg);
        worst.dirac = std::max(worst.dirac, r.dirac);
        worst.fact = std::max(worst.fact, r.fact);
    }
    rep.add("klein-gordon (" + std::to_string(trials) + " random states)", worst.kg);
    rep.add("dirac (" + std::to_string(trials) + " random states)", worst.dirac);
    rep.add("Lxx+ Lpp+ = (Lxp+)^2 (" + std::to_string(trials) + " random states)", worst.fact);

    for (int level : {0, 2}) {
        CMatD rho = CMatD::Zero(d, d);
        rho(level, level) = 1.0;
        Res r = apply_all(rho);
        const std::string tag = "|" + std::to_string(level) + "><" + std::to_string(level) + "|";
        rep.add("klein-gordon " + tag, r.kg);
        rep.add("dirac " + tag, r.dirac);
    }
    return rep;
}

VerifyReport verify_super_poincare(int cutoff, int k_interior) {
    check_args(cutoff, 8, k_interior);
    VerifyReport rep;
    rep.suite = "susy";
    rep.cutoff = cutoff;
    rep.interior = k_interior;
    rep.threshold = 1e-10;

    FockSpace fs{cutoff, 1};
    const auto mask = interior_mask(fs, k_interior);
    auto g = [&](Kind k) { return lift_generator(fs, {k, 0}); };
    const SpMat lxx = g(Kind::LppXX), lpp = g(Kind::LppPP), lxp = g(Kind::LppXP);
    const std::array<SpMat, 3> P = {SpMat(0.5 * (lxx + lpp)), SpMat(0.5 * (lxx - lpp)), lxp};
    const std::array<SpMat, 2> Q = {SpMat(-g(Kind::AdX)), g(Kind::AdP)};
    const std::array<SpMat, 3> T = {SpMat(-0.5 * g(Kind::AdN)), SpMat(0.5 * g(Kind::AdXsq)),
                                    SpMat(-0.5 * g(Kind::AdYsq))};
    const SpMat dil = 0.5 * g(Kind::LmXP);
    const char* pname[] = {"P_tau", "P_x", "P_y"};
    const char* tname[] = {"T_xy", "T_taux", "T_tauy"};

    using M2 = Eigen::Matrix2d;
    M2 g_tau, g_x, g_y, C;
    g_tau << 0, 1, -1, 0;  // i sigma^2
    g_x << 0, 1, 1, 0;     // sigma^1
    g_y << 1, 0, 0, -1;    // sigma^3
    C << 0, -1, 1, 0;      // -i sigma^2
    const std::array<M2, 3> gup = {g_tau, g_x, g_y};
    // metric (-, +, +)
    const std::array<M2, 3> gdn = {M2(-g_tau), g_x, g_y};
    auto gmn = [&](int m, int n) -> M2 { return 0.5 * (gdn[m] * gdn[n] - gdn[n] * gdn[m]); };
    const std::array<M2, 3> S = {M2(-0.5 * gmn(1, 2)), M2(-0.5 * gmn(0, 1)), M2(-0.5 * gmn(0, 2))};

    auto check = [&](const std::string& name, const SpMat& lhs, const SpMat& rhs) {
        rep.add(name, rel(interior_residual(lhs, rhs, mask), interior_max_abs(lhs, mask)));
    };
    auto blank = [&]() { return SpMat(fs.super_dim(), fs.super_dim()); };

    rep.add("C gamma^tau = I", (C * g_tau - M2::Identity()).cwiseAbs().maxCoeff());

    for (int a = 0; a < 3; ++a)
        for (int al = 0; al < 2; ++al) {
            SpMat rhs = S[a](al, 0) * Q[0] + S[a](al, 1) * Q[1];
            check(std::string("[") + tname[a] + ", Q" + std::to_string(al + 1) + "]",
                  commutator(T[a], Q[al]), rhs);
        }

    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            SpMat rhs = blank();
            for (int mu = 0; mu < 3; ++mu) rhs += 2.0 * (gup[mu] * C)(al, be) * P[mu];
            check("{Q" + std::to_string(al + 1) + ", Q" + std::to_string(be + 1) + "}",
                  anticommutator(Q[al], Q[be]), rhs);
        }

    for (int mu = 0; mu < 3; ++mu)
        check(std::string("[D, ") + pname[mu] + "]", commutator(dil, P[mu]), P[mu]);
    for (int al = 0; al < 2; ++al)
        check("[D, Q" + std::to_string(al + 1) + "]", commutator(dil, Q[al]), SpMat(0.5 * Q[al]));

    // Lorentz closure with constants read off the spinor representation:
    // [[T_a, T_b], Q] = -[S_a, S_b] Q.
    Eigen::Matrix<double, 4, 3> basis2;
    for (int c = 0; c < 3; ++c) basis2.col(c) = Eigen::Map<const Eigen::Vector4d>(S[c].data());
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            M2 target = -(S[a] * S[b] - S[b] * S[a]);
            Eigen::Vector4d tv = Eigen::Map<const Eigen::Vector4d>(target.data());
            Eigen::Vector3d coef = basis2.colPivHouseholderQr().solve(tv);
            rep.add(std::string("spinor closure ") + tname[a] + "," + tname[b],
                    (basis2 * coef - tv).cwiseAbs().maxCoeff());
            SpMat rhs = blank();
            for (int c = 0; c < 3; ++c) rhs += coef(c) * T[c];
            check(std::string("[") + tname[a] + ", " + tname[b] + "]", commutator(T[a], T[b]), rhs);
        }

    // Translations transform like the symmetric spinor bilinear {Q, Q}.
    for (int a = 0; a < 3; ++a)
        for (int al = 0; al < 2; ++al)
            for (int be = al; be < 2; ++be) {
                SpMat rhs = blank();
                for (int ga = 0; ga < 2; ++ga) {
                    rhs += S[a](al, ga) * anticommutator(Q[ga], Q[be]);
                    rhs += S[a](be, ga) * anticommutator(Q[al], Q[ga]);
                }
                check(std::string("[") + tname[a] + ", {Q" + std::to_string(al + 1) + ", Q" +
                          std::to_string(be + 1) + "}]",
                      commutator(T[a], anticommutator(Q[al], Q[be])), rhs);
            }

    for (int mu = 0; mu < 3; ++mu) {
        for (int nu = mu + 1; nu < 3; ++nu)
            check(std::string("[") + pname[mu] + ", " + pname[nu] + "]", commutator(P[mu], P[nu]),
                  blank());
        for (int al = 0; al < 2; ++al)
            check("[Q" + std::to_string(al + 1) + ", " + pname[mu] + "]", commutator(Q[al], P[mu]),
                  blank());
    }
    return rep;
}

namespace {

struct OspLifts {
    FockSpace fs;
    std::array<SpMat, 4> Y;  // index order -2, -1, 1, 2
    std::array<std::array<SpMat, 4>, 4> X;
};

constexpr std::array<int, 4> kOspIdx = {-2, -1, 1, 2};

double osp_g(int i, int j) {
    if (i + j != 0) return 0.0;
    return i > 0 ? 1.0 : -1.0;
}

OspLifts build_osp(int cutoff) {
    OspLifts o{FockSpace{cutoff, 1}, {}, {}};
    const FockSpace& fs = o.fs;
    o.Y[3] = -lift_generator(fs, {Kind::AdX, 0});
    o.Y[2] = lift_generator(fs, {Kind::AdP, 0});
    o.Y[1] = 0.5 * anti_ad(fs, fs.x(0));
    o.Y[0] = 0.5 * anti_ad(fs, fs.p(0));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) o.X[a][b] = 0.5 * anticommutator(o.Y[a], o.Y[b]);
    return o;
}

int pos(int idx) {
    for (int a = 0; a < 4; ++a)
        if (kOspIdx[a] == idx) return a;
    return -1;
}

// Identifications of X_ij inside the extended algebra, with L-_xp shifted by `shift`.
std::vector<std::pair<std::string, std::pair<SpMat, SpMat>>> osp_identifications(
    const OspLifts& o, double shift) {
    const FockSpace& fs = o.fs;
    auto go = [&](Kind k) { return lift_generator(fs, {k, 0}); };
    auto eg = [&](EgoId id) { return lift(id, fs.cutoff, shift).matrix; };
    const SpMat lm = eg(EgoId::LmXPShifted);
    auto X = [&](int i, int j) { return o.X[pos(i)][pos(j)]; };
    std::vector<std::pair<std::string, std::pair<SpMat, SpMat>>> out;
    out.push_back({"X(2,2) = Lxx+", {X(2, 2), go(Kind::LppXX)}});
    out.push_back({"X(2,1) = -Lxp+", {X(2, 1), SpMat(-go(Kind::LppXP))}});
    out.push_back({"X(1,1) = Lpp+", {X(1, 1), go(Kind::LppPP)}});
    out.push_back({"X(-2,-2) = (ad+_p)^2/4", {X(-2, -2), SpMat(0.25 * eg(EgoId::AntiPP))}});
    out.push_back({"X(-2,-1) = ad+_x ad+_p/4", {X(-2, -1), SpMat(0.25 * eg(EgoId::AntiXP))}});
    out.push_back({"X(-1,-1) = (ad+_x)^2/4", {X(-1, -1), SpMat(0.25 * eg(EgoId::AntiXX))}});
    out.push_back({"X(2,-1) = -ad_N/2 - ad_Y/2",
                   {X(2, -1), SpMat(-0.5 * go(Kind::AdN) - 0.5 * go(Kind::AdYsq))}});
    out.push_back({"X(2,-2) = -(Lxp- + s)/2 - ad_X/2",
                   {X(2, -2), SpMat(-0.5 * lm - 0.5 * go(Kind::AdXsq))}});
    out.push_back({"X(1,-2) = ad_N/2 - ad_Y/2",
                   {X(1, -2), SpMat(0.5 * go(Kind::AdN) - 0.5 * go(Kind::AdYsq))}});
    out.push_back({"X(1,-1) = -(Lxp- + s)/2 + ad_X/2",
                   {X(1, -1), SpMat(-0.5 * lm + 0.5 * go(Kind::AdXsq))}});
    return out;
}

}  // namespace

double osp_identification_residual(int cutoff, int k_interior, double shift) {
    const OspLifts o = build_osp(cutoff);
    const auto mask = interior_mask(o.fs, k_interior);
    double worst = 0.0;
    for (const auto& [name, pr] : osp_identifications(o, shift))
        worst = std::max(worst, interior_residual(pr.first, pr.second, mask));
    return worst;
}

VerifyReport verify_osp14(int cutoff, int k_interior) {
    check_args(cutoff, 8, k_interior);
    VerifyReport rep;
    rep.suite = "osp14";
    rep.cutoff = cutoff;
    rep.interior = k_interior;
    rep.threshold = 1e-10;

    const OspLifts o = build_osp(cutoff);
    const auto mask = interior_mask(o.fs, k_interior);
    const SpMat id = sp_identity(o.fs.super_dim());
    auto check = [&](const std::string& name, const SpMat& lhs, const SpMat& rhs) {
        rep.add(name, rel(interior_residual(lhs, rhs, mask), interior_max_abs(lhs, mask)));
    };
    auto nm = [](int i) { return std::to_string(i); };

    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            const int i = kOspIdx[a], j = kOspIdx[b];
            check("[Y" + nm(i) + ", Y" + nm(j) + "] = g", commutator(o.Y[a], o.Y[b]),
                  SpMat(osp_g(i, j) * id));
        }

    for (const auto& [name, pr] : osp_identifications(o, kEgoShift)) check(name, pr.first, pr.second);

    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                const int i = kOspIdx[a], j = kOspIdx[b], k = kOspIdx[c];
                SpMat rhs = osp_g(i, k) * o.Y[b] + osp_g(j, k) * o.Y[a];
                check("[X(" + nm(i) + "," + nm(j) + "), Y" + nm(k) + "]",
                      commutator(o.X[a][b], o.Y[c]), rhs);
            }

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) pairs.push_back({a, b});
    for (size_t p = 0; p < pairs.size(); ++p)
        for (size_t q = p + 1; q < pairs.size(); ++q) {
            const auto [a, b] = pairs[p];
            const auto [c, d] = pairs[q];
            const int i = kOspIdx[a], j = kOspIdx[b], k = kOspIdx[c], l = kOspIdx[d];
            SpMat rhs = osp_g(i, k) * o.X[b][d] + osp_g(j, k) * o.X[a][d] +
                        osp_g(i, l) * o.X[b][c] + osp_g(j, l) * o.X[a][c];
            check("[X(" + nm(i) + "," + nm(j) + "), X(" + nm(k) + "," + nm(l) + ")]",
                  commutator(o.X[a][b], o.X[c][d]), rhs);
        }
    return rep;
}

VerifyReport rotation_parity(int cutoff) {
    if (cutoff < 4) throw ValidationError("cutoff must be at least 4");
    VerifyReport rep;
    rep.suite = "parity";
    rep.cutoff = cutoff;
    rep.interior = 0;
    rep.threshold = 0.0;

    const int L = cutoff + 1;
    // exp(-i pi a^+a) has diagonal (-1)^k; the constant 1/2 in N cancels in the conjugation.
    CMatD U = CMatD::Zero(L, L);
    for (int k = 0; k < L; ++k) U(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    int mismatches = 0;
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < L; ++m) {
            CMatD e = CMatD::Zero(L, L);
            e(l, m) = 1.0;
            const CMatD out = U * e * U.adjoint();
            CMatD want = CMatD::Zero(L, L);
            want(l, m) = ((m - l) % 2 == 0) ? 1.0 : -1.0;
            if (out != want) ++mismatches;
        }
    rep.add("sign pattern (-1)^(m-l), mismatching matrix units", mismatches);

    // Cross-check: the lift of ad_N is diagonal on matrix units; exponentiate its interior entries.
    FockSpace fs{cutoff, 1};
    const SpMat adn = lift_generator(fs, {Kind::AdN, 0});
    const auto mask = interior_mask(fs, 1);
    double worst = 0.0;
    for (int c = 0; c < adn.outerSize(); ++c) {
        if (!mask[c]) continue;
        for (SpMat::InnerIterator it(adn, c); it; ++it) {
            if (it.row() != c) continue;
            const int l = c % L, m = c / L;
            const cplx ph = std::exp(-std::numbers::pi * it.value());
            worst = std::max(worst, std::abs(ph - cplx((m - l) % 2 == 0 ? 1.0 : -1.0)));
        }
    }
    VerifyRow row{"exp(-pi lift(ad_N)) diagonal vs sign pattern", worst, worst <= 1e-12};
    rep.rows.push_back(row);
    rep.pass = rep.pass && row.pass;
    return rep;
}

}  // namespace goalg
