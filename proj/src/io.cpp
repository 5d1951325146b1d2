#include "goalg/io.hpp"

#include <cmath>
#include <cstdio>

#include "goalg/errors.hpp"

namespace goalg::io {

void Node::fail(const std::string& msg) const { throw ValidationError(path_ + ": " + msg); }

void Node::expect_object() const {
    if (!j_->is_object()) fail("expected an object");
}

void Node::expect_array() const {
    if (!j_->is_array()) fail("expected an array");
}

void Node::allow_keys(std::initializer_list<const char*> allowed) const {
    expect_object();
    for (auto it = j_->begin(); it != j_->end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) Node(*it, path_ + "." + it.key()).fail("unknown key");
    }
}

bool Node::has(const char* key) const { return j_->is_object() && j_->contains(key); }

Node Node::at(const char* key) const {
    expect_object();
    const std::string p = path_ + "." + key;
    if (!j_->contains(key)) throw ValidationError(p + ": missing required key");
    return Node((*j_)[key], p);
}

std::optional<Node> Node::opt(const char* key) const {
    expect_object();
    if (!j_->contains(key)) return std::nullopt;
    return Node((*j_)[key], path_ + "." + key);
}

Node Node::at(size_t i) const {
    expect_array();
    if (i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
    return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]");
}

size_t Node::size() const {
    expect_array();
    return j_->size();
}

double Node::number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("number must be finite");
    return v;
}

long long Node::integer() const {
    if (j_->is_number_integer()) return j_->get<long long>();
    if (j_->is_number_float()) {
        const double v = j_->get<double>();
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15) return static_cast<long long>(v);
    }
    fail("expected an integer");
}

bool Node::boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
}

std::string Node::string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("$: invalid JSON: ") + e.what());
    }
}

Mat read_matrix(const Node& n, long rows, long cols) {
    if (n.size() != static_cast<size_t>(rows)) n.fail("expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        const Node row = n.at(r);
        if (row.size() != static_cast<size_t>(cols))
            row.fail("expected " + std::to_string(cols) + " columns");
        for (long c = 0; c < cols; ++c) m(r, c) = row.at(c).number();
    }
    return m;
}

Vec read_vector(const Node& n, long size) {
    if (n.size() != static_cast<size_t>(size)) n.fail("expected length " + std::to_string(size));
    Vec v(size);
    for (long i = 0; i < size; ++i) v(i) = n.at(i).number();
    return v;
}

GoElement read_go_element(const Node& n) {
    n.allow_keys({"n", "terms"});
    const Node nn = n.at("n");
    const long long modes = nn.integer();
    if (modes < 1 || modes > 16) nn.fail("mode count must be in [1, 16]");
    GoElement g(static_cast<int>(modes));
    const Node terms = n.at("terms");
    for (size_t t = 0; t < terms.size(); ++t) {
        const Node term = terms.at(t);
        term.allow_keys({"kind", "modes", "coeff"});
        const Node kn = term.at("kind");
        Kind kind;
        try {
            kind = kind_from_name(kn.string());
        } catch (const ValidationError& e) {
            kn.fail(e.what());
        }
        const Node mn = term.at("modes");
        if (mn.size() != 1 && mn.size() != 2) mn.fail("expected [i] or [i, j]");
        GeneratorId id{kind, 0, -1};
        for (size_t k = 0; k < mn.size(); ++k) {
            const long long m = mn.at(k).integer();
            if (m < 0 || m >= modes) mn.at(k).fail("mode index out of range");
            (k == 0 ? id.i : id.j) = static_cast<int>(m);
        }
        try {
            validate(id, g.n);
        } catch (const ValidationError& e) {
            mn.fail(e.what());
        }
        g.add(id, term.at("coeff").number());
    }
    return g;
}

namespace {

GaussianState read_gaussian_fields(const Node& n) {
    const Node dn = n.at("d");
    const size_t dim = dn.size();
    if (dim == 0 || dim % 2 != 0) dn.fail("length must be even and nonzero");
    GaussianState s;
    s.d = read_vector(dn, static_cast<long>(dim));
    s.sigma = read_matrix(n.at("sigma"), static_cast<long>(dim), static_cast<long>(dim));
    try {
        check_shape(s);
    } catch (const ValidationError& e) {
        n.at("sigma").fail(e.what());
    }
    if (!is_physical(s)) n.at("sigma").fail("state violates sigma + i Omega / 2 >= 0");
    return s;
}

}  // namespace

GaussianState read_gaussian_state(const Node& n) {
    n.allow_keys({"sigma", "d"});
    return read_gaussian_fields(n);
}

ChannelRep read_channel(const Node& n, int modes) {
    n.allow_keys({"M", "D", "v"});
    const long dim = 2L * modes;
    ChannelRep e;
    e.M = read_matrix(n.at("M"), dim, dim);
    e.D = read_matrix(n.at("D"), dim, dim);
    e.v = read_vector(n.at("v"), dim);
    if ((e.D - e.D.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, e.D.cwiseAbs().maxCoeff()))
        n.at("D").fail("D must be symmetric");
    return e;
}

namespace {

std::complex<double> read_complex(const Node& n) {
    if (n.raw().is_number()) return {n.number(), 0.0};
    if (n.size() != 2) n.fail("expected a number or [re, im]");
    return {n.at(size_t{0}).number(), n.at(size_t{1}).number()};
}

}  // namespace

StateSpec read_state_spec(const Node& n) {
    n.expect_object();
    const std::string kind = n.at("kind").string();
    if (kind == "vacuum") {
        n.allow_keys({"kind"});
        return StateSpec::vacuum();
    }
    if (kind == "coherent") {
        n.allow_keys({"kind", "alpha"});
        return StateSpec::coherent(read_complex(n.at("alpha")));
    }
    if (kind == "squeezed") {
        n.allow_keys({"kind", "r", "phi"});
        const auto phi = n.opt("phi");
        return StateSpec::squeezed(n.at("r").number(), phi ? phi->number() : 0.0);
    }
    if (kind == "fock") {
        n.allow_keys({"kind", "n"});
        const Node nn = n.at("n");
        const long long k = nn.integer();
        if (k < 0 || k > 50) nn.fail("Fock level must be in [0, 50]");
        return StateSpec::fock(static_cast<int>(k));
    }
    if (kind == "cat") {
        n.allow_keys({"kind", "alpha", "parity"});
        const auto a = read_complex(n.at("alpha"));
        int parity = 1;
        if (auto pn = n.opt("parity")) {
            const long long p = pn->integer();
            if (p != 1 && p != -1) pn->fail("parity must be 1 or -1");
            parity = static_cast<int>(p);
        }
        if (parity < 0 && std::abs(a) == 0.0) n.at("alpha").fail("odd cat needs alpha != 0");
        return StateSpec::cat(a, parity);
    }
    if (kind == "gaussian") {
        n.allow_keys({"kind", "sigma", "d"});
        const GaussianState g = read_gaussian_fields(n);
        if (g.n() != 1) n.at("d").fail("grid states are single-mode");
        return StateSpec::gaussian_from(g);
    }
    n.at("kind").fail("unknown state kind '" + kind + "'");
}

Axis read_axis(const Node& n, const Axis& defaults) {
    n.allow_keys({"min", "max", "points"});
    Axis a = defaults;
    if (auto v = n.opt("min")) a.min = v->number();
    if (auto v = n.opt("max")) a.max = v->number();
    if (auto v = n.opt("points")) {
        const long long p = v->integer();
        if (p < 16 || p > 4001) v->fail("points must be in [16, 4001]");
        a.points = static_cast<int>(p);
    }
    if (!(a.max > a.min)) n.fail("need min < max");
    return a;
}

json to_json(const Mat& m) {
    json out = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

json to_json(const Vec& v) {
    json out = json::array();
    for (long i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json to_json(const GoElement& g) {
    json terms = json::array();
    for (const auto& [id, c] : g.coeffs) {
        json modes = json::array({id.i});
        if (!id.single()) modes.push_back(id.j);
        terms.push_back({{"kind", kind_name(id.kind)}, {"modes", modes}, {"coeff", c}});
    }
    return {{"n", g.n}, {"terms", terms}};
}

json to_json(const GaussianState& s) { return {{"sigma", to_json(s.sigma)}, {"d", to_json(s.d)}}; }

json to_json(const ChannelRep& e) {
    return {{"M", to_json(e.M)}, {"D", to_json(e.D)}, {"v", to_json(e.v)}};
}

json to_json(const CptpReport& r) {
    json j = {{"tp", r.is_tp}, {"cp", r.is_cp}, {"min_eig", r.min_eigenvalue}, {"margin", r.margin}};
    if (r.closed_form_cp) j["closed_form_cp"] = *r.closed_form_cp;
    return j;
}

json to_json(const VerifyReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back({{"name", row.name}, {"residual", row.residual}, {"pass", row.pass}});
    return {{"suite", r.suite},         {"cutoff", r.cutoff}, {"interior", r.interior},
            {"threshold", r.threshold}, {"max_residual", r.max_residual},
            {"pass", r.pass},           {"rows", rows}};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace goalg::io
