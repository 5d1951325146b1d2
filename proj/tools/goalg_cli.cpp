#include <CLI11.hpp>

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "goalg/cptp.hpp"
#include "goalg/errors.hpp"
#include "goalg/fockrep.hpp"
#include "goalg/gaussian_states.hpp"
#include "goalg/io.hpp"
#include "goalg/propagator.hpp"
#include "goalg/wigner.hpp"

#ifndef GOALG_VERSION
#define GOALG_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace goalg;
using io::json;
using io::Node;

namespace {

constexpr const char* kGeneratorSchema = R"(GoElement:
  {"n": int, "terms": [{"kind": string, "modes": [i] or [i, j], "coeff": number}]}
  kind: ad_x ad_p ad_N ad_X ad_Y Np Nm Xij Yij Lxx+ Lpp+ Lxp+ Lxp- Lxx- Lpp-
  Single-mode kinds take [i]. Lxx+/Lpp+ take [i] or [i, j] with i < j.
  Lxp+/Lxp- take [i] or an ordered pair [i, j], i != j, meaning (x_i, p_j).
  Np Nm Xij Yij Lxx- Lpp- take [i, j] with i < j.)";

constexpr const char* kStateSchema = R"(GaussianState: {"sigma": [[...]], "d": [...]}  (vacuum sigma = I/2)
ChannelRep:    {"M": [[...]], "D": [[...]], "v": [...]}
StateSpec:     {"kind": "vacuum"}
               {"kind": "coherent", "alpha": number or [re, im]}
               {"kind": "squeezed", "r": number, "phi": number (default 0)}
               {"kind": "fock", "n": 0..50}
               {"kind": "cat", "alpha": number or [re, im], "parity": 1 or -1}
               {"kind": "gaussian", "sigma": [[2x2]], "d": [2]}
Axis:          {"min": number, "max": number, "points": 16..4001})";

struct Globals {
    std::string out = ".";
    std::uint64_t seed = 1;
    double tol = kDefaultCpTol;
};

std::string sha256_hex(const std::string& s) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex;
    char b[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(b, sizeof b, "%02x", md[i]);
        hex += b;
    }
    return hex;
}

std::string read_file(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("$: cannot read config file '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

void check_file_name(const Node& n, const std::string& name) {
    if (name.empty() || name.find('/') != std::string::npos || name.find('\\') != std::string::npos ||
        name == "." || name == "..")
        n.fail("output must be a plain file name");
}

class Writer {
public:
    Writer(const Globals& g, std::string subcommand, const json& run)
        : dir_(g.out), sub_(std::move(subcommand)), hash_(sha256_hex(run.dump())), seed_(g.seed) {}

    void write(const std::string& name, const std::string& bytes) const {
        fs::create_directories(dir_);
        atomic(dir_ / name, bytes);
        json meta = {{"file", name},
                     {"subcommand", sub_},
                     {"config_sha256", hash_},
                     {"seed", seed_},
                     {"library", "goalg"},
                     {"version", GOALG_VERSION},
                     {"bytes", bytes.size()},
                     {"sha256", sha256_hex(bytes)}};
        atomic(dir_ / (name + ".meta.json"), meta.dump(2) + "\n");
    }

private:
    static void atomic(const fs::path& p, const std::string& bytes) {
        const fs::path tmp = p.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + tmp.string());
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out) throw std::runtime_error("write failed for " + tmp.string());
        }
        fs::rename(tmp, p);
    }

    fs::path dir_;
    std::string sub_;
    std::string hash_;
    std::uint64_t seed_;
};

json run_record(const std::string& sub, const json& config, const Globals& g) {
    return {{"subcommand", sub}, {"config", config}, {"seed", g.seed}, {"tol", g.tol}};
}

// ---- evolve ----

struct EvolveConfig {
    int n = 1;
    std::vector<Segment> segments;
    double t = 0.0;
    double dt = 0.0;
    bool unsafe_inverse = false;
    std::optional<GaussianState> initial;
    std::string output = "evolve.csv";
};

EvolveConfig parse_evolve(const json& j) {
    const Node root(j, "$");
    root.allow_keys({"generator", "schedule", "t", "dt", "initial", "output", "unsafe_inverse"});
    EvolveConfig c;
    if (root.has("generator") == root.has("schedule")) root.fail("give exactly one of generator or schedule");
    if (auto u = root.opt("unsafe_inverse")) c.unsafe_inverse = u->boolean();
    double total = 0.0;
    if (auto g = root.opt("generator")) {
        const GoElement el = io::read_go_element(*g);
        c.n = el.n;
        const Node tn = root.at("t");
        c.t = tn.number();
        if (c.t < 0 && !c.unsafe_inverse) tn.fail("t < 0 needs unsafe_inverse");
        c.segments.push_back({c.t, el});
        total = c.t;
    } else {
        const Node s = root.at("schedule");
        if (s.size() == 0) s.fail("schedule is empty");
        for (size_t k = 0; k < s.size(); ++k) {
            const Node seg = s.at(k);
            seg.allow_keys({"duration", "generator"});
            const Node dn = seg.at("duration");
            const double d = dn.number();
            if (d < 0) dn.fail("duration must be >= 0");
            const GoElement el = io::read_go_element(seg.at("generator"));
            if (k == 0) c.n = el.n;
            if (el.n != c.n) seg.at("generator").at("n").fail("mode count differs from the first segment");
            c.segments.push_back({d, el});
            total += d;
        }
        c.t = total;
        if (auto tn = root.opt("t")) {
            c.t = tn->number();
            if (c.t < 0 || c.t > total * (1 + 1e-12)) tn->fail("t must lie in [0, total schedule duration]");
        }
    }
    const Node dtn = root.at("dt");
    c.dt = dtn.number();
    if (!(c.dt > 0)) dtn.fail("dt must be > 0");
    if (std::abs(c.t) / c.dt > 1e6) dtn.fail("more than 1e6 samples");
    if (auto in = root.opt("initial")) {
        c.initial = io::read_gaussian_state(*in);
        if (c.initial->n() != c.n) in->at("d").fail("state mode count differs from generator");
    }
    if (auto o = root.opt("output")) {
        c.output = o->string();
        check_file_name(*o, c.output);
    }
    return c;
}

// Channel of the schedule run up to time tau (tau may be negative for a single unsafe segment).
ChannelRep channel_at(const EvolveConfig& c, double tau) {
    EvolveOptions opts;
    opts.unsafe_inverse = c.unsafe_inverse;
    ChannelRep acc = ChannelRep::identity(c.n);
    if (c.segments.size() == 1 && tau < 0) return evolve_const(c.segments[0].generator, tau, opts);
    double left = tau;
    for (const auto& s : c.segments) {
        if (left <= 0) break;
        const double run = std::min(left, s.duration);
        acc = compose(evolve_const(s.generator, run, opts), acc);
        left -= run;
    }
    return acc;
}

int cmd_evolve(const std::string& path, const Globals& g) {
    const json cfg = io::parse_text(read_file(path));
    const EvolveConfig c = parse_evolve(cfg);
    const int dim = 2 * c.n;

    std::string csv = "t";
    auto idx2 = [](const char* name, int r, int k) {
        return std::string(",") + name + "[" + std::to_string(r) + "][" + std::to_string(k) + "]";
    };
    for (const char* nm : {"M", "D"})
        for (int r = 0; r < dim; ++r)
            for (int k = 0; k < dim; ++k) csv += idx2(nm, r, k);
    for (int i = 0; i < dim; ++i) csv += ",v[" + std::to_string(i) + "]";
    if (c.initial) {
        for (int r = 0; r < dim; ++r)
            for (int k = 0; k < dim; ++k) csv += idx2("sigma", r, k);
        for (int i = 0; i < dim; ++i) csv += ",d[" + std::to_string(i) + "]";
    }
    csv += "\n";

    const double span = std::abs(c.t);
    const double sgn = c.t < 0 ? -1.0 : 1.0;
    const long steps = static_cast<long>(std::ceil(span / c.dt - 1e-9));
    for (long k = 0; k <= steps; ++k) {
        const double tau = sgn * std::min(k * c.dt, span);
        const ChannelRep e = channel_at(c, tau);
        if (!e.is_finite()) throw NumericalError("non-finite channel at t = " + io::fmt17(tau));
        csv += io::fmt17(tau);
        for (const Mat* m : {&e.M, &e.D})
            for (int r = 0; r < dim; ++r)
                for (int q = 0; q < dim; ++q) csv += "," + io::fmt17((*m)(r, q));
        for (int i = 0; i < dim; ++i) csv += "," + io::fmt17(e.v(i));
        if (c.initial) {
            const GaussianState s = apply_channel(e, *c.initial);
            for (int r = 0; r < dim; ++r)
                for (int q = 0; q < dim; ++q) csv += "," + io::fmt17(s.sigma(r, q));
            for (int i = 0; i < dim; ++i) csv += "," + io::fmt17(s.d(i));
        }
        csv += "\n";
    }
    Writer(g, "evolve", run_record("evolve", cfg, g)).write(c.output, csv);
    std::cout << "wrote " << (fs::path(g.out) / c.output).string() << " (" << steps + 1 << " rows)\n";
    return 0;
}

// ---- wigner ----

int cmd_wigner(const std::string& path, const Globals& g) {
    const json cfg = io::parse_text(read_file(path));
    const Node root(cfg, "$");
    root.allow_keys({"state", "x", "p", "channel", "generator", "t", "delta_limit", "output"});
    const StateSpec spec = io::read_state_spec(root.at("state"));
    const Axis ax = root.has("x") ? io::read_axis(root.at("x")) : Axis{};
    const Axis ap = root.has("p") ? io::read_axis(root.at("p")) : Axis{};
    if (root.has("channel") && root.has("generator")) root.fail("give at most one of channel or generator");
    std::optional<ChannelRep> chan;
    if (auto cn = root.opt("channel")) chan = io::read_channel(*cn, 1);
    if (auto gn = root.opt("generator")) {
        const GoElement el = io::read_go_element(*gn);
        if (el.n != 1) gn->at("n").fail("wigner grids are single-mode");
        const Node tn = root.at("t");
        const double t = tn.number();
        if (t < 0) tn.fail("t must be >= 0");
        chan = evolve_const(el, t);
    } else if (root.has("t")) {
        root.at("t").fail("t needs a generator");
    }
    PushOptions opts;
    if (auto dn = root.opt("delta_limit")) opts.allow_delta = dn->boolean();
    std::string base = "wigner";
    if (auto o = root.opt("output")) {
        base = o->string();
        check_file_name(*o, base);
    }

    WignerGrid w = render(spec, ax, ap);
    if (chan) {
        const ChannelCpReport cp = check_channel(*chan, g.tol);
        if (!cp.is_cp) throw ValidationError("$.channel: channel is not completely positive");
        w = push_forward(*chan, w, opts);
    }

    json report = {{"mass_before", w.mass_before},
                   {"mass_after", w.mass_after},
                   {"W_origin", w.sample(0.0, 0.0)},
                   {"skipped_directions", w.skipped_directions},
                   {"delta_limit", w.delta_limit},
                   {"warnings", w.warnings}};
    Writer wr(g, "wigner", run_record("wigner", cfg, g));
    wr.write(base + ".wgrd", to_wgrd(w));
    wr.write(base + ".csv", to_csv(w));
    wr.write(base + ".pgm", to_pgm(w));
    wr.write(base + ".json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

// ---- cptp ----

int cmd_cptp(const std::string& path, const Globals& g) {
    const json cfg = io::parse_text(read_file(path));
    const GoElement el = io::read_go_element(Node(cfg, "$"));
    const CptpReport r = check_generator(el, g.tol);
    const json out = io::to_json(r);
    Writer(g, "cptp", run_record("cptp", cfg, g)).write("cptp.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- connect ----

int cmd_connect(const std::string& path, const Globals& g) {
    const json cfg = io::parse_text(read_file(path));
    const Node root(cfg, "$");
    root.allow_keys({"from", "to", "beta_cap"});
    const GaussianState from = io::read_gaussian_state(root.at("from"));
    const GaussianState to = io::read_gaussian_state(root.at("to"));
    if (from.n() != to.n()) root.at("to").at("d").fail("mode count differs from $.from");
    double cap = 30.0;
    if (auto c = root.opt("beta_cap")) {
        cap = c->number();
        if (!(cap > 0)) c->fail("beta_cap must be > 0");
    }
    const ConnectResult res = connect_states(from, to, cap);
    json segs = json::array();
    bool all_cp = true;
    for (const auto& s : res.segments) {
        const ChannelCpReport cp = check_channel(s.channel, g.tol);
        all_cp = all_cp && cp.is_cp;
        json js = {{"label", s.label}, {"channel", io::to_json(s.channel)}, {"cp", cp.is_cp}, {"margin", cp.margin}};
        if (s.has_generator) {
            js["generator"] = io::to_json(s.generator);
            js["duration"] = s.duration;
        }
        segs.push_back(js);
    }
    const json out = {{"channel", io::to_json(res.channel)},
                      {"segments", segs},
                      {"all_segments_cp", all_cp},
                      {"sigma_residual", res.sigma_residual},
                      {"d_residual", res.d_residual},
                      {"capped", res.capped}};
    Writer(g, "connect", run_record("connect", cfg, g)).write("connect.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- verify ----

int cmd_verify(const std::string& suite, int cutoff, int interior, int trials, const Globals& g) {
    static const std::map<std::string, int> kDefaultCutoff = {
        {"go1", 12}, {"go2", 8}, {"kg-dirac", 16}, {"susy", 12}, {"osp14", 12}, {"parity", 10}};
    if (!kDefaultCutoff.count(suite)) throw ValidationError("--suite: unknown suite '" + suite + "'");
    if (cutoff < 0) cutoff = kDefaultCutoff.at(suite);
    if (cutoff > 40) throw ValidationError("--cutoff: at most 40");
    if (suite == "go2" && cutoff > 12) throw ValidationError("--cutoff: go2 supports at most 12");

    VerifyReport r;
    if (suite == "go1") r = verify_structure_constants(1, cutoff, interior);
    else if (suite == "go2") r = verify_structure_constants(2, cutoff, interior);
    else if (suite == "kg-dirac") r = verify_kg_dirac(cutoff, trials, g.seed, interior);
    else if (suite == "susy") r = verify_super_poincare(cutoff, interior);
    else if (suite == "osp14") r = verify_osp14(cutoff, interior);
    else r = rotation_parity(cutoff);

    std::printf("%-48s %12s  %s\n", "check", "residual", "ok");
    for (const auto& row : r.rows) std::printf("%-48s %12.3e  %s\n", row.name.c_str(), row.residual, row.pass ? "yes" : "NO");
    std::printf("suite %s cutoff %d interior %d: max residual %.3e (threshold %.1e) %s\n", r.suite.c_str(), r.cutoff,
                r.interior, r.max_residual, r.threshold, r.pass ? "PASS" : "FAIL");

    const json cfg = {{"suite", suite}, {"cutoff", cutoff}, {"interior", interior}, {"trials", trials}};
    Writer(g, "verify", run_record("verify", cfg, g)).write("verify_" + suite + ".json", io::to_json(r).dump(2) + "\n");
    return r.pass ? 0 : 1;
}

// ---- lightcone ----

int cmd_lightcone(const std::string& path, const Globals& g) {
    json cfg = json::object();
    if (!path.empty()) cfg = io::parse_text(read_file(path));
    const Node root(cfg, "$");
    root.allow_keys({"dtau", "dx", "dy", "output"});
    const Axis def{-1.0, 1.0, 101};
    const Axis at = root.has("dtau") ? io::read_axis(root.at("dtau"), def) : def;
    const Axis ax = root.has("dx") ? io::read_axis(root.at("dx"), def) : def;
    double dy = 0.0;
    if (auto d = root.opt("dy")) dy = d->number();
    std::string base = "lightcone";
    if (auto o = root.opt("output")) {
        base = o->string();
        check_file_name(*o, base);
    }

    std::string csv = "dtau,dx,cp\n";
    std::vector<int> cp(static_cast<size_t>(at.points) * ax.points);
    for (int i = 0; i < at.points; ++i)
        for (int k = 0; k < ax.points; ++k) {
            const int c = check_translation_cone({at.at(i), ax.at(k), dy}) ? 1 : 0;
            cp[static_cast<size_t>(i) * ax.points + k] = c;
            csv += io::fmt17(at.at(i)) + "," + io::fmt17(ax.at(k)) + "," + std::to_string(c) + "\n";
        }
    std::string pgm = "P5\n# linear value->gray: 0 -> 0, 1 -> 255; rows dtau max to min, columns dx min to max\n" +
                      std::to_string(ax.points) + " " + std::to_string(at.points) + "\n255\n";
    for (int i = at.points - 1; i >= 0; --i)
        for (int k = 0; k < ax.points; ++k)
            pgm.push_back(static_cast<char>(cp[static_cast<size_t>(i) * ax.points + k] ? 255 : 0));

    Writer wr(g, "lightcone", run_record("lightcone", cfg, g));
    wr.write(base + ".csv", csv);
    wr.write(base + ".pgm", pgm);
    std::cout << "wrote " << base << ".csv and " << base << ".pgm (" << at.points << "x" << ax.points << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"goalg: Gaussian open-system generators, channels, Wigner transport and Fock-space checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out, "Output directory (created if missing)");
    app.add_option("--seed", g.seed, "Seed of the counter-based RNG (kg-dirac random states)");
    app.add_option("--tol", g.tol, "Relative tolerance of CP eigenvalue checks");
    app.footer(std::string("Exit codes: 0 ok, 1 verification failed or I/O error, 2 invalid input, 3 numerical failure.\n"
                           "Every output file F gets a sidecar F.meta.json with the config SHA-256 and library version.\n\n") +
               kGeneratorSchema + "\n\n" + kStateSchema);

    std::string config;
    auto* ev = app.add_subcommand("evolve", "Channel (M, D, v) sampled every dt, written as CSV");
    ev->add_option("config", config, "JSON config file, - for stdin")->required();
    ev->footer(R"(Config: {"generator": GoElement, "t": number} or {"schedule": [{"duration": number, "generator": GoElement}], "t"?: number},
        "dt": number > 0, "initial"?: GaussianState, "output"?: file name (default evolve.csv),
        "unsafe_inverse"?: bool (allow t < 0 with a single generator)
CSV columns: t, M[r][c]..., D[r][c]..., v[i]..., and sigma[r][c]..., d[i]... when initial is given.
All numbers use %.17g.)");

    auto* wi = app.add_subcommand("wigner", "Render a state on a grid, optionally push it through a channel");
    wi->add_option("config", config, "JSON config file, - for stdin")->required();
    wi->footer(R"(Config: {"state": StateSpec, "x"?: Axis, "p"?: Axis (default -6..6, 121 points),
        "channel"?: ChannelRep | "generator"?: GoElement with "t": number,
        "delta_limit"?: bool (accept M = 0), "output"?: base name (default wigner)}
Writes base.wgrd, base.csv (x,p,W), base.pgm and base.json (mass, W at the origin, warnings).
WGRD: "WGRD", u16 version 1, u16 n_modes, per axis f64 min, f64 max, u32 points, then f64 values
with p fastest; all little-endian.)");

    auto* cp = app.add_subcommand("cptp", "Trace preservation and complete positivity of a generator");
    cp->add_option("config", config, "GoElement JSON file, - for stdin")->required();
    cp->footer(R"(Input: GoElement. Output cptp.json: {"tp": bool, "cp": bool, "min_eig": number, "margin": number}.)");

    auto* co = app.add_subcommand("connect", "CP channel taking one Gaussian state to another");
    co->add_option("config", config, "JSON config file, - for stdin")->required();
    co->footer(R"(Config: {"from": GaussianState, "to": GaussianState, "beta_cap"?: number (default 30)}
Output connect.json: channel, per-segment channels with CP margins, residuals, capped flag.)");

    std::string suite;
    int cutoff = -1, interior = 4, trials = 20;
    auto* ve = app.add_subcommand("verify", "Check algebraic identities on truncated Fock space");
    ve->add_option("--suite", suite, "go1 | go2 | kg-dirac | susy | osp14 | parity")->required();
    ve->add_option("--cutoff", cutoff, "Fock cutoff (default: go1 12, go2 8, kg-dirac 16, susy 12, osp14 12, parity 10)");
    ve->add_option("--interior", interior, "Interior width k: compare only Fock levels <= cutoff - k");
    ve->add_option("--trials", trials, "Random states for kg-dirac");
    ve->footer("Writes verify_<suite>.json: {suite, cutoff, interior, threshold, max_residual, pass, rows}.");

    auto* lc = app.add_subcommand("lightcone", "CP region of translation generators over (dtau, dx)");
    lc->add_option("config", config, "Optional JSON config file");
    lc->footer(R"(Config: {"dtau"?: Axis, "dx"?: Axis (default -1..1, 101 points), "dy"?: number (default 0),
        "output"?: base name (default lightcone)}
Writes base.csv (dtau,dx,cp) and base.pgm (white = CP).)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ev) return cmd_evolve(config, g);
        if (*wi) return cmd_wigner(config, g);
        if (*cp) return cmd_cptp(config, g);
        if (*co) return cmd_connect(config, g);
        if (*ve) return cmd_verify(suite, cutoff, interior, trials, g);
        if (*lc) return cmd_lightcone(config, g);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
