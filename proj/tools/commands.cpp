#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hardy/atomic.hpp"
#include "hardy/grid_io.hpp"
#include "hardy/maximal.hpp"
#include "hardy/norms.hpp"
#include "hardy/operators.hpp"
#include "hardy/whitney.hpp"
#include "json.hpp"

namespace hardy::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kFormat = "hardy-cli/1";

struct Failure {
    int code;
    std::string message;
};

struct Globals {
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string family;
    std::string config;
};

double parse_q(const std::string& s) {
    if (s == "inf" || s == "infinity") return kInfinity;
    std::size_t used = 0;
    double q = 0.0;
    try {
        q = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Failure{kExitParse, "invalid q '" + s + "'"};
    }
    if (used != s.size()) throw Failure{kExitParse, "invalid q '" + s + "'"};
    if (!(q > 1.0)) throw Failure{kExitPrecondition, "q must exceed 1"};
    return q;
}

json q_json(double q) { return std::isinf(q) ? json("inf") : json(q); }

GridFunction load_input(const std::string& path) {
    try {
        return load_grid_function(path);
    } catch (const std::exception& e) {
        throw Failure{kExitParse, "cannot read " + path + ": " + e.what()};
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{kExitParse, "cannot open " + path};
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw Failure{kExitParse, "cannot parse " + path + ": " + e.what()};
    }
}

TestFamily family_for(const Globals& g, const GridSpec& spec) {
    if (g.family.empty()) return TestFamily::standard(spec, spec.side_length());
    try {
        auto fam = TestFamily::from_json(load_json(g.family));
        if (fam.n != spec.dim()) throw Failure{kExitPrecondition, "family dimension does not match the input"};
        return fam;
    } catch (const Failure&) {
        throw;
    } catch (const std::exception& e) {
        throw Failure{kExitParse, "invalid family file: " + std::string(e.what())};
    }
}

fs::path out_path(const Globals& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return fs::path(g.out_dir) / name;
}

void write_json(const fs::path& p, const json& j) {
    std::ofstream out(p);
    if (!out) throw Failure{kExitPrecondition, "cannot write " + p.string()};
    out << j.dump(2) << '\n';
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream out(p);
    if (!out) throw Failure{kExitPrecondition, "cannot write " + p.string()};
    out << s;
}

json envelope(const std::string& command, const Globals& g, const json& config) {
    json c = config;
    c["family"] = g.family.empty() ? json("standard") : json(g.family);
    return {{"format", kFormat}, {"command", command}, {"seed", g.seed}, {"config", c}};
}

json ball_json(const Ball& b) { return {{"center", {b.center[0], b.center[1]}}, {"radius", b.radius}}; }

json invariant(const std::string& name, bool passed, double value, double limit) {
    return {{"name", name}, {"passed", passed}, {"value", value}, {"limit", limit}};
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
    std::string input;
    std::string q = "2";
    double eps = 1e-3;
    double eta = 0.125;
};

int cmd_decompose(const Globals& g, const DecomposeArgs& a, std::ostream& out) {
    const GridFunction f = load_input(a.input);
    const double q = parse_q(a.q);
    if (f.is_zero()) throw Failure{kExitPrecondition, "not in H1_fin: trivial (zero input)"};
    const double l1 = l1_norm(f);
    if (std::abs(integrate(f)) > kMeanTol * l1) throw Failure{kExitPrecondition, "input does not have integral zero"};
    const json config = {{"input", a.input}, {"q", q_json(q)}, {"eps", a.eps}, {"eta", a.eta}};
    const auto family = family_for(g, f.spec());

    FiniteOptions opts;
    opts.q = q;
    opts.eps = a.eps;
    opts.cz.eta = a.eta;
    const GridFunction mf = grand_maximal(f, family);
    DecayReport decay;
    AtomicDecomposition d;
    try {
        decay = decay_certificate(f, family, &mf);
        d = finite_decomposition(f, family, opts, &mf);
    } catch (const Error& e) {
        throw Failure{kExitPrecondition, e.what()};
    }

    json inv = json::array();
    const double res = l1_norm(d.residual);
    inv.push_back(invariant("reconstruction", res <= 1e-8 * l1, res, 1e-8 * l1));
    std::size_t bad_atoms = 0;
    for (const auto& t : d.terms)
        if (!atom_validate(t.atom, d.spec, t.ball, q).valid) ++bad_atoms;
    inv.push_back(invariant("atoms_valid", bad_atoms == 0, double(bad_atoms), 0.0));
    inv.push_back(invariant("decay_outside_2B", decay.passed, decay.max_ratio, 1.0));
    bool split_ok = true;
    double leaking = 0.0;
    try {
        split_ok = split_h_ell(d).atom_ok;
    } catch (const Error&) {
        split_ok = false;
        leaking = 1.0;
    }
    inv.push_back(invariant("h_ell_inside_2B", split_ok, leaking, 0.0));
    const double outside = double(balls_outside_level_sets(d, mf).size());
    inv.push_back(invariant("balls_inside_level_sets", outside == 0.0, outside, 0.0));
    bool all = true;
    for (const auto& i : inv) all = all && i["passed"].get<bool>();

    fs::create_directories(fs::path(g.out_dir) / "atoms");
    json doc = envelope("decompose", g, config);
    json dj = to_json(d);
    doc["metadata"] = dj["metadata"];
    doc["metadata"]["lambda_h_reference"] = "terms with k <= k_prime";
    json terms = json::array();
    for (std::size_t t = 0; t < d.terms.size(); ++t) {
        const auto& term = d.terms[t];
        char name[32];
        std::snprintf(name, sizeof name, "atoms/term_%05zu.json", t);
        save_grid_function(term.atom.to_grid(d.spec), fs::path(g.out_dir) / name);
        terms.push_back({{"k", term.level},
                         {"i", term.index},
                         {"lambda", term.lambda},
                         {"ball", ball_json(term.ball)},
                         {"dep_ball", ball_json(term.dep_ball)},
                         {"atom", name}});
    }
    doc["terms"] = terms;
    write_json(out_path(g, "decomposition.json"), doc);

    json report = envelope("decompose", g, config);
    report["invariants"] = inv;
    report["constants"] = dj["metadata"]["constants"];
    report["decay"] = {{"max_ratio", decay.max_ratio}, {"k_prime_formula", decay.k_prime},
                       {"k_prime_scaled", decay.k_prime_scaled}, {"k_prime_used", d.k_prime},
                       {"outside_sup", decay.outside_sup}};
    report["passed"] = all;
    write_json(out_path(g, "report.json"), report);

    out << json{{"terms", d.terms.size()}, {"cost", d.cost()}, {"passed", all}}.dump() << '\n';
    return all ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------

struct NormsArgs {
    std::string input;
    std::string q = "2";
    int dict_level = -1;
    int pair_cap = 16;
};

int cmd_norms(const Globals& g, const NormsArgs& a, std::ostream& out) {
    const GridFunction f = load_input(a.input);
    const double q = parse_q(a.q);
    const json config = {{"input", a.input}, {"q", q_json(q)}, {"dict_level", a.dict_level}, {"pair_cap", a.pair_cap}};
    const auto family = family_for(g, f.spec());
    DictionaryOptions o;
    o.q = q;
    o.max_level = a.dict_level;
    o.pair_cells_cap = a.pair_cap;
    o.root = root_cube(f);
    LpNormResult lp;
    double h1 = 0.0;
    AtomDictionary dict;
    try {
        if (a.dict_level >= 0 && o.root->level > a.dict_level) o.root = DyadicCube{};
        dict = build_dictionary(f.spec(), o);
        lp = finite_atomic_norm_lp(f, dict);
        h1 = h1_proxy_norm(f, family);
    } catch (const Error& e) {
        throw Failure{kExitPrecondition, e.what()};
    }
    const double ratio = h1 > 0.0 ? lp.value / h1 : 0.0;
    json doc = envelope("norms", g, config);
    doc["h1_proxy"] = h1;
    doc["lp"] = lp.to_json();
    doc["ratio"] = ratio;
    doc["dictionary"] = {{"generators", dict.generators.size()}, {"balls", dict.balls.size()},
                         {"root_level", dict.root.level}, {"max_level", dict.max_level}};
    doc["caveat"] = "lp_value is dictionary-relative: an upper bound for the finite atomic norm over all atoms";
    write_json(out_path(g, "norms.json"), doc);
    out << json{{"h1_proxy", h1}, {"lp_value", lp.value}, {"ratio", ratio}, {"label", lp.label}}.dump() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct WhitneyArgs {
    std::string input;
    std::string omega;  ///< mask file: nonzero cells form omega
    double threshold = 0.0;
    double eta = 0.125;
};

int cmd_whitney(const Globals& g, const WhitneyArgs& a, std::ostream& out) {
    const bool masked = !a.omega.empty();
    const GridFunction f = load_input(masked ? a.omega : a.input);
    json config = {{"eta", a.eta}};
    if (masked)
        config["omega"] = a.omega;
    else
        config["input"] = a.input, config["threshold"] = a.threshold;
    CellMask omega(f.spec());
    for (std::size_t c = 0; c < f.size(); ++c)
        if (masked ? f[c] != 0.0 : f[c] > a.threshold) omega.set(c);
    WhitneyCover cover;
    try {
        cover = whitney_decompose(omega, a.eta);
    } catch (const Error& e) {
        throw Failure{kExitPrecondition, e.what()};
    }
    const auto rep = verify_cover(cover);
    const auto balls = expanded_balls(cover, 2.0);
    const int overlap = overlap_count(f.spec(), balls.balls);

    json doc = envelope("whitney", g, config);
    doc["cover"] = to_json(cover);
    doc["report"] = {{"lower_ok", rep.lower_ok}, {"upper_ok", rep.upper_ok}, {"partition_ok", rep.partition_ok},
                     {"cube_count", rep.cube_count}, {"layer_cells", rep.layer_cells},
                     {"max_upper_ratio", rep.max_upper_ratio}, {"overlap_factor2", overlap},
                     {"escaping_balls", balls.escaping.size()}};
    write_json(out_path(g, "whitney.json"), doc);

    std::vector<long> owner(f.size(), -2);
    for (std::size_t c = 0; c < f.size(); ++c)
        if (omega[c]) owner[c] = -1;
    for (std::size_t i = 0; i < cover.cubes.size(); ++i)
        for (auto c : cover.cubes[i].cube.cells(f.spec())) owner[c] = static_cast<long>(i);
    std::ostringstream csv;
    csv << "# " << envelope("whitney", g, config).dump() << '\n';
    csv << (f.spec().dim() == 1 ? "i,cube\n" : "i,j,cube\n");
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (owner[c] == -2) continue;
        const auto ci = f.spec().coords(c);
        csv << ci[0] << ',';
        if (f.spec().dim() == 2) csv << ci[1] << ',';
        csv << owner[c] << '\n';
    }
    write_text(out_path(g, "whitney_cells.csv"), csv.str());
    out << json{{"cubes", rep.cube_count}, {"layer_cells", rep.layer_cells}, {"ok", rep.ok()}}.dump() << '\n';
    return rep.ok() ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------

struct MaximalArgs {
    std::string input;
    std::string kind = "grand";
};

int cmd_maximal(const Globals& g, const MaximalArgs& a, std::ostream& out) {
    const GridFunction f = load_input(a.input);
    const json config = {{"input", a.input}, {"kind", a.kind}};
    json doc = envelope("maximal", g, config);
    int code = kExitOk;
    GridFunction m;
    if (a.kind == "hl") {
        m = hl_maximal(f);
    } else {
        const auto family = family_for(g, f.spec());
        m = grand_maximal(f, family);
        if (!f.is_zero()) {
            try {
                const auto d = decay_certificate(f, family, &m);
                doc["decay"] = {{"max_ratio", d.max_ratio}, {"bound", d.bound}, {"k_prime", d.k_prime},
                                {"k_prime_measured", d.k_prime_measured}, {"passed", d.passed}};
                if (!d.passed) code = kExitInvariant;
            } catch (const Error& e) {
                doc["decay"] = {{"error", e.what()}};
            }
        }
        doc["family"] = family.to_json();
    }
    doc["l1"] = l1_norm(m);
    doc["maximal"] = to_json(m);
    write_json(out_path(g, "maximal.json"), doc);
    out << json{{"l1", l1_norm(m)}, {"max", m.max_abs()}}.dump() << '\n';
    return code;
}

// ---------------------------------------------------------------------------

struct OperatorArgs {
    std::string op;
    double hilbert_w = 0.5;
    std::string input;
    std::string q = "2";
    int dict_level = -1;
    std::size_t samples = 200;
    double eps = 1e-3;
};

int cmd_operator_check(const Globals& g, const OperatorArgs& a, std::ostream& out) {
    const GridFunction f = load_input(a.input);
    const double q = parse_q(a.q);
    json config = {{"input", a.input}, {"q", q_json(q)}, {"dict_level", a.dict_level},
                   {"samples", a.samples}, {"eps", a.eps}};
    OperatorSpec T;
    if (!a.op.empty()) {
        try {
            T = OperatorSpec::from_json(load_json(a.op));
        } catch (const Failure&) {
            throw;
        } catch (const std::exception& e) {
            throw Failure{kExitParse, "invalid operator file: " + std::string(e.what())};
        }
        config["op"] = a.op;
    } else {
        try {
            T = hilbert_kernel(f.spec(), a.hilbert_w);
        } catch (const Error& e) {
            throw Failure{kExitPrecondition, e.what()};
        }
        config["op"] = {{"hilbert_w", a.hilbert_w}};
    }
    if (!(T.spec() == f.spec())) throw Failure{kExitPrecondition, "operator grid differs from the input grid"};
    const auto family = family_for(g, f.spec());

    json doc = envelope("operator-check", g, config);
    bool ok = true;
    try {
        DictionaryOptions o;
        o.q = q;
        o.max_level = a.dict_level;
        o.root = root_cube(f);
        if (a.dict_level >= 0 && o.root->level > a.dict_level) o.root = DyadicCube{};
        const auto dict = build_dictionary(f.spec(), o);
        const auto sup = atom_supremum(T, dict, a.samples, g.seed);
        const double cert = certified_atom_upper_bound(T, dict);
        FiniteOptions fo;
        fo.q = q;
        fo.eps = a.eps;
        const auto ext = extend_apply(T, f, family, fo, sup.value);
        const auto cons = consistency_check(T, f, family, fo, sup.value);

        std::mt19937_64 rng(g.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        GridFunction f_inf(f.spec());
        for (auto c : dict.cells()) f_inf[c] = u(rng);
        const auto bmo_sampled = bmo_dual_check(T, f_inf, dict, sup.value);
        const auto bmo_cert = bmo_dual_check(T, f_inf, dict, cert);

        const auto& ch = ext.chain;
        doc["A_est"] = {{"value", sup.value}, {"dictionary_value", sup.dictionary_value}, {"samples", sup.samples},
                        {"note", "lower bound for the sup over atoms"}};
        doc["A_certified"] = cert;
        doc["bound_chain"] = {{"tf_l1", ch.tf_l1}, {"a_sampled", ch.a_sampled}, {"a_est", ch.a_est},
                              {"cost", ch.cost}, {"h1_proxy", ch.h1_proxy}, {"c_sum", ch.c_sum},
                              {"first_ok", ch.first_ok}, {"second_ok", ch.second_ok},
                              {"termwise_ok", ch.termwise_ok}};
        doc["bmo_ratio"] = {{"sampled", bmo_sampled.ratio}, {"certified", bmo_cert.ratio}, {"bmo", bmo_cert.bmo}};
        doc["consistency"] = {{"difference", cons.difference}, {"threshold", cons.threshold},
                              {"tf_l1", cons.tf_l1}, {"ok", cons.ok}};
        ok = ch.first_ok && ch.second_ok && ch.termwise_ok && cons.ok && bmo_cert.ok;
    } catch (const Error& e) {
        throw Failure{kExitPrecondition, e.what()};
    }
    doc["passed"] = ok;
    write_json(out_path(g, "operator_check.json"), doc);
    out << json{{"passed", ok}}.dump() << '\n';
    return ok ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------------------

struct MeyerArgs {
    int jmin = 0;
    int jmax = 4;
    int cells = 1024;
    double mollifier = 0.0078125;
};

std::string csv_with_header(const json& env, const std::string& body) { return "# " + env.dump() + "\n" + body; }

int cmd_meyer(const Globals& g, const MeyerArgs& a, std::ostream& out, const std::string& file = "meyer.csv") {
    MeyerConfig cfg;
    cfg.j_min = a.jmin;
    cfg.j_max = a.jmax;
    cfg.cells = a.cells;
    cfg.mollifier_radius = a.mollifier;
    std::vector<MeyerRow> rows;
    try {
        rows = meyer_ratio_experiment(cfg);
    } catch (const Error& e) {
        throw Failure{kExitPrecondition, e.what()};
    }
    write_text(out_path(g, file), csv_with_header(envelope("meyer", g, to_json(cfg)), meyer_csv(rows)));
    out << json{{"rows", rows.size()}, {"file", file}}.dump() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string sweep = "norms";
    std::vector<std::string> inputs;
    std::string q = "2";
    double band = 20.0;
    MeyerArgs meyer;
};

int cmd_report(const Globals& g, const ReportArgs& a, std::ostream& out) {
    if (a.sweep == "meyer") return cmd_meyer(g, a.meyer, out, "report.csv");
    if (a.sweep != "norms") throw Failure{kExitParse, "unknown sweep '" + a.sweep + "'"};
    if (a.inputs.empty()) throw Failure{kExitPrecondition, "norms sweep needs --inputs"};
    const double q = parse_q(a.q);
    std::ostringstream body;
    body << "input,h1_proxy,lp_value,ratio\n";
    double lo = kInfinity, hi = 0.0;
    for (const auto& path : a.inputs) {
        const GridFunction f = load_input(path);
        if (f.is_zero()) throw Failure{kExitPrecondition, path + ": not in H1_fin: trivial (zero input)"};
        const auto family = family_for(g, f.spec());
        double h1 = 0.0, v = 0.0;
        try {
            DictionaryOptions o;
            o.q = q;
            o.root = root_cube(f);
            v = finite_atomic_norm_lp(f, build_dictionary(f.spec(), o)).value;
            h1 = h1_proxy_norm(f, family);
        } catch (const Error& e) {
            throw Failure{kExitPrecondition, path + ": " + e.what()};
        }
        const double r = h1 > 0.0 ? v / h1 : 0.0;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        body << path << ',' << format_double(h1) << ',' << format_double(v) << ',' << format_double(r) << '\n';
    }
    const json config = {{"sweep", a.sweep}, {"inputs", a.inputs}, {"q", q_json(q)}, {"band", a.band}};
    write_text(out_path(g, "report.csv"), csv_with_header(envelope("report", g, config), body.str()));
    const bool ok = hi <= a.band * lo;
    out << json{{"min_ratio", lo}, {"max_ratio", hi}, {"within_band", ok}}.dump() << '\n';
    return ok ? kExitOk : kExitInvariant;
}

// Flattens a JSON object of option values into "--key value" tokens.
std::vector<std::string> config_tokens(const json& j) {
    if (!j.is_object()) throw Failure{kExitParse, "config must be a JSON object"};
    std::vector<std::string> out;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        auto scalar = [](const json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            if (v.is_number()) return format_double(v.get<double>());
            if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
            throw Failure{kExitParse, "unsupported config value"};
        };
        if (value.is_array()) {
            out.push_back(flag);
            for (const auto& v : value) out.push_back(scalar(v));
        } else {
            out.push_back(flag);
            out.push_back(scalar(value));
        }
    }
    return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);

    static const std::vector<std::string> commands = {"decompose", "norms", "whitney", "maximal",
                                                      "operator-check", "meyer", "report"};
    // --config values are spliced in right after the subcommand name, so that
    // explicit flags given later on the line win.
    for (std::size_t k = 0; k < args.size(); ++k) {
        std::string path;
        if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
        else if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
        if (path.empty()) continue;
        try {
            const auto tokens = config_tokens(load_json(path));
            auto pos = std::find_first_of(args.begin(), args.end(), commands.begin(), commands.end());
            if (pos != args.end()) args.insert(pos + 1, tokens.begin(), tokens.end());
        } catch (const Failure& f) {
            err << "error: " << f.message << '\n';
            return f.code;
        }
        break;
    }

    CLI::App app{"Hardy space atomic decompositions on grids"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for every random choice");
    app.add_option("--out-dir", g.out_dir, "Directory for artifacts");
    app.add_option("--family", g.family, "Test family JSON (default: standard family for the grid)");
    app.add_option("--config", g.config, "JSON object of option values");

    DecomposeArgs dec;
    auto* c_dec = app.add_subcommand("decompose", "Finite atomic decomposition with verification report");
    c_dec->add_option("--input", dec.input, "Grid function (.json or .csv)")->required();
    c_dec->add_option("--q", dec.q, "Atom exponent: a number > 1 or 'inf' (continuous mode)");
    c_dec->add_option("--eps", dec.eps, "Tail coefficient / oscillation threshold");
    c_dec->add_option("--eta", dec.eta, "Whitney constant");

    NormsArgs nrm;
    auto* c_nrm = app.add_subcommand("norms", "H1 proxy and dictionary LP norm");
    c_nrm->add_option("--input", nrm.input)->required();
    c_nrm->add_option("--q", nrm.q);
    c_nrm->add_option("--dict-level", nrm.dict_level, "Finest dictionary level (-1: single cells)");
    c_nrm->add_option("--pair-cap", nrm.pair_cap, "Pair generators in balls with at most this many cells");

    WhitneyArgs wh;
    auto* c_wh = app.add_subcommand("whitney", "Whitney cover of {f > threshold}");
    auto* wh_in = c_wh->add_option("--input", wh.input);
    auto* wh_om = c_wh->add_option("--omega", wh.omega, "Mask grid file; omega = its nonzero cells");
    wh_in->excludes(wh_om);
    wh_om->excludes(wh_in);
    c_wh->add_option("--threshold", wh.threshold)->excludes(wh_om);
    c_wh->add_option("--eta", wh.eta);

    MaximalArgs mx;
    auto* c_mx = app.add_subcommand("maximal", "Grand or Hardy-Littlewood maximal function");
    c_mx->add_option("--input", mx.input)->required();
    c_mx->add_option("--kind", mx.kind)->check(CLI::IsMember({"grand", "hl"}));

    OperatorArgs op;
    auto* c_op = app.add_subcommand("operator-check", "Atom supremum, bound chain, BMO duality, consistency");
    c_op->add_option("--op", op.op, "Operator JSON (default: truncated Hilbert kernel)");
    c_op->add_option("--hilbert-w", op.hilbert_w, "Truncation width of the default kernel");
    c_op->add_option("--input", op.input)->required();
    c_op->add_option("--q", op.q);
    c_op->add_option("--dict-level", op.dict_level);
    c_op->add_option("--samples", op.samples, "Random atoms on top of the dictionary");
    c_op->add_option("--eps", op.eps);

    MeyerArgs my;
    auto* c_my = app.add_subcommand("meyer", "Ratio table for the step and mollified families (CSV)");
    c_my->add_option("--jmin", my.jmin);
    c_my->add_option("--jmax", my.jmax);
    c_my->add_option("--cells", my.cells);
    c_my->add_option("--mollifier", my.mollifier, "Mollifier radius");

    ReportArgs rp;
    auto* c_rp = app.add_subcommand(
        "report",
        "Deterministic CSV sweeps. norms: input,h1_proxy,lp_value,ratio (exit 4 if max/min ratio exceeds --band). "
        "meyer: j,rho_inf_step,rho_inf_mollified,rho_2_step,h1_step,h1_mollified,lp_inf_step,lp_inf_mollified,"
        "lp_2_step");
    c_rp->add_option("--sweep", rp.sweep)->check(CLI::IsMember({"norms", "meyer"}));
    c_rp->add_option("--inputs", rp.inputs)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    c_rp->add_option("--q", rp.q);
    c_rp->add_option("--band", rp.band);
    c_rp->add_option("--jmin", rp.meyer.jmin);
    c_rp->add_option("--jmax", rp.meyer.jmax);
    c_rp->add_option("--cells", rp.meyer.cells);
    c_rp->add_option("--mollifier", rp.meyer.mollifier);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }

    try {
        if (*c_dec) return cmd_decompose(g, dec, out);
        if (*c_nrm) return cmd_norms(g, nrm, out);
        if (*c_wh) {
            if (wh.input.empty() && wh.omega.empty()) {
                err << "error: whitney needs --input or --omega\n";
                return kExitParse;
            }
            return cmd_whitney(g, wh, out);
        }
        if (*c_mx) return cmd_maximal(g, mx, out);
        if (*c_op) return cmd_operator_check(g, op, out);
        if (*c_my) return cmd_meyer(g, my, out);
        if (*c_rp) return cmd_report(g, rp, out);
    } catch (const Failure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    }
    return kExitParse;
}

}  // namespace hardy::cli
