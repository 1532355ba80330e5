#include "ifslab/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ifslab/applications.hpp"
#include "ifslab/dimension.hpp"
#include "ifslab/errors.hpp"
#include "ifslab/thermo.hpp"
#include "ifslab/transversality.hpp"

namespace ifslab::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Round to 9 significant digits so serialized numbers stay short and stable.
double round9(double v) { return std::strtod(fmt9(v).c_str(), nullptr); }

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int count = 1;
};

// Flat key=value store; config file keys sit below explicit flags.
class Options {
  public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set_default(const std::string& key, const std::string& value) {
        kv_.emplace(key, value);
    }
    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string str(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing required option --" + key);
        return it->second;
    }
    std::string str_or(const std::string& key, const std::string& fallback) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }
    double number(const std::string& key) const { return parse_number(key, str(key)); }
    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }
    long long integer(const std::string& key) const {
        const double v = number(key);
        return static_cast<long long>(v);
    }
    long long integer_or(const std::string& key, long long fallback) const {
        return has(key) ? integer(key) : fallback;
    }
    GridSpec grid(const std::string& key) const {
        const std::string v = str(key);
        GridSpec g;
        if (std::sscanf(v.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.count) != 3 || g.count < 1) {
            throw ConfigError("bad grid '" + v + "' for --" + key + " (want lo:hi:count)");
        }
        return g;
    }
    std::vector<double> numbers(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(parse_number(key, item));
        }
        if (out.empty()) throw ConfigError("empty list for --" + key);
        return out;
    }
    const std::map<std::string, std::string>& raw() const { return kv_; }

  private:
    static double parse_number(const std::string& key, const std::string& v) {
        char* end = nullptr;
        const double out = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0') {
            throw ConfigError("bad number '" + v + "' for --" + key);
        }
        return out;
    }
    std::map<std::string, std::string> kv_;
};

void load_config_file(Options& opts, const std::string& path, bool override_existing) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (override_existing) {
            opts.set(key, value);
        } else {
            opts.set_default(key, value);
        }
    }
}

std::uint64_t resolve_budget(const Options& opts) {
    if (opts.has("budget")) return static_cast<std::uint64_t>(opts.integer("budget"));
    if (const char* env = std::getenv("IFSLAB_BUDGET")) {
        return std::strtoull(env, nullptr, 10);
    }
    return kDefaultCylinderBudget;
}

json config_echo(const Options& opts) {
    json echo = json::object();
    for (const auto& [k, v] : opts.raw()) echo[k] = v;
    return echo;
}

json json_doc(const Options& opts) {
    json doc;
    doc["version"] = kVersion;
    doc["config-echo"] = config_echo(opts);
    return doc;
}

// Body goes to --out when given, otherwise to stdout (with the one-line
// summary rerouted to stderr so piped output stays clean).
class Output {
  public:
    explicit Output(const Options& opts, bool prefer_json = false)
        : path_(opts.str_or("out", "")), prefer_json_(prefer_json) {}
    void write(const std::string& body) const {
        if (path_.empty()) {
            std::cout << body;
            return;
        }
        std::ofstream out(path_, std::ios::binary);
        if (!out) throw ConfigError("cannot write output file " + path_);
        out << body;
    }
    bool wants_json() const {
        if (path_.empty()) return prefer_json_;
        return path_.size() >= 5 && path_.substr(path_.size() - 5) == ".json";
    }
    std::ostream& summary() const { return path_.empty() ? std::cerr : std::cout; }

  private:
    std::string path_;
    bool prefer_json_;
};

ifs::IFSFamily family_from_options(const Options& opts) {
    const int m = static_cast<int>(opts.integer("family.m"));
    if (m < 2) throw ConfigError("family.m must be >= 2");
    const double xlo = opts.number("family.x_lo");
    const double xhi = opts.number("family.x_hi");
    std::string kind0;
    std::vector<double> slopes, offsets;
    std::vector<Mat2> mats;
    for (int i = 1; i <= m; ++i) {
        const std::string prefix = "family.map" + std::to_string(i) + ".";
        const std::string kind = opts.str(prefix + "kind");
        if (i == 1) kind0 = kind;
        if (kind != kind0) throw ConfigError("all maps must share one kind");
        if (kind == "affine") {
            slopes.push_back(opts.number(prefix + "slope"));
            offsets.push_back(opts.number(prefix + "offset"));
        } else if (kind == "mobius") {
            mats.push_back({opts.number(prefix + "a"), opts.number(prefix + "b"),
                            opts.number(prefix + "c"), opts.number(prefix + "d")});
        } else {
            throw ConfigError("unknown map kind '" + kind + "'");
        }
    }
    if (kind0 == "affine") {
        return ifs::affine_family(slopes, offsets, Interval{xlo, xhi});
    }
    return ifs::mobius_family(mats);
}

// x -> (x + i - 1) / m on [0,1]; used when a potential needs no geometry.
ifs::IFSFamily default_family(int m) {
    std::vector<double> slopes(static_cast<std::size_t>(m), 1.0 / m);
    std::vector<double> offsets;
    for (int i = 0; i < m; ++i) offsets.push_back(static_cast<double>(i) / m);
    return ifs::affine_family(slopes, offsets, Interval{0.0, 1.0});
}

std::vector<Mat2> parse_matrices(const std::string& text) {
    std::vector<Mat2> mats;
    std::stringstream ss(text);
    std::string group;
    while (std::getline(ss, group, ';')) {
        double e[4];
        if (std::sscanf(group.c_str(), "%lf,%lf,%lf,%lf", &e[0], &e[1], &e[2], &e[3]) != 4) {
            throw ConfigError("bad matrix '" + group + "' (want a,b,c,d)");
        }
        mats.push_back({e[0], e[1], e[2], e[3]});
    }
    if (mats.empty()) throw ConfigError("no matrices given");
    return mats;
}

struct PotentialSetup {
    thermo::Potential pot = thermo::Potential::first_symbol({0.0});
    std::optional<ifs::IFSFamily> fam;
};

PotentialSetup parse_potential(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    PotentialSetup setup;
    if (name == "first-symbol") {
        std::vector<double> probs;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) probs.push_back(std::strtod(item.c_str(), nullptr));
        if (probs.size() < 2) throw ConfigError("first-symbol potential needs >= 2 weights");
        std::vector<double> logs;
        for (double p : probs) {
            if (!(p > 0.0)) throw ConfigError("first-symbol weights must be positive");
            logs.push_back(std::log(p));
        }
        setup.pot = thermo::Potential::first_symbol(std::move(logs));
    } else if (name == "geometric") {
        setup.pot = thermo::Potential::geometric(std::strtod(rest.c_str(), nullptr));
    } else if (name == "bc") {
        double lambda = 0.0, rho = 0.0;
        if (std::sscanf(rest.c_str(), "%lf,%lf", &lambda, &rho) != 2) {
            throw ConfigError("bc potential wants bc:lambda,rho");
        }
        const app::PlaceDepBC bc(lambda, rho);
        setup.pot = app::bc_potential(bc);
        setup.fam = app::bc_family(lambda);
    } else if (name == "matrix-norm") {
        const auto semi = rest.find(';');
        if (semi == std::string::npos) throw ConfigError("matrix-norm wants q;a,b,c,d;...");
        const double q = std::strtod(rest.substr(0, semi).c_str(), nullptr);
        setup.pot = thermo::Potential::matrix_norm(q, parse_matrices(rest.substr(semi + 1)));
    } else {
        throw ConfigError("unknown potential '" + name + "'");
    }
    return setup;
}

json word_json(const sym::Word& w) {
    json arr = json::array();
    for (int s : w) arr.push_back(s);
    return arr;
}

int cmd_sim_dim(const Options& opts) {
    const auto ratios = opts.numbers("ratios");
    const double s = thermo::solve_similarity_dimension(ratios);
    Output out(opts);
    if (out.wants_json()) {
        json doc = json_doc(opts);
        doc["s"] = round9(s);
        out.write(doc.dump(2) + "\n");
    } else {
        out.write("s\n" + fmt9(s) + "\n");
    }
    out.summary() << "s = " << fmt9(s) << "\n";
    return 0;
}

int cmd_pressure_curve(const Options& opts) {
    const auto fam = family_from_options(opts);
    const GridSpec tg = opts.grid("t");
    const int depth = static_cast<int>(opts.integer_or("depth", 8));
    const std::uint64_t budget = resolve_budget(opts);
    std::ostringstream csv;
    csv << "t,pressure,pressure_2n\n";
    for (int i = 0; i < tg.count; ++i) {
        const double t = tg.count == 1 ? tg.lo : tg.lo + (tg.hi - tg.lo) * i / (tg.count - 1);
        const auto p = thermo::pressure(fam, {}, t, depth, budget);
        csv << fmt9(t) << "," << fmt9(p.at_n) << ","
            << (p.at_2n ? fmt9(*p.at_2n) : std::string("")) << "\n";
    }
    Output out(opts);
    out.write(csv.str());
    const auto root = thermo::conformal_similarity_dimension(fam, {}, depth, budget);
    out.summary() << "pressure curve over t in [" << fmt9(tg.lo) << ", " << fmt9(tg.hi)
                  << "], zero near t = " << fmt9(root.value) << "\n";
    return 0;
}

int cmd_gibbs(const Options& opts) {
    PotentialSetup setup = parse_potential(opts.str("potential"));
    std::optional<ifs::IFSFamily> fam_opt;
    if (opts.has("family.m")) fam_opt = family_from_options(opts);
    if (!fam_opt && setup.fam) fam_opt = setup.fam;
    const std::uint64_t budget = resolve_budget(opts);
    const int m = fam_opt ? fam_opt->map_count() : std::max(2, setup.pot.symbol_count());
    if (!fam_opt) fam_opt = default_family(m);
    const ifs::IFSFamily& fam = *fam_opt;
    if (!setup.pot.holder_ready()) setup.pot.calibrate_holder(fam, {});

    const int depth = static_cast<int>(opts.integer_or("depth", 6));
    const int k = static_cast<int>(
        opts.integer_or("k", thermo::default_truncation_depth(setup.pot, fam.map_count(), budget)));
    const auto g = thermo::transfer_operator_solve(setup.pot, fam, {}, k, depth, budget);

    json doc = json_doc(opts);
    doc["depth"] = g.depth;
    doc["k"] = g.k;
    doc["eigenvalue"] = round9(g.eigenvalue);
    doc["residual"] = round9(g.residual);
    json weights = json::array();
    for (std::size_t idx = 0; idx < g.weights.size(); ++idx) {
        weights.push_back(json::array(
            {word_json(sym::word_from_index(idx, g.m, g.depth)), round9(g.weights[idx])}));
    }
    doc["weights"] = weights;
    Output out(opts, /*prefer_json=*/true);
    out.write(doc.dump(2) + "\n");
    out.summary() << "gibbs depth " << g.depth << " k " << g.k << " eigenvalue "
                  << fmt9(g.eigenvalue) << " residual " << fmt9(g.residual) << "\n";
    return 0;
}

int cmd_dim_scan(const Options& opts) {
    const auto fam = family_from_options(opts);
    const std::uint64_t budget = resolve_budget(opts);
    const int depth = static_cast<int>(opts.integer_or("depth", 10));
    const int levels = static_cast<int>(opts.integer_or("levels", depth - 1));

    thermo::Potential pot = thermo::Potential::geometric(0.0);
    if (opts.has("potential")) {
        pot = parse_potential(opts.str("potential")).pot;
    } else {
        const auto sdim = thermo::conformal_similarity_dimension(fam, {}, 8, budget);
        pot = thermo::Potential::geometric(sdim.value);
    }
    if (!pot.holder_ready()) pot.calibrate_holder(fam, {});
    const int k = static_cast<int>(opts.integer_or(
        "k", std::min(depth, thermo::default_truncation_depth(pot, fam.map_count(), budget))));
    const auto g = thermo::transfer_operator_solve(pot, fam, {}, k, depth, budget);

    std::vector<int> box_depths;
    if (opts.has("box-depths")) {
        for (double v : opts.numbers("box-depths")) box_depths.push_back(static_cast<int>(v));
    }
    const auto rep = dim::dimension_report(g, fam, {}, levels, box_depths, budget);
    Output out(opts);

    // per-level energy terms for plotting
    if (opts.has("energy-out")) {
        const double alpha = opts.number_or("energy-alpha", rep.cor.estimate);
        const auto es = dim::symbolic_energy(g, fam, {}, alpha, levels, budget);
        std::ostringstream csv;
        csv << "level,term\n";
        for (std::size_t n = 0; n < es.terms.size(); ++n) {
            csv << n << "," << fmt9(es.terms[n]) << "\n";
        }
        std::ofstream eout(opts.str("energy-out"), std::ios::binary);
        if (!eout) throw ConfigError("cannot write " + opts.str("energy-out"));
        eout << csv.str();
    }

    if (out.wants_json()) {
        json doc = json_doc(opts);
        doc["h"] = round9(rep.h);
        doc["chi"] = round9(rep.chi);
        doc["ratio_dim"] = round9(rep.ratio_dim);
        doc["cor_dim"] = json{{"estimate", round9(rep.cor.estimate)},
                              {"bracket_lo", round9(rep.cor.bracket_lo)},
                              {"bracket_hi", round9(rep.cor.bracket_hi)}};
        if (rep.box_dim) doc["box_dim"] = round9(*rep.box_dim);
        doc["depth"] = rep.depth;
        doc["levels"] = rep.levels;
        doc["residual"] = round9(rep.residual);
        if (opts.has("energy-alpha")) {
            const double alpha = opts.number("energy-alpha");
            const auto es = dim::symbolic_energy(g, fam, {}, alpha, levels, budget);
            json terms = json::array();
            for (double t : es.terms) terms.push_back(round9(t));
            doc["energy"] = json{{"alpha", round9(alpha)},
                                 {"growth_rate", round9(es.growth_rate)},
                                 {"partial_sum", round9(es.partial_sum)},
                                 {"terms", terms}};
        }
        out.write(doc.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "h,chi,ratio_dim,cor_dim,cor_lo,cor_hi,box_dim\n";
        csv << fmt9(rep.h) << "," << fmt9(rep.chi) << "," << fmt9(rep.ratio_dim) << ","
            << fmt9(rep.cor.estimate) << "," << fmt9(rep.cor.bracket_lo) << ","
            << fmt9(rep.cor.bracket_hi) << ","
            << (rep.box_dim ? fmt9(*rep.box_dim) : std::string("")) << "\n";
        out.write(csv.str());
    }
    out.summary() << "dim: h/chi = " << fmt9(rep.ratio_dim) << " cor = "
                  << fmt9(rep.cor.estimate)
                  << (rep.box_dim ? " box = " + fmt9(*rep.box_dim) : "") << "\n";
    return 0;
}

int cmd_bc_region(const Options& opts) {
    const GridSpec lg = opts.grid("lambda");
    const GridSpec rg = opts.grid("rho");
    const auto cells = app::bc_region_scan(lg.lo, lg.hi, lg.count, rg.lo, rg.hi, rg.count);
    std::ostringstream csv;
    csv << "lambda,rho,A,B,dim_lower,dim_upper,class\n";
    std::size_t abs_count = 0, sing_count = 0;
    for (const auto& cell : cells) {
        csv << fmt9(cell.lambda) << "," << fmt9(cell.rho) << "," << fmt9(cell.bounds.A) << ","
            << fmt9(cell.bounds.B) << "," << fmt9(cell.bounds.dim_lower) << ","
            << fmt9(cell.bounds.dim_upper) << "," << app::to_string(cell.cls) << "\n";
        abs_count += cell.cls == app::RegionClass::abs_cont_ae;
        sing_count += cell.cls == app::RegionClass::singular;
    }
    Output out(opts);
    out.write(csv.str());
    out.summary() << "region scan: " << cells.size() << " cells, " << abs_count
                  << " abs_cont_ae, " << sing_count << " singular\n";
    return 0;
}

int cmd_bc_sample(const Options& opts) {
    const app::PlaceDepBC spec(opts.number("lambda"), opts.number_or("rho", 0.0));
    const auto n = static_cast<std::size_t>(opts.integer_or("n", 100000));
    const auto seed = static_cast<std::uint64_t>(opts.integer_or("seed", 1));
    const auto samples = app::bc_chaos_game(spec, n, seed);
    std::ostringstream body;
    for (double x : samples) body << fmt9(x) << "\n";
    Output out(opts);
    out.write(body.str());
    if (n >= 10000) {
        const auto stats = app::bc_entropy_lyapunov(spec, samples);
        out.summary() << "bc samples n = " << n << " h_mc = " << fmt9(stats.h)
                      << " chi = " << fmt9(stats.chi) << "\n";
    } else {
        out.summary() << "bc samples n = " << n << "\n";
    }
    return 0;
}

int cmd_transversality(const Options& opts) {
    const std::string mode = opts.str_or("mode", "translate");
    std::optional<ifs::IFSFamily> fam;
    if (mode == "bc") {
        fam = app::bc_parametrized_family();
    } else if (mode == "translate") {
        fam = ifs::vertical_translate_family(family_from_options(opts),
                                             opts.number_or("epsilon", 0.05));
    } else {
        throw ConfigError("unknown mode '" + mode + "' (want translate or bc)");
    }
    const int grid = static_cast<int>(opts.integer_or("grid", 9));
    const int depth = static_cast<int>(opts.integer_or("depth", 4));
    const int trunc = static_cast<int>(opts.integer_or("truncation", 40));
    const auto rep = trans::check_MT(*fam, grid, depth, trunc);

    Output out(opts, /*prefer_json=*/true);
    if (out.wants_json()) {
        json doc = json_doc(opts);
        doc["eta_passed"] = round9(rep.eta_passed);
        doc["pairs_tested"] = rep.pairs_tested;
        doc["depth"] = rep.depth;
        doc["grid"] = rep.grid;
        json viols = json::array();
        for (const auto& v : rep.violations) {
            json lam = json::array();
            for (double c : v.lambda) lam.push_back(round9(c));
            viols.push_back(json{{"lambda", lam},
                                 {"i", v.i.to_string()},
                                 {"j", v.j.to_string()},
                                 {"delta_pi", round9(v.delta_pi)},
                                 {"grad_norm", round9(v.grad_norm)}});
        }
        doc["violations"] = viols;
        out.write(doc.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "lambda,i,j,delta_pi,grad_norm\n";
        for (const auto& v : rep.violations) {
            csv << "\"";
            for (std::size_t c = 0; c < v.lambda.size(); ++c) {
                if (c) csv << " ";
                csv << fmt9(v.lambda[c]);
            }
            csv << "\"," << v.i.to_string() << "," << v.j.to_string() << ","
                << fmt9(v.delta_pi) << "," << fmt9(v.grad_norm) << "\n";
        }
        out.write(csv.str());
    }
    out.summary() << "transversality eta_passed = " << fmt9(rep.eta_passed) << " over "
                  << rep.pairs_tested << " pairs, " << rep.violations.size()
                  << " violations\n";
    return 0;
}

int cmd_furstenberg(const Options& opts) {
    app::FurstenbergSpec spec;
    spec.matrices = parse_matrices(opts.str("matrices"));
    spec.q = opts.number_or("q", 0.0);
    const std::uint64_t budget = resolve_budget(opts);
    const int k = static_cast<int>(opts.integer_or("k", 8));
    const int n = static_cast<int>(opts.integer_or("n", k));
    const auto g = app::furstenberg_gibbs(spec, k, budget);
    const auto rep = app::furstenberg_dimension(spec, g, n, budget);

    json doc = json_doc(opts);
    doc["in_U"] = spec.in_U();
    doc["pressure"] = round9(rep.pressure);
    doc["eta1"] = round9(rep.eta1);
    doc["eta2"] = round9(rep.eta2);
    doc["h"] = round9(rep.h);
    doc["chi"] = round9(rep.chi);
    doc["dimension"] = round9(rep.dimension);
    doc["abs_cont_flag"] = rep.abs_cont_flag;
    Output out(opts, /*prefer_json=*/true);
    out.write(doc.dump(2) + "\n");
    out.summary() << "furstenberg dim = " << fmt9(rep.dimension) << " h = " << fmt9(rep.h)
                  << " chi = " << fmt9(rep.chi)
                  << (rep.abs_cont_flag ? " (abs cont regime)" : "") << "\n";
    return 0;
}

int cmd_baker(const Options& opts) {
    const app::BakerSpec spec(opts.number("lambda"), opts.number("rho"));
    const auto n = static_cast<std::size_t>(opts.integer_or("n", 100000));
    const auto seed = static_cast<std::uint64_t>(opts.integer_or("seed", 1));
    if (opts.has("vs-bc")) {
        const double ks = app::baker_vs_bc(spec, n, seed);
        Output out(opts);
        out.write("ks\n" + fmt9(ks) + "\n");
        out.summary() << "baker vs bc KS = " << fmt9(ks) << "\n";
        return 0;
    }
    const auto orbit = app::baker_orbit(spec, n, seed);
    std::ostringstream csv;
    csv << "x,y\n";
    for (std::size_t idx = 0; idx < orbit.x.size(); ++idx) {
        csv << fmt9(orbit.x[idx]) << "," << fmt9(orbit.y[idx]) << "\n";
    }
    Output out(opts);
    out.write(csv.str());
    out.summary() << "baker orbit n = " << n << "\n";
    return 0;
}

void print_help() {
    std::cout <<
        "ifslab " << kVersion << " - interval IFS, Gibbs measures and dimension estimators\n"
        "\n"
        "usage: ifslab <command> [--key value ...]\n"
        "\n"
        "commands and their CSV/JSON outputs:\n"
        "  sim-dim         --ratios a,b,...          CSV: s | JSON: {s}\n"
        "  pressure-curve  --family F --t lo:hi:n    CSV: t,pressure,pressure_2n\n"
        "  gibbs           --potential P --depth n   JSON: depth,k,eigenvalue,residual,weights\n"
        "  dim-scan        --family F --depth n [--levels N] [--box-depths a,b,...]\n"
        "                  [--energy-alpha a] [--energy-out CSV]\n"
        "                                            CSV: h,chi,ratio_dim,cor_dim,cor_lo,cor_hi,box_dim\n"
        "                                            (JSON report when --out ends in .json)\n"
        "  bc-region       --lambda lo:hi:n --rho lo:hi:n\n"
        "                                            CSV: lambda,rho,A,B,dim_lower,dim_upper,class\n"
        "  bc-sample       --lambda v [--rho v] --n N --seed S   one sample per line\n"
        "  transversality  [--mode translate|bc] [--family F --epsilon e] --grid g --depth d\n"
        "                                            CSV: lambda,i,j,delta_pi,grad_norm | JSON report\n"
        "  furstenberg     --matrices 'a,b,c,d;...' --q v --k k --n n   JSON report\n"
        "  baker           --lambda v --rho v --n N --seed S [--vs-bc]  CSV: x,y | KS line\n"
        "\n"
        "common flags: --out PATH (extension .json selects JSON where supported),\n"
        "  --config FILE (key=value defaults; flags override), --budget N\n"
        "  (or IFSLAB_BUDGET) caps enumerated cylinders per call.\n"
        "\n"
        "potentials: first-symbol:p1,p2,...  geometric:s  bc:lambda,rho\n"
        "  matrix-norm:q;a,b,c,d;...\n"
        "\n"
        "family config keys: family.m, family.x_lo, family.x_hi,\n"
        "  family.mapI.kind=affine|mobius with slope/offset or a/b/c/d.\n";
}

const std::map<std::string, int (*)(const Options&)> kCommands = {
    {"sim-dim", cmd_sim_dim},
    {"pressure-curve", cmd_pressure_curve},
    {"gibbs", cmd_gibbs},
    {"dim-scan", cmd_dim_scan},
    {"bc-region", cmd_bc_region},
    {"bc-sample", cmd_bc_sample},
    {"transversality", cmd_transversality},
    {"furstenberg", cmd_furstenberg},
    {"baker", cmd_baker},
};

// Flags that take no value.
bool is_switch(const std::string& key) { return key == "vs-bc" || key == "help"; }

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        if (args.empty() || args[0] == "--help" || args[0] == "help") {
            print_help();
            return 0;
        }
        if (args[0] == "--version") {
            std::cout << "ifslab " << kVersion << "\n";
            return 0;
        }
        const auto cmd = kCommands.find(args[0]);
        if (cmd == kCommands.end()) {
            throw ConfigError("unknown command '" + args[0] + "' (see --help)");
        }
        Options opts;
        std::optional<std::string> config_path;
        for (std::size_t i = 1; i < args.size(); ++i) {
            const std::string& token = args[i];
            if (token.size() < 3 || token.substr(0, 2) != "--") {
                throw ConfigError("unexpected argument '" + token + "'");
            }
            const std::string key = token.substr(2);
            if (is_switch(key)) {
                opts.set(key, "1");
                continue;
            }
            if (i + 1 >= args.size()) throw ConfigError("missing value for --" + key);
            const std::string value = args[++i];
            if (key == "config") {
                config_path = value;
            } else {
                opts.set(key, value);
            }
        }
        if (config_path) {
            load_config_file(opts, *config_path, /*override_existing=*/false);
        }
        if (opts.has("family")) {
            load_config_file(opts, opts.str("family"), /*override_existing=*/false);
        }
        if (opts.has("help")) {
            print_help();
            return 0;
        }
        return cmd->second(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace ifslab::cli
