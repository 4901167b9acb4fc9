// modlab: theorem queries, region diagrams, norm evaluation and experiment
// orchestration for the Sobolev/modulation embedding laboratory.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "modlab/experiments.hpp"
#include "modlab/schema.hpp"

namespace fs = std::filesystem;
using namespace modlab;

namespace {

// exit codes: 0 ok, 1 inconsistent probe, 2 parse/validation,
//             3 domain, 4 unwritable path, 5 truncation tail
struct CliError : std::runtime_error {
    CliError(int code_, const std::string& what) : std::runtime_error(what), code(code_) {}
    int code;
};

Rational parse_rational(const std::string& text, bool approx, const std::string& what) {
    if (auto r = Rational::parse(text)) return *r;
    // decimal entry is accepted only behind --approx and rounds with a warning
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        if (!approx) {
            throw CliError(2, what + " '" + text +
                                  "' is not an exact rational; write num/den or pass --approx");
        }
        Rational rounded = Rational::from_double(v, 1'000'000);
        std::cerr << "warning: " << what << " " << text << " approximated as " << rounded.str()
                  << "\n";
        return rounded;
    } catch (const CliError&) {
        throw;
    } catch (const std::exception&) {
        throw CliError(2, "cannot parse " + what + " '" + text + "'");
    }
}

ExtendedExponent parse_exponent(const std::string& text, bool approx, const std::string& what) {
    if (text == "infty") return ExtendedExponent::infinity();
    Rational r = parse_rational(text, approx, what);
    if (r < Rational(1)) {
        throw CliError(2, what + " must satisfy p >= 1 (or be 'infty'), got " + text);
    }
    return ExtendedExponent::from_value(r);
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(4, "cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw CliError(4, "failed while writing '" + path.string() + "'");
}

// ---------------------------------------------------------------- verdict

int cmd_verdict(const std::string& p_text, const std::string& q_text, const std::string& s_text,
                int n, const std::string& alpha_text, const std::string& dir, bool approx) {
    ExtendedExponent p = parse_exponent(p_text, approx, "--p");
    ExtendedExponent q = parse_exponent(q_text, approx, "--q");
    Smoothness s = parse_rational(s_text, approx, "--s");
    if (n < 1) throw CliError(2, "--n must be >= 1");

    const bool is_mult = dir.rfind("mult-", 0) == 0;
    if (is_mult && alpha_text.empty()) throw CliError(2, "--alpha is required for " + dir);
    if (!is_mult && !alpha_text.empty()) throw CliError(2, "--alpha only applies to mult-* directions");

    nlohmann::json out{{"p", p.str()}, {"q", q.str()}, {"s", s.str()}, {"n", n}, {"direction", dir}};
    if (is_mult) {
        Rational alpha = parse_rational(alpha_text, approx, "--alpha");
        MultiplierDirection mdir = dir == "mult-M-to-L" ? MultiplierDirection::ModulationToLp
                                                        : MultiplierDirection::LpToModulation;
        TriVerdict v = multiplier_verdict(p, q, s, n, alpha, mdir);
        out["alpha"] = alpha.str();
        out["verdict"] = v.str();
        out["matched_condition"] = v.matched_condition;
        out["threshold"] = v.threshold.str();
    } else {
        Verdict v;
        if (dir == "L-to-M") {
            v = embeds_L_in_M(p, q, s, n);
        } else if (dir == "M-to-L") {
            v = embeds_M_in_L(p, q, s, n);
        } else if (dir == "B-to-M") {
            v = embeds_besov_modulation(p, q, s, n, EmbeddingDirection::BesovToM);
        } else if (dir == "M-to-B") {
            v = embeds_besov_modulation(p, q, s, n, EmbeddingDirection::MToBesov);
        } else {
            throw CliError(2, "unknown --dir '" + dir + "'");
        }
        out["verdict"] = v.str();
        out["matched_condition"] = v.matched_condition;
        out["threshold"] = v.threshold.str();
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

// --------------------------------------------------------- region diagram

int cmd_region_diagram(int resolution, const std::string& out_dir) {
    if (resolution < 8) throw CliError(2, "--resolution must be >= 8");
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    std::ostringstream csv;
    csv << "u,v,nu1,nu2,mu1,mu2\n";
    for (int i = 0; i <= resolution; ++i) {
        for (int j = 0; j <= resolution; ++j) {
            IndexPair pq(Rational(i, resolution), Rational(j, resolution));
            csv << pq.u.str() << "," << pq.v.str() << "," << nu1(pq).str() << "," << nu2(pq).str()
                << "," << mu1(pq).str() << "," << mu2(pq).str() << "\n";
        }
    }
    write_text_file(dir / "region_samples.csv", csv.str());

    // unit square mapped to pixels, y up
    const double size = 400, margin = 45;
    auto X = [&](double u) { return margin + u * size; };
    auto Y = [&](double v) { return margin + (1 - v) * size; };
    auto polyline = [&](double u0, double v0, double u1, double v1) {
        std::ostringstream s;
        s << "    <polyline points=\"" << X(u0) << "," << Y(v0) << " " << X(u1) << "," << Y(v1)
          << "\" fill=\"none\"/>\n";
        return s.str();
    };
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << size + 2 * margin << "\" height=\"" << size + 2 * margin << "\">\n";
    svg << "  <rect x=\"" << X(0) << "\" y=\"" << Y(1) << "\" width=\"" << size << "\" height=\""
        << size << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "  <g id=\"starred-boundaries\" class=\"region-boundaries\" stroke=\"#c03030\" "
           "stroke-width=\"2\">\n"
        << polyline(0, 0, 0.5, 0.5) << polyline(0.5, 0.5, 1, 0) << polyline(0.5, 0.5, 0.5, 1)
        << "  </g>\n";
    svg << "  <g id=\"unstarred-boundaries\" class=\"region-boundaries\" stroke=\"#3050c0\" "
           "stroke-width=\"2\">\n"
        << polyline(0, 1, 0.5, 0.5) << polyline(0.5, 0.5, 1, 1) << polyline(0.5, 0.5, 0.5, 0)
        << "  </g>\n";
    svg << "  <text x=\"" << X(1) + 8 << "\" y=\"" << Y(0) + 4 << "\">1/p</text>\n";
    svg << "  <text x=\"" << X(0) - 30 << "\" y=\"" << Y(1) - 8 << "\">1/q</text>\n";
    svg << "  <text x=\"" << X(0.72) << "\" y=\"" << Y(0.22) << "\" fill=\"#c03030\">I1*/I2*/I3* "
           "edges</text>\n";
    svg << "  <text x=\"" << X(0.02) << "\" y=\"" << Y(0.93) << "\" fill=\"#3050c0\">I1/I2/I3 "
           "edges</text>\n";
    svg << "</svg>\n";
    write_text_file(dir / "region_diagram.svg", svg.str());

    std::cout << "wrote " << (dir / "region_samples.csv").string() << " and "
              << (dir / "region_diagram.svg").string() << "\n";
    return 0;
}

// ------------------------------------------------------------------ norm

int cmd_norm(const std::string& input, const std::string& space, const std::string& p_text,
             const std::string& q_text, const std::string& s_text, const std::string& window_name,
             int truncation_radius, bool approx) {
    std::ifstream in(input);
    if (!in) throw CliError(2, "cannot open input '" + input + "'");
    SampledFunction f = [&] {
        try {
            return read_csv(in);
        } catch (const std::exception& e) {
            throw CliError(2, std::string("bad input csv: ") + e.what());
        }
    }();

    ExtendedExponent p = parse_exponent(p_text, approx, "--p");
    Smoothness s = parse_rational(s_text, approx, "--s");

    NormReport report;
    if (space == "Lp" || space == "Lps") {
        double value = space == "Lp" ? lp_norm(f, p) : sobolev_norm(f, p, s);
        report.space = space;
        report.p = p.str();
        report.q = "";
        report.s = space == "Lp" ? "0" : s.str();
        report.value = value;
        report.k_dims = f.spec().n;
    } else if (space == "M" || space == "B") {
        ExtendedExponent q = parse_exponent(q_text, approx, "--q");
        if (space == "M") {
            Window w(window_name == "smoothed-hat" ? Window::Kind::SmoothedHat
                                                   : Window::Kind::Hat);
            std::optional<int> radius;
            if (truncation_radius >= 0) radius = truncation_radius;
            report = modulation_norm(f, p, q, s, w, radius);
        } else {
            report = besov_norm(f, p, q, s, DyadicWindow{});
        }
    } else {
        throw CliError(2, "unknown --space '" + space + "' (expected Lp, Lps, M or B)");
    }
    std::cout << report.to_json().dump(2) << "\n";
    return 0;
}

// ------------------------------------------------------------- experiment

struct RunConfig {
    std::string command;
    std::vector<std::string> p, q, s, alpha;
    std::vector<double> lambdas;
    std::vector<int> radii, ks;
    std::string family;
    int trials = 10;
    int n_start = 3;
    double eps = 0.5;
    std::optional<GridSpec> grid;
    std::uint64_t seed = kDefaultSeed;
    bool timestamp = true;
    std::string out = "out";
};

RunConfig parse_config(const nlohmann::json& j) {
    static const std::vector<std::string> known{"command", "p",     "q",    "s",       "alpha",
                                                "lambdas", "radii", "k",    "family",  "trials",
                                                "n_start", "eps",   "grid", "seed",    "timestamp",
                                                "out"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw CliError(2, "unknown config key '" + it.key() + "'");
        }
    }
    RunConfig cfg;
    try {
        cfg.command = j.at("command").get<std::string>();
        auto strings = [&](const char* key) {
            std::vector<std::string> v;
            if (j.contains(key)) {
                for (const auto& e : j.at(key)) v.push_back(e.get<std::string>());
            }
            return v;
        };
        cfg.p = strings("p");
        cfg.q = strings("q");
        cfg.s = strings("s");
        cfg.alpha = strings("alpha");
        if (j.contains("lambdas")) cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
        if (j.contains("radii")) cfg.radii = j.at("radii").get<std::vector<int>>();
        if (j.contains("k")) cfg.ks = j.at("k").get<std::vector<int>>();
        if (j.contains("family")) cfg.family = j.at("family").get<std::string>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("n_start")) cfg.n_start = j.at("n_start").get<int>();
        if (j.contains("eps")) cfg.eps = j.at("eps").get<double>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("timestamp")) cfg.timestamp = j.at("timestamp").get<bool>();
        if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            for (auto it = g.begin(); it != g.end(); ++it) {
                if (it.key() != "N" && it.key() != "M" && it.key() != "L") {
                    throw CliError(2, "unknown grid key '" + it.key() + "'");
                }
            }
            int N = g.at("N").get<int>();
            if (g.contains("M")) {
                cfg.grid = GridSpec::with_integer_frequencies(1, N, g.at("M").get<int>());
            } else {
                cfg.grid = GridSpec::make(1, N, g.at("L").get<double>());
            }
        }
    } catch (const CliError&) {
        throw;
    } catch (const std::exception& e) {
        throw CliError(2, std::string("bad config: ") + e.what());
    }
    return cfg;
}

int cmd_experiment(const std::string& config_path, const std::string& out_override,
                   std::int64_t seed_override, bool no_timestamp) {
    std::ifstream in(config_path);
    if (!in) throw CliError(2, "cannot open config '" + config_path + "'");
    nlohmann::json cfg_json;
    try {
        in >> cfg_json;
    } catch (const std::exception& e) {
        throw CliError(2, std::string("config is not valid json: ") + e.what());
    }
    RunConfig cfg = parse_config(cfg_json);
    if (!out_override.empty()) cfg.out = out_override;
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (no_timestamp) cfg.timestamp = false;

    auto exponents = [&](const std::vector<std::string>& texts, const char* what) {
        std::vector<ExtendedExponent> v;
        for (const auto& t : texts) v.push_back(parse_exponent(t, false, what));
        return v;
    };
    auto rationals = [&](const std::vector<std::string>& texts, const char* what) {
        std::vector<Rational> v;
        for (const auto& t : texts) v.push_back(parse_rational(t, false, what));
        return v;
    };

    std::vector<ProbeReport> reports;
    if (cfg.command == "dilation") {
        auto ps = exponents(cfg.p, "p");
        auto qs = exponents(cfg.q, "q");
        if (ps.empty() || qs.empty()) throw CliError(2, "dilation needs nonempty p and q grids");
        std::vector<double> lambdas =
            cfg.lambdas.empty() ? std::vector<double>{1, 2, 4, 8, 16, 32, 64} : cfg.lambdas;
        DilationFamily family =
            cfg.family == "annulus" ? DilationFamily::Annulus : DilationFamily::Gaussian;
        std::vector<std::pair<ExtendedExponent, ExtendedExponent>> pairs;
        for (const auto& p : ps) {
            for (const auto& q : qs) pairs.emplace_back(p, q);
        }
        reports = dilation_sweep(pairs, lambdas, family, cfg.grid);
    } else if (cfg.command == "embedding") {
        auto ps = exponents(cfg.p, "p");
        auto qs = exponents(cfg.q, "q");
        auto ss = rationals(cfg.s, "s");
        if (ps.empty() || qs.empty() || ss.empty()) {
            throw CliError(2, "embedding needs nonempty p, q and s grids");
        }
        ProbeFamily family = cfg.family == "gabor-critical" ? ProbeFamily::GaborCritical
                                                            : ProbeFamily::GaussianDilates;
        std::vector<double> sweep(cfg.radii.begin(), cfg.radii.end());
        if (sweep.empty()) sweep.assign(cfg.lambdas.begin(), cfg.lambdas.end());
        for (const auto& p : ps) {
            for (const auto& q : qs) {
                for (const auto& s : ss) {
                    reports.push_back(embedding_probe(p, q, s, 1, family, sweep, cfg.grid));
                }
            }
        }
    } else if (cfg.command == "multiplier-loss") {
        auto ps = exponents(cfg.p, "p");
        auto alphas = rationals(cfg.alpha, "alpha");
        auto ss = rationals(cfg.s, "s");
        if (ps.empty() || alphas.empty() || ss.empty()) {
            throw CliError(2, "multiplier-loss needs nonempty p, alpha and s grids");
        }
        std::vector<double> lambdas =
            cfg.lambdas.empty() ? std::vector<double>{1, 2, 4, 8, 16, 32, 64} : cfg.lambdas;
        for (const auto& p : ps) {
            for (const auto& alpha : alphas) {
                for (const auto& s : ss) {
                    reports.push_back(multiplier_loss_experiment(p, alpha, s, lambdas, cfg.grid));
                }
            }
        }
    } else if (cfg.command == "dual-norm" || cfg.command == "annular") {
        auto ps = exponents(cfg.p, "p");
        auto qs = exponents(cfg.q, "q");
        auto ss = rationals(cfg.s, "s");
        if (ps.empty() || qs.empty() || ss.empty() || cfg.radii.empty()) {
            throw CliError(2, cfg.command + " needs p, q, s grids and radii");
        }
        for (const auto& p : ps) {
            for (const auto& q : qs) {
                for (const auto& s : ss) {
                    reports.push_back(cfg.command == "dual-norm"
                                          ? dual_norm_probe(p, q, s, 1, cfg.radii)
                                          : annular_growth_probe(p, q, s, 1, cfg.radii, cfg.eps,
                                                                 cfg.n_start));
                }
            }
        }
    } else if (cfg.command == "band-probe") {
        auto ps = exponents(cfg.p, "p");
        auto alphas = rationals(cfg.alpha, "alpha");
        if (ps.empty() || alphas.empty() || cfg.ks.empty()) {
            throw CliError(2, "band-probe needs p, alpha and k lists");
        }
        for (const auto& p : ps) {
            for (const auto& alpha : alphas) {
                for (int k : cfg.ks) {
                    double estimate =
                        band_multiplier_norm_probe(p, alpha, k, cfg.trials, cfg.seed, cfg.grid);
                    ProbeReport report;
                    report.probe = "band-probe";
                    report.params["p"] = p.str();
                    report.params["alpha"] = alpha.str();
                    report.params["k"] = std::to_string(k);
                    report.params["trials"] = std::to_string(cfg.trials);
                    report.measured = estimate;
                    report.seed = cfg.seed;
                    // on L^2 a unimodular symbol under a <=1 window cannot beat 1
                    report.verdict_consistency =
                        estimate > 0 && (!(p == ExtendedExponent::from_value(Rational(2))) ||
                                         estimate <= 1 + 1e-9);
                    reports.push_back(std::move(report));
                }
            }
        }
    } else {
        throw CliError(2, "unknown experiment command '" + cfg.command + "'");
    }

    if (reports.empty()) throw CliError(2, "experiment produced an empty parameter grid");

    fs::path out_dir(cfg.out);
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    std::string stamp = cfg.timestamp ? iso_timestamp() : "";
    std::ostringstream csv;
    if (cfg.timestamp) csv << "# generated_at=" << stamp << "\n";
    csv << "probe,p,q,s,alpha,family,n,predicted_low,predicted_high,measured,residual,consistent\n";
    bool all_consistent = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        ProbeReport& r = reports[i];
        r.seed = cfg.seed;
        nlohmann::json j = r.to_json();
        if (cfg.timestamp) j["generated_at"] = stamp;
        char name[32];
        std::snprintf(name, sizeof(name), "probe_%04zu.json", i);
        write_text_file(out_dir / name, j.dump(2) + "\n");
        auto param = [&](const char* key) {
            auto it = r.params.find(key);
            return it == r.params.end() ? std::string() : it->second;
        };
        csv << r.probe << "," << param("p") << "," << param("q") << "," << param("s") << ","
            << param("alpha") << "," << param("family") << "," << param("n") << ","
            << format_double(r.predicted_low) << "," << format_double(r.predicted_high) << ","
            << format_double(r.measured) << "," << format_double(r.fit ? r.fit->residual : 0.0)
            << "," << (r.verdict_consistency ? "true" : "false") << "\n";
        all_consistent = all_consistent && r.verdict_consistency;
    }
    write_text_file(out_dir / "summary.csv", csv.str());
    std::cout << "wrote " << reports.size() << " probe reports to " << out_dir.string()
              << (all_consistent ? " (all consistent)" : " (INCONSISTENT probes present)") << "\n";
    return all_consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp Sobolev/modulation embedding laboratory"};
    app.require_subcommand(1);

    // verdict
    auto* verdict = app.add_subcommand("verdict", "decide an embedding or multiplier statement");
    std::string p_text, q_text = "2", s_text = "0", alpha_text, dir;
    int n = 1;
    bool approx = false;
    verdict->add_option("--p", p_text, "exponent p (num/den or infty)")->required();
    verdict->add_option("--q", q_text, "exponent q (num/den or infty)");
    verdict->add_option("--s", s_text, "smoothness s (num/den)");
    verdict->add_option("--n", n, "dimension");
    verdict->add_option("--alpha", alpha_text, "multiplier exponent (mult-* only)");
    verdict->add_option("--dir", dir, "L-to-M | M-to-L | B-to-M | M-to-B | mult-M-to-L | mult-L-to-M")
        ->required();
    verdict->add_flag("--approx", approx, "accept decimals, rounded to denominator <= 1e6");

    // region-diagram
    auto* region = app.add_subcommand("region-diagram", "emit the index-region diagram and samples");
    int resolution = 12;
    std::string region_out = ".";
    region->add_option("--resolution", resolution, "grid steps per axis (>= 8)");
    region->add_option("--out", region_out, "output directory");

    // norm
    auto* norm = app.add_subcommand("norm", "evaluate a norm on a tabulated function");
    std::string input, space, norm_p = "2", norm_q = "2", norm_s = "0", window_name = "hat";
    int truncation_radius = -1;
    bool norm_approx = false;
    norm->add_option("--input", input, "csv file with grid header")->required();
    norm->add_option("--space", space, "Lp | Lps | M | B")->required();
    norm->add_option("--p", norm_p, "exponent p");
    norm->add_option("--q", norm_q, "exponent q (M and B)");
    norm->add_option("--s", norm_s, "smoothness s");
    norm->add_option("--window", window_name, "hat | smoothed-hat");
    norm->add_option("--truncation-radius", truncation_radius, "explicit band radius (M only)");
    norm->add_flag("--approx", norm_approx, "accept decimals, rounded with a warning");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run probes from a json config");
    std::string config_path, exp_out;
    std::int64_t seed_override = -1;
    bool no_timestamp = false;
    experiment->add_option("--config", config_path, "run configuration json")->required();
    experiment->add_option("--out", exp_out, "output directory (overrides config)");
    experiment->add_option("--seed", seed_override, "seed (overrides config)");
    experiment->add_flag("--no-timestamp", no_timestamp, "omit timestamps for reproducible bytes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verdict->parsed()) {
            return cmd_verdict(p_text, q_text, s_text, n, alpha_text, dir, approx);
        }
        if (region->parsed()) return cmd_region_diagram(resolution, region_out);
        if (norm->parsed()) {
            return cmd_norm(input, space, norm_p, norm_q, norm_s, window_name, truncation_radius,
                            norm_approx);
        }
        if (experiment->parsed()) {
            return cmd_experiment(config_path, exp_out, seed_override, no_timestamp);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const AliasingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
