// rdepth: regression depth, deepest fits and the Monte Carlo experiments from the command line.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <rdepth/rdepth.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rdepth;

namespace {

struct Common {
    std::string model = "normal";
    std::uint64_t seed = 20240917;
    int reps = 100;
    std::vector<std::size_t> n_grid{100, 200, 400, 800, 1600, 3200, 6400};
    std::string out = ".";
    unsigned threads = 0;
    int nodes = 256;
    int v_grid = 256;
    std::vector<double> beta_true{1.0, 2.0};
    double error_scale = 1.0;
    double epsilon = 0.1;
    double shift = 3.0;
};

std::string invocation;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + fmt(v[j]);
    return s + ")";
}

PopulationModel make_model(const Common& c) {
    if (c.model == "normal") return BivariateNormalStd{};
    if (c.model == "disk") return UniformUnitDisk{};
    if (c.model == "cauchy") return CauchyDesign{ParamVector(c.beta_true), c.error_scale};
    return ContaminatedNormal{c.epsilon, c.shift};
}

json model_json(const Common& c) {
    json j{{"name", c.model}};
    if (c.model == "cauchy") j["beta_true"] = c.beta_true, j["error_scale"] = c.error_scale;
    if (c.model == "contaminated") j["epsilon"] = c.epsilon, j["shift"] = c.shift;
    return j;
}

QuadConfig quad_of(const Common& c) {
    QuadConfig q;
    q.nodes = c.nodes;
    q.v_grid = c.v_grid;
    q.seed = c.seed;
    return q;
}

ExperimentConfig experiment_of(const Common& c) {
    ExperimentConfig e;
    e.n_grid = c.n_grid;
    e.reps = c.reps;
    e.master_seed = c.seed;
    e.quad = quad_of(c);
    e.threads = c.threads;
    return e;
}

json base_config(const Common& c) {
    return {{"invocation", invocation}, {"model", model_json(c)}, {"reps", c.reps},        {"n_grid", c.n_grid},
            {"nodes", c.nodes},         {"v_grid", c.v_grid},     {"out", c.out}};
}

std::vector<std::string> coord_header(std::size_t p) {
    std::vector<std::string> h;
    for (std::size_t j = 1; j <= p; ++j) h.push_back("s" + std::to_string(j));
    return h;
}

std::string out_path(const Common& c, const std::string& name) {
    fs::create_directories(c.out);
    return (fs::path(c.out) / name).string();
}

json depth_json(const DepthValue& d) {
    json j{{"normalized", d.normalized}, {"exact", d.exact}};
    j["count"] = d.count ? json(*d.count) : json(nullptr);
    if (d.witness) {
        j["witness"] = d.witness->values();
        if (d.witness->size() == 2) j["witness_angle"] = d.witness->angle();
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

void add_common(CLI::App* app, Common& c, bool with_model = true) {
    if (with_model) {
        app->add_option("--model", c.model, "population model")
            ->check(CLI::IsMember({"normal", "disk", "cauchy", "contaminated"}));
        app->add_option("--beta-true", c.beta_true, "cauchy design coefficients")->delimiter(',');
        app->add_option("--error-scale", c.error_scale, "cauchy design error sd")->check(CLI::PositiveNumber);
        app->add_option("--epsilon", c.epsilon, "contamination fraction")->check(CLI::Range(0.0, 0.4999999));
        app->add_option("--shift", c.shift, "contamination location");
    }
    app->add_option("--seed", c.seed, "master seed");
    app->add_option("--reps", c.reps, "replicates")->check(CLI::PositiveNumber);
    app->add_option("--n-grid", c.n_grid, "sample sizes, comma separated")->delimiter(',');
    app->add_option("--out", c.out, "output directory");
    app->add_option("--nodes", c.nodes, "quadrature nodes")->check(CLI::Range(32, 1 << 16));
    app->add_option("--v-grid", c.v_grid, "direction grid size")->check(CLI::Range(64, 1 << 14));
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) invocation += (i ? " " : "") + std::string(i == 0 ? "rdepth" : argv[i]);

    CLI::App app{"Regression depth and deepest-fit toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: RDEPTH_THREADS or all cores)");

    // depth
    std::string depth_file, depth_method = "def21";
    std::vector<double> depth_beta;
    int dirs = 2048;
    std::size_t oracle_grid = 100000;
    std::string depth_out;
    auto* depth = app.add_subcommand("depth", "depth of a candidate fit on a dataset");
    depth->add_option("dataset", depth_file, "CSV with header x1,...,y")->required()->check(CLI::ExistingFile);
    depth->add_option("--beta", depth_beta, "intercept first, comma separated")->required()->delimiter(',');
    depth->add_option("--method", depth_method)->check(CLI::IsMember({"def21", "bh99", "bh992", "oracle"}));
    depth->add_option("--dirs", dirs, "direction budget for p >= 3")->check(CLI::PositiveNumber);
    depth->add_option("--grid", oracle_grid, "angle grid for the oracle")->check(CLI::PositiveNumber);
    depth->add_option("--out", depth_out, "directory for depth.json");

    // fit
    std::string fit_file, fit_method = "exact", fit_out;
    int restarts = 8;
    std::uint64_t fit_seed = 1;
    auto* fit = app.add_subcommand("fit", "deepest fit of a dataset");
    fit->add_option("dataset", fit_file)->required()->check(CLI::ExistingFile);
    fit->add_option("--method", fit_method)->check(CLI::IsMember({"exact", "search"}));
    fit->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
    fit->add_option("--seed", fit_seed);
    fit->add_option("--out", fit_out, "directory for fit.json");

    // experiments
    auto* exp = app.add_subcommand("exp", "population depths and Monte Carlo experiments");
    exp->require_subcommand(1);
    exp->fallthrough();
    Common c;

    std::vector<double> pop_beta;
    auto* popdepth = exp->add_subcommand("popdepth", "population depth of a fit");
    add_common(popdepth, c);
    popdepth->add_option("--beta", pop_beta)->required()->delimiter(',');

    std::size_t sample_n = 100;
    auto* samp = exp->add_subcommand("sample", "draw a dataset from a model");
    add_common(samp, c);
    samp->add_option("--n", sample_n)->check(CLI::PositiveNumber);

    auto* cons = exp->add_subcommand("consistency", "error of the deepest fit across sample sizes");
    add_common(cons, c);

    auto* unif = exp->add_subcommand("uniform", "sup-over-grid depth error across sample sizes");
    add_common(unif, c);

    auto* assum = exp->add_subcommand("assumptions", "direction constancy, gradient and separation diagnostics");
    add_common(assum, c);

    int draws = 500;
    double box = 8.0;
    int box_res = 33;
    auto* limit = exp->add_subcommand("limit", "draws from the limiting argmax law");
    add_common(limit, c);
    limit->add_option("--draws", draws)->check(CLI::PositiveNumber);
    limit->add_option("--box", box, "half width of the s box")->check(CLI::PositiveNumber);
    limit->add_option("--box-res", box_res, "coarse grid points per axis")->check(CLI::Range(3, 1001));

    std::size_t emp_n = 2000;
    auto* emp = exp->add_subcommand("empirical", "sqrt(n)-scaled deepest-fit errors");
    add_common(emp, c);
    emp->add_option("--n", emp_n)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));

    std::string cmp_a, cmp_b;
    auto* cmp = exp->add_subcommand("compare", "two-sample comparison of point clouds");
    add_common(cmp, c, false);
    cmp->add_option("--a", cmp_a)->required()->check(CLI::ExistingFile);
    cmp->add_option("--b", cmp_b)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (threads == 0)
        if (const char* env = std::getenv("RDEPTH_THREADS")) {
            char* end = nullptr;
            const long t = std::strtol(env, &end, 10);
            if (*env == '\0' || *end != '\0' || t < 1) {
                std::cerr << "error: RDEPTH_THREADS must be a positive integer\n";
                return 2;
            }
            threads = static_cast<unsigned>(t);
        }
    c.threads = threads;

    try {
        if (*depth) {
            const auto set = read_dataset(depth_file);
            const ParamVector beta(depth_beta);
            if (beta.size() != set.dim())
                throw std::invalid_argument("--beta has " + std::to_string(beta.size()) + " entries, dataset needs " +
                                            std::to_string(set.dim()));
            DepthOptions opt;
            opt.dirs = static_cast<std::size_t>(dirs);
            DepthValue d;
            if (depth_method == "def21") d = rd_normalized(set, beta, opt);
            else if (depth_method == "bh99") d = rd_count_bh99(set, beta, opt);
            else if (depth_method == "bh992") d = rd_sign_bh992(set, beta, opt);
            else d = rd_bruteforce_oracle(set, beta, oracle_grid);
            std::cout << "method " << depth_method << "  depth " << fmt(d.normalized);
            if (d.count) std::cout << "  count " << fmt(*d.count);
            std::cout << "  exact " << (d.exact ? "yes" : "no");
            if (d.witness && d.witness->size() == 2) std::cout << "  witness_angle " << fmt(d.witness->angle());
            std::cout << '\n';
            if (!depth_out.empty()) {
                Common cc;
                cc.out = depth_out;
                json cfg{{"invocation", invocation}, {"dataset", depth_file}, {"beta", depth_beta},
                         {"method", depth_method},   {"dirs", dirs},         {"grid", oracle_grid}};
                write_json(out_path(cc, "depth.json"), make_report("depth", opt.seed, cfg, depth_json(d), {}));
            }
            return 0;
        }
        if (*fit) {
            const auto set = read_dataset(fit_file);
            bool varied = false;
            for (const auto& o : set) varied = varied || o.x != set[0].x;
            if (!varied) throw std::invalid_argument("all covariate rows are equal; the fit is not identified");
            const FitResult r = fit_method == "exact" ? fit_exact_p2(set) : fit_search(set, restarts, fit_seed);
            std::cout << "method " << to_string(r.method) << "  beta_hat " << fmt(r.beta_hat.values()) << "  depth "
                      << fmt(r.depth.normalized) << "  depth_at_beta_hat " << fmt(r.depth_at_beta_hat)
                      << "  tie_set_size " << r.tie_set_size << '\n';
            if (!fit_out.empty()) {
                Common cc;
                cc.out = fit_out;
                json ties = json::array();
                for (const auto& b : r.tie_set) ties.push_back(b.values());
                json res{{"beta_hat", r.beta_hat.values()}, {"depth", depth_json(r.depth)},
                         {"depth_at_beta_hat", r.depth_at_beta_hat}, {"tie_set_size", r.tie_set_size},
                         {"tie_set", ties}, {"method", to_string(r.method)}, {"evaluations", r.evaluations}};
                json cfg{{"invocation", invocation}, {"dataset", fit_file}, {"method", fit_method},
                         {"restarts", restarts}, {"seed", fit_seed}};
                write_json(out_path(cc, "fit.json"), make_report("fit", fit_seed, cfg, res, {}));
            }
            return 0;
        }

        const PopulationModel model = make_model(c);
        validate_model(model);
        json cfg = base_config(c);
        std::vector<std::string> warnings;

        if (*popdepth) {
            const ParamVector beta(pop_beta);
            const double num = rd_population_numeric(model, beta, quad_of(c));
            json res{{"beta", pop_beta}, {"numeric", num}};
            std::cout << "model " << c.model << "  beta " << fmt(pop_beta) << "  depth " << fmt(num);
            if (c.model == "normal" || c.model == "disk") {
                const double closed = c.model == "normal" ? rd_normal_closed(beta) : rd_disk_closed(beta);
                res["closed_form"] = closed;
                std::cout << "  closed_form " << fmt(closed);
            }
            std::cout << '\n';
            write_json(out_path(c, "popdepth.json"), make_report("exp popdepth", c.seed, cfg, res, warnings));
        } else if (*samp) {
            const auto set = sample(model, sample_n, c.seed);
            const auto path = out_path(c, "sample.csv");
            write_dataset(path, set);
            cfg["n"] = sample_n;
            write_json(out_path(c, "sample.json"),
                       make_report("exp sample", c.seed, cfg, {{"dataset", path}, {"n", sample_n}}, warnings));
            std::cout << "wrote " << sample_n << " observations to " << path << '\n';
        } else if (*cons) {
            const auto rep = run_consistency(model, experiment_of(c));
            std::vector<std::vector<double>> curve, reps;
            for (const auto& row : rep.rows) {
                curve.push_back({std::log(static_cast<double>(row.n)), std::log(row.median)});
                for (std::size_t r = 0; r < row.errors.size(); ++r)
                    reps.push_back({static_cast<double>(row.n), static_cast<double>(r), row.errors[r]});
                if (row.failures) warnings.push_back(std::to_string(row.failures) + " failed replicates at n = " + std::to_string(row.n));
            }
            write_points(out_path(c, "consistency.csv"), {"logn", "logerr"}, curve);
            write_points(out_path(c, "consistency_replicates.csv"), {"n", "rep", "error"}, reps);
            write_json(out_path(c, "consistency.json"), make_report("exp consistency", c.seed, cfg, to_json(rep), warnings));
            std::cout << "model " << c.model << "  loglog_slope " << fmt(rep.loglog_slope) << "  stderr "
                      << fmt(rep.slope_stderr) << '\n';
        } else if (*unif) {
            const auto rep = run_uniform_convergence(model, experiment_of(c));
            std::vector<std::vector<double>> curve, reps;
            for (const auto& row : rep.rows) {
                curve.push_back({static_cast<double>(row.n), row.median_sup_error, row.scaled_median});
                for (std::size_t r = 0; r < row.sup_errors.size(); ++r)
                    reps.push_back({static_cast<double>(row.n), static_cast<double>(r), row.sup_errors[r]});
            }
            write_points(out_path(c, "uniform.csv"), {"n", "median_sup_error", "sqrt_n_scaled"}, curve);
            write_points(out_path(c, "uniform_replicates.csv"), {"n", "rep", "sup_error"}, reps);
            write_json(out_path(c, "uniform.json"), make_report("exp uniform", c.seed, cfg, to_json(rep), warnings));
            std::cout << "model " << c.model;
            for (const auto& row : rep.rows) std::cout << "  n=" << row.n << ":" << fmt(row.median_sup_error);
            std::cout << '\n';
        } else if (*assum) {
            const auto li = compute_limit_ingredients(model, quad_of(c));
            const auto rep = check_assumptions(model, li, experiment_of(c));
            write_json(out_path(c, "ingredients.json"), to_json(li));
            write_json(out_path(c, "assumptions.json"), make_report("exp assumptions", c.seed, cfg, to_json(rep), warnings));
            std::cout << "model " << c.model << "  a2_spread " << fmt(rep.a2_spread) << "  kappa_hat "
                      << fmt(rep.c2prime_kappa_hat) << "  g_oddness " << fmt(rep.g_oddness) << '\n';
        } else if (*limit) {
            auto e = experiment_of(c);
            e.s_grid = {box, box_res};
            const auto li = compute_limit_ingredients(model, quad_of(c));
            const auto draws_out = simulate_limit_law(li, e, draws, c.seed);
            std::vector<std::vector<double>> pts;
            json arr = json::array();
            int flagged = 0;
            for (const auto& s : draws_out) {
                pts.push_back(s.s_hat);
                arr.push_back(to_json(s));
                flagged += !(s.concavity_ok && s.unique_ok && s.in_box && s.boundary_ok);
            }
            if (flagged) warnings.push_back(std::to_string(flagged) + " draws failed a path check");
            cfg["draws"] = draws;
            cfg["box"] = box;
            cfg["box_res"] = box_res;
            write_points(out_path(c, "limit.csv"), coord_header(li.g_table.at(0).size()), pts);
            write_json(out_path(c, "limit.json"),
                       make_report("exp limit", c.seed, cfg, {{"alpha_star", li.alpha_star}, {"draws", arr}}, warnings));
            std::cout << "model " << c.model << "  draws " << draws << "  flagged " << flagged << '\n';
        } else if (*emp) {
            const auto pts = empirical_limit_samples(model, emp_n, c.reps, c.seed, c.threads);
            cfg["n"] = emp_n;
            write_points(out_path(c, "empirical.csv"), coord_header(model_dim(model)), pts);
            write_json(out_path(c, "empirical.json"),
                       make_report("exp empirical", c.seed, cfg, {{"n", emp_n}, {"samples", pts}}, warnings));
            std::cout << "model " << c.model << "  n " << emp_n << "  reps " << c.reps << '\n';
        } else if (*cmp) {
            const auto a = read_points(cmp_a), b = read_points(cmp_b);
            const auto res = compare_distributions(a, b);
            cfg = {{"invocation", invocation}, {"a", cmp_a}, {"b", cmp_b}};
            write_json(out_path(c, "compare.json"), make_report("exp compare", c.seed, cfg, to_json(res), warnings));
            std::cout << "ks";
            for (double k : res.ks) std::cout << ' ' << fmt(k);
            std::cout << "  critical_95 " << fmt(res.ks_critical_95) << "  energy " << fmt(res.energy_distance) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
