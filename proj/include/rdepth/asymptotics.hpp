#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "core.hpp"
#include "deepest_fit.hpp"
#include "empirical_depth.hpp"
#include "parallel.hpp"
#include "population.hpp"

namespace rdepth {

struct SBox {
    double half_width = 8.0;  // the box is [-half_width, half_width]^p
    int resolution = 33;      // coarse grid points per axis
};

struct ExperimentConfig {
    std::vector<std::size_t> n_grid{100, 200, 400, 800, 1600, 3200, 6400};
    int reps = 100;
    std::uint64_t master_seed = 20240917;
    std::vector<ParamVector> beta_grid;  // empty: a 5 x 5 grid over [-1, 1]^2
    SBox s_grid;
    std::vector<double> delta_grid{0.1, 0.25, 0.5, 1.0};
    QuadConfig quad;
    unsigned threads = 0;

    void validate() const {
        if (n_grid.empty()) throw std::invalid_argument("n_grid is empty");
        for (std::size_t k = 0; k < n_grid.size(); ++k) {
            if (n_grid[k] < 2) throw std::invalid_argument("sample sizes must be at least 2");
            if (k > 0 && n_grid[k] <= n_grid[k - 1]) throw std::invalid_argument("n_grid must be strictly increasing");
        }
        if (reps < 30) throw std::invalid_argument("reps must be at least 30");
        if (!(s_grid.half_width > 0.0) || s_grid.resolution < 3) throw std::invalid_argument("invalid s_grid box");
        for (double d : delta_grid)
            if (!(d > 0.0)) throw std::invalid_argument("delta_grid entries must be positive");
        quad.validate();
    }
};

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) h = (h ^ c) * 0x100000001b3ULL;
    return detail::mix64(detail::mix64(master ^ detail::mix64(h)) + index);
}

namespace detail {

// Type-7 quantile of an unsorted sample.
inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, slope_stderr = 0.0;
};

inline LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = x.size();
    if (k < 2) throw std::invalid_argument("need two points for a slope");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k, my = std::accumulate(y.begin(), y.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (k > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double e = y[i] - f.intercept - f.slope * x[i];
            ssr += e * e;
        }
        f.slope_stderr = std::sqrt(ssr / static_cast<double>(k - 2) / sxx);
    }
    return f;
}

// A sample with at least two distinct covariate rows; degenerate draws are redrawn.
inline ObservationSet nondegenerate_sample(const PopulationModel& model, std::size_t n, std::uint64_t seed,
                                           int& regenerated) {
    for (std::uint64_t bump = 0;; ++bump) {
        auto set = sample(model, n, bump == 0 ? seed : derive_seed(seed, "regen", bump));
        bool varied = false;
        for (std::size_t i = 1; i < set.size() && !varied; ++i) varied = set[i].x != set[0].x;
        if (varied) return set;
        ++regenerated;
        if (bump > 100) throw std::runtime_error("could not draw a sample with distinct covariates");
    }
}

inline FitResult fit_any(const ObservationSet& set, std::uint64_t seed) {
    return set.dim() == 2 ? fit_exact_p2(set) : fit_search(set, 8, seed);
}

inline double distance(const ParamVector& a, const ParamVector& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

inline ParamVector require_center(const PopulationModel& model) {
    auto c = model_center(model);
    if (!c) throw std::invalid_argument("model " + model_name(model) + " has no known deepest fit");
    return *c;
}

}  // namespace detail

struct ConsistencyRow {
    std::size_t n = 0;
    double median = 0.0, q1 = 0.0, q3 = 0.0;
    int failures = 0;
    int regenerated = 0;
    std::vector<double> errors;  // by replicate index; NaN for failed replicates
};

struct ConsistencyReport {
    std::string model;
    std::vector<ConsistencyRow> rows;
    double loglog_slope = 0.0;
    double slope_stderr = 0.0;
};

inline ConsistencyReport run_consistency(const PopulationModel& model, const ExperimentConfig& cfg) {
    cfg.validate();
    const ParamVector center = detail::require_center(model);
    ConsistencyReport rep;
    rep.model = model_name(model);
    std::vector<double> lx, ly;
    for (std::size_t n : cfg.n_grid) {
        ConsistencyRow row;
        row.n = n;
        row.errors.assign(static_cast<std::size_t>(cfg.reps), std::numeric_limits<double>::quiet_NaN());
        std::vector<int> regen(static_cast<std::size_t>(cfg.reps), 0);
        std::vector<char> failed(static_cast<std::size_t>(cfg.reps), 0);
        parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t r) {
            const auto seed = derive_seed(cfg.master_seed, "consistency:" + std::to_string(n), r);
            try {
                const auto set = detail::nondegenerate_sample(model, n, seed, regen[r]);
                row.errors[r] = detail::distance(detail::fit_any(set, seed).beta_hat, center);
            } catch (const std::exception&) {
                failed[r] = 1;
            }
        });
        std::vector<double> ok;
        for (std::size_t r = 0; r < row.errors.size(); ++r) {
            row.failures += failed[r];
            row.regenerated += regen[r];
            if (!failed[r]) ok.push_back(row.errors[r]);
        }
        if (ok.empty()) throw std::runtime_error("every replicate failed at n = " + std::to_string(n));
        row.median = detail::quantile(ok, 0.5);
        row.q1 = detail::quantile(ok, 0.25);
        row.q3 = detail::quantile(ok, 0.75);
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(row.median));
        rep.rows.push_back(std::move(row));
    }
    if (lx.size() >= 2) {
        const auto f = detail::ols_line(lx, ly);
        rep.loglog_slope = f.slope;
        rep.slope_stderr = f.slope_stderr;
    }
    return rep;
}

struct UniformRow {
    std::size_t n = 0;
    double median_sup_error = 0.0;
    double scaled_median = 0.0;  // sqrt(n) * median_sup_error
    double q1 = 0.0, q3 = 0.0;
    double center_median_error = 0.0;  // error at the grid point nearest beta*
    std::vector<double> sup_errors;
};

struct UniformReport {
    std::string model;
    std::vector<ParamVector> beta_grid;
    std::vector<double> population_depth;
    std::size_t center_index = 0;
    std::vector<UniformRow> rows;
};

inline std::vector<ParamVector> default_beta_grid() {
    std::vector<ParamVector> g;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) g.push_back(ParamVector{0.5 * i, 0.5 * j});
    return g;
}

inline UniformReport run_uniform_convergence(const PopulationModel& model, const ExperimentConfig& cfg) {
    cfg.validate();
    UniformReport rep;
    rep.model = model_name(model);
    rep.beta_grid = cfg.beta_grid.empty() ? default_beta_grid() : cfg.beta_grid;
    for (const auto& b : rep.beta_grid)
        if (b.size() != model_dim(model)) throw std::invalid_argument("beta_grid dimension does not match the model");
    rep.population_depth.resize(rep.beta_grid.size());
    parallel_for(rep.beta_grid.size(), cfg.threads,
                 [&](std::size_t k) { rep.population_depth[k] = rd_population_numeric(model, rep.beta_grid[k], cfg.quad); });
    if (const auto c = model_center(model)) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < rep.beta_grid.size(); ++k) {
            const double d = detail::distance(rep.beta_grid[k], *c);
            if (d < best) best = d, rep.center_index = k;
        }
    }
    for (std::size_t n : cfg.n_grid) {
        UniformRow row;
        row.n = n;
        row.sup_errors.resize(static_cast<std::size_t>(cfg.reps));
        std::vector<double> at_center(static_cast<std::size_t>(cfg.reps));
        std::vector<int> regen(static_cast<std::size_t>(cfg.reps), 0);
        parallel_for(static_cast<std::size_t>(cfg.reps), cfg.threads, [&](std::size_t r) {
            const auto set = detail::nondegenerate_sample(
                model, n, derive_seed(cfg.master_seed, "uniform:" + std::to_string(n), r), regen[r]);
            double sup = 0.0;
            for (std::size_t k = 0; k < rep.beta_grid.size(); ++k) {
                const double e = std::abs(rd_normalized(set, rep.beta_grid[k]).normalized - rep.population_depth[k]);
                sup = std::max(sup, e);
                if (k == rep.center_index) at_center[r] = e;
            }
            row.sup_errors[r] = sup;
        });
        row.median_sup_error = detail::quantile(row.sup_errors, 0.5);
        row.q1 = detail::quantile(row.sup_errors, 0.25);
        row.q3 = detail::quantile(row.sup_errors, 0.75);
        row.scaled_median = std::sqrt(static_cast<double>(n)) * row.median_sup_error;
        row.center_median_error = detail::quantile(at_center, 0.5);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

struct AssumptionCheckReport {
    double a2_spread = 0.0;
    double a3_g_sup = 0.0;
    double a3_modulus = 0.0;
    double g_oddness = 0.0;
    double c2prime_kappa_hat = 0.0;
    std::vector<std::pair<double, double>> c2prime_deltas;
};

inline AssumptionCheckReport check_assumptions(const PopulationModel& model, const LimitIngredients& li,
                                               const ExperimentConfig& cfg, int ring_points = 96) {
    const ParamVector center = detail::require_center(model);
    const std::size_t K = li.h_center.size();
    if (K == 0 || li.g_table.size() != K) throw std::invalid_argument("ingredients are empty or inconsistent");
    AssumptionCheckReport rep;
    const auto [mn, mx] = std::minmax_element(li.h_center.begin(), li.h_center.end());
    rep.a2_spread = *mx - *mn;
    auto norm = [](const std::vector<double>& a, const std::vector<double>& b, double sb) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] + sb * b[j]) * (a[j] + sb * b[j]);
        return std::sqrt(s);
    };
    const std::vector<double> zero(li.g_table[0].size(), 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        rep.a3_g_sup = std::max(rep.a3_g_sup, norm(li.g_table[k], zero, 0.0));
        rep.a3_modulus = std::max(rep.a3_modulus, norm(li.g_table[k], li.g_table[(k + 1) % K], -1.0));
        if (K % 2 == 0) rep.g_oddness = std::max(rep.g_oddness, norm(li.g_table[k], li.g_table[(k + K / 2) % K], 1.0));
    }
    if (center.size() != 2) throw std::invalid_argument("the ring search is implemented for p = 2");
    rep.c2prime_kappa_hat = std::numeric_limits<double>::infinity();
    for (double delta : cfg.delta_grid) {
        std::vector<double> ring(static_cast<std::size_t>(ring_points));
        parallel_for(ring.size(), cfg.threads, [&](std::size_t k) {
            const double a = 2.0 * M_PI * static_cast<double>(k) / ring_points;
            ring[k] = rd_population_numeric(
                model, ParamVector{center[0] + delta * std::cos(a), center[1] + delta * std::sin(a)}, cfg.quad);
        });
        const double gap = li.alpha_star - *std::max_element(ring.begin(), ring.end());
        rep.c2prime_deltas.emplace_back(delta, gap);
        rep.c2prime_kappa_hat = std::min(rep.c2prime_kappa_hat, gap / delta);
    }
    if (cfg.delta_grid.empty()) rep.c2prime_kappa_hat = 0.0;
    return rep;
}

struct LimitLawSample {
    std::vector<double> s_hat;
    double m_value = 0.0;
    bool concavity_ok = true;
    bool unique_ok = true;
    bool in_box = true;        // s_hat strictly inside the search box
    bool boundary_ok = true;   // M at every box corner lies below M(s_hat)
};

// Lower Cholesky factor of cov + jitter * I, escalating the jitter until it factors.
inline Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& cov, double jitter = 1e-8) {
    for (double j = jitter; j <= 1e-2; j *= 10.0) {
        Eigen::MatrixXd a = cov;
        a.diagonal().array() += j;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw std::runtime_error("covariance matrix is not positive semidefinite even after jitter escalation");
}

namespace detail {

// argmax of the concave function M over the box: coarse grid, then nested golden section
// over each coordinate (the partial maximum of a concave function is concave).
class ArgmaxSolver {
public:
    ArgmaxSolver(const std::vector<std::vector<double>>& g, const SBox& box) : g_(g), box_(box) {
        p_ = g.empty() ? 0 : g[0].size();
    }

    double M(const std::vector<double>& w, const std::vector<double>& s) const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < g_.size(); ++k) {
            double t = w[k];
            for (std::size_t j = 0; j < p_; ++j) t += g_[k][j] * s[j];
            m = std::min(m, t);
        }
        return m;
    }

    LimitLawSample solve(const std::vector<double>& w, std::mt19937_64& rng) const {
        const double hw = box_.half_width;
        const int R = box_.resolution;
        const double step = 2.0 * hw / (R - 1);
        // Coarse grid scan, keeping the best and second-best points.
        std::vector<double> s(p_), best_s, second_s;
        double best = -std::numeric_limits<double>::infinity(), second = best;
        std::vector<int> idx(p_, 0);
        for (;;) {
            for (std::size_t j = 0; j < p_; ++j) s[j] = -hw + step * idx[j];
            const double m = M(w, s);
            if (m > best) second = best, second_s = best_s, best = m, best_s = s;
            else if (m > second) second = m, second_s = s;
            std::size_t j = 0;
            while (j < p_ && ++idx[j] == R) idx[j++] = 0;
            if (j == p_) break;
        }
        LimitLawSample out;
        std::vector<double> fixed;
        const double refined = maximize(w, fixed, out.s_hat);
        if (refined < best) out.s_hat = best_s;
        out.m_value = M(w, out.s_hat);
        if (!second_s.empty()) {
            double d = 0.0;
            for (std::size_t j = 0; j < p_; ++j) d = std::max(d, std::abs(second_s[j] - best_s[j]));
            out.unique_ok = !(d > step * 1.000001 && best - second < 1e-9);
        }
        for (double c : out.s_hat) out.in_box = out.in_box && std::abs(c) < hw - 1e-9;
        // Concavity along random segments inside the box.
        std::uniform_real_distribution<double> u(-hw, hw);
        std::vector<double> a(p_), b(p_), mid(p_);
        for (int t = 0; t < 16; ++t) {
            for (std::size_t j = 0; j < p_; ++j) a[j] = u(rng), b[j] = u(rng), mid[j] = 0.5 * (a[j] + b[j]);
            out.concavity_ok = out.concavity_ok && M(w, mid) >= 0.5 * (M(w, a) + M(w, b)) - 1e-9;
        }
        for (std::size_t c = 0; c < (std::size_t{1} << p_); ++c) {
            for (std::size_t j = 0; j < p_; ++j) s[j] = (c >> j & 1) ? hw : -hw;
            out.boundary_ok = out.boundary_ok && M(w, s) < out.m_value;
        }
        return out;
    }

private:
    // max over the remaining coordinates with the leading ones fixed; argmax written to arg.
    double maximize(const std::vector<double>& w, std::vector<double>& fixed, std::vector<double>& arg) const {
        if (fixed.size() == p_) {
            arg = fixed;
            return M(w, fixed);
        }
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = -box_.half_width, b = box_.half_width;
        auto f = [&](double t, std::vector<double>& sub) {
            fixed.push_back(t);
            const double v = maximize(w, fixed, sub);
            fixed.pop_back();
            return v;
        };
        std::vector<double> sc, sd;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = f(c, sc), fd = f(d, sd);
        while (b - a > 1e-9 * box_.half_width) {
            if (fc >= fd) b = d, d = c, fd = fc, sd = sc, c = b - gr * (b - a), fc = f(c, sc);
            else a = c, c = d, fc = fd, sc = sd, d = a + gr * (b - a), fd = f(d, sd);
        }
        if (fc >= fd) return arg = sc, fc;
        return arg = sd, fd;
    }

    const std::vector<std::vector<double>>& g_;
    SBox box_;
    std::size_t p_ = 0;
};

}  // namespace detail

// Draws W ~ N(0, cov) on the direction grid and returns argmax_s min_v W(v) + g(v)'s per draw.
inline std::vector<LimitLawSample> simulate_limit_law(const LimitIngredients& li, const ExperimentConfig& cfg,
                                                      int n_draws, std::uint64_t seed,
                                                      std::vector<std::vector<double>>* w_out = nullptr) {
    if (n_draws < 1) throw std::invalid_argument("n_draws must be positive");
    const auto K = li.cov_matrix.rows();
    if (K == 0 || static_cast<std::size_t>(K) != li.g_table.size()) throw std::invalid_argument("ingredients are inconsistent");
    if (!(cfg.s_grid.half_width > 0.0) || cfg.s_grid.resolution < 3) throw std::invalid_argument("invalid s_grid box");
    const Eigen::MatrixXd L = jittered_cholesky(li.cov_matrix);
    const detail::ArgmaxSolver solver(li.g_table, cfg.s_grid);
    std::vector<LimitLawSample> out(static_cast<std::size_t>(n_draws));
    if (w_out) w_out->assign(static_cast<std::size_t>(n_draws), {});
    parallel_for(out.size(), cfg.threads, [&](std::size_t d) {
        std::mt19937_64 rng(derive_seed(seed, "limit", d));
        std::normal_distribution<double> nd;
        Eigen::VectorXd z(K);
        for (Eigen::Index k = 0; k < K; ++k) z[k] = nd(rng);
        const Eigen::VectorXd wv = L * z;
        std::vector<double> w(wv.data(), wv.data() + K);
        out[d] = solver.solve(w, rng);
        if (w_out) (*w_out)[d] = std::move(w);
    });
    return out;
}

// sqrt(n) (beta_hat - beta*) over independent replicates.
inline std::vector<std::vector<double>> empirical_limit_samples(const PopulationModel& model, std::size_t n, int reps,
                                                                std::uint64_t seed, unsigned threads = 0) {
    if (reps < 1) throw std::invalid_argument("reps must be positive");
    const ParamVector center = detail::require_center(model);
    std::vector<std::vector<double>> out(static_cast<std::size_t>(reps));
    parallel_for(out.size(), threads, [&](std::size_t r) {
        int regen = 0;
        const auto s = derive_seed(seed, "empirical:" + std::to_string(n), r);
        const auto fit = detail::fit_any(detail::nondegenerate_sample(model, n, s, regen), s);
        std::vector<double> v(center.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::sqrt(static_cast<double>(n)) * (fit.beta_hat[j] - center[j]);
        out[r] = std::move(v);
    });
    return out;
}

struct DistributionComparison {
    std::vector<double> ks;  // per coordinate
    double ks_critical_95 = 0.0;
    double energy_distance = 0.0;
};

inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == t) ++i;
        while (j < b.size() && b[j] == t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

inline DistributionComparison compare_distributions(const std::vector<std::vector<double>>& a,
                                                    const std::vector<std::vector<double>>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("samples must be non-empty");
    const std::size_t p = a[0].size();
    for (const auto* s : {&a, &b})
        for (const auto& v : *s)
            if (v.size() != p) throw std::invalid_argument("sample dimension mismatch");
    DistributionComparison out;
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> ca, cb;
        for (const auto& v : a) ca.push_back(v[j]);
        for (const auto& v : b) cb.push_back(v[j]);
        out.ks.push_back(ks_statistic(ca, cb));
    }
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    out.ks_critical_95 = 1.36 * std::sqrt((na + nb) / (na * nb));
    auto mean_dist = [&](const std::vector<std::vector<double>>& u, const std::vector<std::vector<double>>& v) {
        double s = 0.0;
        for (const auto& x : u)
            for (const auto& y : v) {
                double d2 = 0.0;
                for (std::size_t j = 0; j < p; ++j) d2 += (x[j] - y[j]) * (x[j] - y[j]);
                s += std::sqrt(d2);
            }
        return s / (static_cast<double>(u.size()) * static_cast<double>(v.size()));
    };
    out.energy_distance = std::max(0.0, 2.0 * mean_dist(a, b) - mean_dist(a, a) - mean_dist(b, b));
    return out;
}

// JSON views of the reports.

inline nlohmann::json to_json(const ConsistencyReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n}, {"median", row.median}, {"q1", row.q1}, {"q3", row.q3},
                        {"failures", row.failures}, {"regenerated", row.regenerated}});
    return {{"model", r.model}, {"rows", rows}, {"loglog_slope", r.loglog_slope}, {"slope_stderr", r.slope_stderr}};
}

inline nlohmann::json to_json(const UniformReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n}, {"median_sup_error", row.median_sup_error}, {"sqrt_n_scaled", row.scaled_median},
                        {"q1", row.q1}, {"q3", row.q3}, {"center_median_error", row.center_median_error}});
    nlohmann::json grid = nlohmann::json::array();
    for (std::size_t k = 0; k < r.beta_grid.size(); ++k)
        grid.push_back({{"beta", r.beta_grid[k].values()}, {"population_depth", r.population_depth[k]}});
    return {{"model", r.model}, {"beta_grid", grid}, {"center_index", r.center_index}, {"rows", rows}};
}

inline nlohmann::json to_json(const AssumptionCheckReport& r) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& [delta, gap] : r.c2prime_deltas) d.push_back({{"delta", delta}, {"gap", gap}});
    return {{"a2_spread", r.a2_spread},     {"a3_g_sup", r.a3_g_sup},
            {"a3_modulus", r.a3_modulus},   {"g_oddness", r.g_oddness},
            {"c2prime_kappa_hat", r.c2prime_kappa_hat}, {"c2prime_deltas", d}};
}

inline nlohmann::json to_json(const LimitLawSample& s) {
    return {{"s_hat", s.s_hat},           {"m_value", s.m_value},   {"concavity_ok", s.concavity_ok},
            {"unique_ok", s.unique_ok},   {"in_box", s.in_box},     {"boundary_ok", s.boundary_ok}};
}

inline nlohmann::json to_json(const DistributionComparison& c) {
    return {{"ks", c.ks}, {"ks_critical_95", c.ks_critical_95}, {"energy_distance", c.energy_distance}};
}

}  // namespace rdepth
