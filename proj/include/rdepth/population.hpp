#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <json.hpp>

#include "core.hpp"
#include "sphere.hpp"

namespace rdepth {

struct BivariateNormalStd {};
struct UniformUnitDisk {};
struct CauchyDesign {
    ParamVector beta_true{1.0, 2.0};
    double error_scale = 1.0;
};
struct ContaminatedNormal {
    double epsilon = 0.1;
    double shift = 3.0;
};

using PopulationModel = std::variant<BivariateNormalStd, UniformUnitDisk, CauchyDesign, ContaminatedNormal>;

inline std::string model_name(const PopulationModel& m) {
    static const char* names[] = {"normal", "disk", "cauchy", "contaminated"};
    return names[m.index()];
}

inline std::size_t model_dim(const PopulationModel& m) {
    if (const auto* c = std::get_if<CauchyDesign>(&m)) return c->beta_true.size();
    return 2;
}

inline void validate_model(const PopulationModel& m) {
    if (const auto* c = std::get_if<CauchyDesign>(&m)) {
        if (!(c->error_scale > 0.0)) throw std::invalid_argument("error_scale must be positive");
    }
    if (const auto* c = std::get_if<ContaminatedNormal>(&m)) {
        if (!(c->epsilon >= 0.0 && c->epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in [0, 0.5)");
        if (!std::isfinite(c->shift)) throw std::invalid_argument("shift must be finite");
    }
}

// The deepest population fit where it is known: 0 for the symmetric models, beta_true for the
// Cauchy design (regression equivariance); the contaminated mixture has no closed-form centre.
inline std::optional<ParamVector> model_center(const PopulationModel& m) {
    if (const auto* c = std::get_if<CauchyDesign>(&m)) return c->beta_true;
    if (std::holds_alternative<ContaminatedNormal>(m)) return std::nullopt;
    return ParamVector{0.0, 0.0};
}

struct QuadConfig {
    int nodes = 256;
    int v_grid = 256;
    std::size_t mc_fallback = 200000;
    std::uint64_t seed = 7;

    void validate() const {
        if (nodes < 32) throw std::invalid_argument("quadrature needs at least 32 nodes");
        if (v_grid < 64) throw std::invalid_argument("direction grid needs at least 64 points");
    }
};

namespace detail {

inline double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

struct GLRule {
    std::vector<double> x, w;
};

// Gauss-Legendre rule on [-1, 1] from the Legendre zeros; cached per order.
inline const GLRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GLRule r;
    for (double z : boost::math::legendre_p_zeros<double>(n)) {
        const double dp = boost::math::legendre_p_prime(n, z);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x.push_back(z), r.w.push_back(w);
        if (z != 0.0) r.x.push_back(-z), r.w.push_back(w);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

template <class F>
double integrate_pieces(const F& f, std::vector<double> breaks, int nodes) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto& rule = gauss_legendre(nodes);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = breaks[k], b = breaks[k + 1];
        const double h = 0.5 * (b - a), c = 0.5 * (a + b);
        double s = 0.0;
        for (std::size_t j = 0; j < rule.x.size(); ++j) s += rule.w[j] * f(c + h * rule.x[j]);
        total += h * s;
    }
    return total;
}

inline double cut_of(double v1, double v2) { return v2 != 0.0 ? -v1 / v2 : std::numeric_limits<double>::quiet_NaN(); }

}  // namespace detail

inline ObservationSet sample(const PopulationModel& model, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample size must be at least 1");
    validate_model(model);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::vector<Observation> obs;
    obs.reserve(n);
    const std::size_t p = model_dim(model);
    for (std::size_t i = 0; i < n; ++i) {
        Observation o;
        if (std::holds_alternative<BivariateNormalStd>(model)) {
            const double x = nd(rng);
            o = {{x}, nd(rng)};
        } else if (std::holds_alternative<UniformUnitDisk>(model)) {
            const double r = std::sqrt(ud(rng)), a = 2.0 * M_PI * ud(rng);
            o = {{r * std::cos(a)}, r * std::sin(a)};
        } else if (const auto* c = std::get_if<CauchyDesign>(&model)) {
            o.x.resize(p - 1);
            double fit = c->beta_true[0];
            for (std::size_t j = 0; j + 1 < p; ++j) {
                o.x[j] = std::tan(M_PI * (ud(rng) - 0.5));
                fit += c->beta_true[j + 1] * o.x[j];
            }
            o.y = fit + c->error_scale * nd(rng);
        } else {
            const auto& cn = std::get<ContaminatedNormal>(model);
            if (ud(rng) < cn.epsilon) {
                o = {{cn.shift}, -cn.shift};
            } else {
                const double x = nd(rng);
                o = {{x}, nd(rng)};
            }
        }
        obs.push_back(std::move(o));
    }
    return ObservationSet(std::move(obs), p);
}

// h(beta, v) = P(r(beta) v'w >= 0) and the pair probabilities P(A_u and A_v) for a model.
// p = 2 models reduce to one integral over the covariate; anything else uses a fixed
// seeded Monte Carlo sample (common random numbers across calls).
class DepthIntegrator {
public:
    DepthIntegrator(PopulationModel model, QuadConfig cfg) : model_(std::move(model)), cfg_(cfg) {
        cfg_.validate();
        validate_model(model_);
        if (model_dim(model_) != 2) mc_ = sample(model_, cfg_.mc_fallback, cfg_.seed);
    }

    std::size_t dim() const { return model_dim(model_); }
    bool monte_carlo() const { return mc_.has_value(); }

    double h(const ParamVector& beta, std::span<const double> v) const {
        check(beta, v);
        if (mc_) return mc_pair(beta, v, v);
        return pair(beta, v[0], v[1], v[0], v[1]);
    }

    double joint(const ParamVector& beta, std::span<const double> u, std::span<const double> v) const {
        check(beta, u);
        check(beta, v);
        if (mc_) return mc_pair(beta, u, v);
        return pair(beta, u[0], u[1], v[0], v[1]);
    }

private:
    void check(const ParamVector& beta, std::span<const double> v) const {
        if (beta.size() != dim() || v.size() != dim()) throw std::invalid_argument("dimension mismatch with model");
    }

    // P(r u'w >= 0 and r v'w >= 0); with u = v this is h.
    double pair(const ParamVector& beta, double u1, double u2, double v1, double v2) const {
        const double b0 = beta[0], b1 = beta[1];
        const double cu = detail::cut_of(u1, u2), cv = detail::cut_of(v1, v2);
        // Conditional probability mass given x when both linear forms share a sign; ge = P(y >= m | x).
        auto mass = [&](double x, double ge) {
            const double lu = u1 + u2 * x, lv = v1 + v2 * x;
            if (lu > 0 && lv > 0) return ge;
            if (lu < 0 && lv < 0) return 1.0 - ge;
            if (lu == 0 && lv == 0) return 1.0;
            if (lu == 0) return lv > 0 ? ge : 1.0 - ge;
            if (lv == 0) return lu > 0 ? ge : 1.0 - ge;
            return 0.0;
        };
        auto normal_part = [&] {
            std::vector<double> br{-10.0, 10.0};
            for (double c : {cu, cv})
                if (std::abs(c) < 10.0) br.push_back(c);
            return detail::integrate_pieces(
                [&](double x) { return detail::phi(x) * mass(x, detail::Phi(-(b0 + b1 * x))); }, br, cfg_.nodes);
        };
        if (std::holds_alternative<BivariateNormalStd>(model_)) return normal_part();
        if (std::holds_alternative<UniformUnitDisk>(model_)) {
            // x = sin(t); density of x is 2 cos(t) / pi, dx = cos(t) dt.
            std::vector<double> br{-M_PI / 2, M_PI / 2};
            for (double c : {cu, cv})
                if (std::abs(c) < 1.0) br.push_back(std::asin(c));
            const double disc = 1.0 + b1 * b1 - b0 * b0;
            if (disc > 0.0)
                for (double sgn : {-1.0, 1.0}) {
                    const double xr = (-b0 * b1 + sgn * std::sqrt(disc)) / (1.0 + b1 * b1);
                    if (std::abs(xr) < 1.0) br.push_back(std::asin(xr));
                }
            return detail::integrate_pieces(
                [&](double t) {
                    const double x = std::sin(t), s = std::cos(t);
                    if (s <= 0.0) return 0.0;
                    const double ge = std::clamp((s - (b0 + b1 * x)) / (2.0 * s), 0.0, 1.0);
                    return 2.0 * s * s / M_PI * mass(x, ge);
                },
                br, cfg_.nodes);
        }
        if (const auto* c = std::get_if<CauchyDesign>(&model_)) {
            // x = tan(t) with t uniform on (-pi/2, pi/2).
            std::vector<double> br{-M_PI / 2, M_PI / 2};
            for (double cc : {cu, cv})
                if (std::isfinite(cc)) br.push_back(std::atan(cc));
            const double t0 = c->beta_true[0], t1 = c->beta_true[1], sd = c->error_scale;
            return detail::integrate_pieces(
                [&](double t) {
                    const double x = std::tan(t);
                    const double ge = detail::Phi(((t0 - b0) + (t1 - b1) * x) / sd);
                    return mass(x, ge) / M_PI;
                },
                br, cfg_.nodes);
        }
        const auto& c = std::get<ContaminatedNormal>(model_);
        const double r = -c.shift - b0 - b1 * c.shift;
        const double lu = u1 + u2 * c.shift, lv = v1 + v2 * c.shift;
        const double atom = (r * lu >= 0.0 && r * lv >= 0.0) ? 1.0 : 0.0;
        return (1.0 - c.epsilon) * normal_part() + c.epsilon * atom;
    }

    double mc_pair(const ParamVector& beta, std::span<const double> u, std::span<const double> v) const {
        const auto& s = *mc_;
        std::size_t hit = 0;
        for (const auto& o : s) {
            const double r = residual(o, beta);
            double tu = u[0], tv = v[0];
            for (std::size_t j = 1; j < u.size(); ++j) tu += u[j] * o.x[j - 1], tv += v[j] * o.x[j - 1];
            hit += (r * tu >= 0.0) && (r * tv >= 0.0);
        }
        return static_cast<double>(hit) / static_cast<double>(s.size());
    }

    PopulationModel model_;
    QuadConfig cfg_;
    std::optional<ObservationSet> mc_;
};

// Population depth: min over the direction grid of h, with a golden-section
// refinement on the arc around the best grid angle (p = 2).
inline double rd_population_numeric(const PopulationModel& model, const ParamVector& beta, const QuadConfig& cfg = {}) {
    DepthIntegrator hi(model, cfg);
    if (beta.size() != hi.dim()) throw std::invalid_argument("beta dimension does not match the model");
    if (hi.dim() != 2) {
        SphereSequence seq(hi.dim(), cfg.seed);
        double best = 1.0;
        for (int k = 0; k < cfg.v_grid; ++k) best = std::min(best, hi.h(beta, seq(static_cast<std::size_t>(k))));
        return best;
    }
    auto at = [&](double a) {
        const double v[2] = {std::cos(a), std::sin(a)};
        return hi.h(beta, v);
    };
    const int K = cfg.v_grid;
    const double step = 2.0 * M_PI / K;
    double best = 2.0;
    int bk = 0;
    for (int k = 0; k < K; ++k) {
        const double hv = at(k * step);
        if (hv < best) best = hv, bk = k;
    }
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = (bk - 1) * step, b = (bk + 1) * step;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = at(c), fd = at(d);
    for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
        if (fc < fd) b = d, d = c, fd = fc, c = b - g * (b - a), fc = at(c);
        else a = c, c = d, fc = fd, d = a + g * (b - a), fd = at(d);
    }
    return std::min({best, fc, fd});
}

// Closed form for the standard bivariate normal, reduced to beta0, beta1 >= 0 by the
// y -> -y and x -> -x symmetries of the model.
inline double rd_normal_closed(const ParamVector& beta) {
    if (beta.size() != 2) throw std::invalid_argument("normal closed form needs p = 2");
    using boost::math::quadrature::gauss_kronrod;
    const double b0 = std::abs(beta[0]), b1 = std::abs(beta[1]);
    const double inf = std::numeric_limits<double>::infinity();
    if (b0 == 0.0 && b1 == 0.0) return 0.5;
    if (b1 == 0.0) return 1.0 - detail::Phi(b0);
    auto f = [&](double x) { return detail::Phi(b0 + b1 * x) * detail::phi(x); };
    if (b0 == 0.0) return 1.0 - 2.0 * gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 15, 1e-13);
    // phi is below 1e-300 outside [-38, 38]; clamping keeps the pieces finite for tiny slopes.
    const double c0 = -b0 / b1, c = std::clamp(c0, -38.0, 38.0);
    const double left = gauss_kronrod<double, 61>::integrate(f, -38.0, c, 15, 1e-13);
    const double right = gauss_kronrod<double, 61>::integrate(f, c, 38.0, 15, 1e-13);
    return 1.0 - detail::Phi(c0) + left - right;
}

// Closed form for the uniform unit disk; region areas divided by pi.
inline double rd_disk_closed(const ParamVector& beta) {
    if (beta.size() != 2) throw std::invalid_argument("disk closed form needs p = 2");
    const double b0 = std::abs(beta[0]), b1 = std::abs(beta[1]);
    if (b0 == 0.0) return 0.5 - std::atan(b1) / M_PI;
    const double disc = 1.0 + b1 * b1 - b0 * b0;
    if (disc <= 0.0) return 0.0;
    const double xm = (-b0 * b1 - std::sqrt(disc)) / (1.0 + b1 * b1);
    const double xp = (-b0 * b1 + std::sqrt(disc)) / (1.0 + b1 * b1);
    auto g1 = [](double x) { return 0.5 * (x * std::sqrt(std::max(0.0, 1.0 - x * x)) + std::asin(std::clamp(x, -1.0, 1.0))); };
    auto g2 = [&](double x) { return b0 * x + 0.5 * b1 * x * x; };
    auto g = [&](double x) { return g1(x) - g2(x); };
    const double area = g(xp) - g(xm);
    if (b1 == 0.0 || b0 + b1 * xm >= 0.0) return area / M_PI;
    const double c0 = -b0 / b1;
    return (area + 2.0 * g2(c0) - 2.0 * g2(xm)) / M_PI;
}

struct LimitIngredients {
    std::vector<UnitDirection> v_grid;
    std::vector<double> h_center;               // h(beta*, v) on the grid
    double alpha_star = 0.5;
    std::vector<std::vector<double>> g_table;   // gradient of h in beta at beta*, per grid direction
    Eigen::MatrixXd cov_matrix;
    double min_eigenvalue = 0.0;                 // before any jitter
};

inline constexpr double kA2Tolerance = 5e-3;

// The expansion point defaults to the model's deepest fit; passing another one is mainly
// useful to exercise the constancy check.
inline LimitIngredients compute_limit_ingredients(const PopulationModel& model, const QuadConfig& cfg = {},
                                                  double fd_step = 1e-3, std::optional<ParamVector> at = {}) {
    const auto center = at ? at : model_center(model);
    if (!center) throw std::invalid_argument("model " + model_name(model) + " has no known deepest fit");
    if (model_dim(model) != 2) throw std::invalid_argument("limit ingredients are computed for p = 2 models");
    if (cfg.v_grid % 2 != 0) throw std::invalid_argument("v_grid must be even so antipodes lie on the grid");
    if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
    DepthIntegrator hi(model, cfg);
    const int K = cfg.v_grid;
    LimitIngredients out;
    std::vector<std::array<double, 2>> v(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double a = 2.0 * M_PI * k / K;
        v[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
        out.v_grid.push_back(UnitDirection::from_angle(a));
    }
    const ParamVector b = *center;
    double sum = 0.0;
    for (const auto& d : v) {
        out.h_center.push_back(hi.h(b, d));
        sum += out.h_center.back();
    }
    const auto [mn, mx] = std::minmax_element(out.h_center.begin(), out.h_center.end());
    if (*mx - *mn > kA2Tolerance) {
        std::vector<double> sorted = out.h_center;
        std::sort(sorted.begin(), sorted.end());
        const double med = sorted[sorted.size() / 2];
        std::ostringstream msg;
        msg << "h(beta*, v) is not constant over the direction grid (spread " << (*mx - *mn) << "); violating angles:";
        for (int k = 0; k < K; ++k)
            if (std::abs(out.h_center[static_cast<std::size_t>(k)] - med) > 0.5 * kA2Tolerance) msg << ' ' << out.v_grid[static_cast<std::size_t>(k)].angle();
        throw std::domain_error(msg.str());
    }
    out.alpha_star = sum / K;
    for (const auto& d : v) {
        std::vector<double> g(2);
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<double> up = b.values(), dn = b.values();
            up[j] += fd_step, dn[j] -= fd_step;
            g[j] = (hi.h(ParamVector(up), d) - hi.h(ParamVector(dn), d)) / (2.0 * fd_step);
        }
        out.g_table.push_back(std::move(g));
    }
    out.cov_matrix.resize(K, K);
    const double a2 = out.alpha_star * out.alpha_star;
    for (int i = 0; i < K; ++i)
        for (int j = i; j < K; ++j) {
            const double pij = i == j ? out.h_center[static_cast<std::size_t>(i)]
                                      : hi.joint(b, v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
            out.cov_matrix(i, j) = out.cov_matrix(j, i) = pij - a2;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.cov_matrix, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    return out;
}

inline nlohmann::json to_json(const LimitIngredients& li) {
    nlohmann::json j;
    std::vector<double> ang;
    for (const auto& v : li.v_grid) ang.push_back(v.angle());
    j["v_grid_angles"] = ang;
    j["h_center"] = li.h_center;
    j["alpha_star"] = li.alpha_star;
    j["g"] = li.g_table;
    j["dim"] = li.cov_matrix.rows();
    std::vector<double> flat;
    for (Eigen::Index r = 0; r < li.cov_matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < li.cov_matrix.cols(); ++c) flat.push_back(li.cov_matrix(r, c));
    j["cov"] = flat;
    j["min_eigenvalue"] = li.min_eigenvalue;
    return j;
}

inline LimitIngredients limit_ingredients_from_json(const nlohmann::json& j) {
    LimitIngredients li;
    for (double a : j.at("v_grid_angles").get<std::vector<double>>()) li.v_grid.push_back(UnitDirection::from_angle(a));
    li.h_center = j.at("h_center").get<std::vector<double>>();
    li.alpha_star = j.at("alpha_star").get<double>();
    li.g_table = j.at("g").get<std::vector<std::vector<double>>>();
    const auto k = j.at("dim").get<Eigen::Index>();
    const auto flat = j.at("cov").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(flat.size()) != k * k || static_cast<Eigen::Index>(li.v_grid.size()) != k)
        throw std::invalid_argument("limit ingredients document is inconsistent");
    li.cov_matrix.resize(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) li.cov_matrix(r, c) = flat[static_cast<std::size_t>(r * k + c)];
    li.min_eigenvalue = j.value("min_eigenvalue", 0.0);
    return li;
}

}  // namespace rdepth
