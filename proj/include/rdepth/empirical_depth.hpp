#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "sphere.hpp"

namespace rdepth {

struct DepthOptions {
    std::size_t dirs = 2048;  // direction budget for p >= 3
    std::uint64_t seed = 0x5eedULL;
};

struct DirectionCellDecomposition {
    std::vector<double> critical_angles;
    std::vector<UnitDirection> cell_midpoints;
    std::vector<UnitDirection> boundary_directions;
};

// Distinct sorted covariate values of a p = 2 set and the rank of every observation.
struct XRanks {
    std::vector<double> distinct;
    std::vector<std::size_t> rank;

    explicit XRanks(const ObservationSet& set) : rank(set.size()) {
        if (set.dim() != 2) throw std::invalid_argument("XRanks requires p = 2");
        distinct.reserve(set.size());
        for (const auto& o : set) distinct.push_back(o.x[0]);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t i = 0; i < set.size(); ++i)
            rank[i] = static_cast<std::size_t>(
                std::lower_bound(distinct.begin(), distinct.end(), set[i].x[0]) - distinct.begin());
    }

    // A cut strictly inside gap g (g = 0 below all values, g = d above).
    double gap_cut(std::size_t g) const {
        const std::size_t d = distinct.size();
        if (g == 0) return distinct.front() - 1.0;
        if (g == d) return distinct.back() + 1.0;
        return 0.5 * (distinct[g - 1] + distinct[g]);
    }
};

namespace detail {

inline void check_beta(const ObservationSet& set, const ParamVector& beta) {
    if (beta.size() != set.dim())
        throw std::invalid_argument("beta has length " + std::to_string(beta.size()) + ", data has p = " +
                                    std::to_string(set.dim()));
}

// v = (-u c, u) up to scale: v'w = u (x - c).
inline UnitDirection cut_direction(double c, int u) {
    return UnitDirection::normalize({-static_cast<double>(u) * c, static_cast<double>(u)});
}

// Exact min-over-directions count for p = 2 from residual signs, by sweeping the 2(d+1) (cut, orientation) cells.
inline DepthValue depth_from_signs_p2(const XRanks& xr, std::span<const int> signs) {
    const std::size_t n = signs.size();
    const std::size_t d = xr.distinct.size();
    // Difference arrays over gaps 0..d for orientation + and -.
    std::vector<long> plus(d + 2, 0), minus(d + 2, 0);
    long zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t q = xr.rank[i];
        if (signs[i] == 0) {
            ++zeros;
        } else if (signs[i] > 0) {
            plus[0] += 1, plus[q + 1] -= 1;
            minus[q + 1] += 1, minus[d + 1] -= 1;
        } else {
            plus[q + 1] += 1, plus[d + 1] -= 1;
            minus[0] += 1, minus[q + 1] -= 1;
        }
    }
    long best = std::numeric_limits<long>::max();
    std::size_t best_g = 0;
    int best_u = 1;
    long cp = 0, cm = 0;
    for (std::size_t g = 0; g <= d; ++g) {
        cp += plus[g];
        cm += minus[g];
        if (cp < best) best = cp, best_g = g, best_u = 1;
        if (cm < best) best = cm, best_g = g, best_u = -1;
    }
    const double count = static_cast<double>(best + zeros);
    return {count / static_cast<double>(n), count, true, cut_direction(xr.gap_cut(best_g), best_u)};
}

inline long sampled_count(std::span<const double> W, std::span<const int> signs, std::span<const double> v) {
    const std::size_t p = v.size();
    long c = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        double t = 0.0;
        for (std::size_t j = 0; j < p; ++j) t += W[i * p + j] * v[j];
        c += (static_cast<double>(signs[i]) * t >= 0.0);
    }
    return c;
}

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::vector<double> design_matrix(const ObservationSet& set) {
    const std::size_t p = set.dim();
    std::vector<double> W(set.size() * p);
    for (std::size_t i = 0; i < set.size(); ++i) {
        W[i * p] = 1.0;
        for (std::size_t j = 1; j < p; ++j) W[i * p + j] = set[i].x[j - 1];
    }
    return W;
}

// p >= 3: min over a prefix of the sphere sequence, plus a local refinement at every
// stage size 32 * 2^k <= budget.  Each stage is a fixed function of its prefix, so the
// estimate can only go down as the budget grows.
inline DepthValue depth_from_signs_sampled(const ObservationSet& set, std::span<const int> signs,
                                           const DepthOptions& opt) {
    const std::size_t p = set.dim();
    const auto W = design_matrix(set);
    SphereSequence seq(p, opt.seed);
    long best = std::numeric_limits<long>::max();
    std::vector<double> best_v, prefix_v;
    long prefix_best = std::numeric_limits<long>::max();
    std::size_t stage = 32;
    const std::size_t budget = std::max<std::size_t>(opt.dirs, 1);
    for (std::size_t k = 0; k < budget; ++k) {
        auto v = seq(k);
        const long c = sampled_count(W, signs, v);
        if (c < prefix_best) prefix_best = c, prefix_v = v;
        if (c < best) best = c, best_v = std::move(v);
        if (k + 1 == stage) {
            std::mt19937_64 rng(mix64(opt.seed ^ mix64(stage)));
            std::vector<double> cur = prefix_v;
            long cur_c = prefix_best;
            for (double radius = 0.5; radius > 0.01; radius *= 0.5) {
                for (int t = 0; t < 16; ++t) {
                    auto step = random_unit(p, rng);
                    std::vector<double> cand(p);
                    double s = 0.0;
                    for (std::size_t j = 0; j < p; ++j) cand[j] = cur[j] + radius * step[j], s += cand[j] * cand[j];
                    if (s == 0.0) continue;
                    s = std::sqrt(s);
                    for (double& cj : cand) cj /= s;
                    const long cc = sampled_count(W, signs, cand);
                    if (cc < cur_c) cur_c = cc, cur = std::move(cand);
                }
            }
            if (cur_c < best) best = cur_c, best_v = cur;
            stage *= 2;
        }
    }
    const double count = static_cast<double>(best);
    return {count / static_cast<double>(set.size()), count, false, UnitDirection::normalize(best_v)};
}

// Shared 1-D machinery for the cut-based formulations: groups of equal projected values.
struct CutGroups {
    std::vector<double> value;
    std::vector<long> pos, neg;  // residual signs within each group

    CutGroups(std::span<const double> z, std::span<const int> signs) {
        std::vector<std::size_t> idx(z.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
        for (std::size_t i : idx) {
            if (value.empty() || value.back() != z[i]) value.push_back(z[i]), pos.push_back(0), neg.push_back(0);
            pos.back() += signs[i] > 0;
            neg.back() += signs[i] < 0;
        }
    }
    std::size_t size() const { return value.size(); }
};

struct CutResult {
    long count;
    double cut;
};

// Count form in one dimension: min over cuts of min(#{r (z - c) > 0}, #{r (z - c) < 0}).
inline CutResult bh99_cut_min(const CutGroups& g) {
    const std::size_t d = g.size();
    long tot_p = 0, tot_n = 0;
    for (std::size_t q = 0; q < d; ++q) tot_p += g.pos[q], tot_n += g.neg[q];
    CutResult best{std::numeric_limits<long>::max(), 0.0};
    long lp = 0, ln = 0;  // counts strictly left of the cut
    auto consider = [&](long left_p, long left_n, long right_p, long right_n, double c) {
        const long a = right_p + left_n, b = right_n + left_p;
        const long m = std::min(a, b);
        if (m < best.count) best = {m, c};
    };
    for (std::size_t q = 0; q < d; ++q) {
        const double c = q == 0 ? g.value[0] - 1.0 : 0.5 * (g.value[q - 1] + g.value[q]);
        consider(lp, ln, tot_p - lp, tot_n - ln, c);
        consider(lp, ln, tot_p - lp - g.pos[q], tot_n - ln - g.neg[q], g.value[q]);
        lp += g.pos[q], ln += g.neg[q];
    }
    consider(lp, ln, 0, 0, g.value[d - 1] + 1.0);
    return best;
}

// Sign form in one dimension: min over cuts (open and at data values) and u of u * sum s sgn(z - c).
struct SignResult {
    long sum;
    double cut;
    int u;
};

inline SignResult bh992_cut_min(const CutGroups& g) {
    const std::size_t d = g.size();
    long total = 0;
    for (std::size_t q = 0; q < d; ++q) total += g.pos[q] - g.neg[q];
    SignResult best{std::numeric_limits<long>::max(), 0.0, 1};
    auto consider = [&](long left, long right, double c) {
        const long s = right - left;
        if (s < best.sum) best = {s, c, 1};
        if (-s < best.sum) best = {-s, c, -1};
    };
    long left = 0;
    for (std::size_t q = 0; q < d; ++q) {
        const long gq = g.pos[q] - g.neg[q];
        const double c = q == 0 ? g.value[0] - 1.0 : 0.5 * (g.value[q - 1] + g.value[q]);
        consider(left, total - left, c);
        consider(left, total - left - gq, g.value[q]);
        left += gq;
    }
    consider(left, 0, g.value[d - 1] + 1.0);
    return best;
}

}  // namespace detail

// Min-over-directions depth from a precomputed residual sign vector (zero = exact fit of that point).
inline DepthValue depth_from_signs(const ObservationSet& set, std::span<const int> signs,
                                   const DepthOptions& opt = {}) {
    if (signs.size() != set.size()) throw std::invalid_argument("sign vector length must equal n");
    if (set.dim() == 2) return detail::depth_from_signs_p2(XRanks(set), signs);
    return detail::depth_from_signs_sampled(set, signs, opt);
}

inline DirectionCellDecomposition decompose_directions_p2(const ObservationSet& set) {
    if (set.dim() != 2) throw std::invalid_argument("direction decomposition requires p = 2");
    XRanks xr(set);
    DirectionCellDecomposition out;
    // v'w = v1 + v2 x vanishes on (-x, 1) and its antipode.
    for (double x : xr.distinct) {
        double a = std::atan2(1.0, -x);
        out.critical_angles.push_back(a);
        out.critical_angles.push_back(a + M_PI);
    }
    std::sort(out.critical_angles.begin(), out.critical_angles.end());
    const auto& ang = out.critical_angles;
    for (std::size_t k = 0; k < ang.size(); ++k) {
        out.boundary_directions.push_back(UnitDirection::from_angle(ang[k]));
        const double next = k + 1 < ang.size() ? ang[k + 1] : ang[0] + 2.0 * M_PI;
        out.cell_midpoints.push_back(UnitDirection::from_angle(0.5 * (ang[k] + next)));
    }
    return out;
}

inline DepthValue rd_normalized(const ObservationSet& set, const ParamVector& beta, const DepthOptions& opt = {}) {
    detail::check_beta(set, beta);
    const auto s = residual_signs(set, beta);
    return depth_from_signs(set, s, opt);
}

inline DepthValue rd_count_bh99(const ObservationSet& set, const ParamVector& beta, const DepthOptions& opt = {}) {
    detail::check_beta(set, beta);
    const auto s = residual_signs(set, beta);
    const std::size_t n = set.size();
    if (set.dim() == 2) {
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = set[i].x[0];
        const auto r = detail::bh99_cut_min(detail::CutGroups(z, s));
        const double c = static_cast<double>(r.count);
        return {c / static_cast<double>(n), c, true, detail::cut_direction(r.cut, 1)};
    }
    // General p: sampled covariate directions u, exact cut sweep along each.
    const std::size_t q = set.dim() - 1;
    SphereSequence seq(q, opt.seed);
    long best = std::numeric_limits<long>::max();
    std::vector<double> best_dir;
    std::vector<double> z(n);
    for (std::size_t k = 0; k < std::max<std::size_t>(opt.dirs, 1); ++k) {
        const auto u = seq(k);
        for (std::size_t i = 0; i < n; ++i) {
            double t = 0.0;
            for (std::size_t j = 0; j < q; ++j) t += u[j] * set[i].x[j];
            z[i] = t;
        }
        const auto r = detail::bh99_cut_min(detail::CutGroups(z, s));
        if (r.count < best) {
            best = r.count;
            best_dir.assign(1, -r.cut);
            best_dir.insert(best_dir.end(), u.begin(), u.end());
        }
    }
    const double c = static_cast<double>(best);
    return {c / static_cast<double>(n), c, false, UnitDirection::normalize(best_dir)};
}

inline DepthValue rd_sign_bh992(const ObservationSet& set, const ParamVector& beta, const DepthOptions& opt = {}) {
    detail::check_beta(set, beta);
    const auto s = residual_signs(set, beta);
    const std::size_t n = set.size();
    const double half_n = 0.5 * static_cast<double>(n);
    if (set.dim() == 2) {
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = set[i].x[0];
        const auto r = detail::bh992_cut_min(detail::CutGroups(z, s));
        const double c = half_n + 0.5 * static_cast<double>(r.sum);
        return {c / static_cast<double>(n), c, true, detail::cut_direction(r.cut, r.u)};
    }
    const auto W = detail::design_matrix(set);
    const std::size_t p = set.dim();
    SphereSequence seq(p, opt.seed);
    long best = std::numeric_limits<long>::max();
    std::vector<double> best_v;
    for (std::size_t k = 0; k < std::max<std::size_t>(opt.dirs, 1); ++k) {
        const auto v = seq(k);
        long sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double t = 0.0;
            for (std::size_t j = 0; j < p; ++j) t += W[i * p + j] * v[j];
            sum += s[i] * sign_of(t);
        }
        if (sum < best) best = sum, best_v = v;
    }
    const double c = half_n + 0.5 * static_cast<double>(best);
    return {c / static_cast<double>(n), c, false, UnitDirection(best_v)};
}

// Dense-grid evaluation of the min-over-directions depth; a test oracle for the exact and sampled routines.
inline DepthValue rd_bruteforce_oracle(const ObservationSet& set, const ParamVector& beta, std::size_t grid) {
    detail::check_beta(set, beta);
    if (set.dim() > 3) throw std::invalid_argument("brute-force oracle supports p <= 3 only");
    if (grid < 1000) throw std::invalid_argument("oracle grid must have at least 1000 directions");
    const auto r = residuals(set, beta);
    const auto W = detail::design_matrix(set);
    const std::size_t p = set.dim(), n = set.size();
    long best = std::numeric_limits<long>::max();
    std::vector<double> best_v;
    for (std::size_t k = 0; k < grid; ++k) {
        std::vector<double> v;
        if (p == 2) {
            const double a = 2.0 * M_PI * (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
            v = {std::cos(a), std::sin(a)};
        } else {
            v = fibonacci_sphere_point(k, grid);
        }
        long c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double t = 0.0;
            for (std::size_t j = 0; j < p; ++j) t += W[i * p + j] * v[j];
            c += (r[i] * t >= 0.0);
        }
        if (c < best) best = c, best_v = std::move(v);
    }
    const double c = static_cast<double>(best);
    return {c / static_cast<double>(n), c, false, UnitDirection::normalize(best_v)};
}

}  // namespace rdepth
