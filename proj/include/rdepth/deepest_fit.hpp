#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "core.hpp"
#include "empirical_depth.hpp"
#include "predicates.hpp"

namespace rdepth {

enum class FitMethod { exact_p2, search };

inline const char* to_string(FitMethod m) { return m == FitMethod::exact_p2 ? "exact_p2" : "search"; }

struct FitResult {
    ParamVector beta_hat;
    DepthValue depth;               // maximal depth reached by the candidate set
    double depth_at_beta_hat = 0.0;  // rd_normalized recomputed at beta_hat (lower after tie averaging)
    std::size_t tie_set_size = 1;
    FitMethod method = FitMethod::exact_p2;
    std::size_t evaluations = 0;
    std::vector<ParamVector> tie_set;
};

namespace detail {

// Range add / global minimum; buffers are reused across resets.
class MinAddTree {
public:
    void reset(const std::vector<long>& init) {
        m_ = init.size();
        size_ = 1;
        while (size_ < m_) size_ <<= 1;
        t_.assign(2 * size_, std::numeric_limits<long>::max() / 4);
        d_.assign(size_, 0);
        for (std::size_t i = 0; i < m_; ++i) t_[size_ + i] = init[i];
        for (std::size_t i = size_ - 1; i >= 1; --i) t_[i] = std::min(t_[2 * i], t_[2 * i + 1]);
    }
    void add(std::size_t l, std::size_t r, long v) {
        if (l > r || r >= m_) return;
        std::size_t l0 = l + size_, r0 = r + size_;
        for (l += size_, r += size_ + 1; l < r; l >>= 1, r >>= 1) {
            if (l & 1) apply(l++, v);
            if (r & 1) apply(--r, v);
        }
        pull(l0);
        pull(r0);
    }
    long min() const { return t_[1]; }

private:
    void apply(std::size_t node, long v) {
        t_[node] += v;
        if (node < size_) d_[node] += v;
    }
    void pull(std::size_t node) {
        while (node > 1) {
            node >>= 1;
            t_[node] = std::min(t_[2 * node], t_[2 * node + 1]) + d_[node];
        }
    }

    std::size_t m_ = 0, size_ = 1;
    std::vector<long> t_, d_;
};

inline std::vector<double> least_squares(const ObservationSet& set) {
    const auto n = static_cast<Eigen::Index>(set.size());
    const auto p = static_cast<Eigen::Index>(set.dim());
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < p; ++j) X(i, j) = set[static_cast<std::size_t>(i)].x[static_cast<std::size_t>(j - 1)];
        y(i) = set[static_cast<std::size_t>(i)].y;
    }
    Eigen::VectorXd b = X.colPivHouseholderQr().solve(y);
    std::vector<double> out(b.data(), b.data() + p);
    for (double& c : out)
        if (!std::isfinite(c)) c = 0.0;
    return out;
}

// Sorted-lexicographic clustering within tol; returns one representative per cluster.
inline std::vector<std::vector<double>> cluster_params(std::vector<std::vector<double>> v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<std::vector<double>> reps;
    const std::vector<double>* prev = nullptr;
    for (const auto& b : v) {
        bool same = prev != nullptr;
        if (prev)
            for (std::size_t j = 0; j < b.size() && same; ++j) same = std::abs(b[j] - (*prev)[j]) <= tol;
        if (!same) reps.push_back(b);
        prev = &b;
    }
    return reps;
}

inline FitResult finish_fit(const ObservationSet& set, std::vector<std::vector<double>> tie, double best_count,
                            bool exact, FitMethod method, std::size_t evals) {
    const std::size_t p = set.dim();
    std::vector<double> avg(p, 0.0);
    for (const auto& b : tie)
        for (std::size_t j = 0; j < p; ++j) avg[j] += b[j];
    for (double& c : avg) c /= static_cast<double>(tie.size());
    FitResult out;
    out.beta_hat = ParamVector(avg);
    out.depth = {best_count / static_cast<double>(set.size()), best_count, exact, std::nullopt};
    out.depth_at_beta_hat = rd_normalized(set, out.beta_hat).normalized;
    out.tie_set_size = tie.size();
    out.method = method;
    out.evaluations = evals;
    for (auto& b : tie) out.tie_set.emplace_back(std::move(b));
    return out;
}

}  // namespace detail

inline constexpr double kTieTolerance = 1e-9;

// Exact deepest line.  Rotates a line about every pivot observation; the residual sign of
// each other point flips exactly once, at its slope from the pivot, so the depth at every
// pairwise vertex follows from range updates on the (cut, orientation) cell counts.
// Slopes are compared with exact predicates; a provable upper bound restricts each
// pivot to a window of order statistics around the median slope.
inline FitResult fit_exact_p2(const ObservationSet& set) {
    if (set.dim() != 2) throw std::invalid_argument("fit_exact_p2 requires p = 2");
    const std::size_t n = set.size();
    XRanks xr(set);
    if (xr.distinct.size() < 2) throw std::invalid_argument("all x values are identical; no non-vertical line exists");

    // Work in x-sorted order so every per-pivot pass is sequential.
    std::vector<std::size_t> orig(n);
    std::iota(orig.begin(), orig.end(), 0);
    std::stable_sort(orig.begin(), orig.end(), [&](std::size_t a, std::size_t b) { return set[a].x[0] < set[b].x[0]; });
    std::vector<double> x(n), y(n);
    std::vector<std::size_t> rk(n);
    std::vector<char> gstart(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = set[orig[k]].x[0], y[k] = set[orig[k]].y, rk[k] = xr.rank[orig[k]];
        gstart[k] = k == 0 || rk[k] != rk[k - 1];
    }

    // Pivots near the least-squares line tend to reach high depth first, which tightens the bound.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    {
        const auto ls = detail::least_squares(set);
        std::vector<double> a(n);
        for (std::size_t k = 0; k < n; ++k) a[k] = std::abs(y[k] - ls[0] - ls[1] * x[k]);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return a[u] < a[v]; });
    }

    long best = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    std::size_t evals = 0;
    std::vector<double> t(n), tv, sample, mid;
    std::vector<int> base(n), sg(n);
    std::vector<std::size_t> same, win, starts;
    std::vector<long> segp, segm;
    detail::MinAddTree plus, minus;
    tv.reserve(n);
    auto tol = [](double v) { return 1e-12 * (1.0 + std::abs(v)); };

    for (std::size_t i : order) {
        long M = 0, av = 0, bv = 0;
        same.clear();
        tv.clear();
        for (std::size_t k = 0; k < n; ++k) {
            const double dx = x[k] - x[i];
            if (dx == 0.0) {
                t[k] = std::numeric_limits<double>::quiet_NaN();
                if (y[k] == y[i]) {
                    base[k] = 0;
                    if (k != i) ++M, same.push_back(k);
                } else {
                    base[k] = y[k] > y[i] ? 1 : -1;
                    (y[k] > y[i] ? av : bv) += 1;
                }
            } else {
                base[k] = (dx > 0) - (dx < 0);
                t[k] = (y[k] - y[i]) / dx;
                tv.push_back(t[k]);
            }
        }
        const long np = static_cast<long>(tv.size());
        if (np == 0) continue;
        // depth <= 1 + M + E + min(#{t < tau}, #{t > tau}) + min(A_V, B_V), E = #{t = tau}
        const long lw = best - 1 - M - std::min(av, bv);
        if (lw > np) continue;
        double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
        if (lw >= 1) {
            const auto r1 = static_cast<std::size_t>(lw - 1), r2 = static_cast<std::size_t>(np - lw);
            // Bracket both order statistics from a strided sample, select inside the bracket only.
            const std::size_t stride = std::max<std::size_t>(1, tv.size() / 512);
            sample.clear();
            for (std::size_t k = 0; k < tv.size(); k += stride) sample.push_back(tv[k]);
            const double ns = static_cast<double>(sample.size()), nt = static_cast<double>(np);
            const double margin = 1.75 * std::sqrt(ns) + 4.0;  // 3.5 sd of a sampled median rank
            const double q1 = static_cast<double>(r1) / nt * ns - margin, q2 = static_cast<double>(r2) / nt * ns + margin;
            double A = -std::numeric_limits<double>::infinity(), B = std::numeric_limits<double>::infinity();
            if (q1 >= 0) {
                const auto k1 = static_cast<long>(q1);
                std::nth_element(sample.begin(), sample.begin() + k1, sample.end());
                A = sample[static_cast<std::size_t>(k1)];
            }
            if (q2 < ns) {
                const auto k2 = static_cast<long>(q2);
                std::nth_element(sample.begin(), sample.begin() + k2, sample.end());
                B = sample[static_cast<std::size_t>(k2)];
            }
            std::size_t below = 0, m = 0;
            double bmax = -std::numeric_limits<double>::infinity(), amin = std::numeric_limits<double>::infinity();
            mid.resize(tv.size());
            {
                const double* vp = tv.data();
                double* mp = mid.data();
                const double ninf = -std::numeric_limits<double>::infinity(), pinf = -ninf;
                for (std::size_t k = 0; k < tv.size(); ++k) {
                    const double v = vp[k];
                    const bool lt = v < A, gt = v > B;
                    below += lt;
                    bmax = std::max(bmax, lt ? v : ninf);
                    amin = std::min(amin, gt ? v : pinf);
                    mp[m] = v;
                    m += !(lt || gt);
                }
            }
            mid.resize(m);
            const std::vector<double>* pool = &mid;
            std::size_t off = below;
            const std::size_t ra = std::min(r1, r2), rb = std::max(r1, r2);
            if (!(below <= ra && below + mid.size() > rb)) pool = &tv, off = 0;
            auto& sel = const_cast<std::vector<double>&>(*pool);
            std::nth_element(sel.begin(), sel.begin() + static_cast<long>(ra - off), sel.end());
            const double va = sel[ra - off];
            std::nth_element(sel.begin() + static_cast<long>(ra - off), sel.begin() + static_cast<long>(rb - off), sel.end());
            const double vb = sel[rb - off];
            lo = r1 <= r2 ? va : vb;
            hi = r1 <= r2 ? vb : va;
            if (lo - tol(lo) > hi + tol(hi)) continue;
            lo -= tol(lo);
            hi += tol(hi);
            // Push the edges into gaps wide enough that rounding cannot reorder across them.
            auto settle = [&](const std::vector<double>& vals, double extra_lo, double extra_hi) {
                for (bool moved = true; moved;) {
                    moved = false;
                    double bm = extra_lo, am = extra_hi;
                    for (double v : vals) {
                        if (v < lo) bm = std::max(bm, v);
                        if (v > hi) am = std::min(am, v);
                    }
                    if (bm >= lo - tol(lo)) lo = bm - tol(bm), moved = true;
                    if (am <= hi + tol(hi)) hi = am + tol(am), moved = true;
                }
            };
            const double l0 = lo, h0 = hi;
            if (pool == &mid) {
                settle(mid, bmax, amin);
                if (lo < A || hi > B) lo = l0, hi = h0, settle(tv, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
            } else {
                settle(tv, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
            }
        }
        // NaN slopes (vertical or coincident points) keep their base sign and never enter the window.
        win.resize(n);
        {
            const double L = lo, H = hi;
            const double* tp = t.data();
            const int* bp = base.data();
            int* sp = sg.data();
            std::size_t* wp = win.data();
            std::size_t w = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double tk = tp[k];
                sp[k] = tk < L ? -bp[k] : bp[k];
                wp[w] = k;
                w += (tk >= L) & (tk <= H);
            }
            win.resize(w);
        }
        if (win.empty()) continue;

        auto less = [&](std::size_t a, std::size_t b) {
            const int o = exact::orient2d(x[a], y[a], x[b], y[b], x[i], y[i]);
            return base[a] * base[b] * o > 0;
        };
        std::sort(win.begin(), win.end(), [&](std::size_t a, std::size_t b) {
            if (t[a] + tol(t[a]) < t[b] - tol(t[b])) return true;
            if (t[b] + tol(t[b]) < t[a] - tol(t[a])) return false;
            return less(a, b);
        });

        // Cell counts over gaps 0..d: orientation + counts s = + right of the cut and s = - left
        // of it; orientation - the reverse.  Only window events move later, so the gap line is
        // compressed into the segments their ranks delimit (a rank q splits at gap q + 1).
        starts.assign(1, 0);
        for (std::size_t k : win) starts.push_back(rk[k] + 1);
        std::sort(starts.begin(), starts.end());
        starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
        segp.assign(starts.size(), std::numeric_limits<long>::max());
        segm.assign(starts.size(), std::numeric_limits<long>::max());
        long prem = 0, mrem = 0, pbef = 0, mbef = 0;
        for (std::size_t k = 0; k < n; ++k) prem += sg[k] > 0, mrem += sg[k] < 0;
        {
            const int* sp = sg.data();
            const std::size_t* st = starts.data();
            long* spp = segp.data();
            long* smp = segm.data();
            const std::size_t ns = starts.size();
            std::size_t j = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (gstart[k]) {
                    const std::size_t g = rk[k];
                    while (j + 1 < ns && st[j + 1] <= g) ++j;
                    spp[j] = std::min(spp[j], prem + mbef);
                    smp[j] = std::min(smp[j], mrem + pbef);
                }
                const long pp = sp[k] > 0, mm = sp[k] < 0;
                prem -= pp, pbef += pp, mrem -= mm, mbef += mm;
            }
            // Gap d, above every value.
            spp[ns - 1] = std::min(spp[ns - 1], prem + mbef);
            smp[ns - 1] = std::min(smp[ns - 1], mrem + pbef);
        }
        plus.reset(segp);
        minus.reset(segm);
        const std::size_t last = starts.size() - 1;
        auto apply = [&](std::size_t k, int s, long w) {
            const auto j = static_cast<std::size_t>(std::lower_bound(starts.begin(), starts.end(), rk[k] + 1) - starts.begin());
            if (s > 0) {
                if (j > 0) plus.add(0, j - 1, w);
                minus.add(j, last, w);
            } else {
                plus.add(j, last, w);
                if (j > 0) minus.add(0, j - 1, w);
            }
        };

        std::size_t g0 = 0;
        while (g0 < win.size()) {
            std::size_t g1 = g0 + 1;
            while (g1 < win.size() && !less(win[g0], win[g1])) ++g1;
            for (std::size_t e = g0; e < g1; ++e) apply(win[e], base[win[e]], -1);
            const long depth = 1 + M + static_cast<long>(g1 - g0) + std::min(plus.min(), minus.min());
            ++evals;
            if (depth >= best) {
                if (depth > best) best = depth, cands.clear();
                // Canonical pair: the two smallest original indices on the line with distinct x.
                std::size_t a = orig[i];
                for (std::size_t k : same) a = std::min(a, orig[k]);
                for (std::size_t e = g0; e < g1; ++e) a = std::min(a, orig[win[e]]);
                const double xa = set[a].x[0];
                std::size_t b = n;
                if (x[i] != xa) b = orig[i];
                for (std::size_t k : same)
                    if (x[k] != xa) b = std::min(b, orig[k]);
                for (std::size_t e = g0; e < g1; ++e)
                    if (x[win[e]] != xa) b = std::min(b, orig[win[e]]);
                cands.emplace_back(std::min(a, b), std::max(a, b));
            }
            for (std::size_t e = g0; e < g1; ++e) apply(win[e], -base[win[e]], 1);
            g0 = g1;
        }
    }

    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<std::vector<double>> betas;
    betas.reserve(cands.size());
    for (auto [a, b] : cands) {
        const double xa = set[a].x[0], ya = set[a].y;
        const double s = (set[b].y - ya) / (set[b].x[0] - xa);
        betas.push_back({ya - s * xa, s});
    }
    auto tie = detail::cluster_params(std::move(betas), kTieTolerance);
    return detail::finish_fit(set, std::move(tie), static_cast<double>(best), true, FitMethod::exact_p2, evals);
}

struct SearchOptions {
    DepthOptions depth{512, 0x5eedULL};
    std::size_t max_iter = 300;
    std::size_t polish_points = 0;  // 0: p + 6
};

namespace detail {

// Depth of the hyperplane through the rows in `subset`; their residuals are zero by construction
// and near-zero residuals elsewhere are resolved exactly.
inline bool vertex_depth(const ObservationSet& set, const std::vector<std::size_t>& subset, const DepthOptions& opt,
                         std::vector<double>& beta, double& count) {
    const std::size_t p = set.dim();
    const auto P = static_cast<Eigen::Index>(p);
    Eigen::MatrixXd A(P, P);
    Eigen::VectorXd b(P);
    std::vector<double> W(p * p), ys(p);
    for (std::size_t r = 0; r < p; ++r) {
        const auto& o = set[subset[r]];
        A(static_cast<Eigen::Index>(r), 0) = 1.0, W[r * p] = 1.0;
        for (std::size_t j = 1; j < p; ++j) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = W[r * p + j] = o.x[j - 1];
        b(static_cast<Eigen::Index>(r)) = ys[r] = o.y;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() < P) return false;
    Eigen::VectorXd sol = lu.solve(b);
    beta.assign(sol.data(), sol.data() + p);
    for (double c : beta)
        if (!std::isfinite(c)) return false;
    std::vector<int> sg(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (std::find(subset.begin(), subset.end(), k) != subset.end()) {
            sg[k] = 0;
            continue;
        }
        const auto& o = set[k];
        double fit = beta[0], mag = std::abs(beta[0]) + std::abs(o.y);
        for (std::size_t j = 1; j < p; ++j) fit += beta[j] * o.x[j - 1], mag += std::abs(beta[j] * o.x[j - 1]);
        const double r = o.y - fit;
        if (std::abs(r) > 1e-8 * mag) {
            sg[k] = sign_of(r);
        } else if (p == 2) {
            const auto& a = set[subset[0]];
            const auto& c = set[subset[1]];
            sg[k] = exact::line_residual_sign(a.x[0], a.y, c.x[0], c.y, o.x[0], o.y);
        } else {
            const auto w = extend_w(o);
            const int s = exact::hyperplane_residual_sign(W, ys, w, o.y);
            sg[k] = s == 2 ? sign_of(r) : s;
        }
    }
    count = *depth_from_signs(set, sg, opt).count;
    return true;
}

inline void for_each_subset(std::size_t m, std::size_t k, const auto& fn) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        std::size_t j = k;
        while (j > 0 && idx[j - 1] == m - k + j - 1) --j;
        if (j == 0) return;
        ++idx[j - 1];
        for (std::size_t l = j; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
}

}  // namespace detail

// Multi-start Nelder-Mead on the depth surface, then vertex polishing: hyperplanes through
// p-subsets of the observations closest to the incumbent, repeated until no subset improves.
inline FitResult fit_search(const ObservationSet& set, int restarts, std::uint64_t seed, const SearchOptions& opt = {}) {
    if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    const std::size_t p = set.dim(), n = set.size();
    std::size_t evals = 0;
    auto depth_at = [&](const std::vector<double>& b) {
        ++evals;
        return *depth_from_signs(set, residual_signs(set, ParamVector(b)), opt.depth).count;
    };

    const auto ls = detail::least_squares(set);
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = std::abs(residual(set[i], ParamVector(ls)));
    std::vector<double> tmp = res;
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<long>(n / 2), tmp.end());
    double scale = 1.4826 * tmp[n / 2];
    if (!(scale > 0.0)) scale = 1.0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> best_b = ls;
    double best_c = depth_at(ls);

    for (int r = 0; r < restarts; ++r) {
        std::vector<double> start = ls;
        if (r > 0)
            for (double& c : start) c += scale * nd(rng);
        // Simplex of p + 1 vertices; objective is the negated count.
        std::vector<std::vector<double>> sx(p + 1, start);
        for (std::size_t j = 0; j < p; ++j) sx[j + 1][j] += scale;
        std::vector<double> fx(p + 1);
        for (std::size_t j = 0; j <= p; ++j) fx[j] = -depth_at(sx[j]);
        for (std::size_t it = 0; it < opt.max_iter; ++it) {
            std::vector<std::size_t> ord(p + 1);
            std::iota(ord.begin(), ord.end(), 0);
            std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
            const std::size_t lo = ord.front(), hi = ord.back(), nh = ord[p - 1];
            double size = 0.0;
            for (std::size_t j = 0; j <= p; ++j)
                for (std::size_t c = 0; c < p; ++c) size = std::max(size, std::abs(sx[j][c] - sx[lo][c]));
            if (size < 1e-9 * scale) break;
            std::vector<double> cen(p, 0.0);
            for (std::size_t j = 0; j <= p; ++j)
                if (j != hi)
                    for (std::size_t c = 0; c < p; ++c) cen[c] += sx[j][c] / static_cast<double>(p);
            auto along = [&](double a) {
                std::vector<double> v(p);
                for (std::size_t c = 0; c < p; ++c) v[c] = cen[c] + a * (sx[hi][c] - cen[c]);
                return v;
            };
            auto xr = along(-1.0);
            const double fr = -depth_at(xr);
            if (fr < fx[lo]) {
                auto xe = along(-2.0);
                const double fe = -depth_at(xe);
                if (fe < fr) sx[hi] = xe, fx[hi] = fe;
                else sx[hi] = xr, fx[hi] = fr;
            } else if (fr < fx[nh]) {
                sx[hi] = xr, fx[hi] = fr;
            } else {
                auto xc = fr < fx[hi] ? along(-0.5) : along(0.5);
                const double fc = -depth_at(xc);
                if (fc < std::min(fr, fx[hi])) {
                    sx[hi] = xc, fx[hi] = fc;
                } else {
                    for (std::size_t j = 0; j <= p; ++j) {
                        if (j == lo) continue;
                        for (std::size_t c = 0; c < p; ++c) sx[j][c] = sx[lo][c] + 0.5 * (sx[j][c] - sx[lo][c]);
                        fx[j] = -depth_at(sx[j]);
                    }
                }
            }
        }
        const auto j = static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
        if (-fx[j] > best_c) best_c = -fx[j], best_b = sx[j];
    }

    const std::size_t m = std::min(n, opt.polish_points ? opt.polish_points : p + 6);
    if (m >= p) {
        for (int round = 0; round < 50; ++round) {
            std::vector<std::size_t> near(n);
            std::iota(near.begin(), near.end(), 0);
            const ParamVector cur(best_b);
            std::vector<double> ar(n);
            for (std::size_t i = 0; i < n; ++i) ar[i] = std::abs(residual(set[i], cur));
            std::stable_sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) { return ar[a] < ar[b]; });
            bool improved = false;
            std::vector<double> b;
            double c = 0.0;
            detail::for_each_subset(m, p, [&](const std::vector<std::size_t>& idx) {
                std::vector<std::size_t> sub(p);
                for (std::size_t j = 0; j < p; ++j) sub[j] = near[idx[j]];
                ++evals;
                if (detail::vertex_depth(set, sub, opt.depth, b, c) && c > best_c) best_c = c, best_b = b, improved = true;
            });
            if (!improved) break;
        }
    }
    return detail::finish_fit(set, {best_b}, best_c, false, FitMethod::search, evals);
}

}  // namespace rdepth
