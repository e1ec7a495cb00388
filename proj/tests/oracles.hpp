#pragma once
// Independent reference implementations used only by the test suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <rdepth/core.hpp>
#include <rdepth/empirical_depth.hpp>
#include <rdepth/predicates.hpp>

namespace rdepth::oracle {

// Every pairwise line, exact residual signs, exact depth; O(n^3 log n).
struct NaiveFit {
    long best = -1;
    std::vector<std::pair<std::size_t, std::size_t>> argmax;  // all (i < j) attaining best
};

inline NaiveFit naive_fit_p2(const ObservationSet& set) {
    const std::size_t n = set.size();
    NaiveFit out;
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = set[i];
            const auto& b = set[j];
            if (a.x[0] == b.x[0]) continue;
            for (std::size_t k = 0; k < n; ++k)
                s[k] = exact::line_residual_sign(a.x[0], a.y, b.x[0], b.y, set[k].x[0], set[k].y);
            const long c = static_cast<long>(*depth_from_signs(set, s).count);
            if (c > out.best) out.best = c, out.argmax.clear();
            if (c == out.best) out.argmax.emplace_back(i, j);
        }
    return out;
}

// Directional agreement count straight from the definition over an explicit direction list.
inline long count_at(const ObservationSet& set, const std::vector<int>& signs, double v1, double v2) {
    long c = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double t = v1 + v2 * set[i].x[0];
        c += (signs[i] * ((t > 0) - (t < 0))) >= 0;
    }
    return c;
}

// Sign-form sum over a dense angle grid plus every exact boundary direction (-x, 1), (x, -1).
inline double sign_form_bruteforce(const ObservationSet& set, const ParamVector& beta, std::size_t grid) {
    const auto s = residual_signs(set, beta);
    long best = 1L << 40;
    auto eval = [&](auto sgn_of_dir) {
        long sum = 0;
        for (std::size_t i = 0; i < set.size(); ++i) sum += s[i] * sgn_of_dir(set[i].x[0]);
        best = std::min(best, sum);
    };
    for (std::size_t k = 0; k < grid; ++k) {
        const double a = 2.0 * M_PI * (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        const double v1 = std::cos(a), v2 = std::sin(a);
        eval([&](double x) {
            const double t = v1 + v2 * x;
            return (t > 0) - (t < 0);
        });
    }
    for (const auto& o : set) {
        const double c = o.x[0];
        for (int u : {1, -1}) eval([&](double x) { return u * ((x > c) - (x < c)); });
    }
    return 0.5 * static_cast<double>(set.size()) + 0.5 * static_cast<double>(best);
}

// Count form by enumerating every cut position from the definition.
inline long count_form_bruteforce(const ObservationSet& set, const ParamVector& beta) {
    const auto r = residuals(set, beta);
    std::vector<double> cuts;
    for (const auto& o : set) cuts.push_back(o.x[0]);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> all = cuts;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) all.push_back(0.5 * (cuts[k] + cuts[k + 1]));
    all.push_back(cuts.front() - 1.0);
    all.push_back(cuts.back() + 1.0);
    long best = 1L << 40;
    for (double c : all)
        for (int u : {1, -1}) {
            long pos = 0, neg = 0;
            for (std::size_t i = 0; i < set.size(); ++i) {
                const double t = r[i] * (u * set[i].x[0] - u * c);
                pos += t > 0;
                neg += t < 0;
            }
            best = std::min(best, std::min(pos, neg));
        }
    return best;
}

inline ObservationSet random_set(std::size_t n, std::uint64_t seed, bool lattice_x = false) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> ux(-32, 32);
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lattice_x ? ux(rng) / 16.0 : nd(rng);
        obs.push_back({{x}, nd(rng)});
    }
    return ObservationSet(std::move(obs), 2);
}

// Small-integer data with many exact ties and collinearities.
inline ObservationSet lattice_set(std::size_t n, std::uint64_t seed, int range = 2) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(-range, range);
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < n; ++i) obs.push_back({{static_cast<double>(u(rng))}, static_cast<double>(u(rng))});
    return ObservationSet(std::move(obs), 2);
}

inline ObservationSet fourpoints() {
    return ObservationSet({{{1.0 / 8}, 1.0}, {{4.0 / 8}, 0.0}, {{6.0 / 8}, -1.0}, {{7.0 / 8}, 2.0}}, 2);
}

}  // namespace rdepth::oracle
