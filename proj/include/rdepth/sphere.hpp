#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>

namespace rdepth {

// Kronecker (R_d) sequence pushed through the Gaussian quantile and normalised.
// Prefix-nested: the first N directions do not depend on how many are requested later.
class SphereSequence {
public:
    SphereSequence(std::size_t dim, std::uint64_t seed) : dim_(dim), alpha_(dim), offset_(dim) {
        // phi_d is the unique positive root of x^(d+1) = x + 1.
        double phi = 2.0;
        for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dim + 1));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t j = 0; j < dim; ++j) {
            alpha_[j] = std::fmod(1.0 / std::pow(phi, static_cast<double>(j + 1)), 1.0);
            offset_[j] = u(rng);
        }
    }

    std::size_t dim() const { return dim_; }

    std::vector<double> operator()(std::size_t k) const {
        static const boost::math::normal nd;
        std::vector<double> v(dim_);
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            double f = offset_[j] + static_cast<double>(k + 1) * alpha_[j];
            f -= std::floor(f);
            f = std::clamp(f, 1e-12, 1.0 - 1e-12);
            v[j] = boost::math::quantile(nd, f);
            s += v[j] * v[j];
        }
        s = std::sqrt(s);
        if (s == 0.0) {
            v.assign(dim_, 0.0);
            v[0] = 1.0;
            return v;
        }
        for (double& c : v) c /= s;
        return v;
    }

private:
    std::size_t dim_;
    std::vector<double> alpha_;
    std::vector<double> offset_;
};

// Spherical Fibonacci lattice on S^2.
inline std::vector<double> fibonacci_sphere_point(std::size_t k, std::size_t n) {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * std::fmod(static_cast<double>(k) / golden, 1.0);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

inline std::vector<double> random_unit(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> v(dim);
    double s = 0.0;
    do {
        s = 0.0;
        for (double& c : v) {
            c = nd(rng);
            s += c * c;
        }
    } while (s == 0.0);
    s = std::sqrt(s);
    for (double& c : v) c /= s;
    return v;
}

}  // namespace rdepth
