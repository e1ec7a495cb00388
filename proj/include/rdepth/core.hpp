#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rdepth {

inline constexpr const char* kVersion = "1.0.0";

struct Observation {
    std::vector<double> x;
    double y = 0.0;
};

namespace detail {

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace detail

// n observations sharing one covariate length p-1, p >= 2.
class ObservationSet {
public:
    ObservationSet() = default;

    explicit ObservationSet(std::vector<Observation> obs) : obs_(std::move(obs)) {
        p_ = obs_.empty() ? 0 : obs_.front().x.size() + 1;
        validate();
    }

    ObservationSet(std::vector<Observation> obs, std::size_t p) : obs_(std::move(obs)), p_(p) { validate(); }

    // Convenience for the simple-regression case.
    static ObservationSet from_xy(std::span<const double> x, std::span<const double> y) {
        if (x.size() != y.size()) throw std::invalid_argument("x and y lengths differ");
        std::vector<Observation> obs;
        obs.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) obs.push_back({{x[i]}, y[i]});
        return ObservationSet(std::move(obs), 2);
    }

    std::size_t size() const { return obs_.size(); }
    std::size_t dim() const { return p_; }
    const Observation& operator[](std::size_t i) const { return obs_[i]; }
    auto begin() const { return obs_.begin(); }
    auto end() const { return obs_.end(); }
    const std::vector<Observation>& observations() const { return obs_; }

private:
    void validate() const {
        if (obs_.empty()) throw std::invalid_argument("observation set must be non-empty");
        if (p_ < 2) throw std::invalid_argument("p must be at least 2");
        for (const auto& o : obs_) {
            if (o.x.size() != p_ - 1)
                throw std::invalid_argument("covariate length " + std::to_string(o.x.size()) +
                                            " does not match p-1 = " + std::to_string(p_ - 1));
            for (double v : o.x) detail::require_finite(v, "covariate");
            detail::require_finite(o.y, "response");
        }
    }

    std::vector<Observation> obs_;
    std::size_t p_ = 0;
};

// Intercept first: beta[0] = b0, beta[1..] = slope block.
class ParamVector {
public:
    ParamVector() = default;
    ParamVector(std::initializer_list<double> v) : ParamVector(std::vector<double>(v)) {}
    explicit ParamVector(std::vector<double> v) : b_(std::move(v)) {
        if (b_.size() < 2) throw std::invalid_argument("parameter vector needs length >= 2");
        for (double c : b_) detail::require_finite(c, "parameter");
    }

    std::size_t size() const { return b_.size(); }
    double operator[](std::size_t i) const { return b_[i]; }
    double intercept() const { return b_[0]; }
    std::span<const double> slopes() const { return std::span<const double>(b_).subspan(1); }
    const std::vector<double>& values() const { return b_; }

    friend bool operator==(const ParamVector&, const ParamVector&) = default;

private:
    std::vector<double> b_;
};

class UnitDirection {
public:
    UnitDirection() = default;

    static UnitDirection normalize(std::vector<double> v) {
        double s = 0.0;
        for (double c : v) s += c * c;
        s = std::sqrt(s);
        if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("cannot normalize a zero direction");
        for (double& c : v) c /= s;
        return UnitDirection(std::move(v));
    }

    static UnitDirection from_angle(double theta) { return UnitDirection({std::cos(theta), std::sin(theta)}); }

    explicit UnitDirection(std::vector<double> v) : v_(std::move(v)) {
        double s = 0.0;
        for (double c : v_) s += c * c;
        if (std::abs(std::sqrt(s) - 1.0) > 1e-12) throw std::invalid_argument("direction is not unit length");
    }

    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }
    // Angle in [0, 2pi) for planar directions.
    double angle() const {
        double a = std::atan2(v_.at(1), v_.at(0));
        return a < 0 ? a + 2.0 * M_PI : a;
    }

private:
    std::vector<double> v_;
};

struct DepthValue {
    double normalized = 0.0;
    std::optional<double> count;  // half-integers occur for the sign formulation
    bool exact = false;
    std::optional<UnitDirection> witness;
};

enum class ResidualSign : int { negative = -1, zero = 0, positive = 1 };

inline int sign_of(double t) { return (t > 0.0) - (t < 0.0); }

inline ResidualSign residual_sign(double t) { return static_cast<ResidualSign>(sign_of(t)); }

inline double residual(const Observation& obs, const ParamVector& beta) {
    if (beta.size() != obs.x.size() + 1)
        throw std::invalid_argument("beta has length " + std::to_string(beta.size()) + ", expected " +
                                    std::to_string(obs.x.size() + 1));
    double fit = beta[0];
    for (std::size_t j = 0; j < obs.x.size(); ++j) fit += obs.x[j] * beta[j + 1];
    return obs.y - fit;
}

inline std::vector<double> extend_w(const Observation& obs) {
    std::vector<double> w;
    w.reserve(obs.x.size() + 1);
    w.push_back(1.0);
    w.insert(w.end(), obs.x.begin(), obs.x.end());
    return w;
}

inline std::vector<double> residuals(const ObservationSet& set, const ParamVector& beta) {
    std::vector<double> r;
    r.reserve(set.size());
    for (const auto& o : set) r.push_back(residual(o, beta));
    return r;
}

inline std::vector<int> residual_signs(const ObservationSet& set, const ParamVector& beta) {
    std::vector<int> s;
    s.reserve(set.size());
    for (const auto& o : set) s.push_back(sign_of(residual(o, beta)));
    return s;
}

// y -> y + w'b.  Depth at beta+b on the result equals depth at beta on the input.
inline ObservationSet transform_regression(const ObservationSet& set, std::span<const double> b) {
    if (b.size() != set.dim()) throw std::invalid_argument("shift vector length must equal p");
    std::vector<Observation> out(set.observations());
    for (auto& o : out) {
        double s = b[0];
        for (std::size_t j = 0; j < o.x.size(); ++j) s += o.x[j] * b[j + 1];
        o.y += s;
    }
    return ObservationSet(std::move(out), set.dim());
}

inline ObservationSet transform_scale(const ObservationSet& set, double s) {
    if (s == 0.0 || !std::isfinite(s)) throw std::invalid_argument("scale factor must be finite and nonzero");
    std::vector<Observation> out(set.observations());
    for (auto& o : out) o.y *= s;
    return ObservationSet(std::move(out), set.dim());
}

// x1 -> A'x1 on the slope block.
inline ObservationSet transform_affine(const ObservationSet& set, const Eigen::MatrixXd& A) {
    const auto q = static_cast<Eigen::Index>(set.dim() - 1);
    if (A.rows() != q || A.cols() != q) throw std::invalid_argument("A must be (p-1)x(p-1)");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw std::invalid_argument("A must be nonsingular");
    std::vector<Observation> out(set.observations());
    for (auto& o : out) {
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(o.x.data(), q);
        Eigen::VectorXd nx = A.transpose() * x;
        o.x.assign(nx.data(), nx.data() + q);
    }
    return ObservationSet(std::move(out), set.dim());
}

inline ParamVector shift_param(const ParamVector& beta, std::span<const double> b) {
    if (b.size() != beta.size()) throw std::invalid_argument("shift vector length must equal p");
    std::vector<double> v(beta.values());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += b[j];
    return ParamVector(std::move(v));
}

inline ParamVector scale_param(const ParamVector& beta, double s) {
    std::vector<double> v(beta.values());
    for (double& c : v) c *= s;
    return ParamVector(std::move(v));
}

// Slope block mapped by A^{-1}; the companion of transform_affine.
inline ParamVector affine_param(const ParamVector& beta, const Eigen::MatrixXd& A) {
    const auto q = static_cast<Eigen::Index>(beta.size() - 1);
    if (A.rows() != q || A.cols() != q) throw std::invalid_argument("A must be (p-1)x(p-1)");
    Eigen::VectorXd b1 = Eigen::Map<const Eigen::VectorXd>(beta.values().data() + 1, q);
    Eigen::VectorXd nb = A.fullPivLu().solve(b1);
    std::vector<double> v{beta[0]};
    v.insert(v.end(), nb.data(), nb.data() + q);
    return ParamVector(std::move(v));
}

}  // namespace rdepth
