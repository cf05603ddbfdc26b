#include "melonrg/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

#include "melonrg/numerics.hpp"

namespace melonrg {

namespace {

constexpr std::size_t kGrid = 4096;

double unit_bump(double t) {
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

}  // namespace

CutoffFamily::CutoffFamily(int M, int j_max, double a, double eps)
    : M_(M), j_max_(j_max), a_(a), eps_(eps) {
    if (M < 2) throw std::invalid_argument("CutoffFamily: M must be an integer >= 2");
    if (double(M) * M <= 2.0) throw std::invalid_argument("CutoffFamily: M^2 > 2 required");
    if (j_max < 0) throw std::invalid_argument("CutoffFamily: j_max must be >= 0");
    if (!(eps > 0.0) || !(eps < a))
        throw std::invalid_argument("CutoffFamily: need 0 < eps < a");

    // Cache the unit bump CDF on a dense uniform grid over [-1, 1]; each
    // increment integrated adaptively, then normalized so the total is
    // exactly 1 (this pins kappa to exactly 1 and 0 outside the ramp).
    grid_step_ = 2.0 / static_cast<double>(kGrid);
    cdf_.resize(kGrid + 1);
    pdf_.resize(kGrid + 1);
    cdf_[0] = 0.0;
    for (std::size_t k = 1; k <= kGrid; ++k) {
        double lo = -1.0 + grid_step_ * static_cast<double>(k - 1);
        double hi = -1.0 + grid_step_ * static_cast<double>(k);
        cdf_[k] = cdf_[k - 1] + integrate_adaptive(unit_bump, lo, hi, 1e-15, 1e-18);
    }
    double total = cdf_[kGrid];
    inv_norm_ = 1.0 / total;
    for (std::size_t k = 0; k <= kGrid; ++k) cdf_[k] *= inv_norm_;
    cdf_[kGrid] = 1.0;
    for (std::size_t k = 0; k <= kGrid; ++k) {
        double t = -1.0 + grid_step_ * static_cast<double>(k);
        pdf_[k] = unit_bump(t) * inv_norm_;
    }
}

double CutoffFamily::bump_cdf(double t) const {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double pos = (t + 1.0) / grid_step_;
    auto k = static_cast<std::size_t>(pos);
    if (k >= kGrid) k = kGrid - 1;
    double t0 = -1.0 + grid_step_ * static_cast<double>(k);
    double s = (t - t0) / grid_step_;
    // Cubic Hermite interpolation with the exact derivatives pdf_[k]; the
    // data is monotone and the Fritsch-Carlson bound holds at this
    // resolution, so the interpolant is monotone as well.
    double y0 = cdf_[k], y1 = cdf_[k + 1];
    double d0 = pdf_[k] * grid_step_, d1 = pdf_[k + 1] * grid_step_;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
}

double CutoffFamily::mollifier(double x) const {
    return unit_bump(x / eps_) * inv_norm_ / eps_;
}

double CutoffFamily::kappa(double u) const {
    double v = std::abs(u);
    if (v <= a_ - eps_) return 1.0;
    if (v >= a_ + eps_) return 0.0;
    return 1.0 - bump_cdf((v - a_) / eps_);
}

double CutoffFamily::kappa_j(int j, double u) const {
    return kappa(std::pow(static_cast<double>(M_), -2 * j) * u);
}

double CutoffFamily::eta(int j, double u) const {
    if (j < 0 || j > j_max_) throw std::invalid_argument("eta: slice index out of range");
    if (j == 0) return kappa_j(0, u);
    return kappa_j(j, u) - kappa_j(j - 1, u);
}

double CutoffFamily::eta_geq(int j, double u) const {
    if (j > j_max_) return 0.0;
    if (j <= 0) return kappa_j(j_max_, u);
    return kappa_j(j_max_, u) - kappa_j(j - 1, u);
}

double CutoffFamily::kappa_prime(double u) const {
    // Sign convention for u < 0 follows kappa(|u|) evenness.
    double sign = 1.0;
    double v = u;
    if (v < 0) {
        v = -v;
        sign = -1.0;
    }
    return sign * (mollifier(v + a_) - mollifier(v - a_));
}

double CutoffFamily::eta_prime(int j, double u) const {
    if (j < 0 || j > j_max_)
        throw std::invalid_argument("eta_prime: slice index out of range");
    double scale_j = std::pow(static_cast<double>(M_), -2 * j);
    if (j == 0) return scale_j * kappa_prime(scale_j * u);
    double scale_p = std::pow(static_cast<double>(M_), -2 * (j - 1));
    return scale_j * kappa_prime(scale_j * u) - scale_p * kappa_prime(scale_p * u);
}

double CutoffFamily::h(double u) const {
    double m2 = static_cast<double>(M_) * M_;
    return kappa(u) - kappa(m2 * u);
}

std::pair<double, double> CutoffFamily::h_support() const {
    double m2 = static_cast<double>(M_) * M_;
    return {(a_ - eps_) / m2, a_ + eps_};
}

long CutoffFamily::momentum_bound() const {
    double n = std::sqrt(a_ + eps_) * std::pow(static_cast<double>(M_), j_max_);
    return static_cast<long>(std::floor(n + 1e-9));
}

}  // namespace melonrg
