#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace melonrg {

// Compensated (Kahan-Neumaier) accumulator; summation order is the caller's
// responsibility and must be deterministic.
class KahanSum {
  public:
    void add(double x) {
        double t = s_ + x;
        if (std::abs(s_) >= std::abs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// Globally adaptive Gauss-Kronrod (G7, K15) quadrature. Subdivides the worst
// interval until the summed error estimate satisfies
//   err <= max(abs_tol, rel_tol * |integral|),
// then returns the Kronrod total. Throws on failure to converge.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, std::size_t max_intervals = 20000);

// Least-squares straight line through (x, y) pairs; returns {slope, intercept}.
std::pair<double, double> linear_fit(const std::vector<double>& xs,
                                     const std::vector<double>& ys);

}  // namespace melonrg
