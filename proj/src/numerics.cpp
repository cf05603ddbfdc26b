#include "melonrg/numerics.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace melonrg {

namespace {

// Kronrod-15 abscissae on [0, 1] side (symmetric) and weights; the odd
// entries are the embedded Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b, integral, error;
};

struct WorseError {
    bool operator()(const Interval& x, const Interval& y) const {
        return x.error < y.error;
    }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    double h = 0.5 * (b - a);
    double c = 0.5 * (a + b);
    double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    double integral = resk * h;
    double err = std::abs((resk - resg) * h);
    return {a, b, integral, err};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, std::size_t max_intervals) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate_adaptive requires a <= b");
    }
    std::priority_queue<Interval, std::vector<Interval>, WorseError> heap;
    Interval whole = gk15(f, a, b);
    double total = whole.integral;
    double err = whole.error;
    heap.push(whole);
    std::size_t n = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (n >= max_intervals)
            throw std::runtime_error("integrate_adaptive failed to converge");
        Interval worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Interval left = gk15(f, worst.a, mid);
        Interval right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    return total;
}

std::pair<double, double> linear_fit(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("linear_fit needs >= 2 points");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

}  // namespace melonrg
