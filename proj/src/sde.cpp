#include "melonrg/sde.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "melonrg/numerics.hpp"

namespace melonrg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// kappa_{j_max} sampled at every integer u reachable on the 5D cube
// |p_c| <= N, i.e. u = p^2 in 0..5N^2.
std::vector<double> kappa_table(const CutoffFamily& c, long N) {
    std::vector<double> t(static_cast<std::size_t>(5 * N * N + 1));
    for (std::size_t u = 0; u < t.size(); ++u)
        t[u] = c.kappa_j(c.j_max(), static_cast<double>(u));
    return t;
}

std::vector<double> eta_geq_table(const CutoffFamily& c, int l, long N) {
    std::vector<double> t(static_cast<std::size_t>(5 * N * N + 1));
    for (std::size_t u = 0; u < t.size(); ++u)
        t[u] = c.eta_geq(l, static_cast<double>(u));
    return t;
}

// S(n) = sum_{q in Z^4, |q_i| <= N} w(n^2 + q^2)
//        / (Z_b (n^2 + q^2) + m_r^2 - sig(n) - sum_i sig(|q_i|))
// for every n in 0..N at once; w is a weight table over integer u and sig the
// current half-table. Fixed lexicographic q order, compensated accumulation.
std::vector<double> bubble_sums(const std::vector<double>& w, const std::vector<double>& sig,
                                double Z_b, double m_r_sq, long N) {
    std::vector<double> out(static_cast<std::size_t>(N + 1));
    for (long n = 0; n <= N; ++n) {
        const long n2 = n * n;
        const double base = m_r_sq - sig[static_cast<std::size_t>(n)];
        KahanSum acc;
        for (long q1 = -N; q1 <= N; ++q1) {
            const long u1 = n2 + q1 * q1;
            const double s1 = base - sig[static_cast<std::size_t>(q1 < 0 ? -q1 : q1)];
            for (long q2 = -N; q2 <= N; ++q2) {
                const long u2 = u1 + q2 * q2;
                const double s2 = s1 - sig[static_cast<std::size_t>(q2 < 0 ? -q2 : q2)];
                for (long q3 = -N; q3 <= N; ++q3) {
                    const long u3 = u2 + q3 * q3;
                    const double s3 = s2 - sig[static_cast<std::size_t>(q3 < 0 ? -q3 : q3)];
                    for (long q4 = -N; q4 <= N; ++q4) {
                        const long u = u3 + q4 * q4;
                        const double wt = w[static_cast<std::size_t>(u)];
                        if (wt == 0.0) continue;
                        const double den = Z_b * static_cast<double>(u) + s3 -
                                           sig[static_cast<std::size_t>(q4 < 0 ? -q4 : q4)];
                        if (den <= 0.0)
                            throw std::domain_error(
                                "self-energy denominator not positive: mass too small "
                                "for this coupling and cutoff");
                        acc.add(wt / den);
                    }
                }
            }
        }
        out[static_cast<std::size_t>(n)] = acc.value();
    }
    return out;
}

std::vector<double> picard_map(const std::vector<double>& kap, const std::vector<double>& sig,
                               const ModelParams& p, long N) {
    std::vector<double> S = bubble_sums(kap, sig, p.Z_b, p.m_r_sq, N);
    std::vector<double> next(static_cast<std::size_t>(N + 1));
    const double pref = -p.g_b * p.Z_b * p.Z_b;
    next[0] = 0.0;
    for (long n = 1; n <= N; ++n)
        next[static_cast<std::size_t>(n)] = pref * (S[static_cast<std::size_t>(n)] - S[0]);
    return next;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::abs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

std::vector<double> mirror_table(const std::vector<double>& half, long N) {
    std::vector<double> full(static_cast<std::size_t>(2 * N + 1));
    for (long n = -N; n <= N; ++n)
        full[static_cast<std::size_t>(n + N)] = half[static_cast<std::size_t>(n < 0 ? -n : n)];
    return full;
}

}  // namespace

SelfEnergyTable solve_sigma_mr(const ModelParams& p, double tol, long max_iter) {
    if (!(p.m_r_sq > 0.0)) throw std::invalid_argument("m_r_sq must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const long N = p.cutoffs.momentum_bound();
    const std::vector<double> kap = kappa_table(p.cutoffs, N);

    std::vector<double> cur(static_cast<std::size_t>(N + 1), 0.0);
    double prev_res = -1.0;
    long iter = 0;
    bool converged = false;
    while (iter < max_iter) {
        ++iter;
        std::vector<double> next = picard_map(kap, cur, p, N);
        const double res = sup_diff(next, cur);
        if (prev_res >= 0.0 && res > prev_res) {
            for (std::size_t i = 0; i < cur.size(); ++i)
                cur[i] += 0.5 * (next[i] - cur[i]);
        } else {
            cur = std::move(next);
        }
        prev_res = res;
        if (res <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("self-energy iteration did not converge: coupling "
                                 "outside the contraction regime");

    SelfEnergyTable out{N, mirror_table(cur, N), p, 0.0, iter};
    out.residual = sup_diff(picard_map(kap, cur, p, N), cur);
    return out;
}

double delta_m(const ModelParams& p, const SelfEnergyTable& sigma) {
    const long N = sigma.N;
    const std::vector<double> kap = kappa_table(p.cutoffs, N);
    KahanSum acc;
    for (long q1 = -N; q1 <= N; ++q1)
        for (long q2 = -N; q2 <= N; ++q2)
            for (long q3 = -N; q3 <= N; ++q3)
                for (long q4 = -N; q4 <= N; ++q4) {
                    const long u = q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4;
                    const double wt = kap[static_cast<std::size_t>(u)];
                    if (wt == 0.0) continue;
                    const double den = p.Z_b * static_cast<double>(u) + p.m_r_sq -
                                       sigma.at(q1) - sigma.at(q2) - sigma.at(q3) -
                                       sigma.at(q4);
                    if (den <= 0.0)
                        throw std::domain_error("counterterm denominator not positive");
                    acc.add(wt / den);
                }
    return 5.0 * p.g_b * p.Z_b * p.Z_b * acc.value();
}

double m_b_sq(const ModelParams& p, double delta_m_value) {
    return (p.m_r_sq - delta_m_value) / p.Z_b;
}

std::vector<double> sigma_slice(const ModelParams& p, const SelfEnergyTable& sigma, int l) {
    const long N = sigma.N;
    if (l > p.cutoffs.j_max())
        return std::vector<double>(static_cast<std::size_t>(2 * N + 1), 0.0);
    std::vector<double> half(static_cast<std::size_t>(N + 1));
    for (long n = 0; n <= N; ++n) half[static_cast<std::size_t>(n)] = sigma.at(n);
    const std::vector<double> etg = eta_geq_table(p.cutoffs, l, N);
    std::vector<double> S = bubble_sums(etg, half, p.Z_b, p.m_r_sq, N);
    std::vector<double> out(static_cast<std::size_t>(N + 1));
    const double pref = -p.g_b * p.Z_b * p.Z_b;
    out[0] = 0.0;
    for (long n = 1; n <= N; ++n)
        out[static_cast<std::size_t>(n)] = pref * (S[static_cast<std::size_t>(n)] - S[0]);
    return mirror_table(out, N);
}

EffectiveConstants effective_constants(const ModelParams& p, const SelfEnergyTable& sigma) {
    const long N = sigma.N;
    const int jm = p.cutoffs.j_max();
    const double gZb2 = p.g_b * p.Z_b * p.Z_b;
    EffectiveConstants out;
    for (int l = 0; l <= jm + 1; ++l) {
        const std::vector<double> slice = sigma_slice(p, sigma, l);
        auto sl = [&](long n) { return slice[static_cast<std::size_t>(n + N)]; };
        const double Z = p.Z_b - (sl(1) - sl(0));
        double B = 0.0;
        if (l <= jm) {
            const std::vector<double> etg = eta_geq_table(p.cutoffs, l, N);
            KahanSum acc;
            for (long q1 = -N; q1 <= N; ++q1)
                for (long q2 = -N; q2 <= N; ++q2)
                    for (long q3 = -N; q3 <= N; ++q3)
                        for (long q4 = -N; q4 <= N; ++q4) {
                            const long u = q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4;
                            const double wt = etg[static_cast<std::size_t>(u)];
                            if (wt == 0.0) continue;
                            const double den = p.Z_b * static_cast<double>(u) + p.m_r_sq -
                                               sl(q1) - sl(q2) - sl(q3) - sl(q4);
                            if (den <= 0.0)
                                throw std::domain_error(
                                    "sliced propagator denominator not positive");
                            const double G = wt / den;
                            acc.add(G * G);
                        }
            B = acc.value();
        }
        const double gZ2 = gZb2 / (1.0 + gZb2 * B);
        out.Z.push_back(Z);
        out.gZ2.push_back(gZ2);
        out.g.push_back(gZ2 / (Z * Z));
    }
    return out;
}

BetaCoefficients beta_coefficients(const CutoffFamily& c, double m_r_sq, int j) {
    if (j < 0 || j + 2 > c.j_max())
        throw std::out_of_range("beta coefficients need slices j+1 and j+2 within the family");
    const double M2 = static_cast<double>(c.M()) * c.M();
    const double sj = std::pow(M2, j);  // M^{2j}
    const double lo_d = (c.a() - c.eps()) * sj;
    const double hi_d = (c.a() + c.eps()) * sj * M2 * M2;
    const double hi1 = (c.a() + c.eps()) * sj * M2;  // end of supp eta_{j+1}
    const double lo2 = (c.a() - c.eps()) * sj * M2;  // start of supp eta_{j+2}
    const long lo = std::max(1L, static_cast<long>(std::floor(lo_d)));
    const long hi = static_cast<long>(std::ceil(hi_d));

    // Exact shell counts r_4(u) = 8 sum_{d | u, 4 not| d} d on the window.
    std::vector<std::uint64_t> divsum(static_cast<std::size_t>(hi - lo + 1), 0);
    for (long d = 1; d <= hi; ++d) {
        if (d % 4 == 0) continue;
        for (long m = ((lo + d - 1) / d) * d; m <= hi; m += d)
            divsum[static_cast<std::size_t>(m - lo)] += static_cast<std::uint64_t>(d);
    }

    KahanSum K, K1, At, A;
    for (long u = lo; u <= hi; ++u) {
        const double w = 8.0 * static_cast<double>(divsum[static_cast<std::size_t>(u - lo)]);
        const double uu = static_cast<double>(u);
        const double den = uu + m_r_sq;
        double e1 = 0.0, ep1 = 0.0, e2 = 0.0, ep2 = 0.0;
        if (uu < hi1) {
            e1 = c.eta(j + 1, uu);
            ep1 = c.eta_prime(j + 1, uu);
        }
        if (uu > lo2) {
            e2 = c.eta(j + 2, uu);
            ep2 = c.eta_prime(j + 2, uu);
        }
        if (ep1 != 0.0) K.add(w * ep1 / den);
        if (ep2 != 0.0) K1.add(w * ep2 / den);
        if (e1 != 0.0) {
            At.add(w * e1 / (den * den));
            A.add(w * (e1 * e1 + 2.0 * e1 * e2) / (den * den));
        }
    }

    BetaCoefficients out;
    out.K_j = K.value();
    out.K_j1 = K1.value();
    out.A_tilde = At.value();
    out.A = A.value();
    out.beta_j = out.A - 2.0 * out.A_tilde + 2.0 * out.K_j - 2.0 * out.K_j1;
    return out;
}

double beta2_integral(const CutoffFamily& c) {
    const double M2 = static_cast<double>(c.M()) * c.M();
    auto [lo, hi] = c.h_support();
    auto f = [&](double u) {
        const double bracket =
            2.0 * (1.0 - c.kappa(u / M2)) + c.kappa(u) + c.kappa(M2 * u);
        return c.h(u) * bracket / u;
    };
    return -kPi * kPi * integrate_adaptive(f, lo, hi, 1e-10, 1e-15);
}

}  // namespace melonrg
