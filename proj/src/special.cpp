#include "scatter/special.hpp"

#include <cmath>
#include <stdexcept>

#include "scatter/constants.hpp"

namespace scatter {

namespace {

double sbessel_series(int l, double x) {
    // j_l(x) = x^l / (2l+1)!! * (1 - x^2/(2(2l+3)) + ...)
    double dfact = 1.0;
    for (int k = 2 * l + 1; k > 1; k -= 2) dfact *= k;
    double x2 = x * x;
    double term = 1.0 - x2 / (2.0 * (2.0 * l + 3.0)) +
                  x2 * x2 / (8.0 * (2.0 * l + 3.0) * (2.0 * l + 5.0));
    return std::pow(x, l) / dfact * term;
}

double sbessel_upward(int l, double x) {
    double jm = std::sin(x) / x;
    if (l == 0) return jm;
    double j = jm / x - std::cos(x) / x;
    for (int k = 1; k < l; ++k) {
        double jn = (2.0 * k + 1.0) / x * j - jm;
        jm = j;
        j = jn;
    }
    return j;
}

double sbessel_miller(int l, double x) {
    // downward recurrence from a padded start order, normalized to j_0
    int lstart = l + static_cast<int>(std::sqrt(40.0 * l)) + 12;
    double jp = 0.0;
    double j = 1e-30;
    double target = 0.0;
    for (int k = lstart; k > 0; --k) {
        double jm = (2.0 * k + 1.0) / x * j - jp;
        jp = j;
        j = jm;
        if (k - 1 == l) target = j;
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            jp *= 1e-250;
            target *= 1e-250;
        }
    }
    return target * (std::sin(x) / x) / j;
}

}  // namespace

double spherical_bessel(int l, double x) {
    if (l < 0 || x < 0.0 || !std::isfinite(x)) {
        throw std::domain_error("spherical_bessel: require l >= 0, x >= 0");
    }
    if (x < 1e-3) {
        if (x == 0.0) return l == 0 ? 1.0 : 0.0;
        return sbessel_series(l, x);
    }
    if (x > l) return sbessel_upward(l, x);
    return sbessel_miller(l, x);
}

double spherical_neumann(int l, double x) {
    if (l < 0 || !(x > 0.0)) {
        throw std::domain_error("spherical_neumann: require l >= 0, x > 0");
    }
    double ym = -std::cos(x) / x;
    if (l == 0) return ym;
    double y = ym / x - std::sin(x) / x;
    for (int k = 1; k < l; ++k) {
        double yn = (2.0 * k + 1.0) / x * y - ym;
        ym = y;
        y = yn;
    }
    return y;
}

RiccatiPair riccati_bessel(int l, double x) {
    double j = spherical_bessel(l, x);
    double y = spherical_neumann(l, x);
    // f_l' relations: j_l' = j_{l-1} - (l+1)/x j_l (same for y), with
    // j_{-1}(x) = cos(x)/x, y_{-1}(x) = sin(x)/x.
    double jm = (l == 0) ? std::cos(x) / x : spherical_bessel(l - 1, x);
    double ym = (l == 0) ? std::sin(x) / x : spherical_neumann(l - 1, x);
    double jp = jm - (l + 1.0) / x * j;
    double yp = ym - (l + 1.0) / x * y;
    RiccatiPair out;
    out.s = x * j;
    out.sp = j + x * jp;
    out.c = -x * y;
    out.cp = -(y + x * yp);
    return out;
}

double assoc_laguerre(int n, double a, double x) {
    if (n < 0) throw std::domain_error("assoc_laguerre: n >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0;
    double l = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        double ln = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: n >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi-style initial guess, then Newton on P_n
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? x : p1;
            pp = n * (x * pn - p0) / (x * x - 1.0);
            double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw std::domain_error("gauss_hermite: n >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pim14 = std::pow(kPi, -0.25);
    double x = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // initial guesses per Numerical Recipes, then Newton on
        // orthonormal Hermite ~H_n
        if (i == 0) {
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            x -= 1.14 * std::pow(n, 0.426) / x;
        } else if (i == 2) {
            x = 1.86 * x - 0.86 * rule.nodes[n - 1];
        } else if (i == 3) {
            x = 1.91 * x - 0.91 * rule.nodes[n - 2];
        } else {
            x = 2.0 * x - rule.nodes[n - i + 1];
        }
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p0 = pim14, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = x * std::sqrt(2.0 / (k + 1.0)) * p0 -
                            std::sqrt(static_cast<double>(k) / (k + 1.0)) * p1;
                p1 = p0;
                p0 = p2;
            }
            pp = std::sqrt(2.0 * n) * p1;
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-14) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        double w = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    return rule;
}

}  // namespace scatter
