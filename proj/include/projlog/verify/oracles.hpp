#pragma once
//
// Independent reference computations used by the verification suites and the
// tests. Nothing here calls the closed-form derivative or quadrature code it is
// meant to check.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "projlog/geometry.hpp"

namespace projlog::oracle {

/// |a|^2 |b|^2 - |a . conj(b)|^2, the Gram-determinant side of the Lagrange identity.
inline double gram_wedge_sq(const cvec& a, const cvec& b)
{
    const complex ab = (a.array() * b.conjugate().array()).sum();
    return a.squaredNorm() * b.squaredNorm() - std::norm(ab);
}

/// Central-difference holomorphic gradient df/dz_m = (f_x - i f_y) / 2.
inline cvec fd_gradient(const std::function<double(const cvec&)>& f, const cvec& z, double h = 1e-5)
{
    cvec g(z.size());
    for (Eigen::Index m = 0; m < z.size(); ++m) {
        cvec xp = z, xm = z, yp = z, ym = z;
        xp[m] += h;
        xm[m] -= h;
        yp[m] += complex(0.0, h);
        ym[m] -= complex(0.0, h);
        const double fx = (f(xp) - f(xm)) / (2.0 * h);
        const double fy = (f(yp) - f(ym)) / (2.0 * h);
        g[m] = complex(0.5 * fx, -0.5 * fy);
    }
    return g;
}

/// Complex Hessian d2f/dz_m dzbar_k from mixed second differences of the values:
/// H_mk = (f_{x_m x_k} + f_{y_m y_k}) / 4 + i (f_{x_m y_k} - f_{y_m x_k}) / 4.
inline Eigen::MatrixXcd fd_hessian(const std::function<double(const cvec&)>& f, const cvec& z, double h = 1e-4)
{
    const Eigen::Index n = z.size();
    auto shift = [&](Eigen::Index j, bool imag, double s) {
        cvec e = cvec::Zero(n);
        e[j] = imag ? complex(0.0, s) : complex(s, 0.0);
        return e;
    };
    auto d2 = [&](Eigen::Index a, bool ia, Eigen::Index b, bool ib) {
        const cvec ea = shift(a, ia, h), eb = shift(b, ib, h);
        return (f(z + ea + eb) - f(z + ea - eb) - f(z - ea + eb) + f(z - ea - eb)) / (4.0 * h * h);
    };
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k) {
            const double re = 0.25 * (d2(m, false, k, false) + d2(m, true, k, true));
            const double im = 0.25 * (d2(m, false, k, true) - d2(m, true, k, false));
            out(m, k) = complex(re, im);
        }
    return out;
}

/// Complex Hessian from central differences of a holomorphic gradient g:
/// column k is dbar_k g = (g_{x_k} + i g_{y_k}) / 2.
inline Eigen::MatrixXcd fd_hessian_from_gradient(const std::function<cvec(const cvec&)>& g, const cvec& z,
                                                 double h = 1e-6)
{
    const Eigen::Index n = z.size();
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        cvec xp = z, xm = z, yp = z, ym = z;
        xp[k] += h;
        xm[k] -= h;
        yp[k] += complex(0.0, h);
        ym[k] -= complex(0.0, h);
        const cvec gx = (g(xp) - g(xm)) / (2.0 * h);
        const cvec gy = (g(yp) - g(ym)) / (2.0 * h);
        out.col(k) = 0.5 * (gx + complex(0.0, 1.0) * gy);
    }
    return out;
}

/// Mixed discriminant by the permutation expansion
/// D(A_1..A_n) = (1/n!) sum_{sigma, tau} sgn(sigma) prod_i (A_{tau(i)})_{i, sigma(i)}.
inline double mixed_discriminant_permutations(const std::vector<Eigen::MatrixXcd>& as)
{
    const int n = static_cast<int>(as.size());
    std::vector<int> sigma(n), tau(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    complex total = 0.0;
    double fact = 1.0;
    for (int j = 2; j <= n; ++j)
        fact *= j;
    auto sign_of = [n](const std::vector<int>& p) {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j])
                    ++inv;
        return inv % 2 ? -1.0 : 1.0;
    };
    do {
        const double sg = sign_of(sigma);
        std::iota(tau.begin(), tau.end(), 0);
        do {
            complex prod = 1.0;
            for (int i = 0; i < n; ++i)
                prod *= as[static_cast<std::size_t>(tau[i])](i, sigma[i]);
            total += sg * prod;
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total.real() / fact;
}

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf)
{
    std::sort(xs.begin(), xs.end());
    const double m = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, std::abs(f - i / m), std::abs((i + 1) / m - f)});
    }
    return d;
}

} // namespace projlog::oracle
