#pragma once
//
// Pointwise kernels on C^n x C^n and P^n x P^n:
//
//   K(z,w)   = 1/2 log(|z-w|^2 / (1+|w|^2))
//   N_e(z,w) = 1/2 log((|z-w|^2 + |z^w|^2 + e^2) / (1+|w|^2))
//   G(p,q)   = 1/2 log(|p^q|^2 / (|p|^2 |q|^2))
//
// and the closed-form holomorphic gradient and complex Hessian of N_e.
//
// With Z = (1,z), W = (1,w) one has |z-w|^2 + |z^w|^2 = |Z^W|^2, so with
// D = |Z^W|^2 + e^2:
//
//   dD/dz_m          = P_m = conj(z_m - w_m) + sum_{j>m} w_j conj(z_m w_j - z_j w_m)
//                                            - sum_{i<m} w_i conj(z_i w_m - z_m w_i)
//   d2D/dz_m dzbar_k = A_mk = (1+|w|^2) delta_mk - conj(w_m) w_k
//   d2N/dz_m dzbar_k = (A_mk / D - P_m conj(P_k) / D^2) / 2
//

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "projlog/errors.hpp"
#include "projlog/geometry.hpp"

namespace projlog {

using HermitianMatrix = Eigen::MatrixXcd;

/// Regularization parameter of N_e. Zero is allowed for values only.
class RegEps
{
public:
    constexpr RegEps() = default;
    explicit RegEps(double eps)
        : eps_(eps)
    {
        if (!(eps >= 0.0) || !std::isfinite(eps))
            throw domain_error("RegEps: eps must be a finite value >= 0");
    }
    [[nodiscard]] double value() const noexcept { return eps_; }
    [[nodiscard]] bool positive() const noexcept { return eps_ > 0.0; }

    void require_positive(const char* who) const
    {
        if (!positive())
            throw domain_error(std::string(who) + ": derivatives require eps > 0");
    }

private:
    double eps_ = 0.0;
};

namespace detail {

inline void check_same_dim(const cvec& z, const cvec& w, const char* who)
{
    if (z.size() != w.size())
        throw dimension_error(std::string(who) + ": dimension mismatch (" + std::to_string(z.size()) +
                              " vs " + std::to_string(w.size()) + ")");
    if (z.size() == 0)
        throw dimension_error(std::string(who) + ": zero-dimensional input");
}

// |z^w|^2 over C^n (zero for n = 1)
inline double affine_wedge_sq(const cvec& z, const cvec& w)
{
    return z.size() < 2 ? 0.0 : wedge_norm_sq(z, w);
}

} // namespace detail

/// |z-w|^2 + |z^w|^2, the squared projective chordal numerator.
inline double kernel_N_numerator(const cvec& z, const cvec& w)
{
    detail::check_same_dim(z, w, "kernel_N_numerator");
    return (z - w).squaredNorm() + detail::affine_wedge_sq(z, w);
}

inline double kernel_K(const cvec& z, const cvec& w)
{
    detail::check_same_dim(z, w, "kernel_K");
    const double d2 = (z - w).squaredNorm();
    if (d2 == 0.0)
        return neg_inf;
    return 0.5 * (std::log(d2) - std::log1p(w.squaredNorm()));
}

inline double kernel_N(const cvec& z, const cvec& w, RegEps eps = RegEps{})
{
    const double num = kernel_N_numerator(z, w) + eps.value() * eps.value();
    if (num == 0.0)
        return neg_inf;
    return 0.5 * (std::log(num) - std::log1p(w.squaredNorm()));
}

/// Projective kernel G(p, q) = log sin(d(p,q)/sqrt2) <= 0.
inline double kernel_G(const ProjectivePoint& p, const ProjectivePoint& q)
{
    if (p.dim() != q.dim())
        throw dimension_error("kernel_G: points live in different P^n");
    const double w = wedge_norm_sq(p.homog(), q.homog());
    if (w == 0.0)
        return neg_inf;
    return std::min(0.0, 0.5 * std::log(w));
}

/// P_m = d/dz_m (|z-w|^2 + |z^w|^2), written as the sum over 2x2 minors.
inline cvec kernel_N_dnum(const cvec& z, const cvec& w)
{
    detail::check_same_dim(z, w, "kernel_N_dnum");
    const Eigen::Index n = z.size();
    cvec p(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        complex s = std::conj(z[m] - w[m]);
        for (Eigen::Index j = m + 1; j < n; ++j)
            s += w[j] * std::conj(z[m] * w[j] - z[j] * w[m]);
        for (Eigen::Index i = 0; i < m; ++i)
            s -= w[i] * std::conj(z[i] * w[m] - z[m] * w[i]);
        p[m] = s;
    }
    return p;
}

/// Holomorphic gradient (dN_e/dz_m)_m = P_m / (2 D).
inline cvec grad_N_eps(const cvec& z, const cvec& w, RegEps eps)
{
    eps.require_positive("grad_N_eps");
    const double d = kernel_N_numerator(z, w) + eps.value() * eps.value();
    return kernel_N_dnum(z, w) / (2.0 * d);
}

/// Complex Hessian H_mk = d2 N_e / dz_m dzbar_k.
inline HermitianMatrix hessian_N_eps(const cvec& z, const cvec& w, RegEps eps)
{
    eps.require_positive("hessian_N_eps");
    const Eigen::Index n = z.size();
    const double d = kernel_N_numerator(z, w) + eps.value() * eps.value();
    const cvec p = kernel_N_dnum(z, w);
    HermitianMatrix a = (1.0 + w.squaredNorm()) * HermitianMatrix::Identity(n, n) - w.conjugate() * w.transpose();
    HermitianMatrix h = (a / d - p * p.adjoint() / (d * d)) * 0.5;
    // exact Hermitian symmetry: mirror the upper triangle
    for (Eigen::Index m = 0; m < n; ++m) {
        h(m, m) = complex(h(m, m).real(), 0.0);
        for (Eigen::Index k = m + 1; k < n; ++k)
            h(k, m) = std::conj(h(m, k));
    }
    return h;
}

namespace detail {

// h += weight * Hess N_e(z, w), g += weight * grad N_e(z, w) (either may be null),
// without temporaries. h is n x n column-major.
inline void accumulate_N_derivatives(const cvec& z, const cvec& w, double eps2, double weight, complex* g,
                                     complex* h)
{
    const Eigen::Index n = z.size();
    constexpr Eigen::Index stack_dim = 8;
    std::array<complex, stack_dim> pbuf;
    std::vector<complex> pheap;
    complex* p = pbuf.data();
    if (n > stack_dim) {
        pheap.resize(static_cast<std::size_t>(n));
        p = pheap.data();
    }
    double d = eps2;
    double wn2 = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
        d += std::norm(z[m] - w[m]);
        wn2 += std::norm(w[m]);
    }
    for (Eigen::Index m = 0; m < n; ++m) {
        complex s = std::conj(z[m] - w[m]);
        for (Eigen::Index j = m + 1; j < n; ++j) {
            const complex c = z[m] * w[j] - z[j] * w[m];
            d += std::norm(c);
            s += w[j] * std::conj(c);
        }
        for (Eigen::Index i = 0; i < m; ++i)
            s -= w[i] * std::conj(z[i] * w[m] - z[m] * w[i]);
        p[m] = s;
    }
    if (g) {
        const double f = weight / (2.0 * d);
        for (Eigen::Index m = 0; m < n; ++m)
            g[m] += f * p[m];
    }
    if (h) {
        const double f1 = 0.5 * weight / d;
        const double f2 = 0.5 * weight / (d * d);
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index m = 0; m < n; ++m) {
                const complex a = (m == k ? complex(1.0 + wn2, 0.0) : complex(0.0, 0.0)) - std::conj(w[m]) * w[k];
                h[m + k * n] += f1 * a - f2 * p[m] * std::conj(p[k]);
            }
    }
}

} // namespace detail

/// Constant c with |H_mk| <= c (1+|w|^2) / (|z-w|^2 + |z^w|^2 + e^2): H is
/// PSD and H <= A/(2D) in the Loewner order, so |H_mk| <= max_m H_mm <= (1+|w|^2)/(2D).
inline constexpr double hessian_entry_constant = 0.5;

} // namespace projlog
