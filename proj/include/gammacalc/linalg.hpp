#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gammacalc {

/// Small dense real matrix, row-major. Sized for per-vertex 2-ball forms,
/// not for large-scale linear algebra.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static Matrix identity(int size) {
        Matrix m(size);
        for (int i = 0; i < size; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix outer(const std::vector<double>& v) {
        Matrix m(static_cast<int>(v.size()));
        for (int i = 0; i < m.n; ++i)
            for (int j = 0; j < m.n; ++j) m(i, j) = v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        return m;
    }

    std::vector<double> col(int j) const {
        std::vector<double> c(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
        return c;
    }

    double frobenius() const {
        double s = 0.0;
        for (double v : a) s += v * v;
        return std::sqrt(s);
    }

    void symmetrize() {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = m;
                (*this)(j, i) = m;
            }
    }
};

inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
    std::vector<double> out(static_cast<std::size_t>(m.n), 0.0);
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

inline double quad_form(const Matrix& m, const std::vector<double>& v) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) s += v[static_cast<std::size_t>(i)] * m(i, j) * v[static_cast<std::size_t>(j)];
    return s;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

struct EigenResult {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns, matching values
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
/// Converges when the off-diagonal Frobenius norm drops below
/// 1e-12 * (initial Frobenius scale).
inline EigenResult jacobi_eigen(Matrix m, int max_sweeps = 100) {
    const int n = m.n;
    EigenResult res;
    if (n == 0) return res;
    m.symmetrize();
    Matrix v = Matrix::identity(n);
    const double scale = m.frobenius();
    const double tol = 1e-12 * scale;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    bool converged = (scale == 0.0) || (off_norm() <= tol);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                double app = m(p, p), aqq = m(q, q);
                m(p, p) = app - t * apq;
                m(q, q) = aqq + t * apq;
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = m(k, p), akq = m(k, q);
                    m(k, p) = c * akp - s * akq;
                    m(p, k) = m(k, p);
                    m(k, q) = s * akp + c * akq;
                    m(q, k) = m(k, q);
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm() <= tol;
    }
    if (!converged) throw std::runtime_error("jacobi eigensolver did not converge");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m(i, i) < m(j, j); });
    res.values.resize(static_cast<std::size_t>(n));
    res.vectors = Matrix(n);
    for (int j = 0; j < n; ++j) {
        res.values[static_cast<std::size_t>(j)] = m(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i) res.vectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
    }
    return res;
}

struct PencilResult {
    std::vector<double> eigenvalues;  // of (A,B) restricted to range(B), ascending
    bool a_psd_on_kernel = true;      // A restricted to ker(B) is PSD
    double min_kernel_eigenvalue = 0.0;
    int rank_b = 0;
    int kernel_dim = 0;
};

/// Generalized symmetric eigenvalues of the pencil A f = lambda B f with B PSD.
/// ker(B) is projected out (eigenvalues of B below tol * max are dropped);
/// the pencil only controls range(B), so PSD-ness of A on ker(B) is reported
/// separately. Throws if B is indefinite beyond tolerance.
inline PencilResult sym_geig(const Matrix& a, const Matrix& b, double psd_tol = 1e-10) {
    if (a.n != b.n) throw std::invalid_argument("sym_geig: dimension mismatch");
    const int n = b.n;
    PencilResult res;
    if (n == 0) return res;

    EigenResult eb = jacobi_eigen(b);
    double bscale = 0.0;
    for (double ev : eb.values) bscale = std::max(bscale, std::abs(ev));
    const double cutoff = psd_tol * bscale;
    if (!eb.values.empty() && eb.values.front() < -cutoff)
        throw std::invalid_argument("sym_geig: B is not positive semidefinite");

    std::vector<int> range_idx, kernel_idx;
    for (int j = 0; j < n; ++j) {
        if (eb.values[static_cast<std::size_t>(j)] > cutoff)
            range_idx.push_back(j);
        else
            kernel_idx.push_back(j);
    }
    res.rank_b = static_cast<int>(range_idx.size());
    res.kernel_dim = static_cast<int>(kernel_idx.size());

    const int r = res.rank_b;
    if (r > 0) {
        // Whitened congruence: C = W^T A W with W = V_r diag(1/sqrt(beta)).
        std::vector<std::vector<double>> wcols(static_cast<std::size_t>(r));
        for (int jj = 0; jj < r; ++jj) {
            int j = range_idx[static_cast<std::size_t>(jj)];
            double inv = 1.0 / std::sqrt(eb.values[static_cast<std::size_t>(j)]);
            auto c = eb.vectors.col(j);
            for (auto& x : c) x *= inv;
            wcols[static_cast<std::size_t>(jj)] = std::move(c);
        }
        Matrix c(r);
        for (int i = 0; i < r; ++i) {
            auto awi = matvec(a, wcols[static_cast<std::size_t>(i)]);
            for (int j = 0; j < r; ++j) c(i, j) = dot(wcols[static_cast<std::size_t>(j)], awi);
        }
        c.symmetrize();
        res.eigenvalues = jacobi_eigen(c).values;
    }

    const int k = res.kernel_dim;
    if (k > 0) {
        Matrix m(k);
        std::vector<std::vector<double>> kcols(static_cast<std::size_t>(k));
        for (int jj = 0; jj < k; ++jj)
            kcols[static_cast<std::size_t>(jj)] = eb.vectors.col(kernel_idx[static_cast<std::size_t>(jj)]);
        for (int i = 0; i < k; ++i) {
            auto aki = matvec(a, kcols[static_cast<std::size_t>(i)]);
            for (int j = 0; j < k; ++j) m(i, j) = dot(kcols[static_cast<std::size_t>(j)], aki);
        }
        m.symmetrize();
        EigenResult em = jacobi_eigen(m);
        res.min_kernel_eigenvalue = em.values.front();
        double ascale = a.frobenius();
        res.a_psd_on_kernel = em.values.front() >= -psd_tol * std::max(1.0, ascale);
    }
    return res;
}

}  // namespace gammacalc
