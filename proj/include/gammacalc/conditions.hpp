#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gammacalc/graph.hpp"
#include "gammacalc/linalg.hpp"
#include "gammacalc/local_forms.hpp"
#include "gammacalc/operators.hpp"

namespace gammacalc {

/// Per-vertex evaluation record for one of the condition inequalities.
/// slack = gamma2 - gamma_correction - rhs_dimension_term - rhs_curvature_term,
/// with gamma_correction = 0 for CD.
struct SlackReport {
    std::string vertex;
    std::string condition;  // "CD", "CDE", "CDE'"
    double K = 0.0;
    double n = 0.0;
    double gamma2_value = 0.0;
    double gamma_correction = 0.0;
    double rhs_dimension_term = 0.0;
    double rhs_curvature_term = 0.0;
    double slack = 0.0;
    bool applicable = true;
    std::string reason;
};

namespace detail {

inline void require_positive_n(double n) {
    if (!(n > 0.0)) throw std::invalid_argument("dimension parameter n must be positive");
}

/// Gamma(f)/f materialized on the closed 1-ball of x; requires positivity of
/// f on the closed 2-ball (the support the correction term reads).
inline VertexFunction gamma_over_f(const Graph& g, const VertexFunction& f, const std::string& x) {
    for (const auto& v : g.ball(x, 2)) {
        if (!(f.at(v) > 0.0))
            throw std::invalid_argument("CDE/CDE' requires f > 0 on the 2-ball of '" + x +
                                        "'; f('" + v + "') is not positive");
    }
    VertexFunction h;
    for (const auto& v : g.ball(x, 1)) h.set(v, gamma(g, f, v) / f.at(v));
    return h;
}

}  // namespace detail

/// CD(K,n) slack at x: Gamma_2(f)(x) - (1/n)(Delta f)^2(x) - K Gamma(f)(x).
inline SlackReport cd_check(const Graph& g, const std::string& x, double K, double n,
                            const VertexFunction& f) {
    detail::require_positive_n(n);
    SlackReport r;
    r.vertex = x;
    r.condition = "CD";
    r.K = K;
    r.n = n;
    r.gamma2_value = gamma2(g, f, x);
    double lap = laplacian(g, f, x);
    r.rhs_dimension_term = lap * lap / n;
    r.rhs_curvature_term = K * gamma(g, f, x);
    r.slack = r.gamma2_value - r.gamma_correction - r.rhs_dimension_term - r.rhs_curvature_term;
    r.applicable = true;
    r.reason = "CD imposes a constraint at every function";
    return r;
}

/// CDE(K,n) slack at x:
///   Gamma_2(f)(x) - Gamma(f, Gamma(f)/f)(x) - (1/n)(Delta f)^2(x) - K Gamma(f)(x).
/// Requires f > 0 on the 2-ball of x; applicable only when Delta f(x) < 0.
inline SlackReport cde_slack(const Graph& g, const std::string& x, double K, double n,
                             const VertexFunction& f) {
    detail::require_positive_n(n);
    SlackReport r;
    r.vertex = x;
    r.condition = "CDE";
    r.K = K;
    r.n = n;
    VertexFunction h = detail::gamma_over_f(g, f, x);
    r.gamma2_value = gamma2(g, f, x);
    r.gamma_correction = gamma(g, f, h, x);
    double lap = laplacian(g, f, x);
    r.rhs_dimension_term = lap * lap / n;
    r.rhs_curvature_term = K * gamma(g, f, x);
    r.slack = r.gamma2_value - r.gamma_correction - r.rhs_dimension_term - r.rhs_curvature_term;
    r.applicable = lap < 0.0;
    r.reason = r.applicable ? "Delta f(x) < 0" : "Delta f(x) >= 0; condition vacuous here";
    return r;
}

/// CDE'(K,n) slack at x:
///   Gamma_2(f)(x) - Gamma(f, Gamma(f)/f)(x) - (1/n) f(x)^2 (Delta log f)^2(x) - K Gamma(f)(x)
/// with the natural logarithm and the normalized Laplacian applied to log f.
inline SlackReport cde_prime_slack(const Graph& g, const std::string& x, double K, double n,
                                   const VertexFunction& f) {
    detail::require_positive_n(n);
    SlackReport r;
    r.vertex = x;
    r.condition = "CDE'";
    r.K = K;
    r.n = n;
    VertexFunction h = detail::gamma_over_f(g, f, x);
    r.gamma2_value = gamma2(g, f, x);
    r.gamma_correction = gamma(g, f, h, x);
    int xi = g.index_of(x);
    double fx = f.at(x);
    double lap_log = 0.0;
    for (int yi : g.neighbors(xi)) lap_log += std::log(f.at(g.id_of(yi))) - std::log(fx);
    lap_log *= g.mu(xi);
    r.rhs_dimension_term = fx * fx * lap_log * lap_log / n;
    r.rhs_curvature_term = K * gamma(g, f, x);
    r.slack = r.gamma2_value - r.gamma_correction - r.rhs_dimension_term - r.rhs_curvature_term;
    double lap = laplacian(g, f, x);
    r.applicable = lap < 0.0;
    r.reason = r.applicable ? "Delta f(x) < 0" : "Delta f(x) >= 0; condition vacuous here";
    return r;
}

enum class NMinKind { finite, none_fails, any_dimension };
enum class KMaxKind { finite, minus_infinity, not_computed };

/// Exact per-vertex curvature summary. n_min is the smallest n with CD(0,n)
/// at the vertex; k_max(n) the largest K with CD(K,n) there.
struct CurvatureResult {
    std::string vertex;
    NMinKind n_min_kind = NMinKind::finite;
    double n_min = std::numeric_limits<double>::quiet_NaN();
    KMaxKind k_max_kind = KMaxKind::not_computed;
    double k_max = std::numeric_limits<double>::quiet_NaN();
    std::string notes;
};

/// Smallest n such that Gamma_2(f)(x) >= (1/n)(Delta f)^2(x) for every f.
/// Computed as the largest eigenvalue of the pencil (ell ell^T, Q_gamma2) on
/// range(Q_gamma2); the kernel of Q_gamma2 is checked separately (ell must
/// vanish there, otherwise no n works).
inline CurvatureResult cd_nmin(const Graph& g, const std::string& x) {
    LocalForms lf = local_forms(g, x);
    CurvatureResult res;
    res.vertex = x;

    EigenResult e2 = jacobi_eigen(lf.q_gamma2);
    double scale2 = 0.0;
    for (double v : e2.values) scale2 = std::max(scale2, std::abs(v));
    const double tol2 = 1e-10 * std::max(1.0, scale2);
    if (!e2.values.empty() && e2.values.front() < -tol2) {
        res.n_min_kind = NMinKind::none_fails;
        res.notes = "gamma2 form has a negative direction; CD(0,n) fails for every n";
        return res;
    }

    double ell_norm = norm2(lf.ell);
    if (ell_norm <= 1e-12) {
        res.n_min_kind = NMinKind::any_dimension;
        res.notes = "Delta functional vanishes identically; CD(0,n) holds for every n";
        return res;
    }

    for (int j = 0; j < static_cast<int>(e2.values.size()); ++j) {
        if (e2.values[static_cast<std::size_t>(j)] > tol2) continue;
        double proj = dot(e2.vectors.col(j), lf.ell);
        if (std::abs(proj) > 1e-9 * std::max(1.0, ell_norm)) {
            res.n_min_kind = NMinKind::none_fails;
            res.notes = "Delta functional is nonzero on a null direction of the gamma2 form; "
                        "CD(0,n) fails for every n";
            return res;
        }
    }

    PencilResult p = sym_geig(Matrix::outer(lf.ell), lf.q_gamma2);
    if (p.eigenvalues.empty()) {
        res.n_min_kind = NMinKind::any_dimension;
        res.notes = "gamma2 form vanishes and Delta functional is null on its kernel";
        return res;
    }
    res.n_min_kind = NMinKind::finite;
    res.n_min = p.eigenvalues.back();
    res.notes = "exact: largest pencil eigenvalue of (ell ell^T, gamma2 form)";
    return res;
}

/// Largest K such that Gamma_2(f)(x) >= (1/n)(Delta f)^2(x) + K Gamma(f)(x)
/// for every f; n may be +infinity (drops the dimension term).
///
/// With A = Q_gamma2 - (1/n) ell ell^T and G = Q_gamma, K_max = sup{K : A - K G psd}.
/// Since ker(G) couples to range(G) through A, the exact value is the smallest
/// eigenvalue of the pencil (S, G_r) where S is the generalized Schur
/// complement of the ker(G) block of A; K_max = -infinity when A is not PSD on
/// ker(G) or when a null direction of that block still couples to range(G).
inline CurvatureResult cd_kmax(const Graph& g, const std::string& x, double n) {
    if (std::isnan(n) || (!std::isinf(n) && !(n > 0.0)))
        throw std::invalid_argument("dimension parameter n must be positive or infinity");
    LocalForms lf = local_forms(g, x);
    CurvatureResult res;
    res.vertex = x;
    res.k_max_kind = KMaxKind::not_computed;

    const int m = lf.q_gamma.n;
    Matrix a = lf.q_gamma2;
    if (!std::isinf(n)) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                a(i, j) -= lf.ell[static_cast<std::size_t>(i)] * lf.ell[static_cast<std::size_t>(j)] / n;
    }

    EigenResult eg = jacobi_eigen(lf.q_gamma);
    double gscale = 0.0;
    for (double v : eg.values) gscale = std::max(gscale, std::abs(v));
    if (gscale == 0.0) throw std::runtime_error("gamma form vanished at vertex '" + x + "'");
    if (eg.values.front() < -1e-10 * gscale)
        throw std::runtime_error("gamma form unexpectedly indefinite at vertex '" + x + "'");
    const double gcut = 1e-10 * gscale;

    std::vector<std::vector<double>> rbasis, kbasis;
    std::vector<double> gdiag;
    for (int j = 0; j < m; ++j) {
        if (eg.values[static_cast<std::size_t>(j)] > gcut) {
            rbasis.push_back(eg.vectors.col(j));
            gdiag.push_back(eg.values[static_cast<std::size_t>(j)]);
        } else {
            kbasis.push_back(eg.vectors.col(j));
        }
    }
    const int r = static_cast<int>(rbasis.size());
    const int k = static_cast<int>(kbasis.size());
    const double ascale = std::max(1.0, a.frobenius());

    // A projected onto the three blocks of range(G) + ker(G).
    Matrix a_rr(r);
    for (int i = 0; i < r; ++i) {
        auto ari = matvec(a, rbasis[static_cast<std::size_t>(i)]);
        for (int j = 0; j < r; ++j) a_rr(i, j) = dot(rbasis[static_cast<std::size_t>(j)], ari);
    }
    a_rr.symmetrize();

    Matrix schur = a_rr;
    if (k > 0) {
        Matrix a_kk(k);
        std::vector<std::vector<double>> a_kr(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            auto aki = matvec(a, kbasis[static_cast<std::size_t>(i)]);
            for (int j = 0; j < k; ++j) a_kk(i, j) = dot(kbasis[static_cast<std::size_t>(j)], aki);
            a_kr[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(r));
            for (int j = 0; j < r; ++j)
                a_kr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dot(rbasis[static_cast<std::size_t>(j)], aki);
        }
        a_kk.symmetrize();
        EigenResult ekk = jacobi_eigen(a_kk);
        const double ktol = 1e-10 * ascale;
        if (ekk.values.front() < -ktol) {
            res.k_max_kind = KMaxKind::minus_infinity;
            res.notes = "A is not positive semidefinite on the kernel of the gamma form; "
                        "no K admissible";
            return res;
        }
        // Null directions of the kernel block must not couple to range(G).
        for (int j = 0; j < k; ++j) {
            if (ekk.values[static_cast<std::size_t>(j)] > ktol) continue;
            auto w = ekk.vectors.col(j);
            double coupling = 0.0;
            for (int c = 0; c < r; ++c) {
                double s = 0.0;
                for (int i = 0; i < k; ++i)
                    s += w[static_cast<std::size_t>(i)] * a_kr[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                coupling = std::max(coupling, std::abs(s));
            }
            if (coupling > 1e-8 * ascale) {
                res.k_max_kind = KMaxKind::minus_infinity;
                res.notes = "a null direction of A on ker(gamma form) couples to its range; "
                            "no K admissible";
                return res;
            }
        }
        // schur = A_rr - A_rk A_kk^+ A_kr via the eigendecomposition of A_kk.
        for (int j = 0; j < k; ++j) {
            if (ekk.values[static_cast<std::size_t>(j)] <= ktol) continue;
            auto w = ekk.vectors.col(j);
            std::vector<double> wa(static_cast<std::size_t>(r), 0.0);
            for (int c = 0; c < r; ++c) {
                double s = 0.0;
                for (int i = 0; i < k; ++i)
                    s += w[static_cast<std::size_t>(i)] * a_kr[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                wa[static_cast<std::size_t>(c)] = s;
            }
            double inv = 1.0 / ekk.values[static_cast<std::size_t>(j)];
            for (int c = 0; c < r; ++c)
                for (int d = 0; d < r; ++d)
                    schur(c, d) -= inv * wa[static_cast<std::size_t>(c)] * wa[static_cast<std::size_t>(d)];
        }
    }

    // K_max = smallest eigenvalue of diag(g)^{-1/2} S diag(g)^{-1/2}.
    Matrix whitened(r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            whitened(i, j) = schur(i, j) / std::sqrt(gdiag[static_cast<std::size_t>(i)] * gdiag[static_cast<std::size_t>(j)]);
    whitened.symmetrize();
    res.k_max_kind = KMaxKind::finite;
    res.k_max = jacobi_eigen(whitened).values.front();
    res.notes = "exact: kernel-deflated pencil of (gamma2 - dimension term, gamma form)";
    return res;
}

}  // namespace gammacalc
