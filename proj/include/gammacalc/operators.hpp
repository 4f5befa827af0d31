#pragma once

#include <stdexcept>
#include <string>

#include "gammacalc/graph.hpp"

namespace gammacalc {

/// Normalized Laplacian: (Delta f)(x) = mu_x * sum_{y ~ x} (f(y) - f(x)).
inline double laplacian(const Graph& g, const VertexFunction& f, const std::string& x) {
    int xi = g.index_of(x);
    double fx = f.at(x);
    double s = 0.0;
    for (int yi : g.neighbors(xi)) s += f.at(g.id_of(yi)) - fx;
    return g.mu(xi) * s;
}

/// Delta f materialized on every vertex.
inline VertexFunction laplacian_function(const Graph& g, const VertexFunction& f) {
    VertexFunction out;
    for (const auto& v : g.vertices()) out.set(v, laplacian(g, f, v));
    return out;
}

/// Carre du champ: Gamma(f,h)(x) = 1/2 (Delta(fh) - f Delta h - h Delta f)(x).
/// Reads f and h on the closed 1-ball of x only.
inline double gamma(const Graph& g, const VertexFunction& f, const VertexFunction& h,
                    const std::string& x) {
    int xi = g.index_of(x);
    double fx = f.at(x), hx = h.at(x);
    double lap_fh = 0.0, lap_f = 0.0, lap_h = 0.0;
    for (int yi : g.neighbors(xi)) {
        const std::string& y = g.id_of(yi);
        double fy = f.at(y), hy = h.at(y);
        lap_fh += fy * hy - fx * hx;
        lap_f += fy - fx;
        lap_h += hy - hx;
    }
    double mu = g.mu(xi);
    // The grouping keeps the evaluation symmetric under swapping f and h,
    // so Gamma(f,h) == Gamma(h,f) holds bit-exactly.
    return 0.5 * (mu * lap_fh - (fx * mu * lap_h + hx * mu * lap_f));
}

inline double gamma(const Graph& g, const VertexFunction& f, const std::string& x) {
    return gamma(g, f, f, x);
}

/// Closed form Gamma(f)(x) = 1/2 mu_x * sum_{y ~ x} f(x,y)^2.
inline double gamma_sum_form(const Graph& g, const VertexFunction& f, const std::string& x) {
    int xi = g.index_of(x);
    double fx = f.at(x);
    double s = 0.0;
    for (int yi : g.neighbors(xi)) {
        double d = f.at(g.id_of(yi)) - fx;
        s += d * d;
    }
    return 0.5 * g.mu(xi) * s;
}

/// Gamma_2(f)(x) = 1/2 Delta(Gamma(f))(x) - Gamma(f, Delta f)(x).
/// Reads f on the closed 2-ball of x only.
inline double gamma2(const Graph& g, const VertexFunction& f, const std::string& x) {
    VertexFunction gf, lf;
    for (const auto& v : g.ball(x, 1)) {
        gf.set(v, gamma(g, f, v));
        lf.set(v, laplacian(g, f, v));
    }
    return 0.5 * laplacian(g, gf, x) - gamma(g, f, lf, x);
}

/// Closed form of Gamma_2 (double sum over the 2-ball):
///   1/2 (Delta f)^2(x) + 1/2 mu_x sum_{y~x} mu_y sum_{z~y} (f(y,z)^2 - 1/2 f(x,z)^2).
/// The double sum carries a 1/2 prefactor; without it the identity with the
/// definitional gamma2 fails.
inline double gamma2_sum_form(const Graph& g, const VertexFunction& f, const std::string& x) {
    int xi = g.index_of(x);
    double fx = f.at(x);
    double outer = 0.0;
    for (int yi : g.neighbors(xi)) {
        double fy = f.at(g.id_of(yi));
        double inner = 0.0;
        for (int zi : g.neighbors(yi)) {
            double fz = f.at(g.id_of(zi));
            double dyz = fz - fy, dxz = fz - fx;
            inner += dyz * dyz - 0.5 * dxz * dxz;
        }
        outer += g.mu(yi) * inner;
    }
    double lap = laplacian(g, f, x);
    return 0.5 * lap * lap + 0.5 * g.mu(xi) * outer;
}

namespace detail {

constexpr int kGammaIterDefaultCap = 3;

/// Gamma_i(f,h) materialized on every vertex.
inline VertexFunction gamma_iter_function(const Graph& g, int i, const VertexFunction& f,
                                          const VertexFunction& h) {
    VertexFunction out;
    if (i == 0) {
        for (const auto& v : g.vertices()) out.set(v, f.at(v) * h.at(v));
        return out;
    }
    VertexFunction prev = gamma_iter_function(g, i - 1, f, h);
    VertexFunction lf = laplacian_function(g, f);
    VertexFunction lh = laplacian_function(g, h);
    VertexFunction f_lh = gamma_iter_function(g, i - 1, f, lh);
    VertexFunction lf_h = gamma_iter_function(g, i - 1, lf, h);
    for (const auto& v : g.vertices())
        out.set(v, 0.5 * (laplacian(g, prev, v) - f_lh.at(v) - lf_h.at(v)));
    return out;
}

}  // namespace detail

/// Iterated operator: Gamma_0(f,h) = f h,
/// Gamma_{i+1}(f,h) = 1/2 (Delta Gamma_i(f,h) - Gamma_i(f, Delta h) - Gamma_i(Delta f, h)).
/// i is capped (default 3) to guard against runaway recursion cost.
inline double gamma_iter(const Graph& g, int i, const VertexFunction& f, const VertexFunction& h,
                         const std::string& x, int cap = detail::kGammaIterDefaultCap) {
    if (i < 0) throw std::invalid_argument("gamma_iter order must be nonnegative");
    if (i > cap)
        throw std::invalid_argument("gamma_iter order " + std::to_string(i) +
                                    " exceeds cap " + std::to_string(cap));
    return detail::gamma_iter_function(g, i, f, h).at(x);
}

}  // namespace gammacalc
