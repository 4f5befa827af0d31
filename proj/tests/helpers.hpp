#pragma once

#include <cmath>
#include <cstdio>
#include <deque>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gammacalc/gammacalc.hpp"

namespace testutil {

using gammacalc::Graph;
using gammacalc::VertexFunction;

/// |a - b| <= tol * max(1, |a|, |b|): relative comparison with an absolute
/// floor, for identities whose exact value can sit near zero.
inline bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline Graph eg() { return gammacalc::eg_graph(); }

inline VertexFunction fn_eg(double fx, double fy, double fz) {
    VertexFunction f;
    f.set("x", fx);
    f.set("y", fy);
    f.set("z", fz);
    return f;
}

/// Connected-enough random graph: 2..max_n vertices, random edges, any vertex
/// left isolated gets attached to the next one.
inline Graph random_graph(std::mt19937_64& rng, int max_n = 8) {
    std::uniform_int_distribution<int> nd(2, max_n);
    int n = nd(rng);
    std::uniform_real_distribution<double> und(0.0, 1.0);
    double p = 0.25 + 0.55 * und(rng);
    auto name = [](int i) { return std::string("v") + std::to_string(i); };
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (und(rng) < p) {
                edges.emplace_back(name(i), name(j));
                ++degree[static_cast<std::size_t>(i)];
                ++degree[static_cast<std::size_t>(j)];
            }
    for (int i = 0; i < n; ++i)
        if (degree[static_cast<std::size_t>(i)] == 0) {
            int j = (i + 1) % n;
            edges.emplace_back(name(std::min(i, j)), name(std::max(i, j)));
            ++degree[static_cast<std::size_t>(i)];
            ++degree[static_cast<std::size_t>(j)];
        }
    return Graph::from_edges(edges);
}

inline VertexFunction random_function(std::mt19937_64& rng, const Graph& g, double lo = -1.0,
                                      double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    VertexFunction f;
    for (const auto& v : g.vertices()) f.set(v, d(rng));
    return f;
}

inline VertexFunction random_positive_function(std::mt19937_64& rng, const Graph& g,
                                               double log_range = 2.0) {
    std::uniform_real_distribution<double> d(-log_range, log_range);
    VertexFunction f;
    for (const auto& v : g.vertices()) f.set(v, std::exp(d(rng)));
    return f;
}

/// Independent oracle for Gamma(f,h)(x): 1/2 mu_x sum_{y~x} f(x,y) h(x,y).
inline double gamma_product_oracle(const Graph& g, const VertexFunction& f,
                                   const VertexFunction& h, const std::string& x) {
    int xi = g.index_of(x);
    double fx = f.at(x), hx = h.at(x);
    double s = 0.0;
    for (int yi : g.neighbors(xi)) {
        const std::string& y = g.id_of(yi);
        s += (f.at(y) - fx) * (h.at(y) - hx);
    }
    return 0.5 * g.mu(xi) * s;
}

/// Breadth-first ball oracle (set of vertices within distance r).
inline std::set<std::string> bfs_ball_oracle(const Graph& g, const std::string& x, int r) {
    std::set<int> seen{g.index_of(x)};
    std::deque<std::pair<int, int>> queue{{g.index_of(x), 0}};
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == r) continue;
        for (int w : g.neighbors(v))
            if (seen.insert(w).second) queue.emplace_back(w, d + 1);
    }
    std::set<std::string> out;
    for (int i : seen) out.insert(g.id_of(i));
    return out;
}

/// Sampling + shrinking-step refinement of min_v (v^T A v)/(v^T B v).
/// Independent of the Jacobi/pencil code path.
inline double min_ratio_oracle(const gammacalc::Matrix& a, const gammacalc::Matrix& b,
                               std::mt19937_64& rng, int starts = 40) {
    const int n = a.n;
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    auto ratio = [&](const std::vector<double>& v) {
        double den = quad_form(b, v);
        if (den <= 1e-12) return std::numeric_limits<double>::infinity();
        return quad_form(a, v) / den;
    };
    for (int s = 0; s < starts; ++s) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& t : v) t = d(rng);
        double cur = ratio(v);
        double step = 0.5;
        while (step > 1e-9) {
            bool improved = false;
            for (int i = 0; i < n; ++i) {
                for (double dir : {step, -step}) {
                    auto w = v;
                    w[static_cast<std::size_t>(i)] += dir;
                    double r = ratio(w);
                    if (r < cur) {
                        cur = r;
                        v = w;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::min(best, cur);
    }
    return best;
}

/// Sampling + refinement of max_f (Delta f)^2(x) / Gamma_2(f)(x); the
/// brute-force route to n_min, independent of the eigenproblem path.
inline double nmin_sampling_oracle(const Graph& g, const std::string& x, std::mt19937_64& rng,
                                   int starts = 40) {
    const auto& verts = g.vertices();
    auto ratio = [&](const std::vector<double>& vals) {
        VertexFunction f;
        for (std::size_t i = 0; i < verts.size(); ++i) f.set(verts[i], vals[i]);
        double den = gammacalc::gamma2(g, f, x);
        if (den <= 1e-12) return -std::numeric_limits<double>::infinity();
        double lap = gammacalc::laplacian(g, f, x);
        return lap * lap / den;
    };
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double best = 0.0;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> v(verts.size());
        for (auto& t : v) t = d(rng);
        double cur = ratio(v);
        double step = 0.5;
        while (step > 1e-9) {
            bool improved = false;
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (double dir : {step, -step}) {
                    auto w = v;
                    w[i] += dir;
                    double r = ratio(w);
                    if (r > cur) {
                        cur = r;
                        v = w;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, cur);
    }
    return best;
}

}  // namespace testutil
