#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gammacalc/conditions.hpp"
#include "gammacalc/graph.hpp"

namespace gammacalc {

struct SearchConfig {
    int restarts = 64;
    int max_iterations = 500;  // Nelder-Mead iterations per restart
    std::uint64_t seed = 0;
    double log_range = 3.0;    // initial log-values drawn from [-log_range, log_range]
};

/// Best CDE' violation candidate found at one vertex. The witness is a total
/// positive function with f(vertex) = 1; slack is cde_prime_slack at it.
struct SearchOutcome {
    std::string vertex;
    bool found = false;  // some applicable point (Delta f < 0) was reached
    VertexFunction witness;
    double slack = std::numeric_limits<double>::infinity();
    int restarts = 0;
    long long evaluations = 0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Standard Nelder-Mead simplex descent; deterministic given the start.
/// Calls fn exactly through the supplied callable so the caller can count
/// evaluations and track feasible incumbents.
inline std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                       std::vector<double> start, double step, int max_iter) {
    const std::size_t dim = start.size();
    struct Point {
        std::vector<double> x;
        double f;
    };
    std::vector<Point> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back({start, fn(start)});
    for (std::size_t i = 0; i < dim; ++i) {
        auto x = start;
        x[i] += step;
        simplex.push_back({x, fn(x)});
    }
    auto by_value = [](const Point& a, const Point& b) { return a.f < b.f; };

    const double alpha = 1.0, gamma_e = 2.0, rho = 0.5, sigma = 0.5;
    for (int it = 0; it < max_iter; ++it) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        if (std::abs(simplex.back().f - simplex.front().f) <= 1e-13 * (1.0 + std::abs(simplex.front().f)))
            break;
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i].x[j];
        }
        for (auto& c : centroid) c /= static_cast<double>(dim);
        const Point& worst = simplex.back();

        auto blend = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (centroid[j] - worst.x[j]);
            return x;
        };
        auto reflected = blend(alpha);
        double fr = fn(reflected);
        if (fr < simplex.front().f) {
            auto expanded = blend(gamma_e);
            double fe = fn(expanded);
            simplex.back() = fe < fr ? Point{expanded, fe} : Point{reflected, fr};
            continue;
        }
        if (fr < simplex[dim - 1].f) {
            simplex.back() = {reflected, fr};
            continue;
        }
        auto contracted = blend(-rho);
        double fc = fn(contracted);
        if (fc < worst.f) {
            simplex.back() = {contracted, fc};
            continue;
        }
        for (std::size_t i = 1; i <= dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j)
                simplex[i].x[j] = simplex.front().x[j] + sigma * (simplex[i].x[j] - simplex.front().x[j]);
            simplex[i].f = fn(simplex[i].x);
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    return simplex.front().x;
}

}  // namespace detail

/// Multistart minimization of the CDE'(K,n) slack at x over positive
/// functions, parameterized in log-space on the 2-ball with f(x) = 1 (the
/// slack is invariant under positive scaling, so the normalization loses
/// nothing). Points with Delta f(x) >= 0 are pushed away by a penalty;
/// only applicable points become incumbents. Deterministic for a fixed seed;
/// restarts are independent, merged by minimal slack with the lowest restart
/// index winning ties.
inline SearchOutcome search_violation(const Graph& g, const std::string& x, double K, double n,
                                      const SearchConfig& cfg = {}) {
    detail::require_positive_n(n);
    if (cfg.restarts < 1) throw std::invalid_argument("search needs at least one restart");
    if (cfg.max_iterations < 1) throw std::invalid_argument("search needs at least one iteration");

    SearchOutcome out;
    out.vertex = x;
    out.restarts = cfg.restarts;
    out.seed = cfg.seed;

    const std::vector<std::string> support = g.ball(x, 2);
    const std::size_t dim = support.size() - 1;  // center pinned to f=1

    VertexFunction base = VertexFunction::constant(g, 1.0);
    auto make_function = [&](const std::vector<double>& theta) {
        VertexFunction f = base;
        for (std::size_t i = 0; i < dim; ++i) {
            double t = std::clamp(theta[i], -40.0, 40.0);
            f.set(support[i + 1], std::exp(t));
        }
        return f;
    };

    long long evals = 0;
    double best_slack = std::numeric_limits<double>::infinity();
    std::vector<double> best_theta;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        double restart_best = std::numeric_limits<double>::infinity();
        std::vector<double> restart_theta;
        auto objective = [&](const std::vector<double>& theta) {
            ++evals;
            VertexFunction f = make_function(theta);
            double lap = laplacian(g, f, x);
            if (!(lap < 0.0)) return 1e6 * (1.0 + lap);  // infeasible: steer toward Delta f < 0
            double s = cde_prime_slack(g, x, K, n, f).slack;
            if (s < restart_best) {
                restart_best = s;
                restart_theta = theta;
            }
            return s;
        };

        std::mt19937_64 rng(cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart + 1));
        std::uniform_real_distribution<double> uni(-cfg.log_range, cfg.log_range);
        std::vector<double> theta0(dim);
        for (auto& t : theta0) t = uni(rng);

        if (dim == 0) {
            objective(theta0);
        } else {
            detail::nelder_mead(objective, theta0, 0.5, cfg.max_iterations);
        }
        if (restart_best < best_slack) {
            best_slack = restart_best;
            best_theta = restart_theta;
        }
    }

    out.evaluations = evals;
    if (std::isfinite(best_slack)) {
        out.found = true;
        out.slack = best_slack;
        out.witness = make_function(best_theta);
    }
    return out;
}

}  // namespace gammacalc
