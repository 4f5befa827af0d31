#pragma once

#include <string>
#include <vector>

#include "gammacalc/graph.hpp"
#include "gammacalc/linalg.hpp"
#include "gammacalc/operators.hpp"

namespace gammacalc {

/// Matrix realization of the operators at a single vertex, over its closed
/// 2-ball: f^T q_gamma f = Gamma(f)(center), f^T q_gamma2 f = Gamma_2(f)(center),
/// ell^T f = Delta f(center). Values of f outside the 2-ball do not enter any
/// of the three functionals.
struct LocalForms {
    std::string center;
    std::vector<std::string> support;  // ball(center, 2); center first
    Matrix q_gamma;
    Matrix q_gamma2;
    std::vector<double> ell;
};

/// Assembles the forms by evaluating the bilinear operators on indicator
/// functions of the support, then symmetrizing.
inline LocalForms local_forms(const Graph& g, const std::string& x) {
    LocalForms lf;
    lf.center = x;
    lf.support = g.ball(x, 2);
    const int m = static_cast<int>(lf.support.size());
    lf.q_gamma = Matrix(m);
    lf.q_gamma2 = Matrix(m);
    lf.ell.assign(static_cast<std::size_t>(m), 0.0);

    std::vector<VertexFunction> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        VertexFunction e = VertexFunction::constant(g, 0.0);
        e.set(lf.support[static_cast<std::size_t>(i)], 1.0);
        basis[static_cast<std::size_t>(i)] = std::move(e);
    }
    for (int i = 0; i < m; ++i) {
        lf.ell[static_cast<std::size_t>(i)] = laplacian(g, basis[static_cast<std::size_t>(i)], x);
        for (int j = i; j < m; ++j) {
            double qg = gamma(g, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], x);
            double qg2 = gamma_iter(g, 2, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], x);
            lf.q_gamma(i, j) = qg;
            lf.q_gamma(j, i) = qg;
            lf.q_gamma2(i, j) = qg2;
            lf.q_gamma2(j, i) = qg2;
        }
    }
    return lf;
}

/// Restriction of a vertex function to the support vector of the forms.
inline std::vector<double> restrict_to_support(const LocalForms& lf, const VertexFunction& f) {
    std::vector<double> v(lf.support.size());
    for (std::size_t i = 0; i < lf.support.size(); ++i) v[i] = f.at(lf.support[i]);
    return v;
}

}  // namespace gammacalc
