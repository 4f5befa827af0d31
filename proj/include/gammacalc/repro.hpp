#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gammacalc/conditions.hpp"
#include "gammacalc/counterexample.hpp"
#include "gammacalc/graph.hpp"
#include "gammacalc/search.hpp"

namespace gammacalc {

struct ReproRow {
    double y = 0.0;
    double lhs = 0.0;         // Gamma_2 - Gamma(f, Gamma(f)/f) at x, closed form
    double rhs = 0.0;         // (1/n)(ln y)^2 with f(x)=1
    double gap = 0.0;
    bool applicable = false;  // Delta f(x) = y - 1 < 0
};

/// End-to-end record for the path-graph counterexample: CD(0,2) is exactly
/// tight at x while CDE'(0,2) fails there, witnessed by f = (1, 0.1, 0.01).
struct ReproReport {
    double n = 2.0;
    double n_min_x = 0.0;
    double k_max_x = 0.0;            // at n = 2
    double cd_extremal_slack = 0.0;  // cd_check at f=(1,2,3), K=0, n=2
    double gap_at_y01 = 0.0;
    std::vector<ReproRow> table;
    HAnalysis h;
    double q_max_mismatch = 0.0;       // max |direct - factored| / max(1,|direct|)
    double q_max_on_unit_interval = 0.0;  // max of direct Q over sampled y in (0,1)
    double closed_form_max_mismatch = 0.0;  // closed LHS vs direct operators
    std::vector<std::string> failed_checks;
    std::string conclusion;
    bool passed() const { return failed_checks.empty(); }
};

/// Runs every embedded consistency check and assembles the report.
/// The y grid and check tolerances are fixed; a failed check lands in
/// failed_checks by name rather than throwing.
inline ReproReport repro_report() {
    ReproReport rep;
    const Graph g = eg_graph();
    const double n = rep.n;

    CurvatureResult nm = cd_nmin(g, "x");
    rep.n_min_x = (nm.n_min_kind == NMinKind::finite) ? nm.n_min
                                                      : std::numeric_limits<double>::quiet_NaN();
    if (!(nm.n_min_kind == NMinKind::finite && std::abs(nm.n_min - 2.0) <= 1e-9))
        rep.failed_checks.push_back("n_min(x) = 2 within 1e-9");

    CurvatureResult km = cd_kmax(g, "x", n);
    rep.k_max_x = (km.k_max_kind == KMaxKind::finite) ? km.k_max
                                                      : -std::numeric_limits<double>::infinity();
    if (!(km.k_max_kind == KMaxKind::finite && std::abs(km.k_max) <= 1e-9))
        rep.failed_checks.push_back("k_max(x, n=2) = 0 within 1e-9");

    VertexFunction extremal;
    extremal.set("x", 1.0);
    extremal.set("y", 2.0);
    extremal.set("z", 3.0);
    rep.cd_extremal_slack = cd_check(g, "x", 0.0, n, extremal).slack;
    if (!(std::abs(rep.cd_extremal_slack) <= 1e-12))
        rep.failed_checks.push_back("CD(0,2) slack at f=(1,2,3) = 0 within 1e-12");

    // Closed-form fidelity of the family reduction against the operators.
    for (int i = 1; i <= 400; ++i) {
        double y = 0.025 * i;  // (0, 10]
        VertexFunction f = eg_family_function(y);
        SlackReport s = cde_prime_slack(g, "x", 0.0, n, f);
        double direct = s.gamma2_value - s.gamma_correction;
        double closed = eg_lhs_closed(y);
        double mism = std::abs(direct - closed) / std::max(1.0, std::abs(closed));
        rep.closed_form_max_mismatch = std::max(rep.closed_form_max_mismatch, mism);
    }
    if (!(rep.closed_form_max_mismatch <= 1e-11))
        rep.failed_checks.push_back("closed-form LHS matches operators within 1e-11");

    for (double y : {0.05, 0.1, 0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0}) {
        ReproRow row;
        row.y = y;
        row.lhs = eg_lhs_closed(y);
        double l = std::log(y);
        row.rhs = l * l / n;
        row.gap = row.lhs - row.rhs;
        row.applicable = y < 1.0;
        rep.table.push_back(row);
    }

    rep.gap_at_y01 = eg_inequality_gap(0.1, n);
    if (!(std::abs(rep.gap_at_y01 - (-1.425824)) <= 1e-6))
        rep.failed_checks.push_back("gap at y=0.1 = -1.425824 within 1e-6");
    if (!(rep.gap_at_y01 < 0.0))
        rep.failed_checks.push_back("CDE'(0,2) violated at y=0.1");
    {
        // The closed-form witness must agree with the full slack machinery.
        SlackReport s = cde_prime_slack(g, "x", 0.0, n, eg_family_function(0.1));
        if (!(s.applicable && std::abs(s.slack - rep.gap_at_y01) <= 1e-10))
            rep.failed_checks.push_back("witness slack reproducible through cde_prime_slack");
    }

    rep.h = h_analysis();
    if (!rep.h.certified)
        rep.failed_checks.push_back("h(1)=0, h'(1)=0, h''>=0 and h>=0 on (1, y_max]");
    bool positive_branch = true;
    for (double y : {1.1, 1.5, 2.0, 5.0, 10.0})
        positive_branch = positive_branch && eg_inequality_gap(y, n) > 0.0;
    if (!positive_branch) rep.failed_checks.push_back("gap > 0 on grid y in {1.1,1.5,2,5,10}");

    rep.q_max_on_unit_interval = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 400; ++i) {
        double y = 0.025 * i;
        QFactorCheck q = q_poly_factor_check(y);
        double mism = std::abs(q.direct - q.factored) / std::max(1.0, std::abs(q.direct));
        rep.q_max_mismatch = std::max(rep.q_max_mismatch, mism);
        if (y < 1.0) rep.q_max_on_unit_interval = std::max(rep.q_max_on_unit_interval, q.direct);
    }
    if (!(rep.q_max_mismatch <= 1e-10))
        rep.failed_checks.push_back("Q(y) factorization identity within 1e-10");
    if (!(rep.q_max_on_unit_interval < 0.0))
        rep.failed_checks.push_back("Q(y) < 0 on sampled y in (0,1)");

    rep.conclusion = "CD(0,2) holds at x; CDE'(0,2) fails at x (witness f = (1, 0.1, 0.01))";
    return rep;
}

}  // namespace gammacalc
