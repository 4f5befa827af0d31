#pragma once

// Discrete Gamma-calculus and Bakry-Emery curvature conditions on finite
// unweighted graphs, with the normalized measure mu_x = 1/d_x.

#include "gammacalc/graph.hpp"
#include "gammacalc/operators.hpp"
#include "gammacalc/linalg.hpp"
#include "gammacalc/local_forms.hpp"
#include "gammacalc/conditions.hpp"
#include "gammacalc/counterexample.hpp"
#include "gammacalc/search.hpp"
#include "gammacalc/repro.hpp"
#include "gammacalc/format.hpp"
