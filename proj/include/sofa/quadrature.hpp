#pragma once

#include <vector>

#include "sofa/grid.hpp"

namespace sofa {

/// Composite Simpson over the node range [i0, i1] (3/8 rule absorbs an odd
/// remainder). 4th-order accurate on smooth data.
double integrate_node_range(const std::vector<double>& f, const UniformGrid& g,
                            std::size_t i0, std::size_t i1);

/// Integral of sampled f over an arbitrary [a, b] inside the grid: composite
/// Simpson on the interior whole-node range plus locally fitted cubics on the
/// partial end cells.
double integrate_samples(const std::vector<double>& f, const UniformGrid& g,
                         double a, double b);

/// Parametric area integral of y(alpha) x'(alpha) over [a, b], with x
/// differentiated by the grid's 4th-order stencils. Throws IntervalEmpty when
/// the grid has fewer than 5 nodes.
double parametric_area(const std::vector<double>& y, const std::vector<double>& x,
                       const UniformGrid& g, double a, double b);

} // namespace sofa
