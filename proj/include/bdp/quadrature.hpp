#pragma once

#include <vector>

namespace bdp {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [0, 1], n >= 1. Nodes from Newton iteration on the
/// Legendre recurrence; accurate to machine precision for any practical n.
QuadratureRule gauss_legendre_01(int n);

}  // namespace bdp
