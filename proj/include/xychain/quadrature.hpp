#pragma once

#include <functional>

namespace xychain {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1]
// (Newton iteration on the Legendre polynomial).
void gauss_legendre(int n, double* nodes, double* weights);

// Adaptive Gauss-Legendre on [a,b]: a fixed-order rule per panel, panel count
// doubled until two successive refinements agree within abs_tol, returning the
// Richardson-extrapolated value. Throws QuadratureFailure past the panel cap.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_doublings = 14);

} // namespace xychain
