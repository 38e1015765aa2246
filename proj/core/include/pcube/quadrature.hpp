#pragma once

#include <functional>

namespace pcube {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b] to the given relative tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol);

// Integral over [a, infinity) of a nonnegative decaying integrand. The upper
// limit is found by doubling from a until f drops below `cutoff`; segments are
// integrated adaptively and summed.
QuadratureResult integrate_decaying_tail(const std::function<double(double)>& f,
                                         double a, double rel_tol, double cutoff = 1e-300);

}
