#pragma once

#include <string>

namespace pcube {

// A bound evaluation together with its hypothesis status. Bounds never
// silently pretend to hold outside their stated preconditions: `value` is
// meaningful only when hypothesis_met. `trivial` marks degenerate inputs
// (W = 0 or S = 0, i.e. constant functions) where the bound is 0 and the
// claim is vacuously true.
struct BoundResult {
    double value = 0.0;
    bool hypothesis_met = false;
    bool trivial = false;
    std::string hypothesis_detail;
};

// The hypercontractivity constant
//   B(p) = ((1-p)/p - p/(1-p)) / (2 ln((1-p)/p))
//        = ((1-p) - p) / (2 p (1-p) (ln(1-p) - ln p)),
// continuous through the removable singularity at p = 1/2 with B(1/2) = 1,
// and symmetric: B(p) = B(1-p) exactly as computed.
double hypercontractivity_constant(double p);

namespace detail {
// The two printed forms, evaluated verbatim (shared series branch near 1/2).
double bp_ratio_form(double p);
double bp_product_form(double p);
}

// Tail bound for functions of Fourier degree at most d with unit 2-norm:
// value = exp(-(d / (2 B(p) e)) t^(2/d)), valid for t >= (2 B(p) e)^(d/2).
BoundResult tail_bound(int d, double p, double t);

// Level-d weight bound: for W <= exp(-2(d-1)),
// value = (5e/d) (2 B(p) e / (d-1))^(d-1) W (ln(d/W))^(d-1).
BoundResult level_weight_bound(int d, double p, double w);

// alpha(epsilon) = 1 / (epsilon + ln(2 B(p) e) + 3 ln ln(2 B(p) e)).
double alpha(double epsilon, double p);

// Noise-stability bound: value = (6e+1) W^(alpha(eps) eps). The uniform
// variant (p = 1/2 only) uses the published constants 20 and 0.234 instead.
BoundResult stability_bound(double epsilon, double p, double w, bool uniform_variant = false);

struct IntegralCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool hypothesis_met = false;
};

// Tail-integral estimate: lhs is the quadrature value of
//   integral over [t0, inf) of t^2 exp(-((d-1)/(2 B(p) e)) t^(2/(d-1))) dt
// to relative error 1e-8, rhs the closed-form bound
//   5 B(p) e t0^(3 - 2/(d-1)) exp(-((d-1)/(2 B(p) e)) t0^(2/(d-1))),
// claimed whenever t0 > (4 B(p) e)^((d-1)/2).
IntegralCheck integral_bound_check(int d, double p, double t0);

// Decoupled two-function bound in terms of s = sum over j of I'_j(f) I'_j(g):
// for s <= exp(-2(d-1)),
// value = (70e/d) (4 B(p) e / (d-1))^(d-1) s (ln(d/s))^(d-1).
BoundResult decoupled_bound(int d, double p, double s);

}
