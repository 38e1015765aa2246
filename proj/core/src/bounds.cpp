#include "pcube/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pcube/quadrature.hpp"

namespace pcube {

namespace {

constexpr double kE = 2.718281828459045235360287;

void require_p(double p, const char* who) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument(std::string(who) + ": p must lie in (0,1)");
    }
}

// Second-order series in u = 1 - 2p around the removable singularity:
// B = 1 + (2/3) u^2 + O(u^4); at |u| < 2e-7 the next term is below 1e-27.
bool near_half(double p, double& series) {
    const double u = 1.0 - 2.0 * p;
    if (std::abs(u) < 2e-7) {
        series = 1.0 + (2.0 / 3.0) * u * u;
        return true;
    }
    return false;
}

}  // namespace

namespace detail {

double bp_ratio_form(double p) {
    require_p(p, "bp_ratio_form");
    double series;
    if (near_half(p, series)) return series;
    const double q = 1.0 - p;
    return (q / p - p / q) / (2.0 * std::log(q / p));
}

double bp_product_form(double p) {
    require_p(p, "bp_product_form");
    double series;
    if (near_half(p, series)) return series;
    const double q = 1.0 - p;
    return (q - p) / (2.0 * p * q * (std::log(q) - std::log(p)));
}

}  // namespace detail

double hypercontractivity_constant(double p) {
    require_p(p, "hypercontractivity_constant");
    // Reduce to p <= 1/2 first so that B(p) and B(1-p) evaluate identically.
    if (p > 0.5) p = 1.0 - p;
    double series;
    if (near_half(p, series)) return series;
    return detail::bp_product_form(p);
}

BoundResult tail_bound(int d, double p, double t) {
    if (d < 1) throw std::invalid_argument("tail_bound: degree must be at least 1");
    require_p(p, "tail_bound");
    const double b = hypercontractivity_constant(p);
    const double threshold = std::pow(2.0 * b * kE, d / 2.0);
    BoundResult r;
    r.value = std::exp(-(d / (2.0 * b * kE)) * std::pow(t, 2.0 / d));
    r.hypothesis_met = t >= threshold;
    if (!r.hypothesis_met) {
        r.hypothesis_detail = "t below (2B(p)e)^(d/2)";
    }
    return r;
}

BoundResult level_weight_bound(int d, double p, double w) {
    if (d < 2) throw std::invalid_argument("level_weight_bound: degree must be at least 2");
    require_p(p, "level_weight_bound");
    if (!(w >= 0.0)) throw std::invalid_argument("level_weight_bound: W must be nonnegative");
    BoundResult r;
    if (w == 0.0) {
        r.value = 0.0;
        r.hypothesis_met = true;
        r.trivial = true;
        return r;
    }
    r.hypothesis_met = w <= std::exp(-2.0 * (d - 1));
    if (!r.hypothesis_met) r.hypothesis_detail = "W above exp(-2(d-1))";
    const double b = hypercontractivity_constant(p);
    if (w < d) {
        r.value = (5.0 * kE / d) * std::pow(2.0 * b * kE / (d - 1), d - 1) * w *
                  std::pow(std::log(d / w), d - 1);
    } else {
        r.value = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

double alpha(double epsilon, double p) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("alpha: epsilon must be nonnegative");
    require_p(p, "alpha");
    const double lb = std::log(2.0 * hypercontractivity_constant(p) * kE);
    return 1.0 / (epsilon + lb + 3.0 * std::log(lb));
}

BoundResult stability_bound(double epsilon, double p, double w, bool uniform_variant) {
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0)) {
        throw std::invalid_argument("stability_bound: epsilon must lie in [0,1]");
    }
    require_p(p, "stability_bound");
    if (!(w >= 0.0)) throw std::invalid_argument("stability_bound: W must be nonnegative");
    if (uniform_variant && p != 0.5) {
        throw std::invalid_argument("stability_bound: the uniform variant requires p = 1/2");
    }
    BoundResult r;
    r.hypothesis_met = true;
    if (w == 0.0) {
        r.value = 0.0;
        r.trivial = true;
        return r;
    }
    if (uniform_variant) {
        r.value = 20.0 * std::pow(w, 0.234 * epsilon);
    } else {
        r.value = (6.0 * kE + 1.0) * std::pow(w, alpha(epsilon, p) * epsilon);
    }
    return r;
}

IntegralCheck integral_bound_check(int d, double p, double t0) {
    if (d < 2) throw std::invalid_argument("integral_bound_check: degree must be at least 2");
    require_p(p, "integral_bound_check");
    if (!(t0 > 0.0)) throw std::invalid_argument("integral_bound_check: t0 must be positive");
    const double b = hypercontractivity_constant(p);
    const double c = (d - 1) / (2.0 * b * kE);
    const double expo = 2.0 / (d - 1);
    IntegralCheck r;
    r.hypothesis_met = t0 > std::pow(4.0 * b * kE, (d - 1) / 2.0);
    r.rhs = 5.0 * b * kE * std::pow(t0, 3.0 - expo) * std::exp(-c * std::pow(t0, expo));
    const auto integrand = [c, expo](double t) { return t * t * std::exp(-c * std::pow(t, expo)); };
    const auto q = integrate_decaying_tail(integrand, t0, 1e-8);
    if (!q.converged) {
        throw std::runtime_error("integral_bound_check: quadrature did not converge");
    }
    r.lhs = q.value;
    return r;
}

BoundResult decoupled_bound(int d, double p, double s) {
    if (d < 2) throw std::invalid_argument("decoupled_bound: degree must be at least 2");
    require_p(p, "decoupled_bound");
    if (!(s >= 0.0)) throw std::invalid_argument("decoupled_bound: S must be nonnegative");
    BoundResult r;
    if (s == 0.0) {
        r.value = 0.0;
        r.hypothesis_met = true;
        r.trivial = true;
        return r;
    }
    r.hypothesis_met = s <= std::exp(-2.0 * (d - 1));
    if (!r.hypothesis_met) r.hypothesis_detail = "sum of influence products above exp(-2(d-1))";
    const double b = hypercontractivity_constant(p);
    if (s < d) {
        r.value = (70.0 * kE / d) * std::pow(4.0 * b * kE / (d - 1), d - 1) * s *
                  std::pow(std::log(d / s), d - 1);
    } else {
        r.value = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}
