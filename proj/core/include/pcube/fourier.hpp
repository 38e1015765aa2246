#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pcube/cube.hpp"

namespace pcube {

// Biased Fourier-Walsh coefficients of a function, indexed by subset mask:
// coeffs[T] is the coefficient of the Walsh product over the coordinates in T.
// Bound to the bias p it was computed under.
class Spectrum {
public:
    Spectrum(int n, double p, std::vector<double> coeffs);

    int dimension() const { return n_; }
    double p() const { return p_; }
    double operator[](std::uint64_t t_mask) const { return coeffs_[t_mask]; }
    std::span<const double> coeffs() const { return coeffs_; }

private:
    int n_;
    double p_;
    std::vector<double> coeffs_;
};

// Value of the Walsh product over the subset T at the point x:
// each factor is sqrt((1-p)/p) where the coordinate is 1 and -sqrt(p/(1-p))
// where it is 0. The empty product is 1.
double walsh_value(std::uint64_t t_mask, const CubePoint& x, const BiasedMeasure& m);

// Forward transform via the in-place per-coordinate butterfly
// (a, b) -> ((1-p)a + pb, sqrt(p(1-p)) (b - a)), O(n 2^n).
Spectrum transform(const CubeFunction& f, const BiasedMeasure& m);

CubeFunction inverse_transform(const Spectrum& s);

// Spectral mass on level d: sum of squared coefficients over |T| = d.
double level_weight(const Spectrum& s, int d);

// All levels at once: entry d is level_weight(s, d).
std::vector<double> level_weights(const Spectrum& s);

// Largest |T| with |coeff(T)| > tol; 0 for (near-)constant functions.
int fourier_degree(const Spectrum& s, double tol = 1e-12);

// Sum over |S| = d of f_hat(S) g_hat(S). Requires matching dimension and bias.
double cross_level_inner(const Spectrum& f, const Spectrum& g, int d);

// Flat serialization: header (n, p), then 2^n coefficients in mask order.
void write_spectrum_csv(const Spectrum& s, std::ostream& out);
Spectrum read_spectrum_csv(std::istream& in);
void write_spectrum_binary(const Spectrum& s, std::ostream& out);
Spectrum read_spectrum_binary(std::istream& in);

}
