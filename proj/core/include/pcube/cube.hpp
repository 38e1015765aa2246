#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pcube {

// Points of {0,1}^n are bitmasks: bit i-1 of the mask is coordinate i.
// This convention is used by every module; subset masks index Fourier
// coefficients the same way.

inline constexpr int kMaxPointDimension = 64;   // masks are one 64-bit word
inline constexpr int kMaxTableDimension = 30;   // hard limit for 2^n tables
inline constexpr int kDefaultExactCap = 24;     // default exact-mode cap

// The product measure mu_p: each coordinate is 1 with probability p.
class BiasedMeasure {
public:
    explicit BiasedMeasure(double p);

    double p() const { return p_; }
    double q() const { return 1.0 - p_; }

private:
    double p_;
};

struct CubePoint {
    CubePoint(int n, std::uint64_t mask);

    int n;
    std::uint64_t mask;
};

// A real-valued function on {0,1}^n stored as a dense 2^n table.
class CubeFunction {
public:
    CubeFunction(int n, std::vector<double> values);

    static CubeFunction constant(int n, double value);

    int dimension() const { return n_; }
    std::size_t size() const { return values_.size(); }
    bool is_boolean() const { return boolean_; }

    double operator[](std::uint64_t mask) const { return values_[mask]; }
    double at(std::uint64_t mask) const;
    std::span<const double> values() const { return values_; }

private:
    int n_;
    std::vector<double> values_;
    bool boolean_;
};

// mu_p({x}) = p^|x| (1-p)^(n-|x|).
double point_weight(const CubePoint& x, const BiasedMeasure& m);

// Weights by popcount, computed in log space so extreme (p, n) combinations
// do not underflow prematurely: w[k] = p^k (1-p)^(n-k), k = 0..n.
std::vector<double> weight_table(int n, const BiasedMeasure& m);

double expectation(const CubeFunction& f, const BiasedMeasure& m);

// <f,g> = E[fg]. Throws std::invalid_argument on dimension mismatch.
double inner_product(const CubeFunction& f, const CubeFunction& g, const BiasedMeasure& m);

// x with coordinate i toggled (i is 1-based). Involution.
CubePoint flip(const CubePoint& x, int i);

// The (n-1)-dimensional restriction with coordinate i pinned to `bit`.
CubeFunction fix_coordinate(const CubeFunction& f, int i, int bit);

}
