#include "pcube/cube.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pcube/detail/kahan.hpp"

namespace pcube {

BiasedMeasure::BiasedMeasure(double p) : p_(p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("BiasedMeasure: p must lie in the open interval (0,1)");
    }
}

CubePoint::CubePoint(int n_, std::uint64_t mask_) : n(n_), mask(mask_) {
    if (n < 1 || n > kMaxPointDimension) {
        throw std::invalid_argument("CubePoint: dimension must be in 1..64");
    }
    if (n < 64 && (mask >> n) != 0) {
        throw std::invalid_argument("CubePoint: mask has bits above the dimension");
    }
}

CubeFunction::CubeFunction(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
    if (n_ < 0 || n_ > kMaxTableDimension) {
        throw std::invalid_argument("CubeFunction: dimension must be in 0..30");
    }
    if (values_.size() != (std::size_t{1} << n_)) {
        throw std::invalid_argument("CubeFunction: table must have exactly 2^n entries");
    }
    boolean_ = true;
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("CubeFunction: table values must be finite");
        }
        if (v != 0.0 && v != 1.0) boolean_ = false;
    }
}

CubeFunction CubeFunction::constant(int n, double value) {
    return CubeFunction(n, std::vector<double>(std::size_t{1} << n, value));
}

double CubeFunction::at(std::uint64_t mask) const {
    if (mask >= values_.size()) {
        throw std::out_of_range("CubeFunction: mask out of range");
    }
    return values_[mask];
}

std::vector<double> weight_table(int n, const BiasedMeasure& m) {
    const double lp = std::log(m.p());
    const double lq = std::log1p(-m.p());
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        w[k] = std::exp(k * lp + (n - k) * lq);
    }
    return w;
}

double point_weight(const CubePoint& x, const BiasedMeasure& m) {
    const int ones = std::popcount(x.mask);
    return std::exp(ones * std::log(m.p()) + (x.n - ones) * std::log1p(-m.p()));
}

double expectation(const CubeFunction& f, const BiasedMeasure& m) {
    const auto w = weight_table(f.dimension(), m);
    detail::KahanSum sum;
    const auto vals = f.values();
    for (std::uint64_t x = 0; x < vals.size(); ++x) {
        sum.add(w[std::popcount(x)] * vals[x]);
    }
    return sum.value();
}

double inner_product(const CubeFunction& f, const CubeFunction& g, const BiasedMeasure& m) {
    if (f.dimension() != g.dimension()) {
        throw std::invalid_argument("inner_product: incompatible operands (dimension mismatch)");
    }
    const auto w = weight_table(f.dimension(), m);
    detail::KahanSum sum;
    const auto fv = f.values();
    const auto gv = g.values();
    for (std::uint64_t x = 0; x < fv.size(); ++x) {
        sum.add(w[std::popcount(x)] * fv[x] * gv[x]);
    }
    return sum.value();
}

CubePoint flip(const CubePoint& x, int i) {
    if (i < 1 || i > x.n) {
        throw std::out_of_range("flip: coordinate index out of range");
    }
    return CubePoint(x.n, x.mask ^ (std::uint64_t{1} << (i - 1)));
}

CubeFunction fix_coordinate(const CubeFunction& f, int i, int bit) {
    const int n = f.dimension();
    if (i < 1 || i > n) {
        throw std::out_of_range("fix_coordinate: coordinate index out of range");
    }
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("fix_coordinate: pinned value must be 0 or 1");
    }
    const std::uint64_t low_mask = (std::uint64_t{1} << (i - 1)) - 1;
    std::vector<double> out(std::size_t{1} << (n - 1));
    for (std::uint64_t y = 0; y < out.size(); ++y) {
        const std::uint64_t low = y & low_mask;
        const std::uint64_t high = (y >> (i - 1)) << i;
        out[y] = f[high | (static_cast<std::uint64_t>(bit) << (i - 1)) | low];
    }
    return CubeFunction(n - 1, std::move(out));
}

}
