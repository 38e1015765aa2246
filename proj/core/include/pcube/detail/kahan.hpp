#pragma once

namespace pcube::detail {

// Compensated summation; keeps long reductions over 2^n tables well inside
// the 1e-10 tolerances used throughout.
class KahanSum {
public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}
