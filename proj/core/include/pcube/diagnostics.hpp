#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

#include "pcube/bounds.hpp"
#include "pcube/cube.hpp"
#include "pcube/fourier.hpp"
#include "pcube/influence.hpp"

namespace pcube {

// A disjoint split {I, J} of the n coordinates, as bitmasks.
struct Partition {
    Partition(int n, std::uint64_t i_mask, std::uint64_t j_mask);
    static Partition from_j(int n, std::uint64_t j_mask);

    int n;
    std::uint64_t i_mask;
    std::uint64_t j_mask;
};

// One inequality check. `passed` is true iff the hypothesis failed (nothing
// asserted) or lhs <= rhs * (1 + 1e-9), the floating-point guard used for
// all proven inequalities.
struct VerificationReport {
    std::string check;
    std::string function_id;
    double p = 0.0;
    double epsilon = std::numeric_limits<double>::quiet_NaN();  // NaN when not applicable
    int d = -1;                                                 // -1 when not applicable
    std::uint64_t seed = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool hypothesis_met = false;
    bool passed = false;
    double slack = 0.0;  // rhs - lhs
};

inline constexpr double kCheckSlackTolerance = 1e-9;

// Fills passed/slack from lhs, rhs and the hypothesis flag.
VerificationReport make_report(std::string check, std::string function_id, double p,
                               double epsilon, int d, std::uint64_t seed, double lhs,
                               double rhs, bool hypothesis_met);

// Sum of squared coefficients over subsets with exactly d-1 elements in I and
// exactly one in J.
double partition_level_sum(const CubeFunction& f, const BiasedMeasure& m,
                           const Partition& part, int d);
double partition_level_sum(const Spectrum& s, const Partition& part, int d);

// Per-partition right-hand side
//   5 (2 B(p) e/(d-1))^(d-1) * (sum_{j in J} I'_j^2) * (ln(1/sum))^(d-1),
// with the hypothesis sum_{j in J} I'_j^2 <= exp(-(d-1)) (the concavity range).
BoundResult partition_rhs(const CubeFunction& f, const BiasedMeasure& m,
                          const Partition& part, int d);

// Exceedance set: the j in J whose partition-restricted level sum strictly
// exceeds t * I'_j^2. Returned as a submask of j_mask. Shrinks as t grows;
// coordinates with zero influence are never members (strict comparison).
std::uint64_t exceedance_set(const CubeFunction& f, const BiasedMeasure& m,
                             const Partition& part, int d, double t);

// sum_{j in L_t} I'_j^2 against
// 5e (t/4)^(-1/(d-1)) B(p) exp(-((d-1)/(2 B(p) e)) (t/4)^(1/(d-1))),
// claimed for t >= 4 (4 B(p) e)^(d-1).
VerificationReport check_exceedance_lemma(const CubeFunction& f, const BiasedMeasure& m,
                                          const Partition& part, int d, double t);

// Decoupled exceedance: products of coefficients and influence pairs, bound
// 2 sqrt(5e) (t/4)^(-1/(2(d-1))) sqrt(B(p)) exp(-((d-1)/(4 B(p) e)) (t/4)^(1/(d-1))).
// Requires sum I'_j(f)^2 <= 1 and sum I'_j(g)^2 <= 1.
VerificationReport check_decoupled_exceedance(const CubeFunction& f, const CubeFunction& g,
                                              const BiasedMeasure& m, const Partition& part,
                                              int d, double t);

// Level-d weight against level_weight_bound(d, p, W(f)), end to end.
VerificationReport check_level_weight_lemma(const CubeFunction& f, const BiasedMeasure& m, int d);

// Exact noise stability against stability_bound; holds for every Boolean f.
VerificationReport check_stability_theorem(const CubeFunction& f, const BiasedMeasure& m,
                                           double epsilon, bool uniform_variant = false);

// Cross level-d inner product against decoupled_bound, with the
// sum-of-squares preconditions evaluated and reported.
VerificationReport check_decoupled_theorem(const CubeFunction& f, const CubeFunction& g,
                                           const BiasedMeasure& m, int d);

// Each coordinate goes to J independently with probability 1/d.
Partition random_partition(int n, int d, std::uint64_t seed);

// Report serialization: JSON lines and CSV, fixed column order, with the
// ISO-8601 timestamp and library version appended to every record.
std::string report_json_line(const VerificationReport& r, const std::string& timestamp);
std::string report_csv_header();
std::string report_csv_row(const VerificationReport& r, const std::string& timestamp);
std::string iso8601_utc_now();

}
