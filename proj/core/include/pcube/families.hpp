#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "pcube/cube.hpp"
#include "pcube/influence.hpp"

namespace pcube {

// Tribes over n coordinates with blocks of size r: tribe k covers coordinates
// k*r+1 .. (k+1)*r. The function is 1 iff some tribe is all ones.
struct TribesSpec {
    TribesSpec(int n, int r);

    int n;
    int r;
    int tribe_count() const { return n / r; }
};

// The real-valued balancing tribe size
//   r = (log n - log log n + log log(1/p)) / log(1/p),
// which is independent of the log base (the log log b terms cancel). Callers
// round and adjust divisibility themselves. Throws for n <= 2; for p > 1/e
// the log log(1/p) term is negative and is returned as-is.
double tribes_size_suggestion(int n, double p);

// Oracle form, valid for any n with r | n.
Oracle tribes_oracle(const TribesSpec& spec);

// Exact table; n must not exceed `cap`.
CubeFunction make_tribes(const TribesSpec& spec, int cap = kDefaultExactCap);

// E[f] = 1 - (1 - p^r)^(n/r).
double tribes_expectation(const TribesSpec& spec, double p);

// I_i(f) = p^(r-1) (1 - p^r)^((n/r)-1), identical for every coordinate.
double tribes_influence_closed_form(const TribesSpec& spec, double p);

// Same-tribe level-d coefficient: for i_1..i_d inside one tribe,
//   coeff = (-sqrt((1-p)/p))^d p^r (1 - p^r)^((n/r)-1),  1 <= d <= r.
double tribes_level_coefficient(const TribesSpec& spec, double p, int d);

CubeFunction dictator(int n, int i);
CubeFunction parity(int n, std::uint64_t s_mask);
CubeFunction majority(int n);  // n odd
CubeFunction or_function(int n);
CubeFunction and_function(int n);

// Each table entry is 1 with probability `density`, deterministically per seed.
CubeFunction random_boolean(int n, double density, std::uint64_t seed);

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Draws candidate functions (unions of random subcube terms) until one has
// W <= w_target under mu_p; throws GenerationError after a bounded number of
// attempts. Deterministic per seed.
CubeFunction random_low_influence(int n, double w_target, const BiasedMeasure& m,
                                  std::uint64_t seed);

// Oracle forms for the standard families, valid at any dimension.
Oracle dictator_oracle(int n, int i);
Oracle parity_oracle(int n, std::uint64_t s_mask);
Oracle majority_oracle(int n);
Oracle or_oracle(int n);
Oracle and_oracle(int n);

// Raw Boolean table packed LSB-first, two hex digits per byte.
std::string function_to_hex_bits(const CubeFunction& f);

// Corpus entry: name, parameters, seed, and (when a table is given) the
// hex-packed bits. Serialized JSON object.
std::string corpus_entry_json(const std::string& name,
                              const std::map<std::string, double>& params, std::uint64_t seed,
                              const CubeFunction* table);

}
