#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pcube/cube.hpp"
#include "pcube/fourier.hpp"
#include "pcube/rng.hpp"

namespace pcube {

// Epsilon-noise: each coordinate kept with probability 1-epsilon, otherwise
// redrawn from mu_p.
struct NoiseParams {
    NoiseParams(double epsilon, double p);

    double epsilon;
    double p;
};

struct InfluenceProfile {
    std::vector<double> influence;    // I_i, entry i-1 for coordinate i
    std::vector<double> normalized;   // I'_i = sqrt(p(1-p)) I_i
    double w = 0.0;                   // W = sum of I'_i^2 = p(1-p) sum I_i^2
};

// For Boolean f: Pr_{x ~ mu_p}[f(x) != f(x xor e_i)].
// For real-valued f: E over x_{-i} of |f(x, i<-0) - f(x, i<-1)|.
// The two coincide on Boolean functions.
double influence(const CubeFunction& f, const BiasedMeasure& m, int i);

InfluenceProfile influence_profile(const CubeFunction& f, const BiasedMeasure& m);

// One draw from the noise distribution around x (consumes one rng value per
// coordinate). Stationary for mu_p inputs.
CubePoint noise_sample(const CubePoint& x, const NoiseParams& np, SplitMix64& rng);

// Tf(x) = E over noisy y of f(y), exact per-coordinate averaging, O(n 2^n).
// Multiplies the coefficient at S by (1-epsilon)^|S| on the spectral side.
CubeFunction apply_noise_operator(const CubeFunction& f, const NoiseParams& np);

// Noise stability through the spectrum: sum over nonempty S of
// (1-epsilon)^|S| coeff(S)^2.
double noise_stability_spectral(const Spectrum& s, double epsilon);

// Noise stability as the covariance <f, Tf> - E[f]^2.
double noise_stability_operator(const CubeFunction& f, const NoiseParams& np);

// Runs both exact routes, requires them to agree within 1e-10, and returns
// the spectral value. The two paths are kept permanently as mutual oracles;
// disagreement throws std::logic_error.
double noise_stability_exact(const CubeFunction& f, const NoiseParams& np);

// --- Monte Carlo over oracle-backed functions (any n up to millions) ---

// Read-only view of an n-bit point packed into 64-bit words, little-endian:
// coordinate i (1-based) is bit (i-1) % 64 of word (i-1) / 64.
class PointView {
public:
    PointView(std::span<const std::uint64_t> words, int n) : words_(words), n_(n) {}

    int dimension() const { return n_; }
    bool coord(int i) const {
        return (words_[static_cast<std::size_t>(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
    }
    std::uint64_t word(std::size_t w) const { return words_[w]; }
    std::size_t word_count() const { return words_.size(); }
    // Whole point as one mask; valid for n <= 64.
    std::uint64_t mask() const { return words_[0]; }

private:
    std::span<const std::uint64_t> words_;
    int n_;
};

// Pure evaluator from an n-bit point to a real value.
using Oracle = std::function<double(const PointView&)>;

// Adapter for table-backed functions (n <= exact cap).
Oracle table_oracle(const CubeFunction& f);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Sample covariance of (f(x), f(y)) over i.i.d. pairs with x ~ mu_p and y a
// noisy copy of x. Deterministic for a fixed seed: the budget is split into
// fixed-size blocks with seeds derived via split_stream, so the estimate
// depends only on (samples, seed).
McEstimate noise_stability_mc(const Oracle& f, int n, const NoiseParams& np,
                              std::uint64_t samples, std::uint64_t seed);

// Empirical mean of |f(x, i<-0) - f(x, i<-1)| over x ~ mu_p; for Boolean f
// this is the frequency of f(x) != f(x xor e_i).
McEstimate influence_mc(const Oracle& f, int n, const BiasedMeasure& m, int i,
                        std::uint64_t samples, std::uint64_t seed);

}
