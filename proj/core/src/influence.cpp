#include "pcube/influence.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "pcube/detail/kahan.hpp"

namespace pcube {

NoiseParams::NoiseParams(double epsilon_, double p_) : epsilon(epsilon_), p(p_) {
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0)) {
        throw std::invalid_argument("NoiseParams: epsilon must lie in [0,1]");
    }
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("NoiseParams: p must lie in (0,1)");
    }
}

double influence(const CubeFunction& f, const BiasedMeasure& m, int i) {
    const int n = f.dimension();
    if (i < 1 || i > n) {
        throw std::out_of_range("influence: coordinate index out of range");
    }
    // Pairwise over (x, x xor e_i) orbits, weight mu(x_{-i}) per unordered pair.
    const auto w = weight_table(n - 1, m);
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    detail::KahanSum sum;
    const auto vals = f.values();
    for (std::uint64_t x = 0; x < vals.size(); ++x) {
        if (x & bit) continue;
        const double diff = std::abs(vals[x | bit] - vals[x]);
        if (diff != 0.0) {
            sum.add(w[std::popcount(x)] * diff);
        }
    }
    return sum.value();
}

InfluenceProfile influence_profile(const CubeFunction& f, const BiasedMeasure& m) {
    const int n = f.dimension();
    InfluenceProfile prof;
    prof.influence.resize(n);
    prof.normalized.resize(n);
    const double s = std::sqrt(m.p() * m.q());
    detail::KahanSum wsum;
    for (int i = 1; i <= n; ++i) {
        const double inf = influence(f, m, i);
        prof.influence[i - 1] = inf;
        prof.normalized[i - 1] = s * inf;
        wsum.add(prof.normalized[i - 1] * prof.normalized[i - 1]);
    }
    prof.w = wsum.value();
    return prof;
}

CubePoint noise_sample(const CubePoint& x, const NoiseParams& np, SplitMix64& rng) {
    std::uint64_t mask = x.mask;
    for (int i = 0; i < x.n; ++i) {
        const double v = rng.next_double();
        if (v < np.epsilon) {
            // Rerandomize: conditioned on v < epsilon, v/epsilon is uniform,
            // so v < epsilon*p is a fresh Bernoulli(p).
            const std::uint64_t bit = std::uint64_t{1} << i;
            if (v < np.epsilon * np.p) {
                mask |= bit;
            } else {
                mask &= ~bit;
            }
        }
    }
    return CubePoint(x.n, mask);
}

CubeFunction apply_noise_operator(const CubeFunction& f, const NoiseParams& np) {
    const int n = f.dimension();
    const double eps = np.epsilon;
    const double p = np.p;
    const double q = 1.0 - p;
    std::vector<double> v(f.values().begin(), f.values().end());
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t base = 0; base < v.size(); base += 2 * bit) {
            for (std::uint64_t j = base; j < base + bit; ++j) {
                const double a = v[j];
                const double b = v[j | bit];
                const double mean = q * a + p * b;
                v[j] = (1.0 - eps) * a + eps * mean;
                v[j | bit] = (1.0 - eps) * b + eps * mean;
            }
        }
    }
    return CubeFunction(n, std::move(v));
}

double noise_stability_spectral(const Spectrum& s, double epsilon) {
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0)) {
        throw std::invalid_argument("noise_stability_spectral: epsilon must lie in [0,1]");
    }
    const int n = s.dimension();
    std::vector<double> pow(static_cast<std::size_t>(n) + 1);
    pow[0] = 1.0;
    for (int k = 1; k <= n; ++k) pow[k] = pow[k - 1] * (1.0 - epsilon);
    detail::KahanSum sum;
    const auto c = s.coeffs();
    for (std::uint64_t t = 1; t < c.size(); ++t) {
        sum.add(pow[std::popcount(t)] * c[t] * c[t]);
    }
    return sum.value();
}

double noise_stability_operator(const CubeFunction& f, const NoiseParams& np) {
    const BiasedMeasure m(np.p);
    const CubeFunction tf = apply_noise_operator(f, np);
    const double mean = expectation(f, m);
    return inner_product(f, tf, m) - mean * mean;
}

double noise_stability_exact(const CubeFunction& f, const NoiseParams& np) {
    const double spectral = noise_stability_spectral(transform(f, BiasedMeasure(np.p)), np.epsilon);
    const double operator_based = noise_stability_operator(f, np);
    const double tol = 1e-10 * std::max(1.0, std::abs(spectral));
    if (std::abs(spectral - operator_based) > tol) {
        throw std::logic_error("noise_stability_exact: spectral and operator routes disagree");
    }
    return spectral;
}

Oracle table_oracle(const CubeFunction& f) {
    auto table = std::make_shared<CubeFunction>(f);
    return [table](const PointView& x) { return (*table)[x.mask()]; };
}

namespace {

constexpr std::uint64_t kMcBlock = 4096;

std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

void sample_point(std::vector<std::uint64_t>& words, int n, double p, SplitMix64& rng) {
    const std::size_t nw = words.size();
    for (std::size_t w = 0; w < nw; ++w) words[w] = 0;
    for (int i = 0; i < n; ++i) {
        if (rng.next_double() < p) {
            words[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
        }
    }
}

void sample_noisy_copy(const std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& y,
                       int n, const NoiseParams& np, SplitMix64& rng) {
    y = x;
    for (int i = 0; i < n; ++i) {
        const double v = rng.next_double();
        if (v < np.epsilon) {
            const std::size_t w = static_cast<std::size_t>(i) >> 6;
            const std::uint64_t bit = std::uint64_t{1} << (i & 63);
            if (v < np.epsilon * np.p) {
                y[w] |= bit;
            } else {
                y[w] &= ~bit;
            }
        }
    }
}

}  // namespace

McEstimate noise_stability_mc(const Oracle& f, int n, const NoiseParams& np,
                              std::uint64_t samples, std::uint64_t seed) {
    if (samples < 2) {
        throw std::invalid_argument("noise_stability_mc: need at least 2 samples");
    }
    if (n < 1) {
        throw std::invalid_argument("noise_stability_mc: dimension must be positive");
    }
    std::vector<std::uint64_t> x(words_for(n)), y(words_for(n));
    const PointView xv(x, n), yv(y, n);

    // Two passes over the same deterministic sample stream: means first, then
    // the centered products. Blocks are reseeded via split_stream, so both
    // passes see identical points.
    detail::KahanSum sa, sb;
    for (std::uint64_t done = 0, block = 0; done < samples; ++block) {
        SplitMix64 rng(split_stream(seed, block));
        const std::uint64_t count = std::min(kMcBlock, samples - done);
        for (std::uint64_t k = 0; k < count; ++k) {
            sample_point(x, n, np.p, rng);
            sample_noisy_copy(x, y, n, np, rng);
            sa.add(f(xv));
            sb.add(f(yv));
        }
        done += count;
    }
    const double ma = sa.value() / static_cast<double>(samples);
    const double mb = sb.value() / static_cast<double>(samples);

    detail::KahanSum su, suu;
    for (std::uint64_t done = 0, block = 0; done < samples; ++block) {
        SplitMix64 rng(split_stream(seed, block));
        const std::uint64_t count = std::min(kMcBlock, samples - done);
        for (std::uint64_t k = 0; k < count; ++k) {
            sample_point(x, n, np.p, rng);
            sample_noisy_copy(x, y, n, np, rng);
            const double u = (f(xv) - ma) * (f(yv) - mb);
            su.add(u);
            suu.add(u * u);
        }
        done += count;
    }
    const double msamples = static_cast<double>(samples);
    McEstimate est;
    est.value = su.value() / (msamples - 1.0);
    const double var_u = std::max(0.0, (suu.value() - su.value() * su.value() / msamples) / (msamples - 1.0));
    est.std_error = std::sqrt(var_u / msamples);
    est.samples = samples;
    est.seed = seed;
    return est;
}

McEstimate influence_mc(const Oracle& f, int n, const BiasedMeasure& m, int i,
                        std::uint64_t samples, std::uint64_t seed) {
    if (samples < 2) {
        throw std::invalid_argument("influence_mc: need at least 2 samples");
    }
    if (i < 1 || i > n) {
        throw std::out_of_range("influence_mc: coordinate index out of range");
    }
    std::vector<std::uint64_t> x(words_for(n));
    const PointView xv(x, n);
    const std::size_t w = static_cast<std::size_t>(i - 1) >> 6;
    const std::uint64_t bit = std::uint64_t{1} << ((i - 1) & 63);

    detail::KahanSum sz, szz;
    for (std::uint64_t done = 0, block = 0; done < samples; ++block) {
        SplitMix64 rng(split_stream(seed, block));
        const std::uint64_t count = std::min(kMcBlock, samples - done);
        for (std::uint64_t k = 0; k < count; ++k) {
            sample_point(x, n, m.p(), rng);
            x[w] &= ~bit;
            const double f0 = f(xv);
            x[w] |= bit;
            const double f1 = f(xv);
            const double z = std::abs(f1 - f0);
            sz.add(z);
            szz.add(z * z);
        }
        done += count;
    }
    const double msamples = static_cast<double>(samples);
    McEstimate est;
    est.value = sz.value() / msamples;
    const double var_z = std::max(0.0, (szz.value() - sz.value() * sz.value() / msamples) / (msamples - 1.0));
    est.std_error = std::sqrt(var_z / msamples);
    est.samples = samples;
    est.seed = seed;
    return est;
}

}
