#include "pcube/families.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "pcube/rng.hpp"

namespace pcube {

TribesSpec::TribesSpec(int n_, int r_) : n(n_), r(r_) {
    if (n < 1 || r < 1) {
        throw std::invalid_argument("TribesSpec: n and r must be positive");
    }
    if (n % r != 0) {
        throw std::invalid_argument("TribesSpec: tribe size must divide the dimension");
    }
}

double tribes_size_suggestion(int n, double p) {
    if (n <= 2) {
        throw std::invalid_argument("tribes_size_suggestion: n must exceed 2 (log log n)");
    }
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("tribes_size_suggestion: p must lie in (0,1)");
    }
    const double ln_n = std::log(static_cast<double>(n));
    const double ln_inv_p = std::log(1.0 / p);
    return (ln_n - std::log(ln_n) + std::log(ln_inv_p)) / ln_inv_p;
}

Oracle tribes_oracle(const TribesSpec& spec) {
    // Precomputed (word, mask) pairs per tribe; a tribe fires when every
    // listed word matches its mask.
    struct Piece {
        std::size_t word;
        std::uint64_t mask;
    };
    std::vector<std::vector<Piece>> tribes(spec.tribe_count());
    for (int t = 0; t < spec.tribe_count(); ++t) {
        const int lo = t * spec.r;
        const int hi = lo + spec.r;
        for (int c = lo; c < hi;) {
            const std::size_t word = static_cast<std::size_t>(c) >> 6;
            const int in_word_lo = c & 63;
            const int span = std::min(hi - c, 64 - in_word_lo);
            std::uint64_t mask = span == 64 ? ~std::uint64_t{0}
                                            : ((std::uint64_t{1} << span) - 1) << in_word_lo;
            tribes[t].push_back({word, mask});
            c += span;
        }
    }
    return [tribes = std::move(tribes)](const PointView& x) {
        for (const auto& tribe : tribes) {
            bool all = true;
            for (const auto& piece : tribe) {
                if ((x.word(piece.word) & piece.mask) != piece.mask) {
                    all = false;
                    break;
                }
            }
            if (all) return 1.0;
        }
        return 0.0;
    };
}

CubeFunction make_tribes(const TribesSpec& spec, int cap) {
    if (spec.n > cap) {
        throw std::invalid_argument("make_tribes: dimension " + std::to_string(spec.n) +
                                    " exceeds the exact-mode cap " + std::to_string(cap));
    }
    const auto oracle = tribes_oracle(spec);
    std::vector<double> vals(std::size_t{1} << spec.n);
    for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
        vals[mask] = oracle(PointView({&mask, 1}, spec.n));
    }
    return CubeFunction(spec.n, std::move(vals));
}

double tribes_expectation(const TribesSpec& spec, double p) {
    return 1.0 - std::pow(1.0 - std::pow(p, spec.r), spec.tribe_count());
}

double tribes_influence_closed_form(const TribesSpec& spec, double p) {
    return std::pow(p, spec.r - 1) * std::pow(1.0 - std::pow(p, spec.r), spec.tribe_count() - 1);
}

double tribes_level_coefficient(const TribesSpec& spec, double p, int d) {
    if (d < 1 || d > spec.r) {
        throw std::invalid_argument("tribes_level_coefficient: level must lie in 1..r");
    }
    const double sign_factor = std::pow(-std::sqrt((1.0 - p) / p), d);
    return sign_factor * std::pow(p, spec.r) *
           std::pow(1.0 - std::pow(p, spec.r), spec.tribe_count() - 1);
}

namespace {

void require_table_dims(int n) {
    if (n < 1 || n > kMaxTableDimension) {
        throw std::invalid_argument("family table: dimension must be in 1..30");
    }
}

CubeFunction from_predicate(int n, const std::function<bool(std::uint64_t)>& pred) {
    std::vector<double> vals(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
        vals[mask] = pred(mask) ? 1.0 : 0.0;
    }
    return CubeFunction(n, std::move(vals));
}

}  // namespace

CubeFunction dictator(int n, int i) {
    require_table_dims(n);
    if (i < 1 || i > n) throw std::out_of_range("dictator: coordinate index out of range");
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    return from_predicate(n, [bit](std::uint64_t m) { return (m & bit) != 0; });
}

CubeFunction parity(int n, std::uint64_t s_mask) {
    require_table_dims(n);
    if ((s_mask >> n) != 0) throw std::invalid_argument("parity: subset mask out of range");
    return from_predicate(n, [s_mask](std::uint64_t m) { return std::popcount(m & s_mask) & 1; });
}

CubeFunction majority(int n) {
    require_table_dims(n);
    if (n % 2 == 0) throw std::invalid_argument("majority: dimension must be odd");
    const int half = (n + 1) / 2;
    return from_predicate(n, [half](std::uint64_t m) { return std::popcount(m) >= half; });
}

CubeFunction or_function(int n) {
    require_table_dims(n);
    return from_predicate(n, [](std::uint64_t m) { return m != 0; });
}

CubeFunction and_function(int n) {
    require_table_dims(n);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    return from_predicate(n, [full](std::uint64_t m) { return m == full; });
}

CubeFunction random_boolean(int n, double density, std::uint64_t seed) {
    require_table_dims(n);
    if (!(density >= 0.0) || !(density <= 1.0)) {
        throw std::invalid_argument("random_boolean: density must lie in [0,1]");
    }
    SplitMix64 rng(seed);
    std::vector<double> vals(std::size_t{1} << n);
    for (auto& v : vals) v = rng.bernoulli(density) ? 1.0 : 0.0;
    return CubeFunction(n, std::move(vals));
}

CubeFunction random_low_influence(int n, double w_target, const BiasedMeasure& m,
                                  std::uint64_t seed) {
    require_table_dims(n);
    if (!(w_target > 0.0)) {
        throw std::invalid_argument("random_low_influence: target must be positive");
    }
    constexpr int kMaxAttempts = 400;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        SplitMix64 rng(split_stream(seed, static_cast<std::uint64_t>(attempt)));
        // Union of a few random subcube terms; wide terms keep influences low.
        const int terms = 1 + static_cast<int>(rng.next() % 3);
        const int max_width = std::max(2, n - 1);
        std::vector<double> vals(std::size_t{1} << n, 0.0);
        for (int term = 0; term < terms; ++term) {
            const int width = 2 + static_cast<int>(rng.next() % (max_width - 1));
            std::uint64_t support = 0;
            while (std::popcount(support) < width) {
                support |= std::uint64_t{1} << (rng.next() % n);
            }
            const std::uint64_t pattern = rng.next() & support;
            for (std::uint64_t mask = 0; mask < vals.size(); ++mask) {
                if ((mask & support) == pattern) vals[mask] = 1.0;
            }
        }
        CubeFunction candidate(n, std::move(vals));
        if (influence_profile(candidate, m).w <= w_target) return candidate;
    }
    throw GenerationError("random_low_influence: no candidate reached W <= " +
                          std::to_string(w_target) + " after " + std::to_string(kMaxAttempts) +
                          " attempts");
}

Oracle dictator_oracle(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("dictator_oracle: coordinate index out of range");
    return [i](const PointView& x) { return x.coord(i) ? 1.0 : 0.0; };
}

Oracle parity_oracle(int n, std::uint64_t s_mask) {
    if (n < 64 && (s_mask >> n) != 0) {
        throw std::invalid_argument("parity_oracle: subset mask out of range");
    }
    return [s_mask](const PointView& x) {
        return (std::popcount(x.word(0) & s_mask) & 1) ? 1.0 : 0.0;
    };
}

Oracle majority_oracle(int n) {
    if (n % 2 == 0) throw std::invalid_argument("majority_oracle: dimension must be odd");
    const int half = (n + 1) / 2;
    return [half](const PointView& x) {
        int ones = 0;
        for (std::size_t w = 0; w < x.word_count(); ++w) ones += std::popcount(x.word(w));
        return ones >= half ? 1.0 : 0.0;
    };
}

Oracle or_oracle(int) {
    return [](const PointView& x) {
        for (std::size_t w = 0; w < x.word_count(); ++w) {
            if (x.word(w) != 0) return 1.0;
        }
        return 0.0;
    };
}

Oracle and_oracle(int n) {
    return [n](const PointView& x) {
        for (int i = 1; i <= n; ++i) {
            if (!x.coord(i)) return 0.0;
        }
        return 1.0;
    };
}

std::string function_to_hex_bits(const CubeFunction& f) {
    if (!f.is_boolean()) {
        throw std::invalid_argument("function_to_hex_bits: table must be Boolean");
    }
    static const char* digits = "0123456789abcdef";
    const std::size_t nbytes = (f.size() + 7) / 8;
    std::string hex(2 * nbytes, '0');
    for (std::uint64_t mask = 0; mask < f.size(); ++mask) {
        if (f[mask] == 1.0) {
            const std::size_t byte = mask >> 3;
            const int bit = mask & 7;
            const std::size_t pos = 2 * byte + (bit < 4 ? 1 : 0);
            const int shift = bit & 3;
            int value = hex[pos] <= '9' ? hex[pos] - '0' : hex[pos] - 'a' + 10;
            value |= 1 << shift;
            hex[pos] = digits[value];
        }
    }
    return hex;
}

std::string corpus_entry_json(const std::string& name,
                              const std::map<std::string, double>& params, std::uint64_t seed,
                              const CubeFunction* table) {
    nlohmann::json j;
    j["name"] = name;
    j["params"] = params;
    j["seed"] = seed;
    if (table != nullptr) {
        j["n"] = table->dimension();
        j["table_hex"] = function_to_hex_bits(*table);
    }
    return j.dump();
}

}
