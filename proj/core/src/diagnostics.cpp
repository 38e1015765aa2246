#include "pcube/diagnostics.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pcube/detail/kahan.hpp"
#include "pcube/version.hpp"

namespace pcube {

namespace {

constexpr double kE = 2.718281828459045235360287;

std::uint64_t full_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Per-coordinate restricted level sums: out[j-1] accumulates coeff(S)^2 (or
// coeff_f * coeff_g) over S with |S| = d, S & J = {j}.
std::vector<double> restricted_sums(const Spectrum& sf, const Spectrum& sg,
                                    const Partition& part, int d) {
    std::vector<detail::KahanSum> acc(sf.dimension());
    const auto cf = sf.coeffs();
    const auto cg = sg.coeffs();
    for (std::uint64_t s = 0; s < cf.size(); ++s) {
        if (std::popcount(s) != d) continue;
        const std::uint64_t in_j = s & part.j_mask;
        if (std::popcount(in_j) != 1) continue;
        acc[std::countr_zero(in_j)].add(cf[s] * cg[s]);
    }
    std::vector<double> out(acc.size());
    for (std::size_t j = 0; j < acc.size(); ++j) out[j] = acc[j].value();
    return out;
}

}  // namespace

Partition::Partition(int n_, std::uint64_t i_mask_, std::uint64_t j_mask_)
    : n(n_), i_mask(i_mask_), j_mask(j_mask_) {
    if (n < 1 || n > kMaxPointDimension) {
        throw std::invalid_argument("Partition: dimension must be in 1..64");
    }
    if ((i_mask & j_mask) != 0) {
        throw std::invalid_argument("Partition: I and J must be disjoint");
    }
    if ((i_mask | j_mask) != full_mask(n)) {
        throw std::invalid_argument("Partition: I and J must cover all coordinates");
    }
}

Partition Partition::from_j(int n, std::uint64_t j_mask) {
    return Partition(n, full_mask(n) & ~j_mask, j_mask);
}

VerificationReport make_report(std::string check, std::string function_id, double p,
                               double epsilon, int d, std::uint64_t seed, double lhs,
                               double rhs, bool hypothesis_met) {
    VerificationReport r;
    r.check = std::move(check);
    r.function_id = std::move(function_id);
    r.p = p;
    r.epsilon = epsilon;
    r.d = d;
    r.seed = seed;
    r.lhs = lhs;
    r.rhs = rhs;
    r.hypothesis_met = hypothesis_met;
    r.slack = rhs - lhs;
    r.passed = !hypothesis_met || lhs <= rhs * (1.0 + kCheckSlackTolerance);
    return r;
}

double partition_level_sum(const Spectrum& s, const Partition& part, int d) {
    if (d < 2) throw std::invalid_argument("partition_level_sum: level must be at least 2");
    if (part.n != s.dimension()) {
        throw std::invalid_argument("partition_level_sum: partition dimension mismatch");
    }
    const auto sums = restricted_sums(s, s, part, d);
    detail::KahanSum total;
    for (double v : sums) total.add(v);
    return total.value();
}

double partition_level_sum(const CubeFunction& f, const BiasedMeasure& m,
                           const Partition& part, int d) {
    return partition_level_sum(transform(f, m), part, d);
}

BoundResult partition_rhs(const CubeFunction& f, const BiasedMeasure& m,
                          const Partition& part, int d) {
    if (d < 2) throw std::invalid_argument("partition_rhs: level must be at least 2");
    if (part.n != f.dimension()) {
        throw std::invalid_argument("partition_rhs: partition dimension mismatch");
    }
    const auto prof = influence_profile(f, m);
    detail::KahanSum acc;
    for (int j = 0; j < part.n; ++j) {
        if (part.j_mask & (std::uint64_t{1} << j)) {
            acc.add(prof.normalized[j] * prof.normalized[j]);
        }
    }
    const double sum_j = acc.value();
    BoundResult r;
    if (sum_j == 0.0) {
        r.value = 0.0;
        r.hypothesis_met = true;
        r.trivial = true;
        return r;
    }
    r.hypothesis_met = sum_j <= std::exp(-(d - 1.0));
    if (!r.hypothesis_met) r.hypothesis_detail = "sum over J of I'_j^2 above exp(-(d-1))";
    const double b = hypercontractivity_constant(m.p());
    r.value = 5.0 * std::pow(2.0 * b * kE / (d - 1), d - 1) * sum_j *
              std::pow(std::log(1.0 / sum_j), d - 1);
    return r;
}

std::uint64_t exceedance_set(const CubeFunction& f, const BiasedMeasure& m,
                             const Partition& part, int d, double t) {
    if (d < 2) throw std::invalid_argument("exceedance_set: level must be at least 2");
    if (!(t > 0.0)) throw std::invalid_argument("exceedance_set: t must be positive");
    const auto prof = influence_profile(f, m);
    const auto spectrum = transform(f, m);
    const auto sums = restricted_sums(spectrum, spectrum, part, d);
    std::uint64_t members = 0;
    for (int j = 0; j < part.n; ++j) {
        if (!(part.j_mask & (std::uint64_t{1} << j))) continue;
        const double ip = prof.normalized[j];
        if (sums[j] > t * ip * ip) members |= std::uint64_t{1} << j;
    }
    return members;
}

VerificationReport check_exceedance_lemma(const CubeFunction& f, const BiasedMeasure& m,
                                          const Partition& part, int d, double t) {
    if (d < 2) throw std::invalid_argument("check_exceedance_lemma: level must be at least 2");
    const auto prof = influence_profile(f, m);
    const auto spectrum = transform(f, m);
    const auto sums = restricted_sums(spectrum, spectrum, part, d);
    detail::KahanSum lhs;
    for (int j = 0; j < part.n; ++j) {
        if (!(part.j_mask & (std::uint64_t{1} << j))) continue;
        const double ip = prof.normalized[j];
        if (sums[j] > t * ip * ip) lhs.add(ip * ip);
    }
    const double b = hypercontractivity_constant(m.p());
    const bool hyp = t >= 4.0 * std::pow(4.0 * b * kE, d - 1);
    const double t4 = t / 4.0;
    const double rhs = 5.0 * kE * std::pow(t4, -1.0 / (d - 1)) * b *
                       std::exp(-((d - 1) / (2.0 * b * kE)) * std::pow(t4, 1.0 / (d - 1)));
    return make_report("exceedance-lemma", "", m.p(),
                       std::numeric_limits<double>::quiet_NaN(), d, 0, lhs.value(), rhs, hyp);
}

VerificationReport check_decoupled_exceedance(const CubeFunction& f, const CubeFunction& g,
                                              const BiasedMeasure& m, const Partition& part,
                                              int d, double t) {
    if (d < 2) throw std::invalid_argument("check_decoupled_exceedance: level must be at least 2");
    if (f.dimension() != g.dimension()) {
        throw std::invalid_argument("check_decoupled_exceedance: dimension mismatch");
    }
    const auto pf = influence_profile(f, m);
    const auto pg = influence_profile(g, m);
    const auto sums = restricted_sums(transform(f, m), transform(g, m), part, d);
    detail::KahanSum lhs;
    for (int j = 0; j < part.n; ++j) {
        if (!(part.j_mask & (std::uint64_t{1} << j))) continue;
        const double prod = pf.normalized[j] * pg.normalized[j];
        if (sums[j] > t * prod) lhs.add(prod);
    }
    const double b = hypercontractivity_constant(m.p());
    const bool hyp = pf.w <= 1.0 && pg.w <= 1.0 && t >= 4.0 * std::pow(4.0 * b * kE, d - 1);
    const double t4 = t / 4.0;
    const double rhs = 2.0 * std::sqrt(5.0 * kE) * std::pow(t4, -1.0 / (2.0 * (d - 1))) *
                       std::sqrt(b) *
                       std::exp(-((d - 1) / (4.0 * b * kE)) * std::pow(t4, 1.0 / (d - 1)));
    return make_report("decoupled-exceedance", "", m.p(),
                       std::numeric_limits<double>::quiet_NaN(), d, 0, lhs.value(), rhs, hyp);
}

VerificationReport check_level_weight_lemma(const CubeFunction& f, const BiasedMeasure& m, int d) {
    const auto prof = influence_profile(f, m);
    const double lhs = level_weight(transform(f, m), d);
    const auto bound = level_weight_bound(d, m.p(), prof.w);
    return make_report("level-weight-lemma", "", m.p(),
                       std::numeric_limits<double>::quiet_NaN(), d, 0, lhs, bound.value,
                       bound.hypothesis_met);
}

VerificationReport check_stability_theorem(const CubeFunction& f, const BiasedMeasure& m,
                                           double epsilon, bool uniform_variant) {
    const auto prof = influence_profile(f, m);
    const double lhs = noise_stability_exact(f, NoiseParams(epsilon, m.p()));
    const auto bound = stability_bound(epsilon, m.p(), prof.w, uniform_variant);
    return make_report(uniform_variant ? "stability-theorem-uniform" : "stability-theorem", "",
                       m.p(), epsilon, -1, 0, lhs, bound.value, bound.hypothesis_met);
}

VerificationReport check_decoupled_theorem(const CubeFunction& f, const CubeFunction& g,
                                           const BiasedMeasure& m, int d) {
    if (f.dimension() != g.dimension()) {
        throw std::invalid_argument("check_decoupled_theorem: dimension mismatch");
    }
    const auto pf = influence_profile(f, m);
    const auto pg = influence_profile(g, m);
    detail::KahanSum sacc;
    for (int j = 0; j < f.dimension(); ++j) {
        sacc.add(pf.normalized[j] * pg.normalized[j]);
    }
    const double s = sacc.value();
    const double lhs = cross_level_inner(transform(f, m), transform(g, m), d);
    const auto bound = decoupled_bound(d, m.p(), s);
    const bool hyp = bound.hypothesis_met && pf.w <= 1.0 && pg.w <= 1.0;
    return make_report("decoupled-theorem", "", m.p(),
                       std::numeric_limits<double>::quiet_NaN(), d, 0, lhs, bound.value, hyp);
}

Partition random_partition(int n, int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_partition: d must be at least 2");
    if (n < 1 || n > kMaxPointDimension) {
        throw std::invalid_argument("random_partition: dimension must be in 1..64");
    }
    SplitMix64 rng(seed);
    std::uint64_t j_mask = 0;
    const double prob = 1.0 / d;
    for (int i = 0; i < n; ++i) {
        if (rng.next_double() < prob) j_mask |= std::uint64_t{1} << i;
    }
    return Partition::from_j(n, j_mask);
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string report_json_line(const VerificationReport& r, const std::string& timestamp) {
    nlohmann::json j;
    j["check"] = r.check;
    j["function"] = r.function_id;
    j["p"] = r.p;
    if (std::isnan(r.epsilon)) {
        j["epsilon"] = nullptr;
    } else {
        j["epsilon"] = r.epsilon;
    }
    if (r.d < 0) {
        j["d"] = nullptr;
    } else {
        j["d"] = r.d;
    }
    j["seed"] = r.seed;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["hypothesis_met"] = r.hypothesis_met;
    j["passed"] = r.passed;
    j["slack"] = r.slack;
    j["timestamp"] = timestamp;
    j["version"] = kVersion;
    return j.dump();
}

std::string report_csv_header() {
    return "check,function,p,epsilon,d,seed,lhs,rhs,hypothesis_met,passed,slack,timestamp,version";
}

std::string report_csv_row(const VerificationReport& r, const std::string& timestamp) {
    char num[352];
    std::string eps;
    if (!std::isnan(r.epsilon)) {
        std::snprintf(num, sizeof num, "%.17g", r.epsilon);
        eps = num;
    }
    std::string dval;
    if (r.d >= 0) dval = std::to_string(r.d);
    std::snprintf(num, sizeof num, "%.17g,%s,%s,%llu,%.17g,%.17g,%d,%d,%.17g", r.p, eps.c_str(),
                  dval.c_str(), static_cast<unsigned long long>(r.seed), r.lhs, r.rhs,
                  r.hypothesis_met ? 1 : 0, r.passed ? 1 : 0, r.slack);
    return r.check + "," + r.function_id + "," + num + "," + timestamp + "," + kVersion;
}

}
