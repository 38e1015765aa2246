// Verification CLI: spectra, inequality check sweeps, tightness experiments,
// and seeded Monte Carlo estimates over the standard function families.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcube/bounds.hpp"
#include "pcube/cube.hpp"
#include "pcube/diagnostics.hpp"
#include "pcube/families.hpp"
#include "pcube/fourier.hpp"
#include "pcube/influence.hpp"
#include "pcube/version.hpp"

namespace {

using nlohmann::json;

constexpr double kE = 2.718281828459045235360287;
constexpr double kMosselODonnellExponent = 0.7213475204444817;  // log2(e)/2

const std::vector<std::string> kKnownFamilies = {
    "dictator", "parity", "majority", "or", "and",
    "tribes",   "random", "random-low-influence", "exhaustive"};

struct RunConfig {
    std::string command;
    std::string family = "tribes";
    std::vector<double> p_list{0.5};
    std::vector<double> eps_list{0.1};
    std::vector<int> d_list{2};
    int n = 8;
    int r = 0;
    std::uint64_t seed = 1;
    std::uint64_t samples = 0;  // 0 = per-command default
    std::string format;         // per-command default when empty
    std::string out;
    int cap = pcube::kDefaultExactCap;
    double tol = pcube::kCheckSlackTolerance;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw ConfigError("empty grid list: '" + csv + "'");
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw ConfigError("empty grid list: '" + csv + "'");
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt(v[i]);
    }
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

// Writes to --out when given, else to $PCUBE_OUT_DIR/<default_name>, else stdout.
class OutputSink {
public:
    OutputSink(const std::string& out, const std::string& default_name) {
        std::string path = out;
        if (path.empty()) {
            if (const char* dir = std::getenv("PCUBE_OUT_DIR")) {
                path = std::string(dir) + "/" + default_name;
            }
        }
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ConfigError("cannot open output file: " + path);
            path_ = path;
        }
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    const std::string& path() const { return path_; }
    bool is_file() const { return file_ != nullptr; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

void emit_header(std::ostream& os, const RunConfig& cfg, const std::string& format,
                 const std::string& timestamp) {
    if (format == "json") {
        json h;
        h["record"] = "header";
        h["command"] = cfg.command;
        h["family"] = cfg.family;
        h["n"] = cfg.n;
        h["r"] = cfg.r;
        h["p"] = cfg.p_list;
        h["eps"] = cfg.eps_list;
        h["d"] = cfg.d_list;
        h["seed"] = cfg.seed;
        h["samples"] = cfg.samples;
        h["cap"] = cfg.cap;
        h["tol"] = cfg.tol;
        h["version"] = pcube::kVersion;
        h["timestamp"] = timestamp;
        os << h.dump() << "\n";
    } else {
        os << "# command=" << cfg.command << "\n"
           << "# family=" << cfg.family << "\n"
           << "# n=" << cfg.n << "\n"
           << "# r=" << cfg.r << "\n"
           << "# p=" << join_doubles(cfg.p_list) << "\n"
           << "# eps=" << join_doubles(cfg.eps_list) << "\n"
           << "# d=" << join_ints(cfg.d_list) << "\n"
           << "# seed=" << cfg.seed << "\n"
           << "# samples=" << cfg.samples << "\n"
           << "# cap=" << cfg.cap << "\n"
           << "# tol=" << fmt(cfg.tol) << "\n"
           << "# version=" << pcube::kVersion << "\n"
           << "# timestamp=" << timestamp << "\n";
    }
}

void require_exact_mode(int n, int cap) {
    if (n > cap) {
        throw ConfigError("dimension n=" + std::to_string(n) +
                          " exceeds the exact-mode cap " + std::to_string(cap) +
                          " (raise it with --cap)");
    }
}

std::string unknown_family_message(const std::string& name) {
    std::string msg = "unknown family '" + name + "'; known families:";
    for (const auto& f : kKnownFamilies) msg += " " + f;
    return msg;
}

// Table-backed corpus for the exact commands. Entries carry comma-free ids.
struct CorpusEntry {
    std::string id;
    pcube::CubeFunction f;
};

std::vector<CorpusEntry> build_corpus(const RunConfig& cfg, const pcube::BiasedMeasure& m) {
    const int n = cfg.n;
    std::vector<CorpusEntry> corpus;
    if (cfg.family == "dictator") {
        require_exact_mode(n, cfg.cap);
        corpus.push_back({"dictator-n" + std::to_string(n), pcube::dictator(n, 1)});
    } else if (cfg.family == "parity") {
        require_exact_mode(n, cfg.cap);
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        corpus.push_back({"parity-n" + std::to_string(n), pcube::parity(n, full)});
    } else if (cfg.family == "majority") {
        require_exact_mode(n, cfg.cap);
        corpus.push_back({"majority-n" + std::to_string(n), pcube::majority(n)});
    } else if (cfg.family == "or") {
        require_exact_mode(n, cfg.cap);
        corpus.push_back({"or-n" + std::to_string(n), pcube::or_function(n)});
    } else if (cfg.family == "and") {
        require_exact_mode(n, cfg.cap);
        corpus.push_back({"and-n" + std::to_string(n), pcube::and_function(n)});
    } else if (cfg.family == "tribes") {
        require_exact_mode(n, cfg.cap);
        if (cfg.r < 1) throw ConfigError("tribes requires --r (tribe size dividing n)");
        pcube::TribesSpec spec(n, cfg.r);
        corpus.push_back({"tribes-n" + std::to_string(n) + "-r" + std::to_string(cfg.r),
                          pcube::make_tribes(spec, cfg.cap)});
    } else if (cfg.family == "random") {
        require_exact_mode(n, cfg.cap);
        const std::uint64_t count = cfg.samples ? cfg.samples : 100;
        for (std::uint64_t k = 0; k < count; ++k) {
            corpus.push_back({"random-n" + std::to_string(n) + "-k" + std::to_string(k),
                              pcube::random_boolean(n, 0.5, pcube::split_stream(cfg.seed, k))});
        }
    } else if (cfg.family == "random-low-influence") {
        require_exact_mode(n, cfg.cap);
        int dmax = 2;
        for (int d : cfg.d_list) dmax = std::max(dmax, d);
        const double target = std::exp(-2.0 * (dmax - 1));
        const std::uint64_t count = cfg.samples ? cfg.samples : 100;
        for (std::uint64_t k = 0; k < count; ++k) {
            corpus.push_back(
                {"lowinf-n" + std::to_string(n) + "-k" + std::to_string(k),
                 pcube::random_low_influence(n, target, m, pcube::split_stream(cfg.seed, k))});
        }
    } else if (cfg.family == "exhaustive") {
        if (n > 4) throw ConfigError("exhaustive sweeps are limited to n <= 4");
        const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
        for (std::uint64_t fi = 0; fi < total; ++fi) {
            std::vector<double> vals(std::size_t{1} << n);
            for (std::uint64_t x = 0; x < vals.size(); ++x) {
                vals[x] = (fi >> x) & 1 ? 1.0 : 0.0;
            }
            corpus.push_back({"exhaustive-n" + std::to_string(n) + "-f" + std::to_string(fi),
                              pcube::CubeFunction(n, std::move(vals))});
        }
    } else {
        throw ConfigError(unknown_family_message(cfg.family));
    }
    return corpus;
}

pcube::Oracle build_oracle(const RunConfig& cfg) {
    const int n = cfg.n;
    if (cfg.family == "dictator") return pcube::dictator_oracle(n, 1);
    if (cfg.family == "parity") {
        const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        return pcube::parity_oracle(n, full);
    }
    if (cfg.family == "majority") return pcube::majority_oracle(n);
    if (cfg.family == "or") return pcube::or_oracle(n);
    if (cfg.family == "and") return pcube::and_oracle(n);
    if (cfg.family == "tribes") {
        if (cfg.r < 1) throw ConfigError("tribes requires --r (tribe size dividing n)");
        return pcube::tribes_oracle(pcube::TribesSpec(n, cfg.r));
    }
    if (cfg.family == "random" || cfg.family == "random-low-influence" ||
        cfg.family == "exhaustive") {
        throw ConfigError("family '" + cfg.family + "' has no large-n oracle form");
    }
    throw ConfigError(unknown_family_message(cfg.family));
}

// --- spectrum ---

int cmd_spectrum(const RunConfig& cfg) {
    if (cfg.p_list.size() != 1) {
        throw ConfigError("spectrum expects a single --p value");
    }
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format != "csv" && format != "binary") {
        throw ConfigError("spectrum supports --format csv|binary");
    }
    const pcube::BiasedMeasure m(cfg.p_list[0]);
    auto corpus = build_corpus(cfg, m);
    if (corpus.size() != 1) {
        throw ConfigError("spectrum expects a single-function family");
    }
    const auto spectrum = pcube::transform(corpus[0].f, m);

    OutputSink sink(cfg.out, "spectrum." + format);
    if (format == "csv") {
        pcube::write_spectrum_csv(spectrum, sink.stream());
    } else {
        pcube::write_spectrum_binary(spectrum, sink.stream());
    }

    const auto levels = pcube::level_weights(spectrum);
    const std::string levels_path =
        sink.is_file() ? sink.path() + ".levels.csv" : std::string();
    std::ofstream levels_file;
    std::ostream* levels_out = &std::cout;
    if (!levels_path.empty()) {
        levels_file.open(levels_path);
        if (!levels_file) throw ConfigError("cannot open output file: " + levels_path);
        levels_out = &levels_file;
    } else {
        std::cout << "# level-weights\n";
    }
    *levels_out << "d,level_weight\n";
    for (std::size_t d = 0; d < levels.size(); ++d) {
        *levels_out << d << "," << fmt(levels[d]) << "\n";
    }
    return 0;
}

// --- check ---

int cmd_check(const RunConfig& cfg) {
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format != "json" && format != "csv") {
        throw ConfigError("check supports --format json|csv");
    }
    for (int d : cfg.d_list) {
        if (d < 2) throw ConfigError("check requires levels d >= 2");
    }

    OutputSink sink(cfg.out, cfg.command + "_report." + (format == "json" ? "jsonl" : "csv"));
    std::ostream& os = sink.stream();
    const std::string timestamp = pcube::iso8601_utc_now();
    emit_header(os, cfg, format, timestamp);
    if (format == "csv") os << pcube::report_csv_header() << "\n";

    bool any_failure = false;
    auto emit = [&](pcube::VerificationReport r, const std::string& id) {
        r.function_id = id;
        r.seed = cfg.seed;
        r.passed = !r.hypothesis_met || r.lhs <= r.rhs * (1.0 + cfg.tol);
        if (r.hypothesis_met && !r.passed) any_failure = true;
        if (format == "json") {
            os << pcube::report_json_line(r, timestamp) << "\n";
        } else {
            os << pcube::report_csv_row(r, timestamp) << "\n";
        }
    };

    for (double p : cfg.p_list) {
        const pcube::BiasedMeasure m(p);
        const auto corpus = build_corpus(cfg, m);
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            const auto& entry = corpus[k];
            for (int d : cfg.d_list) {
                emit(pcube::check_level_weight_lemma(entry.f, m, d), entry.id);
                const auto part = pcube::random_partition(cfg.n, d, cfg.seed);
                const double b = pcube::hypercontractivity_constant(p);
                const double t = 4.0 * std::pow(4.0 * b * kE, d - 1);
                emit(pcube::check_exceedance_lemma(entry.f, m, part, d, t), entry.id);
                const auto& mate = corpus[(k + 1) % corpus.size()];
                emit(pcube::check_decoupled_exceedance(entry.f, mate.f, m, part, d, t),
                     entry.id + "+" + mate.id);
                emit(pcube::check_decoupled_theorem(entry.f, mate.f, m, d),
                     entry.id + "+" + mate.id);
            }
            for (double eps : cfg.eps_list) {
                emit(pcube::check_stability_theorem(entry.f, m, eps), entry.id);
                if (p == 0.5) {
                    emit(pcube::check_stability_theorem(entry.f, m, eps, true), entry.id);
                }
            }
        }
        for (int d : cfg.d_list) {
            const double b = pcube::hypercontractivity_constant(p);
            const double t0 = 1.5 * std::pow(4.0 * b * kE, (d - 1) / 2.0);
            const auto ic = pcube::integral_bound_check(d, p, t0);
            emit(pcube::make_report("beckner-integral", "t0-1.5x-threshold", p,
                                    std::numeric_limits<double>::quiet_NaN(), d, cfg.seed,
                                    ic.lhs, ic.rhs, ic.hypothesis_met),
                 "t0-1.5x-threshold");
        }
    }
    return any_failure ? 1 : 0;
}

// --- tightness ---

struct TightnessRow {
    std::string id;
    int n = 0;
    int r = 0;
    double p = 0.0;
    int d = 0;
    double eps = 0.0;
    double expectation = 0.0;
    double w = 0.0;
    double level_weight_d = 0.0;
    double eq29_rhs = 0.0;
    double rhs_over_lhs = 0.0;
    bool lemma_hypothesis = false;
    double s_eps = 0.0;
    double stab_rhs = 0.0;
    double log_s = 0.0;
    double alpha_eps_log_w = 0.0;
    double exponent_empirical = 0.0;
    double exponent_bound = 0.0;
    bool restriction_ok = false;
    bool degenerate = false;
    bool passed = true;
};

int cmd_tightness(const RunConfig& cfg) {
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format != "json" && format != "csv") {
        throw ConfigError("tightness supports --format json|csv");
    }
    OutputSink sink(cfg.out, "tightness." + (format == "json" ? std::string("jsonl")
                                                              : std::string("csv")));
    std::ostream& os = sink.stream();
    const std::string timestamp = pcube::iso8601_utc_now();
    emit_header(os, cfg, format, timestamp);

    static const char* kColumns =
        "function,n,r,p,d,eps,expectation,w,level_weight_d,eq29_rhs,rhs_over_lhs,"
        "lemma_hypothesis,S_eps,stab_rhs,log_S,alpha_eps_log_W,exponent_empirical,"
        "exponent_bound,exponent_ref_mossel_odonnell,restriction_ok,degenerate,passed";
    if (format == "csv") os << kColumns << "\n";

    std::ostringstream plot;
    plot << "x,y,series\n";

    bool any_failure = false;
    for (double p : cfg.p_list) {
        const pcube::BiasedMeasure m(p);
        const auto corpus = build_corpus(cfg, m);
        for (const auto& entry : corpus) {
            const auto spectrum = pcube::transform(entry.f, m);
            const auto prof = pcube::influence_profile(entry.f, m);
            const double mean = pcube::expectation(entry.f, m);
            for (int d : cfg.d_list) {
                for (double eps : cfg.eps_list) {
                    TightnessRow row;
                    row.id = entry.id;
                    row.n = cfg.n;
                    row.r = cfg.r;
                    row.p = p;
                    row.d = d;
                    row.eps = eps;
                    row.expectation = mean;
                    row.w = prof.w;
                    row.level_weight_d = pcube::level_weight(spectrum, d);
                    const auto lemma = pcube::level_weight_bound(d, p, prof.w);
                    row.eq29_rhs = lemma.value;
                    row.lemma_hypothesis = lemma.hypothesis_met;
                    row.s_eps = pcube::noise_stability_spectral(spectrum, eps);
                    const auto stab = pcube::stability_bound(eps, p, prof.w);
                    row.stab_rhs = stab.value;
                    row.exponent_bound = pcube::alpha(eps, p) * eps;
                    row.degenerate = row.w <= 0.0 || row.w >= 1.0 || row.s_eps <= 0.0 ||
                                     row.level_weight_d <= 0.0;
                    if (!row.degenerate) {
                        row.rhs_over_lhs = row.eq29_rhs / row.level_weight_d;
                        row.log_s = std::log(row.s_eps);
                        row.alpha_eps_log_w = row.exponent_bound * std::log(row.w);
                        row.exponent_empirical = row.log_s / std::log(row.w);
                    }
                    if (cfg.family == "tribes" && cfg.r >= 1) {
                        const double ln_n = std::log(static_cast<double>(cfg.n));
                        const double limit =
                            std::min({1.0 / p, std::sqrt(static_cast<double>(cfg.r)),
                                      ln_n / std::log(ln_n)});
                        row.restriction_ok = d <= limit;
                    }
                    // Only the proven directions are asserted.
                    const bool lemma_ok = !row.lemma_hypothesis ||
                                          row.level_weight_d <= row.eq29_rhs * (1.0 + cfg.tol);
                    const bool stab_ok = row.s_eps <= row.stab_rhs * (1.0 + cfg.tol);
                    row.passed = lemma_ok && stab_ok;
                    if (!row.passed) any_failure = true;

                    if (format == "json") {
                        json j;
                        j["record"] = "tightness";
                        j["function"] = row.id;
                        j["n"] = row.n;
                        j["r"] = row.r;
                        j["p"] = row.p;
                        j["d"] = row.d;
                        j["eps"] = row.eps;
                        j["expectation"] = row.expectation;
                        j["w"] = row.w;
                        j["level_weight_d"] = row.level_weight_d;
                        j["eq29_rhs"] = row.eq29_rhs;
                        j["rhs_over_lhs"] = row.rhs_over_lhs;
                        j["lemma_hypothesis"] = row.lemma_hypothesis;
                        j["S_eps"] = row.s_eps;
                        j["stab_rhs"] = row.stab_rhs;
                        j["log_S"] = row.log_s;
                        j["alpha_eps_log_W"] = row.alpha_eps_log_w;
                        j["exponent_empirical"] = row.exponent_empirical;
                        j["exponent_bound"] = row.exponent_bound;
                        j["exponent_ref_mossel_odonnell"] = kMosselODonnellExponent;
                        j["restriction_ok"] = row.restriction_ok;
                        j["degenerate"] = row.degenerate;
                        j["passed"] = row.passed;
                        j["timestamp"] = timestamp;
                        j["version"] = pcube::kVersion;
                        os << j.dump() << "\n";
                    } else {
                        os << row.id << "," << row.n << "," << row.r << "," << fmt(row.p) << ","
                           << row.d << "," << fmt(row.eps) << "," << fmt(row.expectation) << ","
                           << fmt(row.w) << "," << fmt(row.level_weight_d) << ","
                           << fmt(row.eq29_rhs) << "," << fmt(row.rhs_over_lhs) << ","
                           << (row.lemma_hypothesis ? 1 : 0) << "," << fmt(row.s_eps) << ","
                           << fmt(row.stab_rhs) << "," << fmt(row.log_s) << ","
                           << fmt(row.alpha_eps_log_w) << "," << fmt(row.exponent_empirical)
                           << "," << fmt(row.exponent_bound) << ","
                           << fmt(kMosselODonnellExponent) << ","
                           << (row.restriction_ok ? 1 : 0) << "," << (row.degenerate ? 1 : 0)
                           << "," << (row.passed ? 1 : 0) << "\n";
                    }
                    plot << row.d << "," << fmt(row.rhs_over_lhs) << ",eq29-ratio-p" << fmt(p)
                         << "\n";
                    plot << fmt(row.eps) << "," << fmt(row.exponent_empirical)
                         << ",stability-exponent-p" << fmt(p) << "\n";
                }
            }
        }
    }

    if (sink.is_file()) {
        const std::string plot_path = sink.path() + ".plot.csv";
        std::ofstream pf(plot_path);
        if (!pf) throw ConfigError("cannot open output file: " + plot_path);
        pf << plot.str();
    } else {
        std::cout << "# plot-data\n" << plot.str();
    }
    return any_failure ? 1 : 0;
}

// --- estimate ---

int cmd_estimate(const RunConfig& cfg) {
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (format != "json" && format != "csv") {
        throw ConfigError("estimate supports --format json|csv");
    }
    const std::uint64_t samples = cfg.samples ? cfg.samples : 100000;
    if (samples < 2) throw ConfigError("estimate requires --samples >= 2");
    const auto oracle = build_oracle(cfg);

    OutputSink sink(cfg.out, "estimate." + (format == "json" ? std::string("jsonl")
                                                             : std::string("csv")));
    std::ostream& os = sink.stream();
    const std::string timestamp = pcube::iso8601_utc_now();
    emit_header(os, cfg, format, timestamp);
    if (format == "csv") {
        os << "kind,family,n,p,eps,samples,seed,estimate,std_error,timestamp,version\n";
    }

    for (double p : cfg.p_list) {
        for (double eps : cfg.eps_list) {
            const auto est = pcube::noise_stability_mc(oracle, cfg.n,
                                                       pcube::NoiseParams(eps, p), samples,
                                                       cfg.seed);
            if (format == "json") {
                json j;
                j["record"] = "estimate";
                j["kind"] = "noise_stability";
                j["family"] = cfg.family;
                j["n"] = cfg.n;
                j["p"] = p;
                j["eps"] = eps;
                j["samples"] = est.samples;
                j["seed"] = est.seed;
                j["estimate"] = est.value;
                j["std_error"] = est.std_error;
                j["timestamp"] = timestamp;
                j["version"] = pcube::kVersion;
                os << j.dump() << "\n";
            } else {
                os << "noise_stability," << cfg.family << "," << cfg.n << "," << fmt(p) << ","
                   << fmt(eps) << "," << est.samples << "," << est.seed << ","
                   << fmt(est.value) << "," << fmt(est.std_error) << "," << timestamp << ","
                   << pcube::kVersion << "\n";
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and sampled harmonic analysis on the p-biased cube"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value config file; flags override its values");

    RunConfig cfg;
    std::string p_csv, eps_csv, d_csv;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", p_csv, "Bias grid, comma separated");
        sub->add_option("--eps", eps_csv, "Noise grid, comma separated");
        sub->add_option("--d", d_csv, "Level grid, comma separated");
        sub->add_option("--n", cfg.n, "Dimension");
        sub->add_option("--family", cfg.family, "Function family");
        sub->add_option("--r", cfg.r, "Tribe size (tribes family)");
        sub->add_option("--seed", cfg.seed, "Master seed (no wall-clock seeding)");
        sub->add_option("--samples", cfg.samples, "Sample budget / corpus size");
        sub->add_option("--format", cfg.format, "Output format");
        sub->add_option("--out", cfg.out, "Output path (default $PCUBE_OUT_DIR or stdout)");
        sub->add_option("--cap", cfg.cap, "Exact-mode dimension cap");
        sub->add_option("--tol", cfg.tol, "Slack tolerance for inequality checks");
    };

    add_common(app.add_subcommand("spectrum", "Transform a family member and dump its spectrum"));
    add_common(app.add_subcommand("check", "Run inequality checks over a parameter grid"));
    add_common(app.add_subcommand("tightness", "Tightness ratio tables and plot data"));
    add_common(app.add_subcommand("estimate", "Seeded Monte Carlo estimates"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!p_csv.empty()) cfg.p_list = parse_doubles(p_csv);
        if (!eps_csv.empty()) cfg.eps_list = parse_doubles(eps_csv);
        if (!d_csv.empty()) cfg.d_list = parse_ints(d_csv);
        if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
        for (double p : cfg.p_list) {
            if (!(p > 0.0) || !(p < 1.0)) throw ConfigError("--p values must lie in (0,1)");
        }
        for (double eps : cfg.eps_list) {
            if (!(eps >= 0.0) || !(eps <= 1.0)) throw ConfigError("--eps values must lie in [0,1]");
        }

        const auto* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        if (cfg.command == "spectrum") return cmd_spectrum(cfg);
        if (cfg.command == "check") return cmd_check(cfg);
        if (cfg.command == "tightness") return cmd_tightness(cfg);
        if (cfg.command == "estimate") return cmd_estimate(cfg);
        throw ConfigError("unknown command");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
