#include "pcube/fourier.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "pcube/detail/kahan.hpp"

namespace pcube {

Spectrum::Spectrum(int n, double p, std::vector<double> coeffs)
    : n_(n), p_(p), coeffs_(std::move(coeffs)) {
    if (n_ < 0 || n_ > kMaxTableDimension) {
        throw std::invalid_argument("Spectrum: dimension must be in 0..30");
    }
    if (!(p_ > 0.0) || !(p_ < 1.0)) {
        throw std::invalid_argument("Spectrum: p must lie in (0,1)");
    }
    if (coeffs_.size() != (std::size_t{1} << n_)) {
        throw std::invalid_argument("Spectrum: coefficient table must have exactly 2^n entries");
    }
}

double walsh_value(std::uint64_t t_mask, const CubePoint& x, const BiasedMeasure& m) {
    if (x.n < 64 && (t_mask >> x.n) != 0) {
        throw std::invalid_argument("walsh_value: subset mask has bits above the dimension");
    }
    const double up = std::sqrt(m.q() / m.p());
    const double down = -std::sqrt(m.p() / m.q());
    double v = 1.0;
    std::uint64_t t = t_mask;
    while (t != 0) {
        const std::uint64_t bit = t & (~t + 1);
        v *= (x.mask & bit) ? up : down;
        t &= t - 1;
    }
    return v;
}

Spectrum transform(const CubeFunction& f, const BiasedMeasure& m) {
    const int n = f.dimension();
    const double p = m.p();
    const double q = m.q();
    const double s = std::sqrt(p * q);
    std::vector<double> c(f.values().begin(), f.values().end());
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t base = 0; base < c.size(); base += 2 * bit) {
            for (std::uint64_t j = base; j < base + bit; ++j) {
                const double a = c[j];
                const double b = c[j | bit];
                c[j] = q * a + p * b;
                c[j | bit] = s * (b - a);
            }
        }
    }
    return Spectrum(n, p, std::move(c));
}

CubeFunction inverse_transform(const Spectrum& s) {
    const int n = s.dimension();
    const double p = s.p();
    const double q = 1.0 - p;
    const double up = std::sqrt(q / p);
    const double down = std::sqrt(p / q);
    std::vector<double> v(s.coeffs().begin(), s.coeffs().end());
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t base = 0; base < v.size(); base += 2 * bit) {
            for (std::uint64_t j = base; j < base + bit; ++j) {
                const double a = v[j];
                const double b = v[j | bit];
                v[j] = a - b * down;
                v[j | bit] = a + b * up;
            }
        }
    }
    return CubeFunction(n, std::move(v));
}

double level_weight(const Spectrum& s, int d) {
    if (d < 0 || d > s.dimension()) {
        throw std::out_of_range("level_weight: level out of range");
    }
    detail::KahanSum sum;
    const auto c = s.coeffs();
    for (std::uint64_t t = 0; t < c.size(); ++t) {
        if (std::popcount(t) == d) sum.add(c[t] * c[t]);
    }
    return sum.value();
}

std::vector<double> level_weights(const Spectrum& s) {
    std::vector<detail::KahanSum> sums(static_cast<std::size_t>(s.dimension()) + 1);
    const auto c = s.coeffs();
    for (std::uint64_t t = 0; t < c.size(); ++t) {
        sums[std::popcount(t)].add(c[t] * c[t]);
    }
    std::vector<double> out(sums.size());
    for (std::size_t d = 0; d < sums.size(); ++d) out[d] = sums[d].value();
    return out;
}

int fourier_degree(const Spectrum& s, double tol) {
    if (!(tol >= 0.0)) {
        throw std::invalid_argument("fourier_degree: tolerance must be nonnegative");
    }
    int deg = 0;
    const auto c = s.coeffs();
    for (std::uint64_t t = 0; t < c.size(); ++t) {
        if (std::abs(c[t]) > tol) deg = std::max(deg, std::popcount(t));
    }
    return deg;
}

double cross_level_inner(const Spectrum& f, const Spectrum& g, int d) {
    if (f.dimension() != g.dimension() || f.p() != g.p()) {
        throw std::invalid_argument("cross_level_inner: incompatible operands (dimension or bias mismatch)");
    }
    if (d < 0 || d > f.dimension()) {
        throw std::out_of_range("cross_level_inner: level out of range");
    }
    detail::KahanSum sum;
    const auto cf = f.coeffs();
    const auto cg = g.coeffs();
    for (std::uint64_t t = 0; t < cf.size(); ++t) {
        if (std::popcount(t) == d) sum.add(cf[t] * cg[t]);
    }
    return sum.value();
}

void write_spectrum_csv(const Spectrum& s, std::ostream& out) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", s.dimension(), s.p());
    out << buf;
    for (double c : s.coeffs()) {
        std::snprintf(buf, sizeof buf, "%.17g\n", c);
        out << buf;
    }
}

Spectrum read_spectrum_csv(std::istream& in) {
    int n = -1;
    char comma = 0;
    double p = 0.0;
    if (!(in >> n >> comma >> p) || comma != ',') {
        throw std::runtime_error("read_spectrum_csv: malformed header");
    }
    if (n < 0 || n > kMaxTableDimension) {
        throw std::runtime_error("read_spectrum_csv: dimension out of range");
    }
    std::vector<double> coeffs(std::size_t{1} << n);
    for (auto& c : coeffs) {
        if (!(in >> c)) throw std::runtime_error("read_spectrum_csv: truncated coefficient table");
    }
    return Spectrum(n, p, std::move(coeffs));
}

namespace {
constexpr char kSpectrumMagic[4] = {'P', 'C', 'S', 'P'};
}

void write_spectrum_binary(const Spectrum& s, std::ostream& out) {
    out.write(kSpectrumMagic, 4);
    const std::uint32_t n = static_cast<std::uint32_t>(s.dimension());
    const double p = s.p();
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&p), sizeof p);
    out.write(reinterpret_cast<const char*>(s.coeffs().data()),
              static_cast<std::streamsize>(s.coeffs().size() * sizeof(double)));
}

Spectrum read_spectrum_binary(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kSpectrumMagic, 4) != 0) {
        throw std::runtime_error("read_spectrum_binary: bad magic");
    }
    std::uint32_t n = 0;
    double p = 0.0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&p), sizeof p);
    if (!in || n > static_cast<std::uint32_t>(kMaxTableDimension)) {
        throw std::runtime_error("read_spectrum_binary: bad header");
    }
    std::vector<double> coeffs(std::size_t{1} << n);
    in.read(reinterpret_cast<char*>(coeffs.data()),
            static_cast<std::streamsize>(coeffs.size() * sizeof(double)));
    if (!in) throw std::runtime_error("read_spectrum_binary: truncated coefficient table");
    return Spectrum(static_cast<int>(n), p, std::move(coeffs));
}

}
