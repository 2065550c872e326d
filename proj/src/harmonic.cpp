#include "latticeforge/harmonic.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace latticeforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::complex<double>> unit_roots(std::int64_t n) {
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t)
        roots[static_cast<std::size_t>(t)] =
            std::polar(1.0, kTwoPi * static_cast<double>(t) / static_cast<double>(n));
    return roots;
}

std::int64_t space_size(const LatticeConfig& cfg, int w) {
    if (w >= cfg.m) return 1;
    return *checked_pow(cfg.b, cfg.m - w - 1) * (cfg.b - 1);
}

/// X[k] = sum_n a[n] roots[n k mod N] for N = b^m, recursive decimation by b.
std::vector<std::complex<double>> dft_pow_b(const std::vector<std::complex<double>>& a,
                                            const std::vector<std::complex<double>>& roots,
                                            std::int64_t b, std::int64_t* macs) {
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    if (n == 1) return a;
    const std::int64_t sub = n / b;
    const std::int64_t rstep = static_cast<std::int64_t>(roots.size()) / n;
    std::vector<std::vector<std::complex<double>>> parts;
    parts.reserve(static_cast<std::size_t>(b));
    for (std::int64_t r = 0; r < b; ++r) {
        std::vector<std::complex<double>> part(static_cast<std::size_t>(sub));
        for (std::int64_t j = 0; j < sub; ++j)
            part[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j * b + r)];
        parts.push_back(dft_pow_b(part, roots, b, macs));
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::int64_t r = 0; r < b; ++r)
            acc += roots[static_cast<std::size_t>(r * k % n * rstep)] *
                   parts[static_cast<std::size_t>(r)][static_cast<std::size_t>(k % sub)];
        out[static_cast<std::size_t>(k)] = acc;
    }
    if (macs) *macs += n * b;
    return out;
}

}  // namespace

double s_n(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("s_n needs n >= 1");
    KahanSum h;
    for (std::int64_t k = 1; k <= n / 2; ++k) h.add(1.0 / static_cast<double>(k));
    double v = 2.0 * h.value();
    if (n % 2 == 0) v -= 2.0 / static_cast<double>(n);
    return v;
}

double HarmonicSweep::next(std::int64_t n) {
    if (n != expected_)
        throw std::invalid_argument("HarmonicSweep expects consecutive n starting at 1");
    ++expected_;
    while (half_terms_ < n / 2) {
        ++half_terms_;
        half_sum_.add(1.0 / static_cast<double>(half_terms_));
    }
    double v = 2.0 * half_sum_.value();
    if (n % 2 == 0) v -= 2.0 / static_cast<double>(n);
    return v;
}

AsymptoticSn s_n_asymptotic(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("s_n_asymptotic needs n >= 1");
    AsymptoticSn r;
    r.approx = 2.0 * std::log(static_cast<double>(n)) + 2.0 * kEulerMascheroni - std::log(4.0);
    const double nsq = static_cast<double>(n) * static_cast<double>(n);
    r.eps.n = n;
    if (n % 2 == 0) {
        r.eps.lower = -4.0 / nsq;
        r.eps.upper = 0.0;
    } else {
        r.eps.lower = -3.0 / nsq;
        r.eps.upper = 1.0 / nsq;
    }
    return r;
}

KernelTable phi_table(const LatticeConfig& config, PhiMethod method,
                      std::int64_t* mac_counter) {
    const std::int64_t n = config.n;
    if (n < 1 || n > (std::int64_t{1} << 26))
        throw ScaleLimitError("kernel table limited to N <= 2^26");
    KernelTable table;
    table.n = n;
    table.sn = s_n(n);
    table.phi.resize(static_cast<std::size_t>(n));

    const auto roots = unit_roots(n);
    const std::int64_t lo = h_lo(n), hi = h_hi(n);

    if (method == PhiMethod::direct) {
        double max_im = 0.0;
        for (std::int64_t k = 0; k < n; ++k) {
            std::complex<double> acc{0.0, 0.0};
            for (std::int64_t h = lo; h <= hi; ++h) {
                const std::int64_t idx = ((h * k) % n + n) % n;
                const double r = h == 0 ? 1.0 : static_cast<double>(h < 0 ? -h : h);
                acc += roots[static_cast<std::size_t>(idx)] / r;
            }
            max_im = std::max(max_im, std::abs(acc.imag()));
            table.phi[static_cast<std::size_t>(k)] = acc.real();
            if (mac_counter) *mac_counter += n;
        }
        if (max_im >= 1e-9)
            throw std::runtime_error("kernel table: imaginary residue exceeds 1e-9");
    } else {
        // phi(k/N) is the length-N transform of 1/max(1,|h|) with h folded mod N.
        std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t h = i <= hi ? i : i - n;
            const double r = h == 0 ? 1.0 : static_cast<double>(h < 0 ? -h : h);
            a[static_cast<std::size_t>(i)] = {1.0 / r, 0.0};
        }
        const auto x = dft_pow_b(a, roots, config.b, mac_counter);
        double max_im = 0.0;
        for (std::int64_t k = 0; k < n; ++k) {
            max_im = std::max(max_im, std::abs(x[static_cast<std::size_t>(k)].imag()));
            table.phi[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)].real();
        }
        if (max_im >= 1e-9)
            throw std::runtime_error("kernel table: imaginary residue exceeds 1e-9");
    }
    return table;
}

double t_direct(const LatticeConfig& config, int w, std::int64_t k) {
    const std::int64_t n = config.n;
    if (k < 1 || k >= n) throw std::invalid_argument("t_direct needs 1 <= k <= N-1");
    if (n > (std::int64_t{1} << 14))
        throw ScaleLimitError("t_direct is a desk-scale oracle (N <= 2^14)");
    const auto roots = unit_roots(n);
    const std::int64_t lo = h_lo(n), hi = h_hi(n);
    const std::int64_t bw = pow_mod(config.b, w, n);

    std::complex<double> acc{0.0, 0.0};
    const std::int64_t zmax = w >= config.m ? 1 : *checked_pow(config.b, config.m - w) - 1;
    for (std::int64_t z = 1; z <= zmax; ++z) {
        if (w < config.m && z % config.b == 0) continue;
        const std::int64_t a = k % n * (bw % n) % n * (z % n) % n;
        for (std::int64_t h = lo; h <= hi; ++h) {
            if (h == 0) continue;
            const std::int64_t idx = ((h * a) % n + n) % n;
            acc += roots[static_cast<std::size_t>(idx)] / static_cast<double>(h < 0 ? -h : h);
        }
    }
    if (std::abs(acc.imag()) >= 1e-9)
        throw std::runtime_error("t_direct: imaginary residue exceeds 1e-9");
    return acc.real();
}

double t_closed_form(const LatticeConfig& config, int w, std::int64_t k) {
    const std::int64_t n = config.n;
    if (k < 1 || k >= n) throw std::invalid_argument("t_closed_form needs 1 <= k <= N-1");
    if (w >= config.m) return s_n(n);
    const std::int64_t mod = *checked_pow(config.b, config.m - w);
    const std::int64_t r = k % mod;
    if (r == 0) return static_cast<double>(space_size(config, w)) * s_n(n);
    // gcd(b^{m-w}, r) is the largest power of b dividing r.
    std::int64_t g = 1;
    int nu = 0;
    std::int64_t rr = r;
    while (rr % config.b == 0 && g < mod) {
        rr /= config.b;
        g *= config.b;
        ++nu;
    }
    const std::int64_t low = *checked_pow(config.b, w + nu);
    return static_cast<double>(g) * (s_n(low) - s_n(low * config.b));
}

void write_kernel_csv(const KernelTable& table, std::ostream& out) {
    out << "k,phi_k\n";
    for (std::int64_t k = 0; k < table.n; ++k)
        out << k << ',' << format_g17(table.phi[static_cast<std::size_t>(k)]) << '\n';
}

}  // namespace latticeforge
