#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "latticeforge/core.hpp"

namespace latticeforge {

/// Euler-Mascheroni constant (named to avoid any clash with the weights gamma_j).
inline constexpr double kEulerMascheroni = 0.5772156649015329;

/// Shared convention for the frequency window -n/2 < h <= n/2:
/// for even n the endpoint h = n/2 is included, -n/2 is not; odd n is symmetric.
inline std::int64_t h_lo(std::int64_t n) { return -((n - 1) / 2); }
inline std::int64_t h_hi(std::int64_t n) { return n / 2; }

/// Truncated symmetric harmonic sum S_n = sum over the window, h != 0, of 1/|h|.
/// S_1 = 0.
double s_n(std::int64_t n);

/// Incremental S_n evaluator for sweeps over consecutive n (O(1) amortized).
class HarmonicSweep {
public:
    /// S_n for the next n in sequence; first call must pass n = 1.
    double next(std::int64_t n);

private:
    std::int64_t expected_ = 1;
    std::int64_t half_terms_ = 0;
    KahanSum half_sum_;  // H_{floor(n/2)}
};

/// Bracket for the residual S_n - (2 log n + 2*gamma_EM - log 4).
struct EpsilonBound {
    std::int64_t n = 1;
    double lower = 0.0;  // strict
    double upper = 0.0;  // inclusive for even n, strict for odd n
};

struct AsymptoticSn {
    double approx = 0.0;
    EpsilonBound eps;
};

/// Logarithmic closed form for S_n with its residual bracket.
AsymptoticSn s_n_asymptotic(std::int64_t n);

/// Table of the quality kernel phi(k/N) = sum over the window of e^(2 pi i h k/N)/max(1,|h|).
/// phi[0] = 1 + S_N and the table sums to N.
struct KernelTable {
    std::int64_t n = 0;
    std::vector<double> phi;
    double sn = 0.0;

    double at_index(std::int64_t idx) const { return phi[static_cast<std::size_t>(idx)]; }
};

enum class PhiMethod { direct, fft };

/// Builds the kernel table. The direct path is the O(N^2) reference; the fft
/// path evaluates the same values as a radix-b discrete Fourier transform of
/// the sequence 1/max(1,|h|) in O(N log N) counted operations.
KernelTable phi_table(const LatticeConfig& config, PhiMethod method = PhiMethod::direct,
                      std::int64_t* mac_counter = nullptr);

/// Kernel sum over a reduced search space, direct double sum (the oracle):
/// T_{N,w}(k) = sum_{z in Z_{N,w}} sum_{h != 0} e^(2 pi i h k b^w z / N)/|h|.
/// Imaginary parts must cancel below 1e-9 and are discarded.
double t_direct(const LatticeConfig& config, int w, std::int64_t k);

/// Closed form for the same quantity:
///   w >= m                         -> S_N
///   w < m, b^{m-w} | k             -> |Z_{N,w}| S_N
///   otherwise, with b^nu = gcd(b^{m-w}, k mod b^{m-w})
///                                  -> b^nu (S_{b^{w+nu}} - S_{b^{w+nu+1}})
double t_closed_form(const LatticeConfig& config, int w, std::int64_t k);

/// CSV export: columns k, phi_k with 17 significant digits.
void write_kernel_csv(const KernelTable& table, std::ostream& out);

}  // namespace latticeforge
