#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latticeforge/cbc.hpp"
#include "latticeforge/core.hpp"

namespace latticeforge {

enum class FirstTermForm {
    standard,   // sum over nonempty u of gamma_u (1 - (1 - 1/N)^|u|)
    as_printed  // sum over all u of gamma_u N^{-|u|} (includes the empty set)
};

enum class BoundKind { mean, cbc, discrepancy };

/// A closed-form bound value with its named addends and assumption flags.
/// value is always the sum of the components.
struct BoundReport {
    BoundKind kind = BoundKind::cbc;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> components;
    std::vector<std::pair<std::string, bool>> assumptions;

    double component(const std::string& name) const;
};

/// Existence bound on the discrepancy averaged over all reduced vectors:
/// first term plus half the closed-form bound on the mean merit.
/// The mean-merit bound itself is exposed as component "r_mean_bound"
/// (value = first_term + r_mean_bound / 2). Requires m >= 5.
BoundReport mean_bound(const Instance& instance, FirstTermForm form = FirstTermForm::standard);

/// Exact average of the weighted merit over the full product search space.
/// Desk-scale oracle, guarded to |Z^s| <= 1e6 vectors.
double mean_r_bruteforce(const Instance& instance);

/// Merit bound for CBC-constructed prefixes of length d:
/// (1/N) prod_{j<=d} (beta_j + (1 + 2 b^{min(w_j,m)}) gamma_j S_N).
/// With use_log_bound the harmonic sum is replaced by its 4 log N majorant.
BoundReport cbc_bound(const Instance& instance, int d, bool use_log_bound = false);

/// The z-independent first term of the discrepancy estimate, in either form.
double discrepancy_first_term(const LatticeConfig& config, const ProductWeights& weights,
                              int s, FirstTermForm form = FirstTermForm::standard);

/// Discrepancy bound for a constructed or supplied vector: first term plus
/// half its merit; without a vector, first term plus half the a-priori
/// CBC merit bound.
BoundReport discrepancy_bound_for_vector(const Instance& instance,
                                         const GeneratingVector* z,
                                         FirstTermForm form = FirstTermForm::standard);

/// Certified enclosure of a tail sum; divergent sums carry infinities.
struct SigmaBracket {
    double lower = 0.0;
    double upper = 0.0;

    bool divergent() const;
};

/// sigma_d = 13 sum_{j>d} gamma_j b^{w_j}, from the analytic tail descriptors.
/// Polynomial tails yield an integral-bracketed enclosure; geometric and
/// eventually-constant tails are exact. Divergence is reported, not thrown.
SigmaBracket sigma_d(const ProductWeights& weights, const ReductionSchedule& schedule,
                     std::int64_t b, std::int64_t d);

struct TractabilityReport {
    double sigma_0 = 0.0;                 // upper end of the enclosure
    std::vector<std::pair<std::int64_t, double>> sigma_trace;  // (d, upper end)
    double delta = 0.0;
    double epsilon = 0.0;

    bool asymptotic_available = false;
    std::int64_t d_star = 0;
    double log_c_gamma_delta = 0.0;       // log of (1 + sigma_{d*}^{-1})^{d*}
    double c_gamma_delta = 0.0;           // may overflow to inf; the log is exact
    std::int64_t n_star_asymptotic_exponent = 0;  // N = b^e, rounded up
    double n_star_asymptotic = 0.0;               // b^e as a double (may be inf)

    bool constructive_found = false;
    bool trivial_epsilon = false;         // epsilon >= 1: a single point suffices
    int constructive_m = 0;
    std::int64_t n_star_constructive = 0;
    double constructive_bound_value = 0.0;
};

/// Minimal point counts that push the discrepancy bound below epsilon:
/// (i) the summability chain (requires sigma_0 < infinity), rounded up to a
/// power of b; (ii) direct search over m of the closed-form CBC discrepancy
/// bound. Path (ii) never needs a CBC run.
TractabilityReport n_star_estimate(const ProductWeights& weights,
                                   const ReductionSchedule& schedule, std::int64_t b, int s,
                                   double epsilon, double delta, int m_max = 20,
                                   bool use_log_bound = false);

}  // namespace latticeforge
