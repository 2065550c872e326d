#pragma once

#include <cstdint>
#include <vector>

#include "latticeforge/core.hpp"
#include "latticeforge/harmonic.hpp"

namespace latticeforge {

/// Running per-point product eta_d(k) = prod_{j<=d} (1 + gamma_j phi(k c_j / N)).
/// eta_0 is identically 1.
struct EtaVector {
    int d = 0;
    std::vector<double> values;

    static EtaVector ones(std::int64_t n);
};

/// Advances eta by one dimension: multiply entry k by (1 + gamma phi(k c mod N / N)).
/// Table indices are reduced in integer arithmetic, never through floats.
void eta_update(EtaVector& eta, double gamma, std::int64_t c, const KernelTable& kernel,
                std::int64_t* mac_counter = nullptr);

/// Fixed-order compensated sum of the eta entries.
double eta_sum(const EtaVector& eta);

/// Unweighted merit of a coordinate subset (0-based indices into z):
/// (1/N) sum_k prod_{j in u} phi(k c_j / N) - 1.
double r_subset(const LatticeConfig& config, const GeneratingVector& z,
                const std::vector<int>& subset, const KernelTable& kernel);

/// Weighted figure of merit by subset expansion over all nonempty u in [s].
/// Oracle form, guarded to s <= 12.
double r_weighted(const LatticeConfig& config, const ProductWeights& weights,
                  const GeneratingVector& z, int s, const KernelTable& kernel);

/// Weighted figure of merit in product form:
/// (1/N) sum_k prod_{j<=s} (1 + gamma_j phi(k c_j / N)) - prod_{j<=s} beta_j.
double r_weighted_product(const LatticeConfig& config, const ProductWeights& weights,
                          const GeneratingVector& z, int s, const KernelTable& kernel,
                          std::int64_t* mac_counter = nullptr);

/// Merit of the first eta.d dimensions from a maintained eta vector:
/// (1/N) sum_k eta(k) - prod_{j<=d} beta_j.
double r_from_eta(const EtaVector& eta, const ProductWeights& weights);

}  // namespace latticeforge
