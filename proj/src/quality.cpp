#include "latticeforge/quality.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace latticeforge {

EtaVector EtaVector::ones(std::int64_t n) {
    EtaVector eta;
    eta.d = 0;
    eta.values.assign(static_cast<std::size_t>(n), 1.0);
    return eta;
}

void eta_update(EtaVector& eta, double gamma, std::int64_t c, const KernelTable& kernel,
                std::int64_t* mac_counter) {
    const std::int64_t n = kernel.n;
    std::int64_t idx = 0;
    const std::int64_t step = ((c % n) + n) % n;
    for (std::int64_t k = 0; k < n; ++k) {
        eta.values[static_cast<std::size_t>(k)] *=
            1.0 + gamma * kernel.phi[static_cast<std::size_t>(idx)];
        assert(std::isfinite(eta.values[static_cast<std::size_t>(k)]));
        idx += step;
        if (idx >= n) idx -= n;
    }
    ++eta.d;
    if (mac_counter) *mac_counter += n;
}

double eta_sum(const EtaVector& eta) {
    KahanSum acc;
    for (double v : eta.values) acc.add(v);
    return acc.value();
}

double r_from_eta(const EtaVector& eta, const ProductWeights& weights) {
    double beta_prod = 1.0;
    for (int j = 1; j <= eta.d; ++j) beta_prod *= weights.beta(j);
    const auto n = static_cast<double>(eta.values.size());
    return eta_sum(eta) / n - beta_prod;
}

double r_subset(const LatticeConfig& config, const GeneratingVector& z,
                const std::vector<int>& subset, const KernelTable& kernel) {
    if (subset.empty()) throw std::invalid_argument("r_subset needs a nonempty subset");
    const std::int64_t n = config.n;
    std::vector<std::int64_t> idx(subset.size(), 0);
    std::vector<std::int64_t> step(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i)
        step[i] = z.components[static_cast<std::size_t>(subset[i])].c % n;
    KahanSum acc;
    for (std::int64_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (std::size_t i = 0; i < subset.size(); ++i) {
            prod *= kernel.phi[static_cast<std::size_t>(idx[i])];
            idx[i] += step[i];
            if (idx[i] >= n) idx[i] -= n;
        }
        acc.add(prod);
    }
    return acc.value() / static_cast<double>(n) - 1.0;
}

double r_weighted(const LatticeConfig& config, const ProductWeights& weights,
                  const GeneratingVector& z, int s, const KernelTable& kernel) {
    if (s > 12)
        throw ScaleLimitError("subset expansion is an oracle, limited to s <= 12");
    if (s < 1 || s > z.dims()) throw std::invalid_argument("bad dimension count");
    KahanSum acc;
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
        std::vector<int> subset;
        double gamma_u = 1.0;
        for (int j = 0; j < s; ++j) {
            if (mask & (1u << j)) {
                subset.push_back(j);
                gamma_u *= weights.gamma(j + 1);
            }
        }
        acc.add(gamma_u * r_subset(config, z, subset, kernel));
    }
    return acc.value();
}

double r_weighted_product(const LatticeConfig& config, const ProductWeights& weights,
                          const GeneratingVector& z, int s, const KernelTable& kernel,
                          std::int64_t* mac_counter) {
    if (s < 1 || s > z.dims()) throw std::invalid_argument("bad dimension count");
    const std::int64_t n = config.n;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(s), 0);
    std::vector<std::int64_t> step(static_cast<std::size_t>(s));
    std::vector<double> gam(static_cast<std::size_t>(s));
    double beta_prod = 1.0;
    for (int j = 0; j < s; ++j) {
        step[static_cast<std::size_t>(j)] = z.components[static_cast<std::size_t>(j)].c % n;
        gam[static_cast<std::size_t>(j)] = weights.gamma(j + 1);
        beta_prod *= weights.beta(j + 1);
    }
    KahanSum acc;
    for (std::int64_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (int j = 0; j < s; ++j) {
            prod *= 1.0 + gam[static_cast<std::size_t>(j)] *
                              kernel.phi[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            idx[static_cast<std::size_t>(j)] += step[static_cast<std::size_t>(j)];
            if (idx[static_cast<std::size_t>(j)] >= n) idx[static_cast<std::size_t>(j)] -= n;
        }
        acc.add(prod);
    }
    if (mac_counter) *mac_counter += n * s;
    return acc.value() / static_cast<double>(n) - beta_prod;
}

}  // namespace latticeforge
