#include "latticeforge/cbc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace latticeforge {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Kernel-weighted candidate sum over the full point range,
/// T(z) = sum_k eta(k) phi(k c / N) with c = b^w z mod N.
double dense_candidate_sum(const EtaVector& eta, const KernelTable& kernel, std::int64_t c,
                           std::int64_t* macs) {
    const std::int64_t n = kernel.n;
    std::int64_t idx = 0;
    const std::int64_t step = ((c % n) + n) % n;
    KahanSum acc;
    for (std::int64_t k = 0; k < n; ++k) {
        acc.add(eta.values[static_cast<std::size_t>(k)] * kernel.phi[static_cast<std::size_t>(idx)]);
        idx += step;
        if (idx >= n) idx -= n;
    }
    if (macs) *macs += n;
    return acc.value();
}

/// From-scratch merit of prefix + candidate, independent of any eta caching.
double merit_of_extension(const Instance& instance, const GeneratingVector& prefix, int d,
                          std::int64_t cand_c, const KernelTable& kernel, std::int64_t* macs) {
    const std::int64_t n = instance.config.n;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<std::int64_t> step(static_cast<std::size_t>(d));
    std::vector<double> gam(static_cast<std::size_t>(d));
    double beta_prod = 1.0;
    for (int j = 0; j < d; ++j) {
        step[static_cast<std::size_t>(j)] =
            j < d - 1 ? prefix.components[static_cast<std::size_t>(j)].c % n : cand_c % n;
        gam[static_cast<std::size_t>(j)] = instance.weights.gamma(j + 1);
        beta_prod *= instance.weights.beta(j + 1);
    }
    KahanSum acc;
    for (std::int64_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (int j = 0; j < d; ++j) {
            auto& ix = idx[static_cast<std::size_t>(j)];
            prod *= 1.0 + gam[static_cast<std::size_t>(j)] * kernel.phi[static_cast<std::size_t>(ix)];
            ix += step[static_cast<std::size_t>(j)];
            if (ix >= n) ix -= n;
        }
        acc.add(prod);
    }
    if (macs) *macs += n * d;
    return acc.value() / static_cast<double>(n) - beta_prod;
}

VectorComponent make_component(const LatticeConfig& config, int w, std::int64_t z) {
    VectorComponent comp;
    comp.w = w;
    comp.z = z;
    comp.c = pow_mod(config.b, w, config.n) % config.n * z % config.n;
    return comp;
}

enum class StepKind { dense, folded, from_scratch };

ConstructionResult run_cbc(const Instance& instance, const ReductionSchedule& schedule,
                           StepKind kind, const CbcOptions& options) {
    const LatticeConfig& config = instance.config;
    const std::int64_t n = config.n;
    const int s = instance.dims;

    ConstructionResult result;
    result.vector.config = config;
    result.cost.dims.resize(static_cast<std::size_t>(s));

    const auto phi_t0 = Clock::now();
    const KernelTable kernel = phi_table(config, options.phi_method, &result.cost.phi_macs);
    result.cost.phi_wall_ms = ms_since(phi_t0);

    EtaVector eta = EtaVector::ones(n);
    for (int d = 1; d <= s; ++d) {
        DimCost& cost = result.cost.dims[static_cast<std::size_t>(d - 1)];
        const auto t0 = Clock::now();
        const int w = schedule.w(d);
        std::int64_t chosen = 1;
        if (d > 1 && w < config.m) {
            const SearchSpace space = search_space(config, w);
            std::vector<double> values;
            switch (kind) {
                case StepKind::dense: {
                    values.reserve(static_cast<std::size_t>(space.size()));
                    const std::int64_t bw = pow_mod(config.b, w, n);
                    for (std::int64_t z : space.members)
                        values.push_back(dense_candidate_sum(eta, kernel, bw % n * z % n,
                                                             &cost.search_macs));
                    break;
                }
                case StepKind::folded: {
                    const int level = config.m - w;
                    const std::int64_t block = *checked_pow(config.b, level);
                    std::vector<double> folded(eta.values.begin(),
                                               eta.values.begin() + block);
                    for (std::int64_t k = block; k < n; ++k) {
                        folded[static_cast<std::size_t>(k % block)] +=
                            eta.values[static_cast<std::size_t>(k)];
                        ++cost.partition_macs;
                    }
                    auto omega = omega_apply(kernel, config.b, level, folded,
                                             &cost.search_macs);
                    values = std::move(omega.t);
                    break;
                }
                case StepKind::from_scratch: {
                    if (space.size() > 100000)
                        throw ScaleLimitError("exhaustive oracle limited to |Z| <= 1e5");
                    values.reserve(static_cast<std::size_t>(space.size()));
                    const std::int64_t bw = pow_mod(config.b, w, n);
                    for (std::int64_t z : space.members)
                        values.push_back(merit_of_extension(instance, result.vector, d,
                                                            bw % n * z % n, kernel,
                                                            &cost.search_macs));
                    break;
                }
            }
            chosen = space.members[argmin_shared_tiebreak(values)];
        }
        result.vector.components.push_back(make_component(config, w, chosen));
        eta_update(eta, instance.weights.gamma(d),
                   result.vector.components.back().c, kernel, &cost.eta_macs);
        result.step_r.push_back(r_from_eta(eta, instance.weights));
        cost.wall_ms = ms_since(t0);
    }

    if (options.strict_paper) {
        const std::int64_t t = schedule.threshold_t(config.m, s);
        if (t >= 1 && s > t) {
            for (int d = static_cast<int>(t); d <= s; ++d)
                result.vector.components[static_cast<std::size_t>(d - 1)] =
                    make_component(config, schedule.w(d), 1);
            EtaVector redo = EtaVector::ones(n);
            result.step_r.clear();
            for (int d = 1; d <= s; ++d) {
                eta_update(redo, instance.weights.gamma(d),
                           result.vector.components[static_cast<std::size_t>(d - 1)].c, kernel);
                result.step_r.push_back(r_from_eta(redo, instance.weights));
            }
        }
    }
    return result;
}

}  // namespace

SearchSpace search_space(const LatticeConfig& config, int w) {
    SearchSpace space;
    space.n = config.n;
    space.w = w;
    if (w >= config.m) {
        space.members = {1};
        return space;
    }
    const std::int64_t limit = *checked_pow(config.b, config.m - w);
    space.members.reserve(static_cast<std::size_t>(search_space_size(config, w)));
    for (std::int64_t z = 1; z < limit; ++z)
        if (z % config.b != 0) space.members.push_back(z);
    return space;
}

std::int64_t search_space_size(const LatticeConfig& config, int w) {
    if (w >= config.m) return 1;
    return *checked_pow(config.b, config.m - w - 1) * (config.b - 1);
}

std::int64_t CostProfile::total_macs() const {
    std::int64_t total = phi_macs;
    for (const auto& d : dims) total += d.total_macs();
    return total;
}

std::size_t argmin_shared_tiebreak(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmin over empty candidate list");
    double vmin = values[0], vmax = values[0];
    for (double v : values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    const double tol = 1e-9 * std::max({1.0, std::abs(vmin), std::abs(vmax)});
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] <= vmin + tol) return i;
    return 0;  // unreachable
}

OmegaApplyResult omega_apply(const KernelTable& kernel, std::int64_t b, int level,
                             std::span<const double> etaprime, std::int64_t* mac_counter) {
    const std::int64_t block = static_cast<std::int64_t>(etaprime.size());
    LatticeConfig level_cfg;
    level_cfg.b = b;
    level_cfg.m = level;
    level_cfg.n = block;
    if (!checked_pow(b, level) || *checked_pow(b, level) != block)
        throw std::invalid_argument("omega_apply: |etaprime| must equal b^level");
    if (block > kernel.n || kernel.n % block != 0)
        throw std::invalid_argument("omega_apply: level exceeds the kernel table");
    const std::int64_t stride = kernel.n / block;

    OmegaApplyResult out;
    const SearchSpace space = search_space(level_cfg, 0);
    out.z = space.members;
    out.t.reserve(out.z.size());
    for (std::int64_t z : out.z) {
        std::int64_t idx = 0;
        KahanSum acc;
        for (std::int64_t k = 0; k < block; ++k) {
            acc.add(etaprime[static_cast<std::size_t>(k)] *
                    kernel.phi[static_cast<std::size_t>(idx * stride)]);
            idx += z;
            if (idx >= block) idx -= block;
        }
        out.t.push_back(acc.value());
        if (mac_counter) *mac_counter += block;
    }
    return out;
}

std::vector<std::int64_t> OmegaMatrix::row_indices() const {
    LatticeConfig cfg;
    cfg.b = b;
    cfg.m = level;
    cfg.n = *checked_pow(b, level);
    return search_space(cfg, 0).members;
}

std::vector<double> OmegaMatrix::row(std::int64_t z) const {
    const std::int64_t block = *checked_pow(b, level);
    const std::int64_t stride = kernel->n / block;
    std::vector<double> r(static_cast<std::size_t>(block));
    std::int64_t idx = 0;
    for (std::int64_t k = 0; k < block; ++k) {
        r[static_cast<std::size_t>(k)] = kernel->phi[static_cast<std::size_t>(idx * stride)];
        idx += z;
        if (idx >= block) idx -= block;
    }
    return r;
}

ConstructionResult reduced_cbc(const Instance& instance, const CbcOptions& options) {
    return run_cbc(instance, instance.schedule, StepKind::dense, options);
}

ConstructionResult reduced_fast_cbc(const Instance& instance, const CbcOptions& options) {
    return run_cbc(instance, instance.schedule, StepKind::folded, options);
}

ConstructionResult standard_cbc(const Instance& instance, const CbcOptions& options) {
    return run_cbc(instance, ReductionSchedule::zero(), StepKind::dense, options);
}

ConstructionResult exhaustive_cbc(const Instance& instance, const CbcOptions& options) {
    return run_cbc(instance, instance.schedule, StepKind::from_scratch, options);
}

std::int64_t exhaustive_best(const Instance& instance, int d, const GeneratingVector& prefix,
                             const KernelTable& kernel, bool search_first) {
    if (d < 1 || prefix.dims() != d - 1)
        throw std::invalid_argument("exhaustive_best: prefix must have d-1 components");
    const int w = instance.schedule.w(d);
    if (d == 1 && !search_first) return 1;
    if (w >= instance.config.m) return 1;
    const SearchSpace space = search_space(instance.config, w);
    if (space.size() > 100000)
        throw ScaleLimitError("exhaustive oracle limited to |Z| <= 1e5");
    const std::int64_t bw = pow_mod(instance.config.b, w, instance.config.n);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(space.size()));
    for (std::int64_t z : space.members)
        values.push_back(merit_of_extension(instance, prefix, d,
                                            bw % instance.config.n * z % instance.config.n,
                                            kernel, nullptr));
    return space.members[argmin_shared_tiebreak(values)];
}

ConstructionResult construct(const Instance& instance, CbcAlgorithm algorithm,
                             const CbcOptions& options) {
    switch (algorithm) {
        case CbcAlgorithm::reduced: return reduced_cbc(instance, options);
        case CbcAlgorithm::fast: return reduced_fast_cbc(instance, options);
        case CbcAlgorithm::standard: return standard_cbc(instance, options);
        case CbcAlgorithm::exhaustive: return exhaustive_cbc(instance, options);
    }
    throw std::invalid_argument("unknown CBC algorithm");
}

}  // namespace latticeforge
