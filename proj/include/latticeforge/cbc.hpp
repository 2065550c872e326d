#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latticeforge/core.hpp"
#include "latticeforge/harmonic.hpp"
#include "latticeforge/quality.hpp"

namespace latticeforge {

/// Reduced candidate set Z_{N,w}: integers z < b^{m-w} coprime to b when
/// w < m, the singleton {1} otherwise.
struct SearchSpace {
    std::int64_t n = 0;
    int w = 0;
    std::vector<std::int64_t> members;  // ascending

    std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
};

SearchSpace search_space(const LatticeConfig& config, int w);

/// Cardinality of Z_{N,w} without materializing it.
std::int64_t search_space_size(const LatticeConfig& config, int w);

/// Counted multiply-accumulates per construction phase. Counters are threaded
/// through the calls; nothing global. Wall times are informational only.
struct DimCost {
    std::int64_t search_macs = 0;
    std::int64_t partition_macs = 0;
    std::int64_t eta_macs = 0;
    double wall_ms = 0.0;

    std::int64_t total_macs() const { return search_macs + partition_macs + eta_macs; }
};

struct CostProfile {
    std::int64_t phi_macs = 0;
    double phi_wall_ms = 0.0;
    std::vector<DimCost> dims;  // dims[d-1] covers CBC step d

    std::int64_t total_macs() const;
};

struct ConstructionResult {
    GeneratingVector vector;
    std::vector<double> step_r;  // R^1 .. R^s of the chosen prefixes
    CostProfile cost;
};

enum class CbcAlgorithm { reduced, fast, standard, exhaustive };

struct CbcOptions {
    PhiMethod phi_method = PhiMethod::direct;
    /// Apply the literal post-loop overwrite z_t = z_{t+1} = ... = z_s = 1
    /// (the default keeps the loop's choice of z_t and only forces j > t,
    /// which the singleton search spaces do on their own).
    bool strict_paper = false;
};

/// Shared tie-break for candidate scans: scan in ascending order, first value
/// within a small tolerance of the minimum wins. In exact arithmetic this is
/// plain first-strict-minimum; the tolerance absorbs summation-order noise so
/// that all evaluation routes select the same candidate (the mirror candidate
/// b^l - z always ties the minimum exactly in exact arithmetic).
std::size_t argmin_shared_tiebreak(std::span<const double> values);

/// T_d(z) = sum_{k'} phi(k' z / b^level) etaprime(k') for every z in Z_{b^level,0},
/// read from the level-N kernel table at stride N / b^level. Ascending z order.
struct OmegaApplyResult {
    std::vector<std::int64_t> z;
    std::vector<double> t;
};

OmegaApplyResult omega_apply(const KernelTable& kernel, std::int64_t b, int level,
                             std::span<const double> etaprime,
                             std::int64_t* mac_counter = nullptr);

/// Dense view of the candidate-by-residue kernel matrix at one level; test aid.
struct OmegaMatrix {
    std::int64_t b = 2;
    int level = 0;
    const KernelTable* kernel = nullptr;

    std::vector<std::int64_t> row_indices() const;      // the z values
    std::vector<double> row(std::int64_t z) const;       // phi({k z / b^level}), k ascending
};

/// One component at a time, z_1 = 1, each further z_d chosen from Z_{N,w_d}
/// to minimize the weighted merit of the extended prefix.
ConstructionResult reduced_cbc(const Instance& instance, const CbcOptions& options = {});

/// Same outputs as reduced_cbc; per step the eta vector is folded into
/// b^{w_d} blocks and the candidate sums come from the level-(m - w_d) kernel
/// matrix, which is what removes the factor b^{w_d} from the step cost.
ConstructionResult reduced_fast_cbc(const Instance& instance, const CbcOptions& options = {});

/// Full-search CBC: reduced_cbc with the all-zero schedule.
ConstructionResult standard_cbc(const Instance& instance, const CbcOptions& options = {});

/// Per-step oracle: true argmin of the merit over Z_{N,w_d} by full scan with
/// from-scratch merit evaluations (no eta caching) and the shared tie-break.
/// d = 1 returns 1 unless search_first is set.
std::int64_t exhaustive_best(const Instance& instance, int d, const GeneratingVector& prefix,
                             const KernelTable& kernel, bool search_first = false);

/// Whole-vector construction driving exhaustive_best at every step.
ConstructionResult exhaustive_cbc(const Instance& instance, const CbcOptions& options = {});

ConstructionResult construct(const Instance& instance, CbcAlgorithm algorithm,
                             const CbcOptions& options = {});

}  // namespace latticeforge
