#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latticeforge/util.hpp"

namespace latticeforge {

/// Prime base b and exponent m fixing the point count N = b^m.
struct LatticeConfig {
    std::int64_t b = 2;
    int m = 1;
    std::int64_t n = 2;  // b^m, cached

    LatticeConfig() = default;
    LatticeConfig(std::int64_t base, int exponent);

    /// All violations, empty when valid.
    std::vector<std::string> violations() const;
};

/// Per-coordinate importance weights gamma_j in (0,1], non-increasing.
/// A finite head may be extended by an analytic tail; the tail is required
/// by the tractability calculator but not by construction.
struct ProductWeights {
    enum class Tail { none, polynomial, geometric };

    std::vector<double> head;   // gamma_1 .. gamma_L
    Tail tail = Tail::none;
    double tail_param = 0.0;    // polynomial: gamma_j = j^-a; geometric: gamma_j = gamma_L * q^(j-L)

    double gamma(std::int64_t j) const;          // 1-based
    double beta(std::int64_t j) const { return 1.0 + gamma(j); }
    /// Product of gamma_j over a coordinate subset (empty set -> 1).
    double gamma_subset(const std::vector<int>& subset) const;
    bool has_tail() const { return tail != Tail::none; }
    /// Largest dimension with a defined weight (INT64_MAX with a tail).
    std::int64_t max_dim() const;

    std::vector<std::string> violations() const;
};

/// Non-decreasing reduction exponents w_j >= 0. A finite head may be extended
/// by a constant or linear tail.
struct ReductionSchedule {
    enum class Tail { none, constant, linear };

    std::vector<int> head;  // w_1 .. w_L
    Tail tail = Tail::none;
    int tail_step = 0;      // linear: w_j = w_L + step * (j - L)

    int w(std::int64_t j) const;  // 1-based
    bool has_tail() const { return tail != Tail::none; }
    std::int64_t max_dim() const;

    /// Largest j <= s with w_j < m (0 when w_1 >= m already).
    std::int64_t threshold_t(int m, std::int64_t s) const;

    /// Schedule that is identically zero (the standard CBC search space).
    static ReductionSchedule zero();

    std::vector<std::string> violations() const;
};

/// A validated problem instance: configuration, weights, schedule, dimension.
struct Instance {
    LatticeConfig config;
    ProductWeights weights;
    ReductionSchedule schedule;
    int dims = 1;
};

/// Returns the instance iff every structural invariant holds; throws
/// ValidationError listing every violation otherwise.
Instance validate_instance(const LatticeConfig& config, const ProductWeights& weights,
                           const ReductionSchedule& schedule, int dims);

/// One generating-vector component: reduced index z_j with its exponent w_j.
/// The effective multiplier is c_j = b^{w_j} z_j mod N (0 once w_j >= m).
struct VectorComponent {
    int w = 0;
    std::int64_t z = 1;
    std::int64_t c = 0;
};

struct GeneratingVector {
    LatticeConfig config;
    std::vector<VectorComponent> components;

    int dims() const { return static_cast<int>(components.size()); }
    static GeneratingVector make(const LatticeConfig& config,
                                 const std::vector<std::pair<int, std::int64_t>>& wz);
    std::vector<std::string> violations() const;
};

/// N x s matrix of points {k c_j / N}; every entry is a multiple of 1/N.
struct PointSet {
    std::int64_t n = 0;
    int dims = 0;
    std::vector<double> data;  // row-major

    double at(std::int64_t k, int j) const { return data[static_cast<std::size_t>(k) * dims + j]; }
    std::vector<double> row(std::int64_t k) const;
    PointSet project(const std::vector<int>& subset) const;  // 0-based coordinate list
};

/// Materializes the point set of a validated generating vector,
/// k = 0..N-1 (the k = 0 point is the origin).
PointSet lattice_points(const LatticeConfig& config, const GeneratingVector& z);

/// Exact numerators: point k, coordinate j is (k * c_j mod N) / N.
std::int64_t point_numerator(const LatticeConfig& config, const GeneratingVector& z,
                             std::int64_t k, int j);

}  // namespace latticeforge
