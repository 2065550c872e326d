#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latticeforge/core.hpp"

namespace latticeforge {

/// Exact discrepancy value with the box corner (and coordinate subset, for the
/// weighted variant) attaining it. `closed_side` records whether the supremum
/// is approached with points on the box boundary counted in.
struct DiscrepancyResult {
    double value = 0.0;
    std::vector<double> witness_x;
    std::vector<int> witness_u;  // 0-based coordinates; empty for plain star discrepancy
    bool closed_side = false;

    /// Re-evaluates the witness against a point set; must reproduce value.
    double replay(const PointSet& points) const;
};

/// Local discrepancy at x in (0,1]^s: fraction of points in [0,x) minus vol[0,x).
double local_discrepancy(const PointSet& points, const std::vector<double>& x);

/// Exact star discrepancy by critical-box enumeration over the grid built from
/// the point coordinates and 1. Both the closed and the strict count are
/// examined at every corner. Guarded to at most 1e7 grid corners.
DiscrepancyResult star_discrepancy_exact(const PointSet& points);

/// Independent second enumerator (axis-sorted sweep with subset filtering);
/// test aid against a shared bug in the corner walk.
DiscrepancyResult star_discrepancy_sweep(const PointSet& points);

/// max over nonempty coordinate subsets u of gamma_u * D*(projection onto u).
DiscrepancyResult weighted_star_discrepancy_exact(const PointSet& points,
                                                  const ProductWeights& weights);

enum class TestFamily { product_linear, product_quadratic };

/// Quasi-Monte Carlo integration demo: f = prod_j (1 + alpha_j (x_j - 1/2))
/// (or the quadratic analog with x_j^2 - 1/3). Both have integral 1.
/// For the linear family the weighted variation has a closed form.
struct QmcDemoResult {
    double estimate = 0.0;
    double integral = 1.0;
    double error = 0.0;
    std::optional<double> weighted_variation;  // linear family only
};

QmcDemoResult qmc_error_demo(const PointSet& points, TestFamily family,
                             const std::vector<double>& alpha,
                             const ProductWeights* weights = nullptr);

}  // namespace latticeforge
