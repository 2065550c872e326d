#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latticeforge/bounds.hpp"
#include "latticeforge/cbc.hpp"
#include "latticeforge/core.hpp"

namespace latticeforge {

/// Weight grammar: `list:v1,v2,...` with optional `+poly:a` / `+geo:q` tail,
/// or a bare `poly:a` / `geo:q` (gamma_j = j^-a resp. q^j from the start).
ProductWeights parse_weights(const std::string& text);
std::string format_weights(const ProductWeights& weights);

/// Reduction grammar: `list:w1,w2,...` with optional `+const` (repeat the last
/// value) or `+linear:k` (grow by k per dimension past the list).
ReductionSchedule parse_reduction(const std::string& text);
std::string format_reduction(const ReductionSchedule& schedule);

/// Flat key-value instance text: keys base, m, dims, weights, reduction.
/// '#' starts a comment. Validation runs before returning.
Instance parse_instance_text(const std::string& text);
Instance load_instance_file(const std::string& path);
std::string format_instance(const Instance& instance);

/// Vector artifact: the instance header, one `j w_j z_j c_j` line per
/// component, and an `R d value` footer per prefix (17 significant digits).
struct VectorFile {
    Instance instance;
    GeneratingVector vector;
    std::vector<double> step_r;
};

std::string format_vector_file(const Instance& instance, const ConstructionResult& result);
VectorFile parse_vector_file(const std::string& text);
VectorFile load_vector_file(const std::string& path);

/// N x s CSV of exact rationals, each entry rendered as "num/N".
void write_points_csv(const LatticeConfig& config, const GeneratingVector& z,
                      std::ostream& out);

std::string format_bound_text(const BoundReport& report);
std::string format_bound_csv(const BoundReport& report);
std::string format_tractability_text(const TractabilityReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace latticeforge
