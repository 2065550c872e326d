#include "latticeforge/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latticeforge/util.hpp"

namespace latticeforge {

namespace {

std::vector<std::vector<double>> grid_axes(const PointSet& points) {
    std::vector<std::vector<double>> axes(static_cast<std::size_t>(points.dims));
    for (int j = 0; j < points.dims; ++j) {
        auto& axis = axes[static_cast<std::size_t>(j)];
        axis.reserve(static_cast<std::size_t>(points.n) + 1);
        for (std::int64_t k = 0; k < points.n; ++k) axis.push_back(points.at(k, j));
        axis.push_back(1.0);
        std::sort(axis.begin(), axis.end());
        axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    }
    return axes;
}

struct Best {
    double value = -1.0;
    std::int64_t corner = -1;  // linear index, row-major (axis 0 most significant)
    bool closed_side = false;
};

Best better_of(const Best& a, const Best& b) { return b.value > a.value ? b : a; }

void counts_at(const PointSet& points, const std::vector<double>& x, std::int64_t* strict,
               std::int64_t* closed) {
    std::int64_t ns = 0, nc = 0;
    for (std::int64_t k = 0; k < points.n; ++k) {
        bool in_strict = true, in_closed = true;
        for (int j = 0; j < points.dims && in_closed; ++j) {
            const double p = points.at(k, j);
            if (p >= x[static_cast<std::size_t>(j)]) in_strict = false;
            if (p > x[static_cast<std::size_t>(j)]) in_closed = false;
        }
        if (in_strict) ++ns;
        if (in_closed) ++nc;
    }
    *strict = ns;
    *closed = nc;
}

std::vector<double> decode_corner(const std::vector<std::vector<double>>& axes,
                                  std::int64_t linear) {
    std::vector<double> x(axes.size());
    for (std::size_t j = axes.size(); j-- > 0;) {
        const auto size = static_cast<std::int64_t>(axes[j].size());
        x[j] = axes[j][static_cast<std::size_t>(linear % size)];
        linear /= size;
    }
    return x;
}

void sweep_recurse(const PointSet& points, const std::vector<std::vector<double>>& axes,
                   int axis, std::vector<std::int64_t>& strict_set,
                   std::vector<std::int64_t>& closed_set, double vol,
                   std::vector<double>& corner, double n, DiscrepancyResult& best) {
    if (axis == points.dims) {
        const double closed_res = static_cast<double>(closed_set.size()) / n - vol;
        const double strict_res = vol - static_cast<double>(strict_set.size()) / n;
        const bool closed_wins = closed_res >= strict_res;
        const double v = closed_wins ? closed_res : strict_res;
        if (v > best.value) {
            best.value = v;
            best.witness_x = corner;
            best.closed_side = closed_wins;
        }
        return;
    }
    for (double v : axes[static_cast<std::size_t>(axis)]) {
        std::vector<std::int64_t> next_strict, next_closed;
        next_strict.reserve(strict_set.size());
        next_closed.reserve(closed_set.size());
        for (std::int64_t k : strict_set)
            if (points.at(k, axis) < v) next_strict.push_back(k);
        for (std::int64_t k : closed_set)
            if (points.at(k, axis) <= v) next_closed.push_back(k);
        corner.push_back(v);
        sweep_recurse(points, axes, axis + 1, next_strict, next_closed, vol * v, corner, n,
                      best);
        corner.pop_back();
    }
}

}  // namespace

double local_discrepancy(const PointSet& points, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != points.dims)
        throw std::invalid_argument("local_discrepancy: dimension mismatch");
    for (double v : x)
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument("local_discrepancy needs x in (0,1]^s");
    std::int64_t strict = 0, closed = 0;
    counts_at(points, x, &strict, &closed);
    double vol = 1.0;
    for (double v : x) vol *= v;
    return static_cast<double>(strict) / static_cast<double>(points.n) - vol;
}

DiscrepancyResult star_discrepancy_exact(const PointSet& points) {
    if (points.n < 1 || points.dims < 1)
        throw std::invalid_argument("star discrepancy needs a nonempty point set");
    const auto axes = grid_axes(points);
    std::int64_t corners = 1;
    for (const auto& axis : axes) {
        corners *= static_cast<std::int64_t>(axis.size());
        if (corners > 20000000)
            throw ScaleLimitError("critical-box grid exceeds 2e7 corners");
    }
    const double n = static_cast<double>(points.n);

    const Best best = chunked_reduce<Best>(
        corners, 2048, Best{},
        [&](std::int64_t lo, std::int64_t hi) {
            Best local;
            for (std::int64_t idx = lo; idx < hi; ++idx) {
                const auto x = decode_corner(axes, idx);
                std::int64_t strict = 0, closed = 0;
                counts_at(points, x, &strict, &closed);
                double vol = 1.0;
                for (double v : x) vol *= v;
                const double closed_res = static_cast<double>(closed) / n - vol;
                const double strict_res = vol - static_cast<double>(strict) / n;
                const bool closed_wins = closed_res >= strict_res;
                const double v = closed_wins ? closed_res : strict_res;
                if (v > local.value) local = Best{v, idx, closed_wins};
            }
            return local;
        },
        better_of);

    DiscrepancyResult out;
    out.value = best.value;
    out.witness_x = decode_corner(axes, best.corner);
    out.closed_side = best.closed_side;
    return out;
}

DiscrepancyResult star_discrepancy_sweep(const PointSet& points) {
    if (points.n < 1 || points.dims < 1)
        throw std::invalid_argument("star discrepancy needs a nonempty point set");
    const auto axes = grid_axes(points);
    double corners = 1.0;
    for (const auto& axis : axes) corners *= static_cast<double>(axis.size());
    if (corners > 2e7) throw ScaleLimitError("critical-box grid exceeds 2e7 corners");

    std::vector<std::int64_t> all(static_cast<std::size_t>(points.n));
    for (std::int64_t k = 0; k < points.n; ++k) all[static_cast<std::size_t>(k)] = k;
    std::vector<std::int64_t> strict_set = all, closed_set = all;
    std::vector<double> corner;
    DiscrepancyResult best;
    best.value = -1.0;
    sweep_recurse(points, axes, 0, strict_set, closed_set, 1.0, corner,
                  static_cast<double>(points.n), best);
    return best;
}

DiscrepancyResult weighted_star_discrepancy_exact(const PointSet& points,
                                                  const ProductWeights& weights) {
    const int s = points.dims;
    if (s < 1 || s > 20) throw ScaleLimitError("weighted oracle limited to s <= 20");
    DiscrepancyResult best;
    best.value = -1.0;
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
        std::vector<int> subset;
        double gamma_u = 1.0;
        for (int j = 0; j < s; ++j) {
            if (mask & (1u << j)) {
                subset.push_back(j);
                gamma_u *= weights.gamma(j + 1);
            }
        }
        const DiscrepancyResult sub = star_discrepancy_exact(points.project(subset));
        const double v = gamma_u * sub.value;
        if (v > best.value) {
            best.value = v;
            best.witness_x = sub.witness_x;
            best.witness_u = subset;
            best.closed_side = sub.closed_side;
        }
    }
    return best;
}

double DiscrepancyResult::replay(const PointSet& points) const {
    const PointSet proj = witness_u.empty() ? points : points.project(witness_u);
    std::int64_t strict = 0, closed = 0;
    counts_at(proj, witness_x, &strict, &closed);
    double vol = 1.0;
    for (double v : witness_x) vol *= v;
    const double n = static_cast<double>(proj.n);
    return closed_side ? static_cast<double>(closed) / n - vol
                       : vol - static_cast<double>(strict) / n;
}

QmcDemoResult qmc_error_demo(const PointSet& points, TestFamily family,
                             const std::vector<double>& alpha,
                             const ProductWeights* weights) {
    if (static_cast<int>(alpha.size()) != points.dims)
        throw std::invalid_argument("qmc_error_demo: one alpha per coordinate");
    QmcDemoResult out;
    KahanSum q;
    for (std::int64_t k = 0; k < points.n; ++k) {
        double f = 1.0;
        for (int j = 0; j < points.dims; ++j) {
            const double x = points.at(k, j);
            const double a = alpha[static_cast<std::size_t>(j)];
            f *= family == TestFamily::product_linear ? 1.0 + a * (x - 0.5)
                                                      : 1.0 + a * (x * x - 1.0 / 3.0);
        }
        q.add(f);
    }
    out.estimate = q.value() / static_cast<double>(points.n);
    out.integral = 1.0;
    out.error = out.estimate - out.integral;
    if (family == TestFamily::product_linear && weights != nullptr) {
        // Hardy-Krause variation with the weights folded in:
        // sum over nonempty u of gamma_u^{-1} prod_{j in u} |alpha_j|
        // prod_{j not in u} |1 + alpha_j/2|, via the factored product identity.
        double with = 1.0, without = 1.0;
        for (int j = 0; j < points.dims; ++j) {
            const double a = std::abs(alpha[static_cast<std::size_t>(j)]);
            const double anchored = std::abs(1.0 + alpha[static_cast<std::size_t>(j)] / 2.0);
            with *= a / weights->gamma(j + 1) + anchored;
            without *= anchored;
        }
        out.weighted_variation = with - without;
    }
    return out;
}

}  // namespace latticeforge
