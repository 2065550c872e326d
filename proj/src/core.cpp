#include "latticeforge/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace latticeforge {

int thread_budget() {
    static const int budget = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw <= 0) hw = 1;
        if (const char* env = std::getenv("LATTICEFORGE_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1) hw = std::min<long>(hw, v);
        }
        return hw;
    }();
    return budget;
}

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

LatticeConfig::LatticeConfig(std::int64_t base, int exponent) : b(base), m(exponent), n(0) {
    if (auto p = checked_pow(base, exponent)) n = *p;
}

std::vector<std::string> LatticeConfig::violations() const {
    std::vector<std::string> v;
    if (!is_prime(b)) v.push_back("base " + std::to_string(b) + " is not prime");
    if (m < 1) v.push_back("exponent m must be >= 1");
    auto p = (m >= 1 && b >= 2) ? checked_pow(b, m) : std::nullopt;
    if (b >= 2 && m >= 1 && !p) v.push_back("b^m overflows 64-bit range");
    if (p && n != *p) v.push_back("cached N does not equal b^m");
    return v;
}

double ProductWeights::gamma(std::int64_t j) const {
    const auto L = static_cast<std::int64_t>(head.size());
    if (j <= 0) throw std::out_of_range("weight index must be positive");
    if (j <= L) return head[static_cast<std::size_t>(j - 1)];
    switch (tail) {
        case Tail::polynomial:
            return std::pow(static_cast<double>(j), -tail_param);
        case Tail::geometric: {
            const double anchor = L > 0 ? head.back() : 1.0;
            return anchor * std::pow(tail_param, static_cast<double>(j - L));
        }
        case Tail::none:
            break;
    }
    throw std::out_of_range("weight gamma_" + std::to_string(j) +
                            " undefined: head has " + std::to_string(L) +
                            " entries and no tail descriptor");
}

double ProductWeights::gamma_subset(const std::vector<int>& subset) const {
    double p = 1.0;
    for (int j : subset) p *= gamma(j);
    return p;
}

std::int64_t ProductWeights::max_dim() const {
    return has_tail() ? std::numeric_limits<std::int64_t>::max()
                      : static_cast<std::int64_t>(head.size());
}

std::vector<std::string> ProductWeights::violations() const {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < head.size(); ++i) {
        if (!(head[i] > 0.0 && head[i] <= 1.0)) {
            v.push_back("weight gamma_" + std::to_string(i + 1) + " = " +
                        format_g17(head[i]) + " not in (0,1]");
        }
        if (i > 0 && head[i] > head[i - 1])
            v.push_back("weights not non-increasing at position " + std::to_string(i + 1));
    }
    if (tail == Tail::polynomial) {
        if (tail_param < 0.0) v.push_back("polynomial weight tail needs a >= 0");
        if (!head.empty()) {
            const double first_tail =
                std::pow(static_cast<double>(head.size() + 1), -tail_param);
            if (first_tail > head.back())
                v.push_back("weights not non-increasing at head/tail junction");
        }
    } else if (tail == Tail::geometric) {
        if (!(tail_param > 0.0 && tail_param <= 1.0))
            v.push_back("geometric weight tail needs q in (0,1]");
    }
    if (head.empty() && tail == Tail::none) v.push_back("weights empty");
    return v;
}

int ReductionSchedule::w(std::int64_t j) const {
    const auto L = static_cast<std::int64_t>(head.size());
    if (j <= 0) throw std::out_of_range("reduction index must be positive");
    if (j <= L) return head[static_cast<std::size_t>(j - 1)];
    switch (tail) {
        case Tail::constant:
            return head.back();
        case Tail::linear: {
            const std::int64_t val = head.back() + tail_step * (j - L);
            if (val > std::numeric_limits<int>::max()) return std::numeric_limits<int>::max();
            return static_cast<int>(val);
        }
        case Tail::none:
            break;
    }
    throw std::out_of_range("reduction exponent w_" + std::to_string(j) +
                            " undefined: head has " + std::to_string(L) +
                            " entries and no tail descriptor");
}

std::int64_t ReductionSchedule::max_dim() const {
    return has_tail() ? std::numeric_limits<std::int64_t>::max()
                      : static_cast<std::int64_t>(head.size());
}

std::int64_t ReductionSchedule::threshold_t(int m, std::int64_t s) const {
    std::int64_t t = 0;
    for (std::int64_t j = 1; j <= s; ++j) {
        if (w(j) < m)
            t = j;
        else
            break;  // non-decreasing: once w_j >= m it stays there
    }
    return t;
}

ReductionSchedule ReductionSchedule::zero() {
    ReductionSchedule r;
    r.head = {0};
    r.tail = Tail::constant;
    return r;
}

std::vector<std::string> ReductionSchedule::violations() const {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < head.size(); ++i) {
        if (head[i] < 0)
            v.push_back("reduction exponent w_" + std::to_string(i + 1) + " negative");
        if (i > 0 && head[i] < head[i - 1])
            v.push_back("reduction exponents not non-decreasing at position " +
                        std::to_string(i + 1));
    }
    if (head.empty()) v.push_back("reduction schedule empty");
    if (tail == Tail::linear && tail_step < 0)
        v.push_back("linear reduction tail needs step >= 0");
    return v;
}

Instance validate_instance(const LatticeConfig& config, const ProductWeights& weights,
                           const ReductionSchedule& schedule, int dims) {
    std::vector<std::string> v = config.violations();
    for (auto& s : weights.violations()) v.push_back(s);
    for (auto& s : schedule.violations()) v.push_back(s);
    if (dims < 1) v.push_back("dims must be >= 1");
    if (dims >= 1 && weights.max_dim() < dims)
        v.push_back("weights define only " + std::to_string(weights.max_dim()) +
                    " dimensions (need " + std::to_string(dims) +
                    "); add a +poly or +geo tail or extend the list");
    if (dims >= 1 && schedule.max_dim() < dims)
        v.push_back("reduction schedule defines only " + std::to_string(schedule.max_dim()) +
                    " dimensions (need " + std::to_string(dims) +
                    "); add a +const or +linear tail or extend the list");
    if (!v.empty()) {
        std::string msg = "invalid instance:";
        for (auto& s : v) msg += "\n  - " + s;
        throw ValidationError(msg);
    }
    return Instance{config, weights, schedule, dims};
}

GeneratingVector GeneratingVector::make(
    const LatticeConfig& config, const std::vector<std::pair<int, std::int64_t>>& wz) {
    GeneratingVector g;
    g.config = config;
    g.components.reserve(wz.size());
    for (auto& [w, z] : wz) {
        VectorComponent comp;
        comp.w = w;
        comp.z = z;
        comp.c = pow_mod(config.b, w, config.n) % config.n * z % config.n;
        g.components.push_back(comp);
    }
    auto v = g.violations();
    if (!v.empty()) {
        std::string msg = "invalid generating vector:";
        for (auto& s : v) msg += "\n  - " + s;
        throw ValidationError(msg);
    }
    return g;
}

std::vector<std::string> GeneratingVector::violations() const {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& comp = components[i];
        const std::string tag = "component " + std::to_string(i + 1);
        if (comp.w < 0) v.push_back(tag + ": negative reduction exponent");
        if (comp.w >= config.m) {
            if (comp.z != 1) v.push_back(tag + ": z must be 1 when w >= m");
        } else {
            const auto bound = checked_pow(config.b, config.m - comp.w);
            if (!bound || comp.z < 1 || comp.z >= *bound)
                v.push_back(tag + ": z out of the reduced range [1, b^(m-w))");
            else if (comp.z % config.b == 0)
                v.push_back(tag + ": z shares the factor b with N");
        }
        const std::int64_t expect =
            pow_mod(config.b, comp.w, config.n) % config.n * comp.z % config.n;
        if (comp.c != expect) v.push_back(tag + ": cached c != b^w z mod N");
    }
    return v;
}

std::vector<double> PointSet::row(std::int64_t k) const {
    return std::vector<double>(data.begin() + static_cast<std::ptrdiff_t>(k) * dims,
                               data.begin() + static_cast<std::ptrdiff_t>(k + 1) * dims);
}

PointSet PointSet::project(const std::vector<int>& subset) const {
    PointSet p;
    p.n = n;
    p.dims = static_cast<int>(subset.size());
    p.data.resize(static_cast<std::size_t>(n) * subset.size());
    for (std::int64_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < subset.size(); ++c)
            p.data[static_cast<std::size_t>(k) * subset.size() + c] = at(k, subset[c]);
    return p;
}

PointSet lattice_points(const LatticeConfig& config, const GeneratingVector& z) {
    const std::int64_t n = config.n;
    const int s = z.dims();
    PointSet p;
    p.n = n;
    p.dims = s;
    p.data.resize(static_cast<std::size_t>(n) * s);
    std::vector<std::int64_t> idx(static_cast<std::size_t>(s), 0);
    for (std::int64_t k = 0; k < n; ++k) {
        for (int j = 0; j < s; ++j) {
            p.data[static_cast<std::size_t>(k) * s + j] =
                static_cast<double>(idx[static_cast<std::size_t>(j)]) / static_cast<double>(n);
            idx[static_cast<std::size_t>(j)] += z.components[static_cast<std::size_t>(j)].c;
            if (idx[static_cast<std::size_t>(j)] >= n) idx[static_cast<std::size_t>(j)] -= n;
        }
    }
    return p;
}

std::int64_t point_numerator(const LatticeConfig& config, const GeneratingVector& z,
                             std::int64_t k, int j) {
    const std::int64_t c = z.components[static_cast<std::size_t>(j)].c;
    return static_cast<std::int64_t>(static_cast<__int128>(k) * c % config.n);
}

}  // namespace latticeforge
