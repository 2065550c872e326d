#include "latticeforge/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "latticeforge/quality.hpp"

namespace latticeforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_int_double(std::int64_t b, std::int64_t e) {
    return std::pow(static_cast<double>(b), static_cast<double>(e));
}

}  // namespace

double BoundReport::component(const std::string& name) const {
    for (const auto& [k, v] : components)
        if (k == name) return v;
    throw std::out_of_range("bound report has no component '" + name + "'");
}

double discrepancy_first_term(const LatticeConfig& config, const ProductWeights& weights,
                              int s, FirstTermForm form) {
    const double n = static_cast<double>(config.n);
    if (form == FirstTermForm::as_printed) {
        double prod = 1.0;
        for (int j = 1; j <= s; ++j) prod *= 1.0 + weights.gamma(j) / n;
        return prod;
    }
    double beta_prod = 1.0;
    double shrunk_prod = 1.0;
    for (int j = 1; j <= s; ++j) {
        beta_prod *= weights.beta(j);
        shrunk_prod *= 1.0 + weights.gamma(j) * (1.0 - 1.0 / n);
    }
    return beta_prod - shrunk_prod;
}

BoundReport mean_bound(const Instance& instance, FirstTermForm form) {
    const LatticeConfig& cfg = instance.config;
    if (cfg.m < 5) throw ValidationError("mean bound requires m >= 5");
    const int s = instance.dims;
    const double n = static_cast<double>(cfg.n);
    const double sn = s_n(cfg.n);

    double prod_all = 1.0;   // prod (beta_j + gamma_j S_N)
    double beta_prod = 1.0;  // prod beta_j
    for (int j = 1; j <= s; ++j) {
        prod_all *= instance.weights.beta(j) + instance.weights.gamma(j) * sn;
        beta_prod *= instance.weights.beta(j);
    }

    KahanSum psum;
    for (int p = 0; p < cfg.m; ++p) {
        double prod = 1.0;
        for (int j = 1; j <= s; ++j) {
            if (instance.schedule.w(j) >= cfg.m - p)
                prod *= instance.weights.beta(j) + instance.weights.gamma(j) * sn;
            else
                prod *= instance.weights.beta(j);
        }
        psum.add(pow_int_double(cfg.b, cfg.m - p - 1) * static_cast<double>(cfg.b - 1) * prod);
    }

    const double r_mean_bound = prod_all / n + psum.value() / n - beta_prod;
    const double first = discrepancy_first_term(cfg, instance.weights, s, form);

    BoundReport report;
    report.kind = BoundKind::mean;
    report.value = first + 0.5 * r_mean_bound;
    report.components = {{"first_term", first}, {"r_mean_half", 0.5 * r_mean_bound}};
    report.assumptions = {{"m_ge_5", cfg.m >= 5},
                          {"weight_tail_available", instance.weights.has_tail()},
                          {"form_standard", form == FirstTermForm::standard}};
    return report;
}

double mean_r_bruteforce(const Instance& instance) {
    const int s = instance.dims;
    std::vector<SearchSpace> spaces;
    double count = 1.0;
    for (int d = 1; d <= s; ++d) {
        spaces.push_back(search_space(instance.config, instance.schedule.w(d)));
        count *= static_cast<double>(spaces.back().size());
        if (count > 1e6)
            throw ScaleLimitError("brute-force mean limited to 1e6 vectors");
    }
    const KernelTable kernel = phi_table(instance.config);

    std::vector<std::size_t> pick(static_cast<std::size_t>(s), 0);
    KahanSum total;
    std::int64_t vectors = 0;
    for (;;) {
        std::vector<std::pair<int, std::int64_t>> wz;
        for (int d = 0; d < s; ++d)
            wz.emplace_back(spaces[static_cast<std::size_t>(d)].w,
                            spaces[static_cast<std::size_t>(d)]
                                .members[pick[static_cast<std::size_t>(d)]]);
        const GeneratingVector z = GeneratingVector::make(instance.config, wz);
        total.add(r_weighted_product(instance.config, instance.weights, z, s, kernel));
        ++vectors;
        int d = s - 1;
        while (d >= 0) {
            auto& p = pick[static_cast<std::size_t>(d)];
            if (++p < spaces[static_cast<std::size_t>(d)].members.size()) break;
            p = 0;
            --d;
        }
        if (d < 0) break;
    }
    return total.value() / static_cast<double>(vectors);
}

BoundReport cbc_bound(const Instance& instance, int d, bool use_log_bound) {
    const LatticeConfig& cfg = instance.config;
    const double sn =
        use_log_bound ? 4.0 * std::log(static_cast<double>(cfg.n)) : s_n(cfg.n);
    double prod = 1.0;
    for (int j = 1; j <= d; ++j) {
        const int capped = std::min(instance.schedule.w(j), cfg.m);
        const double bmin = static_cast<double>(*checked_pow(cfg.b, capped));
        prod *= instance.weights.beta(j) +
                (1.0 + 2.0 * bmin) * instance.weights.gamma(j) * sn;
    }
    BoundReport report;
    report.kind = BoundKind::cbc;
    report.value = prod / static_cast<double>(cfg.n);
    report.components = {{"r_bound", report.value}};
    report.assumptions = {{"harmonic_sum_majorized_by_4logN", use_log_bound}};
    return report;
}

BoundReport discrepancy_bound_for_vector(const Instance& instance, const GeneratingVector* z,
                                         FirstTermForm form) {
    const double first = discrepancy_first_term(instance.config, instance.weights,
                                                instance.dims, form);
    double r_half = 0.0;
    if (z != nullptr) {
        const KernelTable kernel = phi_table(instance.config);
        r_half = 0.5 * r_weighted_product(instance.config, instance.weights, *z,
                                          instance.dims, kernel);
    } else {
        r_half = 0.5 * cbc_bound(instance, instance.dims).value;
    }
    BoundReport report;
    report.kind = BoundKind::discrepancy;
    report.value = first + r_half;
    report.components = {{"first_term", first}, {"r_half", r_half}};
    report.assumptions = {{"vector_supplied", z != nullptr},
                          {"form_standard", form == FirstTermForm::standard}};
    return report;
}

bool SigmaBracket::divergent() const { return std::isinf(upper); }

SigmaBracket sigma_d(const ProductWeights& weights, const ReductionSchedule& schedule,
                     std::int64_t b, std::int64_t d) {
    if (!weights.has_tail() || !schedule.has_tail())
        throw ValidationError(
            "sigma_d needs analytic weight and reduction tails (no-tail-descriptor)");

    const auto lg = static_cast<std::int64_t>(weights.head.size());
    const auto lw = static_cast<std::int64_t>(schedule.head.size());
    const std::int64_t j0 = std::max({d, lg, lw});

    KahanSum explicit_sum;
    for (std::int64_t j = d + 1; j <= j0; ++j)
        explicit_sum.add(weights.gamma(j) * pow_int_double(b, schedule.w(j)));

    // Remainder over j > j0: both sequences are in their analytic tail regime.
    double lo = 0.0, hi = 0.0;
    const bool w_linear =
        schedule.tail == ReductionSchedule::Tail::linear && schedule.tail_step > 0;
    const int w_step = w_linear ? schedule.tail_step : 0;

    if (weights.tail == ProductWeights::Tail::geometric) {
        const double q = weights.tail_param;
        const double ratio = q * pow_int_double(b, w_step);
        const double first =
            weights.gamma(j0 + 1) * pow_int_double(b, schedule.w(j0 + 1));
        if (ratio >= 1.0) {
            lo = hi = kInf;
        } else {
            lo = hi = first / (1.0 - ratio);
        }
    } else {  // polynomial weight tail
        const double a = weights.tail_param;
        if (w_linear || a <= 1.0) {
            lo = hi = kInf;  // j^-a b^{kj} diverges; so does j^-a with a <= 1
        } else {
            const double scale = pow_int_double(b, schedule.w(j0 + 1));
            KahanSum ext;
            const std::int64_t j1 = j0 + 20000;
            for (std::int64_t j = j0 + 1; j <= j1; ++j)
                ext.add(std::pow(static_cast<double>(j), -a));
            // integral enclosure of the remaining zeta tail from M = j1 + 1
            const double mm = static_cast<double>(j1 + 1);
            const double integral = std::pow(mm, 1.0 - a) / (a - 1.0);
            lo = scale * (ext.value() + integral);
            hi = scale * (ext.value() + integral + std::pow(mm, -a));
        }
    }

    SigmaBracket out;
    out.lower = 13.0 * (explicit_sum.value() + lo);
    out.upper = 13.0 * (explicit_sum.value() + hi);
    return out;
}

TractabilityReport n_star_estimate(const ProductWeights& weights,
                                   const ReductionSchedule& schedule, std::int64_t b, int s,
                                   double epsilon, double delta, int m_max,
                                   bool use_log_bound) {
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
    TractabilityReport report;
    report.delta = delta;
    report.epsilon = epsilon;

    const SigmaBracket s0 = sigma_d(weights, schedule, b, 0);
    report.sigma_0 = s0.upper;

    if (!s0.divergent()) {
        const double threshold = delta / (s0.upper + 1.0);
        std::int64_t d = 0;
        SigmaBracket sd = s0;
        while (sd.upper > threshold && d < 1000000) {
            if (report.sigma_trace.size() < 200) report.sigma_trace.emplace_back(d, sd.upper);
            ++d;
            sd = sigma_d(weights, schedule, b, d);
        }
        if (sd.upper <= threshold) {
            report.sigma_trace.emplace_back(d, sd.upper);
            report.asymptotic_available = true;
            report.d_star = d;
            report.log_c_gamma_delta =
                static_cast<double>(d) * std::log1p(1.0 / sd.lower);
            report.c_gamma_delta = std::exp(report.log_c_gamma_delta);
            const double log_n = (report.log_c_gamma_delta + std::log(1.0 / epsilon)) /
                                 ((1.0 - delta) * std::log(static_cast<double>(b)));
            std::int64_t e = static_cast<std::int64_t>(std::ceil(log_n - 1e-12));
            e = std::max<std::int64_t>(e, 0);
            report.n_star_asymptotic_exponent = e;
            report.n_star_asymptotic =
                std::exp(static_cast<double>(e) * std::log(static_cast<double>(b)));
        }
    }

    if (epsilon >= 1.0) {
        // The discrepancy never exceeds 1, so a single point already suffices;
        // the closed-form bound cannot certify this on its own.
        report.constructive_found = true;
        report.trivial_epsilon = true;
        report.constructive_m = 0;
        report.n_star_constructive = 1;
        report.constructive_bound_value = 1.0;
        return report;
    }

    for (int m = 1; m <= m_max; ++m) {
        const LatticeConfig cfg(b, m);
        if (cfg.n == 0) break;  // overflow
        const Instance inst = validate_instance(cfg, weights, schedule, s);
        const double bound = discrepancy_first_term(cfg, weights, s) +
                             0.5 * cbc_bound(inst, s, use_log_bound).value;
        if (bound <= epsilon) {
            report.constructive_found = true;
            report.constructive_m = m;
            report.n_star_constructive = cfg.n;
            report.constructive_bound_value = bound;
            break;
        }
    }
    return report;
}

}  // namespace latticeforge
