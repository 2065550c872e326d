// latticeforge command-line front end: construction, evaluation, bounds,
// brute-force oracles, operation-count benchmarks, and point-set export.
//
// Exit codes: 0 success, 1 validation error, 2 scale limit, 3 property-check
// failure.

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "latticeforge/latticeforge.hpp"

namespace lf = latticeforge;

namespace {

struct InstanceFlags {
    std::string file;
    std::int64_t base = 0;
    std::int64_t m = 0;
    std::int64_t dims = 0;
    std::string weights;
    std::string reduction;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags* flags) {
    cmd->add_option("--instance", flags->file, "instance file (keys base/m/dims/weights/reduction)");
    cmd->add_option("--base", flags->base, "prime base b");
    cmd->add_option("--m", flags->m, "exponent m, N = b^m");
    cmd->add_option("--dims", flags->dims, "number of dimensions s");
    cmd->add_option("--weights", flags->weights, "weights, e.g. list:1,0.5 or list:0.5+geo:0.5");
    cmd->add_option("--reduction", flags->reduction, "reduction schedule, e.g. list:0,1+const");
}

lf::Instance resolve_instance(const InstanceFlags& flags) {
    if (!flags.file.empty()) return lf::load_instance_file(flags.file);
    if (flags.base == 0 || flags.m == 0 || flags.dims == 0 || flags.weights.empty() ||
        flags.reduction.empty())
        throw lf::ValidationError(
            "need --instance FILE or all of --base --m --dims --weights --reduction");
    return lf::validate_instance(lf::LatticeConfig(flags.base, static_cast<int>(flags.m)),
                                 lf::parse_weights(flags.weights),
                                 lf::parse_reduction(flags.reduction),
                                 static_cast<int>(flags.dims));
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        lf::write_text_file(out_path, content);
}

lf::CbcAlgorithm parse_algorithm(const std::string& name) {
    if (name == "reduced") return lf::CbcAlgorithm::reduced;
    if (name == "fast") return lf::CbcAlgorithm::fast;
    if (name == "standard") return lf::CbcAlgorithm::standard;
    if (name == "exhaustive") return lf::CbcAlgorithm::exhaustive;
    throw lf::ValidationError("unknown algorithm '" + name + "'");
}

lf::PhiMethod parse_phi(const std::string& name) {
    if (name == "direct") return lf::PhiMethod::direct;
    if (name == "fast") return lf::PhiMethod::fft;
    throw lf::ValidationError("unknown phi method '" + name + "'");
}

lf::FirstTermForm parse_form(const std::string& name) {
    if (name == "standard") return lf::FirstTermForm::standard;
    if (name == "as-printed") return lf::FirstTermForm::as_printed;
    throw lf::ValidationError("unknown first-term form '" + name + "'");
}

int run_construct(const InstanceFlags& flags, const std::string& algorithm,
                  const std::string& phi, bool strict_paper, const std::string& out_path) {
    const lf::Instance instance = resolve_instance(flags);
    lf::CbcOptions options;
    options.phi_method = parse_phi(phi);
    options.strict_paper = strict_paper;
    const auto result = lf::construct(instance, parse_algorithm(algorithm), options);
    emit(lf::format_vector_file(instance, result), out_path);
    return 0;
}

int run_evaluate(const std::string& vector_path, const std::string& form) {
    const lf::VectorFile file = lf::load_vector_file(vector_path);
    const lf::KernelTable kernel = lf::phi_table(file.instance.config);
    double r = 0.0;
    if (form == "product") {
        r = lf::r_weighted_product(file.instance.config, file.instance.weights, file.vector,
                                   file.instance.dims, kernel);
    } else if (form == "subset") {
        r = lf::r_weighted(file.instance.config, file.instance.weights, file.vector,
                           file.instance.dims, kernel);
    } else {
        throw lf::ValidationError("unknown form '" + form + "' (want product or subset)");
    }
    std::cout << lf::format_g17(r) << "\n";
    return 0;
}

int run_bound(const InstanceFlags& flags, const std::string& which, const std::string& form,
              std::int64_t d, const std::string& vector_path, bool log_bound, double epsilon,
              double delta, int m_max, const std::string& csv_path) {
    const lf::Instance instance = resolve_instance(flags);
    if (which == "tractability") {
        const auto report =
            lf::n_star_estimate(instance.weights, instance.schedule, instance.config.b,
                                instance.dims, epsilon, delta, m_max, log_bound);
        std::cout << lf::format_tractability_text(report);
        return 0;
    }
    lf::BoundReport report;
    if (which == "mean") {
        report = lf::mean_bound(instance, parse_form(form));
    } else if (which == "cbc") {
        report = lf::cbc_bound(instance, d > 0 ? static_cast<int>(d) : instance.dims,
                               log_bound);
    } else if (which == "discrepancy") {
        if (!vector_path.empty()) {
            const lf::VectorFile file = lf::load_vector_file(vector_path);
            report = lf::discrepancy_bound_for_vector(file.instance, &file.vector,
                                                      parse_form(form));
        } else {
            report = lf::discrepancy_bound_for_vector(instance, nullptr, parse_form(form));
        }
    } else {
        throw lf::ValidationError("unknown bound '" + which +
                                  "' (want mean, cbc, discrepancy or tractability)");
    }
    std::cout << lf::format_bound_text(report);
    if (!csv_path.empty()) lf::write_text_file(csv_path, lf::format_bound_csv(report));
    return 0;
}

int run_points(const std::string& vector_path, const std::string& out_path) {
    const lf::VectorFile file = lf::load_vector_file(vector_path);
    std::ostringstream out;
    lf::write_points_csv(file.instance.config, file.vector, out);
    emit(out.str(), out_path);
    return 0;
}

int run_phi_table(std::int64_t base, std::int64_t m, const std::string& method,
                  const std::string& out_path) {
    const lf::LatticeConfig config(base, static_cast<int>(m));
    auto violations = config.violations();
    if (!violations.empty()) throw lf::ValidationError(violations.front());
    const lf::KernelTable table = lf::phi_table(config, parse_phi(method));
    std::ostringstream out;
    lf::write_kernel_csv(table, out);
    emit(out.str(), out_path);
    return 0;
}

// ---- oracle checks ----------------------------------------------------

int check_t_closed_form(std::int64_t base, std::int64_t m) {
    const lf::LatticeConfig config(base, static_cast<int>(m));
    for (int w = 0; w <= config.m + 2; ++w) {
        for (std::int64_t k = 1; k < config.n; ++k) {
            const double direct = lf::t_direct(config, w, k);
            const double closed = lf::t_closed_form(config, w, k);
            if (std::abs(direct - closed) >= 1e-9) {
                std::cout << "FAIL t-closed-form: replay with --base " << base << " --m " << m
                          << "; w=" << w << " k=" << k << " direct=" << lf::format_g17(direct)
                          << " closed=" << lf::format_g17(closed) << "\n";
                return 3;
            }
        }
    }
    std::cout << "ok t-closed-form: base=" << base << " m=" << m << " (all w <= m+2, all k)\n";
    return 0;
}

int check_lemma34(std::int64_t base, std::int64_t m) {
    const lf::LatticeConfig config(base, static_cast<int>(m));
    const double sn = lf::s_n(config.n);
    for (int w = 0; w <= config.m + 2; ++w) {
        const double size = static_cast<double>(lf::search_space_size(config, w));
        lf::KahanSum sum;
        for (std::int64_t k = 1; k < config.n; ++k)
            sum.add(std::abs(lf::t_closed_form(config, w, k)) / size);
        const double cap =
            2.0 * static_cast<double>(*lf::checked_pow(config.b, std::min(w, config.m))) * sn;
        if (sum.value() > cap * (1.0 + 1e-12) + 1e-12) {
            std::cout << "FAIL lemma34: replay with --base " << base << " --m " << m
                      << "; w=" << w << " sum=" << lf::format_g17(sum.value())
                      << " cap=" << lf::format_g17(cap) << "\n";
            return 3;
        }
    }
    std::cout << "ok lemma34: base=" << base << " m=" << m << "\n";
    return 0;
}

int check_cbc_optimality(const lf::Instance& instance) {
    const lf::KernelTable kernel = lf::phi_table(instance.config);
    const auto result = lf::reduced_cbc(instance);
    lf::GeneratingVector prefix;
    prefix.config = instance.config;
    for (int d = 1; d <= instance.dims; ++d) {
        const std::int64_t best = lf::exhaustive_best(instance, d, prefix, kernel);
        const std::int64_t chosen =
            result.vector.components[static_cast<std::size_t>(d - 1)].z;
        if (best != chosen) {
            std::cout << "FAIL cbc-optimality at step d=" << d << ": chose z=" << chosen
                      << " but exhaustive scan gives z=" << best << "\n"
                      << lf::format_instance(instance);
            return 3;
        }
        prefix.components.push_back(result.vector.components[static_cast<std::size_t>(d - 1)]);
    }
    std::cout << "ok cbc-optimality: every step matches the exhaustive scan\n";
    return 0;
}

int check_mean(const lf::Instance& instance) {
    const auto report = lf::mean_bound(instance);
    const double bracket = 2.0 * report.component("r_mean_half");
    const double mean = lf::mean_r_bruteforce(instance);
    if (mean > bracket * (1.0 + 1e-12) + 1e-12) {
        std::cout << "FAIL mean: brute-force mean " << lf::format_g17(mean)
                  << " exceeds the closed-form mean bound " << lf::format_g17(bracket) << "\n"
                  << lf::format_instance(instance);
        return 3;
    }
    std::cout << "ok mean: " << lf::format_g17(mean) << " <= " << lf::format_g17(bracket)
              << "\n";
    return 0;
}

int check_discrepancy(const lf::Instance& instance, const std::string& csv_path) {
    const auto result = lf::reduced_cbc(instance);
    const auto points = lf::lattice_points(instance.config, result.vector);
    const auto exact = lf::weighted_star_discrepancy_exact(points, instance.weights);
    const auto bound = lf::discrepancy_bound_for_vector(instance, &result.vector);
    if (exact.value > bound.value + 1e-12) {
        std::cout << "FAIL discrepancy: exact " << lf::format_g17(exact.value) << " > bound "
                  << lf::format_g17(bound.value) << "\n"
                  << lf::format_instance(instance);
        return 3;
    }
    std::cout << "ok discrepancy: exact " << lf::format_g17(exact.value) << " <= bound "
              << lf::format_g17(bound.value) << "\n";
    if (!csv_path.empty()) {
        // append to the running report stream; the header only once
        std::string existing;
        try {
            existing = lf::read_text_file(csv_path);
        } catch (const std::exception&) {
        }
        std::string csv = existing;
        if (existing.empty()) csv = "base,m,dims,exact_weighted_dstar,bound\n";
        csv += std::to_string(instance.config.b) + "," + std::to_string(instance.config.m) +
               "," + std::to_string(instance.dims) + "," + lf::format_g17(exact.value) + "," +
               lf::format_g17(bound.value) + "\n";
        lf::write_text_file(csv_path, csv);
    }
    return 0;
}

int run_oracle(const InstanceFlags& flags, const std::string& check,
               const std::string& csv_path) {
    if (check == "t-closed-form" || check == "lemma34") {
        std::int64_t base = flags.base, m = flags.m;
        if (!flags.file.empty()) {
            const lf::Instance instance = lf::load_instance_file(flags.file);
            base = instance.config.b;
            m = instance.config.m;
        }
        if (base == 0 || m == 0)
            throw lf::ValidationError("check '" + check + "' needs --base and --m");
        return check == "t-closed-form" ? check_t_closed_form(base, m)
                                        : check_lemma34(base, m);
    }
    const lf::Instance instance = resolve_instance(flags);
    if (check == "cbc-optimality") return check_cbc_optimality(instance);
    if (check == "mean") return check_mean(instance);
    if (check == "discrepancy") return check_discrepancy(instance, csv_path);
    throw lf::ValidationError("unknown check '" + check + "'");
}

// ---- bench ------------------------------------------------------------

std::int64_t model_search_macs(const lf::Instance& instance, lf::CbcAlgorithm algorithm,
                               int d) {
    if (d == 1) return 0;
    const auto& cfg = instance.config;
    const int w = algorithm == lf::CbcAlgorithm::standard ? 0 : instance.schedule.w(d);
    if (w >= cfg.m) return 0;
    if (algorithm == lf::CbcAlgorithm::fast) {
        const int level = cfg.m - w;
        return *lf::checked_pow(cfg.b, 2 * level - 1) * (cfg.b - 1);
    }
    return lf::search_space_size(cfg, w) * cfg.n;
}

std::string bench_row(const std::string& algorithm, int m, int dim, const std::string& phase,
                      std::int64_t macs, std::int64_t model) {
    std::string row = algorithm + "," + std::to_string(m) + "," + std::to_string(dim) + "," +
                      phase + "," + std::to_string(macs) + "," + std::to_string(model) + ",";
    if (model > 0)
        row += lf::format_g17(static_cast<double>(macs) / static_cast<double>(model));
    return row + "\n";
}

int run_bench(const InstanceFlags& flags, const std::string& algorithms,
              const std::string& m_list, int repeat, const std::string& phi,
              const std::string& out_path) {
    const lf::Instance base = resolve_instance(flags);
    lf::CbcOptions options;
    options.phi_method = parse_phi(phi);

    std::vector<int> ms;
    if (m_list.empty()) {
        ms.push_back(base.config.m);
    } else {
        std::istringstream parts(m_list);
        std::string item;
        while (std::getline(parts, item, ',')) ms.push_back(std::stoi(item));
    }

    std::string csv = "algorithm,m,dim,phase,macs,model_macs,normalized\n";
    for (int m : ms) {
        const lf::Instance instance = lf::validate_instance(
            lf::LatticeConfig(base.config.b, m), base.weights, base.schedule, base.dims);
        std::istringstream alg_list(algorithms);
        std::string name;
        while (std::getline(alg_list, name, ',')) {
            const lf::CbcAlgorithm algorithm = parse_algorithm(name);
            lf::ConstructionResult result;
            double wall_total = 0.0;
            for (int rep = 0; rep < std::max(repeat, 1); ++rep) {
                lf::ConstructionResult run = lf::construct(instance, algorithm, options);
                if (rep > 0 && run.cost.total_macs() != result.cost.total_macs())
                    throw std::runtime_error("operation counts differ across repeats");
                result = std::move(run);
                wall_total += result.cost.phi_wall_ms;
                for (const auto& dim : result.cost.dims) wall_total += dim.wall_ms;
            }
            csv += bench_row(name, m, 0, "phi_table", result.cost.phi_macs, 0);
            for (int d = 1; d <= instance.dims; ++d) {
                const auto& dim = result.cost.dims[static_cast<std::size_t>(d - 1)];
                csv += bench_row(name, m, d, "search", dim.search_macs,
                                 model_search_macs(instance, algorithm, d));
                csv += bench_row(name, m, d, "partition", dim.partition_macs, 0);
                csv += bench_row(name, m, d, "eta_update", dim.eta_macs, instance.config.n);
            }
            csv += bench_row(name, m, 0, "total", result.cost.total_macs(), 0);
            // Wall time is machine-dependent; keep it out of the deterministic artifact.
            std::cerr << "# " << name << " m=" << m << " mean wall ms over "
                      << std::max(repeat, 1)
                      << " repeat(s): " << wall_total / std::max(repeat, 1) << "\n";
        }
    }
    emit(csv, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-1 lattice generating vectors via reduced CBC construction"};
    app.require_subcommand(1);

    InstanceFlags flags;

    auto* construct = app.add_subcommand("construct", "build a generating vector");
    add_instance_flags(construct, &flags);
    std::string algorithm = "fast", phi = "direct", out_path, form = "product";
    bool strict_paper = false;
    construct->add_option("--algorithm", algorithm, "reduced | fast | standard | exhaustive");
    construct->add_option("--phi", phi, "kernel table method: direct | fast");
    construct->add_flag("--strict-paper", strict_paper,
                        "apply the literal trailing overwrite z_t..z_s = 1");
    construct->add_option("--out", out_path, "output path (default stdout)");

    auto* evaluate = app.add_subcommand("evaluate", "merit of a stored vector");
    std::string vector_path;
    evaluate->add_option("--vector", vector_path, "vector file")->required();
    evaluate->add_option("--form", form, "product | subset");

    auto* bound = app.add_subcommand("bound", "closed-form bound reports");
    add_instance_flags(bound, &flags);
    std::string which = "cbc", bound_form = "standard", bound_vector, csv_path;
    std::int64_t bound_d = 0;
    bool log_bound = false;
    double epsilon = 0.25, delta = 0.5;
    int m_max = 20;
    bound->add_option("--which", which, "mean | cbc | discrepancy | tractability");
    bound->add_option("--form", bound_form, "first-term form: standard | as-printed");
    bound->add_option("--d", bound_d, "prefix length for the cbc bound (default dims)");
    bound->add_option("--vector", bound_vector, "vector file for the discrepancy bound");
    bound->add_flag("--log-bound", log_bound, "replace the harmonic sum by 4 log N");
    bound->add_option("--epsilon", epsilon, "target discrepancy for tractability");
    bound->add_option("--delta", delta, "exponent split in (0,1) for tractability");
    bound->add_option("--m-max", m_max, "constructive search limit");
    bound->add_option("--csv", csv_path, "also write the report as CSV");

    auto* oracle = app.add_subcommand("oracle", "brute-force property checks");
    add_instance_flags(oracle, &flags);
    std::string check, oracle_csv;
    oracle->add_option("--check", check,
                       "cbc-optimality | t-closed-form | lemma34 | mean | discrepancy")
        ->required();
    oracle->add_option("--csv", oracle_csv, "append machine-readable results");

    auto* bench = app.add_subcommand("bench", "operation-count benchmark");
    add_instance_flags(bench, &flags);
    std::string algorithms = "fast,standard", bench_phi = "fast", bench_out, m_list;
    int repeat = 1;
    bench->add_option("--algorithms", algorithms, "comma-separated algorithm list");
    bench->add_option("--m-list", m_list, "sweep these m values instead of the instance's m");
    bench->add_option("--repeat", repeat, "repetitions (counts must be identical)");
    bench->add_option("--phi", bench_phi, "kernel table method: direct | fast");
    bench->add_option("--out", bench_out, "CSV output path (default stdout)");

    auto* points = app.add_subcommand("points", "exact point-set CSV for a vector");
    std::string points_vector, points_out;
    points->add_option("--vector", points_vector, "vector file")->required();
    points->add_option("--out", points_out, "output path (default stdout)");

    auto* phi_cmd = app.add_subcommand("phi-table", "kernel table CSV export");
    std::int64_t phi_base = 2, phi_m = 1;
    std::string phi_method = "direct", phi_out;
    phi_cmd->add_option("--base", phi_base, "prime base b")->required();
    phi_cmd->add_option("--m", phi_m, "exponent m")->required();
    phi_cmd->add_option("--method", phi_method, "direct | fast");
    phi_cmd->add_option("--out", phi_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return run_construct(flags, algorithm, phi, strict_paper, out_path);
        if (evaluate->parsed()) return run_evaluate(vector_path, form);
        if (bound->parsed())
            return run_bound(flags, which, bound_form, bound_d, bound_vector, log_bound,
                             epsilon, delta, m_max, csv_path);
        if (oracle->parsed()) return run_oracle(flags, check, oracle_csv);
        if (bench->parsed())
            return run_bench(flags, algorithms, m_list, repeat, bench_phi, bench_out);
        if (points->parsed()) return run_points(points_vector, points_out);
        if (phi_cmd->parsed()) return run_phi_table(phi_base, phi_m, phi_method, phi_out);
    } catch (const lf::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lf::ScaleLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
