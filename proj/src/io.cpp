#include "latticeforge/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latticeforge {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse " + what + " '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse " + what + " '" + s + "'");
    }
}

}  // namespace

ProductWeights parse_weights(const std::string& text) {
    ProductWeights w;
    std::string spec = trim(text);
    std::string tail;
    if (const auto plus = spec.find('+'); plus != std::string::npos) {
        tail = spec.substr(plus + 1);
        spec = spec.substr(0, plus);
    }
    auto apply_tail = [&w](const std::string& t) {
        if (t.rfind("poly:", 0) == 0) {
            w.tail = ProductWeights::Tail::polynomial;
            w.tail_param = parse_double(t.substr(5), "polynomial weight exponent");
        } else if (t.rfind("geo:", 0) == 0) {
            w.tail = ProductWeights::Tail::geometric;
            w.tail_param = parse_double(t.substr(4), "geometric weight ratio");
        } else {
            throw ValidationError("unknown weight tail '" + t + "' (want poly:a or geo:q)");
        }
    };
    if (spec.rfind("list:", 0) == 0) {
        for (const auto& item : split(spec.substr(5), ','))
            w.head.push_back(parse_double(trim(item), "weight"));
        if (!tail.empty()) apply_tail(tail);
    } else if (spec.rfind("poly:", 0) == 0 || spec.rfind("geo:", 0) == 0) {
        if (!tail.empty())
            throw ValidationError("tail suffix only applies to list: weights");
        apply_tail(spec);
    } else {
        throw ValidationError("unknown weight spec '" + spec +
                              "' (want list:..., poly:a or geo:q)");
    }
    return w;
}

std::string format_weights(const ProductWeights& w) {
    std::string out;
    if (!w.head.empty()) {
        out = "list:";
        for (std::size_t i = 0; i < w.head.size(); ++i) {
            if (i) out += ',';
            out += format_g17(w.head[i]);
        }
        if (w.tail == ProductWeights::Tail::polynomial)
            out += "+poly:" + format_g17(w.tail_param);
        else if (w.tail == ProductWeights::Tail::geometric)
            out += "+geo:" + format_g17(w.tail_param);
        return out;
    }
    if (w.tail == ProductWeights::Tail::polynomial) return "poly:" + format_g17(w.tail_param);
    if (w.tail == ProductWeights::Tail::geometric) return "geo:" + format_g17(w.tail_param);
    return "list:";
}

ReductionSchedule parse_reduction(const std::string& text) {
    ReductionSchedule r;
    std::string spec = trim(text);
    std::string tail;
    if (const auto plus = spec.find('+'); plus != std::string::npos) {
        tail = spec.substr(plus + 1);
        spec = spec.substr(0, plus);
    }
    if (spec.rfind("list:", 0) != 0)
        throw ValidationError("unknown reduction spec '" + spec + "' (want list:...)");
    for (const auto& item : split(spec.substr(5), ','))
        r.head.push_back(static_cast<int>(parse_int(trim(item), "reduction exponent")));
    if (!tail.empty()) {
        if (tail == "const") {
            r.tail = ReductionSchedule::Tail::constant;
        } else if (tail.rfind("linear:", 0) == 0) {
            r.tail = ReductionSchedule::Tail::linear;
            r.tail_step = static_cast<int>(parse_int(tail.substr(7), "linear tail step"));
        } else {
            throw ValidationError("unknown reduction tail '" + tail +
                                  "' (want const or linear:k)");
        }
    }
    return r;
}

std::string format_reduction(const ReductionSchedule& r) {
    std::string out = "list:";
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(r.head[i]);
    }
    if (r.tail == ReductionSchedule::Tail::constant) out += "+const";
    if (r.tail == ReductionSchedule::Tail::linear)
        out += "+linear:" + std::to_string(r.tail_step);
    return out;
}

Instance parse_instance_text(const std::string& text) {
    std::int64_t base = 0;
    std::int64_t m = 0;
    std::int64_t dims = 0;
    ProductWeights weights;
    ReductionSchedule schedule;
    bool saw_base = false, saw_m = false, saw_dims = false, saw_w = false, saw_r = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto space = line.find_first_of(" \t");
        if (space == std::string::npos)
            throw ValidationError("malformed instance line '" + line + "'");
        const std::string key = line.substr(0, space);
        const std::string value = trim(line.substr(space + 1));
        if (key == "base") {
            base = parse_int(value, "base");
            saw_base = true;
        } else if (key == "m") {
            m = parse_int(value, "m");
            saw_m = true;
        } else if (key == "dims") {
            dims = parse_int(value, "dims");
            saw_dims = true;
        } else if (key == "weights") {
            weights = parse_weights(value);
            saw_w = true;
        } else if (key == "reduction") {
            schedule = parse_reduction(value);
            saw_r = true;
        } else {
            throw ValidationError("unknown instance key '" + key + "'");
        }
    }
    std::vector<std::string> missing;
    if (!saw_base) missing.push_back("base");
    if (!saw_m) missing.push_back("m");
    if (!saw_dims) missing.push_back("dims");
    if (!saw_w) missing.push_back("weights");
    if (!saw_r) missing.push_back("reduction");
    if (!missing.empty()) {
        std::string msg = "instance file missing keys:";
        for (auto& k : missing) msg += " " + k;
        throw ValidationError(msg);
    }
    return validate_instance(LatticeConfig(base, static_cast<int>(m)), weights, schedule,
                             static_cast<int>(dims));
}

std::string format_instance(const Instance& instance) {
    std::string out;
    out += "base " + std::to_string(instance.config.b) + "\n";
    out += "m " + std::to_string(instance.config.m) + "\n";
    out += "dims " + std::to_string(instance.dims) + "\n";
    out += "weights " + format_weights(instance.weights) + "\n";
    out += "reduction " + format_reduction(instance.schedule) + "\n";
    return out;
}

Instance load_instance_file(const std::string& path) {
    return parse_instance_text(read_text_file(path));
}

std::string format_vector_file(const Instance& instance, const ConstructionResult& result) {
    std::string out = format_instance(instance);
    for (int j = 1; j <= result.vector.dims(); ++j) {
        const auto& comp = result.vector.components[static_cast<std::size_t>(j - 1)];
        out += std::to_string(j) + " " + std::to_string(comp.w) + " " +
               std::to_string(comp.z) + " " + std::to_string(comp.c) + "\n";
    }
    for (std::size_t d = 0; d < result.step_r.size(); ++d)
        out += "R " + std::to_string(d + 1) + " " + format_g17(result.step_r[d]) + "\n";
    return out;
}

VectorFile parse_vector_file(const std::string& text) {
    std::string header;
    std::vector<std::pair<int, std::int64_t>> wz;
    std::vector<std::int64_t> cs;
    std::vector<double> rs;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == 'R') {
            std::istringstream ls(t.substr(1));
            std::int64_t d = 0;
            double value = 0.0;
            if (!(ls >> d >> value)) throw ValidationError("malformed R line '" + t + "'");
            if (d != static_cast<std::int64_t>(rs.size()) + 1)
                throw ValidationError("R lines out of order");
            rs.push_back(value);
        } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
            std::istringstream ls(t);
            std::int64_t j = 0, w = 0, z = 0, c = 0;
            if (!(ls >> j >> w >> z >> c))
                throw ValidationError("malformed component line '" + t + "'");
            if (j != static_cast<std::int64_t>(wz.size()) + 1)
                throw ValidationError("component lines out of order");
            wz.emplace_back(static_cast<int>(w), z);
            cs.push_back(c);
        } else {
            header += t + "\n";
        }
    }
    VectorFile file;
    file.instance = parse_instance_text(header);
    if (static_cast<int>(wz.size()) != file.instance.dims)
        throw ValidationError("vector file has " + std::to_string(wz.size()) +
                              " components but dims = " +
                              std::to_string(file.instance.dims));
    for (int j = 1; j <= file.instance.dims; ++j) {
        if (wz[static_cast<std::size_t>(j - 1)].first != file.instance.schedule.w(j))
            throw ValidationError("component " + std::to_string(j) +
                                  " disagrees with the reduction schedule");
    }
    file.vector = GeneratingVector::make(file.instance.config, wz);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (file.vector.components[i].c != cs[i])
            throw ValidationError("component " + std::to_string(i + 1) +
                                  ": stored c disagrees with b^w z mod N");
    }
    file.step_r = rs;
    return file;
}

VectorFile load_vector_file(const std::string& path) {
    return parse_vector_file(read_text_file(path));
}

void write_points_csv(const LatticeConfig& config, const GeneratingVector& z,
                      std::ostream& out) {
    const std::int64_t n = config.n;
    for (std::int64_t k = 0; k < n; ++k) {
        for (int j = 0; j < z.dims(); ++j) {
            if (j) out << ',';
            out << point_numerator(config, z, k, j) << '/' << n;
        }
        out << '\n';
    }
}

namespace {

const char* kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::mean: return "mean";
        case BoundKind::cbc: return "cbc";
        case BoundKind::discrepancy: return "discrepancy";
    }
    return "?";
}

}  // namespace

std::string format_bound_text(const BoundReport& report) {
    std::string out = "kind " + std::string(kind_name(report.kind)) + "\n";
    out += "value " + format_g17(report.value) + "\n";
    for (const auto& [k, v] : report.components)
        out += "component." + k + " " + format_g17(v) + "\n";
    for (const auto& [k, v] : report.assumptions)
        out += "assumption." + k + " " + (v ? std::string("true") : std::string("false")) + "\n";
    return out;
}

std::string format_bound_csv(const BoundReport& report) {
    const std::string kind = kind_name(report.kind);
    std::string out = "kind,key,value\n";
    out += kind + ",value," + format_g17(report.value) + "\n";
    for (const auto& [k, v] : report.components)
        out += kind + ",component." + k + "," + format_g17(v) + "\n";
    for (const auto& [k, v] : report.assumptions)
        out += kind + ",assumption." + k + "," + (v ? "true" : "false") + "\n";
    return out;
}

std::string format_tractability_text(const TractabilityReport& r) {
    std::string out;
    out += "sigma_0 " + format_g17(r.sigma_0) + "\n";
    out += "epsilon " + format_g17(r.epsilon) + "\n";
    out += "delta " + format_g17(r.delta) + "\n";
    out += "asymptotic_available " + std::string(r.asymptotic_available ? "true" : "false") +
           "\n";
    if (r.asymptotic_available) {
        out += "d_star " + std::to_string(r.d_star) + "\n";
        out += "log_c_gamma_delta " + format_g17(r.log_c_gamma_delta) + "\n";
        out += "c_gamma_delta " + format_g17(r.c_gamma_delta) + "\n";
        out += "n_star_asymptotic_exponent " + std::to_string(r.n_star_asymptotic_exponent) +
               "\n";
        out += "n_star_asymptotic " + format_g17(r.n_star_asymptotic) + "\n";
    }
    out += "constructive_found " + std::string(r.constructive_found ? "true" : "false") + "\n";
    if (r.constructive_found) {
        out += "trivial_epsilon " + std::string(r.trivial_epsilon ? "true" : "false") + "\n";
        out += "constructive_m " + std::to_string(r.constructive_m) + "\n";
        out += "n_star_constructive " + std::to_string(r.n_star_constructive) + "\n";
        out += "constructive_bound_value " + format_g17(r.constructive_bound_value) + "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace latticeforge
