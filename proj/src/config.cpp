#include "assoc/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "assoc/errors.hpp"

namespace assoc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value for " + what + ": '" + s + "'");
    }
}

std::uint64_t to_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw config_error("config: bad integer value for " + what + ": '" + s + "'");
    return v;
}

EvaluationGrid parse_grid(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "dyadic") return EvaluationGrid::dyadic(static_cast<int>(to_u64(arg, "grid")));
    if (kind == "uniform") return EvaluationGrid::uniform(static_cast<int>(to_u64(arg, "grid")));
    if (kind == "points") {
        std::vector<double> pts;
        std::string item;
        std::istringstream in(arg);
        while (std::getline(in, item, ','))
            pts.push_back(to_double(trim(item), "grid point"));
        return EvaluationGrid::from_points(std::move(pts));
    }
    throw config_error("config: unknown grid spec '" + spec + "'");
}

}  // namespace

GaussianLinearModel ExperimentConfig::build_model() const {
    switch (model_kind) {
        case GaussianLinearModel::Kind::iid: return build_gaussian_linear_model_iid();
        case GaussianLinearModel::Kind::ar1:
            return build_gaussian_linear_model_ar1(model_phi, model_j_max);
        case GaussianLinearModel::Kind::power_law:
            return build_gaussian_linear_model_power_law(model_alpha, model_j_max);
    }
    throw config_error("config: unknown model kind");
}

double ExperimentConfig::param(const std::string& check, const std::string& key,
                               double fallback) const {
    const std::string text = param_text(check, key, "");
    return text.empty() ? fallback : to_double(text, check + "." + key);
}

std::vector<double> ExperimentConfig::param_list(const std::string& check, const std::string& key,
                                                 std::vector<double> fallback) const {
    const std::string text = param_text(check, key, "");
    if (text.empty()) return fallback;
    std::vector<double> out;
    for (const auto& tok : split_ws(text)) out.push_back(to_double(tok, check + "." + key));
    return out;
}

std::string ExperimentConfig::param_text(const std::string& check, const std::string& key,
                                         const std::string& fallback) const {
    if (const auto sec = sections.find(check); sec != sections.end())
        if (const auto kv = sec->second.find(key); kv != sec->second.end()) return kv->second;
    if (const auto sec = sections.find("tolerances"); sec != sections.end())
        if (const auto kv = sec->second.find(key); kv != sec->second.end()) return kv->second;
    return fallback;
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    cfg.marginal = uniform01_marginal();
    cfg.raw_text = text;

    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool grid_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(line_no);

        if (line.front() == '[') {
            if (line.back() != ']') throw config_error(where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw config_error(where + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw config_error(where + ": empty key or value");

        if (section == "model") {
            if (key == "kind") {
                if (value == "iid") cfg.model_kind = GaussianLinearModel::Kind::iid;
                else if (value == "ar1") cfg.model_kind = GaussianLinearModel::Kind::ar1;
                else if (value == "power_law") cfg.model_kind = GaussianLinearModel::Kind::power_law;
                else throw config_error(where + ": unknown model kind '" + value + "'");
            } else if (key == "phi") cfg.model_phi = to_double(value, "model.phi");
            else if (key == "alpha") cfg.model_alpha = to_double(value, "model.alpha");
            else if (key == "j_max") cfg.model_j_max = to_u64(value, "model.j_max");
            else throw config_error(where + ": unknown model key '" + key + "'");
        } else if (section == "marginal") {
            if (key == "kind") {
                if (value == "uniform01") cfg.marginal = uniform01_marginal();
                else if (value == "exponential") {
                    const double rate = cfg.marginal.kind == MarginalSpec::Kind::continuous
                                            ? *cfg.marginal.density_bound
                                            : 1.0;
                    cfg.marginal = exponential_marginal(rate);
                } else throw config_error(where + ": unknown marginal kind '" + value + "'");
            } else if (key == "rate") {
                cfg.marginal = exponential_marginal(to_double(value, "marginal.rate"));
            } else throw config_error(where + ": unknown marginal key '" + key + "'");
        } else if (section == "run") {
            if (key == "seed") {
                cfg.seed = to_u64(value, "run.seed");
                cfg.seed_set = true;
            } else if (key == "n") {
                cfg.n_list.clear();
                for (const auto& tok : split_ws(value)) {
                    const std::uint64_t n = to_u64(tok, "run.n");
                    if (n == 0) throw config_error(where + ": n must be positive");
                    cfg.n_list.push_back(static_cast<std::size_t>(n));
                }
            } else if (key == "replicates") {
                cfg.replicates = static_cast<std::size_t>(to_u64(value, "run.replicates"));
                if (cfg.replicates == 0) throw config_error(where + ": replicates must be positive");
            } else if (key == "grid") {
                cfg.grid = parse_grid(value);
                grid_seen = true;
            } else if (key == "checks") {
                cfg.checks = split_ws(value);
            } else if (key == "out") {
                cfg.out_dir = value;
            } else if (key == "save_ensemble") {
                cfg.save_ensemble_path = value;
            } else throw config_error(where + ": unknown run key '" + key + "'");
        } else {
            cfg.sections[section][key] = value;
        }
    }
    (void)grid_seen;

    if (!cfg.seed_set) throw config_error(origin + ": [run] seed is required");
    if (cfg.n_list.empty()) throw config_error(origin + ": [run] n is required");
    if (cfg.replicates == 0) throw config_error(origin + ": [run] replicates is required");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace assoc
