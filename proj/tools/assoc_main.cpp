// Command-line front end: `run` executes a config of checks, `bounds` prints
// the exponent/schedule table for (alpha, nu), `certify-decay` evaluates a
// covariance-decay certificate for a model.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assoc/bounds.hpp"
#include "assoc/config.hpp"
#include "assoc/errors.hpp"
#include "assoc/kernels.hpp"
#include "assoc/model.hpp"
#include "assoc/report.hpp"
#include "assoc/runner.hpp"
#include "assoc/version.hpp"

namespace {

assoc::GaussianLinearModel parse_model_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    const std::string& kind = parts[0];
    const auto num = [&](std::size_t i) { return std::stod(parts.at(i)); };
    std::size_t j_max = parts.size() > 2 ? static_cast<std::size_t>(std::stoull(parts[2]))
                                         : assoc::kDefaultJMax;
    if (kind == "iid") return assoc::build_gaussian_linear_model_iid();
    if (kind == "ar1") return assoc::build_gaussian_linear_model_ar1(num(1), j_max);
    if (kind == "power_law") return assoc::build_gaussian_linear_model_power_law(num(1), j_max);
    throw assoc::config_error("unknown model spec '" + spec + "' (want iid|ar1:phi|power_law:alpha[:j_max])");
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::string& seed_override, int threads, const std::string& format_name) {
    assoc::ExperimentConfig cfg = assoc::parse_config_file(config_path);
    if (!seed_override.empty()) {
        cfg.seed = std::stoull(seed_override);
        cfg.seed_set = true;
        cfg.raw_text += "\n[override]\nseed = " + seed_override + "\n";
    }
    if (!out_override.empty()) cfg.out_dir = out_override;

    const auto report = assoc::run_experiment(cfg, threads);
    const auto format = assoc::parse_report_format(format_name);
    if (!cfg.out_dir.empty()) assoc::emit_report(report, cfg.out_dir, format);
    std::fputs(assoc::report_body(report, assoc::ReportFormat::text).c_str(), stdout);
    return assoc::report_exit_code(report);
}

int cmd_bounds(double alpha, double nu, double p_opt, const std::vector<std::size_t>& n_list,
               const std::string& csv_path) {
    const auto interval = assoc::admissible_p_interval(alpha);
    std::printf("alpha                 %.12g\n", alpha);
    std::printf("alpha threshold       %.12g  ((5+sqrt(17))/4)\n", assoc::alpha_threshold());
    if (interval.empty) {
        std::printf("admissible p interval empty (lower %.12g >= upper %.12g)\n", interval.lower,
                    interval.upper);
        return 0;
    }
    std::printf("admissible p interval (%.12g, %.12g)\n", interval.lower, interval.upper);
    const double p = p_opt > 0.0 ? p_opt : 0.5 * (interval.lower + interval.upper);
    const auto [e_moment, beta] = assoc::lemma1_exponents(p, nu, alpha);
    std::printf("p                     %.12g%s\n", p, p_opt > 0.0 ? "" : "  (midpoint)");
    std::printf("nu                    %.12g\n", nu);
    std::printf("moment exponent       %.12g  ((p/2-alpha) v (1+nu-p/2))\n", e_moment);
    std::printf("increment exponent    %.12g  (beta = (1-1/alpha) p/2)\n", beta);

    std::printf("%10s %6s %14s %18s %12s\n", "n", "m_n", "2^{m_n}", "2 n^{1/2+nu}", "r");
    std::string csv = "n,m_n,pow2_m_n,bound,r,moment_exponent,increment_exponent\n";
    for (std::size_t n : n_list) {
        const auto s = assoc::chaining_schedule(n, nu, p, alpha);
        const double pow2 = std::exp2(static_cast<double>(s.m_n));
        const double bound = 2.0 * std::pow(static_cast<double>(n), 0.5 + nu);
        std::printf("%10zu %6d %14.6g %18.6g %12.8g\n", n, s.m_n, pow2, bound, s.r);
        char line[256];
        std::snprintf(line, sizeof line, "%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, s.m_n, pow2,
                      bound, s.r, e_moment, beta);
        csv += line;
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "cannot write %s\n", csv_path.c_str());
            return 2;
        }
        out << csv;
    }
    return 0;
}

int cmd_certify_decay(const std::string& model_spec, double c, double alpha, std::size_t k_max) {
    const auto model = parse_model_spec(model_spec);
    const auto cert = assoc::verify_decay_certificate(model, c, alpha, k_max);
    std::printf("model        %s\n", model.describe().c_str());
    std::printf("claim        cov(X_0,X_k) <= %.12g * k^-%.12g for k <= %zu\n", c, alpha, k_max);
    std::printf("margin       %.12g\n", cert.margin);
    std::printf("verdict      %s\n", cert.valid ? "valid" : "invalid");
    std::printf("tail         %s (%s)\n", cert.tail_certified ? "certified" : "not certified",
                cert.tail_note.c_str());
    return cert.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"associated-sequence empirical process toolkit"};
    app.set_version_flag("--version", assoc::kVersion);
    app.require_subcommand(1);

    std::string kernels_choice = "auto";
    app.add_option("--kernels", kernels_choice, "kernel dispatch: auto or scalar")
        ->check(CLI::IsMember({"auto", "scalar"}));

    auto* run = app.add_subcommand("run", "run an experiment config");
    std::string config_path, out_override, seed_override, format_name = "csv";
    int threads = 0;
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_override, "output directory (overrides [run] out)");
    run->add_option("--seed", seed_override, "seed override");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");
    run->add_option("--format", format_name, "report format")
        ->check(CLI::IsMember({"csv", "jsonl", "text"}));

    auto* bounds = app.add_subcommand("bounds", "admissibility verdict and schedule table");
    double alpha = 0.0, nu = 0.05, p_opt = 0.0;
    std::vector<std::size_t> n_list{1u << 8, 1u << 10, 1u << 12, 1u << 16, 1u << 20};
    std::string csv_path;
    bounds->add_option("--alpha", alpha, "covariance decay exponent")->required();
    bounds->add_option("--nu", nu, "slack exponent nu > 0");
    bounds->add_option("--p", p_opt, "moment order (default: interval midpoint)");
    bounds->add_option("--n", n_list, "sample sizes for the schedule table");
    bounds->add_option("--csv", csv_path, "also write the table as CSV");

    auto* certify = app.add_subcommand("certify-decay", "check cov(X_0,X_k) <= C k^-alpha");
    std::string model_spec;
    double cert_c = 0.0, cert_alpha = 0.0;
    std::size_t k_max = 50;
    certify->add_option("--model", model_spec, "iid | ar1:phi[:j_max] | power_law:alpha[:j_max]")
        ->required();
    certify->add_option("--C", cert_c, "claimed constant C > 0")->required();
    certify->add_option("--alpha", cert_alpha, "claimed exponent alpha > 0")->required();
    certify->add_option("--k-max", k_max, "largest lag checked exactly");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernels_choice == "scalar") assoc::kernels::force(assoc::kernels::Isa::scalar);
        if (run->parsed())
            return cmd_run(config_path, out_override, seed_override, threads, format_name);
        if (bounds->parsed()) return cmd_bounds(alpha, nu, p_opt, n_list, csv_path);
        if (certify->parsed()) return cmd_certify_decay(model_spec, cert_c, cert_alpha, k_max);
    } catch (const assoc::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
