#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "assoc/grid.hpp"
#include "assoc/marginal.hpp"
#include "assoc/model.hpp"

// Experiment configuration: flat text key-value records with one level of
// [section] grouping. Grammar (see README for the full key list):
//
//   # comment                      -- strip from '#' to end of line
//   [section]                      -- model | marginal | run | tolerances
//                                     or a check name for per-check params
//   key = value                    -- value runs to end of line; lists are
//                                     whitespace separated
//
// [run] requires seed (no implicit entropy), n and replicates.

namespace assoc {

struct ExperimentConfig {
    // [model]
    GaussianLinearModel::Kind model_kind = GaussianLinearModel::Kind::iid;
    double model_phi = 0.0;
    double model_alpha = 0.0;
    std::size_t model_j_max = kDefaultJMax;

    // [marginal]
    MarginalSpec marginal;

    // [run]
    std::vector<std::size_t> n_list;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    EvaluationGrid grid = EvaluationGrid::dyadic(6);
    std::vector<std::string> checks;
    std::string out_dir;
    std::string save_ensemble_path;

    // per-check and [tolerances] overrides
    std::map<std::string, std::map<std::string, std::string>> sections;

    std::string raw_text;  // exact file contents, hashed into the report

    GaussianLinearModel build_model() const;

    // Lookup order: [check] key, then [tolerances] key, then fallback.
    double param(const std::string& check, const std::string& key, double fallback) const;
    std::vector<double> param_list(const std::string& check, const std::string& key,
                                   std::vector<double> fallback) const;
    std::string param_text(const std::string& check, const std::string& key,
                           const std::string& fallback) const;
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "config");
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace assoc
