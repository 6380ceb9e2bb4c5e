#pragma once

#include "assoc/config.hpp"
#include "assoc/report.hpp"

namespace assoc {

// Executes the configured checks in declared order. Each check derives its
// randomness from (config.seed, check index) through the stream tree in
// rng.hpp, so reports are reproducible bit-for-bit for any thread count.
// Unknown check names raise config_error before anything runs; a failure
// inside a check is recorded as a per-check error and the run continues.
RunReport run_experiment(const ExperimentConfig& config, int threads = 0);

// Names accepted in [run] checks.
std::vector<std::string> known_checks();

}  // namespace assoc
