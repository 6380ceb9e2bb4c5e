#pragma once

#include <stdexcept>
#include <string>

namespace assoc {

// Parameter errors map to std::invalid_argument, domain errors to
// std::domain_error. The types below cover the remaining failure modes that
// callers need to distinguish.

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

struct empty_input_error : std::invalid_argument {
    explicit empty_input_error(const std::string& what) : std::invalid_argument(what) {}
};

struct grid_error : std::invalid_argument {
    explicit grid_error(const std::string& what) : std::invalid_argument(what) {}
};

struct need_replicates_error : std::invalid_argument {
    explicit need_replicates_error(const std::string& what) : std::invalid_argument(what) {}
};

struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_psd_error : std::runtime_error {
    explicit not_psd_error(const std::string& what) : std::runtime_error(what) {}
};

struct underpowered_input_error : std::invalid_argument {
    explicit underpowered_input_error(const std::string& what) : std::invalid_argument(what) {}
};

struct unsupported_marginal_error : std::invalid_argument {
    explicit unsupported_marginal_error(const std::string& what) : std::invalid_argument(what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace assoc
