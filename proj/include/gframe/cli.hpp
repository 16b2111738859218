#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gframe/star_algebra.hpp"

namespace gframe {

#ifndef GFRAME_VERSION
#define GFRAME_VERSION "dev"
#endif
inline constexpr const char* kToolVersion = GFRAME_VERSION;

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int samples = 200;
    std::optional<std::string> id;
    double alpha = 1.0;
    double beta = 1.0;
    int rank = 3;
    int nodes = 11;
    int atoms = 4;
    std::string algebra = "M2";
    bool commuting = false;
    std::string mutant = "none";
    std::optional<std::string> aux;
    std::optional<std::string> check_bounds;  // "a,b"
    std::optional<std::string> out;
};

// 0: every check passed; 1: a check failed; 2: input or configuration error.
struct RunResult {
    int exit_code = 0;
    std::string document;  // JSON, empty on exit code 2
    std::string error;
};

const std::vector<std::string>& cli_commands();

// "M2", "C3", "matrix:2", "diagonal:3".
AlgebraDescriptor parse_algebra(const std::string& s);

// Never throws; errors are mapped to exit codes.
RunResult run(const RunConfig& cfg);

}  // namespace gframe
