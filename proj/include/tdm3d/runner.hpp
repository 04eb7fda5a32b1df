#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tdm3d/scenario.hpp"

namespace tdm3d {

struct RunOptions {
    std::string subcommand;
    std::string scenario_path;
    std::string out_dir_override;  // wins over the scenario's output_dir
    std::uint64_t seed = 0;        // reserved for Monte-Carlo oracle runs
};

/// Executes one subcommand (select, profile, schedule, interleave, render,
/// sweep, crosstalk). Returns the process exit status: 0 success, 1 on
/// validation violations, 2 on I/O or parse errors. Artifacts are written
/// atomically with names derived from (subcommand, scenario hash).
int run(const RunOptions& options, std::ostream& err);

/// FNV-1a 64 over the scenario file bytes, 16 lowercase hex digits.
std::string scenario_hash(const std::string& bytes);

}  // namespace tdm3d
