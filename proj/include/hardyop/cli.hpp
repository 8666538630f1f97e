#pragma once

#include <map>

#include "hardyop/serialize.hpp"

namespace hardyop::cli {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct JobConfig {
    std::string command;
    std::string pair_file;  // optional for verify
    double p = std::numeric_limits<double>::infinity();
    double q = 2.0;
    std::size_t samples = 0;  // 0: per-command default
    std::uint64_t seed = kDefaultSeed;
    bool force_mc = false;  // Monte Carlo sampling even on the disk
    std::vector<double> eps_schedule;    // empty: defaults
    std::vector<double> h_schedule;      // empty: defaults
    std::vector<double> delta_schedule;  // empty: defaults
    std::vector<double> radii;           // empty: defaults
    std::string out_dir = ".";
    double tol_mc = std::numeric_limits<double>::quiet_NaN();  // NaN: per-check

    void validate() const;  // throws ConfigError
    QuadratureScheme scheme_for(std::size_t n, std::size_t default_samples) const;
    io::json to_json() const;
};

struct CommandResult {
    int exit_code = 0;
    io::json payload;
    std::map<std::string, std::string> artifacts;  // filename -> contents
};

// exit codes: 0 success, 1 flagged mathematical inconsistency / failed
// verification, 2 usage or configuration error
CommandResult cmd_verify(const JobConfig& cfg);
CommandResult cmd_essnorm(const JobConfig& cfg);
CommandResult cmd_carleson(const JobConfig& cfg);
CommandResult cmd_bounded(const JobConfig& cfg);
CommandResult cmd_report(const JobConfig& cfg);

CommandResult dispatch(const JobConfig& cfg);

/// Full driver: parse argv, run the command, write payload + artifacts
/// under cfg.out_dir, print a short summary. Returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace hardyop::cli
