#pragma once

#include "entcost/qcore/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace entcost::harness {

struct ExperimentSpec {
    std::string name;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    bool plot = false;
    int samples = 0;                      // 0: experiment default
    std::map<std::string, double> params; // grid overrides (p_min, p_step, gamma, ...)
};

struct ResultRow {
    std::string experiment;
    std::string params; // flattened key=value pairs, ';'-separated
    std::string bound;
    double value = 0.0;
    double gap = 0.0;
    std::string status;
    double runtime_ms = 0.0;
};

std::vector<std::string> experiment_names();

/// Runs the experiment, writes <out_dir>/<name>.csv (plus .svg with plot=true)
/// and returns the rows. Deterministic under the seed; per-row solver
/// failures are recorded in the status column and the run continues.
std::vector<ResultRow> run(const ExperimentSpec& spec);

std::string rows_to_csv(const std::vector<ResultRow>& rows);

} // namespace entcost::harness
