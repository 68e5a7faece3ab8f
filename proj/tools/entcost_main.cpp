#include "entcost/bounds/binegativity.hpp"
#include "entcost/bounds/comparison.hpp"
#include "entcost/bounds/hash.hpp"
#include "entcost/bounds/rains.hpp"
#include "entcost/channels/cost.hpp"
#include "entcost/conic/dump.hpp"
#include "entcost/harness/experiments.hpp"
#include "entcost/harness/io.hpp"
#include "entcost/qcore/ops.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace entcost;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

std::vector<std::string> state_bounds() {
    return {"e_nb2_half", "e_nb2_half_dual", "e_nb_k_half",  "e_eta",
            "tempered_negativity", "e_hash2_lower", "e_hash2_dual", "rains_bound",
            "rel_entropy_ppt", "eof_two_qubit"};
}

std::vector<std::string> channel_bounds() {
    return {"channel_cost_lb", "bipartite_channel_cost_lb"};
}

int run_bound(const std::string& state_path, const std::string& channel_path,
              const std::string& bound, int k, std::vector<int> dims, bool witnesses,
              bool as_json) {
    bounds::BoundResult result;
    try {
        if (!state_path.empty()) {
            qcore::BipartiteState st = harness::read_state(state_path);
            if (bound == "e_nb2_half")
                result = bounds::e_nb2_half(st);
            else if (bound == "e_nb2_half_dual")
                result = bounds::e_nb2_half_dual(st);
            else if (bound == "e_nb_k_half")
                result = bounds::e_nb_k_half(st, k);
            else if (bound == "e_eta")
                result = bounds::e_eta(st);
            else if (bound == "tempered_negativity")
                result = bounds::tempered_negativity(st);
            else if (bound == "e_hash2_lower")
                result = bounds::e_hash2_lower(st);
            else if (bound == "e_hash2_dual")
                result = bounds::e_hash2_dual(st);
            else if (bound == "rains_bound" || bound == "rel_entropy_ppt") {
                auto fw = bounds::rel_entropy_to_set(
                    st, bound == "rains_bound" ? bounds::FreeSet::Rains : bounds::FreeSet::PPT);
                result.bound = bound;
                result.value_bits = fw.value_bits;
                result.raw_value_bits = fw.value_bits;
                result.gap = fw.gap_bits;
                result.status = fw.status;
                result.metadata["fw_iters"] = fw.iters;
            } else if (bound == "eof_two_qubit") {
                result.bound = bound;
                result.value_bits = bounds::eof_two_qubit(st);
                result.raw_value_bits = result.value_bits;
                result.gap = 0;
                result.status = conic::SolveStatus::Optimal;
            } else {
                std::string names;
                for (const auto& n : state_bounds()) names += n + " ";
                std::fprintf(stderr, "unknown state bound '%s'; available: %s\n", bound.c_str(),
                             names.c_str());
                return kExitValidation;
            }
        } else {
            qcore::KrausChannel nchan = harness::read_channel(channel_path);
            if (bound == "channel_cost_lb")
                result = channels::channel_cost_lb(nchan);
            else if (bound == "bipartite_channel_cost_lb") {
                if (dims.size() != 4) {
                    std::fprintf(stderr, "bipartite_channel_cost_lb needs --dims dA,dB,dA',dB'\n");
                    return kExitValidation;
                }
                result =
                    channels::bipartite_channel_cost_lb(nchan, dims[0], dims[1], dims[2], dims[3]);
            } else {
                std::string names;
                for (const auto& n : channel_bounds()) names += n + " ";
                std::fprintf(stderr, "unknown channel bound '%s'; available: %s\n", bound.c_str(),
                             names.c_str());
                return kExitValidation;
            }
        }
    } catch (const conic::SolverFailure& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitValidation;
    }

    if (as_json) {
        std::printf("%s\n", harness::bound_result_to_json(result, witnesses).c_str());
    } else {
        std::printf("%s  value=%.6f bits  gap=%.2e  status=%s\n", result.bound.c_str(),
                    result.value_bits, result.gap, conic::to_string(result.status));
    }
    return result.status == conic::SolveStatus::Optimal ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entcost: SDP lower bounds on the entanglement cost of states and channels"};
    app.require_subcommand(1);

    // bound
    std::string state_path, channel_path, bound_name;
    int k = 2;
    std::vector<int> dims;
    bool witnesses = false, as_json = false;
    auto* cbound = app.add_subcommand("bound", "evaluate one bound on a state or channel file");
    auto* sopt = cbound->add_option("--state", state_path, "state JSON file");
    cbound->add_option("--channel", channel_path, "channel JSON file (Kraus or named)")
        ->excludes(sopt);
    cbound->add_option("--bound", bound_name, "bound name")->required();
    cbound->add_option("--k", k, "hierarchy level for e_nb_k_half");
    cbound->add_option("--dims", dims, "dA,dB,dA',dB' for bipartite channel bounds")
        ->delimiter(',');
    cbound->add_flag("--witnesses", witnesses, "include witness matrices in JSON output");
    cbound->add_flag("--json", as_json, "print the full result as JSON");

    // experiment
    harness::ExperimentSpec spec;
    std::vector<std::string> sets;
    auto* cexp = app.add_subcommand("experiment", "run a named experiment, writing CSV/SVG");
    cexp->add_option("name", spec.name, "experiment name")->required();
    cexp->add_option("--seed", spec.seed, "root seed");
    cexp->add_option("--out", spec.out_dir, "output directory");
    cexp->add_option("--samples", spec.samples, "sample count override");
    cexp->add_flag("--plot", spec.plot, "also write an SVG plot");
    cexp->add_option("--set", sets, "grid override key=value (repeatable)");

    // dump
    std::string dump_state, dump_out;
    int dump_k = 2;
    auto* cdump = app.add_subcommand("dump", "dump the lowered conic form of e_nb_k_half");
    cdump->add_option("--state", dump_state, "state JSON file")->required();
    cdump->add_option("--k", dump_k, "hierarchy level");
    cdump->add_option("--out", dump_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cbound->parsed()) {
            if (state_path.empty() == channel_path.empty()) {
                std::fprintf(stderr, "bound: exactly one of --state/--channel is required\n");
                return kExitValidation;
            }
            return run_bound(state_path, channel_path, bound_name, k, dims, witnesses, as_json);
        }
        if (cexp->parsed()) {
            for (const auto& kv : sets) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
                spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
            auto rows = harness::run(spec);
            std::printf("%s: %zu rows -> %s/%s.csv\n", spec.name.c_str(), rows.size(),
                        spec.out_dir.c_str(), spec.name.c_str());
            int failures = 0;
            for (const auto& r : rows)
                if (r.status != "optimal") ++failures;
            if (failures) std::printf("%d rows with non-optimal status\n", failures);
            return kExitOk;
        }
        if (cdump->parsed()) {
            auto st = harness::read_state(dump_state);
            auto program = bounds::e_nb_k_program(st, dump_k);
            std::string text = conic::dump_json(conic::lower(program));
            if (dump_out.empty()) {
                std::printf("%s\n", text.c_str());
            } else {
                std::ofstream out(dump_out);
                out << text;
            }
            return kExitOk;
        }
    } catch (const conic::SolverFailure& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitValidation;
    }
    return kExitOk;
}
