#include "entcost/harness/experiments.hpp"

#include "entcost/bounds/binegativity.hpp"
#include "entcost/bounds/comparison.hpp"
#include "entcost/bounds/hash.hpp"
#include "entcost/bounds/rains.hpp"
#include "entcost/channels/cost.hpp"
#include "entcost/channels/named.hpp"
#include "entcost/harness/svg.hpp"
#include "entcost/qcore/ops.hpp"
#include "entcost/qcore/random.hpp"
#include "entcost/variational/optimize.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace entcost::harness {

namespace q = qcore;
namespace b = bounds;
namespace ch = channels;

namespace {

using Task = std::function<std::vector<ResultRow>()>;

// grid tasks run in a small pool; rows merge in grid order
std::vector<ResultRow> run_tasks(std::vector<Task>& tasks) {
    std::vector<std::vector<ResultRow>> results(tasks.size());
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            results[i] = tasks[i]();
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<ResultRow> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string param_string(const std::vector<std::pair<std::string, double>>& kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
        if (!s.empty()) s += ';';
        s += k + "=" + fmt(v);
    }
    return s;
}

double get(const ExperimentSpec& spec, const std::string& key, double dflt) {
    auto it = spec.params.find(key);
    return it == spec.params.end() ? dflt : it->second;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

ResultRow guarded(const std::string& experiment, const std::string& params,
                  const std::string& bound, const std::function<std::pair<double, double>()>& f) {
    ResultRow row{experiment, params, bound, 0.0, 0.0, "optimal", 0.0};
    Timer t;
    try {
        auto [value, gap] = f();
        row.value = value;
        row.gap = gap;
    } catch (const conic::SolverFailure& e) {
        row.status = std::string("solver_failure:") + conic::to_string(e.status);
    } catch (const std::exception& e) {
        row.status = std::string("error:") + e.what();
    }
    row.runtime_ms = t.ms();
    return row;
}

std::vector<ResultRow> state_bound_rows(const std::string& exp, const std::string& params,
                                        const q::BipartiteState& st, bool with_eof) {
    std::vector<ResultRow> rows;
    rows.push_back(guarded(exp, params, "e_nb2_half", [&] {
        auto r = b::e_nb2_half(st);
        if (!r.optimal()) throw conic::SolverFailure(r.status);
        return std::make_pair(r.value_bits, r.gap);
    }));
    rows.push_back(guarded(exp, params, "e_eta", [&] {
        auto r = b::e_eta(st);
        if (!r.optimal()) throw conic::SolverFailure(r.status);
        return std::make_pair(r.value_bits, r.gap);
    }));
    rows.push_back(guarded(exp, params, "tempered_negativity", [&] {
        auto r = b::tempered_negativity(st);
        if (!r.optimal()) throw conic::SolverFailure(r.status);
        return std::make_pair(r.value_bits, r.gap);
    }));
    if (with_eof)
        rows.push_back(guarded(exp, params, "eof_two_qubit",
                               [&] { return std::make_pair(b::eof_two_qubit(st), 0.0); }));
    return rows;
}

// rank-2 state on the 3x3 antisymmetric subspace plus depolarizing noise
q::BipartiteState rho_v_noisy(double p) {
    CVec v1 = CVec::Zero(9), v2 = CVec::Zero(9);
    v1(1) = 1 / std::sqrt(2.0);
    v1(3) = -1 / std::sqrt(2.0); // (|01> - |10>)/sqrt2
    v2(2) = 1 / std::sqrt(2.0);
    v2(6) = -1 / std::sqrt(2.0); // (|02> - |20>)/sqrt2
    CMat rho = 0.5 * (v1 * v1.adjoint() + v2 * v2.adjoint());
    CMat noisy = (1.0 - p) * rho + p * CMat::Identity(9, 9) / 9.0;
    return q::BipartiteState(q::HermitianOperator(noisy), 3, 3);
}

std::vector<ResultRow> exp_werner_holevo(const ExperimentSpec& spec) {
    int d = static_cast<int>(get(spec, "d", 5));
    auto params = param_string({{"d", double(d)}});
    std::vector<ResultRow> rows;
    rows.push_back(guarded(spec.name, params, "channel_cost_lb", [&] {
        auto r = ch::channel_cost_lb(ch::werner_holevo(d).realized);
        if (!r.optimal()) throw conic::SolverFailure(r.status);
        return std::make_pair(r.value_bits, r.gap);
    }));
    return rows;
}

std::vector<ResultRow> exp_irreversibility(const ExperimentSpec& spec) {
    double p0 = get(spec, "p_min", 0.0), p1 = get(spec, "p_max", 0.015);
    double dp = get(spec, "p_step", 0.005);
    double fw_gap = get(spec, "fw_gap", 1e-3);
    int fw_iters = static_cast<int>(get(spec, "fw_iters", 2000));
    std::vector<Task> tasks;
    for (double p = p0; p <= p1 + 1e-12; p += dp) {
        tasks.push_back([=, name = spec.name] {
            auto params = param_string({{"p", p}});
            q::BipartiteState st = rho_v_noisy(p);
            std::vector<ResultRow> rows;
            rows.push_back(guarded(name, params, "e_nb2_half", [&] {
                auto r = b::e_nb2_half(st);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            rows.push_back(guarded(name, params, "rains_bound", [&] {
                b::FWParams fp;
                fp.gap_tol = fw_gap;
                fp.max_iters = fw_iters;
                auto r = b::rel_entropy_to_set(st, b::FreeSet::Rains, fp);
                if (r.status != conic::SolveStatus::Optimal)
                    throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap_bits);
            }));
            return rows;
        });
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> exp_noisy_bell(const ExperimentSpec& spec) {
    bool sweep_gamma = get(spec, "sweep_gamma", 0) > 0.5;
    double fixed = sweep_gamma ? get(spec, "p", 0.1) : get(spec, "gamma", 0.1);
    double lo = get(spec, "lo", 0.0), hi = get(spec, "hi", 1.0);
    double step = get(spec, "step", 0.05);
    std::vector<Task> tasks;
    for (double x = lo; x <= hi + 1e-12; x += step) {
        tasks.push_back([=, name = spec.name] {
            double gamma = sweep_gamma ? x : fixed;
            double p = sweep_gamma ? fixed : x;
            auto params = param_string({{"gamma", gamma}, {"p", p}});
            q::BipartiteState st = ch::noisy_bell(gamma, p);
            auto rows = state_bound_rows(name, params, st, true);
            rows.push_back(guarded(name, params, "is_ppt", [&] {
                return std::make_pair(q::is_ppt(st, 1e-9) ? 1.0 : 0.0, 0.0);
            }));
            return rows;
        });
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> exp_xxz_curve(const ExperimentSpec& spec) {
    double gamma = get(spec, "gamma", 0.1);
    double t0 = get(spec, "t_min", 0.0), t1 = get(spec, "t_max", M_PI);
    double dt = get(spec, "t_step", 0.05 * M_PI);
    std::vector<Task> tasks;
    for (double t = t0; t <= t1 + 1e-9; t += dt) {
        tasks.push_back([=, name = spec.name] {
            auto params = param_string({{"t", t}, {"gamma", gamma}});
            auto nc = ch::xxz_noisy_step(t, gamma);
            q::BipartiteState choi = q::choi_state_bipartite(nc.realized, 2, 2, 2, 2);
            std::vector<ResultRow> rows;
            rows.push_back(guarded(name, params, "e_nb2_half", [&] {
                auto r = b::e_nb2_half(choi);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            rows.push_back(guarded(name, params, "e_eta", [&] {
                auto r = b::e_eta(choi);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            rows.push_back(guarded(name, params, "tempered_negativity", [&] {
                auto r = b::tempered_negativity(choi);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            return rows;
        });
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> exp_swap_dephase(const ExperimentSpec& spec) {
    double phi = get(spec, "phi", M_PI / 10.0);
    double lo = get(spec, "p_min", 0.0), hi = get(spec, "p_max", 1.0);
    double step = get(spec, "p_step", 0.1);
    std::vector<Task> tasks;
    for (double p = lo; p <= hi + 1e-12; p += step) {
        tasks.push_back([=, name = spec.name] {
            auto params = param_string({{"p", p}, {"phi", phi}});
            auto nc = ch::collective_dephased_swap(p, phi);
            q::BipartiteState choi = q::choi_state_bipartite(nc.realized, 2, 2, 2, 2);
            std::vector<ResultRow> rows;
            rows.push_back(guarded(name, params, "bipartite_channel_cost_lb", [&] {
                auto r = b::e_nb2_half(choi);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            rows.push_back(guarded(name, params, "e_eta", [&] {
                auto r = b::e_eta(choi);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            rows.push_back(guarded(name, params, "tempered_negativity", [&] {
                auto r = b::tempered_negativity(choi);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                return std::make_pair(r.value_bits, r.gap);
            }));
            return rows;
        });
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> exp_scatter_compare(const ExperimentSpec& spec) {
    int da = static_cast<int>(get(spec, "da", 3));
    int db = static_cast<int>(get(spec, "db", 3));
    int rank_min = static_cast<int>(get(spec, "rank_min", 1));
    int rank_max = static_cast<int>(get(spec, "rank_max", da * db));
    int per_rank = spec.samples > 0 ? spec.samples : 12;
    std::vector<Task> tasks;
    int grid_index = 0;
    for (int rank = rank_min; rank <= rank_max; ++rank) {
        for (int s = 0; s < per_rank; ++s, ++grid_index) {
            std::uint64_t sd = q::split_seed(spec.seed, grid_index);
            tasks.push_back([=, name = spec.name] {
                auto params = param_string(
                    {{"rank", double(rank)}, {"sample", double(s)}, {"seed", double(sd)}});
                q::BipartiteState st = q::random_state(da, db, rank, sd);
                return state_bound_rows(name, params, st, false);
            });
        }
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> exp_variational_vs_choi(const ExperimentSpec& spec) {
    int n_channels = spec.samples > 0 ? spec.samples : 20;
    int steps = static_cast<int>(get(spec, "steps", 40));
    std::vector<double> probs = {0.4, 0.4, 0.1, 0.1};
    std::vector<Task> tasks;
    for (int i = 0; i < n_channels; ++i) {
        std::uint64_t sd = q::split_seed(spec.seed, i);
        tasks.push_back([=, name = spec.name] {
            auto params = param_string({{"channel", double(i)}, {"seed", double(sd)}});
            auto nc = ch::sample_mixed_unitary(probs, 4, sd);
            std::vector<ResultRow> rows;
            double choi_value = 0;
            rows.push_back(guarded(name, params, "choi_bound", [&] {
                auto r = ch::channel_cost_lb(nc.realized);
                if (!r.optimal()) throw conic::SolverFailure(r.status);
                choi_value = r.value_bits;
                return std::make_pair(r.value_bits, r.gap);
            }));
            rows.push_back(guarded(name, params, "variational", [&] {
                variational::OptimizerConfig cfg;
                cfg.steps = steps;
                cfg.seed = sd + 1;
                cfg.include_mes_init = true;
                auto r = variational::optimize(nc.realized, cfg);
                return std::make_pair(r.value_bits, r.value_bits - choi_value);
            }));
            return rows;
        });
    }
    return run_tasks(tasks);
}

std::vector<ResultRow> exp_hierarchy_audit(const ExperimentSpec& spec) {
    int count = spec.samples > 0 ? spec.samples : 20;
    // rejection-sample PPT and NPT two-qutrit states
    std::vector<std::pair<q::BipartiteState, bool>> states;
    int found_ppt = 0, found_npt = 0;
    for (std::uint64_t attempt = 0; (found_ppt < count || found_npt < count) && attempt < 100000;
         ++attempt) {
        q::BipartiteState st = q::random_state(3, 3, 9, q::split_seed(spec.seed, attempt));
        bool ppt = q::is_ppt(st, 1e-9);
        if (ppt && found_ppt < count) {
            states.emplace_back(st, true);
            ++found_ppt;
        } else if (!ppt && found_npt < count) {
            states.emplace_back(st, false);
            ++found_npt;
        }
    }
    std::vector<Task> tasks;
    for (size_t i = 0; i < states.size(); ++i) {
        const auto& [st, ppt] = states[i];
        tasks.push_back([=, name = spec.name] {
            auto params = param_string({{"sample", double(i)}, {"is_ppt", ppt ? 1.0 : 0.0}});
            std::vector<ResultRow> rows;
            q::HermitianOperator op = st.op();
            q::SubsystemLayout lay = st.layout();
            for (int k = 2; k <= 3; ++k) {
                rows.push_back(guarded(name, params, "ppt" + std::to_string(k) + "_member", [&] {
                    return std::make_pair(b::ppt_k_membership(op, lay, k) ? 1.0 : 0.0, 0.0);
                }));
            }
            for (int k = 1; k <= 3; ++k) {
                rows.push_back(
                    guarded(name, params, "e_nb" + std::to_string(k) + "_half", [&] {
                        auto r = b::e_nb_k_half(st, k);
                        if (!r.optimal()) throw conic::SolverFailure(r.status);
                        return std::make_pair(r.value_bits, r.gap);
                    }));
            }
            return rows;
        });
    }
    return run_tasks(tasks);
}

double param_of(const ResultRow& row, const std::string& key) {
    std::stringstream ss(row.params);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        auto eq = tok.find('=');
        if (eq != std::string::npos && tok.substr(0, eq) == key)
            return std::stod(tok.substr(eq + 1));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void write_plot(const ExperimentSpec& spec, const std::vector<ResultRow>& rows) {
    std::vector<Series> series;
    if (spec.name == "scatter_compare") {
        // e_nb2 against each comparison bound
        std::map<std::string, std::map<std::string, double>> by_point;
        for (const auto& r : rows) by_point[r.params][r.bound] = r.value;
        Series eta{"vs e_eta", {}, {}, true}, tmp{"vs tempered", {}, {}, true},
            diag{"equal line", {}, {}, false};
        double vmax = 0;
        for (const auto& [k, m] : by_point) {
            if (!m.count("e_nb2_half")) continue;
            double y = m.at("e_nb2_half");
            vmax = std::max(vmax, y);
            if (m.count("e_eta")) {
                eta.x.push_back(m.at("e_eta"));
                eta.y.push_back(y);
                vmax = std::max(vmax, m.at("e_eta"));
            }
            if (m.count("tempered_negativity")) {
                tmp.x.push_back(m.at("tempered_negativity"));
                tmp.y.push_back(y);
            }
        }
        diag.x = {0.0, vmax};
        diag.y = {0.0, vmax};
        series = {eta, tmp, diag};
    } else {
        std::string xkey = "p";
        if (spec.name == "xxz_curve") xkey = "t";
        if (spec.name == "werner_holevo") xkey = "d";
        std::map<std::string, Series> by_bound;
        for (const auto& r : rows) {
            auto& s = by_bound[r.bound];
            s.label = r.bound;
            s.x.push_back(param_of(r, xkey));
            s.y.push_back(r.value);
        }
        for (auto& [k, s] : by_bound) series.push_back(s);
    }
    std::string svg = render_svg(series, spec.name, "parameter", "bits");
    std::ofstream out(std::filesystem::path(spec.out_dir) / (spec.name + ".svg"));
    out << svg;
}

} // namespace

std::vector<std::string> experiment_names() {
    return {"scatter_compare", "irreversibility",     "noisy_bell",      "xxz_curve",
            "swap_dephase",    "werner_holevo",       "variational_vs_choi",
            "hierarchy_audit"};
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream o;
    o << "experiment,params,bound,value,gap,status,runtime_ms\n";
    for (const auto& r : rows) {
        o << r.experiment << ",\"" << r.params << "\"," << r.bound << "," << fmt(r.value) << ","
          << fmt(r.gap) << "," << r.status << "," << fmt(r.runtime_ms) << "\n";
    }
    return o.str();
}

std::vector<ResultRow> run(const ExperimentSpec& spec) {
    std::vector<ResultRow> rows;
    if (spec.name == "werner_holevo")
        rows = exp_werner_holevo(spec);
    else if (spec.name == "irreversibility")
        rows = exp_irreversibility(spec);
    else if (spec.name == "noisy_bell")
        rows = exp_noisy_bell(spec);
    else if (spec.name == "xxz_curve")
        rows = exp_xxz_curve(spec);
    else if (spec.name == "swap_dephase")
        rows = exp_swap_dephase(spec);
    else if (spec.name == "scatter_compare")
        rows = exp_scatter_compare(spec);
    else if (spec.name == "variational_vs_choi")
        rows = exp_variational_vs_choi(spec);
    else if (spec.name == "hierarchy_audit")
        rows = exp_hierarchy_audit(spec);
    else {
        std::string names;
        for (const auto& n : experiment_names()) names += n + " ";
        throw std::invalid_argument("unknown experiment '" + spec.name + "', available: " + names);
    }

    std::filesystem::create_directories(spec.out_dir);
    std::ofstream out(std::filesystem::path(spec.out_dir) / (spec.name + ".csv"));
    out << rows_to_csv(rows);
    if (spec.plot) write_plot(spec, rows);
    return rows;
}

} // namespace entcost::harness
