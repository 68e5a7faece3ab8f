#include "entcost/harness/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace entcost::harness {

namespace q = qcore;
using nlohmann::json;

namespace {

json complex_matrix_to_json(const CMat& m) {
    json arr = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) arr.push_back({m(r, c).real(), m(r, c).imag()});
    return arr;
}

CMat complex_matrix_from_json(const json& arr, int rows, int cols, const std::string& what) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols)
        throw std::invalid_argument(what + ": matrix must be a flat list of " +
                                    std::to_string(rows * cols) + " [re, im] pairs");
    CMat m(rows, cols);
    int idx = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c, ++idx) {
            const json& e = arr[idx];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument(what + ": entry " + std::to_string(idx) +
                                            " is not an [re, im] pair");
            m(r, c) = Cplx(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

} // namespace

std::string state_to_json(const q::BipartiteState& st) {
    json j;
    j["dims"] = {st.dim_a(), st.dim_b()};
    j["matrix"] = complex_matrix_to_json(st.mat());
    return j.dump();
}

q::BipartiteState state_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2)
        throw std::invalid_argument("state: 'dims' must be [dimA, dimB]");
    int da = j["dims"][0].get<int>(), db = j["dims"][1].get<int>();
    if (da < 1 || db < 1) throw std::invalid_argument("state: dims must be positive");
    CMat m = complex_matrix_from_json(j.at("matrix"), da * db, da * db, "state");
    // constructor names the violated invariant (hermiticity, PSD, trace)
    return q::BipartiteState(q::HermitianOperator(m), da, db);
}

std::string channel_to_json(const q::KrausChannel& ch) {
    json j;
    j["dim_in"] = ch.dim_in();
    j["dim_out"] = ch.dim_out();
    json ks = json::array();
    for (const CMat& k : ch.kraus()) ks.push_back(complex_matrix_to_json(k));
    j["kraus"] = ks;
    return j.dump();
}

channels::NamedChannel named_channel_from_json(const std::string& text) {
    json j = json::parse(text);
    std::string name = j.at("name").get<std::string>();
    json p = j.value("params", json::object());
    auto get = [&](const char* key, double dflt) { return p.value(key, dflt); };
    if (name == "werner_holevo") return channels::werner_holevo(int(get("d", 3)));
    if (name == "depolarizing") return channels::depolarizing(get("p", 1.0), int(get("d", 2)));
    if (name == "amplitude_damping") return channels::amplitude_damping(get("gamma", 0.0));
    if (name == "thermal_damping_to_one")
        return channels::thermal_damping_to_one(get("gamma", 0.0));
    if (name == "collective_dephased_swap")
        return channels::collective_dephased_swap(get("p", 1.0), get("phi", 0.0));
    if (name == "xxz_step" || name == "xxz_noisy_step")
        return channels::xxz_noisy_step(get("t", 0.0), get("gamma", 0.0));
    if (name == "mixed_unitary" || name == "sampled_mixed_unitary") {
        std::vector<double> probs;
        for (const auto& v : p.at("probs")) probs.push_back(v.get<double>());
        return channels::sample_mixed_unitary(probs, int(get("d", 4)),
                                              std::uint64_t(get("seed", 0)));
    }
    throw std::invalid_argument("unknown named channel '" + name + "'");
}

q::KrausChannel channel_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("name")) return named_channel_from_json(text).realized;
    if (!j.contains("dim_in") || !j.contains("dim_out"))
        throw std::invalid_argument("channel: missing 'dim_in'/'dim_out'");
    int din = j["dim_in"].get<int>(), dout = j["dim_out"].get<int>();
    if (din < 1 || dout < 1) throw std::invalid_argument("channel: dims must be positive");
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
        throw std::invalid_argument("channel: 'kraus' must be a nonempty list");
    std::vector<CMat> ks;
    for (const auto& arr : j["kraus"])
        ks.push_back(complex_matrix_from_json(arr, dout, din, "channel kraus"));
    // constructor verifies trace preservation
    return q::KrausChannel(ks, din, dout);
}

q::BipartiteState read_state(const std::string& path) { return state_from_json(slurp(path)); }
q::KrausChannel read_channel(const std::string& path) { return channel_from_json(slurp(path)); }
void write_state(const q::BipartiteState& st, const std::string& path) {
    spill(path, state_to_json(st));
}
void write_channel(const q::KrausChannel& ch, const std::string& path) {
    spill(path, channel_to_json(ch));
}

std::string bound_result_to_json(const bounds::BoundResult& b, bool include_witnesses) {
    json j;
    j["bound"] = b.bound;
    j["value_bits"] = b.value_bits;
    j["raw_value_bits"] = b.raw_value_bits;
    if (std::isfinite(b.root_fidelity)) j["root_fidelity"] = b.root_fidelity;
    j["primal_value"] = b.primal_value;
    j["dual_value"] = b.dual_value;
    j["gap"] = b.gap;
    j["status"] = conic::to_string(b.status);
    j["metadata"] = b.metadata;
    if (include_witnesses) {
        json w;
        for (const auto& [name, m] : b.witnesses) w[name] = complex_matrix_to_json(m);
        j["witnesses"] = w;
    }
    return j.dump(2);
}

} // namespace entcost::harness
