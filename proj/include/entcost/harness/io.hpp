#pragma once

#include "entcost/bounds/bound_result.hpp"
#include "entcost/channels/named.hpp"
#include "entcost/qcore/types.hpp"

#include <string>

namespace entcost::harness {

/// File formats: states are {"dims": [dA, dB], "matrix": [[re, im], ...]}
/// (row-major, length (dA*dB)^2); channels are {"dim_in", "dim_out",
/// "kraus": [matrix, ...]} with the same complex-pair encoding, or the named
/// shorthand {"name": ..., "params": {...}}.
qcore::BipartiteState read_state(const std::string& path);
qcore::KrausChannel read_channel(const std::string& path);

void write_state(const qcore::BipartiteState& st, const std::string& path);
void write_channel(const qcore::KrausChannel& ch, const std::string& path);

std::string state_to_json(const qcore::BipartiteState& st);
std::string channel_to_json(const qcore::KrausChannel& ch);
qcore::BipartiteState state_from_json(const std::string& text);
qcore::KrausChannel channel_from_json(const std::string& text);

/// Named-channel shorthand used by channel files and the CLI.
channels::NamedChannel named_channel_from_json(const std::string& text);

std::string bound_result_to_json(const bounds::BoundResult& b, bool include_witnesses = false);

} // namespace entcost::harness
