#pragma once

#include <string>
#include <vector>

namespace entcost::harness {

struct Series {
    std::string label;
    std::vector<double> x, y;
    bool scatter = false;
};

/// Minimal standalone SVG line/scatter plot, no external processes.
std::string render_svg(const std::vector<Series>& series, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel);

} // namespace entcost::harness
