#include "entcost/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entcost::harness {

namespace {
const char* kColors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#f39c12", "#16a085"};
}

std::string render_svg(const std::vector<Series>& series, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel) {
    const int w = 640, h = 440, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
    }
    if (ymin > ymax) {
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    o << "<rect width='100%' height='100%' fill='white'/>\n";
    o << "<text x='" << w / 2 << "' y='20' text-anchor='middle' font-size='15'>" << title
      << "</text>\n";
    // axes
    o << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='" << h - mb
      << "' stroke='black'/>\n";
    o << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
      << "' stroke='black'/>\n";
    for (int t = 0; t <= 5; ++t) {
        double xv = xmin + t * (xmax - xmin) / 5;
        double yv = ymin + t * (ymax - ymin) / 5;
        o << "<text x='" << px(xv) << "' y='" << h - mb + 18
          << "' text-anchor='middle' font-size='11'>" << std::round(xv * 1000) / 1000
          << "</text>\n";
        o << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
          << "' text-anchor='end' font-size='11'>" << std::round(yv * 1000) / 1000 << "</text>\n";
    }
    o << "<text x='" << (w + ml - mr) / 2 << "' y='" << h - 10
      << "' text-anchor='middle' font-size='13'>" << xlabel << "</text>\n";
    o << "<text x='16' y='" << (h + mt - mb) / 2 << "' text-anchor='middle' font-size='13' "
      << "transform='rotate(-90 16 " << (h + mt - mb) / 2 << ")'>" << ylabel << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* col = kColors[ci % 6];
        if (s.scatter) {
            for (size_t i = 0; i < s.x.size(); ++i)
                o << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i])
                  << "' r='3' fill='" << col << "' fill-opacity='0.65'/>\n";
        } else {
            o << "<polyline fill='none' stroke='" << col << "' stroke-width='1.8' points='";
            for (size_t i = 0; i < s.x.size(); ++i) o << px(s.x[i]) << "," << py(s.y[i]) << " ";
            o << "'/>\n";
        }
        o << "<text x='" << w - mr - 6 << "' y='" << mt + 16 * ci + 12
          << "' text-anchor='end' font-size='12' fill='" << col << "'>" << s.label
          << "</text>\n";
        ++ci;
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace entcost::harness
