#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace speccl::svgplot {

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<double> y;
    // dashed vertical rule (e.g. the chosen cluster count) plus a marker
    // comment so tooling can read the value back without parsing geometry
    std::optional<double> marked_x;
    std::string marked_name;  // comment key, e.g. "chosen_k"
};

/// Polyline with circle markers (class="pt"). Static XML, no scripting.
std::string line_chart(const ChartSpec& spec);

/// One bar per x position. Static XML, no scripting.
std::string bar_chart(const ChartSpec& spec);

}  // namespace speccl::svgplot
