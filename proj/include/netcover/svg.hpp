#pragma once

#include <string>

#include "netcover/coverage.hpp"
#include "netcover/network.hpp"

namespace netcover {

// Static plot of the network and (optionally) a placement: edge strokes
// scale with weight, covered sub-segments are highlighted, device centers
// are drawn as stars inside their coverage shapes.
std::string render_svg(const Network& net, const Placement* placement = nullptr);

}  // namespace netcover
