#pragma once

#include <string>

#include "emwave/network.hpp"

namespace emwave {

/// Network file format: JSON with top-level keys `f0`, `buses`
/// (array of {id, x, y, h, d, v, p_mech, p_load, pv_fraction}) and
/// `branches` (array of {from, to, b}).
Network load_network(const std::string& path);
Network network_from_json_text(const std::string& text, const std::string& origin);

void save_network(const Network& net, const std::string& path);
std::string network_to_json_text(const Network& net);

}  // namespace emwave
