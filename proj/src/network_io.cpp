#include "emwave/network_io.hpp"

#include <filesystem>

#include <json.hpp>

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"

namespace emwave {

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    fail(Errc::parse_error, where + ": missing or non-numeric '" + key + "'");
  }
  return it->get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    fail(Errc::parse_error, where + ": missing or non-string '" + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

Network network_from_json_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, origin + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("buses") || !doc.contains("branches")) {
    fail(Errc::parse_error, origin + ": expected object with 'buses' and 'branches'");
  }

  Network net;
  net.f0 = doc.value("f0", 60.0);

  if (!doc["buses"].is_array() || !doc["branches"].is_array()) {
    fail(Errc::parse_error, origin + ": 'buses' and 'branches' must be arrays");
  }

  for (const json& jb : doc["buses"]) {
    if (!jb.is_object()) fail(Errc::parse_error, origin + ": bus entry is not an object");
    Bus b;
    b.id = require_string(jb, "id", origin);
    const std::string where = origin + ", bus '" + b.id + "'";
    b.x = require_number(jb, "x", where);
    b.y = require_number(jb, "y", where);
    b.inertia_h = require_number(jb, "h", where);
    b.damping_d = require_number(jb, "d", where);
    b.voltage = require_number(jb, "v", where);
    b.p_mech = require_number(jb, "p_mech", where);
    b.p_load = require_number(jb, "p_load", where);
    b.pv_fraction = jb.value("pv_fraction", 0.0);
    net.buses.push_back(std::move(b));
  }

  for (const json& jr : doc["branches"]) {
    if (!jr.is_object()) fail(Errc::parse_error, origin + ": branch entry is not an object");
    Branch br;
    br.from = require_string(jr, "from", origin);
    br.to = require_string(jr, "to", origin);
    br.susceptance_b = require_number(jr, "b", origin + ", branch " + br.from + "-" + br.to);
    net.branches.push_back(std::move(br));
  }

  net.validate();
  return net;
}

Network load_network(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    fail(Errc::io_error, "network file not found: " + path);
  }
  return network_from_json_text(read_text_file(path), path);
}

// Hand-rolled writer so every number is the shortest round-trip decimal
// (json::dump would re-format doubles through its own algorithm).
std::string network_to_json_text(const Network& net) {
  auto quote = [](const std::string& s) { return json(s).dump(); };
  std::string out = "{\n  \"f0\": " + format_double(net.f0) + ",\n  \"buses\": [";
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    const Bus& b = net.buses[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"id\": " + quote(b.id) + ", \"x\": " + format_double(b.x) +
           ", \"y\": " + format_double(b.y) +
           ", \"h\": " + format_double(b.inertia_h) +
           ", \"d\": " + format_double(b.damping_d) +
           ", \"v\": " + format_double(b.voltage) +
           ", \"p_mech\": " + format_double(b.p_mech) +
           ", \"p_load\": " + format_double(b.p_load) +
           ", \"pv_fraction\": " + format_double(b.pv_fraction) + "}";
  }
  out += "\n  ],\n  \"branches\": [";
  for (std::size_t i = 0; i < net.branches.size(); ++i) {
    const Branch& br = net.branches[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"from\": " + quote(br.from) + ", \"to\": " + quote(br.to) +
           ", \"b\": " + format_double(br.susceptance_b) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

void save_network(const Network& net, const std::string& path) {
  write_text_file(path, network_to_json_text(net));
}

}  // namespace emwave
