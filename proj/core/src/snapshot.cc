#include "pcn/snapshot.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace pcn {
namespace {

using nlohmann::json;

double parse_number(const json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string& s = value.get_ref<const std::string&>();
    double out = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && end == s.data() + s.size()) return out;
  }
  throw ParseError(where + ": expected a number");
}

struct PolicyFields {
  double fee_base_msat = 0.0;
  double fee_rate_milli_msat = 0.0;
  bool disabled = false;
};

std::optional<PolicyFields> parse_policy(const json& edge, const char* field,
                                         const std::string& where) {
  if (!edge.contains(field) || edge[field].is_null()) return std::nullopt;
  const json& p = edge[field];
  const std::string at = where + "." + field;
  if (!p.is_object()) throw ParseError(at + ": expected an object");
  if (!p.contains("fee_base_msat") || !p.contains("fee_rate_milli_msat")) {
    throw ParseError(at + ": missing fee_base_msat or fee_rate_milli_msat");
  }
  PolicyFields out;
  out.fee_base_msat = parse_number(p["fee_base_msat"], at + ".fee_base_msat");
  out.fee_rate_milli_msat =
      parse_number(p["fee_rate_milli_msat"], at + ".fee_rate_milli_msat");
  if (out.fee_base_msat < 0 || out.fee_rate_milli_msat < 0) {
    throw ParseError(at + ": fees must be non-negative");
  }
  if (p.contains("disabled") && !p["disabled"].is_null()) {
    if (!p["disabled"].is_boolean()) {
      throw ParseError(at + ".disabled: expected a boolean");
    }
    out.disabled = p["disabled"].get<bool>();
  }
  return out;
}

const std::string& string_field(const json& obj, const char* field,
                                const std::string& where) {
  if (!obj.is_object() || !obj.contains(field) || !obj[field].is_string()) {
    throw ParseError(where + ": missing string field '" + field + "'");
  }
  return obj[field].get_ref<const std::string&>();
}

struct PendingArc {
  std::uint32_t source;
  std::uint32_t target;
  ArcPolicy policy;
};

// Emits x as an integer when it is one, so msat fields stay integral.
json number(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x)) &&
      std::abs(r) < 9e15) {
    return static_cast<std::int64_t>(r);
  }
  return x;
}

}  // namespace

std::string IngestReport::to_json() const {
  json j = {{"raw_vertices", raw_vertices},
            {"raw_arcs", raw_arcs},
            {"kept_vertices", kept_vertices},
            {"kept_arcs", kept_arcs},
            {"dropped_no_policy", dropped_no_policy},
            {"dropped_disabled", dropped_disabled},
            {"dropped_isolated", dropped_isolated}};
  return j.dump(2);
}

double assign_balances(double capacity_sat) {
  if (!(capacity_sat >= 0.0)) {
    throw std::invalid_argument("channel capacity must be non-negative");
  }
  return capacity_sat / 2.0;
}

Snapshot load_snapshot(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("snapshot: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("snapshot: expected a JSON object");

  const json empty = json::array();
  const json& nodes = doc.contains("nodes") ? doc["nodes"] : empty;
  const json& edges = doc.contains("edges") ? doc["edges"] : empty;
  if (!nodes.is_array() || !edges.is_array()) {
    throw ParseError("snapshot: 'nodes' and 'edges' must be arrays");
  }

  Snapshot out;
  IngestReport& report = out.report;

  std::vector<std::string> raw_keys;
  raw_keys.reserve(nodes.size());
  std::unordered_map<std::string, std::uint32_t> raw_index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string& key =
        string_field(nodes[i], "pub_key", "nodes[" + std::to_string(i) + "]");
    if (!raw_index.emplace(key, static_cast<std::uint32_t>(i)).second) {
      throw ParseError("nodes[" + std::to_string(i) + "]: duplicate pub_key " +
                       key);
    }
    raw_keys.push_back(key);
  }
  report.raw_vertices = raw_keys.size();

  std::vector<PendingArc> pending;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& edge = edges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    const std::string& k1 = string_field(edge, "node1_pub", where);
    const std::string& k2 = string_field(edge, "node2_pub", where);
    const auto it1 = raw_index.find(k1);
    const auto it2 = raw_index.find(k2);
    if (it1 == raw_index.end() || it2 == raw_index.end()) {
      throw ParseError(where + ": references unknown pub_key " +
                       (it1 == raw_index.end() ? k1 : k2));
    }
    if (it1->second == it2->second) {
      throw ParseError(where + ": channel connects " + k1 + " to itself");
    }
    if (!edge.contains("capacity")) throw ParseError(where + ": missing capacity");
    const double capacity = parse_number(edge["capacity"], where + ".capacity");
    if (capacity < 0) throw ParseError(where + ": negative capacity");
    const double balance = assign_balances(capacity);

    const std::pair<const char*, std::pair<std::uint32_t, std::uint32_t>>
        directions[] = {{"node1_policy", {it1->second, it2->second}},
                        {"node2_policy", {it2->second, it1->second}}};
    for (const auto& [field, ends] : directions) {
      // lnd always writes both policy fields (null when unknown); a field
      // that is missing altogether marks a one-directional channel.
      if (!edge.contains(field)) continue;
      ++report.raw_arcs;
      const auto policy = parse_policy(edge, field, where);
      if (!policy) {
        ++report.dropped_no_policy;
        continue;
      }
      if (policy->disabled) {
        ++report.dropped_disabled;
        continue;
      }
      pending.push_back(
          {ends.first, ends.second,
           ArcPolicy{policy->fee_base_msat / kMsatPerSat,
                     policy->fee_rate_milli_msat / kPartsPerMillion, balance}});
    }
  }

  // Dense ids over vertices that kept at least one arc, in node order.
  std::vector<bool> used(raw_keys.size(), false);
  for (const PendingArc& a : pending) used[a.source] = used[a.target] = true;
  std::vector<std::uint32_t> remap(raw_keys.size(), 0);
  std::vector<std::string> keys;
  for (std::size_t v = 0; v < raw_keys.size(); ++v) {
    if (!used[v]) continue;
    remap[v] = static_cast<std::uint32_t>(keys.size());
    keys.push_back(raw_keys[v]);
  }

  std::vector<ArcSpec> specs;
  specs.reserve(pending.size());
  for (const PendingArc& a : pending) {
    specs.push_back({VertexId{remap[a.source]}, VertexId{remap[a.target]},
                     a.policy});
  }
  report.kept_vertices = keys.size();
  report.kept_arcs = specs.size();
  report.dropped_isolated = report.raw_vertices - report.kept_vertices;
  const std::size_t n = keys.size();
  out.graph = ChannelGraph::build(specs, n, std::move(keys));
  return out;
}

Snapshot load_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open snapshot '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_snapshot(buf.str());
}

std::string serialize_snapshot(const ChannelGraph& g) {
  json nodes = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    nodes.push_back({{"pub_key", g.key(VertexId{static_cast<std::uint32_t>(v)})}});
  }
  json edges = json::array();
  for (const Arc& a : g.arcs()) {
    edges.push_back(
        {{"channel_id", std::to_string(a.id.value)},
         {"node1_pub", g.key(a.source)},
         {"node2_pub", g.key(a.target)},
         {"capacity", number(2.0 * a.policy.balance)},
         {"node1_policy",
          {{"fee_base_msat", number(a.policy.base_fee * kMsatPerSat)},
           {"fee_rate_milli_msat", number(a.policy.fee_rate * kPartsPerMillion)},
           {"disabled", false}}}});
  }
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}}.dump(1);
}

void write_snapshot_file(const ChannelGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write snapshot '" + path + "'");
  out << serialize_snapshot(g) << '\n';
  if (!out) throw Error("failed writing snapshot '" + path + "'");
}

}  // namespace pcn
