#include "pcn/fee_model.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pcn {

bool amounts_close(double x, double y, double tol) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  return std::abs(x - y) <= tol * std::max(1.0, std::abs(y));
}

double fee_linear(const ArcPolicy& policy, double amount) {
  if (!(amount >= 0.0)) {
    throw std::invalid_argument("fee amount must be non-negative");
  }
  return policy.base_fee + policy.fee_rate * amount;
}

double fee_barrier(const ArcPolicy& policy, double amount) {
  const double fee = fee_linear(policy, amount);
  return amount <= policy.balance ? fee : kInfinity;
}

HopAmounts amounts_recursive(std::span<const ArcPolicy> path, double amount) {
  HopAmounts amounts(path.size() + 1);
  amounts.back() = amount;
  for (std::size_t i = path.size(); i-- > 0;) {
    amounts[i] = amounts[i + 1] + fee_linear(path[i], amounts[i + 1]);
  }
  return amounts;
}

HopAmounts amounts_closed_form(std::span<const ArcPolicy> path,
                               double amount) {
  const std::size_t n = path.size();
  // growth[m] = prod_{k=m}^{n-1} (1 + fee_rate_k); growth[n] = 1.
  std::vector<double> growth(n + 1, 1.0);
  for (std::size_t m = n; m-- > 0;) {
    growth[m] = growth[m + 1] * (1.0 + path[m].fee_rate);
  }
  HopAmounts amounts(n + 1);
  double discounted_base = 0.0;
  amounts[n] = amount;
  for (std::size_t i = n; i-- > 0;) {
    discounted_base += path[i].base_fee / growth[i];
    amounts[i] = growth[i] * (amount + discounted_base);
  }
  return amounts;
}

void FeeTable::set(ArcId arc, double amount, double fee) {
  entries_[{arc.value, amount}] = fee;
}

std::optional<double> FeeTable::find(ArcId arc, double amount) const {
  auto it = entries_.find({arc.value, amount});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

FeeTable FeeTable::from_json(std::string_view text, const ChannelGraph& g) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fee table: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("fee table: expected a JSON array");

  FeeTable table;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    const std::string where = "fee table entry " + std::to_string(i);
    if (!entry.is_object() || !entry.contains("arc") ||
        !entry.contains("amount") || !entry.contains("fee")) {
      throw ParseError(where + ": expected {arc, amount, fee}");
    }
    const auto& arc = entry["arc"];
    if (!arc.is_array() || arc.size() != 2 || !arc[0].is_string() ||
        !arc[1].is_string()) {
      throw ParseError(where + ": arc must be [source, target]");
    }
    if (!entry["amount"].is_number() || !entry["fee"].is_number()) {
      throw ParseError(where + ": amount and fee must be numbers");
    }
    const auto source = g.find(arc[0].get<std::string>());
    const auto target = g.find(arc[1].get<std::string>());
    if (!source || !target) throw ParseError(where + ": unknown vertex");

    bool matched = false;
    for (ArcId e : g.out_arcs(*source)) {
      if (g.arc(e).target != *target) continue;
      table.set(e, entry["amount"].get<double>(), entry["fee"].get<double>());
      matched = true;
    }
    if (!matched) {
      throw ParseError(where + ": no arc " + arc[0].get<std::string>() +
                       " -> " + arc[1].get<std::string>());
    }
  }
  return table;
}

FeeTable FeeTable::from_file(const std::string& path, const ChannelGraph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fee table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str(), g);
}

FeeMap FeeMap::tabulated(FeeTable table) {
  FeeMap map(Kind::kTabulated);
  map.table_ = std::move(table);
  return map;
}

std::string_view FeeMap::name() const {
  switch (kind_) {
    case Kind::kLinear:
      return "linear";
    case Kind::kBarrier:
      return "barrier";
    case Kind::kTabulated:
      return "tabulated";
  }
  return "unknown";
}

double FeeMap::fee(const ChannelGraph& g, ArcId arc, double amount) const {
  switch (kind_) {
    case Kind::kLinear:
      return fee_linear(g.arc(arc).policy, amount);
    case Kind::kBarrier:
      return fee_barrier(g.arc(arc).policy, amount);
    case Kind::kTabulated: {
      if (auto fee = table_.find(arc, amount)) return *fee;
      const Arc& a = g.arc(arc);
      std::ostringstream msg;
      msg.precision(17);
      msg << "tabulated fee undefined for arc " << arc.value << " ("
          << g.key(a.source) << " -> " << g.key(a.target) << ") at amount "
          << amount;
      throw FeeLookupError(msg.str());
    }
  }
  return kInfinity;
}

HopAmounts amounts_along(const ChannelGraph& g, std::span<const ArcId> path,
                         const FeeMap& fee, double amount,
                         std::optional<VertexId> zero_fee_source) {
  HopAmounts amounts(path.size() + 1);
  amounts.back() = amount;
  for (std::size_t i = path.size(); i-- > 0;) {
    const double x = amounts[i + 1];
    const bool free = zero_fee_source && g.arc(path[i]).source == *zero_fee_source;
    amounts[i] = x + (free ? 0.0 : fee.fee(g, path[i], x));
  }
  return amounts;
}

ConsistencyVerdict check_consistency(const FeeMap& fee, const ChannelGraph& g,
                                     ArcId arc,
                                     std::span<const AmountPair> pairs) {
  ConsistencyVerdict verdict;
  if (fee.kind() != FeeMap::Kind::kTabulated) {
    // d/da (base + rate * a) = rate; the barrier branch is +inf on a suffix
    // of the domain and never breaks the inequality.
    verdict.analytic_check_passed = g.arc(arc).policy.fee_rate >= -1.0;
    verdict.consistent = verdict.analytic_check_passed;
  }
  for (const AmountPair& p : pairs) {
    if (p.smaller > p.larger) {
      throw std::invalid_argument("consistency pair must satisfy a <= a'");
    }
    const double lhs = p.smaller + fee.fee(g, arc, p.smaller);
    const double rhs = p.larger + fee.fee(g, arc, p.larger);
    if (!(lhs <= rhs)) {
      verdict.consistent = false;
      verdict.violation = p;
      verdict.smaller_total = lhs;
      verdict.larger_total = rhs;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace pcn
