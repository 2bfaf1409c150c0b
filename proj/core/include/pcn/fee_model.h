#pragma once

// Arc fee functions and the per-path amount recurrence.
//
// Forwarding an amount x along an arc costs base_fee + fee_rate * x, and the
// arc's source must first receive x plus that fee. Along a path e_1..e_n with
// amount a delivered to the destination, the amounts that must reach each path
// vertex satisfy
//
//   a_{n+1} = a,   a_i = a_{i+1} + fee(e_i, a_{i+1}),
//
// and the closed form is
//
//   a_i = P_i * (a + sum_{m=i}^{n} base_fee(e_m) / P_m),
//   P_m = prod_{k=m}^{n} (1 + fee_rate(e_k)).

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pcn/graph.h"

namespace pcn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Absolute/relative tolerance for comparing real-valued amounts.
inline constexpr double kAmountTolerance = 1e-9;

// |x - y| <= tol * max(1, |y|); infinities compare equal to themselves.
bool amounts_close(double x, double y, double tol = kAmountTolerance);

// base_fee + fee_rate * amount. Throws std::invalid_argument if amount < 0.
double fee_linear(const ArcPolicy& policy, double amount);

// fee_linear when amount <= balance, +infinity otherwise.
double fee_barrier(const ArcPolicy& policy, double amount);

// Amounts a_1..a_{n+1} for a path of n arcs; a_{n+1} == amount.
using HopAmounts = std::vector<double>;

HopAmounts amounts_recursive(std::span<const ArcPolicy> path, double amount);
HopAmounts amounts_closed_form(std::span<const ArcPolicy> path, double amount);

// Exact (arc, amount) -> fee lookup table.
class FeeTable {
 public:
  void set(ArcId arc, double amount, double fee);
  std::optional<double> find(ArcId arc, double amount) const;
  std::size_t size() const { return entries_.size(); }

  // Parses a JSON array of {"arc": [source_key, target_key], "amount": x,
  // "fee": y}. An entry applies to every arc between that ordered vertex pair.
  // Throws ParseError on malformed input or unknown endpoints.
  static FeeTable from_json(std::string_view text, const ChannelGraph& g);
  static FeeTable from_file(const std::string& path, const ChannelGraph& g);

 private:
  std::map<std::pair<std::uint32_t, double>, double> entries_;
};

// Pluggable fee function evaluated per (arc, amount).
class FeeMap {
 public:
  enum class Kind { kLinear, kBarrier, kTabulated };

  static FeeMap linear() { return FeeMap(Kind::kLinear); }
  static FeeMap barrier() { return FeeMap(Kind::kBarrier); }
  static FeeMap tabulated(FeeTable table);

  Kind kind() const { return kind_; }
  std::string_view name() const;

  // Throws FeeLookupError for amounts a tabulated map does not define.
  double fee(const ChannelGraph& g, ArcId arc, double amount) const;

 private:
  explicit FeeMap(Kind kind) : kind_(kind) {}

  Kind kind_;
  FeeTable table_;
};

// Amounts along an arc sequence of g under an arbitrary fee map. When
// zero_fee_source is set, arcs leaving that vertex charge nothing.
HopAmounts amounts_along(const ChannelGraph& g, std::span<const ArcId> path,
                         const FeeMap& fee, double amount,
                         std::optional<VertexId> zero_fee_source = {});

struct AmountPair {
  double smaller = 0.0;
  double larger = 0.0;
};

struct ConsistencyVerdict {
  bool consistent = true;
  // First sampled pair with a + f(a) > a' + f(a').
  std::optional<AmountPair> violation;
  double smaller_total = 0.0;
  double larger_total = 0.0;
  // Only meaningful for Linear/Barrier maps: fee derivative >= -1.
  bool analytic_check_passed = true;
};

// Tests a + f(e, a) <= a' + f(e, a') on each pair. Throws
// std::invalid_argument if some pair has smaller > larger, and
// FeeLookupError when a tabulated map lacks one of the amounts.
ConsistencyVerdict check_consistency(const FeeMap& fee, const ChannelGraph& g,
                                     ArcId arc,
                                     std::span<const AmountPair> pairs);

}  // namespace pcn
