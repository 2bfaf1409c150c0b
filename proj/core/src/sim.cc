#include "pcn/sim.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "pcn/fee_model.h"
#include "pcn/pathfinding.h"

namespace pcn {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

constexpr double kBinWidth = 5.0;
constexpr char kCsvHeader[] =
    "payment_id,source,destination,amount,uni_relaxations,bi_relaxations,"
    "reduction_pct,uni_fee,bi_fee,path_len";

std::string describe(const ChannelGraph& g, const Payment& p) {
  return g.key(p.source) + " -> " + g.key(p.destination) + " amount " +
         std::to_string(p.amount);
}

json time_json(std::chrono::nanoseconds t) {
  return std::chrono::duration<double>(t).count();
}

json mean_std_json(const MeanStd& m) {
  return {{"mean", m.mean}, {"std", m.std}};
}

}  // namespace

bool VertexFilter::accepts(const ChannelGraph& g, VertexId v) const {
  return !out_degree_below || g.out_degree(v) < *out_degree_below;
}

Query to_query(const Payment& p) {
  return Query{p.source, p.destination, static_cast<double>(p.amount)};
}

std::vector<Payment> sample_payments(const ChannelGraph& g, std::size_t n,
                                     std::uint64_t seed,
                                     const VertexFilter& filter,
                                     const SamplerOptions& options) {
  std::vector<VertexId> eligible;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (filter.accepts(g, VertexId{v})) eligible.push_back(VertexId{v});
  }
  if (eligible.size() < 2) {
    throw Error("payment sampling needs at least 2 eligible vertices, found " +
                std::to_string(eligible.size()));
  }
  if (options.max_amount < 1) {
    throw std::invalid_argument("maximum payment amount must be >= 1");
  }

  const std::size_t cap =
      options.max_attempts != 0 ? options.max_attempts : 1000 * n + 10000;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, eligible.size() - 1);
  std::uniform_int_distribution<std::size_t> second(0, eligible.size() - 2);
  std::uniform_int_distribution<std::int64_t> amount(1, options.max_amount);
  const FeeMap fee = FeeMap::linear();

  std::vector<Payment> out;
  out.reserve(n);
  std::size_t attempts = 0;
  while (out.size() < n) {
    if (attempts == cap) {
      throw Error("payment sampling accepted " + std::to_string(out.size()) +
                  " of " + std::to_string(n) + " payments after " +
                  std::to_string(attempts) + " attempts");
    }
    ++attempts;
    // Two draws without replacement.
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i) ++j;
    const Payment candidate{eligible[i], eligible[j], amount(rng)};
    if (plan_unidirectional(g, to_query(candidate), fee).found) {
      out.push_back(candidate);
    }
  }
  return out;
}

double reduction_percent(std::uint64_t uni, std::uint64_t bi) {
  if (uni == 0) return 0.0;
  return 100.0 * (static_cast<double>(uni) - static_cast<double>(bi)) /
         static_cast<double>(uni);
}

std::vector<HistogramBin> reduction_histogram(const std::vector<double>& values) {
  const std::size_t n_bins = static_cast<std::size_t>(100.0 / kBinWidth);
  std::vector<HistogramBin> bins;
  bins.push_back({-std::numeric_limits<double>::infinity(), 0.0, 0});
  for (std::size_t b = 0; b < n_bins; ++b) {
    bins.push_back({kBinWidth * static_cast<double>(b),
                    kBinWidth * static_cast<double>(b + 1), 0});
  }
  for (double x : values) {
    if (x < 0.0) {
      ++bins.front().count;
      continue;
    }
    const auto b = std::min(static_cast<std::size_t>(x / kBinWidth), n_bins - 1);
    ++bins[b + 1].count;
  }
  return bins;
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double x : values) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / (n - 1.0));
  return out;
}

ExperimentSummary summarize(const std::vector<PaymentMetrics>& metrics) {
  ExperimentSummary s;
  s.n_payments = metrics.size();
  std::vector<double> uni, bi, red;
  uni.reserve(metrics.size());
  bi.reserve(metrics.size());
  red.reserve(metrics.size());
  for (const PaymentMetrics& m : metrics) {
    uni.push_back(static_cast<double>(m.uni_relaxations));
    bi.push_back(static_cast<double>(m.bi_relaxations));
    red.push_back(m.reduction_pct);
  }
  s.uni_relaxations = mean_std(uni);
  s.bi_relaxations = mean_std(bi);
  s.reduction_pct = mean_std(red);
  s.histogram = reduction_histogram(red);
  return s;
}

std::string ExperimentSummary::to_json() const {
  json hist = json::array();
  for (const HistogramBin& b : histogram) {
    hist.push_back({{"bin_lo", std::isinf(b.lo) ? json(nullptr) : json(b.lo)},
                    {"bin_hi", b.hi},
                    {"count", b.count}});
  }
  json j = {{"n_payments", n_payments},
            {"uni_relaxations", mean_std_json(uni_relaxations)},
            {"bi_relaxations", mean_std_json(bi_relaxations)},
            {"reduction_pct", mean_std_json(reduction_pct)},
            {"histogram", std::move(hist)},
            {"wall_time_s",
             {{"uni_total", time_json(uni_total_time)},
              {"bi_total", time_json(bi_total_time)},
              {"uni_per_payment", time_json(uni_per_payment)},
              {"bi_per_payment", time_json(bi_per_payment)}}}};
  return j.dump(2);
}

ExperimentResult run_experiment(const ChannelGraph& g,
                                const std::vector<Payment>& payments,
                                const ExperimentOptions& options) {
  const std::size_t n = payments.size();
  std::vector<PaymentMetrics> metrics(n);
  std::vector<std::chrono::nanoseconds> uni_time(n), bi_time(n);
  std::vector<std::exception_ptr> errors(n);
  const FeeMap fee = FeeMap::linear();

  auto run_one = [&](std::size_t i) {
    try {
      const Payment& p = payments[i];
      const Query q = to_query(p);
      const PathResult uni = plan_unidirectional(g, q, fee);
      if (!uni.found) {
        throw Error("payment " + std::to_string(i) + " (" + describe(g, p) +
                    ") is infeasible");
      }
      const PathResult bi = plan_partial_bidirectional(g, q, fee);
      PaymentMetrics& m = metrics[i];
      m.payment_id = i;
      m.payment = p;
      m.uni_relaxations = uni.stats.relaxations;
      m.bi_relaxations = bi.stats.relaxations;
      m.reduction_pct = reduction_percent(m.uni_relaxations, m.bi_relaxations);
      m.uni_fee = uni.total_fee;
      m.bi_fee = bi.total_fee;
      m.path_len = uni.path_length();
      uni_time[i] = uni.stats.wall_time;
      bi_time[i] = bi.stats.wall_time;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  std::size_t threads = options.threads == 0
                            ? std::max(1u, std::thread::hardware_concurrency())
                            : options.threads;
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += threads) run_one(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  result.summary = summarize(metrics);
  for (std::size_t i = 0; i < n; ++i) {
    result.summary.uni_total_time += uni_time[i];
    result.summary.bi_total_time += bi_time[i];
  }
  if (n > 0) {
    result.summary.uni_per_payment = result.summary.uni_total_time / n;
    result.summary.bi_per_payment = result.summary.bi_total_time / n;
  }
  result.metrics = std::move(metrics);
  return result;
}

std::string BenchmarkReport::to_json() const {
  json j = {{"n_payments", n_payments},
            {"repetitions", repetitions},
            {"uni",
             {{"mean_total_s", time_json(uni.mean_total)},
              {"mean_per_payment_s", time_json(uni.mean_per_payment)}}},
            {"bi",
             {{"mean_total_s", time_json(bi.mean_total)},
              {"mean_per_payment_s", time_json(bi.mean_per_payment)}}},
            {"per_payment_defined", per_payment_defined},
            {"time_reduction_pct", time_reduction_pct}};
  return j.dump(2);
}

BenchmarkReport benchmark(const ChannelGraph& g,
                          const std::vector<Payment>& payments,
                          std::size_t repetitions) {
  if (repetitions == 0) {
    throw std::invalid_argument("benchmark needs at least one repetition");
  }
  const FeeMap fee = FeeMap::linear();
  std::vector<Query> queries;
  queries.reserve(payments.size());
  for (const Payment& p : payments) queries.push_back(to_query(p));

  // The fee sum keeps the searches observable.
  double checksum = 0.0;
  auto time_planner = [&](auto&& planner) {
    if (queries.empty()) return std::chrono::nanoseconds{0};
    const auto start = Clock::now();
    for (const Query& q : queries) checksum += planner(q).total_fee;
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                                start);
  };

  std::chrono::nanoseconds uni_sum{0}, bi_sum{0};
  for (std::size_t r = 0; r < repetitions; ++r) {
    uni_sum += time_planner(
        [&](const Query& q) { return plan_unidirectional(g, q, fee); });
    bi_sum += time_planner(
        [&](const Query& q) { return plan_partial_bidirectional(g, q, fee); });
  }

  BenchmarkReport report;
  report.n_payments = payments.size();
  report.repetitions = repetitions;
  report.uni.mean_total = uni_sum / repetitions;
  report.bi.mean_total = bi_sum / repetitions;
  report.per_payment_defined = !payments.empty();
  if (report.per_payment_defined) {
    report.uni.mean_per_payment = report.uni.mean_total / payments.size();
    report.bi.mean_per_payment = report.bi.mean_total / payments.size();
  }
  if (report.uni.mean_total.count() > 0) {
    report.time_reduction_pct =
        100.0 *
        static_cast<double>(report.uni.mean_total.count() -
                            report.bi.mean_total.count()) /
        static_cast<double>(report.uni.mean_total.count());
  }
  volatile double sink = checksum;
  (void)sink;
  return report;
}

ResultPaths ResultPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "payments.csv", dir / "summary.json", dir / "histogram.csv"};
}

void write_results(const ChannelGraph& g,
                   const std::vector<PaymentMetrics>& metrics,
                   const ExperimentSummary& summary, const ResultPaths& paths) {
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
  };

  {
    std::ofstream out = open(paths.payments_csv);
    out << kCsvHeader << '\n';
    for (const PaymentMetrics& m : metrics) {
      out << m.payment_id << ',' << g.key(m.payment.source) << ','
          << g.key(m.payment.destination) << ',' << m.payment.amount << ','
          << m.uni_relaxations << ',' << m.bi_relaxations << ','
          << m.reduction_pct << ',' << m.uni_fee << ',' << m.bi_fee << ','
          << m.path_len << '\n';
    }
    if (!out) throw Error("failed writing '" + paths.payments_csv.string() + "'");
  }
  {
    std::ofstream out = open(paths.summary_json);
    out << summary.to_json() << '\n';
    if (!out) throw Error("failed writing '" + paths.summary_json.string() + "'");
  }
  {
    std::ofstream out = open(paths.histogram_csv);
    out << "bin_lo,bin_hi,count\n";
    for (const HistogramBin& b : summary.histogram) {
      if (std::isinf(b.lo)) {
        out << "-inf";
      } else {
        out << b.lo;
      }
      out << ',' << b.hi << ',' << b.count << '\n';
    }
    if (!out) throw Error("failed writing '" + paths.histogram_csv.string() + "'");
  }
}

std::vector<PaymentMetrics> read_metrics_csv(const ChannelGraph& g,
                                             const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError(path.string() + ": unexpected header");
  }
  std::vector<PaymentMetrics> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != 10) throw ParseError(where + ": expected 10 columns");
    try {
      PaymentMetrics m;
      m.payment_id = std::stoull(cells[0]);
      const auto s = g.find(cells[1]);
      const auto t = g.find(cells[2]);
      if (!s || !t) throw ParseError(where + ": unknown vertex");
      m.payment = Payment{*s, *t, std::stoll(cells[3])};
      m.uni_relaxations = std::stoull(cells[4]);
      m.bi_relaxations = std::stoull(cells[5]);
      m.reduction_pct = std::stod(cells[6]);
      m.uni_fee = std::stod(cells[7]);
      m.bi_fee = std::stod(cells[8]);
      m.path_len = std::stoull(cells[9]);
      out.push_back(m);
    } catch (const std::logic_error&) {
      throw ParseError(where + ": malformed number");
    }
  }
  return out;
}

}  // namespace pcn
