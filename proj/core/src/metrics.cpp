#include "meshgnn/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "meshgnn/errors.hpp"

namespace meshgnn {

namespace {

void require_pair(std::span<const double> a, std::span<const double> p, std::size_t min_n) {
  if (a.size() != p.size()) {
    throw ShapeError("metric inputs differ in length (" + std::to_string(a.size()) + " vs " +
                     std::to_string(p.size()) + ")");
  }
  if (a.size() < min_n) {
    throw ShapeError("metric needs at least " + std::to_string(min_n) + " values");
  }
}

}  // namespace

double mse(std::span<const double> actual, std::span<const double> predicted) {
  require_pair(actual, predicted, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = predicted[i] - actual[i];
    sum += e * e;
  }
  return sum / static_cast<double>(actual.size());
}

double rmse(std::span<const double> actual, std::span<const double> predicted) {
  return std::sqrt(mse(actual, predicted));
}

R2Result r2(std::span<const double> actual, std::span<const double> predicted) {
  require_pair(actual, predicted, 2);
  double mean = 0.0;
  for (const double y : actual) mean += y;
  mean /= static_cast<double>(actual.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = predicted[i] - actual[i];
    const double d = actual[i] - mean;
    ss_res += e * e;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0) {
    if (ss_res == 0.0) return {1.0, false};
    return {-std::numeric_limits<double>::infinity(), true};
  }
  return {1.0 - ss_res / ss_tot, false};
}

SimMetrics sim_metrics(std::string sim_id, std::span<const double> actual,
                       std::span<const double> predicted) {
  SimMetrics m;
  m.sim_id = std::move(sim_id);
  m.mse = mse(actual, predicted);
  m.rmse = std::sqrt(m.mse);
  const R2Result r = r2(actual, predicted);
  m.r2 = r.value;
  m.degenerate = r.degenerate;
  return m;
}

EvalReport make_report(std::vector<SimMetrics> rows) {
  EvalReport report;
  report.per_sim = std::move(rows);
  if (report.per_sim.empty()) return report;
  for (const auto& r : report.per_sim) {
    report.mean_mse += r.mse;
    report.mean_rmse += r.rmse;
    report.mean_r2 += r.r2;
  }
  const double n = static_cast<double>(report.per_sim.size());
  report.mean_mse /= n;
  report.mean_rmse /= n;
  report.mean_r2 /= n;
  return report;
}

EvalReport evaluate(const AnyModel& model, const std::vector<Graph>& graphs) {
  std::vector<SimMetrics> rows;
  rows.reserve(graphs.size());
  for (const auto& g : graphs) {
    if (!g.target) throw ConfigError("graph '" + g.name + "' has no target to evaluate against");
    const DenseMatrix pred = predict(model, g);
    rows.push_back(sim_metrics(g.name, g.target->data(), pred.data()));
  }
  return make_report(std::move(rows));
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string report_csv(const EvalReport& report) {
  std::string out = "sim_id,mse,rmse,r2\n";
  for (const auto& r : report.per_sim) {
    out += r.sim_id + "," + format_number(r.mse) + "," + format_number(r.rmse) + "," +
           format_number(r.r2) + "\n";
  }
  out += "mean," + format_number(report.mean_mse) + "," + format_number(report.mean_rmse) +
         "," + format_number(report.mean_r2) + "\n";
  return out;
}

std::string report_table(const EvalReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %14s %12s %10s\n", "simulation", "MSE (N/m)^2",
                "RMSE (N/m)", "R^2");
  out += line;
  out += std::string(55, '-') + "\n";
  for (const auto& r : report.per_sim) {
    std::snprintf(line, sizeof line, "%-16s %14.4f %12.4f %10.4f%s\n", r.sim_id.c_str(), r.mse,
                  r.rmse, r.r2, r.degenerate ? " (degenerate)" : "");
    out += line;
  }
  out += std::string(55, '-') + "\n";
  std::snprintf(line, sizeof line, "%-16s %14.4f %12.4f %10.4f\n", "mean", report.mean_mse,
                report.mean_rmse, report.mean_r2);
  out += line;
  return out;
}

}  // namespace meshgnn
