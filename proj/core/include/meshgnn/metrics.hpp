#pragma once

#include <span>
#include <string>
#include <vector>

#include "meshgnn/artifact.hpp"
#include "meshgnn/graph.hpp"

namespace meshgnn {

// (1/n) sum (predicted - actual)^2. Throws ShapeError on length mismatch or
// empty input.
double mse(std::span<const double> actual, std::span<const double> predicted);
double rmse(std::span<const double> actual, std::span<const double> predicted);

// Coefficient of determination 1 - SS_res / SS_tot, where SS_tot is taken
// about the mean of `actual`. With SS_tot == 0 the value is 1 when the fit
// is exact and -infinity (degenerate = true) otherwise. Requires n >= 2.
struct R2Result {
  double value = 0.0;
  bool degenerate = false;
};
R2Result r2(std::span<const double> actual, std::span<const double> predicted);

struct SimMetrics {
  std::string sim_id;
  double mse = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
  bool degenerate = false;
};

struct EvalReport {
  std::vector<SimMetrics> per_sim;
  double mean_mse = 0.0;
  double mean_rmse = 0.0;
  double mean_r2 = 0.0;
};

SimMetrics sim_metrics(std::string sim_id, std::span<const double> actual,
                       std::span<const double> predicted);
// Arithmetic means over the rows.
EvalReport make_report(std::vector<SimMetrics> rows);

// Eval-mode predictions on each labelled graph, one row per graph.
EvalReport evaluate(const AnyModel& model, const std::vector<Graph>& graphs);

// `sim_id,mse,rmse,r2` rows followed by a `mean,...` summary row.
std::string report_csv(const EvalReport& report);
// Fixed-width table for terminals.
std::string report_table(const EvalReport& report);

// Shortest decimal text that reads back as the same double.
std::string format_number(double value);

}  // namespace meshgnn
