#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "agpsched/krylov.hpp"
#include "agpsched/model.hpp"

namespace agpsched {

/// g*(lambda) sampled on a grid covering [0, 1].
struct MetricTable {
  std::vector<double> lambdas;   // strictly increasing, endpoints included
  std::vector<double> g_values;  // nonnegative, same length
  int d_A = 1;                   // kFullBasis for the untruncated ansatz
  std::string model_tag;
  std::vector<std::string> warnings;
};

struct TabulateOptions {
  int grid_size = 201;
  int d_A = 1;  // kFullBasis allowed
  double zero_tol = kDefaultZeroTol;
  Reorth reorth = Reorth::kAuto;
  bool adaptive = false;        // refine where log g jumps between neighbors
  double adaptive_jump = 0.5;   // |log g_{j+1} - log g_j| threshold
  int max_refine_rounds = 4;
  int workers = 0;              // 0 = hardware concurrency
};

/// Evaluate g*(lambda_j) for H(lambda) = lambda H_P + (1-lambda) H_V over a
/// uniform grid (optionally refined). Grid points are independent and run in
/// parallel; any failure aborts with the offending lambda in the message.
MetricTable tabulate_metric(const AnnealingModel& model, const TabulateOptions& options);

enum class ScheduleKind { kLinear, kGeodesic, kExternal };

/// A monotone mapping t in [0, T] -> lambda in [0, 1], stored as knots and
/// evaluated with a monotone piecewise-cubic interpolant. lambda(0) = 0 and
/// lambda(T) = 1 hold exactly by construction.
class Schedule {
 public:
  Schedule(std::vector<double> knots_t, std::vector<double> knots_lambda, double total_time,
           ScheduleKind kind, int d_A = 0);

  double lambda_at(double t) const;
  double total_time() const { return total_time_; }
  ScheduleKind kind() const { return kind_; }
  int d_A() const { return d_A_; }
  /// "linear", "geodesic(3)", "geodesic(full)", "external".
  std::string kind_label() const;

  const std::vector<double>& knots_t() const { return knots_t_; }
  const std::vector<double>& knots_lambda() const { return knots_lambda_; }

  /// Integral of sqrt(g) over [0,1] for geodesic schedules (0 otherwise);
  /// the geodesic speed constant is arc_length / T.
  double arc_length = 0.0;
  /// Set when construction had to fall back (e.g. all-zero metric).
  std::string note;

 private:
  std::vector<double> knots_t_;
  std::vector<double> knots_lambda_;
  std::vector<double> slopes_;  // monotone cubic slopes at the knots
  double total_time_;
  ScheduleKind kind_;
  int d_A_;
};

/// Solve lambda-dot = C / sqrt(g) by the arc-length closed form:
/// t(lambda) = T * integral_0^lambda sqrt(g) / integral_0^1 sqrt(g),
/// trapezoid quadrature on the table grid. All-zero metric falls back to the
/// linear schedule with a note.
Schedule geodesic_schedule(const MetricTable& table, double total_time);

Schedule linear_schedule(double total_time);

void write_schedule_csv(const std::filesystem::path& path, const Schedule& schedule,
                        const std::vector<std::string>& comments = {});
Schedule read_schedule_csv(const std::filesystem::path& path);

void write_metric_csv(const std::filesystem::path& path, const MetricTable& table,
                      const std::vector<std::string>& comments = {});
MetricTable read_metric_csv(const std::filesystem::path& path);

}  // namespace agpsched
