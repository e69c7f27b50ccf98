#pragma once

#include <stdexcept>
#include <vector>

#include "pneuarm/plant.hpp"

namespace pneuarm {

struct EmptyLevelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RaggedTrialsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TooFewSamplesError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateDataError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Averaged constant-PWM step-response data: one angle sequence (degrees)
/// per input level, all sampled at ts.
struct StepResponseDataset {
  double ts = 0.0625;                              ///< sample time [s]
  std::vector<double> pwm_levels;                  ///< input level per entry
  std::vector<std::vector<std::vector<double>>> trials;  ///< per level
  std::vector<std::vector<double>> averaged;       ///< per level

  int total_samples() const;
};

struct FitResult {
  SecondOrderModel model;
  double fit_percent = 0.0;    ///< 100 = perfect
  double residual_norm = 0.0;  ///< [deg], over all levels concatenated
};

/// Element-wise mean of the trials at each level. Throws EmptyLevel when
/// there are no levels or a level has no trials, RaggedTrials on length
/// mismatch within a level.
StepResponseDataset average_trials(
    double ts, const std::vector<double>& pwm_levels,
    const std::vector<std::vector<std::vector<double>>>& trials);

/// 100 * (1 - ||y - yhat|| / ||y - mean(y)||). Throws DegenerateData when y
/// is constant, TooFewSamples when fewer than 2 samples or lengths differ.
double fit_metric(const std::vector<double>& y,
                  const std::vector<double>& yhat);

/// Output-error least squares over (b, a1, a0) with b, a0 kept positive:
/// Nelder-Mead simplex search from the initial guess plus restarts from 8
/// log-spaced scalings of it, candidates simulated with the exact hold
/// discretization at the dataset's sample time. Deterministic; ties broken
/// by lexicographic parameter order.
FitResult fit_second_order(const StepResponseDataset& data,
                           const SecondOrderModel& init);

/// Synthetic noiseless dataset from a model: one trial per level, 10 s at ts.
StepResponseDataset synthetic_step_dataset(
    const SecondOrderModel& model, double ts = 0.0625,
    const std::vector<double>& pwm_levels = {25.0, 50.0, 75.0, 100.0},
    double total_time = 10.0);

}  // namespace pneuarm
