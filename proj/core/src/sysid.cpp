#include "pneuarm/sysid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace pneuarm {

namespace {

constexpr double kInfeasibleCost = 1e18;

using Params = std::array<double, 3>;  // (b, a1, a0)

double sum_squared_error(const StepResponseDataset& data, const Params& p) {
  const SecondOrderModel model{p[0], p[1], p[2]};
  if (!(model.b > 0.0) || !(model.a0 > 0.0)) {
    return kInfeasibleCost;
  }
  double cost = 0.0;
  for (size_t level = 0; level < data.averaged.size(); ++level) {
    const auto& y = data.averaged[level];
    const std::vector<double> yhat = step_response(
        model, data.ts, data.pwm_levels[level], static_cast<int>(y.size()));
    for (size_t k = 0; k < y.size(); ++k) {
      const double r = y[k] - yhat[k];
      if (!std::isfinite(r)) {
        return kInfeasibleCost;
      }
      cost += r * r;
    }
  }
  return std::isfinite(cost) ? cost : kInfeasibleCost;
}

bool lex_less(const Params& a, const Params& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Vertex {
  Params x;
  double f;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) with a 5% initial simplex.
Vertex nelder_mead(const StepResponseDataset& data, const Params& start,
                   int max_iter) {
  auto cost = [&](const Params& p) { return sum_squared_error(data, p); };

  std::array<Vertex, 4> simplex;
  simplex[0] = {start, cost(start)};
  for (int i = 0; i < 3; ++i) {
    Params p = start;
    p[i] = (p[i] != 0.0) ? p[i] * 1.05 : 0.00025;
    simplex[i + 1] = {p, cost(p)};
  }
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) {
                       if (a.f != b.f) return a.f < b.f;
                       return lex_less(a.x, b.x);
                     });
  };
  order();

  for (int iter = 0; iter < max_iter; ++iter) {
    const double spread = simplex[3].f - simplex[0].f;
    double size = 0.0;
    for (int i = 1; i < 4; ++i) {
      for (int d = 0; d < 3; ++d) {
        size = std::max(size, std::abs(simplex[i].x[d] - simplex[0].x[d]));
      }
    }
    if (spread <= 1e-14 * (1.0 + std::abs(simplex[0].f)) && size <= 1e-10) {
      break;
    }

    Params centroid{};
    for (int i = 0; i < 3; ++i) {
      for (int d = 0; d < 3; ++d) centroid[d] += simplex[i].x[d] / 3.0;
    }
    auto blend = [&](double coeff) {
      Params p;
      for (int d = 0; d < 3; ++d) {
        p[d] = centroid[d] + coeff * (centroid[d] - simplex[3].x[d]);
      }
      return p;
    };

    const Params refl = blend(1.0);
    const double f_refl = cost(refl);
    if (f_refl < simplex[0].f) {
      const Params exp_p = blend(2.0);
      const double f_exp = cost(exp_p);
      simplex[3] = (f_exp < f_refl) ? Vertex{exp_p, f_exp} : Vertex{refl, f_refl};
    } else if (f_refl < simplex[2].f) {
      simplex[3] = {refl, f_refl};
    } else {
      const bool outside = f_refl < simplex[3].f;
      const Params con = blend(outside ? 0.5 : -0.5);
      const double f_con = cost(con);
      if (f_con < std::min(f_refl, simplex[3].f)) {
        simplex[3] = {con, f_con};
      } else {
        for (int i = 1; i < 4; ++i) {
          for (int d = 0; d < 3; ++d) {
            simplex[i].x[d] = simplex[0].x[d] +
                              0.5 * (simplex[i].x[d] - simplex[0].x[d]);
          }
          simplex[i].f = cost(simplex[i].x);
        }
      }
    }
    order();
  }
  return simplex[0];
}

}  // namespace

int StepResponseDataset::total_samples() const {
  int n = 0;
  for (const auto& y : averaged) n += static_cast<int>(y.size());
  return n;
}

StepResponseDataset average_trials(
    double ts, const std::vector<double>& pwm_levels,
    const std::vector<std::vector<std::vector<double>>>& trials) {
  if (!(ts > 0.0)) {
    throw NonPositiveStepError("sample time must be positive");
  }
  if (pwm_levels.empty() || pwm_levels.size() != trials.size()) {
    throw EmptyLevelError("need one non-empty trial set per PWM level");
  }
  StepResponseDataset data;
  data.ts = ts;
  data.pwm_levels = pwm_levels;
  data.trials = trials;
  data.averaged.reserve(trials.size());
  for (const auto& level : trials) {
    if (level.empty()) {
      throw EmptyLevelError("PWM level has no trials");
    }
    const size_t n = level.front().size();
    std::vector<double> mean(n, 0.0);
    for (const auto& trial : level) {
      if (trial.size() != n) {
        throw RaggedTrialsError("trials at one level differ in length");
      }
      for (size_t k = 0; k < n; ++k) mean[k] += trial[k];
    }
    for (double& v : mean) v /= static_cast<double>(level.size());
    data.averaged.push_back(std::move(mean));
  }
  return data;
}

double fit_metric(const std::vector<double>& y,
                  const std::vector<double>& yhat) {
  if (y.size() != yhat.size() || y.size() < 2) {
    throw TooFewSamplesError("fit metric needs two equal-length sequences");
  }
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) /
                      static_cast<double>(y.size());
  double res = 0.0, dev = 0.0;
  for (size_t k = 0; k < y.size(); ++k) {
    res += (y[k] - yhat[k]) * (y[k] - yhat[k]);
    dev += (y[k] - mean) * (y[k] - mean);
  }
  if (dev == 0.0) {
    throw DegenerateDataError("output has zero variance");
  }
  return 100.0 * (1.0 - std::sqrt(res) / std::sqrt(dev));
}

FitResult fit_second_order(const StepResponseDataset& data,
                           const SecondOrderModel& init) {
  if (data.averaged.empty() || data.averaged.size() != data.pwm_levels.size()) {
    throw EmptyLevelError("dataset has no averaged levels");
  }
  const bool enough = std::any_of(
      data.averaged.begin(), data.averaged.end(),
      [](const std::vector<double>& y) { return y.size() >= 8; });
  if (!enough) {
    throw TooFewSamplesError("need at least one level with 8+ samples");
  }
  std::vector<double> concat;
  concat.reserve(data.total_samples());
  for (const auto& y : data.averaged) {
    concat.insert(concat.end(), y.begin(), y.end());
  }
  const double mean = std::accumulate(concat.begin(), concat.end(), 0.0) /
                      static_cast<double>(concat.size());
  const bool constant = std::all_of(concat.begin(), concat.end(),
                                    [&](double v) { return v == mean; });
  if (constant) {
    throw DegenerateDataError("dataset output has zero variance");
  }

  const Params start{init.b, init.a1, init.a0};
  std::vector<Params> starts{start};
  for (int i = 0; i < 8; ++i) {
    const double factor = std::pow(3.0, -1.0 + 2.0 * i / 7.0);
    starts.push_back({start[0] * factor, start[1] * factor, start[2] * factor});
  }

  Vertex best{start, std::numeric_limits<double>::infinity()};
  for (const Params& s : starts) {
    const Vertex v = nelder_mead(data, s, 2000);
    if (v.f < best.f || (v.f == best.f && lex_less(v.x, best.x))) {
      best = v;
    }
  }
  best = nelder_mead(data, best.x, 2000);  // polish from the winner

  FitResult result;
  result.model = {best.x[0], best.x[1], best.x[2]};
  result.residual_norm = std::sqrt(best.f);

  std::vector<double> concat_hat;
  concat_hat.reserve(concat.size());
  for (size_t level = 0; level < data.averaged.size(); ++level) {
    const std::vector<double> yhat =
        step_response(result.model, data.ts, data.pwm_levels[level],
                      static_cast<int>(data.averaged[level].size()));
    concat_hat.insert(concat_hat.end(), yhat.begin(), yhat.end());
  }
  result.fit_percent = fit_metric(concat, concat_hat);
  return result;
}

StepResponseDataset synthetic_step_dataset(const SecondOrderModel& model,
                                           double ts,
                                           const std::vector<double>& pwm_levels,
                                           double total_time) {
  const int n = static_cast<int>(std::llround(total_time / ts));
  std::vector<std::vector<std::vector<double>>> trials;
  trials.reserve(pwm_levels.size());
  for (double level : pwm_levels) {
    trials.push_back({step_response(model, ts, level, n)});
  }
  return average_trials(ts, pwm_levels, trials);
}

}  // namespace pneuarm
