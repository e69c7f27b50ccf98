#include <benchmark/benchmark.h>

#include <random>

#include "pneuarm/control.hpp"
#include "pneuarm/kinematics.hpp"
#include "pneuarm/plant.hpp"
#include "pneuarm/sensing.hpp"
#include "pneuarm/sim.hpp"
#include "pneuarm/sysid.hpp"
#include "pneuarm/trajectory.hpp"

namespace {

using namespace pneuarm;

void BM_ForwardKinematics(benchmark::State& state) {
  const ArmGeometry geom;
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    benchmark::DoNotOptimize(forward_kinematics(geom, {t, 1.0 - t}));
  }
}
BENCHMARK(BM_ForwardKinematics);

void BM_InverseKinematics(benchmark::State& state) {
  const ArmGeometry geom;
  const CartesianPoint p = forward_kinematics(geom, {0.7, 0.9});
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_kinematics(geom, p));
  }
}
BENCHMARK(BM_InverseKinematics);

void BM_JacobianAndDeterminants(benchmark::State& state) {
  const ArmGeometry geom;
  for (auto _ : state) {
    benchmark::DoNotOptimize(position_jacobian(geom, {0.7, 0.9}));
    benchmark::DoNotOptimize(submatrix_determinants(geom, {0.7, 0.9}));
  }
}
BENCHMARK(BM_JacobianAndDeterminants);

void BM_QuinticEval(benchmark::State& state) {
  const QuinticSegment seg = solve_quintic(0.0, 1.5707, 1.0, Joint::kElbow);
  double t = 0.0;
  for (auto _ : state) {
    t = t < 1.0 ? t + 1e-5 : 0.0;
    benchmark::DoNotOptimize(eval(seg, t));
  }
}
BENCHMARK(BM_QuinticEval);

void BM_PlanCatalogMotion(benchmark::State& state) {
  const ArmGeometry geom;
  const TrajectorySpec spec = setpoint_by_label("P8");
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan(geom, spec));
  }
}
BENCHMARK(BM_PlanCatalogMotion);

void BM_Discretize(benchmark::State& state) {
  const SecondOrderModel m = identified_models().second;
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretize(m, 0.02));
  }
}
BENCHMARK(BM_Discretize);

void BM_PlantStep(benchmark::State& state) {
  const DiscretePlant p = default_elbow_plant(0.02);
  ActuatorState s;
  for (auto _ : state) {
    s = step(p, s, 50.0);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PlantStep);

void BM_PdStep(benchmark::State& state) {
  const PDGains gains = tuned_elbow_gains();
  PDState pd;
  double e = 1.0;
  for (auto _ : state) {
    e = -e;
    auto [cmd, next] = pd_step(gains, pd, e, 0.02);
    pd = next;
    benchmark::DoNotOptimize(cmd);
  }
}
BENCHMARK(BM_PdStep);

void BM_ClosedLoopPoles(benchmark::State& state) {
  const SecondOrderModel m = identified_models().second;
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_loop_poles(tuned_elbow_gains(), m, 0.02));
  }
}
BENCHMARK(BM_ClosedLoopPoles);

void BM_ImuSynthesizeExtract(benchmark::State& state) {
  NoiseModel noise;
  noise.sigma_deg = 0.5;
  ImuSimulator sim(noise);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_angles(sim.synthesize({0.7, 0.9})));
  }
}
BENCHMARK(BM_ImuSynthesizeExtract);

void BM_TenSecondRun(benchmark::State& state) {
  Scenario scn;
  scn.spec = setpoint_by_label("P4");
  scn.noise.sigma_deg = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(scn));
  }
}
BENCHMARK(BM_TenSecondRun)->Unit(benchmark::kMillisecond);

void BM_SetpointSuite(benchmark::State& state) {
  Scenario base;
  base.noise.sigma_deg = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_setpoint_suite(base, 1));
  }
}
BENCHMARK(BM_SetpointSuite)->Unit(benchmark::kMillisecond);

void BM_FitElbowModel(benchmark::State& state) {
  const SecondOrderModel truth = identified_models().second;
  const StepResponseDataset data = synthetic_step_dataset(truth);
  const SecondOrderModel init{3.0 * truth.b, 3.0 * truth.a1, 3.0 * truth.a0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_second_order(data, init));
  }
}
BENCHMARK(BM_FitElbowModel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
