#include <vector>

#include <benchmark/benchmark.h>

#include "gcrkit/catalog.hpp"
#include "gcrkit/classify.hpp"
#include "gcrkit/gcr.hpp"
#include "gcrkit/geometry.hpp"

using namespace gcrkit;

namespace {

Immersion so2() {
  FamilySpec spec;
  spec.tag = FamilyTag::so2_x_so2;
  spec.profile = Profile::expressions(Expr::parse("2+cos(s)", {"s"}), Expr::parse("1.5+sin(s)", {"s"}));
  return make_family(spec);
}

}  // namespace

static void BM_GeometryJets(benchmark::State& state) {
  const Immersion m = so2();
  const std::vector<double> p{0.7, 1.1, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(geometry_jets(m, p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GeometryJets)->DenseRange(2, 4);

static void BM_PrincipalData(benchmark::State& state) {
  const PointGeometry pg = point_geometry(so2(), std::vector<double>{0.7, 1.1, 0.4});
  for (auto _ : state) benchmark::DoNotOptimize(principal_data(pg));
}
BENCHMARK(BM_PrincipalData);

static void BM_StructuralResiduals(benchmark::State& state) {
  const Immersion m = so2();
  const std::vector<double> p{0.7, 1.1, 0.4};
  const GeometryJets gj = geometry_jets(m, p, 3);
  const PointGeometry pg = point_geometry(gj);
  const PrincipalData pd = principal_data(pg);
  const PositionAngles pa = position_angles(gj, pg);
  for (auto _ : state) benchmark::DoNotOptimize(structural_residuals(m, p, pg, pd, pa));
}
BENCHMARK(BM_StructuralResiduals);

static void BM_ClassifyGrid(benchmark::State& state) {
  const Immersion m = so2();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_surface(m, GridSpec{{n, n, n}}, {}, 1));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_ClassifyGrid)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
