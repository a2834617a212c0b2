#include <benchmark/benchmark.h>

#include "mflag/catalog.hpp"
#include "mflag/connection.hpp"
#include "mflag/matsumoto.hpp"

using namespace mflag;

namespace {

MatsumotoSpace su2_x_r() { return build_su2_x_r(0.3).space; }

// Direct sum of n/3 copies of su(2) with a random-ish diagonal metric.
MatsumotoSpace su2_power(int copies) {
  const int n = 3 * copies;
  std::vector<BracketEntry> br;
  for (int c = 0; c < copies; ++c) {
    const int o = 3 * c;
    const auto unit = [n](int k) { return Vec(Vec::Unit(n, k)); };
    br.push_back({o, o + 1, unit(o + 2)});
    br.push_back({o + 1, o + 2, unit(o)});
    br.push_back({o, o + 2, Vec(-unit(o + 1))});
  }
  auto alg = build_algebra(n, br);
  Vec d(n);
  for (int i = 0; i < n; ++i) d[i] = 1.0 + 0.1 * i;
  const InnerProduct g0 = InnerProduct::identity(n);
  auto pack = phi_from_metrics(g0, InnerProduct(Mat(d.asDiagonal())), alg);
  auto split = reductive_split({}, g0, alg);
  return make_matsumoto_space("su2^k", std::move(alg), std::move(pack), std::move(split),
                              Vec::Zero(n));
}

}  // namespace

static void BM_KoszulConnection(benchmark::State& state) {
  const auto s = su2_power(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(koszul_connection(s.algebra, s.g()));
}
BENCHMARK(BM_KoszulConnection)->Arg(1)->Arg(4)->Arg(10);

static void BM_CurvatureTensor(benchmark::State& state) {
  const auto s = su2_power(static_cast<int>(state.range(0)));
  const auto conn = koszul_connection(s.algebra, s.g());
  for (auto _ : state) benchmark::DoNotOptimize(curvature_tensor(conn, s.algebra));
}
BENCHMARK(BM_CurvatureTensor)->Arg(1)->Arg(4)->Arg(10);

static void BM_ParallelFields(benchmark::State& state) {
  const auto s = su2_power(static_cast<int>(state.range(0)));
  const auto conn = koszul_connection(s.algebra, s.g());
  for (auto _ : state) benchmark::DoNotOptimize(parallel_fields(conn));
}
BENCHMARK(BM_ParallelFields)->Arg(1)->Arg(4);

static void BM_GYClosed(benchmark::State& state) {
  const auto s = su2_x_r();
  const Vec Y = Vec::LinSpaced(4, 0.2, 1.0), U = Vec::Unit(4, 0), V = Vec::Unit(4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(g_Y_closed(Y, U, V, s));
}
BENCHMARK(BM_GYClosed);

static void BM_GYFiniteDifference(benchmark::State& state) {
  const auto s = su2_x_r();
  const Vec Y = Vec::LinSpaced(4, 0.2, 1.0), U = Vec::Unit(4, 0), V = Vec::Unit(4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(g_Y_fd(Y, U, V, s));
}
BENCHMARK(BM_GYFiniteDifference);

static void BM_FlagReport(benchmark::State& state) {
  const auto s = su2_x_r();
  const auto a = analyze_space(s);
  RouteOptions opts;
  opts.routes = static_cast<unsigned>(state.range(0));
  const Vec Y = Vec::LinSpaced(4, 0.2, 1.0), U = Vec::Unit(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(flag_report(s, a, Y, U, opts));
}
BENCHMARK(BM_FlagReport)->Arg(kRouteDirect)->Arg(kRouteClosed)->Arg(kRouteBiInvariant)->Arg(kRouteAll);

static void BM_Sweep(benchmark::State& state) {
  const auto s = su2_x_r();
  const auto a = analyze_space(s);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_flags(s, a, 200, 7));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
