// Microbenchmarks for the performance-relevant kernels: local operator
// construction, global assembly, the preconditioned CG solve, and one full
// implicit time step.

#include <benchmark/benchmark.h>

#include <Eigen/Sparse>

#include "fhnvem/assembly.hpp"
#include "fhnvem/experiments.hpp"
#include "fhnvem/linear_solver.hpp"
#include "fhnvem/timestepper.hpp"
#include "fhnvem/vem_local.hpp"

using namespace fhnvem;

namespace {

const PolygonalMesh& voronoi_mesh() {
  static const PolygonalMesh mesh = generate_voronoi_mesh(1024, 3, 42);
  return mesh;
}

void BM_ElementOperators(benchmark::State& state) {
  const PolygonalMesh& mesh = voronoi_mesh();
  int cell = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_element_operators(mesh.cell_geometry(cell)));
    cell = (cell + 1) % mesh.num_cells();
  }
}
BENCHMARK(BM_ElementOperators);

void BM_GlobalAssembly(benchmark::State& state) {
  const PolygonalMesh mesh = generate_square_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_global(mesh));
  state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_GlobalAssembly)->Arg(16)->Arg(32);

void BM_CgSolve(benchmark::State& state) {
  const PolygonalMesh mesh = generate_square_mesh(static_cast<int>(state.range(0)));
  const GlobalOperators ops = assemble_global(mesh);
  const double dt = 0.01;
  const double diffusion = 0.01;
  const Eigen::VectorXd diagonal =
      (ops.mass.diagonal() / dt + diffusion * ops.stiffness.diagonal()).eval();
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(ops.num_dofs(), 1.0);
  const auto apply = [&](const Eigen::VectorXd& x) {
    return Eigen::VectorXd((ops.mass * x) / dt + diffusion * (ops.stiffness * x));
  };
  for (auto _ : state) benchmark::DoNotOptimize(pcg(apply, rhs, diagonal, 1e-10, 20000));
}
BENCHMARK(BM_CgSolve)->Arg(32)->Arg(64);

void BM_AdvanceStep(benchmark::State& state) {
  const PolygonalMesh mesh = generate_square_mesh(static_cast<int>(state.range(0)));
  const GlobalOperators ops = assemble_global(mesh);
  const ModelSpec model = example1_model();
  const FieldState initial = initial_state(mesh, model);
  const TimeGrid grid{0.0125, 1};  // one implicit step at dt = 1/80
  const PicardConfig picard;
  const LinearSolverConfig linear;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_simulation(ops, model, initial, grid, picard, linear));
}
BENCHMARK(BM_AdvanceStep)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
