// Copyright 2026 The hflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "hflow/common/error.hpp"
#include "hflow/himeno/field_io.hpp"
#include "hflow/himeno/solver.hpp"
#include "oracle/himeno_frozen_values.hpp"
#include "oracle/reference_himeno.hpp"
#include "support/counting_float.hpp"
#include "support/test_util.hpp"

namespace hflow::himeno {
namespace {

using testing::fnv1a;
using testing::from_bits;
using testing::rel_err;
using testing::to_bits;
namespace frozen = oracle::frozen;

const GridDims kSmall{17, 17, 33};
const GridDims kMedium{33, 33, 65};

HimenoProblem fixed_point_problem(GridDims dims) {
  HimenoProblem pr = init_problem(dims);
  fill_uniform_pressure(pr, 1.0f);
  return pr;
}

TEST(GridDims, RejectsAxesBelowThree) {
  EXPECT_THROW(make_dims(2, 5, 5), InvalidDimension);
  EXPECT_THROW(make_dims(5, 5, 0), InvalidDimension);
  EXPECT_THROW(init_problem(GridDims{3, 2, 3}), InvalidDimension);
  EXPECT_EQ(make_dims(3, 3, 3).interior_cells(), 1u);
  EXPECT_EQ(make_dims(256, 128, 128).interior_cells(), 254ull * 126 * 126);
}

TEST(InitProblem, PressureEndPlanes) {
  const HimenoProblem pr = init_problem(kSmall);
  for (std::size_t i = 0; i < kSmall.nx; ++i) {
    for (std::size_t j = 0; j < kSmall.ny; ++j) {
      EXPECT_EQ(pr.p(i, j, 0), 0.0f);
      EXPECT_EQ(pr.p(i, j, kSmall.nz - 1), 1.0f);
    }
  }
  EXPECT_EQ(pr.omega, 0.8f);
  EXPECT_EQ(pr.a[3](4, 4, 4), 1.0f / 6.0f);
}

TEST(InitProblem, MatchesReferenceByteForByte) {
  const HimenoProblem pr = init_problem(kSmall);
  const oracle::RefHimeno ref(17, 17, 33);
  auto same = [](const Field& f, const std::vector<float>& v) {
    return std::memcmp(f.data(), v.data(), v.size() * sizeof(float)) == 0;
  };
  for (int n = 0; n < 4; ++n) EXPECT_TRUE(same(pr.a[n], ref.a[n])) << "a" << n;
  for (int n = 0; n < 3; ++n) {
    EXPECT_TRUE(same(pr.b[n], ref.b[n])) << "b" << n;
    EXPECT_TRUE(same(pr.c[n], ref.c[n])) << "c" << n;
  }
  EXPECT_TRUE(same(pr.p, ref.p));
  EXPECT_TRUE(same(pr.wrk1, ref.wrk1));
  EXPECT_TRUE(same(pr.bnd, ref.bnd));
  EXPECT_EQ(fnv1a(pr.p.values()), frozen::kSmallPInitFnv);
  EXPECT_EQ(fnv1a(init_problem(kMedium).p.values()), frozen::kMediumPInitFnv);
}

TEST(CellUpdate, UniformFieldIsFixedPoint) {
  const HimenoProblem pr = fixed_point_problem(kSmall);
  const auto u = cell_update(pr, 5, 7, 9);
  EXPECT_EQ(u.ss, 0.0f);
  EXPECT_EQ(u.value, 1.0f);
}

TEST(CellUpdate, ZeroPressureGivesZeroCorrection) {
  HimenoProblem pr = init_problem(kSmall);
  fill_uniform_pressure(pr, 0.0f);
  EXPECT_EQ(cell_update(pr, 1, 1, 1).ss, 0.0f);
  EXPECT_EQ(cell_update(pr, 15, 15, 31).ss, 0.0f);
}

TEST(CellUpdate, ReferenceCellIsBitExact) {
  EXPECT_EQ(to_bits(cell_update(init_problem(kSmall), 1, 1, 1).ss), frozen::kSmallSs111Bits);
  EXPECT_EQ(to_bits(cell_update(init_problem(kMedium), 1, 1, 1).ss), frozen::kMediumSs111Bits);
  const oracle::RefHimeno ref(17, 17, 33);
  const HimenoProblem pr = init_problem(kSmall);
  for (int k = 1; k < 32; ++k) {
    EXPECT_EQ(to_bits(cell_update(pr, 8, 3, k).ss), to_bits(ref.ss_at(8, 3, k))) << k;
  }
}

TEST(CellUpdate, BoundaryIndexIsOutOfRange) {
  const HimenoProblem pr = init_problem(kSmall);
  EXPECT_THROW(cell_update(pr, 0, 1, 1), OutOfRange);
  EXPECT_THROW(cell_update(pr, 1, 16, 1), OutOfRange);
  EXPECT_THROW(cell_update(pr, 1, 1, 32), OutOfRange);
  EXPECT_THROW(cell_update(pr, 1, 1, 100), OutOfRange);
}

TEST(JacobiSweep, FixedPointHasZeroResidual) {
  HimenoProblem pr = fixed_point_problem(kSmall);
  const SweepResult r = jacobi_sweep(pr);
  EXPECT_EQ(r.gosa, 0.0f);
  EXPECT_EQ(r.cells_updated, kSmall.interior_cells());
}

TEST(JacobiSweep, SingleInteriorCell) {
  HimenoProblem pr = init_problem(make_dims(3, 3, 3));
  EXPECT_EQ(jacobi_sweep(pr).cells_updated, 1u);
}

TEST(JacobiSweep, ReferenceResidualAndUntouchedBoundaries) {
  HimenoProblem pr = init_problem(kSmall);
  const Field p_before = pr.p;
  const SweepResult r = jacobi_sweep(pr);
  oracle::RefHimeno ref(17, 17, 33);
  EXPECT_LE(rel_err(r.gosa, ref.jacobi_once(kDefaultGosaWidth)), 1e-6);
  EXPECT_GE(r.gosa, 0.0f);
  EXPECT_EQ(pr.p, p_before);
  for (std::size_t i = 0; i < kSmall.nx; ++i) {
    for (std::size_t j = 0; j < kSmall.ny; ++j) {
      for (std::size_t k = 0; k < kSmall.nz; ++k) {
        const bool boundary = i == 0 || j == 0 || k == 0 || i + 1 == kSmall.nx ||
                              j + 1 == kSmall.ny || k + 1 == kSmall.nz;
        if (boundary) {
          ASSERT_EQ(pr.wrk2(i, j, k), 0.0f);
        }
      }
    }
  }
}

TEST(JacobiSweep, WidthOneAccumulatorIsSequentialSum) {
  // With a single partial sum the reduction order is the reference loop order.
  HimenoProblem pr = init_problem(kSmall);
  SweepOptions opts;
  opts.gosa_width = 1;
  EXPECT_EQ(to_bits(jacobi_sweep(pr, opts).gosa), frozen::kSmallGosaBits[0]);
  opts.gosa_width = 0;
  EXPECT_THROW(jacobi_sweep(pr, opts), InvalidArgument);
}

TEST(CopyBack, FixedPointLeavesPressureUnchanged) {
  HimenoProblem pr = fixed_point_problem(kSmall);
  const Field before = pr.p;
  jacobi_sweep(pr);
  copy_back(pr);
  EXPECT_EQ(pr.p, before);
}

TEST(CopyBack, MatchesOraclePressureAfterOneIteration) {
  HimenoProblem pr = init_problem(kSmall);
  jacobi_sweep(pr);
  copy_back(pr);
  EXPECT_EQ(fnv1a(pr.p.values()), frozen::kSmallPAfterOneFnv);

  HimenoProblem med = init_problem(kMedium);
  jacobi_sweep(med);
  copy_back(med);
  EXPECT_EQ(fnv1a(med.p.values()), frozen::kMediumPAfterOneFnv);
}

TEST(CopyBack, Idempotent) {
  HimenoProblem pr = init_problem(kSmall);
  jacobi_sweep(pr);
  copy_back(pr);
  const Field once = pr.p;
  copy_back(pr);
  EXPECT_EQ(pr.p, once);
}

TEST(RunBenchmark, TracksTripleLoopOracle) {
  const BenchmarkResult r = run_benchmark(kSmall, 10);
  ASSERT_EQ(r.gosa_trace.size(), 10u);
  oracle::RefHimeno ref(17, 17, 33);
  for (std::size_t n = 0; n < 10; ++n) {
    EXPECT_LE(rel_err(r.gosa_trace[n], ref.jacobi_once(kDefaultGosaWidth)), 1e-5) << n;
  }
  EXPECT_GT(r.elapsed_seconds, 0.0);
  EXPECT_GT(r.mflops, 0.0);
}

TEST(RunBenchmark, SequentialAccumulationMatchesFrozenReference) {
  // The reference sums gosa in one float; width 1 reproduces that order.
  SweepOptions opts;
  opts.gosa_width = 1;
  const auto small = run_benchmark(kSmall, 20, opts).gosa_trace;
  const auto medium = run_benchmark(kMedium, 20, opts).gosa_trace;
  for (std::size_t n = 0; n < 20; ++n) {
    EXPECT_EQ(to_bits(small[n]), frozen::kSmallGosaBits[n]) << n;
    EXPECT_EQ(to_bits(medium[n]), frozen::kMediumGosaBits[n]) << n;
  }
}

TEST(RunBenchmark, FixedPointTraceIsZero) {
  HimenoProblem pr = fixed_point_problem(kSmall);
  JacobiSweeper sweeper;
  for (int n = 0; n < 5; ++n) {
    EXPECT_EQ(sweeper.sweep(pr).gosa, 0.0f);
    copy_back(pr);
  }
}

TEST(RunBenchmark, BoundaryPreserved) {
  HimenoProblem final_state;
  run_benchmark(kSmall, 3, {}, &final_state);
  const HimenoProblem init = init_problem(kSmall);
  for (std::size_t i = 0; i < kSmall.nx; ++i) {
    for (std::size_t j = 0; j < kSmall.ny; ++j) {
      EXPECT_EQ(final_state.p(i, j, 0), init.p(i, j, 0));
      EXPECT_EQ(final_state.p(i, j, kSmall.nz - 1), init.p(i, j, kSmall.nz - 1));
    }
  }
  for (std::size_t k = 0; k < kSmall.nz; ++k) {
    EXPECT_EQ(final_state.p(0, 5, k), init.p(0, 5, k));
    EXPECT_EQ(final_state.p(5, kSmall.ny - 1, k), init.p(5, kSmall.ny - 1, k));
  }
}

TEST(RunBenchmark, RejectsZeroIterations) {
  EXPECT_THROW(run_benchmark(kSmall, 0), InvalidArgument);
}

TEST(RunBenchmark, DeterministicAcrossThreadsAndKernels) {
  std::vector<float> reference;
  for (KernelIsa isa : compiled_isas()) {
    if (!isa_supported(isa)) continue;
    for (unsigned threads : {1u, 2u, 3u, 8u}) {
      SweepOptions opts;
      opts.isa = isa;
      opts.threads = threads;
      const auto trace = run_benchmark(kMedium, 4, opts).gosa_trace;
      if (reference.empty()) reference = trace;
      ASSERT_EQ(trace.size(), reference.size());
      for (std::size_t n = 0; n < trace.size(); ++n) {
        EXPECT_EQ(to_bits(trace[n]), to_bits(reference[n]))
            << to_string(isa) << " threads=" << threads << " iter " << n;
      }
    }
  }
}

TEST(Mflops, Arithmetic) {
  EXPECT_EQ(total_flops(make_dims(256, 128, 128), 200), 27421027200ull);
  EXPECT_NEAR(mflops(make_dims(256, 128, 128), 200, 10.0), 2742.10272, 1e-9);
  EXPECT_NEAR(mflops(make_dims(3, 3, 3), 1, 1.0), 0.000034, 1e-15);
  EXPECT_NEAR(mflops(make_dims(256, 128, 128), 200, 3.16702), 8658.0, 1.0);
  EXPECT_THROW(mflops(make_dims(3, 3, 3), 1, 0.0), InvalidArgument);
  EXPECT_THROW(mflops(make_dims(3, 3, 3), 1, -1.0), InvalidArgument);
}

TEST(FlopAccounting, ThirtyFourPerInteriorCell) {
  using testing::CountingFloat;
  using testing::FlopCounter;
  HimenoProblem pr = init_problem(make_dims(9, 7, 12));
  StridedSquareSum<CountingFloat> acc(kDefaultGosaWidth);
  FlopCounter::reset();
  for (std::size_t i = 1; i + 1 < pr.dims.nx; ++i) {
    for (std::size_t j = 1; j + 1 < pr.dims.ny; ++j) {
      const StencilRow row = make_stencil_row(pr, i, j);
      for (std::size_t k = 0; k < row.count; ++k) {
        acc.add(stencil_cell<CountingFloat>(row, k).ss);
      }
    }
  }
  const std::uint64_t cells = pr.dims.interior_cells();
  EXPECT_EQ(FlopCounter::mul, 13 * cells);
  EXPECT_EQ(FlopCounter::add, 21 * cells);
  EXPECT_EQ(FlopCounter::total(), static_cast<std::uint64_t>(kFlopsPerCell) * cells);

  // The once-per-sweep reduction of the partial sums is separate.
  FlopCounter::reset();
  const CountingFloat g = acc.total();
  EXPECT_EQ(FlopCounter::add, kDefaultGosaWidth);
  EXPECT_EQ(to_bits(g.v), to_bits(jacobi_sweep(pr).gosa));
}

// Random, non-uniform fields exercise every stencil term in every lane.
HimenoProblem random_problem(GridDims dims, std::uint32_t seed) {
  HimenoProblem pr = init_problem(dims);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> u(-2.0f, 2.0f);
  auto fill = [&](Field& f) {
    for (float& v : f.values()) v = u(rng);
  };
  for (auto& f : pr.a) fill(f);
  for (auto& f : pr.b) fill(f);
  for (auto& f : pr.c) fill(f);
  fill(pr.p);
  fill(pr.wrk1);
  fill(pr.bnd);
  return pr;
}

TEST(SimdKernels, BitIdenticalToScalarOnRandomFields) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<std::size_t> axis(3, 29);
  for (int trial = 0; trial < 25; ++trial) {
    const GridDims dims = make_dims(axis(rng), axis(rng), axis(rng));
    HimenoProblem base = random_problem(dims, static_cast<std::uint32_t>(trial));
    SweepOptions scalar_opts;
    scalar_opts.isa = KernelIsa::kScalar;
    HimenoProblem scalar = base;
    const SweepResult want = jacobi_sweep(scalar, scalar_opts);

    for (KernelIsa isa : compiled_isas()) {
      if (isa == KernelIsa::kScalar || !isa_supported(isa)) continue;
      SweepOptions opts;
      opts.isa = isa;
      HimenoProblem simd = base;
      const SweepResult got = jacobi_sweep(simd, opts);
      EXPECT_EQ(to_bits(got.gosa), to_bits(want.gosa)) << to_string(isa);
      EXPECT_EQ(std::memcmp(simd.wrk2.data(), scalar.wrk2.data(), dims.cells() * sizeof(float)),
                0)
          << to_string(isa) << " dims " << dims.nx << "x" << dims.ny << "x" << dims.nz;
    }
  }
}

TEST(KernelDispatch, NamesRoundTripAndScalarAlwaysAvailable) {
  for (KernelIsa isa : compiled_isas()) EXPECT_EQ(parse_isa(to_string(isa)), isa);
  EXPECT_FALSE(parse_isa("avx512").has_value());
  EXPECT_TRUE(isa_supported(KernelIsa::kScalar));
  EXPECT_TRUE(isa_supported(best_isa()));
}

TEST(FieldIo, RoundTripsAndRejectsTruncation) {
  const auto dir = std::filesystem::temp_directory_path() / "hflow_field_io";
  std::filesystem::create_directories(dir);
  const HimenoProblem pr = random_problem(make_dims(4, 5, 6), 7);
  write_field(dir / "p.bin", "p", pr.p);
  const FieldDump back = read_field(dir / "p.bin");
  EXPECT_EQ(back.name, "p");
  EXPECT_EQ(back.field, pr.p);
  EXPECT_EQ(std::filesystem::file_size(dir / "p.bin"), 24u + 1u + 4u * 120u);

  std::filesystem::resize_file(dir / "p.bin", 40);
  EXPECT_THROW(read_field(dir / "p.bin"), Error);
  std::ofstream(dir / "junk.bin") << "not a field";
  EXPECT_THROW(read_field(dir / "junk.bin"), Error);
}

}  // namespace
}  // namespace hflow::himeno
