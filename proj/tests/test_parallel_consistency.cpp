#include "doctest.h"

#include "ddvv/extremal_search.hpp"
#include "ddvv/polynomial_translation.hpp"

using namespace ddvv;

// The OpenMP kernels must reproduce their serial references bit for bit:
// per-trial seeding plus index-ordered merges leave no scheduling freedom.

TEST_CASE("fuzz kernel: parallel == serial") {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.m = 3;
  cfg.trials = 500;
  cfg.seed = 2024;
  const FuzzSummary par = fuzz_inequality(cfg);
  const FuzzSummary ser = fuzz_inequality_serial(cfg);
  CHECK(par.violations == ser.violations);
  CHECK(par.min_defect == ser.min_defect);
  CHECK(par.min_ratio_gap == ser.min_ratio_gap);
  CHECK(par.max_ratio == ser.max_ratio);
  CHECK(par.ratio_histogram == ser.ratio_histogram);
  REQUIRE(par.worst_tuple.has_value());
  REQUIRE(ser.worst_tuple.has_value());
  for (int r = 0; r < cfg.m; ++r)
    CHECK(par.worst_tuple->mat(r) == ser.worst_tuple->mat(r));
}

TEST_CASE("multi-ascent kernel: parallel == serial") {
  SearchConfig cfg;
  cfg.n = 3;
  cfg.m = 3;
  cfg.trials = 6;
  cfg.seed = 31;
  cfg.max_iters = 500;
  const SearchResult par = multi_ascend(cfg);
  const SearchResult ser = multi_ascend_serial(cfg);
  CHECK(par.best_ratio == ser.best_ratio);
  CHECK(par.iterations == ser.iterations);
  CHECK(par.classified.kind == ser.classified.kind);
  REQUIRE(par.best_tuple.has_value());
  REQUIRE(ser.best_tuple.has_value());
  for (int r = 0; r < cfg.m; ++r)
    CHECK(par.best_tuple->mat(r) == ser.best_tuple->mat(r));
}

TEST_CASE("simplex kernel: parallel == serial") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const SymBasis basis = sym_basis(3);
    const Matrix Q = random_orthogonal(basis.N(), 600 + seed, true);
    const CommCoeffs coeffs = comm_coeffs(Q, basis);
    const SimplexRegion region(basis.N(), 0.01);
    SimplexMaxConfig cfg;
    cfg.seed = seed;
    const SimplexMaxResult par = simplex_max(coeffs, region, cfg);
    const SimplexMaxResult ser = simplex_max_serial(coeffs, region, cfg);
    CHECK(par.value == ser.value);
    CHECK(par.x == ser.x);
    CHECK(par.method == ser.method);
  }
}
