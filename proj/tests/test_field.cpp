#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "olab/field.hpp"

using namespace olab;

TEST_CASE("window invariants") {
  CHECK_THROWS(make_window(3, 4.0, 64));
  CHECK_THROWS(make_window(1, 4.0, 48));  // not a power of two
  CHECK_THROWS(make_window(1, 4.0, 4));   // below 8
  const Window w = make_window(1, 4.0, 64);
  CHECK(w.h() == doctest::Approx(0.125));
  CHECK(w.coord(0) == doctest::Approx(-4.0 + 0.0625));
}

TEST_CASE("indicator sampling and ball mean") {
  const Window w = make_window(1, 4.0, 64);
  FieldSpec spec;
  spec.kind = FieldKind::Indicator;
  spec.radius = 1.0;
  const SampledField f = sample(spec, w);
  for (int i = 0; i < w.N; ++i) {
    const double x = w.coord(i);
    CHECK(f.v[i] == (std::abs(x) < 1.0 ? 1.0 : 0.0));
  }
  // mean over B(0,2) is 0.5 exactly (edges align with cell boundaries)
  CHECK(ball_mean(f, Ball{{0.0, 0.0}, 2.0}) == doctest::Approx(0.5));
  // constant field: mean c over every ball
  SampledField c = zero_field(w);
  for (auto& v : c.v) v = 3.25;
  for (double r : {0.125, 0.5, 2.0, 8.0})
    CHECK(ball_mean(c, Ball{{w.coord(17), 0.0}, r}) == doctest::Approx(3.25));
  // antisymmetric field, ball centered at the origin
  SampledField odd = zero_field(w);
  for (int i = 0; i < w.N; ++i) odd.v[i] = std::sin(w.coord(i));
  CHECK(ball_mean(odd, Ball{{0.0, 0.0}, 2.0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS(ball_mean(f, Ball{{0.0, 0.0}, 0.01}));  // no cell center inside
}

TEST_CASE("affine combo with zero weight") {
  const Window w = make_window(1, 4.0, 64);
  FieldSpec base;
  base.kind = FieldKind::Oscillatory;
  base.k = 2;
  FieldSpec zero;
  zero.kind = FieldKind::Affine;
  zero.terms.push_back({0.0, std::make_shared<const FieldSpec>(base)});
  const SampledField f = sample(zero, w);
  for (double v : f.v) CHECK(v == 0.0);
}

TEST_CASE("power singular mass vs analytic integral") {
  const Window w = make_window(1, 4.0, 1024);
  FieldSpec spec;
  spec.kind = FieldKind::PowerSingular;
  spec.beta = 0.5;
  const SampledField f = sample(spec, w);
  long double mass = 0.0L;
  for (double v : f.v) mass += v;
  const double discrete = (double)mass * w.h();
  const double analytic = 2.0 * std::pow(4.0, 0.5) / 0.5;  // int |x|^-1/2 over [-4,4]
  CHECK(discrete == doctest::Approx(analytic).epsilon(1e-3));
  CHECK_THROWS(sample([] {
    FieldSpec s;
    s.kind = FieldKind::PowerSingular;
    s.beta = 1.2;
    return s;
  }(), w));
}

TEST_CASE("power singular mass, n=2") {
  const Window w = make_window(2, 2.0, 128);
  FieldSpec spec;
  spec.kind = FieldKind::PowerSingular;
  spec.beta = 0.5;
  const SampledField f = sample(spec, w);
  long double mass = 0.0L;
  for (double v : f.v) mass += v;
  const double discrete = (double)mass * w.h() * w.h();
  // int over the square: radial part behaves like 2 pi r^{3/2}/(3/2) plus corners;
  // quadrature oracle over the quadrant, refined midpoint
  double oracle = 0.0;
  const int M = 2048;
  const double step = 2.0 / M;
  for (int iy = 0; iy < M; ++iy)
    for (int ix = 0; ix < M; ++ix) {
      const double x = (ix + 0.5) * step, y = (iy + 0.5) * step;
      oracle += std::pow(std::hypot(x, y), -0.5);
    }
  oracle *= 4.0 * step * step;
  CHECK(discrete == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("ball family enumeration") {
  const Window w = make_window(1, 4.0, 64);
  const BallFamily fam = ball_family(w);
  // ladder h 2^j up to 2L: h=1/8 -> radii {1/8,...,8}: 7 rungs
  CHECK(fam.radii.size() == 7);
  CHECK(fam.balls.size() == 64 * 7);
  BallPolicy strided;
  strided.stride = 4;
  CHECK(ball_family(w, strided).balls.size() == 16 * 7);
  BallPolicy tiny;
  tiny.max_radius = w.h() / 2.0;
  CHECK_THROWS(ball_family(w, tiny));
  // the smallest ball at a cell center contains exactly that cell
  const BallCells bc = ball_cells(w, Ball{{w.coord(10), 0.0}, w.h()});
  CHECK(bc.count == 1);
}

TEST_CASE("dyadic family counts and tiling") {
  const Window w1 = make_window(1, 4.0, 64);
  CHECK(dyadic_family(w1, 2).cube_count() == 7);  // 1 + 2 + 4
  const Window w2 = make_window(2, 4.0, 64);
  CHECK(dyadic_family(w2, 1).cube_count() == 5);  // 1 + 4
  CHECK_THROWS(dyadic_family(w1, 9));             // leaves misaligned
  // leaf tiling: every cell belongs to exactly one depth-j cube per depth
  const DyadicFamily fam = dyadic_family(w1, 3);
  const int leaf_cells = w1.N >> 3;
  for (int i = 0; i < w1.N; ++i) {
    const int k = i / leaf_cells;
    CHECK(k >= 0);
    CHECK(k < 8);
  }
}

TEST_CASE("field io round trip") {
  const Window w = make_window(1, 4.0, 64);
  FieldSpec spec;
  spec.kind = FieldKind::RandomStep;
  spec.seed = 42;
  spec.depth = 3;
  const SampledField f = sample(spec, w);
  const std::string path = "/tmp/olab_test_field.bin";
  write_field(f, path);
  const SampledField g = read_field(path);
  CHECK(g.w.n == f.w.n);
  CHECK(g.w.N == f.w.N);
  CHECK(g.w.L == f.w.L);
  for (long i = 0; i < f.w.cell_count(); ++i) CHECK(g.v[i] == f.v[i]);
  std::remove(path.c_str());
  const std::string csv = "/tmp/olab_test_field.csv";
  write_field_csv(f, csv);
  const SampledField h = read_field_csv(csv);
  CHECK(h.w.N == f.w.N);
  for (long i = 0; i < f.w.cell_count(); ++i)
    CHECK(h.v[i] == doctest::Approx(f.v[i]).epsilon(1e-15));
  std::remove(csv.c_str());
}

TEST_CASE("random step is deterministic in the seed") {
  const Window w = make_window(1, 4.0, 128);
  FieldSpec spec;
  spec.kind = FieldKind::RandomStep;
  spec.seed = 7;
  spec.depth = 4;
  const SampledField a = sample(spec, w);
  const SampledField b = sample(spec, w);
  for (long i = 0; i < w.cell_count(); ++i) CHECK(a.v[i] == b.v[i]);
  // blocks are constant
  const int block = w.N >> 4;
  for (int i = 0; i < w.N; ++i)
    CHECK(a.v[i] == a.v[(i / block) * block]);
}

TEST_CASE("ball mean linearity and shift") {
  const Window w = make_window(1, 4.0, 64);
  FieldSpec spec;
  spec.kind = FieldKind::RandomStep;
  spec.seed = 3;
  spec.depth = 4;
  const SampledField f = sample(spec, w);
  const Ball B{{w.coord(20), 0.0}, 1.0};
  SampledField shifted = f;
  for (auto& v : shifted.v) v += 2.5;
  CHECK(ball_mean(shifted, B) == doctest::Approx(ball_mean(f, B) + 2.5));
}

TEST_CASE("refinement halves the smooth-field mean error") {
  FieldSpec spec;
  spec.kind = FieldKind::Oscillatory;
  spec.k = 2;
  const Ball B{{0.5, 0.0}, 1.0};
  double prev_err = -1.0;
  // exact mean of sin(pi x / 2) over (-0.5, 1.5)
  const double exact =
      (std::cos(M_PI * (-0.5) / 2.0) - std::cos(M_PI * 1.5 / 2.0)) *
      (2.0 / M_PI) / 2.0;
  for (int N : {64, 128, 256, 512}) {
    const SampledField f = sample(spec, make_window(1, 4.0, N));
    const double err = std::abs(ball_mean(f, B) - exact);
    if (prev_err >= 0.0) CHECK(err <= prev_err * 0.75 + 1e-12);
    prev_err = err;
  }
}
