#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace olab {

// Uniform grid over [-L, L]^n, n in {1,2}, N cells per axis (power of two).
// Functions are piecewise constant on cells; integrals are exact finite sums
// against the cell measure h^n.
struct Window {
  int n = 1;
  double L = 4.0;
  int N = 64;

  double h() const { return 2.0 * L / N; }
  long cell_count() const { return n == 1 ? N : long(N) * N; }
  // center coordinate of cell index along one axis
  double coord(int i) const { return -L + (i + 0.5) * h(); }
  bool operator==(const Window& o) const {
    return n == o.n && L == o.L && N == o.N;
  }
};

Window make_window(int n, double L, int N);

struct SampledField {
  Window w;
  std::vector<double> v;  // row-major for n=2: v[iy*N + ix]

  double& at(long i) { return v[i]; }
  double at(long i) const { return v[i]; }
};

SampledField zero_field(const Window& w);

struct Ball {
  std::array<double, 2> center{0.0, 0.0};
  double radius = 0.0;
};

// Cell indices whose centers lie in the open ball, as per-row spans.
// n=1: one span. n=2: one span per intersected row.
struct BallCells {
  long count = 0;
  // (row, ix_begin, ix_end) half-open; row = 0 for n=1
  std::vector<std::array<int, 3>> spans;
};
BallCells ball_cells(const Window& w, const Ball& B);

// Discrete mass |B| = count * h^n; throws when no cell center is inside.
double ball_measure(const Window& w, const Ball& B);
double ball_mean(const SampledField& f, const Ball& B);

struct BallPolicy {
  int stride = 1;           // center stride in cells
  double max_radius = -1.;  // default 2L
};

struct BallFamily {
  Window w;
  std::vector<Ball> balls;
  std::vector<double> radii;  // the ladder {h 2^j}
};

// Deterministic enumeration: centers at (strided) cell centers, radii on the
// ladder h*2^j up to max_radius.
BallFamily ball_family(const Window& w, const BallPolicy& policy = {});

// Dyadic cubes 2^{-j} subdivisions of a root cube aligned with the grid.
struct DyadicFamily {
  Window w;
  int depth = 0;            // J
  int root_ix = 0, root_iy = 0;  // root corner in cells
  int root_cells = 0;            // root side length in cells (power of two)
  long cube_count() const;
};

// Root covering the whole window; J <= log2(N) so leaves align with cells.
DyadicFamily dyadic_family(const Window& w, int depth);

// Field specs: the deterministic test bank plus the commutator profiles.
enum class FieldKind {
  Indicator,      // ball or cube indicator
  PowerSingular,  // |x|^{-beta}, beta in (0,1)
  Oscillatory,    // product of sin(pi k x_i / L)
  RandomStep,     // dyadic blocks with seeded uniform [-1,1] values
  Affine,         // linear combination of subspecs
  ClampLinear,    // clamp(x_1, -1, 1)          (b profile)
  LogAbs,         // log |x|, clipped at h/2     (b profile)
  AbsPower,       // |x|^beta, beta in (0,1]     (b profile)
};

struct FieldSpec {
  FieldKind kind = FieldKind::Indicator;
  bool cube = false;                  // Indicator shape
  std::array<double, 2> center{0, 0}; // Indicator
  double radius = 1.0;                // Indicator
  double beta = 0.5;                  // PowerSingular / AbsPower
  int k = 1;                          // Oscillatory
  std::uint64_t seed = 0;             // RandomStep
  int depth = 3;                      // RandomStep
  std::vector<std::pair<double, std::shared_ptr<const FieldSpec>>> terms;  // Affine

  // pointwise analytic value (used for tails beyond the window); h clips LogAbs
  double eval(const double* x, int n, double h) const;
  // true when the analytic extension vanishes outside the window
  bool compact_support(double L) const;
  // largest PowerSingular beta present (0 when none): in-space filters
  double max_beta() const;
};

SampledField sample(const FieldSpec& spec, const Window& w);

// flat binary: uint64 n, uint64 N, f64 L, then N^n f64 values (little endian)
void write_field(const SampledField& f, const std::string& path);
SampledField read_field(const std::string& path);
// CSV with a "# n=.. N=.. L=.." header line, cells in row-major order
void write_field_csv(const SampledField& f, const std::string& path);
SampledField read_field_csv(const std::string& path);

}  // namespace olab
