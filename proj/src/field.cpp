#include "olab/field.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

#include "olab/quadrature.hpp"

namespace olab {

Window make_window(int n, double L, int N) {
  if (n != 1 && n != 2) throw std::invalid_argument("window: n must be 1 or 2");
  if (!(L > 0.0)) throw std::invalid_argument("window: L must be > 0");
  if (N < 8 || (N & (N - 1)) != 0)
    throw std::invalid_argument("window: N must be a power of two >= 8");
  return Window{n, L, N};
}

SampledField zero_field(const Window& w) {
  SampledField f;
  f.w = w;
  f.v.assign(w.cell_count(), 0.0);
  return f;
}

BallCells ball_cells(const Window& w, const Ball& B) {
  BallCells out;
  const double h = w.h();
  auto axis_span = [&](double c, double half) -> std::array<int, 2> {
    // cells i with |coord(i) - c| < half
    int lo = (int)std::ceil((c - half + w.L) / h - 0.5 + 1e-12);
    int hi = (int)std::floor((c + half + w.L) / h - 0.5 - 1e-12);
    lo = std::max(lo, 0);
    hi = std::min(hi, w.N - 1);
    return {lo, hi};
  };
  if (w.n == 1) {
    auto [lo, hi] = axis_span(B.center[0], B.radius);
    if (lo <= hi) {
      out.spans.push_back({0, lo, hi + 1});
      out.count = hi - lo + 1;
    }
    return out;
  }
  auto [ylo, yhi] = axis_span(B.center[1], B.radius);
  for (int iy = ylo; iy <= yhi; ++iy) {
    const double dy = w.coord(iy) - B.center[1];
    const double rem = B.radius * B.radius - dy * dy;
    if (rem <= 0.0) continue;
    auto [xlo, xhi] = axis_span(B.center[0], std::sqrt(rem));
    if (xlo <= xhi) {
      out.spans.push_back({iy, xlo, xhi + 1});
      out.count += xhi - xlo + 1;
    }
  }
  return out;
}

double ball_measure(const Window& w, const Ball& B) {
  const BallCells bc = ball_cells(w, B);
  if (bc.count == 0)
    throw std::invalid_argument("ball_measure: ball contains no cell center");
  return bc.count * std::pow(w.h(), w.n);
}

double ball_mean(const SampledField& f, const Ball& B) {
  const BallCells bc = ball_cells(f.w, B);
  if (bc.count == 0)
    throw std::invalid_argument("ball_mean: ball contains no cell center");
  long double acc = 0.0L;
  for (const auto& s : bc.spans) {
    const long base = (long)s[0] * (f.w.n == 2 ? f.w.N : 0);
    for (int ix = s[1]; ix < s[2]; ++ix) acc += f.v[base + ix];
  }
  return (double)(acc / bc.count);
}

BallFamily ball_family(const Window& w, const BallPolicy& policy) {
  if (policy.stride < 1)
    throw std::invalid_argument("ball_family: stride must be >= 1");
  const double h = w.h();
  const double rmax = policy.max_radius > 0.0 ? policy.max_radius : 2.0 * w.L;
  if (rmax < h)
    throw std::invalid_argument("ball_family: max radius below cell width");
  BallFamily fam;
  fam.w = w;
  for (double r = h; r <= rmax * (1.0 + 1e-12); r *= 2.0)
    fam.radii.push_back(r);
  if (w.n == 1) {
    for (int i = 0; i < w.N; i += policy.stride)
      for (double r : fam.radii)
        fam.balls.push_back({{w.coord(i), 0.0}, r});
  } else {
    for (int iy = 0; iy < w.N; iy += policy.stride)
      for (int ix = 0; ix < w.N; ix += policy.stride)
        for (double r : fam.radii)
          fam.balls.push_back({{w.coord(ix), w.coord(iy)}, r});
  }
  return fam;
}

long DyadicFamily::cube_count() const {
  long total = 0, level = 1;
  for (int j = 0; j <= depth; ++j) {
    total += level;
    level *= (w.n == 1 ? 2 : 4);
  }
  return total;
}

DyadicFamily dyadic_family(const Window& w, int depth) {
  if (depth < 0) throw std::invalid_argument("dyadic_family: depth >= 0");
  if ((w.N >> depth) << depth != w.N || (w.N >> depth) == 0)
    throw std::invalid_argument("dyadic_family: leaves must align with cells");
  DyadicFamily fam;
  fam.w = w;
  fam.depth = depth;
  fam.root_ix = 0;
  fam.root_iy = 0;
  fam.root_cells = w.N;
  return fam;
}

double FieldSpec::eval(const double* x, int n, double h) const {
  auto norm = [&](const double* y) {
    return n == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
  };
  switch (kind) {
    case FieldKind::Indicator: {
      if (cube) {
        for (int d = 0; d < n; ++d)
          if (std::abs(x[d] - center[d]) >= radius) return 0.0;
        return 1.0;
      }
      double dx[2] = {x[0] - center[0], n == 2 ? x[1] - center[1] : 0.0};
      return norm(dx) < radius ? 1.0 : 0.0;
    }
    case FieldKind::PowerSingular:
      return std::pow(std::max(norm(x), 1e-300), -beta);
    case FieldKind::Oscillatory:
      return 0.0;  // compactly supported on the window; no analytic tail
    case FieldKind::RandomStep:
      return 0.0;
    case FieldKind::Affine: {
      double acc = 0.0;
      for (const auto& t : terms) acc += t.first * t.second->eval(x, n, h);
      return acc;
    }
    case FieldKind::ClampLinear:
      return std::clamp(x[0], -1.0, 1.0);
    case FieldKind::LogAbs:
      return std::log(std::max(norm(x), 0.5 * h));
    case FieldKind::AbsPower:
      return std::pow(norm(x), beta);
  }
  return 0.0;
}

bool FieldSpec::compact_support(double L) const {
  switch (kind) {
    case FieldKind::Indicator:
      for (int d = 0; d < 2; ++d)
        if (std::abs(center[d]) + radius > L) return false;
      return true;
    case FieldKind::Oscillatory:
    case FieldKind::RandomStep:
      return true;  // defined on the window only
    case FieldKind::Affine:
      for (const auto& t : terms)
        if (!t.second->compact_support(L)) return false;
      return true;
    default:
      return false;
  }
}

double FieldSpec::max_beta() const {
  switch (kind) {
    case FieldKind::PowerSingular:
      return beta;
    case FieldKind::Affine: {
      double b = 0.0;
      for (const auto& t : terms) b = std::max(b, t.second->max_beta());
      return b;
    }
    default:
      return 0.0;
  }
}

namespace {

// Exact cell averages of |x|^{-beta} for the cells touching the origin keep
// the discrete mass right; elsewhere the cell-center sample is O(h^2).
double power_singular_cell(const Window& w, double beta, const double* x) {
  const double h = w.h();
  if (w.n == 1) {
    const double lo = std::abs(x[0]) - 0.5 * h;
    if (lo > 1e-12) return std::pow(std::abs(x[0]), -beta);
    // cell adjacent to the origin: average of t^{-beta} over [0, h]
    return std::pow(h, -beta) / (1.0 - beta);
  }
  const double r = std::hypot(x[0], x[1]);
  if (r > h * 0.75) return std::pow(r, -beta);
  // one of the four cells cornering the origin: average over [0,h]^2 of
  // |y|^{-beta}, radial closed form with a smooth angular quadrature
  const double ang = integrate(
      [&](double th) { return std::pow(std::cos(th), beta - 2.0); }, 0.0,
      M_PI / 4.0, 1e-10);
  const double val = 2.0 * std::pow(h, -beta) / (2.0 - beta) * ang;
  return val;
}

}  // namespace

SampledField sample(const FieldSpec& spec, const Window& w) {
  if (spec.kind == FieldKind::PowerSingular &&
      !(spec.beta > 0.0 && spec.beta < 1.0))
    throw std::invalid_argument("sample: PowerSingular needs beta in (0,1)");
  if (spec.kind == FieldKind::AbsPower && !(spec.beta > 0.0 && spec.beta <= 1.0))
    throw std::invalid_argument("sample: AbsPower needs beta in (0,1]");
  SampledField f = zero_field(w);
  const double h = w.h();

  if (spec.kind == FieldKind::RandomStep) {
    if ((w.N >> spec.depth) << spec.depth != w.N || (w.N >> spec.depth) == 0)
      throw std::invalid_argument("sample: RandomStep depth misaligned");
    const int block = w.N >> spec.depth;
    const int nblocks = 1 << spec.depth;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    if (w.n == 1) {
      std::vector<double> vals(nblocks);
      for (auto& v : vals) v = uni(rng);
      for (int i = 0; i < w.N; ++i) f.v[i] = vals[i / block];
    } else {
      std::vector<double> vals((long)nblocks * nblocks);
      for (auto& v : vals) v = uni(rng);
      for (int iy = 0; iy < w.N; ++iy)
        for (int ix = 0; ix < w.N; ++ix)
          f.v[(long)iy * w.N + ix] =
              vals[(long)(iy / block) * nblocks + ix / block];
    }
    return f;
  }

  if (spec.kind == FieldKind::Affine) {
    for (const auto& t : spec.terms) {
      const SampledField part = sample(*t.second, w);
      for (long i = 0; i < w.cell_count(); ++i) f.v[i] += t.first * part.v[i];
    }
    return f;
  }

  auto value_at = [&](const double* x) -> double {
    switch (spec.kind) {
      case FieldKind::PowerSingular:
        return power_singular_cell(w, spec.beta, x);
      case FieldKind::Oscillatory: {
        double v = 1.0;
        for (int d = 0; d < w.n; ++d)
          v *= std::sin(M_PI * spec.k * x[d] / w.L);
        return v;
      }
      default:
        return spec.eval(x, w.n, h);
    }
  };

  if (w.n == 1) {
    for (int i = 0; i < w.N; ++i) {
      const double x[2] = {w.coord(i), 0.0};
      f.v[i] = value_at(x);
    }
  } else {
    for (int iy = 0; iy < w.N; ++iy)
      for (int ix = 0; ix < w.N; ++ix) {
        const double x[2] = {w.coord(ix), w.coord(iy)};
        f.v[(long)iy * w.N + ix] = value_at(x);
      }
  }
  return f;
}

void write_field(const SampledField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_field: cannot open " + path);
  const std::uint64_t n = f.w.n, N = f.w.N;
  const double L = f.w.L;
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(&N), 8);
  os.write(reinterpret_cast<const char*>(&L), 8);
  os.write(reinterpret_cast<const char*>(f.v.data()), 8 * f.v.size());
}

SampledField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_field: cannot open " + path);
  std::uint64_t n = 0, N = 0;
  double L = 0;
  is.read(reinterpret_cast<char*>(&n), 8);
  is.read(reinterpret_cast<char*>(&N), 8);
  is.read(reinterpret_cast<char*>(&L), 8);
  if (!is) throw std::runtime_error("read_field: truncated header");
  SampledField f;
  f.w = make_window((int)n, L, (int)N);
  f.v.resize(f.w.cell_count());
  is.read(reinterpret_cast<char*>(f.v.data()), 8 * f.v.size());
  if (!is) throw std::runtime_error("read_field: truncated payload");
  return f;
}

SampledField read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_field_csv: cannot open " + path);
  std::string header;
  std::getline(is, header);
  int n = 0, N = 0;
  double L = 0.0;
  if (std::sscanf(header.c_str(), "# n=%d N=%d L=%lf", &n, &N, &L) != 3)
    throw std::runtime_error("read_field_csv: bad header in " + path);
  SampledField f;
  f.w = make_window(n, L, N);
  f.v.reserve(f.w.cell_count());
  std::string line;
  std::getline(is, line);  // column names
  while (std::getline(is, line)) {
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) continue;
    f.v.push_back(std::stod(line.substr(comma + 1)));
  }
  if ((long)f.v.size() != f.w.cell_count())
    throw std::runtime_error("read_field_csv: cell count mismatch");
  return f;
}

void write_field_csv(const SampledField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
  os << "# n=" << f.w.n << " N=" << f.w.N << " L=" << f.w.L << "\n";
  char buf[96];
  if (f.w.n == 1) {
    os << "x,value\n";
    for (int i = 0; i < f.w.N; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.w.coord(i), f.v[i]);
      os << buf;
    }
  } else {
    os << "x,y,value\n";
    for (int iy = 0; iy < f.w.N; ++iy)
      for (int ix = 0; ix < f.w.N; ++ix) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.w.coord(ix),
                      f.w.coord(iy), f.v[(long)iy * f.w.N + ix]);
        os << buf;
      }
  }
}

}  // namespace olab
