#include "olab/operators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "olab/parallel.hpp"
#include "olab/quadrature.hpp"

namespace olab {

namespace {

// Per-row prefix sums for O(1) span sums inside ball scans.
struct RowPrefix {
  int N = 0, rows = 1;
  std::vector<double> P;  // rows x (N+1)
  double span(int row, int a, int b) const {
    return P[(long)row * (N + 1) + b] - P[(long)row * (N + 1) + a];
  }
};

RowPrefix make_prefix(const SampledField& f, bool absolute) {
  RowPrefix rp;
  rp.N = f.w.N;
  rp.rows = f.w.n == 2 ? f.w.N : 1;
  rp.P.assign((long)rp.rows * (rp.N + 1), 0.0);
  for (int row = 0; row < rp.rows; ++row) {
    const long base = (long)row * rp.N;
    const long pbase = (long)row * (rp.N + 1);
    double acc = 0.0;
    for (int i = 0; i < rp.N; ++i) {
      acc += absolute ? std::abs(f.v[base + i]) : f.v[base + i];
      rp.P[pbase + i + 1] = acc;
    }
  }
  return rp;
}

double ball_mean_prefix(const RowPrefix& rp, const BallCells& bc) {
  double acc = 0.0;
  for (const auto& s : bc.spans) acc += rp.span(s[0], s[1], s[2]);
  return acc / bc.count;
}

SampledField maximal_impl(const SampledField& f, const BallFamily& fam,
                          const std::function<double(double)>& weight,
                          bool sharp) {
  if (fam.balls.empty())
    throw std::invalid_argument("maximal: empty ball family");
  if (!(fam.w == f.w))
    throw std::invalid_argument("maximal: family window mismatch");
  SampledField out = zero_field(f.w);
  const RowPrefix rp = make_prefix(f, !sharp);
  for (const Ball& B : fam.balls) {
    const BallCells bc = ball_cells(f.w, B);
    if (bc.count == 0) continue;
    double m = ball_mean_prefix(rp, bc);
    if (sharp) {
      // mean oscillation around the signed mean
      long double osc = 0.0L;
      for (const auto& s : bc.spans) {
        const long base = (long)s[0] * (f.w.n == 2 ? f.w.N : 0);
        for (int ix = s[1]; ix < s[2]; ++ix)
          osc += std::abs(f.v[base + ix] - m);
      }
      m = (double)(osc / bc.count);
    }
    const double value = weight ? weight(B.radius) * m : m;
    for (const auto& s : bc.spans) {
      const long base = (long)s[0] * (f.w.n == 2 ? f.w.N : 0);
      for (int ix = s[1]; ix < s[2]; ++ix)
        if (value > out.v[base + ix]) out.v[base + ix] = value;
    }
  }
  return out;
}

}  // namespace

SampledField hl_maximal(const SampledField& f, const BallFamily& fam) {
  return maximal_impl(f, fam, nullptr, false);
}

SampledField frac_maximal(const SampledField& f, const GrowthFunction& rho,
                          const BallFamily& fam) {
  return maximal_impl(
      f, fam, [&rho](double r) { return eval_growth(rho, r); }, false);
}

SampledField weighted_maximal(const SampledField& f,
                              const std::function<double(double)>& weight,
                              const BallFamily& fam) {
  return maximal_impl(f, fam, weight, false);
}

SampledField sharp_maximal(const SampledField& f, const BallFamily& fam) {
  return maximal_impl(f, fam, nullptr, true);
}

namespace {

// Means of |f| (or oscillations) per dyadic cube, by depth.
struct DyadicLevels {
  // level j has (2^j)^n entries
  std::vector<std::vector<double>> mean;
};

int cube_index(const DyadicFamily& fam, int j, int ix, int iy) {
  const int side_cells = fam.root_cells >> j;
  const int kx = ix / side_cells;
  if (fam.w.n == 1) return kx;
  const int ky = iy / side_cells;
  return ky * (1 << j) + kx;
}

DyadicLevels cube_means(const SampledField& f, const DyadicFamily& fam,
                        bool absolute) {
  DyadicLevels lv;
  lv.mean.resize(fam.depth + 1);
  const int n = f.w.n;
  for (int j = 0; j <= fam.depth; ++j) {
    const long cubes = n == 1 ? (1L << j) : (1L << (2 * j));
    lv.mean[j].assign(cubes, 0.0);
  }
  const int N = f.w.N;
  const long cells = f.w.cell_count();
  // accumulate leaf sums then fold up
  const int J = fam.depth;
  const int leaf_cells = fam.root_cells >> J;
  auto& leaf = lv.mean[J];
  for (long idx = 0; idx < cells; ++idx) {
    const int ix = (int)(idx % N), iy = (int)(idx / N);
    const double v = absolute ? std::abs(f.v[idx]) : f.v[idx];
    leaf[cube_index(fam, J, ix, n == 2 ? iy : 0)] += v;
  }
  const double leaf_count = std::pow((double)leaf_cells, n);
  for (auto& s : leaf) s /= leaf_count;
  for (int j = J - 1; j >= 0; --j) {
    const int kids = 1 << (j + 1);
    for (size_t k = 0; k < lv.mean[j].size(); ++k) {
      if (n == 1) {
        lv.mean[j][k] = 0.5 * (lv.mean[j + 1][2 * k] + lv.mean[j + 1][2 * k + 1]);
      } else {
        const int kx = (int)(k % (1 << j)), ky = (int)(k / (1 << j));
        double acc = 0.0;
        for (int dy = 0; dy < 2; ++dy)
          for (int dx = 0; dx < 2; ++dx)
            acc += lv.mean[j + 1][(2 * ky + dy) * kids + 2 * kx + dx];
        lv.mean[j][k] = 0.25 * acc;
      }
    }
  }
  return lv;
}

}  // namespace

SampledField dyadic_maximal(const SampledField& f, const DyadicFamily& fam) {
  if (!(fam.w == f.w))
    throw std::invalid_argument("dyadic_maximal: window mismatch");
  const DyadicLevels lv = cube_means(f, fam, true);
  // best over the ancestor chain, top down
  std::vector<std::vector<double>> best(fam.depth + 1);
  best[0] = lv.mean[0];
  for (int j = 1; j <= fam.depth; ++j) {
    best[j].resize(lv.mean[j].size());
    const int side = 1 << j;
    for (size_t k = 0; k < best[j].size(); ++k) {
      size_t parent;
      if (f.w.n == 1) {
        parent = k / 2;
      } else {
        const size_t kx = k % side, ky = k / side;
        parent = (ky / 2) * (side / 2) + kx / 2;
      }
      best[j][k] = std::max(lv.mean[j][k], best[j - 1][parent]);
    }
  }
  SampledField out = zero_field(f.w);
  const int N = f.w.N;
  for (long idx = 0; idx < f.w.cell_count(); ++idx) {
    const int ix = (int)(idx % N), iy = (int)(idx / N);
    out.v[idx] = best[fam.depth][cube_index(fam, fam.depth, ix,
                                            f.w.n == 2 ? iy : 0)];
  }
  return out;
}

SampledField dyadic_sharp(const SampledField& f, const DyadicFamily& fam) {
  if (!(fam.w == f.w))
    throw std::invalid_argument("dyadic_sharp: window mismatch");
  const DyadicLevels means = cube_means(f, fam, false);
  const int N = f.w.N;
  // oscillation per cube, one cell pass per depth
  std::vector<std::vector<double>> osc(fam.depth + 1);
  for (int j = 0; j <= fam.depth; ++j) {
    osc[j].assign(means.mean[j].size(), 0.0);
    for (long idx = 0; idx < f.w.cell_count(); ++idx) {
      const int ix = (int)(idx % N), iy = (int)(idx / N);
      const int k = cube_index(fam, j, ix, f.w.n == 2 ? iy : 0);
      osc[j][k] += std::abs(f.v[idx] - means.mean[j][k]);
    }
    const double cells_per_cube =
        std::pow((double)(fam.root_cells >> j), f.w.n);
    for (auto& v : osc[j]) v /= cells_per_cube;
  }
  std::vector<std::vector<double>> best(fam.depth + 1);
  best[0] = osc[0];
  for (int j = 1; j <= fam.depth; ++j) {
    best[j].resize(osc[j].size());
    const int side = 1 << j;
    for (size_t k = 0; k < best[j].size(); ++k) {
      size_t parent;
      if (f.w.n == 1) {
        parent = k / 2;
      } else {
        const size_t kx = k % side, ky = k / side;
        parent = (ky / 2) * (side / 2) + kx / 2;
      }
      best[j][k] = std::max(osc[j][k], best[j - 1][parent]);
    }
  }
  SampledField out = zero_field(f.w);
  for (long idx = 0; idx < f.w.cell_count(); ++idx) {
    const int ix = (int)(idx % N), iy = (int)(idx / N);
    out.v[idx] = best[fam.depth][cube_index(fam, fam.depth, ix,
                                            f.w.n == 2 ? iy : 0)];
  }
  return out;
}

namespace {

// Convolution weight tables: W[offset] = integral of the kernel over the
// offset cell against unit data. Offset-indexed, shared by operator and
// commutator paths.
struct ConvWeights1D {
  std::vector<double> w;  // |offset| 0..N-1
  bool odd = false;       // antisymmetric kernel
};

ConvWeights1D frac_weights_1d(const GrowthFunction& rho, const Window& w) {
  const double h = w.h();
  ConvWeights1D cw;
  cw.w.resize(w.N);
  const double star_half = rho_star(rho, 0.5 * h);
  if (!std::isfinite(star_half))
    throw std::invalid_argument("frac_integral: rho fails (int rho)");
  cw.w[0] = 2.0 * star_half;
  double prev = star_half;
  for (int k = 1; k < w.N; ++k) {
    const double next = rho_star(rho, (k + 0.5) * h);
    cw.w[k] = next - prev;
    prev = next;
  }
  return cw;
}

ConvWeights1D hilbert_weights_1d(const Window& w) {
  ConvWeights1D cw;
  cw.odd = true;
  cw.w.resize(w.N);
  cw.w[0] = 0.0;  // p.v.: odd kernel cancels over the symmetric self cell
  for (int k = 1; k < w.N; ++k)
    cw.w[k] = std::log((k + 0.5) / (k - 0.5)) / M_PI;
  return cw;
}

SampledField convolve_1d(const SampledField& f, const ConvWeights1D& cw) {
  SampledField out = zero_field(f.w);
  const int N = f.w.N;
  parallel_for(N, [&](long i) {
    double acc = 0.0;
    if (cw.odd) {
      for (int j = 0; j < N; ++j) {
        const int d = (int)i - j;
        if (d > 0)
          acc += cw.w[d] * f.v[j];
        else if (d < 0)
          acc -= cw.w[-d] * f.v[j];
      }
    } else {
      for (int j = 0; j < N; ++j) acc += cw.w[std::abs((int)i - j)] * f.v[j];
    }
    out.v[i] = acc;
  });
  return out;
}

struct ConvWeights2D {
  std::vector<double> w;  // (2N-1)^2, offset-indexed
  int N = 0;
  double at(int dy, int dx) const {
    return w[(long)(dy + N - 1) * (2 * N - 1) + (dx + N - 1)];
  }
};

ConvWeights2D riesz_weights_2d(int axis, const Window& w) {
  ConvWeights2D cw;
  cw.N = w.N;
  cw.w.assign((long)(2 * w.N - 1) * (2 * w.N - 1), 0.0);
  const double g = 0.5 / std::sqrt(3.0);  // 2x2 Gauss offsets in cell units
  auto kernel = [axis](double zx, double zy) {
    const double r = std::hypot(zx, zy);
    const double zm = axis == 1 ? zx : zy;
    return zm / (2.0 * M_PI * r * r * r);
  };
  for (int dy = -(w.N - 1); dy <= w.N - 1; ++dy)
    for (int dx = -(w.N - 1); dx <= w.N - 1; ++dx) {
      if (dx == 0 && dy == 0) continue;  // odd kernel, midpoint-symmetric cell
      double val;
      if (std::max(std::abs(dx), std::abs(dy)) == 1) {
        val = 0.0;  // touching cells: 2x2 Gauss per cell
        for (int sy = -1; sy <= 1; sy += 2)
          for (int sx = -1; sx <= 1; sx += 2)
            val += 0.25 * kernel(dx + sx * g, dy + sy * g);
      } else {
        val = kernel(dx, dy);
      }
      cw.w[(long)(dy + w.N - 1) * (2 * w.N - 1) + (dx + w.N - 1)] = val;
    }
  return cw;
}

ConvWeights2D frac_weights_2d(const GrowthFunction& rho, const Window& w) {
  ConvWeights2D cw;
  cw.N = w.N;
  cw.w.assign((long)(2 * w.N - 1) * (2 * w.N - 1), 0.0);
  const double h = w.h();
  const double rc = h / std::sqrt(M_PI);  // equal-area disk
  const double star = rho_star(rho, rc);
  if (!std::isfinite(star))
    throw std::invalid_argument("frac_integral: rho fails (int rho)");
  for (int dy = -(w.N - 1); dy <= w.N - 1; ++dy)
    for (int dx = -(w.N - 1); dx <= w.N - 1; ++dx) {
      double val;
      if (dx == 0 && dy == 0) {
        val = 2.0 * M_PI * star;
      } else {
        const double d = h * std::hypot((double)dx, (double)dy);
        val = h * h * eval_growth(rho, d) / (d * d);
      }
      cw.w[(long)(dy + w.N - 1) * (2 * w.N - 1) + (dx + w.N - 1)] = val;
    }
  return cw;
}

SampledField convolve_2d(const SampledField& f, const ConvWeights2D& cw) {
  SampledField out = zero_field(f.w);
  const int N = f.w.N;
  parallel_for((long)N * N, [&](long idx) {
    const int ix = (int)(idx % N), iy = (int)(idx / N);
    double acc = 0.0;
    for (int jy = 0; jy < N; ++jy) {
      const long base = (long)jy * N;
      const long wbase = (long)(iy - jy + N - 1) * (2 * N - 1) + (N - 1);
      for (int jx = 0; jx < N; ++jx)
        acc += cw.w[wbase + (ix - jx)] * f.v[base + jx];
    }
    out.v[idx] = acc;
  });
  return out;
}

SampledField multiply(const SampledField& a, const SampledField& b) {
  SampledField out = a;
  for (long i = 0; i < (long)out.v.size(); ++i) out.v[i] *= b.v[i];
  return out;
}

}  // namespace

OperatorOutput frac_integral(const SampledField& f, const GrowthFunction& rho) {
  OperatorOutput out;
  if (f.w.n == 1) {
    out.field = convolve_1d(f, frac_weights_1d(rho, f.w));
    out.truncation_note = "exact radial cell integrals; window-truncated";
  } else {
    out.field = convolve_2d(f, frac_weights_2d(rho, f.w));
    out.truncation_note =
        "cell-center quadrature, radialized self cell; window-truncated";
  }
  return out;
}

OperatorOutput cz_apply(const SampledField& f, const KernelSpec& kernel) {
  OperatorOutput out;
  if (kernel.dim() != f.w.n)
    throw std::invalid_argument("cz_apply: kernel dimension mismatch");
  if (f.w.n == 1) {
    out.field = convolve_1d(f, hilbert_weights_1d(f.w));
    out.truncation_note = "exact kernel cell integrals, zero self cell";
  } else {
    out.field = convolve_2d(
        f, riesz_weights_2d(kernel.kind == KernelKind::Riesz1 ? 1 : 2, f.w));
    out.truncation_note = "2x2 Gauss on touching cells, zero self cell";
  }
  return out;
}

OperatorOutput commutator(CommutatorKind kind, const SampledField& b,
                          const SampledField& f, const KernelSpec* kernel,
                          const GrowthFunction* rho) {
  if (!(b.w == f.w))
    throw std::invalid_argument("commutator: window mismatch");
  const SampledField bf = multiply(b, f);
  OperatorOutput of, obf;
  if (kind == CommutatorKind::CZ) {
    if (!kernel) throw std::invalid_argument("commutator: kernel required");
    of = cz_apply(f, *kernel);
    obf = cz_apply(bf, *kernel);
  } else {
    if (!rho) throw std::invalid_argument("commutator: rho required");
    of = frac_integral(f, *rho);
    obf = frac_integral(bf, *rho);
  }
  OperatorOutput out;
  out.field = zero_field(f.w);
  for (long i = 0; i < f.w.cell_count(); ++i)
    out.field.v[i] = b.v[i] * of.field.v[i] - obf.field.v[i];
  out.truncation_note = of.truncation_note;
  return out;
}

ConditionReport check_standard_kernel(const KernelSpec& kernel,
                                      const GrowthFunction& omega,
                                      int triple_count, std::uint64_t seed,
                                      double box) {
  const int n = kernel.dim();
  auto kval = [&](const double* d) {
    if (n == 1) return 1.0 / (M_PI * d[0]);
    const double r = std::hypot(d[0], d[1]);
    const double zm = kernel.kind == KernelKind::Riesz1 ? d[0] : d[1];
    return zm / (2.0 * M_PI * r * r * r);
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-box, box);
  std::uniform_real_distribution<double> u01(0.05, 1.0);
  ConditionReport rep;
  rep.grid = std::to_string(triple_count) + " seeded triples";
  double best = 0.0, wit = 0.0;
  int done = 0;
  while (done < triple_count) {
    double x[2] = {uni(rng), n == 2 ? uni(rng) : 0.0};
    double y[2] = {uni(rng), n == 2 ? uni(rng) : 0.0};
    double dxy[2] = {x[0] - y[0], x[1] - y[1]};
    const double dist = n == 1 ? std::abs(dxy[0]) : std::hypot(dxy[0], dxy[1]);
    if (dist < 0.05) continue;
    // z = y + delta with 2|delta| <= |x - y|
    double dir[2] = {uni(rng), n == 2 ? uni(rng) : 0.0};
    const double dn = n == 1 ? std::abs(dir[0]) : std::hypot(dir[0], dir[1]);
    if (dn == 0.0) continue;
    const double dl = 0.5 * dist * u01(rng);
    double z[2] = {y[0] + dir[0] / dn * dl, n == 2 ? y[1] + dir[1] / dn * dl : 0.0};
    double dxz[2] = {x[0] - z[0], x[1] - z[1]};
    double dyx[2] = {y[0] - x[0], y[1] - x[1]};
    double dzx[2] = {z[0] - x[0], z[1] - x[1]};
    const double lhs = std::abs(kval(dxy) - kval(dxz)) +
                       std::abs(kval(dyx) - kval(dzx));
    const double ratio =
        lhs * std::pow(dist, n) / eval_growth(omega, dl / dist);
    if (ratio > best) {
      best = ratio;
      wit = dl / dist;
    }
    ++done;
  }
  rep.best_constant = best;
  rep.witness = wit;
  rep.holds = std::isfinite(best) && best <= rep.cap;

  ConditionReport dini;
  dini.best_constant =
      head_integral_over_t([&](double t) { return eval_growth(omega, t); }, 1.0);
  dini.holds = std::isfinite(dini.best_constant);
  dini.grid = "int_0^1 omega(t)/t dt";
  rep.parts.push_back({"dini", dini});

  ConditionReport logdini;
  logdini.best_constant = head_integral_over_t(
      [&](double t) { return eval_growth(omega, t) * std::log(1.0 / t); }, 1.0);
  logdini.holds = std::isfinite(logdini.best_constant);
  logdini.grid = "int_0^1 omega(t) log(1/t)/t dt";
  rep.parts.push_back({"log_dini", logdini});
  if (!rep.holds || !rep.all_parts_hold()) rep.holds = false;
  return rep;
}

ConditionReport tail_bound_check(const TailCheckInput& in) {
  if (!in.f || !in.Phi || !in.vp)
    throw std::invalid_argument("tail_bound_check: missing inputs");
  const Window& w = in.f->w;
  if (w.n != 1)
    throw std::invalid_argument("tail_bound_check: n=1 only");
  const double h = w.h();
  const double r = in.B.radius;
  const double z = in.B.center[0];
  const double x = in.x;
  if (std::abs(x - z) >= r)
    throw std::invalid_argument("tail_bound_check: x must lie in B");

  const bool cz = in.which == TailLemma::CZ;
  auto excluded = [&](double y) {
    return cz ? std::abs(y - z) >= 2.0 * r : std::abs(y - x) >= r;
  };
  // per-cell kernel magnitude integral (cells sit on one side of x)
  auto cell_kermag = [&](double d) {
    if (cz) return std::log((d + 0.5 * h) / (d - 0.5 * h)) / M_PI;
    return rho_star(*in.rho, d + 0.5 * h) - rho_star(*in.rho, d - 0.5 * h);
  };
  double b_mean = 0.0;
  if (in.which == TailLemma::IR_PSI) {
    if (!in.b || !in.psi)
      throw std::invalid_argument("tail_bound_check: IR_PSI needs b and psi");
    b_mean = ball_mean(*in.b, in.B);
  }

  long double lhs = 0.0L;
  for (int j = 0; j < w.N; ++j) {
    const double y = w.coord(j);
    if (!excluded(y)) continue;
    const double d = std::abs(x - y);
    if (d <= 0.5 * h) continue;
    double term = cell_kermag(d) * std::abs(in.f->v[j]);
    if (in.which == TailLemma::IR_PSI)
      term *= std::abs(in.b->v[j] - b_mean);
    lhs += term;
  }
  // analytic continuation beyond the window
  if (in.f_spec && !in.f_spec->compact_support(w.L)) {
    auto ray = [&](double sgn) {
      double start = w.L;
      // skip any part of the ray the exclusion removes
      const double edge = cz ? (sgn > 0 ? z + 2.0 * r : -(z - 2.0 * r))
                             : (sgn > 0 ? x + r : -(x - r));
      start = std::max(start, edge);
      auto integrand = [&](double t) {
        const double y = sgn * t;
        const double d = std::abs(x - y);
        double km = cz ? 1.0 / (M_PI * d) : eval_growth(*in.rho, d) / d;
        double val = std::abs(in.f_spec->eval(&y, 1, h));
        if (in.which == TailLemma::IR_PSI) {
          const double bv = in.b_spec ? in.b_spec->eval(&y, 1, h) : 0.0;
          val *= std::abs(bv - b_mean);
        }
        return km * val;
      };
      return tail_integral(integrand, start, 1e-9);
    };
    lhs += ray(1.0) + ray(-1.0);
  }

  double rhs = 0.0;
  switch (in.which) {
    case TailLemma::CZ:
      rhs = tail_phi_inverse(*in.Phi, *in.vp, 2.0 * r) * in.norm_f;
      break;
    case TailLemma::IR:
      rhs = tail_rho_phi_inverse(*in.rho, *in.Phi, *in.vp, in.K1 * r) *
            in.norm_f;
      break;
    case TailLemma::IR_PSI:
      rhs = tail_psi_nested(*in.psi, in.rho, *in.Phi, *in.vp, in.K1 * r) *
            in.norm_b * in.norm_f;
      break;
  }

  ConditionReport rep;
  rep.grid = "single ball";
  rep.witness = r;
  if (lhs == 0.0L) {
    rep.best_constant = 0.0;
    rep.holds = true;
    return rep;
  }
  rep.best_constant = (double)lhs / rhs;
  rep.holds = std::isfinite(rep.best_constant) && rep.best_constant <= rep.cap;
  return rep;
}

}  // namespace olab
