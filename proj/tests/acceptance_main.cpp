// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "olab/harness.hpp"
#include "olab/operators.hpp"
#include "olab/serde.hpp"

using namespace olab;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void line(int idx, const std::string& name, bool pass, double value,
          double secs, const std::string& detail = "") {
  if (!pass) ++g_failures;
  std::printf("[%s] %2d %-24s value=%-12.6g (%.2fs)%s%s\n",
              pass ? "PASS" : "FAIL", idx, name.c_str(), value, secs,
              detail.empty() ? "" : " ", detail.c_str());
  std::fflush(stdout);
}

ExperimentConfig crw() {
  ExperimentConfig cfg;  // Phi = Psi = t^2, vp = r^-1, psi = 1, Hilbert, n=1
  cfg.levels = {64, 128, 256};
  return cfg;
}

ExperimentConfig chanillo() {
  ExperimentConfig cfg = crw();
  cfg.Phi = young_power(1.5);
  cfg.Psi = young_power(3.0);
  cfg.Theta = young_power(3.0);
  cfg.rho = growth_power_pos(1.0 / 3.0);
  return cfg;
}

ExperimentConfig maximal_241() {
  ExperimentConfig cfg = crw();
  cfg.Psi = young_power(4.0);
  cfg.rho = growth_power_pos(0.25);  // lambda/p - lambda/q = 1/2 - 1/4
  return cfg;
}

ExperimentConfig tails_singular() {
  ExperimentConfig cfg = crw();
  cfg.Phi = young_power(1.5);
  cfg.Psi = young_power(1.5);
  cfg.vp = growth_power_neg(0.75);  // beta p = lambda at beta = 1/2
  cfg.rho = growth_power_pos(0.125);
  return cfg;
}

}  // namespace

int main() {
  std::printf("olab acceptance suite (n=1 primary, N <= 256; n=2 smoke)\n");

  {  // 1. INVERSE_SANDWICH
    Timer t;
    const PropertyReport rep = run_property("INVERSE_SANDWICH", crw());
    line(1, "INVERSE_SANDWICH",
         rep.pass && rep.worst_ratio <= 1.0 + 1e-9 && t.secs() < 1.0,
         rep.worst_ratio, t.secs());
  }

  {  // 2. COMPL_PRODUCT
    Timer t;
    const PropertyReport rep = run_property("COMPL_PRODUCT", crw());
    line(2, "COMPL_PRODUCT",
         rep.pass && rep.worst_ratio <= 1.0 + 1e-9 && t.secs() < 1.0,
         rep.worst_ratio, t.secs());
  }

  {  // 3. CHI_NORM: identity to 1e-8, one sandwich C <= 8 across presets
    Timer t;
    bool ok = true;
    double C = 0.0;
    for (const ExperimentConfig& cfg : {crw(), chanillo(), tails_singular()}) {
      const PropertyReport rep = run_property("CHI_NORM", cfg);
      ok = ok && rep.pass;
      C = std::max(C, rep.worst_ratio);
    }
    line(3, "CHI_NORM", ok && C <= 8.0 && t.secs() < 5.0, C, t.secs(),
         "C <= 8 across presets");
  }

  {  // 4. HOLDER_BALL: factor exactly 2, zero violations
    Timer t;
    const PropertyReport rep = run_property("HOLDER_BALL", crw());
    line(4, "HOLDER_BALL", rep.pass && t.secs() < 5.0, rep.worst_ratio,
         t.secs(), "zero violations");
  }

  {  // 5. GOODLAMBDA: exact discrete measure, tolerance 0
    Timer t;
    const PropertyReport rep = run_property("GOODLAMBDA", crw());
    line(5, "GOODLAMBDA", rep.pass && rep.worst_ratio <= 1.0 && t.secs() < 10.0,
         rep.worst_ratio, t.secs(), "tolerance 0");
  }

  {  // 6. DYADIC_MODULAR: proof-assembled constant, p in {1.5, 2, 3}
    Timer t;
    const PropertyReport rep = run_property("DYADIC_MODULAR", crw());
    line(6, "DYADIC_MODULAR",
         rep.pass && rep.worst_ratio <= 1.0 && t.secs() < 10.0,
         rep.worst_ratio, t.secs());
  }

  {  // 7. MR_POINTWISE + MR_BOUNDED at (2,4,1) and (1.5,3,1), +-5%
    Timer t;
    bool ok = true;
    double c1 = 0.0;
    for (const ExperimentConfig& cfg : {maximal_241(), chanillo()}) {
      const PropertyReport pw = run_property("MR_POINTWISE", cfg);
      const PropertyReport bd = run_property("MR_BOUNDED", cfg);
      ok = ok && pw.pass && !pw.unstable && bd.pass && !bd.unstable;
      c1 = std::max(c1, pw.worst_ratio);
    }
    line(7, "MR_POINTWISE+BOUNDED", ok && t.secs() < 60.0, c1, t.secs(),
         "C1 stable +-5% across N");
  }

  {  // 8. SHARP_LOWER / SHARP_MORREY / BRIDGE, sigma(f)=0, c <= 16
    Timer t;
    const PropertyReport lo = run_property("SHARP_LOWER", crw());
    const PropertyReport mo = run_property("SHARP_MORREY", crw());
    const PropertyReport br = run_property("BRIDGE", crw());
    const bool ok = lo.pass && mo.pass && br.pass && br.worst_ratio <= 16.0;
    line(8, "SHARP+BRIDGE", ok && t.secs() < 60.0, br.worst_ratio, t.secs(),
         "bridge c <= 16, sigma(f)=0 at 1e-6");
  }

  {  // 9. COMM_BOUND_CZ + COMM_BOUND_IR with analytic spot checks
    Timer t;
    const PropertyReport cz = run_property("COMM_BOUND_CZ", crw());
    const PropertyReport ir = run_property("COMM_BOUND_IR", chanillo());
    bool ok = cz.pass && !cz.unstable && ir.pass && !ir.unstable;

    // spot check: [b,H]chi_{[-1,1]} = 2/pi off the support, 1e-3 at N=256
    const Window w = make_window(1, 4.0, 256);
    FieldSpec chi_spec;
    chi_spec.kind = FieldKind::Indicator;
    chi_spec.radius = 1.0;
    const SampledField chi = sample(chi_spec, w);
    SampledField blin = zero_field(w);
    for (int i = 0; i < w.N; ++i) blin.v[i] = w.coord(i);
    KernelSpec ker;
    const SampledField comm =
        commutator(CommutatorKind::CZ, blin, chi, &ker, nullptr).field;
    double comm_err = 0.0;
    for (int i = 0; i < w.N; ++i) {
      if (std::abs(w.coord(i)) <= 1.0 + w.h()) continue;
      comm_err = std::max(comm_err, std::abs(comm.v[i] - 2.0 / M_PI));
    }
    ok = ok && comm_err < 1e-3;

    // spot check: I_alpha chi_{[-1,1]} vs the closed form, 1e-4
    const double alpha = 1.0 / 3.0;
    const SampledField pot =
        frac_integral(chi, growth_power_pos(alpha)).field;
    double pot_err = 0.0;
    for (int i = 0; i < w.N; ++i) {
      const double x = w.coord(i);
      const double expect =
          std::abs(x) > 1.0
              ? (std::pow(std::abs(x) + 1.0, alpha) -
                 std::pow(std::abs(x) - 1.0, alpha)) /
                    alpha
              : (std::pow(1.0 + x, alpha) + std::pow(1.0 - x, alpha)) / alpha;
      pot_err = std::max(pot_err, std::abs(pot.v[i] - expect));
    }
    ok = ok && pot_err < 1e-4;

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "ratios stable +-10%%; [b,H]chi err %.2e (<1e-3), I_a chi "
                  "err %.2e (<1e-4)",
                  comm_err, pot_err);
    line(9, "COMM_BOUND_CZ+IR",
         ok && t.secs() < 300.0,
         std::max(cz.worst_ratio, ir.worst_ratio), t.secs(), detail);
  }

  {  // 10. tails, oscillation growth and the John-Nirenberg window
    Timer t;
    const PropertyReport tcz = run_property("TAIL_CZ", crw());
    const PropertyReport tir = run_property("TAIL_IR", chanillo());
    const PropertyReport tps = run_property("TAIL_IR_PSI", chanillo());
    const PropertyReport tsg = run_property("TAIL_IR", tails_singular());
    const PropertyReport osc = run_property("OSC_GROWTH", crw());
    const PropertyReport jn = run_property("JN_EQUIV", crw());
    const bool ok = tcz.pass && tir.pass && tps.pass && tsg.pass && osc.pass &&
                    jn.pass && jn.worst_ratio >= 0.125 &&
                    jn.worst_ratio <= 8.0;
    char detail[128];
    std::snprintf(detail, sizeof detail, "tail C <= %.3g, JN ratio %.3g",
                  std::max(std::max(tcz.worst_ratio, tir.worst_ratio),
                           std::max(tps.worst_ratio, tsg.worst_ratio)),
                  jn.worst_ratio);
    line(10, "TAILS+OSC+JN", ok && t.secs() < 60.0, osc.worst_ratio, t.secs(),
         detail);
  }

  {  // 11. determinism: identical config and seed, byte-identical reports
    Timer t;
    ExperimentConfig cfg = crw();
    cfg.properties = {"CHI_NORM", "GOODLAMBDA", "COMM_BOUND_CZ", "JN_EQUIV"};
    const ExperimentOutcome a = run_experiment(cfg);
    const ExperimentOutcome b = run_experiment(cfg);
    const std::string ja = a.report_json.dump(2), jb = b.report_json.dump(2);
    ExperimentConfig chan = chanillo();
    chan.properties = {"MR_BOUNDED", "TAIL_IR"};
    const std::string jc = run_experiment(chan).report_json.dump(2);
    const std::string jd = run_experiment(chan).report_json.dump(2);
    line(11, "DETERMINISM",
         ja == jb && jc == jd && a.exit_code == 0, (double)ja.size(), t.secs(),
         "byte-identical JSON reports");
  }

  {  // n=2 smoke at N=64 (window preamble, not a numbered criterion)
    Timer t;
    ExperimentConfig cfg;
    cfg.dim = 2;
    cfg.levels = {64};
    LevelContext ctx = make_level_context(cfg, 64);
    const bool ok = run_property_level("CHI_NORM", ctx).pass &&
                    run_property_level("GOODLAMBDA", ctx).pass &&
                    run_property_level("MEAN_BOUND", ctx).pass &&
                    run_property_level("HOLDER_BALL", ctx).pass;
    line(0, "N2_SMOKE", ok, 0.0, t.secs(), "n=2, N=64");
  }

  std::printf("%d criterion failure(s)\n", g_failures);
  return g_failures;
}
