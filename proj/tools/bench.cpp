// Benchmark of the OpenMP kernels against their serial reference
// implementations.  Each row times both paths on the same inputs and
// checks that the results agree exactly (rational paths) or bitwise
// (floating-point paths), since every parallel kernel is required to be
// deterministic and thread-count independent.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "wsaw/green.hpp"
#include "wsaw/lace.hpp"
#include "wsaw/torus.hpp"
#include "wsaw/walk_enum.hpp"

using namespace wsaw;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const char* name, double serial_s, double parallel_s, bool match) {
  std::printf("%-22s %10.3f ms %10.3f ms   x%-6.2f %s\n", name,
              serial_s * 1e3, parallel_s * 1e3,
              parallel_s > 0 ? serial_s / parallel_s : 0.0,
              match ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP benchmark"};
  int d = 3;
  int order = 8;
  int L = 32;
  app.add_option("--dim", d, "lattice dimension");
  app.add_option("--order", order, "series truncation order");
  app.add_option("--grid", L, "torus grid resolution");
  CLI11_PARSE(app, argc, argv);

  WalkWeightParams p;
  p.d = d;
  p.beta = Rational(1, 10);
  p.order = order;
  std::printf("d=%d beta=1/10 N=%d grid=%d\n", d, order, L);
  std::printf("%-22s %13s %13s   %-7s %s\n", "kernel", "serial", "parallel",
              "speedup", "check");

  GSeries gs, gp;
  const double t_enum_s = seconds([&] { gs = enumerate_G_reference(p); });
  const double t_enum_p = seconds([&] { gp = enumerate_G(p); });
  row("walk enumeration", t_enum_s, t_enum_p, gs.series == gp.series);

  SpatialSeries conv_s, conv_p;
  const double t_conv_s =
      seconds([&] { conv_s = convolve(gp.series, gp.series, Exec::serial); });
  const double t_conv_p =
      seconds([&] { conv_p = convolve(gp.series, gp.series, Exec::parallel); });
  row("series convolution", t_conv_s, t_conv_p, conv_s == conv_p);

  SpatialSeries F_s, F_p;
  const double t_inv_s = seconds([&] { F_s = invert_to_F(gp, Exec::serial); });
  const double t_inv_p =
      seconds([&] { F_p = invert_to_F(gp, Exec::parallel); });
  row("series inversion", t_inv_s, t_inv_p, F_s == F_p);

  PiSeries pi = pi_from_F(F_p);
  const double z = 0.8 / (2 * d);
  InfraredScan scan_s, scan_p;
  const double t_scan_s =
      seconds([&] { scan_s = infrared_scan(pi, z, L, Exec::serial); });
  const double t_scan_p =
      seconds([&] { scan_p = infrared_scan(pi, z, L, Exec::parallel); });
  row("infrared scan", t_scan_s, t_scan_p,
      scan_s.min_F == scan_p.min_F && scan_s.c_est == scan_p.c_est &&
          scan_s.argmin_m == scan_p.argmin_m);

  if (d >= 3) {
    GreenEvaluator green(d, 1.0 / (2 * d));
    const auto reps = reps_linf_ball(d, 6);
    std::map<LatticePoint, double> tab_s, tab_p;
    const double t_tab_s =
        seconds([&] { tab_s = green.table(reps, Exec::serial); });
    const double t_tab_p =
        seconds([&] { tab_p = green.table(reps, Exec::parallel); });
    row("green table", t_tab_s, t_tab_p, tab_s == tab_p);
  }
  return 0;
}
