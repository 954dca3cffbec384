#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "bott/homotopy.hpp"
#include "bott/inclusions.hpp"
#include "bott/suites.hpp"

using namespace bott;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("criterion %2d  %-4s  %-28s  %s\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void run(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const CliffordSystem cs = make_clifford_system(1);
  const Chain so = build_chain(ChainKind::SO, cs), u = build_chain(ChainKind::U, cs), sp = build_chain(ChainKind::Sp, cs);
  const ChainPairData so_u = make_pair_data(ChainPair::SO_U, so, u), u_sp = make_pair_data(ChainPair::U_Sp, u, sp);

  run(1, "Clifford system", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const double r = make_clifford_system(1).residual();
    const double s = seconds_since(t0);
    report(1, "Clifford system", r < 1e-12 && s < 1.0, fmt("residual %.2e, %.3f s", r, s));
  });

  run(2, "distance I to -I", [] {
    const double e = 4 * kPi;
    // SO_16 and U_16 share the picture and the metric; the SO check also confirms -I is in SO_16
    const double dso = is_in_group(RMat(-RMat::Identity(16, 16)), Group::SO)
                           ? geodesic_distance(identity(16), CMat(-identity(16)), MetricSpec::standard())
                           : INFINITY;
    const double du = geodesic_distance(identity(16), CMat(-identity(16)), MetricSpec::standard());
    const double dsp = geodesic_distance(identity(32), CMat(-identity(32)), MetricSpec::symplectic());
    const double r = std::max({std::abs(dso - e), std::abs(du - e), std::abs(dsp - e)});
    report(2, "distance I to -I", r < 1e-9, fmt("max |d - 4pi| = %.2e", r));
  });

  run(3, "equal chain distances", [&] {
    double spread = 0;
    for (const Chain* ch : {&so, &u, &sp}) {
      double lo = 1e300, hi = -1e300;
      for (const ProfileEntry& p : chain_distance_profile(*ch)) {
        lo = std::min(lo, p.distance);
        hi = std::max(hi, p.distance);
      }
      spread = std::max(spread, hi - lo);
    }
    report(3, "equal chain distances", spread < 1e-9, fmt("max spread over SO, U, Sp %.2e", spread));
  });

  run(4, "Grassmannian midpoint", [] {
    const int q = 8;
    CMat expect = CMat::Zero(2 * q, 2 * q);
    expect.topRightCorner(q, q) = CMat::Identity(q, q);
    expect.bottomLeftCorner(q, q) = -CMat::Identity(q, q);
    const double r = max_abs(CMat(grassmannian_geodesic(q, 0.5) - expect));
    report(4, "Grassmannian midpoint", r < 1e-11, fmt("residual %.2e", r));
  });

  run(5, "fixed-point sets", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (int k = 0; k <= 8; ++k)
      for (const ChainPairData* p : {&so_u, &u_sp}) {
        const VerifyReport r = verify_fixed_point_node(k, *p, 100, 1000 + k);
        worst = std::max(worst, r.max_residual);
        if (r.residuals.size() != 2) worst = INFINITY;
      }
    const double s = seconds_since(t0);
    report(5, "fixed-point sets", worst < 1e-10 && s < 30, fmt("residual %.2e, %.2f s", worst, s));
  });

  run(6, "commuting squares", [&] {
    double worst = 0;
    for (int k = 0; k <= 7; ++k)
      for (const ChainPairData* p : {&so_u, &u_sp})
        worst = std::max(worst, verify_square_commutes(k, *p, 25, 2000 + k).max_residual);
    report(6, "commuting squares", worst < 1e-9, fmt("deviation %.2e over 5 times x 25 samples", worst));
  });

  run(7, "metric scalings", [&] {
    struct Case {
      MetricEmbedding e;
      double expect;
    };
    // P_8 factor measured at n = 2
    const Case cases[] = {{u_step_embedding(8), 2.0},
                          {p4_embedding(cs), 8.0},
                          {p8_embedding(2), 16.0},
                          {p8_tilde_embedding(1), 16.0}};
    double worst = 0;
    int tangents = 1 << 30;
    std::string got;
    for (const Case& c : cases) {
      const MetricRatio m = metric_pullback_scale(c.e, 20, 77);
      worst = std::max(worst, std::abs(m.ratio - c.expect) / c.expect);
      tangents = std::min(tangents, m.tangents);
      got += fmt("%.6f ", m.ratio);
    }
    report(7, "metric scalings", worst < 1e-4 && tangents >= 20, "ratios " + got + fmt("rel err %.2e", worst));
  });

  run(8, "normal forms", [] {
    double worst = 0;
    for (NormalForm w : {NormalForm::P4, NormalForm::P8, NormalForm::P8_tilde})
      worst = std::max(worst, verify_isometry_normal_form(w, 1, 50, 3000).report.max_residual);
    report(8, "normal forms", worst < 1e-10, fmt("block-form residual %.2e (P4, P8, P~8)", worst));
  });

  run(9, "homotopy periodicity", [] {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = verify_periodicity(16).ok;
    for (SeriesPair p : {SeriesPair::O_to_U, SeriesPair::U_to_Sp, SeriesPair::Sp_to_U, SeriesPair::U_to_O})
      for (int i = 0; i <= 16; ++i) ok = ok && stable_map(p, i) == stable_map(p, i + 8);
    RunConfig c;
    c.suites = {"homotopy"};
    ok = ok && summarize(run_suite(c)).fail == 0;  // tables, f3, f7, quotients, exact segments
    const QuotientTables q = derive_quotient_tables();
    ok = ok && q.U_mod_O[3] == StableGroup::Z2 && q.U_mod_O[4] == StableGroup::Zero;
    const double s = seconds_since(t0);
    report(9, "homotopy periodicity", ok && s < 1.0, fmt("%.3f s", s));
  });

  run(10, "falsifiability", [] {
    RunConfig c;
    c.samples = 5;
    const auto clean = run_suite(c);
    c.inject_fault = true;
    const auto broken = run_suite(c);
    bool ok = true;
    std::string detail;
    for (const std::string suite : {"algebra", "chains", "inclusions", "homotopy"}) {
      int caught = 0;
      for (const auto& r : broken)
        if (r.check_id.rfind(suite + ".", 0) == 0 && r.status == Status::fail && !r.witness.is_null()) ++caught;
      int fixtures = 0;
      for (const auto& r : clean)
        if (r.check_id.rfind("fixture." + suite + ".", 0) == 0 && r.status == Status::pass) ++fixtures;
      ok = ok && caught >= 1 && fixtures >= 1;
      detail += suite + ":" + std::to_string(caught) + " ";
    }
    ok = ok && summarize(clean).fail == 0;
    report(10, "falsifiability", ok, "injected failures with witness " + detail);
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
