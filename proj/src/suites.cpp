#include "bott/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "bott/homotopy.hpp"
#include "bott/inclusions.hpp"

namespace bott {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const char* const kSuites[] = {"algebra", "chains", "inclusions", "homotopy"};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Outcome {
  std::optional<double> residual;
  bool ok = false;
  nlohmann::json witness;
};

struct Check {
  std::string id;
  std::string ref;
  // corrupt = true runs the deliberately broken fixture
  std::function<Outcome(bool corrupt)> run;
  bool has_fixture = false;
};

Outcome from_residual(double r, double tol, nlohmann::json witness = nullptr) {
  Outcome o;
  o.residual = r;
  o.ok = std::isfinite(r) && r <= tol;
  o.witness = std::move(witness);
  return o;
}

Outcome structural(bool ok, nlohmann::json witness = nullptr) {
  Outcome o;
  o.ok = ok;
  o.witness = std::move(witness);
  return o;
}

nlohmann::json describe(const std::string& s) { return {{"description", s}}; }

struct Context {
  RunConfig config;
  std::map<ChainKind, Chain> chains;
  const Chain& chain(ChainKind k) {
    auto it = chains.find(k);
    if (it == chains.end()) it = chains.emplace(k, build_chain(k, make_clifford_system(config.n))).first;
    return it->second;
  }
  std::uint64_t seed(const std::string& id) const { return mix64(config.seed ^ fnv1a(id)); }
};

// ---------------------------------------------------------------- algebra

std::vector<Check> algebra_checks(Context& ctx) {
  std::vector<Check> out;
  const int n = ctx.config.n;
  out.push_back({"algebra.clifford_relations", "Clifford system J_1..J_8 on R^16n", [n](bool corrupt) {
                   CliffordSystem cs = make_clifford_system(n);
                   if (corrupt) cs.J[1] = cs.J[0];
                   const double r = cs.residual();
                   nlohmann::json w = nullptr;
                   if (r > 1e-12) {
                     double worst = -1;
                     RMat wm;
                     for (size_t a = 0; a < cs.J.size(); ++a)
                       for (size_t b = a + 1; b < cs.J.size(); ++b) {
                         RMat ac = cs.J[a] * cs.J[b] + cs.J[b] * cs.J[a];
                         if (max_abs(ac) > worst) {
                           worst = max_abs(ac);
                           wm = ac;
                         }
                       }
                     w = to_json(Matrix(wm));
                   }
                   return from_residual(r, 1e-12, w);
                 },
                 true});
  auto distance = [&ctx, n](int dim, MetricSpec metric) {
    return [&ctx, dim, metric, n](bool) {
      const CMat I = identity(dim);
      const double d = geodesic_distance(I, CMat(-I), metric);
      return from_residual(std::abs(d - 4 * kPi * std::sqrt(double(n))), ctx.config.tol_distance);
    };
  };
  out.push_back({"algebra.distance_SO", "dist(I, -I) = pi sqrt(2q) in SO_16n", distance(16 * n, MetricSpec::standard())});
  out.push_back({"algebra.distance_U", "dist(I, -I) = pi sqrt(2q) in U_16n", distance(16 * n, MetricSpec::standard())});
  out.push_back({"algebra.distance_Sp", "dist(I, -I) in Sp_16n under -1/2 tr", distance(32 * n, MetricSpec::symplectic())});
  out.push_back({"algebra.exp_log", "exp and principal log on U_m", [&ctx](bool) {
                   double worst = 0;
                   nlohmann::json w = nullptr;
                   for (int s = 0; s < ctx.config.samples; ++s) {
                     CounterRng rng(ctx.seed("algebra.exp_log"), "skew", s);
                     const CMat X = random_skew_hermitian(rng, 8) * (0.2 + 2.0 * rng.uniform());
                     const double r = max_abs(CMat(log_unitary_principal(exp_skew(X)) - X));
                     if (r > worst) {
                       worst = r;
                       w = to_json(X);
                     }
                   }
                   return from_residual(worst, ctx.config.tol_predicate, worst > ctx.config.tol_predicate ? w : nullptr);
                 }});
  out.push_back({"algebra.pfaffian_components", "Pf sign separates the two components of O_16n / U_8n", [n](bool) {
                   const CliffordSystem cs = make_clifford_system(n);
                   RMat R = RMat::Identity(16 * n, 16 * n);
                   R(0, 0) = -1;
                   const RMat flipped = R * cs.J[0] * R;
                   const bool ok = pfaffian_sign(cs.J[0]) == pfaffian_sign(RMat(-cs.J[0])) &&
                                   pfaffian_sign(cs.J[0]) == -pfaffian_sign(flipped);
                   return structural(ok, ok ? nlohmann::json(nullptr) : to_json(Matrix(flipped)));
                 }});
  return out;
}

// ---------------------------------------------------------------- chains

std::vector<Check> chains_checks(Context& ctx) {
  std::vector<Check> out;
  for (ChainKind kind : {ChainKind::SO, ChainKind::U, ChainKind::Sp}) {
    const std::string name = to_string(kind);
    out.push_back({"chains.profile_" + name, "dist_{P_k}(J_k, -J_k) equal along the chain", [&ctx, kind](bool) {
                     const Chain& ch = ctx.chain(kind);
                     const double expect = 4 * kPi * std::sqrt(double(ctx.config.n));
                     double worst = 0;
                     int at = -1;
                     for (const ProfileEntry& e : chain_distance_profile(ch, ctx.config.tol_predicate)) {
                       double r = std::max({std::abs(e.distance - expect), std::abs(e.length - expect),
                                            e.endpoint_residual});
                       if (e.inside_node) r = std::max(r, e.path_residual);
                       if (r > worst) {
                         worst = r;
                         at = e.k;
                       }
                     }
                     return from_residual(worst, ctx.config.tol_distance,
                                          worst > ctx.config.tol_distance ? describe("k=" + std::to_string(at))
                                                                          : nlohmann::json(nullptr));
                   }});
  }
  out.push_back({"chains.structures_in_nodes", "J_k in P_k, and P_{k+1} rejects J_k", [&ctx](bool corrupt) {
                   double worst = 0;
                   nlohmann::json w = nullptr;
                   bool rejected_all = true;
                   for (ChainKind kind : {ChainKind::SO, ChainKind::U, ChainKind::Sp}) {
                     const Chain& ch = ctx.chain(kind);
                     for (int k = 1; k <= 8; ++k) {
                       // the broken fixture offers J_1 where J_2 belongs
                       const CMat& J = (corrupt && k == 2) ? ch.J[0] : ch.J[k - 1];
                       const MembershipResult m = ch.nodes[k].membership(J, ctx.config.tol_predicate);
                       const double r = m.member ? m.residual : std::max(m.residual, 1.0);
                       if (r > worst) {
                         worst = r;
                         w = {{"node", ch.nodes[k].id()}, {"reason", m.reason}, {"matrix", to_json(J)}};
                       }
                       if (k < 8 && ch.nodes[k + 1].contains(ch.J[k - 1], ctx.config.tol_predicate)) {
                         rejected_all = false;
                         w = {{"node", ch.nodes[k + 1].id()}, {"reason", "accepted J_k"}, {"matrix", to_json(ch.J[k - 1])}};
                       }
                     }
                   }
                   Outcome o = from_residual(worst, ctx.config.tol_predicate, w);
                   o.ok = o.ok && rejected_all;
                   if (o.ok) o.witness = nullptr;
                   return o;
                 },
                 true});
  out.push_back({"chains.sampled_points", "sampled points of every node satisfy its predicate", [&ctx](bool) {
                   double worst = 0;
                   nlohmann::json w = nullptr;
                   const int count = std::min(ctx.config.samples, 5);
                   for (ChainKind kind : {ChainKind::SO, ChainKind::U, ChainKind::Sp}) {
                     const Chain& ch = ctx.chain(kind);
                     for (const ChainNode& node : ch.nodes)
                       for (const CMat& x : sample_node_points(node, count, ctx.seed("chains.sampled_points"))) {
                         const MembershipResult m = node.membership(x, 1e-9);
                         const double r = m.member ? m.residual : std::max(m.residual, 1.0);
                         if (r > worst) {
                           worst = r;
                           w = {{"node", node.id()}, {"reason", m.reason}, {"matrix", to_json(x)}};
                         }
                       }
                   }
                   return from_residual(worst, 1e-9, worst > 1e-9 ? w : nullptr);
                 }});
  out.push_back({"chains.grassmannian_midpoint", "midpoint of A_q to -A_q is [[0, I],[-I, 0]]", [](bool) {
                   const int q = 8;
                   const CMat mid = grassmannian_geodesic(q, 0.5);
                   CMat expect = CMat::Zero(2 * q, 2 * q);
                   expect.topRightCorner(q, q) = CMat::Identity(q, q);
                   expect.bottomLeftCorner(q, q) = -CMat::Identity(q, q);
                   const double r = std::max(max_abs(CMat(mid - expect)),
                                             max_abs(CMat(grassmannian_geodesic(q, 1.0) + A_const(q))));
                   return from_residual(r, 1e-11, r > 1e-11 ? to_json(mid) : nlohmann::json(nullptr));
                 }});
  out.push_back({"chains.poles", "-I is a pole of SO_16n and U_16n, J_1 is not", [&ctx](bool) {
                   const int d = 16 * ctx.config.n;
                   const CMat I = identity(d);
                   const CMat J = ctx.chain(ChainKind::U).J[0];
                   const bool ok = is_pole(-I, I, Group::SO, ctx.config.tol_predicate, ctx.seed("chains.poles")) &&
                                   is_pole(-I, I, Group::U, ctx.config.tol_predicate, ctx.seed("chains.poles")) &&
                                   !is_pole(J, I, Group::U, ctx.config.tol_predicate, ctx.seed("chains.poles"));
                   return structural(ok, ok ? nlohmann::json(nullptr) : to_json(J));
                 }});
  return out;
}

// ---------------------------------------------------------------- inclusions

// pullback ratios with Frobenius normalisation, quaternionic sides at weight 1/2
const std::map<InclusionTag, double>& expected_ratios() {
  static const std::map<InclusionTag, double> m = {
      {InclusionTag::O_in_U, 1.0},     {InclusionTag::OU_in_GrC, 0.25}, {InclusionTag::USp_in_U, 0.5},
      {InclusionTag::GrH_in_GrC, 2.0}, {InclusionTag::Sp_in_U, 2.0},    {InclusionTag::SpU_in_GrC, 1.0},
      {InclusionTag::UO_in_U, 1.0},    {InclusionTag::GrR_in_GrC, 1.0}, {InclusionTag::U_in_Sp, 1.0},
      {InclusionTag::GrC_in_SpU, 2.0}, {InclusionTag::U_in_UO, 2.0},    {InclusionTag::GrC_in_GrR, 2.0},
      {InclusionTag::U_in_SO, 2.0},    {InclusionTag::GrC_in_OU, 2.0},  {InclusionTag::U_in_USp, 2.0},
      {InclusionTag::GrC_in_GrH, 1.0},
  };
  return m;
}

Outcome from_report(const VerifyReport& r, double tol) {
  nlohmann::json w = nullptr;
  if (!r.passed(tol)) {
    w = {{"detail", r.detail}};
    if (r.witness) w["matrix"] = to_json(*r.witness);
  }
  return from_residual(r.max_residual, tol, w);
}

std::vector<Check> inclusions_checks(Context& ctx) {
  std::vector<Check> out;
  out.push_back({"inclusions.maps", "the sixteen inclusions land in their codomains", [&ctx](bool) {
                   double worst = 0;
                   nlohmann::json w = nullptr;
                   for (InclusionTag tag : all_inclusion_tags()) {
                     const InclusionMap map = make_inclusion(tag, 2);
                     for (int s = 0; s < std::min(ctx.config.samples, 10); ++s) {
                       CounterRng rng(ctx.seed("inclusions.maps"), to_string(tag), s);
                       const Matrix x = sample_domain(map, rng);
                       double r;
                       try {
                         r = rep_residual(map.codomain, apply_inclusion(map, x, 1e-9));
                       } catch (const std::exception& e) {
                         r = kInf;
                       }
                       if (!(r <= worst)) {
                         worst = r;
                         w = {{"inclusion", to_string(tag)}, {"input", to_json(x)}};
                       }
                     }
                   }
                   return from_residual(worst, 1e-9, worst > 1e-9 ? w : nullptr);
                 }});
  auto pair_data = [&ctx](ChainPair p) {
    return p == ChainPair::SO_U ? make_pair_data(p, ctx.chain(ChainKind::SO), ctx.chain(ChainKind::U))
                                : make_pair_data(p, ctx.chain(ChainKind::U), ctx.chain(ChainKind::Sp));
  };
  for (ChainPair p : {ChainPair::SO_U, ChainPair::U_Sp})
    for (int k = 0; k <= 8; ++k) {
      const std::string id = "inclusions.fixed_point." + to_string(p) + ".k" + std::to_string(k);
      const bool fixture = p == ChainPair::U_Sp && k == 2;
      out.push_back({id,
                     p == ChainPair::SO_U ? "P_k = (P~_k^tau)_{J_k}" : "P~_k = (Pbar_k^taubar)_{J_k}",
                     [&ctx, p, k, id, pair_data](bool corrupt) {
                       ChainPairData data = pair_data(p);
                       // plain conjugation does not fix the image diag(Y, conj Y)
                       if (corrupt) data.involution = custom_c(identity(data.big->nodes[0].dim()));
                       return from_report(verify_fixed_point_node(k, data, ctx.config.samples, ctx.seed(id)),
                                          ctx.config.tol_predicate);
                     },
                     fixture});
    }
  for (ChainPair p : {ChainPair::SO_U, ChainPair::U_Sp})
    for (int k = 0; k <= 7; ++k) {
      const std::string id = "inclusions.square." + to_string(p) + ".k" + std::to_string(k);
      out.push_back({id, "geodesics commute with the chain inclusions", [&ctx, p, k, id, pair_data](bool) {
                       return from_report(verify_square_commutes(k, pair_data(p), ctx.config.samples, ctx.seed(id)),
                                          ctx.config.tol_distance);
                     }});
    }
  for (InclusionTag tag : all_inclusion_tags()) {
    const std::string id = "inclusions.metric." + to_string(tag);
    out.push_back({id, "inclusions are homothetic with a constant factor", [&ctx, tag, id](bool) {
                     const double expect = expected_ratios().at(tag);
                     try {
                       const MetricRatio m = metric_pullback_scale(metric_embedding(tag, 2), 20, ctx.seed(id));
                       const double r = std::abs(m.ratio - expect) / expect;
                       return from_residual(r, 1e-4,
                                            describe("ratio " + std::to_string(m.ratio) + ", expected " +
                                                     std::to_string(expect)));
                     } catch (const NonHomothetic& e) {
                       return from_residual(kInf, 1e-4, describe(e.what()));
                     }
                   }});
  }
  for (NormalForm w : {NormalForm::P4, NormalForm::P8, NormalForm::P8_tilde, NormalForm::P4_pair}) {
    const std::string id = "inclusions.normal_form." + to_string(w);
    out.push_back({id, "normal forms of P_4 and P_8 with metric factors 8 and 16", [&ctx, w, id](bool) {
                     const NormalFormReport r =
                         verify_isometry_normal_form(w, ctx.config.n, ctx.config.samples, ctx.seed(id), ctx.config.tol_predicate);
                     Outcome o = from_report(r.report, ctx.config.tol_predicate);
                     if (r.metric) {
                       const double dev = std::abs(r.metric->ratio - r.expected_ratio) / r.expected_ratio;
                       if (dev > 1e-4) {
                         o.ok = false;
                         o.witness = describe("metric ratio " + std::to_string(r.metric->ratio));
                       }
                     }
                     return o;
                   }});
  }
  return out;
}

// ---------------------------------------------------------------- homotopy

std::string row(const std::function<std::string(int)>& f, int upto) {
  std::string s;
  for (int i = 0; i <= upto; ++i) s += (i ? " " : "") + f(i);
  return s;
}

std::string hom_cell(const StableHom& h) {
  switch (h.kind) {
    case StableHom::Kind::zero: return "0";
    case StableHom::Kind::identity: return "id";
    case StableHom::Kind::mul: return "x" + std::to_string(h.m);
    case StableHom::Kind::mod2: return "mod2";
    case StableHom::Kind::iso: return "iso";
  }
  return "?";
}

StableTables corrupted_tables() {
  StableTables t = StableTables::standard();
  t.O_to_U[3] = StableHom::identity(StableGroup::Z);
  return t;
}

std::vector<Check> homotopy_checks(Context&) {
  std::vector<Check> out;
  out.push_back({"homotopy.tables", "stable groups and the maps f, g and their reverses", [](bool) {
                   // one period, as tabulated
                   const std::map<std::string, std::string> expect = {
                       {"O", "Z2 Z2 0 Z 0 0 0 Z"},     {"U", "0 Z 0 Z 0 Z 0 Z"},
                       {"Sp", "0 0 0 Z Z2 Z2 0 Z"},    {"O_to_U", "0 0 0 x2 0 0 0 id"},
                       {"Sp_to_U", "0 0 0 id 0 0 0 x2"}, {"U_to_Sp", "0 0 0 x2 0 mod2 0 id"},
                       {"U_to_O", "0 mod2 0 id 0 0 0 x2"}};
                   std::map<std::string, std::string> got;
                   for (Series s : {Series::O, Series::U, Series::Sp})
                     got[to_string(s)] = row([s](int i) { return to_string(stable_group(s, i)); }, 7);
                   for (SeriesPair p : {SeriesPair::O_to_U, SeriesPair::Sp_to_U, SeriesPair::U_to_Sp, SeriesPair::U_to_O})
                     got[to_string(p)] = row([p](int i) { return hom_cell(stable_map(p, i)); }, 7);
                   for (const auto& [k, v] : expect)
                     if (got[k] != v) return structural(false, describe(k + ": " + got[k] + " vs " + v));
                   return structural(true);
                 }});
  auto forced = [](bool f3) {
    using G = StableGroup;
    ExactSequence s = f3 ? ExactSequence{{G::Zero, G::Z, G::Z, G::Z2, G::Zero},
                                         {StableHom::zero(G::Zero, G::Z), std::nullopt, StableHom::mod2(),
                                          StableHom::zero(G::Z2, G::Zero)}}
                         : ExactSequence{{G::Zero, G::Z, G::Z, G::Zero},
                                         {StableHom::zero(G::Zero, G::Z), std::nullopt, StableHom::zero(G::Z, G::Zero)}};
    const auto sols = solve_forced_map(s);
    const int want = f3 ? 2 : 1;
    bool ok = !sols.empty();
    std::string desc;
    for (const auto& h : sols) {
      ok = ok && std::abs(h.multiplier()) == want;
      desc += h.describe() + " ";
    }
    return structural(ok, ok ? nlohmann::json(nullptr) : describe("solutions: " + desc));
  };
  out.push_back({"homotopy.forced_f3", "0 -> Z -> Z -> Z2 -> 0 forces k -> 2k", [forced](bool) { return forced(true); }});
  out.push_back({"homotopy.forced_f7", "0 -> Z -> Z -> 0 forces the identity", [forced](bool) { return forced(false); }});
  out.push_back({"homotopy.quotients", "pi_i(U/O) and pi_i(Sp/U) from the exact sequences", [](bool) {
                   try {
                     const QuotientTables q = derive_quotient_tables();
                     const std::string uo = row([&](int i) { return to_string(q.U_mod_O[i]); }, 7);
                     const std::string spu = row([&](int i) { return to_string(q.Sp_mod_U[i]); }, 7);
                     const bool ok = q.U_mod_O[3] == StableGroup::Z2 && q.U_mod_O[4] == StableGroup::Zero &&
                                     uo == "0 Z Z2 Z2 0 Z 0 0" && spu == "0 0 Z Z2 Z2 0 Z 0";
                     return structural(ok, ok ? nlohmann::json(nullptr) : describe("U/O: " + uo + "; Sp/U: " + spu));
                   } catch (const DerivationError& e) {
                     return structural(false, describe(e.what()));
                   }
                 }});
  out.push_back({"homotopy.les_exact", "every long exact sequence segment is exact", [](bool) {
                   const QuotientTables q = derive_quotient_tables();
                   for (int i = 0; i <= 16; ++i)
                     for (bool uo : {true, false}) {
                       const ExactnessResult r = check_exactness(les_segment(uo, i, StableTables::standard(), q));
                       if (!r.exact)
                         return structural(false, describe(std::string(uo ? "U/O" : "Sp/U") + " i=" + std::to_string(i) +
                                                           ": " + r.witness));
                     }
                   return structural(true);
                 }});
  out.push_back({"homotopy.periodicity", "f_i = f_{i+8} and g_i = g_{i+8}", [](bool corrupt) {
                   const PeriodicityReport r =
                       verify_periodicity(16, corrupt ? corrupted_tables() : StableTables::standard());
                   return structural(r.ok, r.ok ? nlohmann::json(nullptr)
                                                : nlohmann::json{{"i", r.witness_i}, {"description", r.witness}});
                 },
                 true});
  out.push_back({"homotopy.corollary", "induced maps between consecutive chain nodes", [](bool) {
                   for (int k = 0; k <= 8; ++k)
                     for (int i = 0; i <= 16; ++i)
                       for (bool ou : {true, false}) {
                         const StableHom h = corollary_map(ou, k, i);
                         const StableHom s = stable_map(ou ? SeriesPair::O_to_U : SeriesPair::U_to_Sp, i + k);
                         const bool special = k == 1 && i % 8 == 0;
                         if (special ? h.kind != StableHom::Kind::zero : !(h == s))
                           return structural(false, describe("k=" + std::to_string(k) + " i=" + std::to_string(i)));
                       }
                   return structural(true);
                 }});
  return out;
}

CheckResult finish(const std::string& id, const std::string& ref, Outcome o, long ms) {
  CheckResult r;
  r.check_id = id;
  r.ref = ref;
  r.elapsed_ms = ms;
  r.status = o.ok ? Status::pass : Status::fail;
  if (o.residual && std::isfinite(*o.residual)) r.max_residual = *o.residual;
  r.witness = std::move(o.witness);
  if (r.status == Status::fail && r.witness.is_null())
    r.witness = describe(o.residual ? "residual " + std::to_string(*o.residual) : "structural check failed");
  if (r.status == Status::pass && id.rfind("fixture.", 0) != 0) r.witness = nullptr;
  return r;
}

template <class F>
CheckResult timed(const std::string& id, const std::string& ref, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = structural(false, describe(std::string("exception: ") + e.what()));
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return finish(id, ref, std::move(o), static_cast<long>(ms));
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

std::vector<std::string> expand_suites(const std::vector<std::string>& suites) {
  std::vector<std::string> out;
  for (const char* s : kSuites)
    for (const auto& want : suites)
      if (want == "all" || want == s) {
        out.push_back(s);
        break;
      }
  return out;
}

void validate(const RunConfig& c) {
  if (c.n < 1) throw ConfigError("n must be positive");
  if (16 * c.n > c.dimension_cap)
    throw ConfigError("dimension 16n = " + std::to_string(16 * c.n) + " exceeds the cap " + std::to_string(c.dimension_cap));
  if (c.samples < 1) throw ConfigError("samples must be positive");
  if (!(c.tol_predicate > 0) || !(c.tol_distance > 0)) throw ConfigError("tolerances must be positive");
  if (c.format != "json" && c.format != "text") throw ConfigError("format must be json or text");
  if (c.suites.empty()) throw ConfigError("no suite selected");
  for (const auto& s : c.suites) {
    bool known = s == "all";
    for (const char* k : kSuites) known = known || s == k;
    if (!known) throw ConfigError("unknown suite " + s);
  }
}

std::vector<CheckResult> run_suite(const RunConfig& config) {
  validate(config);
  Context ctx{config, {}};
  std::vector<CheckResult> results;
  for (const std::string& suite : expand_suites(config.suites)) {
    std::vector<Check> checks;
    try {
      if (suite == "algebra") checks = algebra_checks(ctx);
      if (suite == "chains") checks = chains_checks(ctx);
      if (suite == "inclusions") checks = inclusions_checks(ctx);
      if (suite == "homotopy") checks = homotopy_checks(ctx);
    } catch (const std::exception& e) {
      results.push_back(finish(suite + ".setup", "", structural(false, describe(e.what())), 0));
      continue;
    }
    int fixtures = 0;
    for (const Check& c : checks) {
      results.push_back(timed(c.id, c.ref, [&] { return c.run(config.inject_fault && c.has_fixture); }));
      if (!c.has_fixture) continue;
      ++fixtures;
      // the fixture passes when the broken input is caught with a witness
      const std::string fid = "fixture." + c.id;
      results.push_back(timed(fid, "corrupted fixture must be rejected", [&] {
        Outcome o = c.run(true);
        Outcome f;
        f.residual = o.residual;
        f.ok = !o.ok && !o.witness.is_null();
        f.witness = f.ok ? o.witness : describe("corrupted fixture was not rejected");
        return f;
      }));
    }
    if (fixtures == 0)
      results.push_back(finish("fixture." + suite, "", structural(false, describe("suite has no corrupted fixture")), 0));
  }
  return results;
}

Summary summarize(const std::vector<CheckResult>& results) {
  Summary s;
  for (const auto& r : results) {
    if (r.status == Status::pass) ++s.pass;
    if (r.status == Status::fail) ++s.fail;
    if (r.status == Status::skip) ++s.skip;
  }
  return s;
}

}  // namespace bott
