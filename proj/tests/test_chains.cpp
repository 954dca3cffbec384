#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>

#include "bott/chains.hpp"

using namespace bott;

namespace {
constexpr double kPi = std::numbers::pi;

const Chain& chain_for(ChainKind k, int n) {
  static std::map<std::pair<int, int>, Chain> cache;
  auto key = std::make_pair(static_cast<int>(k), n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_chain(k, make_clifford_system(n))).first;
  return it->second;
}
}  // namespace

TEST_CASE("right multiplication matches the Hamilton product") {
  CounterRng rng(3, "rm", 0);
  const int m = 2;
  QMat Q(m, m);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) Q(r, s) = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  const Quaternion u{0.3, -1.2, 0.5, 2.0};
  // left action of Q commutes with right multiplication by u
  const RMat L = quat_left_real(Q), R = right_mult_real(m, u);
  CHECK(max_abs(RMat(L * R - R * L)) < 1e-12);
  CHECK(quat_from_real(L).max_abs_diff(Q) < 1e-14);
  // R_i R_j = R_{ji} = -R_k
  const RMat Ri = right_mult_real(m, Quaternion::unit_i()), Rj = right_mult_real(m, Quaternion::unit_j()),
             Rk = right_mult_real(m, Quaternion::unit_k());
  CHECK(max_abs(RMat(Ri * Rj + Rk)) < 1e-15);
  CHECK_THROWS(quat_from_real(Ri));
}

TEST_CASE("Clifford system relations") {
  for (int n : {1, 2, 3, 4}) {
    const CliffordSystem cs = make_clifford_system(n);
    REQUIRE(cs.J.size() == 8);
    CHECK(cs.J[0].rows() == 16 * n);
    CHECK(cs.residual() < 1e-14);
    // brute force pairwise check, independent of residual()
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        const RMat s = cs.J[a] * cs.J[b] + cs.J[b] * cs.J[a];
        const double expect = a == b ? -2.0 : 0.0;
        CHECK(max_abs(RMat(s - expect * RMat::Identity(16 * n, 16 * n))) < 1e-14);
      }
  }
  CHECK_THROWS(make_clifford_system(0));
}

TEST_CASE("each J_k lies in its own node and the neighbouring ones reject it") {
  for (ChainKind kind : {ChainKind::SO, ChainKind::U, ChainKind::Sp})
    for (int n : {1, 2}) {
      const Chain& ch = chain_for(kind, n);
      for (int k = 1; k <= 8; ++k) {
        const ChainNode& node = ch.nodes[k];
        INFO(node.id(), " n=", n);
        const MembershipResult r = node.membership(node.base);
        CHECK_MESSAGE(r.member, r.reason, " ", r.residual);
        CHECK(geodesic_distance(node.base, node.pole, node.metric) > 0);
        if (k < 8) {
          // J_k does not anticommute with itself
          CHECK_FALSE(ch.nodes[k + 1].contains(ch.J[k - 1]));
        }
        if (k >= 2) CHECK_FALSE(node.contains(ch.J[0]));
      }
      CHECK(ch.nodes[0].contains(ch.nodes[0].base));
    }
}

TEST_CASE("component tags separate the components") {
  // SO[1]: conjugating by a reflection flips the Pfaffian
  const Chain& so = chain_for(ChainKind::SO, 1);
  CMat R = CMat::Identity(16, 16);
  R(0, 0) = -1;
  const CMat flipped = R * so.J[0] * R;
  CHECK(so.nodes[1].contains(so.J[0]));
  CHECK(so.nodes[0].contains(CMat(R * R)));
  CHECK_FALSE(so.nodes[1].contains(flipped));
  CHECK(so.nodes[1].membership(flipped).reason == "pfaffian component");
  CHECK(so.nodes[1].contains(CMat(-so.J[0])));  // Pf(-J) = Pf(J) in dimension 16n

  // SO[8]: -J_8 changes component exactly when n is odd
  CHECK_FALSE(so.nodes[8].contains(CMat(-so.J[7])));
  const Chain& so2 = chain_for(ChainKind::SO, 2);
  CHECK(so2.nodes[8].contains(CMat(-so2.J[7])));

  // Sp[5]: a reflection of the real multiplicity space, extended to commute with J_1 ... J_4
  for (int n : {1, 2}) {
    const Chain& sp = chain_for(ChainKind::Sp, n);
    const ComponentTag& pf = sp.nodes[5].tags.back();
    REQUIRE(pf.kind == ComponentTag::Kind::Pfaffian);
    const CVec w = pf.basis.col(0);
    const Eigen::Index N = sp.J[0].rows();
    CMat G = CMat::Identity(N, N);
    for (const CMat& c : {CMat::Identity(N, N).eval(), sp.J[0], sp.J[2], CMat(sp.J[0] * sp.J[2])}) {
      const CVec cw = c * w;
      G -= 2.0 * cw * cw.adjoint();
    }
    CHECK(group_residual(G, Group::Sp) < 1e-12);
    for (int a = 0; a < 4; ++a) CHECK(commutator(G, sp.J[a]) < 1e-12);
    const CMat X = G * sp.J[4] * G.adjoint();
    const auto r = sp.nodes[5].membership(X);
    CHECK_FALSE(r.member);
    CHECK(r.reason == "pfaffian component");
    CHECK(sp.nodes[5].component_tag(X).value() == -pf.reference);
    CHECK(sp.nodes[4].contains(sp.J[3]));
  }
}

TEST_CASE("sampled points are members") {
  for (ChainKind kind : {ChainKind::SO, ChainKind::U, ChainKind::Sp}) {
    const Chain& ch = chain_for(kind, 1);
    for (int k = 0; k <= 8; ++k) {
      const auto pts = sample_node_points(ch.nodes[k], 3, 17);
      for (const CMat& p : pts) {
        const auto r = ch.nodes[k].membership(p, 1e-9);
        INFO(ch.nodes[k].id(), " ", r.reason);
        CHECK(r.member);
      }
    }
  }
}

TEST_CASE("sampling is deterministic") {
  const ChainNode& node = chain_for(ChainKind::U, 1).nodes[3];
  const auto a = sample_node_points(node, 2, 99), b = sample_node_points(node, 2, 99);
  CHECK(max_abs(CMat(a[1] - b[1])) == 0.0);
  const auto c = sample_node_points(node, 2, 100);
  CHECK(max_abs(CMat(a[1] - c[1])) > 1e-3);
}

TEST_CASE("poles") {
  const int N = 4;
  const CMat I = CMat::Identity(N, N);
  CHECK(is_pole(CMat(-I), I, Group::SO));
  CHECK(is_pole(CMat(-I), I, Group::U));
  CHECK_FALSE(is_pole(I, I, Group::U));
  CMat d = I;
  d(0, 0) = -1;
  d(1, 1) = -1;
  CHECK_FALSE(is_pole(d, I, Group::SO));  // squares to I but not central
  CHECK(is_pole(CMat(-I), I, Group::Sp));
}

TEST_CASE("centrosome membership") {
  const Chain& u = chain_for(ChainKind::U, 1);
  const CMat o = u.nodes[0].base, p = u.nodes[0].pole;
  CHECK(centrosome_membership(u.J[0], o, p, Group::U, MetricSpec::standard()) == Centrosome::member_shortest);
  CHECK(centrosome_membership(o, o, p, Group::U, MetricSpec::standard()) == Centrosome::not_member);
  // a square root of -I with an eigenangle at -pi/2 stays shortest
  CMat v = u.J[0];
  CHECK(centrosome_membership(CMat(-v), o, p, Group::U, MetricSpec::standard()) == Centrosome::member_shortest);
  CHECK_THROWS(centrosome_membership(v, o, o, Group::U, MetricSpec::standard()));
}

TEST_CASE("midpoint geodesic from J_k to -J_k through J_{k+1}") {
  for (ChainKind kind : {ChainKind::SO, ChainKind::U, ChainKind::Sp})
    for (int n : {1, 2}) {
      const Chain& ch = chain_for(kind, n);
      const auto prof = chain_distance_profile(ch);
      REQUIRE(prof.size() == 9);
      for (const auto& e : prof) {
        INFO(to_string(kind), " n=", n, " k=", e.k);
        // velocity pi J_k^-1 J_{k+1} has squared norm pi^2 * 16n, times the metric scale
        const double scale = kind == ChainKind::Sp ? 0.5 * 2.0 : 1.0;  // Sp picture doubles the size
        CHECK(e.length == doctest::Approx(4 * kPi * std::sqrt(n * scale)).epsilon(1e-9));
        CHECK(e.endpoint_residual < 1e-9);
        CHECK(e.path_residual < 1e-9);
        CHECK(e.distance == doctest::Approx(e.length).epsilon(1e-9));
        if (kind == ChainKind::SO && e.k == 8) CHECK_FALSE(e.inside_node);
      }
    }
}

TEST_CASE("midpoint_to_geodesic rejects non-midpoints") {
  const CMat I = CMat::Identity(2, 2);
  CHECK_THROWS(midpoint_to_geodesic({I, Group::U, std::nullopt}, I));
  CMat J = CMat::Zero(2, 2);
  J(0, 1) = -1;
  J(1, 0) = 1;
  const auto g = midpoint_to_geodesic({J, Group::SO, std::nullopt}, I);
  CHECK(max_abs(CMat(g.at(1.0) + I)) < 1e-12);
  CHECK(max_abs(CMat(g.at(0.5) - J)) < 1e-12);
}

TEST_CASE("embeddings") {
  CounterRng rng(5, "emb", 0);
  const CMat Y = haar_unitary(rng, 3);
  CHECK(group_residual(u_to_sp(Y), Group::Sp) < 1e-12);
  const RMat J = make_clifford_system(1).J[0];
  CHECK(group_residual(embed_real(ChainKind::Sp, J), Group::Sp) < 1e-12);
}
