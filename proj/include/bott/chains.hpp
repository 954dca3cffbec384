#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bott/algebra.hpp"
#include "bott/rng.hpp"

namespace bott {

enum class ChainKind { SO, U, Sp };
std::string to_string(ChainKind c);

struct ComplexStructure {
  CMat matrix;
  Group ambient = Group::U;
  std::optional<int> component_tag;
};

// Real matrices on R^{16n} = H^{4n}; coordinate index = part * 4n + q with part in (1, i, j, k).
RMat right_mult_real(int m, const Quaternion& u);
RMat quat_left_real(const QMat& Q);
QMat quat_from_real(const RMat& M, double tol = kPredicateTol);

struct CliffordSystem {
  int n = 0;
  std::vector<RMat> J;  // J[0] is J_1
  double residual() const;  // max over anticommutators, squares and orthogonality
};

CliffordSystem make_clifford_system(int n);

struct ComponentTag {
  enum class Kind { Trace, Pfaffian, Determinant } kind = Kind::Trace;
  int level = 0;
  cplx phase = 1.0;   // Trace: tr(phase * prefix * X) must vanish
  CMat prefix;        // J_1 ... J_{level-1}
  CMat basis;         // Pfaffian/Determinant: orthonormal basis of an invariant subspace
  CMat base_inverse;  // Determinant: det(basis^* base^-1 X basis) must be +1
  int reference = 1;  // Pfaffian: sign attained by the base point
};

struct MembershipResult {
  double residual = 0;
  bool member = false;
  std::string reason;
};

struct ChainNode {
  ChainKind chain = ChainKind::SO;
  int k = 0;
  Group ambient = Group::SO;
  CMat base;
  CMat pole;
  MetricSpec metric;
  std::vector<CMat> previous;  // J_1 ... J_{k-1} in the ambient picture
  std::vector<ComponentTag> tags;

  int dim() const { return static_cast<int>(base.rows()); }
  std::string id() const;
  MembershipResult membership(const CMat& X, double tol = kPredicateTol) const;
  bool contains(const CMat& X, double tol = kPredicateTol) const { return membership(X, tol).member; }
  std::optional<int> component_tag(const CMat& X) const;

  // projections of an arbitrary matrix onto Lie-algebra pieces of the ambient group
  CMat ambient_algebra(const CMat& X) const;
  CMat stabilizer_algebra(const CMat& X) const;  // commutes with J_1 ... J_{k-1}
  CMat tangent_algebra(const CMat& X) const;     // additionally anticommutes with the base
};

// Ambient picture of a real structure: complexified for SO/U, diag(J, J) for Sp.
CMat embed_real(ChainKind c, const RMat& J);
// U_r -> Sp_r in the complex picture: Y -> diag(Y, conj(Y))
CMat u_to_sp(const CMat& Y);

struct Chain {
  ChainKind kind = ChainKind::SO;
  int n = 0;
  std::vector<CMat> J;  // J_1 ... J_8, ambient picture
  std::vector<ChainNode> nodes;  // k = 0 ... 8
  std::optional<CMat> extension;  // a ninth anticommuting structure, when the ambient has one
};

Chain build_chain(ChainKind kind, const CliffordSystem& cliff);

CMat geodesic_symmetry(const CMat& g, const CMat& x);
bool is_pole(const CMat& p, const CMat& o, Group group, double tol = kPredicateTol, std::uint64_t seed = 0);

enum class Centrosome { not_member, member_shortest, member_nonshortest };
std::string to_string(Centrosome c);
Centrosome centrosome_membership(const CMat& J, const CMat& o, const CMat& p, Group group, MetricSpec metric,
                                 double tol = kPredicateTol);

struct GeodesicSegment {
  CMat start;
  CMat velocity;
  CMat at(double t) const;
};

GeodesicSegment midpoint_to_geodesic(const ComplexStructure& J, const CMat& o, double tol = kPredicateTol);

// exp(tX) A_q exp(-tX) with X = (pi i / 2) [[0, I],[I, 0]]
CMat grassmannian_geodesic(int q, double t);

std::vector<CMat> sample_node_points(const ChainNode& node, int count, std::uint64_t seed);

struct ProfileEntry {
  int k = 0;
  double length = 0;
  double distance = 0;       // geodesic_distance(J_k, -J_k)
  double endpoint_residual = 0;
  double path_residual = 0;  // worst node membership residual along the segment
  bool inside_node = true;
};

std::vector<ProfileEntry> chain_distance_profile(const Chain& chain, double tol = kPredicateTol);

}  // namespace bott
