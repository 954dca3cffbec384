#include "bott/chains.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bott {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

const Quaternion kBasis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

double component(const Quaternion& q, int p) {
  switch (p) {
    case 0: return q.a;
    case 1: return q.b;
    case 2: return q.c;
    default: return q.d;
  }
}

// orthonormal basis of the joint +1 eigenspace of commuting Hermitian involutions
CMat joint_eigenspace(const std::vector<CMat>& involutions, int expected_dim) {
  const Eigen::Index N = involutions.front().rows();
  CMat P = CMat::Identity(N, N);
  for (const CMat& s : involutions) P = P * (CMat::Identity(N, N) + s) * 0.5;
  P = (P + P.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<CMat> es(P);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < N; ++j)
    if (es.eigenvalues()(j) > 0.5) cols.push_back(j);
  if (static_cast<int>(cols.size()) != expected_dim)
    throw std::logic_error("joint eigenspace has dimension " + std::to_string(cols.size()) + ", expected " +
                           std::to_string(expected_dim));
  CMat B(N, static_cast<Eigen::Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) B.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
  return B;
}

// orthonormal basis of the fixed vectors of an antilinear involution v -> sigma(v) on span(B)
template <class Sigma>
CMat real_form_basis(const CMat& B, Sigma sigma) {
  const Eigen::Index N = B.rows(), d = B.cols();
  CMat W(N, d);
  Eigen::Index found = 0;
  for (Eigen::Index c = 0; c < d && found < d; ++c) {
    for (int variant = 0; variant < 2 && found < d; ++variant) {
      CVec u = variant ? CVec(kI * B.col(c)) : CVec(B.col(c));
      u = (u + sigma(u)) * 0.5;
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index l = 0; l < found; ++l) u -= W.col(l) * W.col(l).dot(u).real();
      const double nu = u.norm();
      if (nu < 1e-6) continue;
      W.col(found++) = u / nu;
    }
  }
  if (found != d) throw std::logic_error("real form basis incomplete");
  return W;
}

CMat product(const std::vector<CMat>& Js, int count, Eigen::Index N) {
  CMat p = CMat::Identity(N, N);
  for (int i = 0; i < count; ++i) p = p * Js[i];
  return p;
}

cplx trace_of_product(const CMat& A, const CMat& B) { return A.cwiseProduct(B.transpose()).sum(); }

}  // namespace

std::string to_string(ChainKind c) {
  switch (c) {
    case ChainKind::SO: return "SO";
    case ChainKind::U: return "U";
    case ChainKind::Sp: return "Sp";
  }
  return "?";
}

std::string to_string(Centrosome c) {
  switch (c) {
    case Centrosome::not_member: return "not_member";
    case Centrosome::member_shortest: return "member_shortest";
    case Centrosome::member_nonshortest: return "member_nonshortest";
  }
  return "?";
}

RMat right_mult_real(int m, const Quaternion& u) {
  RMat R = RMat::Zero(4 * m, 4 * m);
  for (int p = 0; p < 4; ++p) {
    const Quaternion img = kBasis[p] * u;
    for (int s = 0; s < m; ++s)
      for (int pp = 0; pp < 4; ++pp) R(pp * m + s, p * m + s) = component(img, pp);
  }
  return R;
}

RMat quat_left_real(const QMat& Q) {
  const int m = Q.rows();
  if (Q.cols() != m) throw std::invalid_argument("quat_left_real: matrix not square");
  RMat M = RMat::Zero(4 * m, 4 * m);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s)
      for (int p = 0; p < 4; ++p) {
        const Quaternion img = Q(r, s) * kBasis[p];
        for (int pp = 0; pp < 4; ++pp) M(pp * m + r, p * m + s) = component(img, pp);
      }
  return M;
}

QMat quat_from_real(const RMat& M, double tol) {
  if (M.rows() != M.cols() || M.rows() % 4) throw std::invalid_argument("quat_from_real: bad dimension");
  const int m = static_cast<int>(M.rows() / 4);
  QMat Q(m, m);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) Q(r, s) = {M(r, s), M(m + r, s), M(2 * m + r, s), M(3 * m + r, s)};
  if (max_abs(RMat(quat_left_real(Q) - M)) > tol)
    throw std::invalid_argument("quat_from_real: matrix is not quaternion-linear");
  return Q;
}

double CliffordSystem::residual() const {
  double r = 0;
  const auto N = J.front().rows();
  const RMat Id = RMat::Identity(N, N);
  for (size_t a = 0; a < J.size(); ++a) {
    r = std::max(r, max_abs(RMat(J[a] * J[a] + Id)));
    r = std::max(r, max_abs(RMat(J[a].transpose() * J[a] - Id)));
    for (size_t b = a + 1; b < J.size(); ++b) r = std::max(r, max_abs(RMat(J[a] * J[b] + J[b] * J[a])));
  }
  return r;
}

CliffordSystem make_clifford_system(int n) {
  if (n < 1) throw std::invalid_argument("make_clifford_system: n must be positive");
  const int m = 4 * n;  // quaternionic dimension
  CliffordSystem cs;
  cs.n = n;
  const RMat Ri = right_mult_real(m, Quaternion::unit_i());
  const RMat Rj = right_mult_real(m, Quaternion::unit_j());
  const RMat Rk = right_mult_real(m, Quaternion::unit_k());

  // E = diag(I_2n, -I_2n) on quaternionic coordinates; J_3 = R_k E gives J_1 J_2 J_3 = E
  QMat E(m, m);
  for (int s = 0; s < m; ++s) E(s, s) = {s < 2 * n ? 1.0 : -1.0, 0, 0, 0};
  cs.J = {Ri, Rj, RMat(Rk * quat_left_real(E))};

  // J_a = R_k X_a with X_a = sigma_x (x) A_a (x) I_n, where the A_a are the five
  // anticommuting Hermitian involutions of M_2(H); all X_a anticommute with E.
  const Quaternion one{1, 0, 0, 0}, zero{};
  const Quaternion units[4] = {one, Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};
  std::vector<std::array<Quaternion, 4>> A;  // row-major 2x2
  A.push_back({one, zero, zero, -one});
  for (const Quaternion& u : units) A.push_back({zero, u, u.conj(), zero});
  for (const auto& a : A) {
    QMat X(m, m);
    for (int h = 0; h < 2; ++h)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          for (int l = 0; l < n; ++l) X(h * 2 * n + s * n + l, (1 - h) * 2 * n + t * n + l) = a[s * 2 + t];
    cs.J.push_back(Rk * quat_left_real(X));
  }
  return cs;
}

CMat embed_real(ChainKind c, const RMat& J) {
  if (c == ChainKind::Sp) return u_to_sp(J.cast<cplx>());
  return J.cast<cplx>();
}

CMat u_to_sp(const CMat& Y) {
  const Eigen::Index r = Y.rows();
  CMat out = CMat::Zero(2 * r, 2 * r);
  out.topLeftCorner(r, r) = Y;
  out.bottomRightCorner(r, r) = Y.conjugate();
  return out;
}

std::string ChainNode::id() const { return to_string(chain) + "[" + std::to_string(k) + "]"; }

std::optional<int> ChainNode::component_tag(const CMat& X) const {
  for (const auto& t : tags) {
    if (t.kind == ComponentTag::Kind::Pfaffian) {
      const CMat h = t.basis.adjoint() * (t.prefix * X) * t.basis;
      try {
        return pfaffian_sign(RMat(h.real()), 1e-6);
      } catch (const std::invalid_argument&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

MembershipResult ChainNode::membership(const CMat& X, double tol) const {
  MembershipResult r;
  auto note = [&](double v, const char* why) {
    if (v > r.residual) {
      r.residual = v;
      if (v > tol) r.reason = why;
    }
  };
  if (X.rows() != base.rows() || X.cols() != base.cols()) {
    r.residual = std::numeric_limits<double>::infinity();
    r.reason = "dimension";
    return r;
  }
  note(group_residual(X, ambient), "ambient group");
  if (k > 0) {
    note(square_minus_identity(X), "J^2 != -I");
    for (const CMat& P : previous) note(anticommutator(X, P), "anticommutation");
  }
  const double N = static_cast<double>(X.rows());
  for (const auto& t : tags) {
    switch (t.kind) {
      case ComponentTag::Kind::Trace:
        note(std::abs(t.phase * trace_of_product(t.prefix, X)) / N, "trace tag");
        break;
      case ComponentTag::Kind::Pfaffian: {
        const CMat h = t.basis.adjoint() * (t.prefix * X) * t.basis;
        note(max_abs(CMat(h.imag().cast<cplx>())), "real form");
        int s = 0;
        try {
          s = pfaffian_sign(RMat(h.real()), 1e-6);
        } catch (const std::invalid_argument&) {
          s = 0;
        }
        if (s != t.reference) note(2.0, "pfaffian component");
        break;
      }
      case ComponentTag::Kind::Determinant: {
        const CMat g = t.basis.adjoint() * (t.base_inverse * X) * t.basis;
        note(std::abs(g.determinant() - 1.0), "determinant component");
        break;
      }
    }
  }
  r.member = r.residual <= tol;
  return r;
}

CMat ChainNode::ambient_algebra(const CMat& X) const {
  CMat S = (X - X.adjoint()) * 0.5;
  switch (ambient) {
    case Group::O:
    case Group::SO: return S.real().cast<cplx>();
    case Group::Sp: return symplectic_part(S);
    default: return S;
  }
}

CMat ChainNode::stabilizer_algebra(const CMat& X) const {
  CMat S = ambient_algebra(X);
  for (const CMat& P : previous) S = (S - P * S * P) * 0.5;
  return S;
}

CMat ChainNode::tangent_algebra(const CMat& X) const {
  CMat S = stabilizer_algebra(X);
  if (k == 0) return S;
  return (S + base * S * base) * 0.5;
}

Chain build_chain(ChainKind kind, const CliffordSystem& cliff) {
  if (cliff.J.size() != 8 || cliff.residual() > 1e-12) throw std::invalid_argument("build_chain: invalid Clifford system");
  Chain ch;
  ch.kind = kind;
  ch.n = cliff.n;
  for (const RMat& j : cliff.J) ch.J.push_back(embed_real(kind, j));
  const Eigen::Index N = ch.J.front().rows();
  const int n = cliff.n;
  const Group amb = kind == ChainKind::SO ? Group::SO : kind == ChainKind::U ? Group::U : Group::Sp;
  const MetricSpec metric = kind == ChainKind::Sp ? MetricSpec::symplectic() : MetricSpec::standard();
  const CMat Id = CMat::Identity(N, N);

  // component tags, indexed by the level at which they first apply
  std::vector<std::vector<ComponentTag>> level_tags(9);
  for (int l = 1; l <= 8; l += 2) {
    ComponentTag t;
    t.kind = ComponentTag::Kind::Trace;
    t.level = l;
    t.phase = (l % 4 == 1) ? kI : cplx(1.0);
    t.prefix = product(ch.J, l - 1, N);
    level_tags[l].push_back(t);
  }
  const auto& J = ch.J;
  if (kind == ChainKind::SO) {
    ComponentTag pf;
    pf.kind = ComponentTag::Kind::Pfaffian;
    pf.level = 1;
    pf.prefix = Id;
    pf.basis = Id;
    pf.reference = pfaffian_sign(RMat(J[0].real()));
    level_tags[1].push_back(pf);

    // weight space of the volume element and three commuting triple products
    const CMat omega = product(J, 7, N);
    const CMat T1 = J[0] * J[1] * J[2], T2 = J[0] * J[3] * J[4], T3 = J[1] * J[3] * J[5];
    ComponentTag det;
    det.kind = ComponentTag::Kind::Determinant;
    det.level = 8;
    det.basis = joint_eigenspace({omega, T1, T2, T3}, n);
    det.base_inverse = -J[7];
    level_tags[8].push_back(det);
  } else if (kind == ChainKind::Sp) {
    ComponentTag det;
    det.kind = ComponentTag::Kind::Determinant;
    det.level = 4;
    det.basis = joint_eigenspace({CMat(J[0] * J[1] * J[2]), CMat(kI * J[0] * J[1])}, 8 * n);
    det.base_inverse = -J[3];
    level_tags[4].push_back(det);

    ComponentTag pf;
    pf.kind = ComponentTag::Kind::Pfaffian;
    pf.level = 5;
    pf.prefix = product(J, 4, N);
    const CMat S = joint_eigenspace({CMat(kI * J[0] * J[1]), CMat(kI * J[2] * J[3])}, 8 * n);
    const CMat K = K_const(static_cast<int>(N / 2));
    const CMat y = J[0] * J[2];
    pf.basis = real_form_basis(S, [&](const CVec& v) { return CVec(K * (y * v).conjugate()); });
    const CMat h = pf.basis.adjoint() * (pf.prefix * J[4]) * pf.basis;
    pf.reference = pfaffian_sign(RMat(h.real()));
    level_tags[5].push_back(pf);
  }

  for (int k = 0; k <= 8; ++k) {
    ChainNode node;
    node.chain = kind;
    node.k = k;
    node.ambient = amb;
    node.metric = metric;
    node.base = k == 0 ? Id : J[k - 1];
    node.pole = -node.base;
    for (int i = 0; i + 1 < k; ++i) node.previous.push_back(J[i]);
    for (int l = 1; l <= k; ++l)
      for (const auto& t : level_tags[l]) node.tags.push_back(t);
    ch.nodes.push_back(std::move(node));
  }

  // a ninth structure i J_8 (J_1 ... J_7) exists over C
  if (kind != ChainKind::SO) {
    const CMat omega = product(J, 7, N);
    if (kind == ChainKind::U) {
      ch.extension = CMat(kI * J[7] * omega);
    } else {
      const Eigen::Index r = N / 2;
      ch.extension = u_to_sp(CMat(kI * J[7].topLeftCorner(r, r) * omega.topLeftCorner(r, r)));
    }
  }
  return ch;
}

CMat geodesic_symmetry(const CMat& g, const CMat& x) {
  if (g.rows() != x.rows() || g.cols() != x.cols()) throw std::invalid_argument("geodesic_symmetry: dimension mismatch");
  return g * x.inverse() * g;
}

bool is_pole(const CMat& p, const CMat& o, Group group, double tol, std::uint64_t seed) {
  if (p.rows() != o.rows()) return false;
  if (group_residual(p, group) > tol || group_residual(o, group) > tol) return false;
  if (max_abs(CMat(p - o)) <= tol) return false;
  const Eigen::Index N = p.rows();
  const CMat c = p * o.adjoint();
  const CMat Id = CMat::Identity(N, N);
  if (max_abs(CMat(c * c - Id)) > tol) return false;
  // centre of U: scalars; SO_{2m}, Sp: +-I
  const cplx z = c.trace() / double(N);
  if (max_abs(CMat(c - z * Id)) > tol) return false;
  if (group != Group::U && group != Group::SU && std::abs(z.imag()) > tol) return false;
  CounterRng rng(seed, "is_pole", 0);
  for (int s = 0; s < 200; ++s) {
    CMat g;
    switch (group) {
      case Group::O:
      case Group::SO: g = haar_special_orthogonal(rng, static_cast<int>(N)).cast<cplx>(); break;
      case Group::Sp: g = haar_symplectic(rng, static_cast<int>(N / 2)); break;
      default: g = haar_unitary(rng, static_cast<int>(N)); break;
    }
    if (commutator(c, g) > tol * 10) return false;
  }
  return true;
}

Centrosome centrosome_membership(const CMat& J, const CMat& o, const CMat& p, Group group, MetricSpec,
                                 double tol) {
  if (!is_pole(p, o, group, tol)) throw std::invalid_argument("centrosome_membership: p is not a pole of o");
  if (group_residual(J, group) > tol) return Centrosome::not_member;
  const CMat u = o.adjoint() * J;
  if (max_abs(CMat(u * u - o.adjoint() * p)) > tol) return Centrosome::not_member;
  const UnitaryEig e = unitary_eig(u, std::max(tol, 1e-10));
  for (Eigen::Index j = 0; j < e.angles.size(); ++j)
    if (std::abs(std::abs(e.angles(j)) - kPi / 2) > tol) return Centrosome::member_nonshortest;
  return Centrosome::member_shortest;
}

CMat GeodesicSegment::at(double t) const { return start * exp_skew(CMat(t * velocity), 1e-8); }

GeodesicSegment midpoint_to_geodesic(const ComplexStructure& J, const CMat& o, double tol) {
  const CMat u = o.adjoint() * J.matrix;
  const CMat Id = CMat::Identity(u.rows(), u.cols());
  if (max_abs(CMat(u * u + Id)) > tol) throw std::invalid_argument("midpoint_to_geodesic: not a midpoint of o and -o");
  const UnitaryEig e = unitary_eig(u, tol);
  for (Eigen::Index j = 0; j < e.angles.size(); ++j)
    if (std::abs(std::abs(e.angles(j)) - kPi / 2) > std::max(tol, 1e-9))
      throw std::invalid_argument("midpoint_to_geodesic: not a shortest midpoint");
  GeodesicSegment g;
  g.start = o;
  Eigen::VectorXcd d = 2.0 * kI * e.angles.cast<cplx>();
  g.velocity = e.vectors * d.asDiagonal() * e.vectors.adjoint();
  return g;
}

CMat grassmannian_geodesic(int q, double t) {
  CMat X = CMat::Zero(2 * q, 2 * q);
  X.topRightCorner(q, q) = CMat::Identity(q, q) * (kI * kPi / 2.0);
  X.bottomLeftCorner(q, q) = CMat::Identity(q, q) * (kI * kPi / 2.0);
  const CMat g = exp_skew(CMat(t * X));
  return g * A_const(q) * g.adjoint();
}

std::vector<CMat> sample_node_points(const ChainNode& node, int count, std::uint64_t seed) {
  std::vector<CMat> out;
  const int N = node.dim();
  for (int s = 0; s < count; ++s) {
    CounterRng rng(seed, "sample:" + node.id(), static_cast<std::uint64_t>(s));
    CMat g;
    if (node.k <= 1) {
      switch (node.ambient) {
        case Group::SO: g = haar_special_orthogonal(rng, N).cast<cplx>(); break;
        case Group::Sp: g = haar_symplectic(rng, N / 2); break;
        default: g = haar_unitary(rng, N); break;
      }
    } else {
      // identity component of the centraliser of J_1 ... J_{k-1}
      g = exp_skew(node.stabilizer_algebra(gaussian_complex(rng, N, N)), 1e-8);
    }
    out.push_back(node.k == 0 ? g : CMat(g * node.base * g.adjoint()));
  }
  return out;
}

std::vector<ProfileEntry> chain_distance_profile(const Chain& chain, double tol) {
  if (chain.nodes.size() != 9) throw std::invalid_argument("chain_distance_profile: malformed chain");
  std::vector<ProfileEntry> out;
  for (int k = 0; k <= 8; ++k) {
    const ChainNode& node = chain.nodes[k];
    ProfileEntry e;
    e.k = k;
    CMat mid;
    if (k < 8) {
      mid = chain.J[k];
    } else if (chain.extension) {
      mid = *chain.extension;
    } else {
      // no real ninth structure: use the one-parameter subgroup through the base
      mid = node.base * node.base;
      e.inside_node = false;
    }
    const GeodesicSegment g = midpoint_to_geodesic({mid, node.ambient, std::nullopt}, node.base, tol);
    e.length = std::sqrt(node.metric.norm_sq(g.velocity));
    e.distance = geodesic_distance(node.base, node.pole, node.metric);
    e.endpoint_residual = std::max(max_abs(CMat(g.at(1.0) - node.pole)), max_abs(CMat(g.at(0.5) - mid)));
    if (e.inside_node)
      for (double t : {0.125, 0.25, 0.5, 0.75, 0.875})
        e.path_residual = std::max(e.path_residual, node.membership(g.at(t), tol).residual);
    out.push_back(e);
  }
  return out;
}

}  // namespace bott
