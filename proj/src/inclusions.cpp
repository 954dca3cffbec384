#include "bott/inclusions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bott {

namespace {

const cplx kI(0, 1);
constexpr double kInf = std::numeric_limits<double>::infinity();

Field field_of(RepKind k) {
  switch (k) {
    case RepKind::OrthogonalGroup:
    case RepKind::SpecialOrthogonalGroup:
    case RepKind::OrthogonalStructure:
    case RepKind::J0Structure:
    case RepKind::RealProjection: return Field::Real;
    case RepKind::SymplecticGroup:
    case RepKind::QuaternionProjection: return Field::Quaternion;
    default: return Field::Complex;
  }
}

CMat J0_const(int r) {
  CMat j = CMat::Zero(4 * r, 4 * r);
  j.topRightCorner(2 * r, 2 * r) = -CMat::Identity(2 * r, 2 * r);
  j.bottomLeftCorner(2 * r, 2 * r) = CMat::Identity(2 * r, 2 * r);
  return j;
}

double unitary_res(const CMat& x) {
  return max_abs(CMat(x.adjoint() * x - CMat::Identity(x.cols(), x.cols())));
}

double projection_res(const CMat& p, int rank) {
  double r = hermitian_residual(p);
  r = std::max(r, max_abs(CMat(p * p - p)));
  r = std::max(r, std::abs(p.trace() - double(rank)));
  return r;
}

CMat off_diagonal_structure(const CMat& X) {
  const Eigen::Index r = X.rows();
  CMat a = CMat::Zero(2 * r, 2 * r);
  a.topRightCorner(r, r) = -X.adjoint();
  a.bottomLeftCorner(r, r) = X;
  return a;
}

QMat complex_entries(const CMat& A) {
  QMat q(static_cast<int>(A.rows()), static_cast<int>(A.cols()));
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) q(i, j) = Quaternion::from_complex(A(i, j));
  return q;
}

CMat block_diag(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMat coordinate_projection(int n, int rank) {
  CMat p = CMat::Zero(n, n);
  p.topLeftCorner(rank, rank).setIdentity();
  return p;
}

CMat to_complex_picture(const Matrix& m) { return m.as_complex(); }

Matrix from_complex_picture(Field f, const CMat& c) {
  switch (f) {
    case Field::Real: return Matrix(RMat(c.real()));
    case Field::Quaternion: return Matrix(complex_to_quat(c, 1e-6));
    default: return Matrix(c);
  }
}

// part of X anticommuting with the involution-free structure S (S^2 = -I)
CMat anticommuting_part(const CMat& X, const CMat& S) { return (X + S * X * S) * 0.5; }

QMat qblock(const QMat& q, int r0, int c0, int rows, int cols) {
  QMat b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = q(r0 + i, c0 + j);
  return b;
}

QMat qdiag(const QMat& a, const QMat& b) {
  QMat out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

double qmax(const QMat& q) {
  double m = 0;
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) m = std::max(m, q(i, j).norm());
  return m;
}

QMat qB(int m) {
  QMat b(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    b(i, m + i) = {1, 0, 0, 0};
    b(m + i, i) = {-1, 0, 0, 0};
  }
  return b;
}

}  // namespace

std::string to_string(InclusionTag t) {
  switch (t) {
    case InclusionTag::O_in_U: return "O_in_U";
    case InclusionTag::OU_in_GrC: return "OU_in_GrC";
    case InclusionTag::USp_in_U: return "USp_in_U";
    case InclusionTag::GrH_in_GrC: return "GrH_in_GrC";
    case InclusionTag::Sp_in_U: return "Sp_in_U";
    case InclusionTag::SpU_in_GrC: return "SpU_in_GrC";
    case InclusionTag::UO_in_U: return "UO_in_U";
    case InclusionTag::GrR_in_GrC: return "GrR_in_GrC";
    case InclusionTag::U_in_Sp: return "U_in_Sp";
    case InclusionTag::GrC_in_SpU: return "GrC_in_SpU";
    case InclusionTag::U_in_UO: return "U_in_UO";
    case InclusionTag::GrC_in_GrR: return "GrC_in_GrR";
    case InclusionTag::U_in_SO: return "U_in_SO";
    case InclusionTag::GrC_in_OU: return "GrC_in_OU";
    case InclusionTag::U_in_USp: return "U_in_USp";
    case InclusionTag::GrC_in_GrH: return "GrC_in_GrH";
  }
  return "?";
}

std::vector<InclusionTag> all_inclusion_tags() {
  std::vector<InclusionTag> v;
  for (int i = 0; i < 16; ++i) v.push_back(static_cast<InclusionTag>(i));
  return v;
}

std::string RepDescriptor::describe() const {
  static const char* names[] = {"orthogonal group",      "unitary group",          "symplectic group",
                                "special orthogonal",    "orthogonal structure",   "balanced unitary structure",
                                "structure anti J0",     "structure anti A_r",     "real projection",
                                "complex projection",    "quaternionic projection", "complex form projection",
                                "symmetric unitary"};
  std::string s = names[static_cast<int>(kind)];
  s += " " + std::to_string(dim);
  if (rank) s += " rank " + std::to_string(rank);
  return s;
}

double rep_residual(const RepDescriptor& d, const Matrix& x) {
  if (x.field() != field_of(d.kind) || x.rows() != d.dim || x.cols() != d.dim) return kInf;
  const CMat c = to_complex_picture(x);
  const Eigen::Index N = c.rows();
  switch (d.kind) {
    case RepKind::OrthogonalGroup: return unitary_res(c);
    case RepKind::UnitaryGroup: return unitary_res(c);
    case RepKind::SymplecticGroup: return group_residual(c, Group::Sp);
    case RepKind::SpecialOrthogonalGroup: return std::max(unitary_res(c), std::abs(c.determinant() - 1.0));
    case RepKind::OrthogonalStructure: return std::max(unitary_res(c), square_minus_identity(c));
    case RepKind::BalancedStructure:
      return std::max({unitary_res(c), square_minus_identity(c), std::abs(c.trace()) / double(N)});
    case RepKind::J0Structure: {
      if (d.dim % 4) return kInf;
      return std::max({unitary_res(c), square_minus_identity(c), anticommutator(c, J0_const(d.dim / 4))});
    }
    case RepKind::ArStructure: {
      if (d.dim % 2) return kInf;
      return std::max({unitary_res(c), square_minus_identity(c), anticommutator(c, A_const(d.dim / 2))});
    }
    case RepKind::RealProjection:
    case RepKind::ComplexProjection: return projection_res(c, d.rank);
    case RepKind::QuaternionProjection: return projection_res(c, 2 * d.rank);
    case RepKind::ComplexFormProjection: {
      if (d.dim % 2) return kInf;
      const CMat K = K_const(d.dim / 2);
      const CMat I = CMat::Identity(N, N);
      return std::max(projection_res(c, d.rank), max_abs(CMat(K * c.conjugate() * K.adjoint() - (I - c))));
    }
    case RepKind::SymmetricUnitary: return std::max(unitary_res(c), max_abs(CMat(c.transpose() - c)));
  }
  return kInf;
}

InclusionMap make_inclusion(InclusionTag tag, int r) {
  if (r < 1) throw std::invalid_argument("make_inclusion: r must be positive");
  using K = RepKind;
  InclusionMap m{tag, r, {K::UnitaryGroup, r}, {K::UnitaryGroup, r}, {}};
  switch (tag) {
    case InclusionTag::O_in_U:
      m.domain = {K::OrthogonalGroup, r};
      m.codomain = {K::UnitaryGroup, r};
      m.raw = [](const Matrix& x) { return Matrix(complexify_real(x.real())); };
      break;
    case InclusionTag::OU_in_GrC:
      m.domain = {K::OrthogonalStructure, 2 * r};
      m.codomain = {K::ComplexProjection, 2 * r, r};
      m.raw = [](const Matrix& x) {
        const CMat J = complexify_real(x.real());
        return Matrix(CMat((CMat::Identity(J.rows(), J.cols()) - kI * J) * 0.5));
      };
      break;
    case InclusionTag::USp_in_U:
      m.domain = {K::J0Structure, 4 * r};
      m.codomain = {K::UnitaryGroup, 2 * r};
      m.raw = [r](const Matrix& x) {
        // basis of E_i(J0): (e_l, -i e_l) / sqrt 2; conjugates span E_{-i}(J0)
        CMat B(4 * r, 2 * r);
        B << CMat::Identity(2 * r, 2 * r), -kI * CMat::Identity(2 * r, 2 * r);
        B /= std::sqrt(2.0);
        return Matrix(CMat(B.transpose() * complexify_real(x.real()) * B));
      };
      break;
    case InclusionTag::GrH_in_GrC:
      m.domain = {K::QuaternionProjection, 2 * r, r};
      m.codomain = {K::ComplexProjection, 4 * r, 2 * r};
      m.raw = [](const Matrix& x) { return Matrix(quat_to_complex(x.quaternion())); };
      break;
    case InclusionTag::Sp_in_U:
      m.domain = {K::SymplecticGroup, r};
      m.codomain = {K::UnitaryGroup, 2 * r};
      m.raw = [](const Matrix& x) { return Matrix(quat_to_complex(x.quaternion())); };
      break;
    case InclusionTag::SpU_in_GrC:
      m.domain = {K::ComplexFormProjection, 2 * r, r};
      m.codomain = {K::ComplexProjection, 2 * r, r};
      m.raw = [](const Matrix& x) { return Matrix(x.complex()); };
      break;
    case InclusionTag::UO_in_U:
      m.domain = {K::SymmetricUnitary, r};
      m.codomain = {K::UnitaryGroup, r};
      m.raw = [](const Matrix& x) { return Matrix(x.complex()); };
      break;
    case InclusionTag::GrR_in_GrC:
      m.domain = {K::RealProjection, 2 * r, r};
      m.codomain = {K::ComplexProjection, 2 * r, r};
      m.raw = [](const Matrix& x) { return Matrix(complexify_real(x.real())); };
      break;
    case InclusionTag::U_in_Sp:
      m.domain = {K::UnitaryGroup, r};
      m.codomain = {K::SymplecticGroup, r};
      m.raw = [](const Matrix& x) { return Matrix(complex_entries(x.complex())); };
      break;
    case InclusionTag::GrC_in_SpU:
      m.domain = {K::ComplexProjection, 2 * r, r};
      m.codomain = {K::ComplexFormProjection, 4 * r, 2 * r};
      m.raw = [](const Matrix& x) {
        const CMat& P = x.complex();
        return Matrix(block_diag(P, CMat(CMat::Identity(P.rows(), P.cols()) - P.conjugate())));
      };
      break;
    case InclusionTag::U_in_UO:
      m.domain = {K::UnitaryGroup, r};
      m.codomain = {K::SymmetricUnitary, 2 * r};
      m.raw = [r](const Matrix& x) {
        CMat M = CMat::Zero(2 * r, 2 * r);
        M.topRightCorner(r, r) = x.complex().transpose();
        M.bottomLeftCorner(r, r) = x.complex();
        return Matrix(M);
      };
      break;
    case InclusionTag::GrC_in_GrR:
      m.domain = {K::ComplexProjection, 2 * r, r};
      m.codomain = {K::RealProjection, 4 * r, 2 * r};
      m.raw = [](const Matrix& x) { return Matrix(realify_complex(x.complex())); };
      break;
    case InclusionTag::U_in_SO:
      m.domain = {K::UnitaryGroup, r};
      m.codomain = {K::SpecialOrthogonalGroup, 2 * r};
      m.raw = [](const Matrix& x) { return Matrix(realify_complex(x.complex())); };
      break;
    case InclusionTag::GrC_in_OU:
      m.domain = {K::BalancedStructure, 2 * r};
      m.codomain = {K::OrthogonalStructure, 4 * r};
      m.raw = [](const Matrix& x) { return Matrix(realify_complex(x.complex())); };
      break;
    case InclusionTag::U_in_USp:
      m.domain = {K::UnitaryGroup, r};
      m.codomain = {K::ArStructure, 2 * r};
      m.raw = [](const Matrix& x) { return Matrix(off_diagonal_structure(x.complex())); };
      break;
    case InclusionTag::GrC_in_GrH:
      m.domain = {K::ComplexProjection, 2 * r, r};
      m.codomain = {K::QuaternionProjection, 2 * r, r};
      m.raw = [](const Matrix& x) { return Matrix(complex_entries(x.complex())); };
      break;
  }
  return m;
}

Matrix apply_inclusion(const InclusionMap& map, const Matrix& x, double tol) {
  if (x.field() != field_of(map.domain.kind))
    throw DomainError(to_string(map.tag) + ": representation mismatch, expected " + to_string(field_of(map.domain.kind)));
  const double rin = rep_residual(map.domain, x);
  if (!(rin <= tol))
    throw DomainError(to_string(map.tag) + ": input is not a " + map.domain.describe() + " (residual " +
                      std::to_string(rin) + ")");
  Matrix y = map.raw(x);
  const double rout = rep_residual(map.codomain, y);
  if (!(rout <= std::max(tol, 10 * rin + 1e-13)))
    throw std::logic_error(to_string(map.tag) + ": output left the codomain (residual " + std::to_string(rout) + ")");
  return y;
}

namespace {

CMat sample_rep(const RepDescriptor& d, CounterRng& rng) {
  const int N = d.dim;
  switch (d.kind) {
    case RepKind::OrthogonalGroup: {
      CMat g = haar_special_orthogonal(rng, N).cast<cplx>();
      if (rng.uniform() < 0.5) g.col(0) *= -1.0;
      return g;
    }
    case RepKind::SpecialOrthogonalGroup: return haar_special_orthogonal(rng, N).cast<cplx>();
    case RepKind::UnitaryGroup: return haar_unitary(rng, N);
    case RepKind::SymplecticGroup: return haar_symplectic(rng, N);
    case RepKind::OrthogonalStructure: {
      CMat g = haar_special_orthogonal(rng, N).cast<cplx>();
      if (rng.uniform() < 0.5) g.col(0) *= -1.0;
      return g * K_const(N / 2) * g.transpose();
    }
    case RepKind::BalancedStructure: {
      const CMat g = haar_unitary(rng, N);
      return g * A_const(N / 2) * g.adjoint();
    }
    case RepKind::J0Structure: {
      // x -> S conj(x) with S Sbar = -I, written over R^{4r} in (Re, Im) coordinates
      const int r = N / 4;
      const CMat u = haar_unitary(rng, 2 * r);
      const CMat S = u * K_const(r) * u.transpose();
      RMat flip = RMat::Identity(N, N);
      flip.bottomRightCorner(2 * r, 2 * r) *= -1.0;
      return (realify_complex(S) * flip).cast<cplx>();
    }
    case RepKind::ArStructure: return off_diagonal_structure(haar_unitary(rng, N / 2));
    case RepKind::RealProjection: {
      const CMat g = haar_special_orthogonal(rng, N).cast<cplx>();
      return g * coordinate_projection(N, d.rank) * g.transpose();
    }
    case RepKind::ComplexProjection: {
      const CMat g = haar_unitary(rng, N);
      return g * coordinate_projection(N, d.rank) * g.adjoint();
    }
    case RepKind::QuaternionProjection: {
      const CMat g = haar_symplectic(rng, N);
      const CMat p = block_diag(coordinate_projection(N, d.rank), coordinate_projection(N, d.rank));
      return g * p * g.adjoint();
    }
    case RepKind::ComplexFormProjection: {
      const CMat g = haar_symplectic(rng, N / 2);
      return g * coordinate_projection(N, N / 2) * g.adjoint();
    }
    case RepKind::SymmetricUnitary: {
      const CMat g = haar_unitary(rng, N);
      return g * g.transpose();
    }
  }
  return {};
}

// random tangent at x0 of the orbit the representation lives on, as a curve t -> x(t)
struct OrbitCurve {
  std::function<CMat(double)> at;
};

OrbitCurve orbit_curve(const RepDescriptor& d, const CMat& x0, CounterRng& rng) {
  const int N = static_cast<int>(x0.rows());
  CMat X = random_skew_hermitian(rng, N);
  const Field f = field_of(d.kind);
  if (f == Field::Real) X = X.real().cast<cplx>();
  if (f == Field::Quaternion) X = symplectic_part(X);
  switch (d.kind) {
    case RepKind::OrthogonalGroup:
    case RepKind::SpecialOrthogonalGroup:
    case RepKind::UnitaryGroup:
    case RepKind::SymplecticGroup: return {[x0, X](double t) { return CMat(x0 * exp_skew(CMat(t * X))); }};
    case RepKind::SymmetricUnitary:
      return {[x0, X](double t) {
        const CMat g = exp_skew(CMat(t * X));
        return CMat(g * x0 * g.transpose());
      }};
    case RepKind::J0Structure: {
      const int r = N / 4;
      X = realify_complex(random_skew_hermitian(rng, 2 * r)).cast<cplx>();
      X = anticommuting_part(X, x0);
      break;
    }
    case RepKind::ArStructure: {
      const int r = N / 2;
      X = block_diag(random_skew_hermitian(rng, r), random_skew_hermitian(rng, r));
      X = anticommuting_part(X, x0);
      break;
    }
    case RepKind::ComplexFormProjection: {
      X = symplectic_part(X);
      const CMat S = kI * (2.0 * x0 - CMat::Identity(N, N));
      X = anticommuting_part(X, S);
      break;
    }
    case RepKind::OrthogonalStructure:
    case RepKind::BalancedStructure: X = anticommuting_part(X, x0); break;
    default: {
      const CMat S = kI * (2.0 * x0 - CMat::Identity(N, N));
      X = anticommuting_part(X, S);
    }
  }
  return {[x0, X](double t) {
    const CMat g = exp_skew(CMat(t * X));
    return CMat(g * x0 * g.adjoint());
  }};
}

CMat fd_velocity(const std::function<CMat(double)>& f, double h) {
  return (f(-2 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2 * h)) / (12.0 * h);
}

}  // namespace

Matrix sample_domain(const InclusionMap& map, CounterRng& rng) {
  return from_complex_picture(field_of(map.domain.kind), sample_rep(map.domain, rng));
}

Involution tau() { return {Involution::Kind::tau_conjugation, {}}; }
Involution tau_bar(int r) { return {Involution::Kind::tau_bar_Ar, A_const(r)}; }
Involution custom_c(const CMat& A) { return {Involution::Kind::custom_c, A}; }

CMat apply_involution(const Involution& inv, const CMat& x) {
  if (inv.kind != Involution::Kind::tau_conjugation && (inv.parameter.rows() != x.rows() || x.rows() != x.cols()))
    throw std::invalid_argument("apply_involution: dimension mismatch");
  switch (inv.kind) {
    case Involution::Kind::tau_conjugation: return x.conjugate();
    case Involution::Kind::tau_bar_Ar: return inv.parameter * x * inv.parameter.adjoint();
    case Involution::Kind::custom_c: return inv.parameter * x.conjugate() * inv.parameter.inverse();
  }
  return x;
}

void VerifyReport::record(double r, const CMat& w, const std::string& what) {
  if (std::isnan(r)) r = kInf;
  if (!witness || r > max_residual) {
    max_residual = std::max(max_residual, r);
    witness = w;
    detail = what;
  }
}

std::string to_string(ChainPair p) { return p == ChainPair::SO_U ? "SO-U" : "U-Sp"; }

CMat ChainPairData::embed(const CMat& x) const { return pair == ChainPair::SO_U ? x : u_to_sp(x); }

CMat ChainPairData::restrict(const CMat& x, double* residual) const {
  if (pair == ChainPair::SO_U) {
    if (residual) *residual = max_abs(CMat(x.imag().cast<cplx>()));
    return x.real().cast<cplx>();
  }
  const Eigen::Index r = x.rows() / 2;
  if (residual)
    *residual = std::max({max_abs(CMat(x.topRightCorner(r, r))), max_abs(CMat(x.bottomLeftCorner(r, r))),
                          max_abs(CMat(x.bottomRightCorner(r, r) - x.topLeftCorner(r, r).conjugate()))});
  return x.topLeftCorner(r, r);
}

ChainPairData make_pair_data(ChainPair pair, const Chain& small, const Chain& big) {
  const bool ok = pair == ChainPair::SO_U ? (small.kind == ChainKind::SO && big.kind == ChainKind::U)
                                          : (small.kind == ChainKind::U && big.kind == ChainKind::Sp);
  if (!ok || small.n != big.n || small.nodes.size() != 9 || big.nodes.size() != 9)
    throw std::invalid_argument("make_pair_data: malformed chains");
  ChainPairData d{pair, &small, &big, tau()};
  if (pair == ChainPair::U_Sp) d.involution = tau_bar(static_cast<int>(small.J[0].rows()));
  return d;
}

VerifyReport verify_fixed_point_node(int k, const ChainPairData& pair, int samples, std::uint64_t seed) {
  if (k < 0 || k > 8) throw std::invalid_argument("verify_fixed_point_node: k out of range");
  const ChainNode& small = pair.small->nodes[k];
  const ChainNode& big = pair.big->nodes[k];
  VerifyReport rep;
  rep.samples = samples;
  rep.residuals = {0, 0};

  for (const CMat& x : sample_node_points(small, samples, seed)) {
    const CMat y = pair.embed(x);
    const double fixed = max_abs(CMat(apply_involution(pair.involution, y) - y));
    const MembershipResult m = big.membership(y);
    const double r = std::max(fixed, m.residual);
    rep.residuals[0] = std::max(rep.residuals[0], r);
    rep.record(r, x, fixed > m.residual ? "small point not fixed" : "small point outside big node: " + m.reason);
  }

  const int N = big.dim();
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(seed, "fixed-converse:" + big.id(), static_cast<std::uint64_t>(s));
    CMat eta = big.tangent_algebra(gaussian_complex(rng, N, N));
    eta = (eta + apply_involution(pair.involution, eta)) * 0.5;
    const double nrm = eta.norm();
    if (nrm < 1e-12) continue;  // zero-dimensional fixed tangent space
    eta *= (0.5 + 2.5 * rng.uniform()) / nrm;
    const CMat X = big.base * exp_skew(eta);
    double off = 0;
    const CMat y = pair.restrict(X, &off);
    const MembershipResult m = small.membership(y);
    const double r = std::max({off, m.residual, big.membership(X).residual});
    rep.residuals[1] = std::max(rep.residuals[1], r);
    rep.record(r, X, "fixed point outside small node: " + m.reason);
  }
  return rep;
}

VerifyReport verify_square_commutes(int k, const ChainPairData& pair, int samples, std::uint64_t seed) {
  if (k < 0 || k > 7) throw std::invalid_argument("verify_square_commutes: k out of range");
  const ChainNode& small = pair.small->nodes[k];
  const ChainNode& big = pair.big->nodes[k];
  VerifyReport rep;
  rep.samples = samples;
  rep.residuals = {0, 0};
  const CMat o = small.base;
  const CMat Id = CMat::Identity(o.rows(), o.cols());
  for (const CMat& m : sample_node_points(pair.small->nodes[k + 1], samples, seed)) {
    const CMat u = o.adjoint() * m;
    GeodesicSegment g;
    try {
      g = midpoint_to_geodesic({pair.embed(m), big.ambient, std::nullopt}, pair.embed(o), 1e-9);
    } catch (const std::invalid_argument& e) {
      rep.record(kInf, m, std::string("counterexample: ") + e.what());
      continue;
    }
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const CMat small_path = o * (std::cos(std::numbers::pi * t) * Id + std::sin(std::numbers::pi * t) * u);
      const CMat big_path = g.at(t);
      const double dev = max_abs(CMat(big_path - pair.embed(small_path)));
      const double mem = big.membership(big_path, 1e-9).residual;
      rep.residuals[0] = std::max(rep.residuals[0], dev);
      rep.residuals[1] = std::max(rep.residuals[1], mem);
      rep.record(std::max(dev, mem), m, dev >= mem ? "geodesics differ" : "big geodesic leaves the node");
    }
  }
  return rep;
}

MetricRatio metric_pullback_scale(const MetricEmbedding& e, int tangents, std::uint64_t seed, double max_spread) {
  constexpr double h = 1e-4;
  MetricRatio out;
  double lo = kInf, hi = -kInf, sum = 0;
  int attempts = 0;
  while (out.tangents < tangents) {
    if (++attempts > 10 * tangents + 10) throw NonHomothetic(e.name + ": tangent sampler keeps degenerating");
    CounterRng rng(seed, "metric:" + e.name, static_cast<std::uint64_t>(attempts));
    const auto curve = e.curve(rng);
    const CMat dx = fd_velocity(curve, h);
    const double dn = e.domain_scale * dx.squaredNorm();
    if (dn < 1e-8) continue;
    const CMat dy = fd_velocity([&](double t) { return e.iota(curve(t)); }, h);
    const double ratio = e.ambient_scale * dy.squaredNorm() / dn;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    sum += ratio;
    ++out.tangents;
  }
  out.ratio = sum / out.tangents;
  out.spread = (hi - lo) / std::max(std::abs(out.ratio), 1e-300);
  if (!(out.spread <= max_spread))
    throw NonHomothetic(e.name + ": ratio spread " + std::to_string(out.spread) + " between " + std::to_string(lo) +
                        " and " + std::to_string(hi));
  return out;
}

MetricEmbedding metric_embedding(InclusionTag tag, int r) {
  const InclusionMap map = make_inclusion(tag, r);
  const Field fin = field_of(map.domain.kind), fout = field_of(map.codomain.kind);
  MetricEmbedding e;
  e.name = to_string(tag);
  e.domain_scale = fin == Field::Quaternion ? 0.5 : 1.0;
  e.ambient_scale = fout == Field::Quaternion ? 0.5 : 1.0;
  e.iota = [map, fin](const CMat& x) { return to_complex_picture(map.raw(from_complex_picture(fin, x))); };
  const RepDescriptor dom = map.domain;
  e.curve = [dom](CounterRng& rng) {
    const CMat x0 = sample_rep(dom, rng);
    return orbit_curve(dom, x0, rng).at;
  };
  return e;
}

MetricEmbedding u_step_embedding(int q) {
  MetricEmbedding e;
  e.name = "U_step";
  e.iota = [](const CMat& C) { return block_diag(C, C.adjoint()); };
  e.curve = [q](CounterRng& rng) {
    return orbit_curve({RepKind::UnitaryGroup, q}, haar_unitary(rng, q), rng).at;
  };
  return e;
}

MetricEmbedding p4_embedding(const CliffordSystem& cs) {
  const int n = cs.n;
  const RMat J3 = cs.J[2];
  MetricEmbedding e;
  e.name = "P4";
  e.domain_scale = 0.5;
  e.iota = [J3, n](const CMat& Cc) {
    const QMat C = complex_to_quat(Cc, 1e-6);
    const QMat M = qB(2 * n).adjoint() * qdiag(C, C.adjoint());
    return CMat((-J3 * quat_left_real(M)).cast<cplx>());
  };
  e.curve = [n](CounterRng& rng) {
    return orbit_curve({RepKind::SymplecticGroup, 2 * n}, haar_symplectic(rng, 2 * n), rng).at;
  };
  return e;
}

Gauge make_gauge(int n) {
  const int m = 2 * n;
  Gauge g{n, {}, {}, {}, {}, {}};
  const Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j(), k = Quaternion::unit_k();
  g.J5 = quat_to_complex(QMat::scalar(m, -i));
  g.J6 = quat_to_complex(QMat::scalar(m, -j));
  QMat j7(m, m);
  for (int h = 0; h < m; ++h) j7(h, h) = h < n ? -k : k;
  g.J7 = quat_to_complex(j7);
  QMat w(m, m);
  for (int h = 0; h < n; ++h) {
    w(h, n + h) = {-1, 0, 0, 0};
    w(n + h, h) = {1, 0, 0, 0};
  }
  g.J8 = -g.J7 * quat_to_complex(w);
  g.Bn = quat_to_complex(qB(n));
  return g;
}

namespace {

// complex picture of -J'_7 [[0, -Z^-1], [Z, 0]] acting identically on both complex parts
CMat p8_tilde_point(const Gauge& g, const CMat& Z) {
  const CMat W = off_diagonal_structure(Z);
  return -g.J7 * block_diag(W, W);
}

}  // namespace

MetricEmbedding p8_embedding(int n) {
  const Gauge g = make_gauge(n);
  MetricEmbedding e;
  e.name = "P8";
  e.ambient_scale = 4.0;  // eight times the standard metric of Sp_2n, i.e. 4 on the complex picture
  e.iota = [g](const CMat& D) { return p8_tilde_point(g, CMat(D.real().cast<cplx>())); };
  e.curve = [n](CounterRng& rng) {
    return orbit_curve({RepKind::SpecialOrthogonalGroup, n}, haar_special_orthogonal(rng, n).cast<cplx>(), rng).at;
  };
  return e;
}

MetricEmbedding p8_tilde_embedding(int n) {
  const Gauge g = make_gauge(n);
  MetricEmbedding e;
  e.name = "P8_tilde";
  e.ambient_scale = 4.0;
  e.iota = [g](const CMat& Z) { return p8_tilde_point(g, Z); };
  e.curve = [n](CounterRng& rng) {
    return orbit_curve({RepKind::UnitaryGroup, n}, haar_unitary(rng, n), rng).at;
  };
  return e;
}

std::string to_string(NormalForm w) {
  switch (w) {
    case NormalForm::P4: return "P4";
    case NormalForm::P8: return "P8";
    case NormalForm::P8_tilde: return "P8_tilde";
    case NormalForm::P4_pair: return "P4_pair";
  }
  return "?";
}

namespace {

// points of the last node in the gauge, moved along geodesics from J'_8
std::vector<CMat> sample_gauge_points(const Gauge& g, bool quaternionic, int count, std::uint64_t seed) {
  std::vector<CMat> out;
  const int N = 4 * g.n;
  for (int s = 0; s < count; ++s) {
    CounterRng rng(seed, quaternionic ? "gauge-p8" : "gauge-p8t", static_cast<std::uint64_t>(s));
    CMat eta = random_skew_hermitian(rng, N);
    if (quaternionic) eta = symplectic_part(eta);
    for (const CMat* J : {&g.J5, &g.J6, &g.J7}) eta = (eta - *J * eta * *J) * 0.5;
    eta = anticommuting_part(eta, g.J8);
    eta *= 3.0 * rng.uniform();
    out.push_back(g.J8 * exp_skew(eta));
  }
  return out;
}

double gauge_relations(const Gauge& g, const CMat& J, bool quaternionic) {
  double r = std::max(group_residual(J, quaternionic ? Group::Sp : Group::U), square_minus_identity(J));
  for (const CMat* K : {&g.J5, &g.J6, &g.J7}) r = std::max(r, anticommutator(J, *K));
  return r;
}

// B_n (J'_7 J) = diag over parts of diag(Z, Z^-1); returns Z and the residual
CMat gauge_block(const Gauge& g, const CMat& J, double* residual) {
  const int n = g.n;
  const CMat M = g.Bn * g.J7 * J;
  const CMat top = M.topLeftCorner(2 * n, 2 * n), bottom = M.bottomRightCorner(2 * n, 2 * n);
  const CMat Z = top.topLeftCorner(n, n);
  double r = std::max(max_abs(CMat(M.topRightCorner(2 * n, 2 * n))), max_abs(CMat(M.bottomLeftCorner(2 * n, 2 * n))));
  r = std::max(r, max_abs(CMat(top - bottom)));
  r = std::max(r, max_abs(CMat(top.topRightCorner(n, n))));
  r = std::max(r, max_abs(CMat(top.bottomLeftCorner(n, n))));
  r = std::max(r, max_abs(CMat(top.bottomRightCorner(n, n) - Z.adjoint())));
  r = std::max(r, unitary_res(Z));
  *residual = r;
  return Z;
}

}  // namespace

NormalFormReport verify_isometry_normal_form(NormalForm which, int n, int samples, std::uint64_t seed, double tol) {
  NormalFormReport out;
  VerifyReport& rep = out.report;
  rep.samples = samples;
  (void)tol;
  switch (which) {
    case NormalForm::P4: {
      const CliffordSystem cs = make_clifford_system(n);
      const Chain so = build_chain(ChainKind::SO, cs);
      const RMat J3 = cs.J[2];
      const QMat B = qB(2 * n);
      const int m = 2 * n;
      for (const CMat& J : sample_node_points(so.nodes[4], samples, seed)) {
        QMat Q;
        try {
          Q = quat_from_real(RMat(J3 * J.real()), 1e-9);
        } catch (const std::invalid_argument&) {
          rep.record(kInf, J, "J_3 J is not quaternion-linear");
          continue;
        }
        const QMat M = B * Q;
        const QMat C = qblock(M, 0, 0, m, m);
        double r = std::max(qmax(qblock(M, 0, m, m, m)), qmax(qblock(M, m, 0, m, m)));
        r = std::max(r, qblock(M, m, m, m, m).max_abs_diff(C.adjoint()));
        r = std::max(r, group_residual(quat_to_complex(C), Group::Sp));
        rep.record(r, J, "block form");
      }
      // converse: every C in Sp_2n gives a point of P_4
      const MetricEmbedding e = p4_embedding(cs);
      for (int s = 0; s < samples; ++s) {
        CounterRng rng(seed, "p4-converse", static_cast<std::uint64_t>(s));
        const CMat J = e.iota(haar_symplectic(rng, m));
        rep.record(so.nodes[4].membership(J).residual, J, "normal form outside P_4");
      }
      out.expected_ratio = 8;
      out.metric = metric_pullback_scale(e, 20, seed);
      break;
    }
    case NormalForm::P8:
    case NormalForm::P8_tilde: {
      const bool quat = which == NormalForm::P8;
      const Gauge g = make_gauge(n);
      rep.record(gauge_relations(g, g.J8, quat), g.J8, "gauge base point");
      rep.record(std::max(anticommutator(g.J5, g.J6), std::max(anticommutator(g.J5, g.J7), anticommutator(g.J6, g.J7))),
                 g.J7, "gauge structures");
      const Involution c = custom_c(K_const(2 * n));
      for (const CMat& J : sample_gauge_points(g, quat, samples, seed)) {
        double r = gauge_relations(g, J, quat);
        double blk = 0;
        const CMat Z = gauge_block(g, J, &blk);
        r = std::max(r, blk);
        if (quat) {
          // lands in the real orthogonal image O_n in U_n, identity component
          r = std::max(r, max_abs(CMat(Z.imag().cast<cplx>())));
          r = std::max(r, std::abs(Z.determinant() - 1.0));
          r = std::max(r, max_abs(CMat(apply_involution(c, J) - J)));
        }
        rep.record(r, J, quat ? "P_8 block form" : "P~_8 block form");
      }
      out.expected_ratio = 16;
      // P_8 ratio measured at n >= 2
      out.metric = metric_pullback_scale(quat ? p8_embedding(std::max(n, 2)) : p8_tilde_embedding(n), 20, seed);
      break;
    }
    case NormalForm::P4_pair: {
      // P_4 points are fixed points inside P~_4, and the pair step C -> diag(C, C^-1) doubles the metric
      const CliffordSystem cs = make_clifford_system(n);
      const Chain so = build_chain(ChainKind::SO, cs), u = build_chain(ChainKind::U, cs);
      for (const CMat& J : sample_node_points(so.nodes[4], samples, seed))
        rep.record(u.nodes[4].membership(J).residual, J, "P_4 point outside P~_4");
      out.expected_ratio = 2;
      out.metric = metric_pullback_scale(u_step_embedding(4 * n), 20, seed);
      break;
    }
  }
  if (out.metric) {
    const double rel = std::abs(out.metric->ratio - out.expected_ratio) / out.expected_ratio;
    if (rel > 1e-4) rep.record(rel, CMat::Identity(1, 1) * out.metric->ratio, "metric ratio");
  }
  return out;
}

}  // namespace bott
