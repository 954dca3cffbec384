#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bott/chains.hpp"

namespace bott {

enum class InclusionTag {
  O_in_U,
  OU_in_GrC,
  USp_in_U,
  GrH_in_GrC,
  Sp_in_U,
  SpU_in_GrC,
  UO_in_U,
  GrR_in_GrC,
  U_in_Sp,
  GrC_in_SpU,
  U_in_UO,
  GrC_in_GrR,
  U_in_SO,
  GrC_in_OU,
  U_in_USp,
  GrC_in_GrH,
};
std::string to_string(InclusionTag t);
std::vector<InclusionTag> all_inclusion_tags();

// Defining predicate of a matrix representation.
enum class RepKind {
  OrthogonalGroup,        // real, A^T A = I
  UnitaryGroup,           // complex, A^* A = I
  SymplecticGroup,        // quaternionic, A^* A = I
  SpecialOrthogonalGroup, // real, det = 1
  OrthogonalStructure,    // real orthogonal J, J^2 = -I
  BalancedStructure,      // complex unitary J, J^2 = -I, tr J = 0
  J0Structure,            // real orthogonal J, J^2 = -I, J J0 = -J0 J with J0 = [[0,-I],[I,0]]
  ArStructure,            // complex unitary J, J^2 = -I, J A_r = -A_r J
  RealProjection,         // real symmetric idempotent of fixed rank
  ComplexProjection,      // Hermitian idempotent of fixed rank
  QuaternionProjection,   // quaternionic Hermitian idempotent of fixed quaternionic rank
  ComplexFormProjection,  // complex projection P with K conj(P) K^-1 = I - P
  SymmetricUnitary,       // complex unitary with A^T = A (real forms via B0 = conjugation)
};

struct RepDescriptor {
  RepKind kind;
  int dim;       // matrix size over the natural field
  int rank = 0;  // projections only
  std::string describe() const;
};

double rep_residual(const RepDescriptor& d, const Matrix& x);

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InclusionMap {
  InclusionTag tag;
  int r;
  RepDescriptor domain;
  RepDescriptor codomain;
  std::function<Matrix(const Matrix&)> raw;
};

// r is the size parameter of the map
InclusionMap make_inclusion(InclusionTag tag, int r);
// throws DomainError on invalid input; throws std::logic_error if the output leaves the codomain
Matrix apply_inclusion(const InclusionMap& map, const Matrix& x, double tol = kPredicateTol);
// a random valid domain element
Matrix sample_domain(const InclusionMap& map, CounterRng& rng);

struct Involution {
  enum class Kind { tau_conjugation, tau_bar_Ar, custom_c } kind = Kind::tau_conjugation;
  CMat parameter;  // A for tau_bar_Ar and custom_c
};
Involution tau();
Involution tau_bar(int r);  // conjugation by A_r = diag(iI_r, -iI_r)
Involution custom_c(const CMat& A);
CMat apply_involution(const Involution& inv, const CMat& x);

struct VerifyReport {
  double max_residual = 0;
  std::vector<double> residuals;  // per direction or per sub-check
  int samples = 0;
  std::optional<CMat> witness;
  std::string detail;
  bool passed(double tol) const { return max_residual <= tol; }
  void record(double r, const CMat& w, const std::string& what);
};

enum class ChainPair { SO_U, U_Sp };
std::string to_string(ChainPair p);

// smaller and bigger chain of the pair; both built over the same Clifford system
struct ChainPairData {
  ChainPair pair;
  const Chain* small;
  const Chain* big;
  Involution involution;
  CMat embed(const CMat& x) const;
  // inverse of embed on the fixed-point set, with the residual of leaving it
  CMat restrict(const CMat& x, double* residual) const;
};
ChainPairData make_pair_data(ChainPair pair, const Chain& small, const Chain& big);

// residuals[0]: smaller node into fixed points of the bigger one; residuals[1]: converse
VerifyReport verify_fixed_point_node(int k, const ChainPairData& pair, int samples, std::uint64_t seed);
VerifyReport verify_square_commutes(int k, const ChainPairData& pair, int samples, std::uint64_t seed);

// A map from a domain representation (complex picture) into a unitary ambient, with a sampler
// of random curves through random domain points.
struct MetricEmbedding {
  std::string name;
  std::function<CMat(const CMat&)> iota;
  std::function<std::function<CMat(double)>(CounterRng&)> curve;
  double domain_scale = 1.0;   // squared norm = scale * Frobenius norm of the velocity
  double ambient_scale = 1.0;
};

struct NonHomothetic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MetricRatio {
  double ratio = 0;
  double spread = 0;
  int tangents = 0;
};

// fourth-order central differences of t -> iota(base exp(tX)), h = 1e-4
MetricRatio metric_pullback_scale(const MetricEmbedding& e, int tangents, std::uint64_t seed,
                                  double max_spread = 1e-4);

// normalised embeddings used by the metric checks
MetricEmbedding metric_embedding(InclusionTag tag, int r);
MetricEmbedding u_step_embedding(int q);                 // C -> diag(C, C^-1) in U_2q
MetricEmbedding p4_embedding(const CliffordSystem& cs);  // Sp_2n -> P_4 in SO_16n
MetricEmbedding p8_embedding(int n);                     // SO_n -> P_8 in the normal-form gauge
MetricEmbedding p8_tilde_embedding(int n);               // U_n -> P~_8 in the normal-form gauge

enum class NormalForm { P4, P8, P8_tilde, P4_pair };
std::string to_string(NormalForm w);

struct NormalFormReport {
  VerifyReport report;
  std::optional<MetricRatio> metric;
  double expected_ratio = 0;
};

NormalFormReport verify_isometry_normal_form(NormalForm which, int n, int samples, std::uint64_t seed,
                                             double tol = kPredicateTol);

// normal-form gauge for the last three structures inside Sp_2n (complex picture, size 4n)
struct Gauge {
  int n;
  CMat J5, J6, J7, J8;
  CMat Bn;  // B_n as a quaternion matrix, complex picture
};
Gauge make_gauge(int n);

}  // namespace bott
