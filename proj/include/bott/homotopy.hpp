#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bott {

enum class StableGroup { Zero, Z, Z2 };
std::string to_string(StableGroup g);

struct StableHom {
  enum class Kind { zero, identity, mul, mod2, iso };
  StableGroup domain = StableGroup::Zero;
  StableGroup codomain = StableGroup::Zero;
  Kind kind = Kind::zero;
  int m = 0;  // multiplier for Z -> Z (identity has m = 1)

  static StableHom zero(StableGroup a, StableGroup b) { return {a, b, Kind::zero, 0}; }
  static StableHom mul(int m);  // Z -> Z; m = 0 gives zero, m = 1 gives identity
  static StableHom mod2() { return {StableGroup::Z, StableGroup::Z2, Kind::mod2, 0}; }
  static StableHom iso() { return {StableGroup::Z2, StableGroup::Z2, Kind::iso, 0}; }
  static StableHom identity(StableGroup g);

  int multiplier() const;  // Z -> Z only
  long apply(long x) const;
  // structural equality with mul(m) identified with mul(-m)
  bool same_up_to_sign(const StableHom& o) const;
  bool operator==(const StableHom& o) const;
  std::string describe() const;
};

// g after f
StableHom compose(const StableHom& g, const StableHom& f);
// all homomorphisms a -> b, multipliers bounded by max_mul
std::vector<StableHom> enumerate_homs(StableGroup a, StableGroup b, int max_mul);

struct ExactSequence {
  std::vector<StableGroup> groups;
  std::vector<std::optional<StableHom>> maps;  // maps[i]: groups[i] -> groups[i+1]
};

struct ExactnessResult {
  bool exact = true;
  int position = -1;  // first interior group where image != kernel
  std::string witness;
};

// throws std::invalid_argument on unknown or incompatible homs
ExactnessResult check_exactness(const ExactSequence& seq);
// returns every candidate hom (|m| <= max_mul) filling the unique unknown slot exactly
std::vector<StableHom> solve_forced_map(const ExactSequence& seq, int max_mul = 12);

enum class Series { O, U, Sp, U_mod_O, Sp_mod_U };
enum class SeriesPair { O_to_U, U_to_Sp, Sp_to_U, U_to_O };
std::string to_string(Series s);
std::string to_string(SeriesPair p);

// the stable tables as data; corrupted copies are checkable
struct StableTables {
  std::array<StableGroup, 8> O, U, Sp;
  std::array<StableHom, 8> O_to_U, U_to_Sp, Sp_to_U, U_to_O;
  static const StableTables& standard();
  const std::array<StableHom, 8>& maps(SeriesPair p) const;
  std::array<StableHom, 8>& maps(SeriesPair p);
};

StableGroup stable_group(Series s, int i);
StableHom stable_map(SeriesPair p, int i, const StableTables& t = StableTables::standard());

struct QuotientTables {
  std::array<StableGroup, 8> U_mod_O, Sp_mod_U;
  // connecting maps found with each value: pi_i(U) -> Q_i -> pi_{i-1}(O), and the Sp analogue
  std::array<StableHom, 8> uo_in, uo_out, spu_in, spu_out;
};

struct DerivationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// unique Q_i in {0, Z, Z2} making pi_i(A) -> pi_i(B) -> Q_i -> pi_{i-1}(A) -> pi_{i-1}(B) exact
QuotientTables derive_quotient_tables(const StableTables& t = StableTables::standard());

// the long exact sequence segment around Q_i for the bundles O -> U -> U/O and U -> Sp -> Sp/U
ExactSequence les_segment(bool unitary_orthogonal, int i, const StableTables& t, const QuotientTables& q);

struct PeriodicityReport {
  bool ok = true;
  int witness_i = -1;
  std::string witness;
};
PeriodicityReport verify_periodicity(int range_max, const StableTables& t = StableTables::standard());

// induced maps pi_i(P_k) -> pi_i(P~_k) (orthogonal_unitary) and pi_i(P~_k) -> pi_i(Pbar_k)
StableHom corollary_map(bool orthogonal_unitary, int k, int i, const StableTables& t = StableTables::standard());

nlohmann::json tables_to_json(const StableTables& t = StableTables::standard());

}  // namespace bott
