#include "bott/homotopy.hpp"

#include <cstdlib>
#include <stdexcept>

namespace bott {

namespace {

using G = StableGroup;

int mod8(int i) { return ((i % 8) + 8) % 8; }

// subgroup of a group in the universe: Z -> dZ (d >= 0, d = 0 trivial); Z2 -> 0 or all; 0 -> trivial
struct Subgroup {
  G ambient;
  int d;
  bool operator==(const Subgroup& o) const {
    if (ambient != o.ambient) return false;
    if (ambient == G::Zero) return true;
    return d == o.d;
  }
  std::string describe() const {
    switch (ambient) {
      case G::Zero: return "0";
      case G::Z2: return d ? "Z2" : "0";
      case G::Z: return d == 0 ? "0" : d == 1 ? "Z" : std::to_string(d) + "Z";
    }
    return "?";
  }
};

Subgroup image(const StableHom& f) {
  switch (f.kind) {
    case StableHom::Kind::zero: return {f.codomain, 0};
    case StableHom::Kind::identity: return {f.codomain, 1};
    case StableHom::Kind::mul: return {f.codomain, std::abs(f.m)};
    case StableHom::Kind::mod2:
    case StableHom::Kind::iso: return {f.codomain, 1};
  }
  return {f.codomain, 0};
}

Subgroup kernel(const StableHom& g) {
  switch (g.kind) {
    case StableHom::Kind::zero: return {g.domain, 1};
    case StableHom::Kind::identity:
    case StableHom::Kind::mul:
    case StableHom::Kind::iso: return {g.domain, 0};
    case StableHom::Kind::mod2: return {g.domain, 2};
  }
  return {g.domain, 0};
}

void require_hom(const StableHom& h) {
  using K = StableHom::Kind;
  bool ok = false;
  switch (h.kind) {
    case K::zero: ok = true; break;
    case K::identity: ok = h.domain == h.codomain; break;
    case K::mul: ok = h.domain == G::Z && h.codomain == G::Z && h.m != 0; break;
    case K::mod2: ok = h.domain == G::Z && h.codomain == G::Z2; break;
    case K::iso: ok = h.domain == G::Z2 && h.codomain == G::Z2; break;
  }
  if (!ok) throw std::invalid_argument("malformed homomorphism " + h.describe());
}

StableHom z(G a, G b) { return StableHom::zero(a, b); }

}  // namespace

std::string to_string(StableGroup g) {
  switch (g) {
    case G::Zero: return "0";
    case G::Z: return "Z";
    case G::Z2: return "Z2";
  }
  return "?";
}

StableHom StableHom::mul(int m) {
  if (m == 0) return zero(G::Z, G::Z);
  if (m == 1) return identity(G::Z);
  return {G::Z, G::Z, Kind::mul, m};
}

StableHom StableHom::identity(StableGroup g) {
  if (g == G::Zero) return zero(g, g);
  return {g, g, Kind::identity, g == G::Z ? 1 : 0};
}

int StableHom::multiplier() const {
  if (domain != G::Z || codomain != G::Z) throw std::logic_error("multiplier: not a map Z -> Z");
  return kind == Kind::zero ? 0 : m;
}

long StableHom::apply(long x) const {
  switch (kind) {
    case Kind::zero: return 0;
    case Kind::identity: return domain == G::Z2 ? (x & 1) : x;
    case Kind::mul: return m * x;
    case Kind::mod2: return ((x % 2) + 2) % 2;
    case Kind::iso: return x & 1;
  }
  return 0;
}

bool StableHom::operator==(const StableHom& o) const {
  if (domain != o.domain || codomain != o.codomain) return false;
  if (domain == G::Z && codomain == G::Z) return multiplier() == o.multiplier();
  // on Z2 the identity and the isomorphism agree
  auto nonzero = [](const StableHom& h) { return h.kind != Kind::zero; };
  return nonzero(*this) == nonzero(o);
}

bool StableHom::same_up_to_sign(const StableHom& o) const {
  if (domain == G::Z && codomain == G::Z && o.domain == G::Z && o.codomain == G::Z)
    return std::abs(multiplier()) == std::abs(o.multiplier());
  return *this == o;
}

std::string StableHom::describe() const {
  std::string s = to_string(domain) + "->" + to_string(codomain) + ":";
  switch (kind) {
    case Kind::zero: return s + "0";
    case Kind::identity: return s + "id";
    case Kind::mul: return s + "x" + std::to_string(m);
    case Kind::mod2: return s + "mod2";
    case Kind::iso: return s + "iso";
  }
  return s;
}

StableHom compose(const StableHom& g, const StableHom& f) {
  require_hom(f);
  require_hom(g);
  if (f.codomain != g.domain) throw std::invalid_argument("compose: endpoints differ");
  const G a = f.domain, c = g.codomain;
  if (f.kind == StableHom::Kind::zero || g.kind == StableHom::Kind::zero) return z(a, c);
  if (a == G::Z && c == G::Z) return StableHom::mul(f.multiplier() * g.multiplier());
  if (a == G::Z && c == G::Z2) {
    // Z -> Z -> Z2 or Z -> Z2 -> Z2
    const long v = g.apply(f.apply(1));
    return v ? StableHom::mod2() : z(a, c);
  }
  if (a == G::Z2 && c == G::Z2) return StableHom::iso();
  return z(a, c);  // Z2 -> Z is always zero
}

std::vector<StableHom> enumerate_homs(StableGroup a, StableGroup b, int max_mul) {
  std::vector<StableHom> out{z(a, b)};
  if (a == G::Z && b == G::Z)
    for (int m = 1; m <= max_mul; ++m) {
      out.push_back(StableHom::mul(m));
      out.push_back(StableHom::mul(-m));
    }
  if (a == G::Z && b == G::Z2) out.push_back(StableHom::mod2());
  if (a == G::Z2 && b == G::Z2) out.push_back(StableHom::iso());
  return out;
}

ExactnessResult check_exactness(const ExactSequence& seq) {
  if (seq.maps.size() + 1 != seq.groups.size()) throw std::invalid_argument("check_exactness: malformed sequence");
  for (size_t i = 0; i < seq.maps.size(); ++i) {
    if (!seq.maps[i]) throw std::invalid_argument("check_exactness: unknown map at " + std::to_string(i));
    const StableHom& h = *seq.maps[i];
    require_hom(h);
    if (h.domain != seq.groups[i] || h.codomain != seq.groups[i + 1])
      throw std::invalid_argument("check_exactness: incompatible endpoints at " + std::to_string(i));
  }
  for (size_t i = 1; i + 1 < seq.groups.size(); ++i) {
    const Subgroup im = image(*seq.maps[i - 1]), ker = kernel(*seq.maps[i]);
    if (!(im == ker))
      return {false, static_cast<int>(i),
              "image " + im.describe() + " != kernel " + ker.describe() + " in " + to_string(seq.groups[i])};
  }
  return {};
}

std::vector<StableHom> solve_forced_map(const ExactSequence& seq, int max_mul) {
  int unknown = -1;
  for (size_t i = 0; i < seq.maps.size(); ++i)
    if (!seq.maps[i]) {
      if (unknown >= 0) throw std::invalid_argument("solve_forced_map: more than one unknown map");
      unknown = static_cast<int>(i);
    }
  if (unknown < 0) throw std::invalid_argument("solve_forced_map: no unknown map");
  std::vector<StableHom> out;
  for (const StableHom& h : enumerate_homs(seq.groups[unknown], seq.groups[unknown + 1], max_mul)) {
    ExactSequence s = seq;
    s.maps[unknown] = h;
    if (check_exactness(s).exact) out.push_back(h);
  }
  return out;
}

std::string to_string(Series s) {
  switch (s) {
    case Series::O: return "O";
    case Series::U: return "U";
    case Series::Sp: return "Sp";
    case Series::U_mod_O: return "U/O";
    case Series::Sp_mod_U: return "Sp/U";
  }
  return "?";
}

std::string to_string(SeriesPair p) {
  switch (p) {
    case SeriesPair::O_to_U: return "O_to_U";
    case SeriesPair::U_to_Sp: return "U_to_Sp";
    case SeriesPair::Sp_to_U: return "Sp_to_U";
    case SeriesPair::U_to_O: return "U_to_O";
  }
  return "?";
}

const StableTables& StableTables::standard() {
  static const StableTables t = [] {
    StableTables s;
    s.O = {G::Z2, G::Z2, G::Zero, G::Z, G::Zero, G::Zero, G::Zero, G::Z};
    s.U = {G::Zero, G::Z, G::Zero, G::Z, G::Zero, G::Z, G::Zero, G::Z};
    s.Sp = {G::Zero, G::Zero, G::Zero, G::Z, G::Z2, G::Z2, G::Zero, G::Z};
    for (int i = 0; i < 8; ++i) {
      s.O_to_U[i] = z(s.O[i], s.U[i]);
      s.U_to_Sp[i] = z(s.U[i], s.Sp[i]);
      s.Sp_to_U[i] = z(s.Sp[i], s.U[i]);
      s.U_to_O[i] = z(s.U[i], s.O[i]);
    }
    s.O_to_U[3] = StableHom::mul(2);
    s.O_to_U[7] = StableHom::identity(G::Z);
    s.Sp_to_U[3] = StableHom::identity(G::Z);
    s.Sp_to_U[7] = StableHom::mul(2);
    s.U_to_Sp[3] = StableHom::mul(2);
    s.U_to_Sp[5] = StableHom::mod2();
    s.U_to_Sp[7] = StableHom::identity(G::Z);
    s.U_to_O[1] = StableHom::mod2();
    s.U_to_O[3] = StableHom::identity(G::Z);
    s.U_to_O[7] = StableHom::mul(2);
    return s;
  }();
  return t;
}

const std::array<StableHom, 8>& StableTables::maps(SeriesPair p) const {
  switch (p) {
    case SeriesPair::O_to_U: return O_to_U;
    case SeriesPair::U_to_Sp: return U_to_Sp;
    case SeriesPair::Sp_to_U: return Sp_to_U;
    default: return U_to_O;
  }
}

std::array<StableHom, 8>& StableTables::maps(SeriesPair p) {
  return const_cast<std::array<StableHom, 8>&>(static_cast<const StableTables&>(*this).maps(p));
}

StableGroup stable_group(Series s, int i) {
  if (i < 0) throw std::invalid_argument("stable_group: negative index");
  const StableTables& t = StableTables::standard();
  switch (s) {
    case Series::O: return t.O[mod8(i)];
    case Series::U: return t.U[mod8(i)];
    case Series::Sp: return t.Sp[mod8(i)];
    case Series::U_mod_O: {
      static const QuotientTables q = derive_quotient_tables();
      return q.U_mod_O[mod8(i)];
    }
    case Series::Sp_mod_U: {
      static const QuotientTables q = derive_quotient_tables();
      return q.Sp_mod_U[mod8(i)];
    }
  }
  return G::Zero;
}

StableHom stable_map(SeriesPair p, int i, const StableTables& t) {
  if (i < 0) throw std::invalid_argument("stable_map: negative index");
  StableHom h = t.maps(p)[mod8(i)];
  if (h.domain == G::Z && h.codomain == G::Z && h.multiplier() < 0) h = StableHom::mul(-h.multiplier());
  return h;
}

namespace {

struct Derived {
  StableGroup q;
  StableHom in, out;
};

// pi_i(A) -f-> pi_i(B) -in-> Q -out-> pi_{i-1}(A) -g-> pi_{i-1}(B)
Derived derive_one(const StableHom& f, const StableHom& g, const std::string& what) {
  std::vector<Derived> found;
  for (G q : {G::Zero, G::Z, G::Z2}) {
    std::optional<Derived> witness;
    for (const StableHom& a : enumerate_homs(f.codomain, q, 4))
      for (const StableHom& b : enumerate_homs(q, g.domain, 4)) {
        ExactSequence s{{f.domain, f.codomain, q, g.domain, g.codomain}, {f, a, b, g}};
        if (check_exactness(s).exact && !witness) witness = Derived{q, a, b};
      }
    if (witness) found.push_back(*witness);
  }
  if (found.empty()) throw DerivationError(what + ": no group in {0, Z, Z2} fits the exact sequence");
  if (found.size() > 1) throw DerivationError(what + ": the exact sequence does not determine the group");
  return found.front();
}

}  // namespace

QuotientTables derive_quotient_tables(const StableTables& t) {
  QuotientTables q;
  for (int i = 0; i < 8; ++i) {
    const int j = mod8(i - 1);
    const Derived uo = derive_one(t.O_to_U[i], t.O_to_U[j], "pi_" + std::to_string(i) + "(U/O)");
    q.U_mod_O[i] = uo.q;
    q.uo_in[i] = uo.in;
    q.uo_out[i] = uo.out;
    const Derived spu = derive_one(t.U_to_Sp[i], t.U_to_Sp[j], "pi_" + std::to_string(i) + "(Sp/U)");
    q.Sp_mod_U[i] = spu.q;
    q.spu_in[i] = spu.in;
    q.spu_out[i] = spu.out;
  }
  return q;
}

ExactSequence les_segment(bool unitary_orthogonal, int i, const StableTables& t, const QuotientTables& q) {
  const int a = mod8(i), b = mod8(i - 1);
  if (unitary_orthogonal)
    return {{t.O[a], t.U[a], q.U_mod_O[a], t.O[b], t.U[b]}, {t.O_to_U[a], q.uo_in[a], q.uo_out[a], t.O_to_U[b]}};
  return {{t.U[a], t.Sp[a], q.Sp_mod_U[a], t.U[b], t.Sp[b]}, {t.U_to_Sp[a], q.spu_in[a], q.spu_out[a], t.U_to_Sp[b]}};
}

PeriodicityReport verify_periodicity(int range_max, const StableTables& t) {
  if (range_max < 8) throw std::invalid_argument("verify_periodicity: range_max must be at least 8");
  PeriodicityReport r;
  auto fail = [&](int i, const std::string& w) {
    if (!r.ok) return;
    r.ok = false;
    r.witness_i = i;
    r.witness = w;
  };
  QuotientTables q;
  try {
    q = derive_quotient_tables(t);
  } catch (const DerivationError& e) {
    fail(-1, e.what());
    return r;
  }
  auto group_at = [](const std::array<G, 8>& a, int i) { return a[mod8(i)]; };
  for (int i = 0; i <= range_max && r.ok; ++i) {
    const std::string at = " at i=" + std::to_string(i) + ": ";
    for (SeriesPair p : {SeriesPair::O_to_U, SeriesPair::U_to_Sp, SeriesPair::Sp_to_U, SeriesPair::U_to_O}) {
      const StableHom a = stable_map(p, i, t), b = stable_map(p, i + 8, t);
      if (!a.same_up_to_sign(b)) fail(i, to_string(p) + at + a.describe() + " vs " + b.describe());
    }
    // complex period two, and the loop shifts Omega(U/O) = Z x BO, Omega(Sp/U) = U/O
    if (group_at(t.U, i) != group_at(t.U, i + 2))
      fail(i, "U" + at + to_string(group_at(t.U, i)) + " vs " + to_string(group_at(t.U, i + 2)));
    if (i >= 2 && group_at(q.U_mod_O, i) != group_at(t.O, i - 2))
      fail(i, "U/O" + at + to_string(group_at(q.U_mod_O, i)) + " vs pi_" + std::to_string(i - 2) + "(O) = " +
                  to_string(group_at(t.O, i - 2)));
    if (i >= 3 && group_at(q.Sp_mod_U, i) != group_at(t.O, i - 3))
      fail(i, "Sp/U" + at + to_string(group_at(q.Sp_mod_U, i)) + " vs pi_" + std::to_string(i - 3) + "(O) = " +
                  to_string(group_at(t.O, i - 3)));
    if (group_at(t.Sp, i) != group_at(t.O, i + 4))
      fail(i, "Sp" + at + to_string(group_at(t.Sp, i)) + " vs pi_" + std::to_string(i + 4) + "(O) = " +
                  to_string(group_at(t.O, i + 4)));
    // the bundle maps must be the ones the sequences force
    for (bool uo : {true, false}) {
      ExactSequence s = les_segment(uo, i, t, q);
      const StableHom tab = *s.maps[0];
      s.maps[0].reset();
      bool hit = false;
      for (const auto& h : solve_forced_map(s)) hit = hit || h.same_up_to_sign(tab);
      if (!hit) fail(i, std::string(uo ? "O_to_U" : "U_to_Sp") + at + tab.describe() + " is not forced");
    }
  }
  return r;
}

StableHom corollary_map(bool orthogonal_unitary, int k, int i, const StableTables& t) {
  if (k < 0 || k > 8 || i < 0) throw std::invalid_argument("corollary_map: index out of range");
  const SeriesPair p = orthogonal_unitary ? SeriesPair::O_to_U : SeriesPair::U_to_Sp;
  StableHom h = stable_map(p, i + k, t);
  if (k == 1 && mod8(i) == 0) {
    // the Grassmannian is connected, and the map is zero throughout this column
    const G codomain = i == 0 ? G::Zero : h.codomain;
    return z(h.domain, codomain);
  }
  return h;
}

nlohmann::json tables_to_json(const StableTables& t) {
  nlohmann::json groups = nlohmann::json::array(), maps = nlohmann::json::array();
  const QuotientTables q = derive_quotient_tables(t);
  auto add_series = [&](const std::string& name, const std::array<G, 8>& a) {
    for (int i = 0; i < 8; ++i) groups.push_back({{"series", name}, {"i_mod_8", i}, {"group", to_string(a[i])}});
  };
  add_series("O", t.O);
  add_series("U", t.U);
  add_series("Sp", t.Sp);
  add_series("U/O", q.U_mod_O);
  add_series("Sp/U", q.Sp_mod_U);
  for (SeriesPair p : {SeriesPair::O_to_U, SeriesPair::U_to_Sp, SeriesPair::Sp_to_U, SeriesPair::U_to_O})
    for (int i = 0; i < 8; ++i) {
      const StableHom h = stable_map(p, i, t);
      nlohmann::json e{{"pair", to_string(p)}, {"i_mod_8", i}};
      switch (h.kind) {
        case StableHom::Kind::zero: e["hom_kind"] = "zero"; break;
        case StableHom::Kind::identity: e["hom_kind"] = "identity"; break;
        case StableHom::Kind::mul: e["hom_kind"] = "mul"; break;
        case StableHom::Kind::mod2: e["hom_kind"] = "mod2"; break;
        case StableHom::Kind::iso: e["hom_kind"] = "iso"; break;
      }
      e["multiplier"] = (h.domain == G::Z && h.codomain == G::Z) ? nlohmann::json(h.multiplier()) : nlohmann::json();
      maps.push_back(e);
    }
  return {{"groups", groups}, {"maps", maps}};
}

}  // namespace bott
