#pragma once

// Root data of connected reductive groups and the lattice invariants derived
// from them: the character group, the algebraic fundamental group and the
// Picard group.  X and X^v are both Z^rank under the dot pairing.

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "homcalc/error.hpp"
#include "homcalc/fgab.hpp"
#include "homcalc/intlat.hpp"

namespace homcalc {

using Vec = std::vector<Integer>;

inline Integer pairing(const Vec& x, const Vec& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// (X, X^v, R, R^v) with X = X^v = Z^rank.  coroots[i] is the coroot of roots[i].
struct RootDatum {
  std::size_t rank = 0;
  std::vector<Vec> roots;
  std::vector<Vec> coroots;

  /// rank x |R|, one root per column.
  IntMatrix root_matrix() const { return as_columns(roots); }
  /// rank x |R|, one coroot per column.
  IntMatrix coroot_matrix() const { return as_columns(coroots); }

  friend bool operator==(const RootDatum&, const RootDatum&) = default;

 private:
  IntMatrix as_columns(const std::vector<Vec>& vs) const {
    IntMatrix m(rank, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < rank; ++i) m(i, j) = vs[j][i];
    return m;
  }
};

/// A group of multiplicative type, given by its character group (torsion
/// allowed, i.e. possibly disconnected).
struct MultiplicativeGroup {
  FgAbGroup characters;
};

/// Either a connected reductive group or a group of multiplicative type.
class GroupDescriptor {
 public:
  GroupDescriptor(RootDatum rd) : value_(std::move(rd)) {}
  GroupDescriptor(MultiplicativeGroup m) : value_(std::move(m)) {}

  bool is_reductive() const noexcept { return std::holds_alternative<RootDatum>(value_); }
  bool is_multiplicative() const noexcept { return !is_reductive(); }

  const RootDatum& datum() const {
    if (!is_reductive()) throw Error(ErrorKind::NotApplicable, "group is of multiplicative type, not reductive");
    return std::get<RootDatum>(value_);
  }
  const MultiplicativeGroup& multiplicative() const {
    if (is_reductive()) throw Error(ErrorKind::NotApplicable, "group is reductive, not of multiplicative type");
    return std::get<MultiplicativeGroup>(value_);
  }

 private:
  std::variant<RootDatum, MultiplicativeGroup> value_;
};

/// How H sits in G.
///  * reductive H: cochar_matrix : X^v(T_H) -> X^v(T_G), rank(G) x rank(H).
///  * multiplicative H: char_map : X(T_G) -> H^, restriction of characters of
///    a maximal torus of G containing H; (generators of H^) x rank(G).
/// Flags left unset take the value forced by the kind of H.
struct EmbeddingDescriptor {
  std::optional<IntMatrix> cochar_matrix;
  std::optional<IntMatrix> char_map;
  std::optional<bool> h_connected;
  std::optional<bool> h_ker_char_connected;
};

struct ValidationReport {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const noexcept { return ok; }
};

/// Checks the root datum axioms: dimensions, <a, a^v> = 2, R = -R with
/// matching coroots, reducedness, and that every reflection
/// s_a(x) = x - <x, a^v> a permutes the roots compatibly with the dual
/// reflection on coroots.
inline ValidationReport validate_root_datum(const RootDatum& rd) {
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  if (rd.roots.size() != rd.coroots.size()) return fail("roots and coroots differ in number");
  for (std::size_t i = 0; i < rd.roots.size(); ++i) {
    if (rd.roots[i].size() != rd.rank || rd.coroots[i].size() != rd.rank)
      return fail("root/coroot " + std::to_string(i) + " has wrong length");
  }
  std::map<Vec, std::size_t> index;
  for (std::size_t i = 0; i < rd.roots.size(); ++i) {
    if (!index.emplace(rd.roots[i], i).second) return fail("root " + to_string(rd.roots[i]) + " repeated");
  }
  for (std::size_t i = 0; i < rd.roots.size(); ++i) {
    const Vec& a = rd.roots[i];
    const Vec& av = rd.coroots[i];
    if (pairing(a, av) != 2)
      return fail("<a, a^v> = " + pairing(a, av).str() + " != 2 for root " + to_string(a));
    Vec neg = a, twice = a;
    for (auto& x : neg) x = -x;
    for (auto& x : twice) x *= 2;
    auto it = index.find(neg);
    if (it == index.end()) return fail("-a missing for root " + to_string(a));
    Vec negv = av;
    for (auto& x : negv) x = -x;
    if (rd.coroots[it->second] != negv) return fail("coroot of -a is not -a^v for root " + to_string(a));
    if (index.count(twice)) return fail("non-reduced: 2a is a root for a = " + to_string(a));
  }
  for (std::size_t i = 0; i < rd.roots.size(); ++i) {
    const Vec& a = rd.roots[i];
    const Vec& av = rd.coroots[i];
    for (std::size_t j = 0; j < rd.roots.size(); ++j) {
      Vec s = rd.roots[j];
      Integer c = pairing(s, av);
      for (std::size_t k = 0; k < rd.rank; ++k) s[k] -= c * a[k];
      auto it = index.find(s);
      if (it == index.end())
        return fail("reflection in " + to_string(a) + " sends root " + to_string(rd.roots[j]) + " outside R");
      Vec sv = rd.coroots[j];
      Integer cv = pairing(a, sv);
      for (std::size_t k = 0; k < rd.rank; ++k) sv[k] -= cv * av[k];
      if (rd.coroots[it->second] != sv)
        return fail("dual reflection in " + to_string(av) + " does not match coroot of " + to_string(s));
    }
  }
  return {};
}

inline void require_valid(const RootDatum& rd) {
  auto report = validate_root_datum(rd);
  if (!report) throw Error(ErrorKind::InvalidRootDatum, report.diagnostic);
}

/// Closes simple roots/coroots (paired by index) under the simple reflections.
inline RootDatum close_under_reflections(std::size_t rank, const std::vector<Vec>& simple_roots,
                                         const std::vector<Vec>& simple_coroots) {
  RootDatum rd{rank, {}, {}};
  std::map<Vec, std::size_t> seen;
  std::deque<std::pair<Vec, Vec>> queue;
  for (std::size_t i = 0; i < simple_roots.size(); ++i) queue.emplace_back(simple_roots[i], simple_coroots[i]);
  while (!queue.empty()) {
    auto [a, av] = std::move(queue.front());
    queue.pop_front();
    if (seen.count(a)) continue;
    seen.emplace(a, rd.roots.size());
    rd.roots.push_back(a);
    rd.coroots.push_back(av);
    for (std::size_t i = 0; i < simple_roots.size(); ++i) {
      const Vec& s = simple_roots[i];
      const Vec& sv = simple_coroots[i];
      Vec b = a, bv = av;
      Integer c = pairing(a, sv), cv = pairing(s, av);
      for (std::size_t k = 0; k < rank; ++k) {
        b[k] -= c * s[k];
        bv[k] -= cv * sv[k];
      }
      if (!seen.count(b)) queue.emplace_back(std::move(b), std::move(bv));
    }
  }
  return rd;
}

/// Basis (columns, in X) of the characters of G: {x : <x, a^v> = 0 for all a}.
inline IntMatrix character_basis(const RootDatum& rd) { return kernel_basis(rd.coroot_matrix().transpose()); }

/// G^ = Hom(G, G_m).  Free for reductive G, the stored group otherwise.
inline FgAbGroup char_group(const GroupDescriptor& g) {
  if (g.is_multiplicative()) return g.multiplicative().characters;
  return FgAbGroup::free(character_basis(g.datum()).cols());
}

/// pi1^alg(G) = X^v / ZR^v, identifying the cocharacters of a maximal torus
/// of the simply connected cover with the coroot lattice.  For a torus of
/// multiplicative type this is Hom(H^, Z).
inline FgAbGroup pi1_alg(const GroupDescriptor& g) {
  if (g.is_reductive()) return FgAbGroup(g.datum().coroot_matrix());
  const FgAbGroup& chars = g.multiplicative().characters;
  if (!invariants(chars).torsion.empty())
    throw Error(ErrorKind::NotApplicable, "pi1_alg of a disconnected group of multiplicative type");
  return hom_to_Z(chars).group;
}

/// sat(ZR^v) / ZR^v inside X^v: the kernel of G^sc -> G^ss, isomorphic to
/// Pic(G).  Groups of multiplicative type have trivial Picard group.
inline FgAbGroup pic_group(const GroupDescriptor& g) {
  if (g.is_multiplicative()) return FgAbGroup::trivial();
  IntMatrix coroots = g.datum().coroot_matrix();
  IntMatrix sat = saturation(coroots);
  auto rel = solve(sat, coroots);
  if (!rel) throw Error(ErrorKind::InvalidRootDatum, "coroot lattice not contained in its saturation");
  return FgAbGroup(std::move(*rel));
}

inline bool pic_is_trivial(const GroupDescriptor& g) { return invariants(pic_group(g)).is_trivial(); }

namespace detail {

inline const RootDatum& ambient_datum(const GroupDescriptor& g) {
  if (!g.is_reductive()) throw Error(ErrorKind::NotApplicable, "G must be given by a root datum");
  return g.datum();
}

inline const IntMatrix& cochar_matrix_for(const RootDatum& gd, const RootDatum& hd, const EmbeddingDescriptor& e) {
  if (!e.cochar_matrix) throw Error(ErrorKind::BadParams, "reductive H requires cochar_matrix");
  const IntMatrix& m = *e.cochar_matrix;
  if (m.rows() != gd.rank || m.cols() != hd.rank) {
    std::ostringstream os;
    os << "cochar_matrix is " << m.rows() << 'x' << m.cols() << ", expected " << gd.rank << 'x' << hd.rank;
    throw Error(ErrorKind::BadParams, os.str());
  }
  if (rank(m) != hd.rank) throw Error(ErrorKind::NotAnEmbedding, "cochar_matrix is not injective");
  if (!same_lattice(saturation(m), m))
    throw Error(ErrorKind::NotAnEmbedding, "cochar_matrix has non-saturated image, so T_H -> T_G has a kernel");
  return m;
}

inline const IntMatrix& char_map_for(const RootDatum& gd, const FgAbGroup& hchars, const EmbeddingDescriptor& e) {
  if (!e.char_map) throw Error(ErrorKind::BadParams, "multiplicative H requires char_map");
  const IntMatrix& c = *e.char_map;
  if (c.rows() != hchars.generators() || c.cols() != gd.rank) {
    std::ostringstream os;
    os << "char_map is " << c.rows() << 'x' << c.cols() << ", expected " << hchars.generators() << 'x' << gd.rank;
    throw Error(ErrorKind::BadParams, os.str());
  }
  if (!is_surjective(FgAbMap(FgAbGroup::free(gd.rank), hchars, c)))
    throw Error(ErrorKind::NotAnEmbedding, "restriction of characters to H is not surjective");
  return c;
}

}  // namespace detail

/// i^* : G^ -> H^ on the bases of `character_basis` (or the stored
/// presentation of H^ for multiplicative H).
inline FgAbMap induced_char_map(const GroupDescriptor& g, const GroupDescriptor& h, const EmbeddingDescriptor& e) {
  const RootDatum& gd = detail::ambient_datum(g);
  const IntMatrix gbasis = character_basis(gd);
  const FgAbGroup ghat = FgAbGroup::free(gbasis.cols());

  if (h.is_multiplicative()) {
    const FgAbGroup& hhat = h.multiplicative().characters;
    const IntMatrix& c = detail::char_map_for(gd, hhat, e);
    FgAbMap f(ghat, hhat, c * gbasis);
    require_well_defined(f);
    return f;
  }

  const RootDatum& hd = h.datum();
  const IntMatrix& m = detail::cochar_matrix_for(gd, hd, e);
  const IntMatrix hbasis = character_basis(hd);
  auto q = solve(hbasis, m.transpose() * gbasis);
  if (!q) throw Error(ErrorKind::NotAnEmbedding, "a character of G restricts to a non-character of H");
  return FgAbMap(ghat, FgAbGroup::free(hbasis.cols()), std::move(*q));
}

/// i_* : pi1^alg(H) -> pi1^alg(G).  For reductive H this is induced by
/// cochar_matrix and requires M(ZR^v_H) in ZR^v_G.  For multiplicative H it is
/// the map from the identity component, whose cocharacters Hom(H^, Z) map to
/// X^v(T_G) by the transpose of the character restriction.
inline FgAbMap induced_pi1alg_map(const GroupDescriptor& g, const GroupDescriptor& h, const EmbeddingDescriptor& e) {
  const RootDatum& gd = detail::ambient_datum(g);
  FgAbGroup target = pi1_alg(g);

  if (h.is_multiplicative()) {
    const FgAbGroup& hhat = h.multiplicative().characters;
    const IntMatrix& c = detail::char_map_for(gd, hhat, e);
    HomToZ cochars = hom_to_Z(hhat);
    return FgAbMap(cochars.group, target, (cochars.basis * c).transpose());
  }

  const RootDatum& hd = h.datum();
  const IntMatrix& m = detail::cochar_matrix_for(gd, hd, e);
  if (!lattice_contains(gd.coroot_matrix(), m * hd.coroot_matrix()))
    throw Error(ErrorKind::NotAnEmbedding, "cochar_matrix does not map coroots of H into the coroot lattice of G");
  FgAbMap f(pi1_alg(h), std::move(target), m);
  require_well_defined(f);
  return f;
}

}  // namespace homcalc
