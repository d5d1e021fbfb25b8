#pragma once

// Finitely generated abelian groups presented as cokernels of integer
// matrices, and homomorphisms between such presentations.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "homcalc/error.hpp"
#include "homcalc/intlat.hpp"

namespace homcalc {

/// Canonical form Z^rank + Z/d_1 + ... + Z/d_k with d_i >= 2 and d_i | d_{i+1}.
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  bool is_finite() const { return rank == 0; }

  /// Order of the torsion part.
  Integer torsion_order() const {
    Integer n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
  }

  /// "0", "Z", "Z^3", "Z/2", "Z^2 ⊕ Z/2 ⊕ Z/4", ...
  std::string pretty() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
      os << "Z";
      if (rank > 1) os << '^' << rank;
      first = false;
    }
    for (const auto& d : torsion) {
      if (!first) os << " ⊕ ";
      os << "Z/" << d;
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const InvariantFactors& f) { return os << f.pretty(); }

/// The group Z^n / (column span of `relations`), n = relations.rows().
/// Elements are vectors in Z^n, equal modulo the relation lattice.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  explicit FgAbGroup(IntMatrix relations) : relations_(std::move(relations)) {}

  static FgAbGroup free(std::size_t n) { return FgAbGroup(IntMatrix(n, 0)); }
  static FgAbGroup trivial() { return FgAbGroup(); }
  static FgAbGroup cyclic(const Integer& d) {
    IntMatrix r(1, 1);
    r(0, 0) = d;
    return FgAbGroup(std::move(r));
  }
  /// Z^rank + sum Z/d_i, torsion generators first.
  static FgAbGroup from_invariants(const InvariantFactors& f) {
    const std::size_t k = f.torsion.size();
    IntMatrix r(k + f.rank, k);
    for (std::size_t i = 0; i < k; ++i) r(i, i) = f.torsion[i];
    return FgAbGroup(std::move(r));
  }

  std::size_t generators() const noexcept { return relations_.rows(); }
  const IntMatrix& relations() const noexcept { return relations_; }

  /// Whether the element with generator coordinates `v` (a column) is zero.
  bool is_zero(const IntMatrix& v) const { return lattice_contains(relations_, v); }

 private:
  IntMatrix relations_;
};

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(block_diagonal(a.relations(), b.relations()));
}

/// A homomorphism given on generators: column j is the image of generator j.
class FgAbMap {
 public:
  FgAbMap() = default;
  FgAbMap(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators()) {
      std::ostringstream os;
      os << "matrix is " << matrix_.rows() << 'x' << matrix_.cols() << ", expected "
         << target_.generators() << 'x' << source_.generators();
      throw Error(ErrorKind::IllFormedMap, os.str());
    }
  }

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// Smith coordinates of a presentation: y = U x sends generator coordinates to
/// coordinates in Z/orders[0] + ... (order 0 meaning Z).  Columns of U_inv are
/// the canonical generators written in the original generators.
struct SmithCoordinates {
  IntMatrix U;
  IntMatrix U_inv;
  std::vector<Integer> orders;

  std::vector<std::size_t> torsion_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] > 1) idx.push_back(i);
    return idx;
  }
  std::vector<std::size_t> free_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] == 0) idx.push_back(i);
    return idx;
  }
};

inline SmithCoordinates smith_coordinates(const FgAbGroup& a) {
  SnfResult s = snf(a.relations());
  SmithCoordinates c{std::move(s.U), std::move(s.U_inv), std::vector<Integer>(a.generators())};
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) c.orders[i] = s.diagonal[i];
  return c;
}

inline InvariantFactors invariants(const FgAbGroup& a) {
  SnfResult s = snf(a.relations());
  InvariantFactors f;
  f.rank = a.generators() - s.rank();
  for (const auto& d : s.diagonal)
    if (d > 1) f.torsion.push_back(d);
  return f;
}

/// Order of a finite group; nullopt for infinite groups.
inline std::optional<Integer> order(const FgAbGroup& a) {
  InvariantFactors f = invariants(a);
  if (!f.is_finite()) return std::nullopt;
  return f.torsion_order();
}

/// Hom(A, Z) as a free group, with its basis as functionals on A's generators
/// (row i of `basis` is the i-th basis homomorphism).
struct HomToZ {
  FgAbGroup group;
  IntMatrix basis;
};

inline HomToZ hom_to_Z(const FgAbGroup& a) {
  SmithCoordinates c = smith_coordinates(a);
  auto idx = c.free_indices();
  return {FgAbGroup::free(idx.size()), c.U.row_subset(idx)};
}

/// Ext^1(A, Z) ~ Hom(A_tors, Q/Z), returned in canonical form.
inline FgAbGroup ext1_to_Z(const FgAbGroup& a) {
  InvariantFactors f = invariants(a);
  f.rank = 0;
  return FgAbGroup::from_invariants(f);
}

/// Inclusion of the torsion subgroup, whose presentation is the canonical
/// Z/d_1 + ... + Z/d_k.
inline FgAbMap torsion_inclusion(const FgAbGroup& a) {
  SmithCoordinates c = smith_coordinates(a);
  auto idx = c.torsion_indices();
  InvariantFactors f;
  for (auto i : idx) f.torsion.push_back(c.orders[i]);
  return FgAbMap(FgAbGroup::from_invariants(f), a, c.U_inv.columns(idx));
}

/// f maps relations of the source into relations of the target.
inline bool check_map(const FgAbMap& f) {
  return lattice_contains(f.target().relations(), f.matrix() * f.source().relations());
}

inline void require_well_defined(const FgAbMap& f) {
  if (!check_map(f)) {
    throw Error(ErrorKind::IllFormedMap,
                "map " + f.matrix().to_string() + " does not send source relations into target relations");
  }
}

inline FgAbMap compose(const FgAbMap& g, const FgAbMap& f) {
  if (g.source().generators() != f.target().generators() ||
      !same_lattice(g.source().relations(), f.target().relations()))
    throw Error(ErrorKind::IllFormedMap, "composition of maps through different presentations");
  return FgAbMap(f.source(), g.target(), g.matrix() * f.matrix());
}

/// Inclusion ker(f) -> source(f).  The kernel is presented on a basis of the
/// lattice {x : f(x) in relations of target}, modulo source relations.
inline FgAbMap kernel_inclusion(const FgAbMap& f) {
  require_well_defined(f);
  const std::size_t n = f.source().generators();
  const IntMatrix& rb = f.target().relations();
  IntMatrix system = hconcat(f.matrix(), -rb);
  IntMatrix k = kernel_basis(system);
  IntMatrix lattice = image_basis(k.block(0, 0, n, k.cols()));
  auto rel = solve(lattice, f.source().relations());
  if (!rel) throw Error(ErrorKind::IllFormedMap, "source relations escape the kernel lattice");
  return FgAbMap(FgAbGroup(std::move(*rel)), f.source(), lattice);
}

inline FgAbGroup kernel(const FgAbMap& f) { return kernel_inclusion(f).source(); }

/// Projection target(f) -> coker(f); the cokernel keeps the target generators.
inline FgAbMap cokernel_projection(const FgAbMap& f) {
  require_well_defined(f);
  FgAbGroup c(hconcat(f.target().relations(), f.matrix()));
  return FgAbMap(f.target(), c, IntMatrix::identity(f.target().generators()));
}

inline FgAbGroup cokernel(const FgAbMap& f) { return cokernel_projection(f).target(); }

inline bool is_injective(const FgAbMap& f) { return invariants(kernel(f)).is_trivial(); }
inline bool is_surjective(const FgAbMap& f) { return invariants(cokernel(f)).is_trivial(); }
inline bool is_isomorphism(const FgAbMap& f) { return is_injective(f) && is_surjective(f); }

/// Hom(B, Z) -> Hom(A, Z) induced by f : A -> B, on the bases of `hom_to_Z`.
inline FgAbMap dual_hom_map(const FgAbMap& f) {
  HomToZ ha = hom_to_Z(f.source());
  HomToZ hb = hom_to_Z(f.target());
  // Pull back each functional of B and write it in A's dual basis.
  IntMatrix pulled = (hb.basis * f.matrix()).transpose();
  auto coeff = solve(ha.basis.transpose(), pulled);
  if (!coeff) throw Error(ErrorKind::IllFormedMap, "pullback of a functional does not factor through the source");
  return FgAbMap(hb.group, ha.group, std::move(*coeff));
}

/// Restriction of f to torsion subgroups, in the canonical presentations of
/// `torsion_inclusion`.
inline FgAbMap torsion_restriction(const FgAbMap& f) {
  require_well_defined(f);
  FgAbMap ia = torsion_inclusion(f.source());
  SmithCoordinates cb = smith_coordinates(f.target());
  auto jb = cb.torsion_indices();
  InvariantFactors tb;
  for (auto j : jb) tb.torsion.push_back(cb.orders[j]);

  IntMatrix img = cb.U * f.matrix() * ia.matrix();
  IntMatrix m(jb.size(), img.cols());
  for (std::size_t r = 0; r < jb.size(); ++r)
    for (std::size_t c = 0; c < img.cols(); ++c) m(r, c) = mod_floor(img(jb[r], c), cb.orders[jb[r]]);
  return FgAbMap(ia.source(), FgAbGroup::from_invariants(tb), std::move(m));
}

/// Hom(B_tors, Q/Z) -> Hom(A_tors, Q/Z) induced by f : A -> B.  Each dual is
/// presented on the characters sending one canonical generator of order d to
/// 1/d and the others to 0.
inline FgAbMap torsion_dual_map(const FgAbMap& f) {
  FgAbMap t = torsion_restriction(f);
  const IntMatrix& ra = t.source().relations();
  const IntMatrix& rb = t.target().relations();
  const std::size_t na = t.source().generators(), nb = t.target().generators();
  IntMatrix m(na, nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const Integer& d = ra(i, i);
      const Integer& e = rb(j, j);
      Integer num = t.matrix()(j, i) * d;
      if (num % e != 0) throw Error(ErrorKind::IllFormedMap, "torsion restriction is not well defined");
      m(i, j) = mod_floor(num / e, d);
    }
  return FgAbMap(t.target(), t.source(), std::move(m));
}

}  // namespace homcalc
