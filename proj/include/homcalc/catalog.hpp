#pragma once

// Root data of the classical families and standard embeddings between them.
//
// Coordinate conventions (see docs/catalog.md for worked matrices):
//   GL(n)      X = Z^n, roots and coroots e_i - e_j.
//   SL(n)      simply connected A_{n-1}: X^v has the simple coroots as basis,
//              X the fundamental weights; simple roots are Cartan columns.
//   PGL(n)     adjoint A_{n-1}: X has the simple roots as basis; simple
//              coroots are Cartan rows.
//   Sp(2n)     X = Z^n, roots +-e_i +- e_j, +-2e_i; coroots +-e_i +- e_j, +-e_i.
//   SO(2m+1)   X = Z^m, roots +-e_i +- e_j, +-e_i; coroots +-e_i +- e_j, +-2e_i.
//   SO(2m)     X = Z^m, roots and coroots +-e_i +- e_j.
//   Spin(n)    simply connected B_m / D_m, as for SL(n).
//   Torus(n)   X = Z^n, no roots.  Trivial = Torus(0).
//   Mu(n)      multiplicative, H^ = Z/n.
// Roots are listed in the order produced by closing the simple roots under
// simple reflections (for the Cartan-based families) or by the enumeration
// order written above (for the Euclidean ones).

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homcalc/error.hpp"
#include "homcalc/rootdata.hpp"
#include "homcalc/space.hpp"

namespace homcalc::catalog {

namespace detail {

inline Vec unit(std::size_t n, std::size_t i, long long scale = 1) {
  Vec v(n);
  v[i] = scale;
  return v;
}

inline Vec combo(std::size_t n, std::size_t i, long long a, std::size_t j, long long b) {
  Vec v(n);
  v[i] += a;
  v[j] += b;
  return v;
}

/// Coroot 2a/(a,a) in the Euclidean realization.
inline RootDatum euclidean(std::size_t rank, std::vector<Vec> roots) {
  RootDatum rd{rank, std::move(roots), {}};
  for (const Vec& a : rd.roots) {
    Integer norm = pairing(a, a);
    Vec av = a;
    for (auto& x : av) x = 2 * x / norm;
    rd.coroots.push_back(std::move(av));
  }
  return rd;
}

inline std::vector<Vec> type_d_roots(std::size_t m) {
  std::vector<Vec> r;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (long long a : {1, -1})
        for (long long b : {1, -1}) r.push_back(combo(m, i, a, j, b));
  return r;
}

enum class CartanType { A, B, C, D };

/// Euclidean simple roots of a classical type of the given rank.
inline std::vector<Vec> simple_roots(CartanType type, std::size_t r) {
  const std::size_t dim = type == CartanType::A ? r + 1 : r;
  std::vector<Vec> s;
  for (std::size_t i = 0; i + 1 < r; ++i) s.push_back(combo(dim, i, 1, i + 1, -1));
  switch (type) {
    case CartanType::A: s.push_back(combo(dim, r - 1, 1, r, -1)); break;
    case CartanType::B: s.push_back(unit(dim, r - 1)); break;
    case CartanType::C: s.push_back(unit(dim, r - 1, 2)); break;
    case CartanType::D: s.push_back(combo(dim, r - 2, 1, r - 1, 1)); break;
  }
  return s;
}

/// a_ij = <a_i^v, a_j> = 2(a_i, a_j) / (a_i, a_i).
inline IntMatrix cartan_matrix(CartanType type, std::size_t r) {
  auto s = simple_roots(type, r);
  IntMatrix a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a(i, j) = 2 * pairing(s[i], s[j]) / pairing(s[i], s[i]);
  return a;
}

inline RootDatum simply_connected(CartanType type, std::size_t r) {
  IntMatrix a = cartan_matrix(type, r);
  std::vector<Vec> roots, coroots;
  for (std::size_t j = 0; j < r; ++j) {
    roots.push_back(a.column(j));
    coroots.push_back(unit(r, j));
  }
  return close_under_reflections(r, roots, coroots);
}

inline RootDatum adjoint(CartanType type, std::size_t r) {
  IntMatrix a = cartan_matrix(type, r);
  std::vector<Vec> roots, coroots;
  for (std::size_t i = 0; i < r; ++i) {
    roots.push_back(unit(r, i));
    Vec row(a.row(i).begin(), a.row(i).end());
    coroots.push_back(std::move(row));
  }
  return close_under_reflections(r, roots, coroots);
}

inline void require(bool ok, std::string_view name, long long n, std::string_view rule) {
  if (!ok) throw Error(ErrorKind::BadParams, std::string(name) + "(" + std::to_string(n) + "): " + std::string(rule));
}

}  // namespace detail

inline RootDatum torus(std::size_t n) { return RootDatum{n, {}, {}}; }

inline RootDatum general_linear(std::size_t n) {
  std::vector<Vec> roots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) roots.push_back(detail::combo(n, i, 1, j, -1));
  return detail::euclidean(n, std::move(roots));
}

inline RootDatum special_linear(std::size_t n) {
  if (n == 1) return torus(0);
  return detail::simply_connected(detail::CartanType::A, n - 1);
}

inline RootDatum projective_linear(std::size_t n) {
  if (n == 1) return torus(0);
  return detail::adjoint(detail::CartanType::A, n - 1);
}

inline RootDatum symplectic(std::size_t n) {
  std::vector<Vec> roots = detail::type_d_roots(n);
  for (std::size_t i = 0; i < n; ++i)
    for (long long s : {2, -2}) roots.push_back(detail::unit(n, i, s));
  return detail::euclidean(n, std::move(roots));
}

inline RootDatum special_orthogonal(std::size_t n) {
  const std::size_t m = n / 2;
  std::vector<Vec> roots = detail::type_d_roots(m);
  if (n % 2 == 1)
    for (std::size_t i = 0; i < m; ++i)
      for (long long s : {1, -1}) roots.push_back(detail::unit(m, i, s));
  return detail::euclidean(m, std::move(roots));
}

inline RootDatum spin(std::size_t n) {
  const std::size_t m = n / 2;
  return detail::simply_connected(n % 2 == 1 ? detail::CartanType::B : detail::CartanType::D, m);
}

/// Direct product of two reductive groups, or of two multiplicative groups.
inline GroupDescriptor product(const GroupDescriptor& a, const GroupDescriptor& b) {
  if (a.is_reductive() && b.is_reductive()) {
    const RootDatum& x = a.datum();
    const RootDatum& y = b.datum();
    RootDatum rd{x.rank + y.rank, {}, {}};
    auto pad = [&](const Vec& v, bool first) {
      Vec out(rd.rank);
      for (std::size_t i = 0; i < v.size(); ++i) out[first ? i : x.rank + i] = v[i];
      return out;
    };
    for (std::size_t i = 0; i < x.roots.size(); ++i) {
      rd.roots.push_back(pad(x.roots[i], true));
      rd.coroots.push_back(pad(x.coroots[i], true));
    }
    for (std::size_t i = 0; i < y.roots.size(); ++i) {
      rd.roots.push_back(pad(y.roots[i], false));
      rd.coroots.push_back(pad(y.coroots[i], false));
    }
    return rd;
  }
  if (a.is_multiplicative() && b.is_multiplicative())
    return MultiplicativeGroup{direct_sum(a.multiplicative().characters, b.multiplicative().characters)};
  throw Error(ErrorKind::BadParams, "Product of a reductive and a multiplicative group is not supported");
}

/// Families accepted by `make_group`, with their parameter rule.
struct FamilyInfo {
  std::string_view name;
  std::string_view params;
  std::string_view description;
};

inline const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> list{
      {"SL", "n >= 1", "special linear group, simply connected type A_{n-1}"},
      {"GL", "n >= 1", "general linear group"},
      {"PGL", "n >= 1", "projective linear group, adjoint type A_{n-1}"},
      {"Sp", "n >= 1 (group Sp(2n))", "symplectic group, type C_n"},
      {"SO", "n >= 3", "special orthogonal group, type B or D"},
      {"Spin", "n >= 3", "spin group, simply connected type B or D"},
      {"Torus", "n >= 0", "split torus of rank n"},
      {"Trivial", "none", "the trivial group"},
      {"Mu", "n >= 1", "group of n-th roots of unity (multiplicative, H^ = Z/n)"},
      {"Product", "two factors", "direct product of two groups of the same kind"},
  };
  return list;
}

/// Catalog lookup by family name; `n` is the family parameter (for Sp the
/// rank, so Sp with n = 2 is Sp(4)).
inline GroupDescriptor make_group(std::string_view name, long long n) {
  using detail::require;
  if (name == "SL") {
    require(n >= 1, name, n, "requires n >= 1");
    return special_linear(static_cast<std::size_t>(n));
  }
  if (name == "GL") {
    require(n >= 1, name, n, "requires n >= 1");
    return general_linear(static_cast<std::size_t>(n));
  }
  if (name == "PGL") {
    require(n >= 1, name, n, "requires n >= 1");
    return projective_linear(static_cast<std::size_t>(n));
  }
  if (name == "Sp") {
    require(n >= 1, name, n, "requires n >= 1");
    return symplectic(static_cast<std::size_t>(n));
  }
  if (name == "SO") {
    require(n >= 3, name, n, "requires n >= 3");
    return special_orthogonal(static_cast<std::size_t>(n));
  }
  if (name == "Spin") {
    require(n >= 3, name, n, "requires n >= 3");
    return spin(static_cast<std::size_t>(n));
  }
  if (name == "Torus") {
    require(n >= 0, name, n, "requires n >= 0");
    return torus(static_cast<std::size_t>(n));
  }
  if (name == "Trivial") return torus(0);
  if (name == "Mu") {
    require(n >= 1, name, n, "requires n >= 1");
    return MultiplicativeGroup{FgAbGroup::cyclic(n)};
  }
  throw Error(ErrorKind::UnknownName, "unknown catalog group '" + std::string(name) + "'");
}

// Standard embeddings.  All produce connected or abelian H, so both
// hypothesis flags are left to their forced values.

/// T ⊂ G, the maximal torus of the root datum's coordinates.
inline SpaceDescriptor maximal_torus(const GroupDescriptor& g) {
  const std::size_t n = g.datum().rank;
  EmbeddingDescriptor e;
  e.cochar_matrix = IntMatrix::identity(n);
  return {g, torus(n), e};
}

/// SL(m) ⊂ SL(n), upper-left block: simple coroot i goes to simple coroot i.
inline SpaceDescriptor block(long long m, long long n) {
  if (m < 1 || n < 1 || m >= n) throw Error(ErrorKind::BadParams, "block embedding requires 1 <= m < n");
  IntMatrix M(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(m - 1));
  for (long long i = 0; i + 1 < m; ++i) M(i, i) = 1;
  EmbeddingDescriptor e;
  e.cochar_matrix = std::move(M);
  return {special_linear(n), special_linear(m), e};
}

/// mu_n ⊂ SL(n) as the centre: the fundamental weight w_k restricts to k mod n.
inline SpaceDescriptor center_mu(long long n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "center_mu requires n >= 1");
  IntMatrix c(1, static_cast<std::size_t>(n - 1));
  for (long long k = 1; k < n; ++k) c(0, k - 1) = k;
  EmbeddingDescriptor e;
  e.char_map = std::move(c);
  return {special_linear(n), MultiplicativeGroup{FgAbGroup::cyclic(n)}, e};
}

/// Subtorus of Torus(rows) with cocharacter lattice spanned by the columns.
inline SpaceDescriptor subtorus(const IntMatrix& cochars) {
  EmbeddingDescriptor e;
  e.cochar_matrix = cochars;
  return {torus(cochars.rows()), torus(cochars.cols()), e};
}

/// SL(n) ⊂ GL(n): simple coroot i goes to e_i - e_{i+1}.
inline SpaceDescriptor det_kernel(long long n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "det_kernel requires n >= 1");
  const auto un = static_cast<std::size_t>(n);
  IntMatrix M(un, un - 1);
  for (std::size_t i = 0; i + 1 < un; ++i) {
    M(i, i) = 1;
    M(i + 1, i) = -1;
  }
  EmbeddingDescriptor e;
  e.cochar_matrix = std::move(M);
  return {general_linear(un), special_linear(un), e};
}

/// The one-dimensional torus with cocharacter (1, ..., 1) in G's coordinates.
inline SpaceDescriptor diagonal_torus_in(const GroupDescriptor& g) {
  const std::size_t n = g.datum().rank;
  if (n == 0) throw Error(ErrorKind::BadParams, "diagonal_torus_in requires a group of positive rank");
  IntMatrix M(n, 1);
  for (std::size_t i = 0; i < n; ++i) M(i, 0) = 1;
  EmbeddingDescriptor e;
  e.cochar_matrix = std::move(M);
  return {g, torus(1), e};
}

/// The trivial subgroup of G.
inline SpaceDescriptor point_stabilizer(const GroupDescriptor& g) {
  EmbeddingDescriptor e;
  e.cochar_matrix = IntMatrix(g.datum().rank, 0);
  return {g, torus(0), e};
}

}  // namespace homcalc::catalog
