#pragma once

// Two-term complexes [A0 -> A1> (A0 in degree 0, A1 in degree 1) and
// Ext^0(A0 -> A1, Z).
//
// Two independent routes compute Ext^0:
//   * ext0_fiber_product: replace the complex by the quasi-isomorphic
//     [B0 -> B1> with B1 free surjecting onto A1 and B0 = A0 x_{A1} B1; when A0
//     is torsion-free both terms are free and Ext^0 = coker(Hom(B1,Z) -> Hom(B0,Z)).
//   * ext0_resolution: resolve both terms freely, take the total complex
//     F-1 -> F0 -> F1, dualize and read off degree-zero cohomology.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "homcalc/error.hpp"
#include "homcalc/fgab.hpp"
#include "homcalc/intlat.hpp"

namespace homcalc {

class TwoTermComplex {
 public:
  explicit TwoTermComplex(FgAbMap alpha) : alpha_(std::move(alpha)) { require_well_defined(alpha_); }

  const FgAbGroup& a0() const noexcept { return alpha_.source(); }
  const FgAbGroup& a1() const noexcept { return alpha_.target(); }
  const FgAbMap& alpha() const noexcept { return alpha_; }

  FgAbGroup h0() const { return kernel(alpha_); }
  FgAbGroup h1() const { return cokernel(alpha_); }

 private:
  FgAbMap alpha_;
};

/// A morphism of complexes (f0, f1) : source -> target.
struct ComplexMap {
  TwoTermComplex source;
  TwoTermComplex target;
  FgAbMap f0;
  FgAbMap f1;
};

/// target.alpha o f0 == f1 o source.alpha modulo the relations of target.a1.
inline bool square_commutes(const ComplexMap& phi) {
  const IntMatrix lhs = phi.target.alpha().matrix() * phi.f0.matrix();
  const IntMatrix rhs = phi.f1.matrix() * phi.source.alpha().matrix();
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) return false;
  return lattice_contains(phi.target.a1().relations(), lhs - rhs);
}

/// Both induced maps H^0 and H^1 are isomorphisms.
inline bool is_quasi_isomorphism(const ComplexMap& phi) {
  require_well_defined(phi.f0);
  require_well_defined(phi.f1);
  if (!square_commutes(phi)) throw Error(ErrorKind::IllFormedMap, "complex map square does not commute");

  FgAbMap ks = kernel_inclusion(phi.source.alpha());
  FgAbMap kt = kernel_inclusion(phi.target.alpha());
  // f0 carries the kernel lattice of the source into that of the target, so
  // the image is an exact integer combination of the target basis.
  auto coords = solve(kt.matrix(), phi.f0.matrix() * ks.matrix());
  if (!coords) throw Error(ErrorKind::IllFormedMap, "degree-0 map does not preserve cocycles");
  FgAbMap h0(ks.source(), kt.source(), std::move(*coords));

  FgAbMap h1(cokernel(phi.source.alpha()), cokernel(phi.target.alpha()), phi.f1.matrix());
  return is_isomorphism(h0) && is_isomorphism(h1);
}

/// The free replacement [B0 -> B1> of a complex with torsion-free A0, the
/// quasi-isomorphism to the original, and the resulting Ext^0.
struct FiberProductReplacement {
  ComplexMap to_original;
  FgAbGroup ext0;
  /// Hom(A0, Z) -> Ext^0, on the basis of hom_to_Z(A0).
  FgAbMap from_hom_a0;
};

/// `surjection` is the matrix of phi1 : Z^k ->> A1 (A1-generators x k).
inline FiberProductReplacement fiber_product_replacement(const TwoTermComplex& K, const IntMatrix& surjection) {
  if (!invariants(K.a0()).torsion.empty())
    throw Error(ErrorKind::TorsionInDegreeZero, "degree-0 term has torsion; use ext0_resolution");

  const std::size_t k = surjection.cols();
  FgAbMap phi1(FgAbGroup::free(k), K.a1(), surjection);
  if (!is_surjective(phi1)) throw Error(ErrorKind::BadParams, "phi1 is not surjective onto the degree-1 term");

  // Free coordinates of A0: E : Z^r0 -> A0 is an isomorphism.
  SmithCoordinates c0 = smith_coordinates(K.a0());
  const auto free0 = c0.free_indices();
  const std::size_t r0 = free0.size();
  const IntMatrix E = c0.U_inv.columns(free0);
  const IntMatrix alpha_free = K.alpha().matrix() * E;

  // B0 = {(a, b) : alpha(a) - phi1(b) in relations of A1}.
  IntMatrix system = hconcat(hconcat(alpha_free, -surjection), -K.a1().relations());
  IntMatrix kb = kernel_basis(system);
  IntMatrix pairs = image_basis(kb.block(0, 0, r0 + k, kb.cols()));
  const std::size_t s = pairs.cols();

  IntMatrix beta = pairs.block(r0, 0, k, s);
  IntMatrix phi0 = E * pairs.block(0, 0, r0, s);

  TwoTermComplex B(FgAbMap(FgAbGroup::free(s), FgAbGroup::free(k), beta));
  FgAbGroup ext0(beta.transpose());

  HomToZ h0 = hom_to_Z(K.a0());
  FgAbMap from_hom(h0.group, ext0, (h0.basis * phi0).transpose());

  return {ComplexMap{std::move(B), K, FgAbMap(FgAbGroup::free(s), K.a0(), std::move(phi0)), std::move(phi1)},
          std::move(ext0), std::move(from_hom)};
}

/// Ext^0 via the fiber product, with B1 free on the generators of A1.
inline FgAbGroup ext0_fiber_product(const TwoTermComplex& K) {
  return fiber_product_replacement(K, IntMatrix::identity(K.a1().generators())).ext0;
}

inline FgAbGroup ext0_fiber_product(const TwoTermComplex& K, const IntMatrix& surjection) {
  return fiber_product_replacement(K, surjection).ext0;
}

/// Free complex F-1 -> F0 -> F1 quasi-isomorphic to K: with injective
/// presentations A0 = coker(R0), A1 = coker(R1) and alpha R0 = R1 Q,
///   F-1 = Z^p0,  F0 = Z^n0 + Z^p1,  F1 = Z^n1,
///   d-1 = [R0; -Q],  d0 = [alpha | R1].
struct FreeResolutionComplex {
  IntMatrix d_minus1;
  IntMatrix d0;
};

inline FreeResolutionComplex free_resolution_complex(const TwoTermComplex& K) {
  IntMatrix r0 = image_basis(K.a0().relations());
  IntMatrix r1 = image_basis(K.a1().relations());
  auto q = solve(r1, K.alpha().matrix() * r0);
  if (!q) throw Error(ErrorKind::IllFormedMap, "alpha does not lift to relation modules");
  return {vconcat(r0, -*q), hconcat(K.alpha().matrix(), r1)};
}

/// Ext^0 as H^0 of Hom(F, Z): ker(d-1^T) / im(d0^T).  Handles torsion in
/// either degree.
inline FgAbGroup ext0_resolution(const TwoTermComplex& K) {
  FreeResolutionComplex F = free_resolution_complex(K);
  IntMatrix cocycles = kernel_basis(F.d_minus1.transpose());
  auto rel = solve(cocycles, F.d0.transpose());
  if (!rel) throw Error(ErrorKind::CrossCheckFailed, "dual complex is not a complex");
  return FgAbGroup(std::move(*rel));
}

/// The outer terms of
///   Hom(A1,Z) -> Hom(A0,Z) -> Ext^0 -> Hom(A1_tors,Q/Z) -> Hom(A0_tors,Q/Z).
struct Ext0Bounds {
  FgAbMap hom_map;      // alpha^* on Hom(-, Z)
  FgAbMap torsion_dual; // alpha^* on Hom((-)_tors, Q/Z)

  /// coker(hom_map), which injects into Ext^0.
  InvariantFactors sub() const { return invariants(cokernel(hom_map)); }
  /// ker(torsion_dual), onto which Ext^0 surjects.
  InvariantFactors quotient() const { return invariants(kernel(torsion_dual)); }

  /// Ext^0 up to isomorphism, when one of the flanking groups vanishes.
  std::optional<InvariantFactors> forced() const {
    InvariantFactors s = sub(), q = quotient();
    if (q.is_trivial()) return s;
    if (s.is_trivial()) return q;
    return std::nullopt;
  }

  /// Necessary conditions from 0 -> sub -> Ext^0 -> quotient -> 0 with
  /// finite quotient: equal ranks, and |sub_tors| divides |Ext^0_tors| which
  /// divides |sub_tors| * |quotient|.
  bool admits(const InvariantFactors& ext0) const {
    InvariantFactors s = sub(), q = quotient();
    if (auto f = forced()) return *f == ext0;
    if (ext0.rank != s.rank) return false;
    const Integer st = s.torsion_order(), et = ext0.torsion_order();
    return et % st == 0 && (st * q.torsion_order()) % et == 0;
  }
};

inline Ext0Bounds cor_ext0_bounds(const TwoTermComplex& K) {
  return {dual_hom_map(K.alpha()), torsion_dual_map(K.alpha())};
}

}  // namespace homcalc
