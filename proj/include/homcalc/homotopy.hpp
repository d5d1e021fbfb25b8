#pragma once

// pi_1 and pi_2 (twisted by Hom(Z(1), -)) of a homogeneous space X = G/H.
//
//   thm_main : Pic(G) = 0 and H^{ker.char} connected  =>
//              pi_1(X)(-1) = Ext^0([G^ -> H^>, Z).
//   thm_pi2  : H connected  =>  pi_1(X)(-1) = coker(pi1^alg(H) -> pi1^alg(G)).
//   pi2      : pi_2(X)(-1) = ker(pi1^alg(H) -> pi1^alg(G)), H arbitrary
//              (pi1^alg of H means that of its identity component).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homcalc/error.hpp"
#include "homcalc/extcplx.hpp"
#include "homcalc/fgab.hpp"
#include "homcalc/rootdata.hpp"
#include "homcalc/space.hpp"

namespace homcalc {

enum class Method { ThmMain, ThmPi2, Both };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::ThmMain: return "thm_main";
    case Method::ThmPi2: return "thm_pi2";
    case Method::Both: return "both";
  }
  return "unknown";
}

struct GateCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct HomotopyResult {
  InvariantFactors group;
  Method method = Method::ThmMain;
  std::vector<GateCheck> gates;
};

/// Effective hypothesis flags.  Reductive descriptors describe connected
/// groups, so both flags default to true; a caller may still declare H
/// disconnected (the datum then describes H^red of the identity component).
/// For multiplicative H connectedness is read off H^ and H^{ker.char} is
/// trivial; contradicting flags are rejected.
struct HypothesisFlags {
  bool h_connected = true;
  bool h_ker_char_connected = true;
};

inline HypothesisFlags hypothesis_flags(const SpaceDescriptor& s) {
  HypothesisFlags f;
  if (s.h.is_reductive()) {
    f.h_connected = s.e.h_connected.value_or(true);
    f.h_ker_char_connected = s.e.h_ker_char_connected.value_or(f.h_connected);
    return f;
  }
  f.h_connected = invariants(s.h.multiplicative().characters).torsion.empty();
  if (s.e.h_connected && *s.e.h_connected != f.h_connected)
    throw Error(ErrorKind::BadParams, std::string("flag h_connected = ") + (f.h_connected ? "false" : "true") +
                                          " contradicts the character group of H");
  if (s.e.h_ker_char_connected && !*s.e.h_ker_char_connected)
    throw Error(ErrorKind::BadParams, "H of multiplicative type has trivial H^{ker.char}; flag must be true");
  return f;
}

/// Full input validation: root data axioms, embedding shape and coroot
/// containment, flag consistency.
inline void validate_space(const SpaceDescriptor& s) {
  if (!s.g.is_reductive()) throw Error(ErrorKind::BadParams, "G must be connected and given by a root datum");
  require_valid(s.g.datum());
  if (s.h.is_reductive()) require_valid(s.h.datum());
  hypothesis_flags(s);
  induced_char_map(s.g, s.h, s.e);
  induced_pi1alg_map(s.g, s.h, s.e);
}

/// The complex [G^ -> H^> with G^ in degree 0.
inline TwoTermComplex character_complex(const SpaceDescriptor& s) {
  return TwoTermComplex(induced_char_map(s.g, s.h, s.e));
}

namespace detail {

inline GateCheck require_pic_trivial(const SpaceDescriptor& s) {
  InvariantFactors pic = invariants(pic_group(s.g));
  if (!pic.is_trivial()) throw Error(ErrorKind::PicNonTrivial, "Pic(G) = " + pic.pretty());
  return {"pic_trivial", true, "Pic(G) = 0"};
}

inline GateCheck require_ker_char_connected(const SpaceDescriptor& s) {
  if (!hypothesis_flags(s).h_ker_char_connected)
    throw Error(ErrorKind::HKerCharNotConnected, "H^{ker.char} is not known to be connected");
  return {"h_ker_char_connected", true, s.h.is_reductive() ? "H connected" : "H abelian"};
}

inline GateCheck require_h_connected(const SpaceDescriptor& s) {
  if (!hypothesis_flags(s).h_connected) throw Error(ErrorKind::HNotConnected, "H is not connected");
  return {"h_connected", true, "H connected"};
}

}  // namespace detail

/// pi_1(X)(-1) = Ext^0([G^ -> H^>, Z), via the fiber product and, when
/// `cross_check` is set, confirmed by the free-resolution route.
inline HomotopyResult pi1_thm_main(const SpaceDescriptor& s, bool cross_check = true) {
  HomotopyResult r;
  r.method = Method::ThmMain;
  r.gates.push_back(detail::require_pic_trivial(s));
  r.gates.push_back(detail::require_ker_char_connected(s));

  TwoTermComplex K = character_complex(s);
  r.group = invariants(ext0_fiber_product(K));
  if (cross_check) {
    InvariantFactors oracle = invariants(ext0_resolution(K));
    if (oracle != r.group)
      throw Error(ErrorKind::CrossCheckFailed,
                  "fiber product gives " + r.group.pretty() + ", resolution gives " + oracle.pretty());
  }
  return r;
}

/// pi_1(X)(-1) = coker(pi1^alg(H) -> pi1^alg(G)) for connected H.
inline HomotopyResult pi1_thm_pi2(const SpaceDescriptor& s) {
  HomotopyResult r;
  r.method = Method::ThmPi2;
  r.gates.push_back(detail::require_h_connected(s));
  r.group = invariants(cokernel(induced_pi1alg_map(s.g, s.h, s.e)));
  return r;
}

/// pi_2(X)(-1) = ker(pi1^alg(H^0) -> pi1^alg(G)).
inline HomotopyResult pi2(const SpaceDescriptor& s) {
  HomotopyResult r;
  r.method = Method::ThmPi2;
  r.group = invariants(kernel(induced_pi1alg_map(s.g, s.h, s.e)));
  return r;
}

enum class MethodChoice { Auto, ThmMain, ThmPi2, Both };

/// pi_1 by the requested route.  Auto prefers thm_pi2 (no Pic condition)
/// when H is connected.  Both runs the two routes and fails with
/// CrossCheckFailed if they disagree.
inline HomotopyResult pi1(const SpaceDescriptor& s, MethodChoice choice = MethodChoice::Auto) {
  switch (choice) {
    case MethodChoice::ThmMain: return pi1_thm_main(s);
    case MethodChoice::ThmPi2: return pi1_thm_pi2(s);
    case MethodChoice::Auto:
      return hypothesis_flags(s).h_connected ? pi1_thm_pi2(s) : pi1_thm_main(s);
    case MethodChoice::Both: {
      HomotopyResult a = pi1_thm_main(s);
      HomotopyResult b = pi1_thm_pi2(s);
      if (a.group != b.group)
        throw Error(ErrorKind::CrossCheckFailed,
                    "thm_main gives " + a.group.pretty() + ", thm_pi2 gives " + b.group.pretty());
      a.method = Method::Both;
      a.gates.insert(a.gates.end(), b.gates.begin(), b.gates.end());
      return a;
    }
  }
  return pi1_thm_pi2(s);
}

/// The exact sequence
///   Hom(H^,Z) -i_*-> Hom(G^,Z) -> pi_1(X)(-1) -> Hom(H^_tors, Q/Z)
/// together with, for connected H, coker(H^tor_* -> G^tor_*).
struct Pi1SequenceReport {
  InvariantFactors hom_h;
  InvariantFactors hom_g;
  InvariantFactors pi1;
  InvariantFactors torsion_dual_h;
  FgAbMap i_star;      // Hom(H^, Z) -> Hom(G^, Z)
  FgAbMap to_pi1;      // Hom(G^, Z) -> pi_1(X)(-1), presented as Ext^0
  bool exact_at_hom_g = false;
  std::optional<InvariantFactors> torus_cokernel;
};

inline Pi1SequenceReport pi1_exact_sequence(const SpaceDescriptor& s) {
  HomotopyResult main = pi1_thm_main(s);
  TwoTermComplex K = character_complex(s);
  FiberProductReplacement rep = fiber_product_replacement(K, IntMatrix::identity(K.a1().generators()));

  Pi1SequenceReport out{.hom_h = {},
                  .hom_g = {},
                  .pi1 = main.group,
                  .torsion_dual_h = invariants(ext1_to_Z(K.a1())),
                  .i_star = dual_hom_map(K.alpha()),
                  .to_pi1 = rep.from_hom_a0,
                  .exact_at_hom_g = false,
                  .torus_cokernel = std::nullopt};
  out.hom_h = invariants(out.i_star.source());
  out.hom_g = invariants(out.i_star.target());
  out.exact_at_hom_g = same_lattice(out.i_star.matrix(), kernel_inclusion(out.to_pi1).matrix());

  if (hypothesis_flags(s).h_connected && invariants(K.a1()).torsion.empty()) {
    out.torus_cokernel = invariants(cokernel(out.i_star));
    if (*out.torus_cokernel != out.pi1)
      throw Error(ErrorKind::CrossCheckFailed, "coker(H^tor_* -> G^tor_*) = " + out.torus_cokernel->pretty() +
                                                   " but Ext^0 = " + out.pi1.pretty());
  }
  return out;
}

struct MethodFailure {
  std::string method;
  ErrorKind kind;
  std::string message;
};

struct AllResults {
  std::optional<HomotopyResult> pi1;
  std::optional<HomotopyResult> pi2;
  std::vector<MethodFailure> failures;
};

/// Runs every applicable method.  Gate failures are recorded and do not stop
/// the other methods; disagreement between the two pi_1 routes throws.
inline AllResults compute_all(const SpaceDescriptor& s) {
  AllResults out;
  auto attempt = [&](const char* name, auto&& fn) -> std::optional<HomotopyResult> {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CrossCheckFailed) throw;
      out.failures.push_back({name, e.kind(), e.detail()});
      return std::nullopt;
    }
  };

  auto main = attempt("thm_main", [&] { return pi1_thm_main(s); });
  auto via_pi2 = attempt("thm_pi2", [&] { return pi1_thm_pi2(s); });
  if (main && via_pi2) {
    if (main->group != via_pi2->group)
      throw Error(ErrorKind::CrossCheckFailed,
                  "thm_main gives " + main->group.pretty() + ", thm_pi2 gives " + via_pi2->group.pretty());
    main->method = Method::Both;
    main->gates.insert(main->gates.end(), via_pi2->gates.begin(), via_pi2->gates.end());
    out.pi1 = std::move(main);
  } else if (main) {
    out.pi1 = std::move(main);
  } else if (via_pi2) {
    out.pi1 = std::move(via_pi2);
  }
  out.pi2 = attempt("pi2", [&] { return pi2(s); });
  return out;
}

}  // namespace homcalc
