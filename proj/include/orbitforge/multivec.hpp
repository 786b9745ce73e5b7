#pragma once

#include <orbitforge/levi.hpp>

#include <map>
#include <utility>
#include <vector>

namespace orbitforge {

/// Sparse exterior-algebra element, either over m (levi set) or over the
/// whole algebra g (levi null). Terms map strictly increasing tuples of
/// basis codes to nonzero rational coefficients; the tuple order carries
/// the canonical sign.
struct Multivector {
  RootSystemPtr rs;
  LeviPtr levi;  // null tags the over-g space
  int degree = 0;
  std::map<std::vector<int>, Rat> terms;

  bool over_m() const { return levi != nullptr; }
  bool is_zero() const { return terms.empty(); }
  bool same_space(const Multivector& o) const;

  /// Inserts coeff * e_{t1} ^ ... ^ e_{tk} with canonical reordering.
  void add_term(std::vector<int> tuple, Rat coeff);
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(const Rat& s);
};

Multivector mv_over_m(LeviPtr levi, int degree);
Multivector mv_over_g(RootSystemPtr rs, int degree);

/// Invariant-bivector coefficients c(q) on the positive quasiroots of an
/// attached positive system; c(-q) = -c(q) implicitly.
struct BracketCoefficients {
  LeviPtr levi;
  PositiveSystem positive;
  std::map<QCoords, Rat> values;  // keys inside positive.positive; absent = 0

  /// Odd extension: defined on every quasiroot.
  Rat at(const QCoords& q) const;
  BracketCoefficients& operator+=(const BracketCoefficients& o);
  BracketCoefficients& operator*=(const Rat& s);
};

BracketCoefficients coefficients_zero(LeviPtr levi);
BracketCoefficients coefficients_constant(LeviPtr levi, const Rat& value);

/// Coefficients e(a,b) of an invariant trivector on the canonical terms
/// E_{a+b} ^ E_{-a} ^ E_{-b}, keyed by the positive root pair (a < b);
/// e(-a,-b) = -e(a,b) is implicit.
struct TrivectorCoefficients {
  LeviPtr levi;
  std::map<std::pair<int, int>, Rat> values;
  bool is_zero() const { return values.empty(); }
};

/// Prop-2.2 rendering through the kappa dictionary:
/// E_a ^ E_{-a} -> kappa_a^{-1} e_a ^ e_{-a}.
Multivector bivector_from_coefficients(const BracketCoefficients& c);

/// Inverse direction; throws DomainError when v is not of the invariant
/// form (off-diagonal terms or kappa-normalized fiber inconstancy).
BracketCoefficients coefficients_of(const LeviPtr& levi, const Multivector& v);
BracketCoefficients coefficients_of(const LeviPtr& levi, const Multivector& v,
                                    const PositiveSystem& ps);

/// Schouten bracket; over-m uses the bracket composed with the projection
/// onto m, over-g the full bracket.
Multivector schouten(const Multivector& v, const Multivector& w);

/// Coefficient formula for the bracket of two invariant bivectors:
/// e(a,b) = N_{a,b} (d(qa)(c(qb)-c(qa+qb)) + d(qb)(c(qa)-c(qa+qb))
///                   - d(qa+qb)(c(qa)+c(qb))).
TrivectorCoefficients schouten_closed_form(const LeviPtr& levi,
                                           const BracketCoefficients& c,
                                           const BracketCoefficients& d);

/// Reads an invariant trivector back into e(a,b) coefficients; throws
/// DomainError when v is not theta-structured.
TrivectorCoefficients trivector_coefficients_of(const LeviPtr& levi,
                                                const Multivector& v);

/// The invariant trivector (1/3) sum N_{a,b} E_{a+b}^E_{-a}^E_{-b} over
/// root pairs inside m, rendered through the kappa dictionary.
Multivector phi_m(const LeviPtr& levi);

/// KKS coefficients c(q) = 1/lambda(q), lambda extended linearly from the
/// simple quasiroots. Throws DomainError when lambda vanishes somewhere.
BracketCoefficients kks(const LeviPtr& levi,
                        const std::map<QCoords, Rat>& lambda);

/// Linear extension of a simple-quasiroot map; throws on missing keys.
Rat lambda_extend(const LeviPtr& levi, const std::map<QCoords, Rat>& lambda,
                  const QCoords& q);

/// The Sklyanin-Drinfeld r-matrix over g.
Multivector standard_r_matrix(const RootSystemPtr& rs);

struct CybeReport {
  Multivector phi;
  bool invariant = false;
};
/// phi = [[r, r]] and its ad-invariance over every basis element.
CybeReport verify_cybe(const RootSystemPtr& rs);

/// Zero weight plus annihilation by the generators of l (over-m) or of g
/// (over-g).
bool is_invariant(const Multivector& v);

/// Action of the basis element with the given code, extended as a
/// derivation of the exterior algebra.
Multivector act(int generator_code, const Multivector& v);

/// theta(e_a) = -e_{-a}, theta(h) = -h, extended multiplicatively.
Multivector cartan_involution(const Multivector& v);

/// The scalar mu with [[f_c, f_c]] = mu K^2 phi_M for the constant solution
/// c = K; computed once per datum and required constant across all terms.
Rat calibration_scalar(const LeviPtr& levi);

/// [[f, f]] - mu K^2 phi_M under the calibrated normalization; zero exactly
/// on X_{K^2}.
Multivector phi_bracket_residual(const LeviPtr& levi,
                                 const BracketCoefficients& c, const Rat& K);

}  // namespace orbitforge
