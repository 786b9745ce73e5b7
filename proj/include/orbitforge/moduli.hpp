#pragma once

#include <orbitforge/multivec.hpp>

#include <optional>
#include <set>
#include <string>

namespace orbitforge {

/// A solved point of X_{K^2}: the coefficient map on a positive system,
/// the scalar K, and the seed record it was grown from.
struct FFSolution {
  LeviPtr levi;
  Rat K;
  BracketCoefficients c;  // carries the positive system used
  std::map<QCoords, Rat> seeds;
};

struct FFViolation {
  QCoords a, b;
};

struct VerifyReport {
  bool ok = false;
  std::vector<FFViolation> violations;
  bool schouten_residual_zero = false;
};

/// All unordered composable quasiroot pairs of Omega-bar (mixed signs and
/// equal pairs with 2q a quasiroot included).
std::vector<std::pair<QCoords, QCoords>> composable_pairs(
    const LeviDatum& levi);
/// The pairs lying inside a positive half.
std::vector<std::pair<QCoords, QCoords>> composable_pairs(
    const LeviDatum& levi, const PositiveSystem& ps);

/// Grows the coefficient map from seed values on the simple quasiroots by
/// c(a+b) = (c(a)c(b) + K^2) / (c(a) + c(b)). Order independent; throws
/// DomainError naming the blocking pair when a quasiroot stays undetermined
/// or the grown map violates the pair equations.
FFSolution solve_ff(const LeviPtr& levi, const PositiveSystem& ps,
                    const std::map<QCoords, Rat>& seeds, const Rat& K);

/// Exact pair equations on every composable pair plus the independent
/// Schouten residual through the calibrated normalization.
VerifyReport verify_ff(const LeviPtr& levi, const BracketCoefficients& c,
                       const Rat& K);

/// A semilinear half adapted to a solution: coefficients never sum to zero
/// on composable positive pairs. Built as the preimage of the value-K coset
/// set united with a generic half of Psi = {q : c(q) != +-K}.
PositiveSystem adapted_positive_system(const LeviPtr& levi,
                                       const BracketCoefficients& c,
                                       const Rat& K);

/// Basis of the solutions d of the linearized pair equations at c, grown
/// from unit seeds. Every element brackets to zero with the bivector of c.
std::vector<BracketCoefficients> tangent_basis(const LeviPtr& levi,
                                               const BracketCoefficients& c,
                                               const Rat& K);

/// The (Psi, B, lambda, K) datum. psi holds the quasiroots with
/// c != +-K (a symmetric set); b_reps holds one quasiroot per value-(+K)
/// class of the quotient; lambda is a real functional over the quasiroot
/// coordinates, restricted to psi.
struct Parametrization {
  std::set<QCoords> psi;
  std::set<QCoords> b_reps;
  std::vector<double> lambda;
  Rat K;
};

/// Coefficient values along the coth path; floating point by construction.
struct ApproxCoefficients {
  LeviPtr levi;
  std::map<QCoords, double> values;  // on the standard positives
  double at(const QCoords& q) const;
};

ApproxCoefficients approx_from_exact(const BracketCoefficients& c);

/// c(q) = K coth(K lambda(q) / 2) on psi, +-K on the +-B classes
/// (1/lambda and 0 when K = 0).
ApproxCoefficients from_parametrization(const LeviPtr& levi,
                                        const Parametrization& p);

/// Inverse direction on the principal real branch; throws DomainError when
/// a value sits inside |c| <= |K| (complex branch) or additivity fails
/// beyond 1e-9.
Parametrization extract_parametrization(const LeviPtr& levi,
                                        const ApproxCoefficients& c,
                                        const Rat& K);

/// Largest pair-equation residual of an approximate map.
double ff_residual_max(const LeviPtr& levi, const ApproxCoefficients& c,
                       double K);

struct GoodVerdict {
  bool good = false;
  std::string certificate;
  std::map<int, int> removed_coefficients;  // simple index (0-based) ->
                                            // coefficient in the highest root
};

/// Prop-2.7 style classification: the A series is always good; otherwise
/// good iff Pi minus Gamma is one or two roots carrying coefficient 1 in
/// the highest root.
GoodVerdict classify_good_pair(const RootSystem& rs,
                               const std::set<int>& gamma);

/// The two-component family +-f0 + t s of brackets compatible with the
/// KKS bracket s, with both defining conditions verified exactly.
struct GoodFamily {
  LeviPtr levi;
  BracketCoefficients f0;
  BracketCoefficients s;
  Rat K;
  bool conditions_verified = false;
};

GoodFamily good_bracket_family(const LeviPtr& levi,
                               const std::map<QCoords, Rat>& lambda,
                               const Rat& K);

/// sign * f0 + t * s.
BracketCoefficients family_member(const GoodFamily& fam, int sign,
                                  const Rat& t);

}  // namespace orbitforge
