#pragma once

#include <orbitforge/linalg.hpp>
#include <orbitforge/rootsystem.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace orbitforge {

/// Integer coefficient vector over the coordinates Pi minus Gamma,
/// in ascending Bourbaki order. The restriction of a root's coefficient
/// vector; injective on quasiroot classes.
using QCoords = std::vector<int>;

std::string qcoords_key(const QCoords& q);          // "1,0,1"
QCoords qcoords_parse(const std::string& key, int dim);
QCoords qcoords_neg(const QCoords& q);
QCoords qcoords_add(const QCoords& a, const QCoords& b);

/// Verdict of the linear / semilinear classification of a subset of
/// quasiroots, with a violating pair when neither applies.
struct SubsetVerdict {
  enum class Kind { linear, semilinear, neither };
  Kind kind = Kind::neither;
  std::optional<std::pair<QCoords, QCoords>> witness;
};

/// The orbit datum (g, Gamma): Levi roots, the complement m, quasiroot
/// classes with their fibers, and the standard positive system.
class LeviDatum {
 public:
  /// gamma holds 0-based simple-root indices, a proper subset of Pi.
  static std::shared_ptr<const LeviDatum> make(RootSystemPtr rs,
                                               const std::set<int>& gamma);

  const RootSystemPtr& rs() const { return rs_; }
  const std::vector<int>& gamma() const { return gamma_; }
  /// Ascending indices of Pi minus Gamma; quasiroot coordinate positions.
  const std::vector<int>& m_positions() const { return m_positions_; }
  int q_dim() const { return static_cast<int>(m_positions_.size()); }

  const std::vector<int>& levi_roots() const { return levi_roots_; }
  const std::vector<int>& m_roots() const { return m_roots_; }
  bool in_m(int root) const { return in_m_[root]; }

  /// All quasiroots; positives first (height then lex), negatives mirrored.
  const std::vector<QCoords>& quasiroots() const { return quasiroots_; }
  int n_qpositive() const { return n_qpositive_; }
  int q_index(const QCoords& q) const;
  QCoords q_of_root(int root) const;
  const std::vector<int>& fiber(const QCoords& q) const;
  /// Images of Pi minus Gamma: the unit coordinate vectors.
  const std::vector<QCoords>& simple_quasiroots() const { return simple_; }

  int dim_m() const { return static_cast<int>(m_roots_.size()); }

 private:
  LeviDatum() = default;
  RootSystemPtr rs_;
  std::vector<int> gamma_;
  std::vector<int> m_positions_;
  std::vector<int> levi_roots_;
  std::vector<int> m_roots_;
  std::vector<bool> in_m_;
  std::vector<QCoords> quasiroots_;
  std::map<QCoords, int> q_index_;
  int n_qpositive_ = 0;
  std::map<QCoords, std::vector<int>> fibers_;
  std::vector<QCoords> simple_;
};

using LeviPtr = std::shared_ptr<const LeviDatum>;

/// Builds the orbit datum. Throws DomainError when gamma = Pi (degenerate
/// orbit) and UsageError for out-of-range indices.
LeviPtr make_levi(RootSystemPtr rs, const std::set<int>& gamma);

/// Classifies S inside Omega-bar: linear (S = span(S) cap Omega-bar),
/// semilinear (addition-closed positivity half), or neither with witness.
SubsetVerdict subset_classify(const LeviDatum& levi,
                              const std::set<QCoords>& subset);

/// Quotient of Omega-bar by the span of a linear subset psi: canonical
/// rational class representatives, zero images removed, fibers recorded.
struct Quotient {
  std::vector<RatVec> classes;                  // canonical representatives
  std::map<QCoords, int> projection;            // quasiroot -> class index
  std::vector<std::vector<QCoords>> fibers;     // class index -> quasiroots
  RatVec project(const QCoords& q) const;       // exact reduction mod span
  RatMat span_rref;                             // rref basis of span(psi)
  std::vector<int> span_pivots;
};
Quotient quotient_by(const LeviDatum& levi, const std::set<QCoords>& psi);

/// A semilinear half of Omega-bar together with its simple (indecomposable)
/// quasiroots.
struct PositiveSystem {
  std::vector<QCoords> positive;
  std::vector<QCoords> simple;
  bool contains(const QCoords& q) const;
};

/// The standard half: projections of the positive m-roots.
PositiveSystem standard_positive(const LeviDatum& levi);

/// Validates an arbitrary candidate half and computes its simples.
PositiveSystem positive_system_from(const LeviDatum& levi,
                                    const std::set<QCoords>& positive);

/// Even-degree Betti numbers of G/P via minimal coset representatives of
/// W_Gamma \ W counted by length. Throws DomainError past the orbit cap.
std::vector<long> betti_numbers(const RootSystem& rs,
                                const std::set<int>& gamma);

}  // namespace orbitforge
