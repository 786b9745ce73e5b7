#pragma once

#include <orbitforge/errors.hpp>
#include <orbitforge/rat.hpp>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace orbitforge {

enum class Series : char {
  A = 'A',
  B = 'B',
  C = 'C',
  D = 'D',
  E = 'E',
  F = 'F',
  G = 'G',
};

/// One of the legal simple types: A_n (n>=1), B_n (n>=2), C_n (n>=3),
/// D_n (n>=4), E_6..E_8, F_4, G_2. Bourbaki numbering everywhere.
struct SimpleType {
  Series series = Series::A;
  int rank = 0;

  bool valid() const;
  std::string str() const;
  static SimpleType parse(const std::string& text);  // "A2", "d4", ...

  bool operator==(const SimpleType& o) const {
    return series == o.series && rank == o.rank;
  }
};

/// Integer coefficient vector over the simple roots.
using Coords = std::vector<int>;

/// Either a root vector e_alpha or a simple-coroot Cartan generator h_i.
struct BasisElement {
  bool is_cartan = false;
  int index = 0;  // root index, or cartan index in [0, rank)
};

/// Sparse linear combination of basis codes (see RootSystem code layout).
using BasisCombo = std::vector<std::pair<int, Rat>>;

/// A simple root system with a fixed Chevalley basis: root enumeration,
/// structure constants N_{alpha,beta} chosen by the extraspecial-pair
/// induction, exact Killing pairings kappa_alpha = kappa(e_a, e_{-a}),
/// and the full bracket table on the basis {e_alpha, h_i}.
///
/// Basis codes: 0..n_roots-1 are root vectors (positives first, ordered by
/// height then lexicographic coords; negatives mirror the positives),
/// n_roots..n_roots+rank-1 are the simple coroots h_i.
class RootSystem {
 public:
  static std::shared_ptr<const RootSystem> build(SimpleType type);

  SimpleType type() const { return type_; }
  int rank() const { return rank_; }
  int n_roots() const { return static_cast<int>(roots_.size()); }
  int n_positive() const { return n_positive_; }
  int n_basis() const { return n_roots() + rank_; }

  const Coords& root(int r) const { return roots_[r]; }
  const std::vector<Coords>& roots() const { return roots_; }
  bool is_positive(int r) const { return r < n_positive_; }
  int negate(int r) const {
    return r < n_positive_ ? r + n_positive_ : r - n_positive_;
  }
  /// Index of coords, or -1 when not a root.
  int root_index(const Coords& c) const;
  /// Index of the sum of roots a and b, or -1.
  int root_sum(int a, int b) const;
  int height(int r) const;

  /// cartan(i, j) = <alpha_j, alpha_i^vee>.
  int cartan(int i, int j) const { return cartan_[i][j]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  /// <root r, alpha_i^vee>, an integer.
  int cartan_pairing(int r, int i) const;

  /// Squared length of root r in the normalization max length^2 = 2.
  const Rat& length_sq(int r) const { return length_sq_[r]; }

  /// Chevalley constant N_{a,b}; zero iff a+b is not a root.
  int n_const(int a, int b) const { return n_table_[a * roots_.size() + b]; }

  /// kappa_alpha = Tr(ad e_alpha . ad e_{-alpha}), exact and positive.
  const Rat& kappa(int r) const { return kappa_[r]; }

  int highest_root() const { return highest_root_; }

  /// Coefficients of the coroot of root r over the simple coroots h_i.
  const std::vector<int>& coroot(int r) const { return coroots_[r]; }

  /// Bracket of two basis codes, as a sparse combination of basis codes.
  /// [e_a, e_b] = N_{a,b} e_{a+b}, [e_a, e_{-a}] = coroot, [h_i, e_b] =
  /// <b, alpha_i^vee> e_b, [h, h] = 0.
  BasisCombo bracket_basis(int x, int y) const;

  BasisElement decode(int code) const;
  int encode(const BasisElement& b) const;

 private:
  RootSystem() = default;
  void enumerate_roots();
  void compute_lengths();
  void compute_structure_constants();
  void compute_coroots();
  void compute_kappa();
  /// Structure constant for arbitrary sign pattern, valid while the
  /// positive-pair table is filled up to the needed height.
  int resolve_n(int a, int b) const;
  int p_string(int a, int b) const;  // max k >= 0 with b - k*a a root

  SimpleType type_;
  int rank_ = 0;
  std::vector<Coords> roots_;
  std::map<Coords, int> root_index_;
  int n_positive_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rat>> simple_pairing_;  // (alpha_i, alpha_j)
  std::vector<Rat> length_sq_;
  std::vector<int> n_table_;
  std::vector<std::vector<int>> coroots_;
  std::vector<Rat> kappa_;
  int highest_root_ = -1;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Constructs the root system for a legal simple type.
/// Throws UsageError for an illegal (series, rank) pair.
RootSystemPtr build_root_system(SimpleType type);
RootSystemPtr build_root_system(const std::string& type);

/// Spec-facing bracket of two basis elements.
BasisCombo lie_bracket(const RootSystem& rs, const BasisElement& x,
                       const BasisElement& y);

}  // namespace orbitforge
