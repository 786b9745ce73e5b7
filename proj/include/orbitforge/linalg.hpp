#pragma once

#include <orbitforge/rat.hpp>

#include <optional>
#include <vector>

namespace orbitforge {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row major

/// Exact rank by fraction-free (Bareiss) elimination on the integerized
/// matrix. No floating point anywhere.
int exact_rank(const RatMat& a);

/// Reduced row echelon form; records pivot columns when asked.
RatMat rref(RatMat a, std::vector<int>* pivot_cols = nullptr);

/// Basis of the right nullspace {x : a x = 0}.
RatMat nullspace(const RatMat& a);

/// Solves a x = b exactly; nullopt when inconsistent. For underdetermined
/// systems the free variables are set to zero.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

/// Whether v lies in the row span of rows.
bool in_span(const RatMat& rows, const RatVec& v);

}  // namespace orbitforge
