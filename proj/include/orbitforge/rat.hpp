#pragma once

#include <gmpxx.h>

#include <string>

namespace orbitforge {

/// Exact rational scalar used throughout the library.
using Rat = mpq_class;

/// Parses "p", "-p", "p/q" (q > 0 after canonicalization). Throws UsageError
/// on malformed text or zero denominator.
Rat parse_rat(const std::string& text);

/// Canonical serialization: "p" or "p/q", no spaces.
std::string rat_str(const Rat& x);

inline double rat_double(const Rat& x) { return x.get_d(); }

}  // namespace orbitforge
