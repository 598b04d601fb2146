#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tincalc {

/// Exact rational number, always in lowest terms with positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "123", "-0.25", "1.5e-3" or "p/q" exactly. Rejects nan/inf and
/// anything else that is not a finite decimal or a ratio of integers.
Scalar parse_scalar(std::string_view text);

/// "p/q", or "p" for integers.
std::string to_string(const Scalar& value);

/// Correctly rounded (half-even) decimal with `digits` significant digits,
/// in scientific notation when the exponent is outside [-4, digits).
std::string to_decimal(const Scalar& value, int digits = 17);

/// Correctly rounded decimal of sqrt(value); value must be non-negative.
std::string sqrt_decimal(const Scalar& value, int digits = 17);

inline int sign(const Scalar& value) { return sgn(value); }

/// Sum by pairwise reduction, which keeps intermediate denominators small
/// when many unrelated fractions are added.
Scalar sum_exact(std::vector<Scalar> values);

/// Number of bits in numerator plus denominator.
std::size_t bit_size(const Scalar& value);

}  // namespace tincalc
