#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tincalc/ops.hpp"
#include "tincalc/scalar.hpp"

namespace tincalc {

/// (a * b) mod m for m < 2^63, via the long double quotient estimate.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const auto q = static_cast<std::uint64_t>(static_cast<long double>(a) * b / m);
  const std::int64_t r = static_cast<std::int64_t>(a * b - q * m);
  if (r < 0) return static_cast<std::uint64_t>(r + static_cast<std::int64_t>(m));
  if (static_cast<std::uint64_t>(r) >= m) return static_cast<std::uint64_t>(r) - m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Arithmetic modulo a word-size prime p = c * 2^k + 1. Every operation ticks
/// the operation counter.
class ModField {
 public:
  using Elem = std::uint64_t;

  explicit ModField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  /// Largest k with 2^k | p - 1 (capped at 32).
  unsigned two_adicity() const { return two_adicity_; }
  /// A primitive 2^two_adicity() root of unity.
  Elem root_of_unity() const { return root_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    ops::tick();
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const {
    ops::tick();
    return a >= b ? a - b : a + p_ - b;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    ops::tick();
    return mulmod(a, b, p_);
  }
  /// Throws std::domain_error for zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

 private:
  std::uint64_t p_;
  unsigned two_adicity_ = 0;
  Elem root_ = 1;
};

/// Exact rational backend with the same interface as ModField.
class RationalField {
 public:
  using Elem = Scalar;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const { return Scalar(static_cast<long>(v)); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const {
    ops::tick();
    return a + b;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    ops::tick();
    return a - b;
  }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const {
    ops::tick();
    return a * b;
  }
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
};

/// Residue tagged with the basket index of its prime.
struct Fp {
  std::uint64_t value;
  std::size_t prime_id;

  friend bool operator==(const Fp&, const Fp&) = default;
};

/// The first `count` primes p = c * 2^k + 1 below 2^bits, largest first,
/// where k = min(32, bits - 16). Requires 24 <= bits <= 62.
std::vector<std::uint64_t> ntt_primes(std::size_t count, unsigned bits);

/// An ordered, growable set of NTT-friendly primes with a per-prime status.
class PrimeBasket {
 public:
  explicit PrimeBasket(std::size_t count, unsigned bits = 62);
  /// Basket over explicit primes (tests); the primes need not be NTT-friendly.
  explicit PrimeBasket(std::vector<std::uint64_t> primes);

  std::size_t size() const { return fields_.size(); }
  unsigned bits() const { return bits_; }
  const ModField& field(std::size_t id) const { return fields_.at(id); }
  std::uint64_t prime(std::size_t id) const { return fields_.at(id).modulus(); }

  bool ok(std::size_t id) const { return !discarded_.at(id).has_value(); }
  const std::optional<std::string>& discard_reason(std::size_t id) const { return discarded_.at(id); }
  void discard(std::size_t id, std::string reason);
  /// Indices of primes still in use, in order.
  std::vector<std::size_t> active() const;
  /// Appends fresh primes until the basket holds `count` primes in total.
  void grow(std::size_t count);

 private:
  unsigned bits_ = 0;
  std::vector<ModField> fields_;
  std::vector<std::optional<std::string>> discarded_;
};

/// r mod p. Throws BadPrime(prime_id) when p divides the denominator.
std::uint64_t rat_to_mod(const Scalar& r, const ModField& field, std::size_t prime_id);
/// Element-wise rat_to_mod with one field inversion for the whole batch.
std::vector<std::uint64_t> rat_to_mod_batch(const std::vector<const Scalar*>& values, const ModField& field,
                                            std::size_t prime_id);
Fp rat_to_fp(const Scalar& r, const PrimeBasket& basket, std::size_t prime_id);

/// x mod m1*m2*... from residues (Garner's scheme).
Integer crt_combine(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& moduli);

/// The unique a/b with |a|, |b| <= sqrt(m/2) and a = b*x mod m, if any.
std::optional<Scalar> rational_reconstruct(const Integer& x, const Integer& m);

/// Combines residues (indexed by basket id; absent entries are ignored) into
/// a rational. The last active prime with a residue is held out and must
/// agree with the reconstructed value. Throws InsufficientPrimes when fewer
/// than two usable primes are present or verification fails.
Scalar crt_reconstruct(const std::vector<std::optional<std::uint64_t>>& residues, const PrimeBasket& basket);

}  // namespace tincalc
