#include "tincalc/field.hpp"

#include <stdexcept>

#include "tincalc/errors.hpp"

namespace tincalc {

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModField::ModField(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= (std::uint64_t{1} << 63)) throw InvalidParameter("modulus out of range");
  std::uint64_t odd = p - 1;
  while ((odd & 1) == 0 && two_adicity_ < 32) {
    odd >>= 1;
    ++two_adicity_;
  }
  // a^((p-1)/2^k) has order exactly 2^k iff its 2^(k-1)th power is -1.
  const std::uint64_t cofactor = (p - 1) >> two_adicity_;
  for (std::uint64_t a = 2; a < p; ++a) {
    const std::uint64_t r = powmod(a, cofactor, p);
    if (two_adicity_ == 0 || powmod(r, std::uint64_t{1} << (two_adicity_ - 1), p) == p - 1) {
      root_ = r;
      break;
    }
  }
}

ModField::Elem ModField::from_int(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  return static_cast<Elem>(r < 0 ? r + m : r);
}

ModField::Elem ModField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  ops::tick();
  // Extended Euclid; all quantities stay below p < 2^63 in magnitude.
  std::int64_t t = 0, new_t = 1;
  std::uint64_t r = p_, new_r = a;
  while (new_r != 0) {
    const std::uint64_t q = r / new_r;
    t -= static_cast<std::int64_t>(q) * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(t);
}

ModField::Elem ModField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

RationalField::Elem RationalField::inv(const Elem& a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  ops::tick();
  return 1 / a;
}

RationalField::Elem RationalField::pow(const Elem& a, std::uint64_t e) const {
  Elem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

std::vector<std::uint64_t> ntt_primes(std::size_t count, unsigned bits) {
  if (bits < 24 || bits > 62) throw InvalidParameter("prime size must be between 24 and 62 bits");
  const unsigned k = std::min(32u, bits - 16);
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = ((std::uint64_t{1} << bits) - 2) >> k; c >= 1 && out.size() < count; --c) {
    const std::uint64_t p = (c << k) + 1;
    if (is_prime_u64(p)) out.push_back(p);
  }
  if (out.size() < count) throw InvalidParameter("not enough primes of the requested size");
  return out;
}

PrimeBasket::PrimeBasket(std::size_t count, unsigned bits) : bits_(bits) {
  for (std::uint64_t p : ntt_primes(count, bits)) fields_.emplace_back(p);
  discarded_.resize(fields_.size());
}

PrimeBasket::PrimeBasket(std::vector<std::uint64_t> primes) {
  for (std::uint64_t p : primes) {
    if (!is_prime_u64(p)) throw InvalidParameter("basket modulus is not prime");
    fields_.emplace_back(p);
  }
  discarded_.resize(fields_.size());
}

void PrimeBasket::discard(std::size_t id, std::string reason) { discarded_.at(id) = std::move(reason); }

std::vector<std::size_t> PrimeBasket::active() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < fields_.size(); ++i)
    if (ok(i)) ids.push_back(i);
  return ids;
}

void PrimeBasket::grow(std::size_t count) {
  if (count <= fields_.size()) return;
  if (bits_ == 0) throw InvalidParameter("an explicit basket cannot grow");
  const auto primes = ntt_primes(count, bits_);
  for (std::size_t i = fields_.size(); i < count; ++i) fields_.emplace_back(primes[i]);
  discarded_.resize(fields_.size());
}

namespace {

Integer u64_to_mpz(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

std::uint64_t mpz_mod_u64(const Integer& z, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(z.get_mpz_t(), m);
}

}  // namespace

std::uint64_t rat_to_mod(const Scalar& r, const ModField& field, std::size_t prime_id) {
  const std::uint64_t p = field.modulus();
  const std::uint64_t den = mpz_mod_u64(r.get_den(), p);
  if (den == 0) throw BadPrime(prime_id, "prime divides a denominator");
  const std::uint64_t num = mpz_mod_u64(r.get_num(), p);
  return mulmod(num, field.inv(den), p);
}

std::vector<std::uint64_t> rat_to_mod_batch(const std::vector<const Scalar*>& values, const ModField& field,
                                            std::size_t prime_id) {
  const std::uint64_t p = field.modulus();
  const std::size_t n = values.size();
  std::vector<std::uint64_t> dens(n), prefix(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    dens[i] = mpz_mod_u64(values[i]->get_den(), p);
    if (dens[i] == 0) throw BadPrime(prime_id, "prime divides a denominator");
    prefix[i + 1] = field.mul(prefix[i], dens[i]);
  }
  std::vector<std::uint64_t> out(n);
  std::uint64_t inv = n ? field.inv(prefix[n]) : 1;
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t inv_i = field.mul(inv, prefix[i]);
    inv = field.mul(inv, dens[i]);
    out[i] = field.mul(mpz_mod_u64(values[i]->get_num(), p), inv_i);
  }
  return out;
}

Fp rat_to_fp(const Scalar& r, const PrimeBasket& basket, std::size_t prime_id) {
  return {rat_to_mod(r, basket.field(prime_id), prime_id), prime_id};
}

Integer crt_combine(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& moduli) {
  if (residues.size() != moduli.size() || residues.empty()) throw InvalidParameter("residue/modulus mismatch");
  Integer x = u64_to_mpz(residues[0] % moduli[0]);
  Integer m = u64_to_mpz(moduli[0]);
  for (std::size_t k = 1; k < residues.size(); ++k) {
    const std::uint64_t p = moduli[k];
    const std::uint64_t xm = mpz_mod_u64(x, p);
    const std::uint64_t mm = mpz_mod_u64(m, p);
    const std::uint64_t t = mulmod((residues[k] % p + p - xm) % p, powmod(mm, p - 2, p), p);
    x += m * u64_to_mpz(t);
    m *= u64_to_mpz(p);
  }
  return x;
}

std::optional<Scalar> rational_reconstruct(const Integer& x, const Integer& m) {
  Integer bound = sqrt(Integer(m / 2));
  Integer r0 = m, r1 = x % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g = gcd(r1, t1);
  if (g != 1) return std::nullopt;
  Scalar result(r1, t1);
  result.canonicalize();
  return result;
}

Scalar crt_reconstruct(const std::vector<std::optional<std::uint64_t>>& residues, const PrimeBasket& basket) {
  std::vector<std::size_t> ids;
  for (std::size_t id : basket.active())
    if (id < residues.size() && residues[id].has_value()) ids.push_back(id);
  if (ids.size() < 2) throw InsufficientPrimes("need at least two usable primes");
  const std::size_t check = ids.back();
  ids.pop_back();
  std::vector<std::uint64_t> rs, ms;
  for (std::size_t id : ids) {
    rs.push_back(*residues[id]);
    ms.push_back(basket.prime(id));
  }
  Integer m = 1;
  for (std::uint64_t p : ms) m *= u64_to_mpz(p);
  const auto value = rational_reconstruct(crt_combine(rs, ms), m);
  if (!value) throw InsufficientPrimes("rational reconstruction failed");
  const std::uint64_t p = basket.prime(check);
  if (mpz_mod_u64(value->get_den(), p) == 0) throw InsufficientPrimes("verification prime divides the denominator");
  if (rat_to_mod(*value, basket.field(check), check) != *residues[check])
    throw InsufficientPrimes("verification prime disagrees");
  return *value;
}

}  // namespace tincalc
