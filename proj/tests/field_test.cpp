#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "tincalc/errors.hpp"
#include "tincalc/field.hpp"

using namespace tincalc;
using testing_support::q;

namespace {

std::vector<std::optional<std::uint64_t>> encode(const Scalar& r, const PrimeBasket& basket) {
  std::vector<std::optional<std::uint64_t>> out;
  for (std::size_t id = 0; id < basket.size(); ++id) out.push_back(rat_to_fp(r, basket, id).value);
  return out;
}

}  // namespace

TEST(Mulmod, AgreesWithWideMultiplication) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10000; ++k) {
    const std::uint64_t m = (rng() >> 1) | 1;
    const std::uint64_t a = rng() % m, b = rng() % m;
    const auto expected = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    ASSERT_EQ(mulmod(a, b, m), expected);
  }
}

TEST(IsPrime, SmallAndKnownValues) {
  std::vector<bool> sieve(2000, true);
  sieve[0] = sieve[1] = false;
  for (std::size_t i = 2; i < sieve.size(); ++i)
    if (sieve[i])
      for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
  for (std::uint64_t n = 0; n < sieve.size(); ++n) EXPECT_EQ(is_prime_u64(n), sieve[n]) << n;
  EXPECT_TRUE(is_prime_u64(4611686018427387847ULL));   // 2^62 - 57
  EXPECT_FALSE(is_prime_u64(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime_u64(4611686018427387847ULL * 1 - 2));
}

TEST(NttPrimes, ShapeAndOrder) {
  for (unsigned bits : {24u, 40u, 62u}) {
    const auto ps = ntt_primes(20, bits);
    ASSERT_EQ(ps.size(), 20u);
    const unsigned k = std::min(32u, bits - 16);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      EXPECT_TRUE(is_prime_u64(ps[i]));
      EXPECT_LT(ps[i], std::uint64_t{1} << bits);
      EXPECT_EQ((ps[i] - 1) % (std::uint64_t{1} << k), 0u);
      if (i) EXPECT_LT(ps[i], ps[i - 1]);
    }
  }
  EXPECT_THROW(ntt_primes(1, 20), InvalidParameter);
  EXPECT_THROW(ntt_primes(1, 63), InvalidParameter);
}

TEST(ModField, RootOfUnityHasExactOrder) {
  const ModField F(ntt_primes(1, 62)[0]);
  const unsigned k = F.two_adicity();
  EXPECT_EQ(k, 32u);
  EXPECT_EQ(F.pow(F.root_of_unity(), std::uint64_t{1} << k), 1u);
  EXPECT_NE(F.pow(F.root_of_unity(), std::uint64_t{1} << (k - 1)), 1u);
}

TEST(ModField, AxiomsOnRandomTriples) {
  for (std::uint64_t p : {std::uint64_t{7}, std::uint64_t{65537}, ntt_primes(1, 62)[0]}) {
    const ModField F(p);
    std::mt19937_64 rng(p);
    for (int k = 0; k < 2000; ++k) {
      const auto a = rng() % p, b = rng() % p, c = rng() % p;
      ASSERT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
      ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      ASSERT_EQ(F.add(a, F.neg(a)), 0u);
      ASSERT_EQ(F.sub(a, b), F.add(a, F.neg(b)));
      if (a) ASSERT_EQ(F.mul(a, F.inv(a)), 1u);
    }
    EXPECT_THROW(F.inv(0), std::domain_error);
  }
}

TEST(ModField, CountsOperations) {
  const ModField F(101);
  const ops::Scope scope;
  F.mul(F.add(3, 4), 5);
  EXPECT_EQ(scope.elapsed(), 2u);
}

TEST(RatToFp, Examples) {
  const PrimeBasket basket(std::vector<std::uint64_t>{7});
  EXPECT_EQ(rat_to_fp(q("1/2"), basket, 0).value, 4u);
  EXPECT_EQ(rat_to_fp(q("-1"), basket, 0).value, 6u);
  EXPECT_THROW(rat_to_fp(q("1/7"), basket, 0), BadPrime);
  try {
    rat_to_fp(q("3/14"), basket, 0);
  } catch (const BadPrime& e) {
    EXPECT_EQ(e.prime_id(), 0u);
  }
}

TEST(RatToModBatch, AgreesElementwise) {
  const ModField F(ntt_primes(1, 40)[0]);
  std::mt19937_64 rng(4);
  std::vector<Scalar> vals;
  for (int k = 0; k < 100; ++k) vals.push_back(testing_support::random_rational(rng, 1L << 40, 1L << 30));
  std::vector<const Scalar*> ptrs;
  for (const auto& v : vals) ptrs.push_back(&v);
  const auto batch = rat_to_mod_batch(ptrs, F, 0);
  for (std::size_t k = 0; k < vals.size(); ++k) EXPECT_EQ(batch[k], rat_to_mod(vals[k], F, 0));
  const Scalar bad(1, static_cast<long>(F.modulus()));
  ptrs.push_back(&bad);
  EXPECT_THROW(rat_to_mod_batch(ptrs, F, 0), BadPrime);
}

TEST(Crt, SmallIntegers) {
  EXPECT_EQ(crt_combine({2, 3}, {5, 7}), Integer(17));
  EXPECT_EQ(crt_combine({0, 0, 1}, {3, 5, 7}), Integer(15));
}

TEST(CrtReconstruct, NegativeThird) {
  const PrimeBasket basket(4, 62);
  EXPECT_EQ(crt_reconstruct(encode(q("-1/3"), basket), basket), q("-1/3"));
}

TEST(CrtReconstruct, SinglePrimeIsInsufficient) {
  const PrimeBasket basket(1, 62);
  EXPECT_THROW(crt_reconstruct(encode(q("1/3"), basket), basket), InsufficientPrimes);
}

TEST(CrtReconstruct, TooFewPrimesForValue) {
  const PrimeBasket basket(3, 30);
  const Scalar big(Integer("123456789012345678901234567890123", 10), Integer("98765432109876543210987", 10));
  EXPECT_THROW(crt_reconstruct(encode(big, basket), basket), InsufficientPrimes);
}

TEST(CrtReconstruct, RoundTripRandomRationals) {
  const PrimeBasket basket(4, 62);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    Scalar r = testing_support::random_rational(rng, 1000000, 1000000);
    const auto residues = encode(r, basket);
    const Scalar back = crt_reconstruct(residues, basket);
    EXPECT_EQ(back, r);
    for (std::size_t id = 0; id < basket.size(); ++id) EXPECT_EQ(rat_to_fp(back, basket, id).value, *residues[id]);
  }
}

TEST(CrtReconstruct, BoundGuaranteesRecovery) {
  // |num|, |den| < 2^40 needs a product above 2^81 besides the held-out prime.
  const PrimeBasket basket(4, 30);
  std::mt19937_64 rng(77);
  for (int k = 0; k < 200; ++k) {
    Scalar r(Integer(static_cast<long>(rng() % (1ULL << 40))) - Integer(1L << 39),
             Integer(static_cast<long>(rng() % ((1ULL << 40) - 1) + 1)));
    r.canonicalize();
    EXPECT_EQ(crt_reconstruct(encode(r, basket), basket), r);
  }
}

TEST(CrtReconstruct, IgnoresDiscardedAndMissing) {
  PrimeBasket basket(6, 62);
  auto residues = encode(q("-22/7"), basket);
  basket.discard(1, "test");
  residues[1] = 12345;  // garbage from a discarded prime
  residues[3].reset();
  EXPECT_EQ(crt_reconstruct(residues, basket), q("-22/7"));
}

TEST(CrtReconstruct, VerificationPrimeCatchesCorruption) {
  const PrimeBasket basket(5, 62);
  auto residues = encode(q("5/9"), basket);
  residues[4] = (*residues[4] + 1) % basket.prime(4);
  EXPECT_THROW(crt_reconstruct(residues, basket), InsufficientPrimes);
}

TEST(PrimeBasket, GrowAndDiscard) {
  PrimeBasket basket(3, 62);
  basket.discard(1, "bad");
  EXPECT_FALSE(basket.ok(1));
  EXPECT_EQ(*basket.discard_reason(1), "bad");
  EXPECT_EQ(basket.active(), (std::vector<std::size_t>{0, 2}));
  basket.grow(6);
  EXPECT_EQ(basket.size(), 6u);
  std::set<std::uint64_t> distinct;
  for (std::size_t id = 0; id < basket.size(); ++id) distinct.insert(basket.prime(id));
  EXPECT_EQ(distinct.size(), 6u);
}

TEST(RationalField, MatchesScalarArithmetic) {
  const RationalField F;
  EXPECT_EQ(F.mul(q("2/3"), q("9/4")), q("3/2"));
  EXPECT_EQ(F.inv(q("-2/5")), q("-5/2"));
  EXPECT_EQ(F.pow(q("1/2"), 10), q("1/1024"));
  EXPECT_THROW(F.inv(0), std::domain_error);
}
