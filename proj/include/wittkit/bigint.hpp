#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace wittkit {

using BigInt = mpz_class;

BigInt bigint_pow(const BigInt& base, uint64_t e);

// true iff den divides num exactly (den != 0)
bool divides_exactly(const BigInt& num, const BigInt& den);

// p-adic valuation of n > 0
int vp(int64_t n, int64_t p);

std::vector<int64_t> distinct_prime_factors(int64_t n);
std::vector<int64_t> divisors_of(int64_t n);  // ascending

int64_t gcd64(int64_t a, int64_t b);
int64_t power64(int64_t base, int64_t e);  // checked, fails on overflow

}  // namespace wittkit
