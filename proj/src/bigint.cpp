#include "wittkit/bigint.hpp"

#include "wittkit/error.hpp"

namespace wittkit {

BigInt bigint_pow(const BigInt& base, uint64_t e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

bool divides_exactly(const BigInt& num, const BigInt& den) {
  return mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) != 0;
}

int vp(int64_t n, int64_t p) {
  if (n <= 0 || p < 2) fail_argument("vp: need n > 0 and p >= 2");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<int64_t> distinct_prime_factors(int64_t n) {
  std::vector<int64_t> out;
  if (n <= 1) return out;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<int64_t> divisors_of(int64_t n) {
  if (n <= 0) fail_argument("divisors_of: need n > 0");
  std::vector<int64_t> small, large;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

int64_t gcd64(int64_t a, int64_t b) {
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

int64_t power64(int64_t base, int64_t e) {
  int64_t out = 1;
  for (int64_t i = 0; i < e; ++i) {
    if (base != 0 && out > (int64_t{1} << 62) / (base < 0 ? -base : base))
      fail_argument("power64 overflow");
    out *= base;
  }
  return out;
}

}  // namespace wittkit
