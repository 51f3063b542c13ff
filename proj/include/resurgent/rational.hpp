#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "resurgent/error.hpp"

namespace resurgent {

// Exact coefficients. mpq_class keeps values canonical (lowest terms,
// positive denominator) through all arithmetic on canonical operands.
using BigRational = mpq_class;
using BigInteger = mpz_class;

inline BigRational make_rational(const std::string& num, const std::string& den = "1") {
  BigInteger n, d;
  if (n.set_str(num, 10) != 0) fail(ErrorKind::ParseError, "bad numerator '" + num + "'");
  if (d.set_str(den, 10) != 0) fail(ErrorKind::ParseError, "bad denominator '" + den + "'");
  if (d == 0) fail(ErrorKind::ParseError, "zero denominator");
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

// Accepts "a", "-a/b" or a plain decimal like "0.25".
inline BigRational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos)
    return make_rational(text.substr(0, slash), text.substr(slash + 1));
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::string den = "1" + std::string(text.size() - dot - 1, '0');
    return make_rational(digits, den);
  }
  return make_rational(text);
}

inline BigInteger factorial(unsigned long n) {
  BigInteger r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInteger binomial(unsigned long n, unsigned long k) {
  BigInteger r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// binom(a, k) = a(a-1)...(a-k+1)/k! for rational a (falling factorial).
inline BigRational generalized_binomial(const BigRational& a, unsigned long k) {
  BigRational r = 1;
  for (unsigned long j = 0; j < k; ++j) {
    r *= a - static_cast<long>(j);
    r /= static_cast<long>(j + 1);
  }
  return r;
}

// Table of n! for n = 0..max, shared by kernels that need many factorial weights.
class FactorialTable {
 public:
  explicit FactorialTable(std::size_t max) : table_(max + 1) {
    table_[0] = 1;
    for (std::size_t n = 1; n <= max; ++n) table_[n] = table_[n - 1] * static_cast<unsigned long>(n);
  }
  const BigInteger& operator[](std::size_t n) const { return table_.at(n); }
  std::size_t max() const { return table_.size() - 1; }

 private:
  std::vector<BigInteger> table_;
};

inline double to_double(const BigRational& r) { return r.get_d(); }

inline std::string to_string(const BigRational& r) { return r.get_str(); }

}  // namespace resurgent
