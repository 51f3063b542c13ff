#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "resurgent/series.hpp"

namespace resurgent {

// Random polynomial with small rational coefficients. Exponents are bounded
// by the degree limits and by the caps.
struct RandomSeries {
  std::mt19937_64 rng;
  explicit RandomSeries(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  TruncatedSeries poly(SeriesKind kind, std::size_t ndof, Caps caps, int max_terms, int max_k, int max_deg) {
    std::vector<Term> ts;
    const int count = uniform(1, max_terms);
    for (int i = 0; i < count; ++i) {
      MultiIndex idx = unit_index(ndof);
      idx.k = static_cast<Exponent>(uniform(0, std::min(max_k, caps.t_cap)));
      int budget = uniform(0, std::min(max_deg, caps.qp_cap));
      for (std::size_t j = 0; j < ndof && budget > 0; ++j) {
        const int a = uniform(0, budget);
        idx.alpha[j] = static_cast<Exponent>(a);
        budget -= a;
        const int b = uniform(0, budget);
        idx.beta[j] = static_cast<Exponent>(b);
        budget -= b;
      }
      BigRational c(uniform(-5, 5), uniform(1, 3));
      c.canonicalize();
      ts.emplace_back(std::move(idx), c);
    }
    return make_series(ts, kind, ndof, caps);
  }
};

}  // namespace resurgent
