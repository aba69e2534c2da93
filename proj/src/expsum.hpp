#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace rsbm::detail {

/// Sum of coef * exp(expo) terms, kept symbolic so ratios can be formed after
/// factoring out the largest exponent.
struct ExpSum {
  struct Term {
    double coef;
    double expo;
  };
  std::vector<Term> terms;

  void add(double coef, double expo) {
    if (coef == 0.0) return;
    for (auto& t : terms) {
      if (t.expo == expo) {
        t.coef += coef;
        return;
      }
    }
    terms.push_back({coef, expo});
  }

  double max_expo() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) {
      if (t.coef != 0.0) m = std::max(m, t.expo);
    }
    return m;
  }

  double scaled(double shift) const {
    double s = 0.0;
    for (const auto& t : terms) {
      if (t.coef != 0.0) s += t.coef * std::exp(t.expo - shift);
    }
    return s;
  }

  double value() const { return scaled(0.0); }

  ExpSum operator*(const ExpSum& o) const {
    ExpSum r;
    for (const auto& a : terms) {
      for (const auto& b : o.terms) r.add(a.coef * b.coef, a.expo + b.expo);
    }
    return r;
  }

  ExpSum operator-(const ExpSum& o) const {
    ExpSum r = *this;
    for (const auto& b : o.terms) r.add(-b.coef, b.expo);
    return r;
  }
};

inline double ratio(const ExpSum& num, const ExpSum& den) {
  const double m = std::max(num.max_expo(), den.max_expo());
  if (!std::isfinite(m)) return 0.0;
  return num.scaled(m) / den.scaled(m);
}

}  // namespace rsbm::detail
