#pragma once

// Truncated multivariate Taylor polynomials in the kDim chart coordinates.
//
// A Jet<Order> stores the Taylor coefficients c_alpha of a smooth function
// about a base point for every multi-index |alpha| <= Order. Arithmetic and
// the elementary functions propagate all coefficients exactly (up to
// rounding), so partial derivatives of any order <= Order come out as
// alpha! * c_alpha with no step-size error.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace geoball {

inline constexpr int kDim = 4;
inline constexpr int kMaxJetOrder = 4;

using MultiIndex = std::array<int, kDim>;

namespace detail {

constexpr int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int encode(const MultiIndex& alpha) {
  int code = 0;
  for (int i = 0; i < kDim; ++i) code = code * (kMaxJetOrder + 1) + alpha[i];
  return code;
}

inline constexpr int kCodeSpace = 625;  // (kMaxJetOrder + 1)^kDim

template <int Order>
struct JetTables {
  static_assert(Order >= 0 && Order <= kMaxJetOrder);
  static constexpr int kSize = binomial(Order + kDim, kDim);

  struct ProductTerm {
    int lhs;
    int rhs;
    int out;
  };

  std::array<MultiIndex, kSize> exponents{};
  std::array<int, kSize> degree{};
  std::array<double, kSize> factorial{};
  std::array<int, kCodeSpace> slot{};
  std::vector<ProductTerm> products;

  int slot_of(const MultiIndex& alpha) const { return slot[encode(alpha)]; }

  static const JetTables& get() {
    static const JetTables tables = build();
    return tables;
  }

 private:
  static JetTables build() {
    JetTables t;
    t.slot.fill(-1);
    int n = 0;
    // Graded ordering: all degree-0 terms, then degree 1, and so on.
    for (int d = 0; d <= Order; ++d) {
      for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b) {
          for (int c = d - a - b; c >= 0; --c) {
            const MultiIndex alpha{a, b, c, d - a - b - c};
            t.exponents[n] = alpha;
            t.degree[n] = d;
            double f = 1.0;
            for (int e : alpha) {
              for (int k = 2; k <= e; ++k) f *= k;
            }
            t.factorial[n] = f;
            t.slot[encode(alpha)] = n;
            ++n;
          }
        }
      }
    }
    for (int i = 0; i < kSize; ++i) {
      for (int j = 0; j < kSize; ++j) {
        if (t.degree[i] + t.degree[j] > Order) continue;
        MultiIndex sum{};
        for (int k = 0; k < kDim; ++k) sum[k] = t.exponents[i][k] + t.exponents[j][k];
        t.products.push_back({i, j, t.slot_of(sum)});
      }
    }
    return t;
  }
};

}  // namespace detail

template <int Order>
class Jet {
 public:
  static constexpr int kOrder = Order;
  static constexpr int kSize = detail::JetTables<Order>::kSize;

  Jet() { coeffs_.fill(0.0); }
  // Implicit so generic metric expressions can mix jets and literals.
  Jet(double constant) {  // NOLINT(google-explicit-constructor)
    coeffs_.fill(0.0);
    coeffs_[0] = constant;
  }

  static Jet variable(int axis, double value) {
    Jet v(value);
    if constexpr (Order >= 1) {
      MultiIndex e{};
      e[axis] = 1;
      v.coeffs_[tables().slot_of(e)] = 1.0;
    }
    return v;
  }

  double value() const { return coeffs_[0]; }

  double coefficient(const MultiIndex& alpha) const {
    int total = 0;
    for (int a : alpha) total += a;
    if (total > Order) return 0.0;
    return coeffs_[tables().slot_of(alpha)];
  }

  // d^|alpha| f / dx^alpha at the base point.
  double partial(const MultiIndex& alpha) const {
    int total = 0;
    for (int a : alpha) total += a;
    if (total > Order) return 0.0;
    const int s = tables().slot_of(alpha);
    return coeffs_[s] * tables().factorial[s];
  }

  double& operator[](int slot) { return coeffs_[slot]; }
  double operator[](int slot) const { return coeffs_[slot]; }

  // Jet of the partial derivative along one axis, one order lower.
  Jet<Order - 1> derivative(int axis) const {
    static_assert(Order >= 1, "cannot differentiate a zeroth-order jet");
    const auto& lower = detail::JetTables<Order - 1>::get();
    Jet<Order - 1> d;
    for (int s = 0; s < Jet<Order - 1>::kSize; ++s) {
      MultiIndex alpha = lower.exponents[s];
      const double factor = alpha[axis] + 1;
      alpha[axis] += 1;
      d[s] = factor * coeffs_[tables().slot_of(alpha)];
    }
    return d;
  }

  template <int Lower>
  Jet<Lower> truncate() const {
    static_assert(Lower <= Order);
    const auto& lower = detail::JetTables<Lower>::get();
    Jet<Lower> t;
    for (int s = 0; s < Jet<Lower>::kSize; ++s) {
      t[s] = coeffs_[tables().slot_of(lower.exponents[s])];
    }
    return t;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < kSize; ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < kSize; ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (double& c : a.coeffs_) c = -c;
    return a;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator+(Jet a, double s) {
    a.coeffs_[0] += s;
    return a;
  }
  friend Jet operator+(double s, Jet a) { return a + s; }
  friend Jet operator-(Jet a, double s) {
    a.coeffs_[0] -= s;
    return a;
  }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out;
    for (const auto& t : tables().products) {
      out.coeffs_[t.out] += a.coeffs_[t.lhs] * b.coeffs_[t.rhs];
    }
    return out;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

  // f(x0 + h) = sum_k taylor[k] h^k, where taylor[k] = f^(k)(x0) / k!.
  friend Jet compose(const Jet& x, const std::array<double, Order + 1>& taylor) {
    Jet h = x;
    h.coeffs_[0] = 0.0;
    Jet out(taylor[Order]);
    for (int k = Order - 1; k >= 0; --k) {
      out = out * h;
      out.coeffs_[0] += taylor[k];
    }
    return out;
  }

  friend Jet sin(const Jet& x) {
    const double s = std::sin(x.value());
    const double c = std::cos(x.value());
    const std::array<double, 4> cycle{s, c, -s, -c};
    std::array<double, Order + 1> t{};
    double fact = 1.0;
    for (int k = 0; k <= Order; ++k) {
      if (k > 0) fact *= k;
      t[k] = cycle[k % 4] / fact;
    }
    return compose(x, t);
  }

  friend Jet cos(const Jet& x) {
    const double s = std::sin(x.value());
    const double c = std::cos(x.value());
    const std::array<double, 4> cycle{c, -s, -c, s};
    std::array<double, Order + 1> t{};
    double fact = 1.0;
    for (int k = 0; k <= Order; ++k) {
      if (k > 0) fact *= k;
      t[k] = cycle[k % 4] / fact;
    }
    return compose(x, t);
  }

  friend Jet exp(const Jet& x) {
    const double e = std::exp(x.value());
    std::array<double, Order + 1> t{};
    double fact = 1.0;
    for (int k = 0; k <= Order; ++k) {
      if (k > 0) fact *= k;
      t[k] = e / fact;
    }
    return compose(x, t);
  }

  friend Jet log(const Jet& x) {
    const double a = x.value();
    std::array<double, Order + 1> t{};
    t[0] = std::log(a);
    double p = 1.0;
    for (int k = 1; k <= Order; ++k) {
      p *= a;
      t[k] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * p);
    }
    return compose(x, t);
  }

  friend Jet pow(const Jet& x, double exponent) {
    const double a = x.value();
    std::array<double, Order + 1> t{};
    double falling = 1.0;
    double fact = 1.0;
    for (int k = 0; k <= Order; ++k) {
      if (k > 0) {
        falling *= exponent - (k - 1);
        fact *= k;
      }
      t[k] = falling * std::pow(a, exponent - k) / fact;
    }
    return compose(x, t);
  }

  friend Jet sqrt(const Jet& x) { return pow(x, 0.5); }

  friend Jet reciprocal(const Jet& x) {
    const double inv = 1.0 / x.value();
    std::array<double, Order + 1> t{};
    double p = inv;
    for (int k = 0; k <= Order; ++k) {
      t[k] = ((k % 2 == 0) ? 1.0 : -1.0) * p;
      p *= inv;
    }
    return compose(x, t);
  }

 private:
  static const detail::JetTables<Order>& tables() { return detail::JetTables<Order>::get(); }

  std::array<double, kSize> coeffs_;
};

inline double reciprocal(double x) { return 1.0 / x; }

template <class T>
struct JetTraits {
  static constexpr int kOrder = 0;
};
template <int Order>
struct JetTraits<Jet<Order>> {
  static constexpr int kOrder = Order;
};

inline double value_of(double x) { return x; }
template <int Order>
double value_of(const Jet<Order>& x) {
  return x.value();
}

// Chart coordinates seeded as independent jet variables about `base`.
template <int Order>
std::array<Jet<Order>, kDim> seed_variables(const std::array<double, kDim>& base) {
  std::array<Jet<Order>, kDim> x;
  for (int i = 0; i < kDim; ++i) x[i] = Jet<Order>::variable(i, base[i]);
  return x;
}

}  // namespace geoball
