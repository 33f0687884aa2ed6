#include "riemann_zeta.hpp"

#include <array>
#include <cmath>

#include "common.hpp"

namespace crdet {

namespace {

// B_2, B_4, ..., B_28
constexpr std::array<double, 14> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
};

constexpr int kCutoff = 30;  // boundary of the summed head

double pochhammer(double s, int n) {
  double p = 1.0;
  for (int l = 0; l < n; ++l) p *= s + l;
  return p;
}

// d/ds of s(s+1)...(s+n-1) as a sum of products; exact at zeros of factors
double pochhammer_deriv(double s, int n) {
  double sum = 0.0;
  for (int l = 0; l < n; ++l) {
    double p = 1.0;
    for (int m = 0; m < n; ++m) {
      if (m != l) p *= s + m;
    }
    sum += p;
  }
  return sum;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// direct Euler-Maclaurin; the head sum cancels badly for s well below 0, so
// callers reflect instead of coming here with s <= -0.5
double zeta_em(double s) {
  const double K = kCutoff;
  double head = 0.0;
  for (int k = kCutoff - 1; k >= 1; --k) head += std::pow(double(k), -s);
  double v = head + std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -s);
  for (int i = 1; i <= int(kBernoulli.size()); ++i) {
    v += kBernoulli[i - 1] / factorial(2 * i) * pochhammer(s, 2 * i - 1) *
         std::pow(K, -s - 2 * i + 1);
  }
  return v;
}

double zeta_em_deriv(double s) {
  const double K = kCutoff;
  const double lnK = std::log(K);
  double v = 0.0;
  for (int k = 2; k < kCutoff; ++k) v -= std::log(double(k)) * std::pow(double(k), -s);
  v += std::pow(K, 1.0 - s) * (-lnK / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
  v -= 0.5 * lnK * std::pow(K, -s);
  for (int i = 1; i <= int(kBernoulli.size()); ++i) {
    const double kp = std::pow(K, -s - 2 * i + 1);
    v += kBernoulli[i - 1] / factorial(2 * i) *
         (pochhammer_deriv(s, 2 * i - 1) - lnK * pochhammer(s, 2 * i - 1)) * kp;
  }
  return v;
}

// sin(pi s / 2) with the argument reduced before the multiply by pi
double sin_pi_half(double s) {
  double m = std::fmod(s, 4.0);  // exact
  if (m > 2.0) m -= 4.0;
  if (m < -2.0) m += 4.0;
  return std::sin(0.5 * kPi * m);
}

double digamma(double x) {
  double v = 0.0;
  while (x < 15.0) {
    v -= 1.0 / x;
    x += 1.0;
  }
  v += std::log(x) - 0.5 / x;
  double xp = x * x;
  for (int i = 1; i <= 7; ++i) {
    v -= kBernoulli[i - 1] / (2.0 * i) / xp;
    xp *= x * x;
  }
  return v;
}

bool is_nonpositive_even_integer(double s) {
  return s <= 0.0 && s == std::rint(s) && std::fmod(s, 2.0) == 0.0;
}

}  // namespace

double riemann_zeta(double s) {
  if (s == 1.0) throw Error("riemann_zeta: pole at s = 1");
  if (s > -0.5) return zeta_em(s);
  if (is_nonpositive_even_integer(s)) return 0.0;  // trivial zeros
  // reflection: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * sin_pi_half(s) * std::tgamma(1.0 - s) *
         zeta_em(1.0 - s);
}

double riemann_zeta_deriv(double s) {
  if (s == 1.0) throw Error("riemann_zeta_deriv: pole at s = 1");
  if (s > -0.5) return zeta_em_deriv(s);
  if (is_nonpositive_even_integer(s)) {
    // only the sin factor contributes through its zero:
    // zeta'(-2k) = (-1)^k (2k)! zeta(2k+1) / (2^{2k+1} pi^{2k})
    const int k = int(std::rint(-s / 2.0));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(2 * k) * zeta_em(2.0 * k + 1.0) /
           (std::pow(2.0, 2 * k + 1) * std::pow(kPi, 2 * k));
  }
  const double z = riemann_zeta(s);
  const double cot = std::cos(0.5 * kPi * s) / sin_pi_half(s);
  return z * (std::log(2.0 * kPi) + 0.5 * kPi * cot - digamma(1.0 - s)) -
         std::pow(2.0, s) * std::pow(kPi, s - 1.0) * sin_pi_half(s) * std::tgamma(1.0 - s) *
             zeta_em_deriv(1.0 - s);
}

double euler_gamma() {
  static const double value = [] {
    const int n = 30;
    double h = 0.0;
    for (int k = n; k >= 1; --k) h += 1.0 / k;
    double g = h - std::log(double(n)) - 0.5 / n;
    double npow = double(n) * n;
    for (int i = 1; i <= 10; ++i) {
      g += kBernoulli[i - 1] / (2.0 * i) / npow;
      npow *= double(n) * n;
    }
    return g;
  }();
  return value;
}

}  // namespace crdet
