// Copyright 2026 The AFD Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "afd/numerics.h"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace afd {

namespace {

constexpr FPType kPi = 3.14159265358979323846;

// Lanczos g = 7, 9 coefficients (Godfrey's tabulation).
constexpr std::array<FPType, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

FPType LanczosSeries(FPType x_minus_1) {
  FPType a = kLanczos[0];
  for (int i = 1; i < static_cast<int>(kLanczos.size()); ++i) {
    a += kLanczos[i] / (x_minus_1 + i);
  }
  return a;
}

void CheckPositive(FPType x, const char* name) {
  if (!(x > 0)) {
    std::ostringstream msg;
    msg << name << " requires a positive argument, got " << x;
    throw DomainError(msg.str());
  }
}

}  // namespace

FPType Gamma(FPType x) {
  CheckPositive(x, "Gamma");
  if (x < 0.5) {
    // Reflection keeps the shifted Lanczos argument above 0.5.
    return kPi / (std::sin(kPi * x) * Gamma(1.0 - x));
  }
  const FPType z = x - 1.0;
  const FPType t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) *
         LanczosSeries(z);
}

FPType LnGamma(FPType x) {
  CheckPositive(x, "LnGamma");
  if (x < 0.5) {
    return std::log(kPi / std::sin(kPi * x)) - LnGamma(1.0 - x);
  }
  const FPType z = x - 1.0;
  const FPType t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
         std::log(LanczosSeries(z));
}

FPType GammaRatio(FPType numerator_arg, FPType denominator_arg) {
  return std::exp(LnGamma(numerator_arg) - LnGamma(denominator_arg));
}

Complex ComplexPow(const Complex& z, FPType a) {
  if (z == Complex(0.0, 0.0)) {
    if (a > 0) return Complex(0.0, 0.0);
    throw DomainError("ComplexPow: 0 cannot be raised to a non-positive power");
  }
  const FPType ln_r = std::log(std::abs(z));
  const FPType theta = std::arg(z);
  return std::polar(std::exp(a * ln_r), a * theta);
}

RootBracket::RootBracket(FPType lo_in, FPType hi_in, FPType tol_in)
    : lo(lo_in), hi(hi_in), tol(tol_in) {
  if (!(lo < hi)) throw DomainError("RootBracket: lo must be below hi");
  if (!(tol > 0)) throw DomainError("RootBracket: tol must be positive");
}

FPType BrentRoot(const std::function<FPType(FPType)>& f,
                 const RootBracket& bracket) {
  constexpr int kMaxIterations = 200;
  const FPType eps = std::numeric_limits<FPType>::epsilon();

  FPType a = bracket.lo;
  FPType b = bracket.hi;
  FPType fa = f(a);
  FPType fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) {
    throw DomainError("BrentRoot: objective does not change sign on bracket");
  }

  FPType c = a;
  FPType fc = fa;
  FPType d = b - a;
  FPType e = d;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const FPType tol1 = 2.0 * eps * std::abs(b) + 0.5 * bracket.tol;
    const FPType xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      FPType p, q;
      const FPType s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const FPType q1 = fa / fc;
        const FPType r = fb / fc;
        p = s * (2.0 * xm * q1 * (q1 - r) - (b - a) * (r - 1.0));
        q = (q1 - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      const FPType min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const FPType min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw NumericalError("BrentRoot: no convergence within 200 iterations");
}

namespace {

FPType SimpsonRecurse(const std::function<FPType(FPType)>& f, FPType lo,
                      FPType hi, FPType flo, FPType fmid, FPType fhi,
                      FPType whole, FPType eps, int depth) {
  if (depth > 50) {
    throw NumericalError("AdaptiveSimpson: recursion depth exceeded");
  }
  const FPType mid = 0.5 * (lo + hi);
  const FPType lmid = 0.5 * (lo + mid);
  const FPType rmid = 0.5 * (mid + hi);
  const FPType flm = f(lmid);
  const FPType frm = f(rmid);
  const FPType h = hi - lo;
  const FPType left = (h / 12.0) * (flo + 4.0 * flm + fmid);
  const FPType right = (h / 12.0) * (fmid + 4.0 * frm + fhi);
  const FPType split = left + right;
  if (std::abs(split - whole) <= 15.0 * eps) {
    return split + (split - whole) / 15.0;
  }
  return SimpsonRecurse(f, lo, mid, flo, flm, fmid, left, 0.5 * eps,
                        depth + 1) +
         SimpsonRecurse(f, mid, hi, fmid, frm, fhi, right, 0.5 * eps,
                        depth + 1);
}

}  // namespace

FPType AdaptiveSimpson(const std::function<FPType(FPType)>& f, FPType lo,
                       FPType hi, FPType tol) {
  if (!(tol > 0)) throw DomainError("AdaptiveSimpson: tol must be positive");
  if (lo == hi) return 0.0;
  const FPType mid = 0.5 * (lo + hi);
  const FPType flo = f(lo);
  const FPType fmid = f(mid);
  const FPType fhi = f(hi);
  const FPType whole = ((hi - lo) / 6.0) * (flo + 4.0 * fmid + fhi);
  const FPType eps = tol * std::max(FPType(1.0), std::abs(whole));
  return SimpsonRecurse(f, lo, hi, flo, fmid, fhi, whole, eps, 0);
}

FPType Derivative(const std::function<FPType(FPType)>& f, FPType x, int order,
                  FPType h) {
  if (!(h > 0)) throw DomainError("Derivative: h must be positive");
  const FPType f_m2 = f(x - 2 * h);
  const FPType f_m1 = f(x - h);
  const FPType f_p1 = f(x + h);
  const FPType f_p2 = f(x + 2 * h);
  switch (order) {
    case 1:
      return (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) / (12.0 * h);
    case 2: {
      const FPType f_0 = f(x);
      return (-f_p2 + 16.0 * f_p1 - 30.0 * f_0 + 16.0 * f_m1 - f_m2) /
             (12.0 * h * h);
    }
    default:
      throw DomainError("Derivative: order must be 1 or 2");
  }
}

Eigen::MatrixXd FornbergWeights(FPType x0, const ArrayX& nodes,
                                int max_order) {
  const int n = static_cast<int>(nodes.size());
  if (n <= max_order) {
    throw DomainError("FornbergWeights: need more nodes than max_order");
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, max_order + 1);
  FPType c1 = 1.0;
  FPType c4 = nodes[0] - x0;
  w(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    FPType c2 = 1.0;
    const FPType c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const FPType c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          w(i, k) = c1 * (k * w(i - 1, k - 1) - c5 * w(i - 1, k)) / c2;
        }
        w(i, 0) = -c1 * c5 * w(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) {
        w(j, k) = (c4 * w(j, k) - k * w(j, k - 1)) / c3;
      }
      w(j, 0) = c4 * w(j, 0) / c3;
    }
    c1 = c2;
  }
  return w;
}

}  // namespace afd
