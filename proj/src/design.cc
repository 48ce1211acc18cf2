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

#include "afd/design.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "afd/numerics.h"

namespace afd {

namespace {

constexpr FPType kPi = 3.14159265358979323846;
constexpr FPType kTwoPi = 2.0 * kPi;
constexpr FPType kLn10 = 2.30258509299404568402;

// A_p placeholder: the B_u-only ratios ignore it.
FilterConstants RatioConstants(FPType b_p, FPType b_u) {
  return FilterConstants(0.1, b_p, b_u);
}

FPType RatioAt(const RatioKind& kind, FPType b_p, FPType b_u) {
  return RatioValue(kind, RatioConstants(b_p, b_u));
}

// Locates an interior extremum of the ratio on the bracket, if any, by a
// coarse scan plus golden-section refinement. Returns the bracket low end
// when the ratio is monotone.
FPType BranchStart(const RatioKind& kind, FPType b_p) {
  constexpr int kScan = 512;
  FPType prev = RatioAt(kind, b_p, kBuBracketLo);
  FPType prev_b = kBuBracketLo;
  int prev_sign = 0;
  const FPType log_lo = std::log(kBuBracketLo);
  const FPType log_hi = std::log(kBuBracketHi);
  for (int i = 1; i <= kScan; ++i) {
    const FPType b = std::exp(log_lo + (log_hi - log_lo) * i / kScan);
    const FPType r = RatioAt(kind, b_p, b);
    const int sign = (r > prev) ? 1 : (r < prev ? -1 : prev_sign);
    if (prev_sign != 0 && sign != 0 && sign != prev_sign) {
      // Extremum between prev_b and b: refine by golden section on |slope
      // direction| using the maximizing/minimizing side.
      const bool maximum = prev_sign > 0;
      FPType lo = std::max(kBuBracketLo, prev_b - (b - prev_b));
      FPType hi = b;
      const FPType inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
      const auto value = [&](FPType x) {
        const FPType v = RatioAt(kind, b_p, x);
        return maximum ? v : -v;
      };
      FPType x1 = hi - inv_phi * (hi - lo);
      FPType x2 = lo + inv_phi * (hi - lo);
      FPType f1 = value(x1);
      FPType f2 = value(x2);
      while (hi - lo > 1e-10) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + inv_phi * (hi - lo);
          f2 = value(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - inv_phi * (hi - lo);
          f1 = value(x1);
        }
      }
      return 0.5 * (lo + hi);
    }
    if (sign != 0) prev_sign = sign;
    prev = r;
    prev_b = b;
  }
  return kBuBracketLo;
}

}  // namespace

FPType EstimateBp(std::optional<FPType> beta_peak) {
  if (!beta_peak.has_value()) return 1.0;
  if (!(*beta_peak > 0)) {
    throw DomainError("EstimateBp: beta_peak must be positive");
  }
  return *beta_peak;
}

BuEstimate SolveBu(const RatioKind& kind, FPType observed, FPType b_p) {
  if (kind.DependsOnlyOnAp()) {
    throw DomainError("SolveBu: ratio " + kind.Name() +
                      " depends only on A_p, not B_u");
  }
  if (!(b_p > 0)) throw DomainError("SolveBu: b_p must be positive");
  if (!std::isfinite(observed)) {
    throw DomainError("SolveBu: observed value must be finite");
  }

  BuEstimate out;
  const FPType branch_lo = BranchStart(kind, b_p);
  if (branch_lo > kBuBracketLo) {
    // Warn only when the observation is genuinely ambiguous, i.e. also
    // attainable on the excluded rising branch below the extremum.
    const FPType r_start = RatioAt(kind, b_p, kBuBracketLo);
    const FPType r_ext = RatioAt(kind, b_p, branch_lo);
    if ((observed > std::min(r_start, r_ext)) &&
        (observed < std::max(r_start, r_ext))) {
      std::ostringstream note;
      note << "observed " << kind.Name() << "=" << observed
           << " is also attainable on the excluded branch below B_u="
           << branch_lo << "; the solution above the extremum is returned";
      out.warnings.push_back(note.str());
    }
  }

  const FPType r_start = RatioAt(kind, b_p, branch_lo);
  const FPType r_end = RatioAt(kind, b_p, kBuBracketHi);
  const bool rising = r_end > r_start;
  const bool beyond_end = rising ? observed > r_end : observed < r_end;
  const bool beyond_start = rising ? observed < r_start : observed > r_start;

  if (beyond_end) {
    out.type = BuEstimate::kLowerBound;
    out.value = kBuBracketHi;
    std::ostringstream note;
    note << "observed " << kind.Name() << "=" << observed
         << " is only reached beyond B_u=" << kBuBracketHi
         << " (ratio reaches " << r_end << " at the bracket end)";
    if (kind.kind == RatioKind::kAlpha) {
      note << "; alpha has a large-B_u infimum of 1.7122";
    }
    out.warnings.push_back(note.str());
    return out;
  }
  if (beyond_start) {
    std::ostringstream msg;
    msg << "SolveBu: observed " << kind.Name() << "=" << observed
        << " is outside the attainable range [" << std::min(r_start, r_end)
        << ", " << std::max(r_start, r_end) << "] on B_u in [" << branch_lo
        << ", " << kBuBracketHi << "]";
    throw UnattainableError(msg.str());
  }

  const FPType root = BrentRoot(
      [&](FPType b) { return RatioAt(kind, b_p, b) - observed; },
      RootBracket(branch_lo, kBuBracketHi, 1e-12));
  out.type = BuEstimate::kPoint;
  out.value = root;

  // Sensitivity of the estimate to the observed ratio.
  const FPType h = std::max(1e-6, 1e-6 * root);
  const FPType slope =
      (RatioAt(kind, b_p, root + h) - RatioAt(kind, b_p, root - h)) /
      (2.0 * h);
  if (slope == 0 || std::abs(1.0 / slope) > kSensitivityLimit) {
    std::ostringstream note;
    note << "sensitivity: |dB_u/d" << kind.Name() << "| = "
         << (slope == 0 ? std::numeric_limits<FPType>::infinity()
                        : std::abs(1.0 / slope))
         << " at the root; the estimate is unreliable";
    out.warnings.push_back(note.str());
  }
  if (kind.kind == RatioKind::kAlpha) {
    out.warnings.push_back(
        "alpha varies slowly with B_u; use it for bounds rather than point "
        "estimates");
  }
  if (root < kBuEnvelopeMin) {
    std::ostringstream note;
    note << "B_u=" << root
         << " violates the impulse-envelope constraint B_u >= 3/2";
    out.warnings.push_back(note.str());
  }
  return out;
}

std::string CharName::Name() const {
  switch (kind) {
    case kQerb: return "q_erb";
    case kQn: return QnFieldName(n);
    case kSbeta: return "s_beta";
    case kNbeta: return "n_beta";
  }
  return "unknown";
}

CharName ParseCharName(const std::string& token) {
  if (token == "q_erb" || token == "qerb") return CharName::Qerb();
  if (token == "s_beta" || token == "sbeta") return CharName::Sbeta();
  if (token == "n_beta" || token == "nbeta") return CharName::Nbeta();
  if (token.rfind("q_", 0) == 0 || token.rfind("q", 0) == 0) {
    const std::size_t digits = (token.rfind("q_", 0) == 0) ? 2 : 1;
    const FPType n = std::strtod(token.c_str() + digits, nullptr);
    if (n > 0 && n <= 60) return CharName::Qn(n);
  }
  throw DomainError("unknown characteristic name: " + token);
}

FPType SolveAp(const CharName& characteristic, FPType observed, FPType b_p,
               FPType b_u) {
  if (!(observed > 0)) {
    throw DomainError("SolveAp: observed value must be positive");
  }
  if (!(b_p > 0) || !(b_u > 0)) {
    throw DomainError("SolveAp: b_p and B_u must be positive");
  }
  switch (characteristic.kind) {
    case CharName::kQerb:
      if (!(b_u > 0.5)) {
        throw DomainError("SolveAp: Q_erb requires B_u > 1/2");
      }
      return b_p * GammaRatio(b_u, b_u - 0.5) /
             (std::sqrt(kPi) * observed);
    case CharName::kQn:
      return b_p /
             (2.0 * observed *
              std::sqrt(std::pow(10.0, characteristic.n / (10.0 * b_u)) -
                        1.0));
    case CharName::kSbeta:
      return std::sqrt((20.0 / kLn10) * b_u / observed);
    case CharName::kNbeta:
      return b_u / (kTwoPi * observed);
  }
  throw DomainError("SolveAp: unhandled characteristic");
}

FPType SolveApFromRatio(const RatioKind& kind, FPType observed) {
  if (!(observed > 0)) {
    throw DomainError("SolveApFromRatio: observed value must be positive");
  }
  switch (kind.kind) {
    case RatioKind::kSOverN:
      return (40.0 * kPi / kLn10) / observed;
    case RatioKind::kPhiOverN:
      return observed / kPi;
    default:
      throw DomainError("SolveApFromRatio: ratio " + kind.Name() +
                        " is not a function of A_p alone");
  }
}

DesignResult RunDesign(const DesignSpec& spec) {
  std::vector<std::string> warnings;
  const FPType b_p = EstimateBp(spec.beta_peak);

  FPType b_u = 0;
  if (std::holds_alternative<FPType>(spec.bu_source)) {
    b_u = std::get<FPType>(spec.bu_source);
    if (!(b_u > 0)) throw DomainError("RunDesign: fixed B_u must be positive");
  } else {
    const auto& [kind, observed] =
        std::get<std::pair<RatioKind, FPType>>(spec.bu_source);
    if (!kind.DependsOnlyOnBu()) {
      throw DomainError("RunDesign: B_u source must be a B_u-only ratio");
    }
    if (kind.kind == RatioKind::kAlpha && !spec.allow_alpha) {
      throw DomainError(
          "RunDesign: alpha is not a reliable B_u source; pass the explicit "
          "override to use it anyway");
    }
    BuEstimate estimate = SolveBu(kind, observed, b_p);
    warnings.insert(warnings.end(), estimate.warnings.begin(),
                    estimate.warnings.end());
    if (estimate.type == BuEstimate::kLowerBound) {
      std::ostringstream msg;
      msg << "RunDesign: the observed ratio pins only a lower bound B_u >= "
          << estimate.value << ", not a point estimate";
      throw UnattainableError(msg.str());
    }
    b_u = estimate.value;
  }
  if (b_u < kBuEnvelopeMin) {
    std::ostringstream note;
    note << "B_u=" << b_u
         << " violates the impulse-envelope constraint B_u >= 3/2";
    if (std::holds_alternative<FPType>(spec.bu_source)) {
      warnings.push_back(note.str());
    } else if (warnings.empty() ||
               warnings.back().find("envelope") == std::string::npos) {
      warnings.push_back(note.str());
    }
  }

  FPType a_p = 0;
  bool paired_with_q10 = false;
  if (std::holds_alternative<std::pair<CharName, FPType>>(spec.ap_source)) {
    const auto& [name, observed] =
        std::get<std::pair<CharName, FPType>>(spec.ap_source);
    a_p = SolveAp(name, observed, b_p, b_u);
    paired_with_q10 = name.kind == CharName::kQerb ||
                      (name.kind == CharName::kQn && name.n == 10);
  } else {
    const auto& [kind, observed] =
        std::get<std::pair<RatioKind, FPType>>(spec.ap_source);
    a_p = SolveApFromRatio(kind, observed);
  }

  // The combined set {Q_erb, Q_10} (equivalently alpha plus either one)
  // identifies the constants poorly.
  if (std::holds_alternative<std::pair<RatioKind, FPType>>(spec.bu_source)) {
    const auto& kind =
        std::get<std::pair<RatioKind, FPType>>(spec.bu_source).first;
    const bool alpha_like =
        kind.kind == RatioKind::kAlpha ||
        (kind.kind == RatioKind::kQerbOverQn && kind.n == 10);
    if (alpha_like && paired_with_q10) {
      warnings.push_back(
          "advisory: the set {Q_erb, Q_10} (alpha plus either) is a poorly "
          "identifying combination; prefer a mixed magnitude/phase set");
    }
  }

  if (a_p > kSharpRegimeMaxAp) {
    std::ostringstream note;
    note << "A_p=" << a_p << " exceeds " << kSharpRegimeMaxAp
         << "; the sharp-filter approximation is degraded";
    warnings.push_back(note.str());
  }

  return DesignResult{FilterConstants(a_p, b_p, b_u), std::move(warnings)};
}

std::vector<BuConstraint> BuConstraintsFrom(const ConstraintInputs& inputs) {
  std::vector<BuConstraint> out;
  out.push_back({"impulse-envelope growth", BuConstraint::kLowerBound,
                 kBuEnvelopeMin, 0,
                 "click responses grow then decay; a pure-decay envelope "
                 "needs B_u < 3/2"});

  if (inputs.alpha_range) {
    const auto [lo, hi] = *inputs.alpha_range;
    if (!(lo <= hi)) {
      throw DomainError("BuConstraintsFrom: alpha interval is inverted");
    }
    // Alpha decreases with B_u, so the interval's high end yields the lower
    // bound on B_u; the low end maps beyond the bracket and is dropped.
    const BuEstimate bound = SolveBu(RatioKind::Alpha(), hi, 1.0);
    out.push_back({"alpha range", BuConstraint::kLowerBound, bound.value, 0,
                   "reported Q_erb/Q_10 across species and CF"});
  }

  if (inputs.g1) {
    const BuEstimate point = SolveBu(RatioKind::G(), *inputs.g1, 1.0);
    if (point.type != BuEstimate::kPoint) {
      throw UnattainableError("BuConstraintsFrom: g1 does not pin B_u");
    }
    out.push_back({"g = g1", BuConstraint::kPoint, point.value, 0,
                   "Q_erb/N_beta from low-SPL nerve-fiber frequency "
                   "responses, CF-invariant"});
  }

  if (inputs.r_range || inputs.eta_range) {
    if (!inputs.r_range || !inputs.eta_range) {
      throw DomainError(
          "BuConstraintsFrom: g2 needs both the tuning ratio r and eta");
    }
    const auto [r_lo, r_hi] = *inputs.r_range;
    const auto [e_lo, e_hi] = *inputs.eta_range;
    if (!(r_lo <= r_hi) || !(e_lo <= e_hi)) {
      throw DomainError("BuConstraintsFrom: r or eta interval is inverted");
    }
    const FPType g2_hi = r_hi * e_hi;
    const FPType g2_lo = r_lo * e_lo;
    const BuEstimate lower = SolveBu(RatioKind::G(), g2_hi, 1.0);
    if (inputs.include_g2_upper) {
      const BuEstimate upper = SolveBu(RatioKind::G(), g2_lo, 1.0);
      out.push_back({"g = g2 = r*eta", BuConstraint::kInterval, lower.value,
                     upper.value,
                     "tuning ratio times emission-delay ratio; the upper "
                     "bound is unreliable (high sensitivity)"});
    } else {
      out.push_back({"g = g2 = r*eta", BuConstraint::kLowerBound, lower.value,
                     0,
                     "tuning ratio times emission-delay ratio; upper bound "
                     "suppressed as unreliable"});
    }
  }

  out.push_back({"historical", BuConstraint::kPoint, 4.0, 0,
                 "fixed-order fits to simultaneous-masking tuning curves; "
                 "orders 3..5 were studied"});
  return out;
}

}  // namespace afd
