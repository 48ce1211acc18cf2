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

#ifndef AFD_COMMON_H_
#define AFD_COMMON_H_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace afd {

inline constexpr const char* kVersion = "0.1.0";

using FPType = double;
using Complex = std::complex<FPType>;
using ArrayX = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

// Above this pole real part the sharp-filter approximation is degraded and
// results carry a warning flag rather than an error.
inline constexpr FPType kSharpRegimeMaxAp = 0.25;

// Validation failures: bad arguments, values outside an operation's domain.
// The CLI maps these to exit code 2.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Numerical failures: non-convergence, depth caps, failed extraction.
// The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

// A requested characteristic cannot be recovered from the sampled response
// (e.g. an n-dB bandwidth that never brackets within the grid).
class ExtractionError : public NumericalError {
 public:
  explicit ExtractionError(const std::string& what) : NumericalError(what) {}
};

// The specification is outside the attainable range of the chosen ratio or
// characteristic. The CLI maps these to exit code 4.
class UnattainableError : public std::runtime_error {
 public:
  explicit UnattainableError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace afd

#endif  // AFD_COMMON_H_
