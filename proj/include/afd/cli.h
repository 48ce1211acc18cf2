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

#ifndef AFD_CLI_H_
#define AFD_CLI_H_

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "afd/common.h"

namespace afd {
namespace cli {

// Exit codes are a stable contract: 0 success, 2 usage/validation,
// 3 numerical failure, 4 unattainable specification.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUnattainable = 4;

using Cell = std::variant<FPType, std::string>;

// A uniform payload for every command: named columns and typed rows.
// Numbers are always emitted with 17 significant digits through one shared
// formatter, so the CSV and JSON forms agree digit for digit.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct OutputEnvelope {
  std::string format = "csv";  // "csv" or "json"
  std::map<std::string, std::string> meta;
  std::vector<std::string> warnings;
  Table payload;
};

// CSV payload to `out` (RFC-4180 style, LF endings); meta and warnings to
// `err`. JSON emits one object {meta, warnings, data} to `out`.
void Emit(const OutputEnvelope& envelope, std::ostream& out,
          std::ostream& err);

std::string FormatNumber(FPType value);

// Parses argv and runs one subcommand; returns the process exit code.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace cli
}  // namespace afd

#endif  // AFD_CLI_H_
