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

#include "afd/cli.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "afd/characteristics.h"
#include "afd/design.h"
#include "afd/errmap.h"
#include "afd/filterbank.h"
#include "afd/response.h"

namespace afd {
namespace cli {

namespace {

std::string CsvEscape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string JsonEscape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char ch : text) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string CellText(const Cell& cell) {
  if (std::holds_alternative<std::string>(cell)) {
    return std::get<std::string>(cell);
  }
  const FPType v = std::get<FPType>(cell);
  return std::isfinite(v) ? FormatNumber(v) : std::string();
}

void EmitCsv(const OutputEnvelope& e, std::ostream& out, std::ostream& err) {
  for (const auto& [key, value] : e.meta) {
    err << "# " << key << ": " << value << "\n";
  }
  for (const std::string& w : e.warnings) err << "warning: " << w << "\n";
  for (std::size_t i = 0; i < e.payload.columns.size(); ++i) {
    if (i) out << ',';
    out << CsvEscape(e.payload.columns[i]);
  }
  out << '\n';
  for (const auto& row : e.payload.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << CsvEscape(CellText(row[i]));
    }
    out << '\n';
  }
}

// Hand-rolled so that numeric text is byte-identical with the CSV path.
void EmitJson(const OutputEnvelope& e, std::ostream& out) {
  out << "{\n  \"meta\": {";
  bool first = true;
  for (const auto& [key, value] : e.meta) {
    out << (first ? "" : ", ") << '"' << JsonEscape(key) << "\": \""
        << JsonEscape(value) << '"';
    first = false;
  }
  out << "},\n  \"warnings\": [";
  for (std::size_t i = 0; i < e.warnings.size(); ++i) {
    out << (i ? ", " : "") << '"' << JsonEscape(e.warnings[i]) << '"';
  }
  out << "],\n  \"data\": [\n";
  for (std::size_t r = 0; r < e.payload.rows.size(); ++r) {
    const auto& row = e.payload.rows[r];
    out << "    {";
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? ", " : "") << '"' << JsonEscape(e.payload.columns[i])
          << "\": ";
      if (std::holds_alternative<std::string>(row[i])) {
        out << '"' << JsonEscape(std::get<std::string>(row[i])) << '"';
      } else {
        const FPType v = std::get<FPType>(row[i]);
        if (std::isfinite(v)) {
          out << FormatNumber(v);
        } else {
          out << "null";
        }
      }
    }
    out << '}' << (r + 1 < e.payload.rows.size() ? "," : "") << '\n';
  }
  out << "  ]\n}\n";
}

struct CommonFlags {
  std::string format = "csv";
};

void AddFormatOption(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--format", flags->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void BaseMeta(OutputEnvelope* e, const std::string& command) {
  e->meta["tool"] = "afd";
  e->meta["version"] = kVersion;
  e->meta["command"] = command;
}

void EchoConstants(OutputEnvelope* e, const FilterConstants& c) {
  e->meta["a_p"] = FormatNumber(c.a_p);
  e->meta["b_p"] = FormatNumber(c.b_p);
  e->meta["b_u"] = FormatNumber(c.b_u);
  if (!c.InSharpRegime()) {
    e->warnings.push_back(
        "A_p exceeds 0.25; the sharp-filter approximation is degraded");
  }
}

std::pair<std::string, FPType> SplitObservation(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
    throw DomainError("expected <name>=<value>, got: " + arg);
  }
  char* end = nullptr;
  const FPType value = std::strtod(arg.c_str() + eq + 1, &end);
  if (end == arg.c_str() + eq + 1 || *end != '\0') {
    throw DomainError("bad numeric value in: " + arg);
  }
  return {arg.substr(0, eq), value};
}

std::pair<FPType, FPType> SplitInterval(const std::string& arg) {
  const std::size_t comma = arg.find(',');
  if (comma == std::string::npos) {
    throw DomainError("expected <lo>,<hi>, got: " + arg);
  }
  char* end = nullptr;
  const FPType lo = std::strtod(arg.c_str(), &end);
  if (end != arg.c_str() + comma) throw DomainError("bad interval: " + arg);
  const FPType hi = std::strtod(arg.c_str() + comma + 1, &end);
  if (*end != '\0') throw DomainError("bad interval: " + arg);
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// chars

struct CharsArgs {
  FPType ap = 0, bp = 0, bu = 0;
  std::vector<FPType> ndb;
  CommonFlags common;
};

OutputEnvelope RunChars(const CharsArgs& args) {
  const FilterConstants c(args.ap, args.bp, args.bu);
  std::set<FPType> levels(args.ndb.begin(), args.ndb.end());
  if (levels.empty()) levels = {3, 10, 15};

  OutputEnvelope e;
  BaseMeta(&e, "chars");
  EchoConstants(&e, c);

  const Characteristics ch = ClosedForm(c, levels);
  for (const std::string& caveat : ch.caveats) e.warnings.push_back(caveat);

  e.payload.columns = {"quantity", "value", "unit"};
  auto row = [&e](const std::string& name, FPType value,
                  const std::string& unit) {
    e.payload.rows.push_back({Cell{name}, Cell{value}, Cell{unit}});
  };
  row("beta_peak", ch.beta_peak, "beta");
  for (const auto& [n, q] : ch.q_n) row(QnFieldName(n), q, "dimensionless");
  row("q_erb", ch.q_erb, "dimensionless");
  row("s_beta", ch.s_beta, "dB");
  row("beta_max_n", ch.beta_max_n, "beta");
  row("n_beta", ch.n_beta, "cycles");
  row("phi_accum", ch.phi_accum, "cycles");

  row("alpha", RatioValue(RatioKind::Alpha(), c), "dimensionless");
  row("g", RatioValue(RatioKind::G(), c), "dimensionless");
  row("erb_times_n", RatioValue(RatioKind::ErbTimesN(), c), "cycles");
  row("erb2_times_s", RatioValue(RatioKind::Erb2TimesS(), c), "dB");
  for (FPType n : levels) {
    RatioKind qq = RatioKind::QerbOverQn(n);
    row(qq.Name(), RatioValue(qq, c), "dimensionless");
    RatioKind bn = RatioKind::BwnTimesN(n);
    row(bn.Name(), RatioValue(bn, c), "cycles");
    RatioKind bs = RatioKind::Bwn2TimesS(n);
    row(bs.Name(), RatioValue(bs, c), "dB");
  }
  row("s_over_n", RatioValue(RatioKind::SOverN(), c), "dB/cycle");
  row("phi_over_n", RatioValue(RatioKind::PhiOverN(), c), "dimensionless");
  e.format = args.common.format;
  return e;
}

// ---------------------------------------------------------------------------
// bode

struct BodeArgs {
  std::string cls;
  FPType ap = 0, bp = 0, bu = 0;
  int points = 0;
  FPType beta_min = -1, beta_max = -1;
  CommonFlags common;
};

OutputEnvelope RunBode(const BodeArgs& args) {
  const FilterConstants c(args.ap, args.bp, args.bu);
  const FilterClass cls = ParseFilterClass(args.cls);

  ArrayX grid;
  if (args.points > 0 || args.beta_min >= 0 || args.beta_max >= 0) {
    const int n = args.points > 0 ? args.points : 4096;
    const FPType lo = args.beta_min >= 0 ? args.beta_min : 0.01 * c.b_p;
    const FPType hi = args.beta_max >= 0 ? args.beta_max : 3.0 * c.b_p;
    if (!(hi > lo)) throw DomainError("bode: beta range is empty");
    grid = ArrayX::LinSpaced(n, lo, hi);
  } else {
    grid = DefaultBetaGrid(c);
  }
  const FrequencyResponse fr = SampleResponse(cls, c, grid);

  OutputEnvelope e;
  BaseMeta(&e, "bode");
  EchoConstants(&e, c);
  e.meta["class"] = FilterClassName(cls);
  e.payload.columns = {"beta", "mag_db", "phase_cycles"};
  e.payload.rows.reserve(fr.beta.size());
  for (Eigen::Index i = 0; i < fr.beta.size(); ++i) {
    e.payload.rows.push_back(
        {Cell{fr.beta[i]}, Cell{fr.mag_db[i]}, Cell{fr.phase_cycles[i]}});
  }
  e.format = args.common.format;
  return e;
}

// ---------------------------------------------------------------------------
// design

struct DesignArgs {
  FPType beta_peak = -1;
  std::string bu_from;
  FPType bu_fixed = -1;
  std::string ap_from;
  bool allow_alpha = false;
  CommonFlags common;
};

OutputEnvelope RunDesignCmd(const DesignArgs& args) {
  DesignSpec spec;
  if (args.beta_peak >= 0) spec.beta_peak = args.beta_peak;
  spec.allow_alpha = args.allow_alpha;

  if (!args.bu_from.empty() && args.bu_fixed >= 0) {
    throw DomainError("design: give either --bu-from or --bu, not both");
  }
  if (args.bu_from.empty() && args.bu_fixed < 0) {
    throw DomainError("design: a B_u source is required");
  }
  if (!args.bu_from.empty()) {
    const auto [name, value] = SplitObservation(args.bu_from);
    spec.bu_source = std::make_pair(ParseRatioKind(name), value);
  } else {
    spec.bu_source = args.bu_fixed;
  }

  if (args.ap_from.empty()) {
    throw DomainError("design: --ap-from is required");
  }
  const auto [ap_name, ap_value] = SplitObservation(args.ap_from);
  try {
    spec.ap_source = std::make_pair(ParseCharName(ap_name), ap_value);
  } catch (const DomainError&) {
    const RatioKind kind = ParseRatioKind(ap_name);
    spec.ap_source = std::make_pair(kind, ap_value);
  }

  const DesignResult result = RunDesign(spec);

  OutputEnvelope e;
  BaseMeta(&e, "design");
  e.warnings = result.warnings;
  e.payload.columns = {"constant", "value"};
  e.payload.rows.push_back({Cell{std::string("a_p")},
                            Cell{result.constants.a_p}});
  e.payload.rows.push_back({Cell{std::string("b_p")},
                            Cell{result.constants.b_p}});
  e.payload.rows.push_back({Cell{std::string("b_u")},
                            Cell{result.constants.b_u}});
  e.format = args.common.format;
  return e;
}

// ---------------------------------------------------------------------------
// constraints

struct ConstraintsArgs {
  std::string alpha, r, eta;
  FPType g1 = -1;
  bool include_g2_upper = false;
  CommonFlags common;
};

OutputEnvelope RunConstraints(const ConstraintsArgs& args) {
  ConstraintInputs inputs;
  if (!args.alpha.empty()) inputs.alpha_range = SplitInterval(args.alpha);
  if (args.g1 >= 0) inputs.g1 = args.g1;
  if (!args.r.empty()) inputs.r_range = SplitInterval(args.r);
  if (!args.eta.empty()) inputs.eta_range = SplitInterval(args.eta);
  inputs.include_g2_upper = args.include_g2_upper;

  const std::vector<BuConstraint> constraints = BuConstraintsFrom(inputs);

  OutputEnvelope e;
  BaseMeta(&e, "constraints");
  e.payload.columns = {"label", "kind", "lo", "hi", "provenance"};
  for (const BuConstraint& c : constraints) {
    std::string kind = c.kind == BuConstraint::kLowerBound ? "lower-bound"
                       : c.kind == BuConstraint::kPoint    ? "point"
                                                           : "interval";
    Cell hi = c.kind == BuConstraint::kInterval ? Cell{c.hi}
                                                : Cell{std::string()};
    e.payload.rows.push_back(
        {Cell{c.label}, Cell{kind}, Cell{c.lo}, hi, Cell{c.provenance}});
  }
  e.format = args.common.format;
  return e;
}

// ---------------------------------------------------------------------------
// filterbank

struct FilterbankArgs {
  std::string recipe;
  FPType cf_min = 0.125, cf_max = 16.0;
  int points = 40;
  std::string spacing = "log";
  CommonFlags common;
};

OutputEnvelope RunFilterbank(const FilterbankArgs& args) {
  const CfGrid grid = args.spacing == "linear"
                          ? CfGrid::Linear(args.cf_min, args.cf_max,
                                           args.points)
                          : CfGrid::Logarithmic(args.cf_min, args.cf_max,
                                                args.points);
  const FilterbankTable table = BuildTable(args.recipe, grid);

  OutputEnvelope e;
  BaseMeta(&e, "filterbank");
  e.meta["recipe"] = table.recipe;
  e.meta["cf_unit"] = table.cf_unit;
  e.payload.columns = {"cf_khz", "q_erb_source", "q_erb",
                       "a_p",    "b_p",          "b_u",
                       "flags"};
  for (const FilterbankRow& row : table.rows) {
    std::string flags;
    for (std::size_t i = 0; i < row.flags.size(); ++i) {
      if (i) flags += ';';
      flags += row.flags[i];
    }
    e.payload.rows.push_back({Cell{row.cf_khz}, Cell{row.q_erb_source},
                              Cell{row.q_erb}, Cell{row.a_p}, Cell{row.b_p},
                              Cell{row.b_u}, Cell{flags}});
  }
  e.format = args.common.format;
  return e;
}

// ---------------------------------------------------------------------------
// errmap

struct ErrmapArgs {
  std::string cls;
  FPType ap_min = 0.02, ap_max = 0.25;
  FPType bu_min = 1.5, bu_max = 12.0;
  int ap_steps = 24, bu_steps = 24;
  std::vector<std::string> chars;
  int threads = 0;
  CommonFlags common;
};

OutputEnvelope RunErrmap(const ErrmapArgs& args) {
  const FilterClass cls = ParseFilterClass(args.cls);
  if (cls == FilterClass::kSharp) {
    throw DomainError("errmap: the sharp class is the reference, not a map");
  }
  const ArrayX ap = ArrayX::LinSpaced(args.ap_steps, args.ap_min, args.ap_max);
  const ArrayX bu = ArrayX::LinSpaced(args.bu_steps, args.bu_min, args.bu_max);
  const std::vector<std::string> chars =
      args.chars.empty() ? kDefaultSweepCharacteristics : args.chars;

  const ErrorGrid grid = Sweep(cls, ap, bu, chars, false, args.threads);
  const FPType failure = FailureFraction(grid);
  if (failure > 0.5) {
    std::ostringstream msg;
    msg << "errmap: " << failure * 100 << "% of cells failed extraction";
    throw NumericalError(msg.str());
  }

  OutputEnvelope e;
  BaseMeta(&e, "errmap");
  e.meta["class"] = FilterClassName(cls);
  e.meta["b_p"] = FormatNumber(grid.b_p);
  if (failure > 0) {
    std::ostringstream note;
    note << "failed cells: " << failure * 100 << "%";
    e.warnings.push_back(note.str());
  }
  e.payload.columns = {"class", "characteristic", "a_p",
                       "b_u",   "epsilon",        "status"};
  for (std::size_t k = 0; k < grid.characteristics.size(); ++k) {
    for (Eigen::Index i = 0; i < grid.ap_axis.size(); ++i) {
      for (Eigen::Index j = 0; j < grid.bu_axis.size(); ++j) {
        const auto status = static_cast<CellStatus>(grid.status[k](i, j));
        Cell eps = status == CellStatus::kOk ? Cell{grid.epsilon[k](i, j)}
                                             : Cell{std::string()};
        e.payload.rows.push_back({Cell{FilterClassName(cls)},
                                  Cell{grid.characteristics[k]},
                                  Cell{grid.ap_axis[i]}, Cell{grid.bu_axis[j]},
                                  eps, Cell{CellStatusName(status)}});
      }
    }
  }
  e.format = args.common.format;
  return e;
}

}  // namespace

std::string FormatNumber(FPType value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

void Emit(const OutputEnvelope& envelope, std::ostream& out,
          std::ostream& err) {
  if (envelope.format == "json") {
    EmitJson(envelope, out);
  } else {
    EmitCsv(envelope, out, err);
  }
}

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Gammatone-family auditory filter characterization and design"};
  app.require_subcommand(1);

  CharsArgs chars_args;
  CLI::App* chars = app.add_subcommand(
      "chars", "Closed-form characteristics and ratios from constants");
  chars->add_option("--ap", chars_args.ap, "Pole real part A_p")->required();
  chars->add_option("--bp", chars_args.bp, "Pole imaginary part b_p")
      ->required();
  chars->add_option("--bu", chars_args.bu, "Filter exponent B_u")->required();
  chars->add_option("--ndb", chars_args.ndb,
                    "n-dB bandwidth levels (repeatable; default 3 10 15)");
  AddFormatOption(chars, &chars_args.common);

  BodeArgs bode_args;
  CLI::App* bode = app.add_subcommand(
      "bode", "Sampled normalized frequency response");
  bode->add_option("--class", bode_args.cls, "sharp|gef|v|pgtf")->required();
  bode->add_option("--ap", bode_args.ap, "Pole real part A_p")->required();
  bode->add_option("--bp", bode_args.bp, "Pole imaginary part b_p")
      ->required();
  bode->add_option("--bu", bode_args.bu, "Filter exponent B_u")->required();
  bode->add_option("--points", bode_args.points, "Uniform grid size");
  bode->add_option("--beta-min", bode_args.beta_min, "Grid low end");
  bode->add_option("--beta-max", bode_args.beta_max, "Grid high end");
  AddFormatOption(bode, &bode_args.common);

  DesignArgs design_args;
  CLI::App* design = app.add_subcommand(
      "design", "Estimate constants from observed characteristics");
  design->add_option("--beta-peak", design_args.beta_peak,
                     "Observed peak location (default: b_p = 1)");
  design->add_option("--bu-from", design_args.bu_from,
                     "B_u source, <ratio>=<value> (e.g. g=1.25)");
  design->add_option("--bu", design_args.bu_fixed, "Fixed exponent B_u");
  design->add_option("--ap-from", design_args.ap_from,
                     "A_p source, <characteristic>=<value>")
      ->required();
  design->add_flag("--allow-alpha", design_args.allow_alpha,
                   "Permit alpha as the B_u source despite its weak "
                   "identifiability");
  AddFormatOption(design, &design_args.common);

  ConstraintsArgs constraints_args;
  CLI::App* constraints = app.add_subcommand(
      "constraints", "Exponent constraints from reported observations");
  constraints->add_option("--alpha", constraints_args.alpha,
                          "Alpha interval lo,hi");
  constraints->add_option("--g1", constraints_args.g1, "Point value of g");
  constraints->add_option("--r", constraints_args.r, "Tuning-ratio interval");
  constraints->add_option("--eta", constraints_args.eta, "Eta interval");
  constraints->add_flag("--include-g2-upper",
                        constraints_args.include_g2_upper,
                        "Also emit the unreliable g2 upper bound");
  AddFormatOption(constraints, &constraints_args.common);

  FilterbankArgs filterbank_args;
  CLI::App* filterbank = app.add_subcommand(
      "filterbank", "Human filterbank constant table for a recipe");
  filterbank
      ->add_option("--recipe", filterbank_args.recipe,
                   "historical|g1-qsim|g1-qforw")
      ->required();
  filterbank->add_option("--cf-min", filterbank_args.cf_min, "Low CF, kHz");
  filterbank->add_option("--cf-max", filterbank_args.cf_max, "High CF, kHz");
  filterbank->add_option("--n", filterbank_args.points, "Number of channels");
  filterbank->add_option("--spacing", filterbank_args.spacing, "log|linear")
      ->check(CLI::IsMember({"log", "linear"}));
  AddFormatOption(filterbank, &filterbank_args.common);

  ErrmapArgs errmap_args;
  CLI::App* errmap = app.add_subcommand(
      "errmap", "Closed-form vs numeric error sweep over (A_p, B_u)");
  errmap->add_option("--class", errmap_args.cls, "gef|v|pgtf")->required();
  errmap->add_option("--ap-min", errmap_args.ap_min, "A_p axis low end");
  errmap->add_option("--ap-max", errmap_args.ap_max, "A_p axis high end");
  errmap->add_option("--ap-steps", errmap_args.ap_steps, "A_p axis points");
  errmap->add_option("--bu-min", errmap_args.bu_min, "B_u axis low end");
  errmap->add_option("--bu-max", errmap_args.bu_max, "B_u axis high end");
  errmap->add_option("--bu-steps", errmap_args.bu_steps, "B_u axis points");
  errmap->add_option("--chars", errmap_args.chars,
                     "Characteristics to sweep (repeatable)");
  errmap->add_option("--threads", errmap_args.threads,
                     "Worker threads (0 = hardware)");
  AddFormatOption(errmap, &errmap_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    OutputEnvelope envelope;
    if (chars->parsed()) {
      envelope = RunChars(chars_args);
    } else if (bode->parsed()) {
      envelope = RunBode(bode_args);
    } else if (design->parsed()) {
      envelope = RunDesignCmd(design_args);
    } else if (constraints->parsed()) {
      envelope = RunConstraints(constraints_args);
    } else if (filterbank->parsed()) {
      envelope = RunFilterbank(filterbank_args);
    } else if (errmap->parsed()) {
      envelope = RunErrmap(errmap_args);
    }
    Emit(envelope, out, err);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnattainableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnattainable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cli
}  // namespace afd
