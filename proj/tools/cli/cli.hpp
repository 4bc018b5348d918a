// Copyright 2026 The qghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "qghz/ghz_catalog.hpp"
#include "qghz/protocol.hpp"
#include "qghz/qudit_state.hpp"
#include "qghz/verify.hpp"

namespace qghz::cli {

enum class OutputFormat { markdown, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  int dim = 3;
  int photons = 3;
  std::optional<std::string> label;
  std::size_t shots = 1;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::markdown;
  Limits limits;
  unsigned jobs = 1;
};

/// "x1,...,x_{n-1}:k". Throws InputError on malformed or out-of-range input.
GhzLabel parse_label(std::string_view text, const SystemShape& shape);
/// Comma-separated integers ("0,0,1"), or a letter string ("aab") with
/// a=0, b=1, ... Levels are checked against the shape.
Levels parse_levels(std::string_view text, const SystemShape& shape);

/// Letters a..z when d <= 26, otherwise comma-separated digits.
std::string render_oam(const Levels& levels, int dim);
/// Concatenated digits when d <= 10, otherwise comma-separated.
std::string render_spatial(const Levels& levels, int dim);
/// 12 significant digits.
std::string format_number(double value);

void render_report(const VerificationReport& report, OutputFormat format, std::ostream& out);
void render_tables(const ParityTable& parity, const PhaseTable& phase, OutputFormat format,
                   std::ostream& out);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_tables(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, const std::string& oam, const std::string& spatial,
                 std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Exit codes: 0 success, 1 verification or
/// simulation failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qghz::cli
