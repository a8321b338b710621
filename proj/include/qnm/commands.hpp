// Copyright 2026 The qnm-lattice Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qnm/run_config.hpp"

namespace qnm {

enum class Command { kPotential, kGSymbol, kLattice, kCount, kDirect, kPseudo };

const char* command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Renders the complete output file of a command. CSV output starts with
/// '#'-prefixed metadata lines, the second of which holds the resolved
/// configuration as JSON; JSON output carries it under "config".
/// `threads` bounds the number of ell values solved concurrently.
std::string render_command(Command c, const RunConfig& cfg, int threads = 1);

/// Writes to a temporary file next to `path` and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

/// The configuration embedded in a rendered output.
RunConfig config_from_output(const std::string& content);

/// printf "%.17g" in the C locale.
std::string csv_number(double v);

}  // namespace qnm
