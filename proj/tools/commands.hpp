#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xibergman/json_io.hpp"

namespace xib::cli {

enum ExitCode { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

struct OutputFile {
  std::string name;
  std::string contents;
};

struct CommandResult {
  int exit_code = kSuccess;
  Json summary;
  std::vector<OutputFile> files;
  std::vector<std::string> warnings;
  std::string error;
};

const std::vector<std::string>& command_names();

/// Validates the config and runs the command; nothing touches the disk.
/// Config errors come back as exit code 2 with no files.
CommandResult run_command(const std::string& command, const Json& config, const RunOptions& opts);

/// run_command, then writes the files into opts.out_dir.
CommandResult execute(const std::string& command, const std::string& config_path,
                      const RunOptions& opts);

}  // namespace xib::cli
