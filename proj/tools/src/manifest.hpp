// Copyright 2026 The cztheta Authors
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

// Run manifest: inputs of a CLI invocation and hashes of what it wrote.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cztheta/io.hpp"

namespace cztheta::cli {

std::string sha256_hex(const std::string& bytes);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

struct Artifact {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  /// Writes the file in one go and records its hash.
  void write(const std::string& name, const std::string& content);
  const std::vector<Artifact>& artifacts() const { return artifacts_; }

 private:
  std::filesystem::path root_;
  std::vector<Artifact> artifacts_;
};

struct RunManifest {
  std::string command;
  std::string config_path;  // "builtin" when no file was given
  std::uint64_t seed = 0;
  std::string output_dir;
  Json options = Json::object();
  std::string started;
  std::string finished;
  int exit_code = 0;
  std::string status;
  std::vector<Artifact> artifacts;

  Json to_json() const;
};

}  // namespace cztheta::cli
