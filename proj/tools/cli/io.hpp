#pragma once

#include <filesystem>
#include <map>
#include <string_view>
#include <utility>
#include <string>
#include <vector>

#include <json.hpp>

namespace dynanet::cli {

std::string sha256_file(const std::filesystem::path& path);
std::string sha256_bytes(std::string_view bytes);

void write_atomic(const std::filesystem::path& target, const std::string& content);

class Manifest;

// Output files held in memory until commit(), which writes every file and the
// manifest to temporaries first and renames them only once all writes worked.
class OutputBatch {
 public:
  void add(std::filesystem::path target, std::string content);
  void commit(Manifest& manifest, const std::filesystem::path& manifest_path);

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

// A scratch directory next to `target` that replaces it on commit() and is
// removed if the object dies uncommitted.
class StagedDir {
 public:
  explicit StagedDir(std::filesystem::path target);
  ~StagedDir();
  StagedDir(const StagedDir&) = delete;
  StagedDir& operator=(const StagedDir&) = delete;

  const std::filesystem::path& path() const { return staging_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

// Provenance record written next to every output.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv);
  void config(const std::map<std::string, std::string>& effective);
  void input(const std::string& role, const std::filesystem::path& path);
  // Hashes the file at `actual` but records it under `shown` (used when the
  // file still sits in a staging directory).
  void output(const std::filesystem::path& actual, const std::string& shown);
  void output_bytes(const std::string& shown, std::string_view content);
  nlohmann::ordered_json& extra() { return extra_; }
  std::string dump() const;

 private:
  nlohmann::ordered_json doc_;
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
};

// key=value lines; '#' comments and blank lines ignored. Keys are normalised
// to lower case with '-' replaced by '_'.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);
std::string normalise_key(std::string key);

std::vector<std::string> split_list(const std::string& value, char sep = ',');

}  // namespace dynanet::cli
