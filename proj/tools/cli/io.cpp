#include "io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <memory>

#include "dynanet/error.hpp"
#include "dynanet/text.hpp"

#ifndef DYNANET_VERSION
#define DYNANET_VERSION "unknown"
#endif

namespace dynanet::cli {

namespace fs = std::filesystem;

namespace {

std::string to_hex(const unsigned char* data, unsigned len) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[data[i] >> 4];
    out += hex[data[i] & 15];
  }
  return out;
}

fs::path partial_path(const fs::path& target) {
  auto tmp = target;
  tmp += ".partial";
  return tmp;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw ValidationError("failed writing " + path.string());
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  return to_hex(md.data(), len);
}

std::string sha256_bytes(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  return to_hex(md.data(), len);
}

void write_atomic(const fs::path& target, const std::string& content) {
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const auto tmp = partial_path(target);
  try {
    write_file(tmp, content);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
  fs::rename(tmp, target);
}

void OutputBatch::add(fs::path target, std::string content) {
  files_.emplace_back(std::move(target), std::move(content));
}

void OutputBatch::commit(Manifest& manifest, const fs::path& manifest_path) {
  for (const auto& [path, content] : files_) manifest.output_bytes(path.string(), content);
  auto all = files_;
  all.emplace_back(manifest_path, manifest.dump());
  std::vector<fs::path> written;
  try {
    for (const auto& [path, content] : all) {
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      written.push_back(partial_path(path));
      write_file(written.back(), content);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
  for (const auto& [path, content] : all) fs::rename(partial_path(path), path);
  files_.clear();
}

StagedDir::StagedDir(fs::path target) : target_(std::move(target)) {
  auto name = target_.filename().string();
  if (name.empty()) name = target_.parent_path().filename().string();
  staging_ = target_.parent_path().empty() ? fs::path("." + name + ".partial")
                                           : target_.parent_path() / ("." + name + ".partial");
  fs::remove_all(staging_);
  fs::create_directories(staging_);
}

StagedDir::~StagedDir() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagedDir::commit() {
  if (fs::exists(target_)) fs::remove_all(target_);
  fs::rename(staging_, target_);
  committed_ = true;
}

Manifest::Manifest(std::string command, std::vector<std::string> argv) {
  doc_["tool"] = "dynanet";
  doc_["version"] = DYNANET_VERSION;
  doc_["command"] = std::move(command);
  doc_["argv"] = std::move(argv);
  doc_["config"] = nlohmann::ordered_json::object();
  doc_["inputs"] = nlohmann::ordered_json::array();
  doc_["outputs"] = nlohmann::ordered_json::array();
}

void Manifest::config(const std::map<std::string, std::string>& effective) {
  for (const auto& [k, v] : effective) doc_["config"][k] = v;
}

void Manifest::input(const std::string& role, const fs::path& path) {
  nlohmann::ordered_json entry;
  entry["role"] = role;
  entry["path"] = path.string();
  if (fs::is_directory(path)) {
    // Directory inputs are summarised by the hashes of their files.
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(path)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    auto& list = entry["files"] = nlohmann::ordered_json::object();
    for (const auto& f : files) list[fs::relative(f, path).generic_string()] = sha256_file(f);
  } else {
    entry["sha256"] = sha256_file(path);
    entry["bytes"] = fs::file_size(path);
  }
  doc_["inputs"].push_back(std::move(entry));
}

void Manifest::output(const fs::path& actual, const std::string& shown) {
  nlohmann::ordered_json entry;
  entry["path"] = shown;
  entry["sha256"] = sha256_file(actual);
  entry["bytes"] = fs::file_size(actual);
  doc_["outputs"].push_back(std::move(entry));
}

void Manifest::output_bytes(const std::string& shown, std::string_view content) {
  nlohmann::ordered_json entry;
  entry["path"] = shown;
  entry["sha256"] = sha256_bytes(content);
  entry["bytes"] = content.size();
  doc_["outputs"].push_back(std::move(entry));
}

std::string Manifest::dump() const {
  auto doc = doc_;
  if (!extra_.empty()) doc["summary"] = extra_;
  return doc.dump(2) + "\n";
}

std::string normalise_key(std::string key) {
  for (auto& c : key) {
    c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return key;
}

std::map<std::string, std::string> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (text::is_comment_or_blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path.string(), line_no, "expected key=value");
    const auto key = normalise_key(std::string(text::trim(std::string_view(line).substr(0, eq))));
    const auto value = std::string(text::trim(std::string_view(line).substr(eq + 1)));
    if (key.empty()) throw ParseError(path.string(), line_no, "empty key");
    out[key] = value;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : value) {
    if (c == sep) {
      out.emplace_back(text::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.emplace_back(text::trim(cur));
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

}  // namespace dynanet::cli
