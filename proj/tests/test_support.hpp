#pragma once

// Shared helpers for the test binaries: throwaway directories, quick file
// and document construction.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "normalize.hpp"

namespace tts {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    std::uniform_int_distribution<uint64_t> dist;
    path_ = std::filesystem::temp_directory_path() /
            ("tweettopics_test_" + std::to_string(dist(rd)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline tt::TokenizedDoc doc(std::string id, std::vector<std::string> tokens) {
  tt::TokenizedDoc d;
  d.doc_id = std::move(id);
  d.tokens = std::move(tokens);
  d.empty_after_normalize = d.tokens.empty();
  return d;
}

// "a b c" -> tokens {a, b, c}
inline tt::TokenizedDoc docs(std::string id, const std::string& spaced) {
  std::vector<std::string> tokens;
  size_t start = 0;
  while (start < spaced.size()) {
    size_t end = spaced.find(' ', start);
    if (end == std::string::npos) end = spaced.size();
    if (end > start) tokens.push_back(spaced.substr(start, end - start));
    start = end + 1;
  }
  return doc(std::move(id), std::move(tokens));
}

}  // namespace tts
