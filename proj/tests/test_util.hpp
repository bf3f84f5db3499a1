#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "lexidiv/wordnet.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return LEXIDIV_TEST_DATA; }
inline std::filesystem::path mini_wordnet_dir() { return data_dir() / "wordnet-mini"; }

// Empty when the build was not pointed at a full WordNet installation.
inline std::filesystem::path real_wordnet_dir() {
  const std::filesystem::path p = LEXIDIV_REAL_WORDNET;
  if (p.empty() || !std::filesystem::exists(p / "index.noun")) return {};
  return p;
}

inline const lexidiv::wordnet::Database& mini_db() {
  static const auto db = lexidiv::wordnet::load_wordnet(mini_wordnet_dir());
  return db;
}

// Fresh scratch directory per call, removed by the caller if desired.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lexidiv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
