// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "wrom/linalg.hpp"
#include "wrom/mlp.hpp"
#include "wrom/sampling.hpp"

namespace wrom {

// Binary artifact container. Layout (all integers little endian, doubles
// IEEE 754):
//
//   "WROM" | u32 version | u64 config_hash | records until EOF
//   record = u32 name_len | name | u8 kind | payload
//
// Matrix payloads are column major; complex entries interleave (re, im).
// The config hash binds an artifact to the run configuration so a restart
// never mixes stages from different setups.

inline constexpr std::uint32_t kArchiveVersion = 1;

struct ArchiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a over a byte string; used for config fingerprints.
std::uint64_t fnv1a(const std::string& bytes);

class ArchiveWriter {
 public:
  explicit ArchiveWriter(std::uint64_t config_hash);

  void add_matrix(const std::string& name, const Eigen::MatrixXd& m);
  void add_matrix(const std::string& name, const MatrixC& m);
  void add_doubles(const std::string& name, const Eigen::VectorXd& v);
  void add_u64(const std::string& name, std::uint64_t value);
  void add_mlp(const std::string& name, const MlpParams& p);
  void add_samples(const std::string& name, const SampleSet& s);

  // Writes to <path>.tmp then renames, so readers never see a torn file.
  void save(const std::string& path) const;

 private:
  std::string buffer_;
};

class ArchiveReader {
 public:
  // Parses the whole file up front. config_hash of the stored artifact must
  // match unless expected_hash is zero.
  ArchiveReader(const std::string& path, std::uint64_t expected_hash);

  std::uint64_t config_hash() const { return config_hash_; }
  bool has(const std::string& name) const;

  Eigen::MatrixXd matrix_f64(const std::string& name) const;
  MatrixC matrix_c128(const std::string& name) const;
  Eigen::VectorXd doubles(const std::string& name) const;
  std::uint64_t u64(const std::string& name) const;
  MlpParams mlp(const std::string& name) const;
  SampleSet samples(const std::string& name) const;

 private:
  struct Record {
    std::uint8_t kind;
    std::size_t offset;  // payload start within data_
  };
  const Record& find(const std::string& name, std::uint8_t kind) const;

  std::string data_;
  std::uint64_t config_hash_ = 0;
  std::map<std::string, Record> records_;
};

}  // namespace wrom
