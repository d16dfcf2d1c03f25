// SPDX-License-Identifier: MIT
#include "wrom/archive.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace wrom {

static_assert(std::endian::native == std::endian::little,
              "archive I/O assumes a little-endian host");

namespace {

enum Kind : std::uint8_t {
  kMatrixF64 = 0,
  kMatrixC128 = 1,
  kMlp = 2,
  kDoubles = 3,
  kU64 = 4,
  kSamples = 5,
};

void put_bytes(std::string& out, const void* src, std::size_t n) {
  out.append(static_cast<const char*>(src), n);
}

void put_u8(std::string& out, std::uint8_t v) { put_bytes(out, &v, 1); }
void put_u32(std::string& out, std::uint32_t v) { put_bytes(out, &v, 4); }
void put_u64(std::string& out, std::uint64_t v) { put_bytes(out, &v, 8); }
void put_f64(std::string& out, double v) { put_bytes(out, &v, 8); }

// Read cursor with truncation checks.
struct Cursor {
  const std::string& data;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > data.size())
      throw ArchiveError("archive truncated: need " + std::to_string(n) +
                         " bytes at offset " + std::to_string(pos));
  }
  void raw(void* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, data.data() + pos, n);
    pos += n;
  }
  std::uint8_t u8() {
    std::uint8_t v;
    raw(&v, 1);
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    raw(&v, 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    raw(&v, 8);
    return v;
  }
  double f64() {
    double v;
    raw(&v, 8);
    return v;
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s = data.substr(pos, n);
    pos += n;
    return s;
  }
};

void skip_payload(Cursor& c) {
  switch (c.u8()) {
    case kMatrixF64: {
      const std::uint64_t rows = c.u64(), cols = c.u64();
      c.need(rows * cols * 8);
      c.pos += rows * cols * 8;
      break;
    }
    case kMatrixC128: {
      const std::uint64_t rows = c.u64(), cols = c.u64();
      c.need(rows * cols * 16);
      c.pos += rows * cols * 16;
      break;
    }
    case kMlp: {
      const std::uint32_t in = c.u32(), width = c.u32(), hidden = c.u32(),
                          out = c.u32();
      std::uint64_t doubles = 0;
      for (std::uint32_t k = 0; k <= hidden; ++k) {
        const std::uint64_t rows = (k == hidden) ? out : width;
        const std::uint64_t cols = (k == 0) ? in : width;
        doubles += rows * cols + rows;
      }
      c.need(doubles * 8);
      c.pos += doubles * 8;
      break;
    }
    case kDoubles: {
      const std::uint64_t n = c.u64();
      c.need(n * 8);
      c.pos += n * 8;
      break;
    }
    case kU64:
      c.need(8);
      c.pos += 8;
      break;
    case kSamples: {
      c.u8();
      const std::uint64_t dim = c.u32();
      c.u64();
      c.u64();
      const std::uint64_t count = c.u64();
      c.need(count * dim * 8);
      c.pos += count * dim * 8;
      break;
    }
    default:
      throw ArchiveError("archive has unknown record kind");
  }
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

ArchiveWriter::ArchiveWriter(std::uint64_t config_hash) {
  buffer_ = "WROM";
  put_u32(buffer_, kArchiveVersion);
  put_u64(buffer_, config_hash);
}

namespace {
void put_header(std::string& out, const std::string& name, Kind kind) {
  put_u32(out, static_cast<std::uint32_t>(name.size()));
  out += name;
  put_u8(out, kind);
}
}  // namespace

void ArchiveWriter::add_matrix(const std::string& name,
                               const Eigen::MatrixXd& m) {
  put_header(buffer_, name, kMatrixF64);
  put_u64(buffer_, static_cast<std::uint64_t>(m.rows()));
  put_u64(buffer_, static_cast<std::uint64_t>(m.cols()));
  put_bytes(buffer_, m.data(), static_cast<std::size_t>(m.size()) * 8);
}

void ArchiveWriter::add_matrix(const std::string& name, const MatrixC& m) {
  put_header(buffer_, name, kMatrixC128);
  put_u64(buffer_, static_cast<std::uint64_t>(m.rows()));
  put_u64(buffer_, static_cast<std::uint64_t>(m.cols()));
  put_bytes(buffer_, m.data(), static_cast<std::size_t>(m.size()) * 16);
}

void ArchiveWriter::add_doubles(const std::string& name,
                                const Eigen::VectorXd& v) {
  put_header(buffer_, name, kDoubles);
  put_u64(buffer_, static_cast<std::uint64_t>(v.size()));
  put_bytes(buffer_, v.data(), static_cast<std::size_t>(v.size()) * 8);
}

void ArchiveWriter::add_u64(const std::string& name, std::uint64_t value) {
  put_header(buffer_, name, kU64);
  put_u64(buffer_, value);
}

void ArchiveWriter::add_mlp(const std::string& name, const MlpParams& p) {
  put_header(buffer_, name, kMlp);
  put_u32(buffer_, static_cast<std::uint32_t>(p.arch.input_dim));
  put_u32(buffer_, static_cast<std::uint32_t>(p.arch.width));
  put_u32(buffer_, static_cast<std::uint32_t>(p.arch.hidden_layers));
  put_u32(buffer_, static_cast<std::uint32_t>(p.arch.output_dim));
  for (std::size_t k = 0; k < p.W.size(); ++k) {
    // Row major, matching the documented layout rather than Eigen's default.
    for (Eigen::Index i = 0; i < p.W[k].rows(); ++i)
      for (Eigen::Index j = 0; j < p.W[k].cols(); ++j)
        put_f64(buffer_, p.W[k](i, j));
    for (Eigen::Index i = 0; i < p.b[k].size(); ++i)
      put_f64(buffer_, p.b[k][i]);
  }
}

void ArchiveWriter::add_samples(const std::string& name, const SampleSet& s) {
  put_header(buffer_, name, kSamples);
  put_u8(buffer_, static_cast<std::uint8_t>(s.kind));
  put_u32(buffer_, static_cast<std::uint32_t>(s.dim));
  put_u64(buffer_, s.seed);
  put_u64(buffer_, static_cast<std::uint64_t>(s.skip));
  put_u64(buffer_, static_cast<std::uint64_t>(s.points.size()));
  for (const ParamPoint& p : s.points)
    for (double x : p) put_f64(buffer_, x);
}

void ArchiveWriter::save(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArchiveError("cannot open " + tmp + " for writing");
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw ArchiveError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ArchiveError("cannot rename " + tmp + " to " + path);
}

ArchiveReader::ArchiveReader(const std::string& path,
                             std::uint64_t expected_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArchiveError("cannot open " + path);
  data_.assign(std::istreambuf_iterator<char>(in),
               std::istreambuf_iterator<char>());

  Cursor c{data_};
  if (c.str(4) != "WROM") throw ArchiveError(path + ": bad magic");
  const std::uint32_t version = c.u32();
  if (version != kArchiveVersion)
    throw ArchiveError(path + ": unsupported version " +
                       std::to_string(version));
  config_hash_ = c.u64();
  if (expected_hash != 0 && config_hash_ != expected_hash)
    throw ArchiveError(path + ": config hash mismatch (artifact " +
                       std::to_string(config_hash_) + ", expected " +
                       std::to_string(expected_hash) + ")");

  while (c.pos < data_.size()) {
    const std::uint32_t name_len = c.u32();
    const std::string name = c.str(name_len);
    c.need(1);
    Record rec;
    rec.kind = static_cast<std::uint8_t>(data_[c.pos]);
    rec.offset = c.pos + 1;
    skip_payload(c);  // consumes the kind byte and the payload
    records_[name] = rec;
  }
}

bool ArchiveReader::has(const std::string& name) const {
  return records_.count(name) > 0;
}

const ArchiveReader::Record& ArchiveReader::find(const std::string& name,
                                                 std::uint8_t kind) const {
  auto it = records_.find(name);
  if (it == records_.end())
    throw ArchiveError("archive record missing: " + name);
  if (it->second.kind != kind)
    throw ArchiveError("archive record " + name + " has kind " +
                       std::to_string(it->second.kind) + ", expected " +
                       std::to_string(kind));
  return it->second;
}

Eigen::MatrixXd ArchiveReader::matrix_f64(const std::string& name) const {
  Cursor c{data_, find(name, kMatrixF64).offset};
  const std::uint64_t rows = c.u64(), cols = c.u64();
  Eigen::MatrixXd m(rows, cols);
  c.raw(m.data(), static_cast<std::size_t>(m.size()) * 8);
  return m;
}

MatrixC ArchiveReader::matrix_c128(const std::string& name) const {
  Cursor c{data_, find(name, kMatrixC128).offset};
  const std::uint64_t rows = c.u64(), cols = c.u64();
  MatrixC m(rows, cols);
  c.raw(m.data(), static_cast<std::size_t>(m.size()) * 16);
  return m;
}

Eigen::VectorXd ArchiveReader::doubles(const std::string& name) const {
  Cursor c{data_, find(name, kDoubles).offset};
  const std::uint64_t n = c.u64();
  Eigen::VectorXd v(n);
  c.raw(v.data(), static_cast<std::size_t>(n) * 8);
  return v;
}

std::uint64_t ArchiveReader::u64(const std::string& name) const {
  Cursor c{data_, find(name, kU64).offset};
  return c.u64();
}

MlpParams ArchiveReader::mlp(const std::string& name) const {
  Cursor c{data_, find(name, kMlp).offset};
  MlpParams p;
  p.arch.input_dim = static_cast<int>(c.u32());
  p.arch.width = static_cast<int>(c.u32());
  p.arch.hidden_layers = static_cast<int>(c.u32());
  p.arch.output_dim = static_cast<int>(c.u32());
  p.arch.validate();
  for (int k = 0; k <= p.arch.hidden_layers; ++k) {
    const int rows =
        (k == p.arch.hidden_layers) ? p.arch.output_dim : p.arch.width;
    const int cols = (k == 0) ? p.arch.input_dim : p.arch.width;
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w(i, j) = c.f64();
    Eigen::VectorXd bias(rows);
    for (int i = 0; i < rows; ++i) bias[i] = c.f64();
    p.W.push_back(std::move(w));
    p.b.push_back(std::move(bias));
  }
  return p;
}

SampleSet ArchiveReader::samples(const std::string& name) const {
  Cursor c{data_, find(name, kSamples).offset};
  SampleSet s;
  s.kind = static_cast<SampleKind>(c.u8());
  s.dim = static_cast<int>(c.u32());
  s.seed = c.u64();
  s.skip = static_cast<int>(c.u64());
  const std::uint64_t count = c.u64();
  s.points.resize(count, ParamPoint(static_cast<std::size_t>(s.dim)));
  for (auto& p : s.points)
    for (double& x : p) x = c.f64();
  return s;
}

}  // namespace wrom
