// Copyright 2026 The gapsieve Authors
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

#include <bit>
#include <cstring>

#include "gapsieve/cycle.hpp"
#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

constexpr std::size_t kWriteBuffer = std::size_t{1} << 16;

void put_u64(std::ofstream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

bool get_bytes(std::ifstream& in, void* dst, std::size_t n) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

std::uint64_t decode_u64(const unsigned char* bytes) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

void swap_if_big_endian(std::span<Gap> gaps) {
  if constexpr (std::endian::native == std::endian::big) {
    for (Gap& g : gaps) g = static_cast<Gap>((g >> 8) | (g << 8));
  }
}

}  // namespace

CacheWriter::CacheWriter(const std::filesystem::path& path, const SquarefreeModulus& modulus,
                         std::uint64_t gap_count)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), expected_(gap_count) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  out_.write(kCacheMagic, 4);
  const auto& factors = modulus.factors();
  const unsigned char header[2] = {kCacheVersion, static_cast<unsigned char>(factors.size())};
  out_.write(reinterpret_cast<const char*>(header), 2);
  for (std::uint64_t q : factors) put_u64(out_, q);
  put_u64(out_, gap_count);
  buffer_.reserve(kWriteBuffer);
}

CacheWriter::~CacheWriter() {
  if (!closed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
}

void CacheWriter::flush_buffer() {
  swap_if_big_endian(buffer_);
  out_.write(reinterpret_cast<const char*>(buffer_.data()),
             static_cast<std::streamsize>(buffer_.size() * sizeof(Gap)));
  written_ += buffer_.size();
  buffer_.clear();
}

void CacheWriter::push(Gap gap) {
  buffer_.push_back(gap);
  if (buffer_.size() == kWriteBuffer) flush_buffer();
}

void CacheWriter::write(std::span<const Gap> gaps) {
  for (Gap g : gaps) push(g);
}

void CacheWriter::close() {
  flush_buffer();
  out_.flush();
  if (!out_) throw Error("write failed for " + path_.string());
  out_.close();
  if (written_ != expected_) {
    throw Error("cache writer for " + path_.string() + " expected " + std::to_string(expected_) +
                " gaps, got " + std::to_string(written_));
  }
  closed_ = true;
}

CacheReader::CacheReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw InvalidArgument("cannot open cycle file " + path.string());
  const std::string where = " in " + path.string();
  char magic[4];
  if (!get_bytes(in_, magic, 4)) throw InvalidArgument("truncated header" + where);
  if (std::memcmp(magic, kCacheMagic, 4) != 0) throw InvalidArgument("bad magic" + where);
  unsigned char header[2];
  if (!get_bytes(in_, header, 2)) throw InvalidArgument("truncated header" + where);
  if (header[0] != kCacheVersion) {
    throw InvalidArgument("unsupported version " + std::to_string(header[0]) + where);
  }
  std::vector<std::uint64_t> factors(header[1]);
  unsigned char word[8];
  for (auto& q : factors) {
    if (!get_bytes(in_, word, 8)) throw InvalidArgument("truncated factor list" + where);
    q = decode_u64(word);
  }
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (factors[i] <= factors[i - 1]) throw InvalidArgument("factors not ascending" + where);
  }
  modulus_ = SquarefreeModulus::from_factors(factors);
  if (!get_bytes(in_, word, 8)) throw InvalidArgument("truncated gap count" + where);
  count_ = decode_u64(word);
  if (WideUint(count_) != euler_phi(modulus_)) {
    throw InvalidArgument("gap count " + std::to_string(count_) + " differs from phi(N) = " +
                          euler_phi(modulus_).str() + where);
  }

  const auto payload_start = static_cast<std::uint64_t>(in_.tellg());
  const std::uint64_t size = std::filesystem::file_size(path);
  const std::uint64_t expected = payload_start + count_ * sizeof(Gap);
  if (size < expected) throw InvalidArgument("truncated payload" + where);
  if (size > expected) throw InvalidArgument("trailing bytes" + where);
}

std::size_t CacheReader::read(std::span<Gap> out) {
  const std::uint64_t left = count_ - consumed_;
  const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(left, out.size()));
  if (n == 0) return 0;
  if (!get_bytes(in_, out.data(), n * sizeof(Gap))) {
    throw InvalidArgument("truncated payload in " + path_.string());
  }
  swap_if_big_endian(out.first(n));
  consumed_ += n;
  return n;
}

void write_cache(const std::filesystem::path& path, const GapCycle& cycle) {
  CacheWriter writer(path, cycle.modulus, cycle.gaps.size());
  writer.write(cycle.gaps);
  writer.close();
}

GapCycle read_cache(const std::filesystem::path& path) {
  CacheReader reader(path);
  GapCycle cycle{reader.modulus(), {}};
  cycle.gaps.resize(reader.gap_count());
  const std::size_t n = reader.read(cycle.gaps);
  if (n != cycle.gaps.size()) throw InvalidArgument("truncated payload in " + path.string());
  return cycle;
}

}  // namespace gapsieve
