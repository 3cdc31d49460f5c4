// Copyright 2026 The Refinery Authors. All Rights Reserved.
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

#include <cstring>
#include <fstream>

#include "refinery/error.hpp"
#include "refinery/fuzzy_dedup.hpp"

namespace refinery {
namespace {

constexpr char kMagic[8] = {'R', 'F', 'S', 'I', 'G', '0', '0', '1'};

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // False on clean EOF before any byte; throws on a partial read.
  bool Bytes(char* dst, std::size_t n, std::uint64_t record_start, bool allow_eof = false) {
    in_.read(dst, static_cast<std::streamsize>(n));
    const auto got = static_cast<std::size_t>(in_.gcount());
    offset_ += got;
    if (got == n) return true;
    if (got == 0 && allow_eof) return false;
    throw PositionedError(ErrorCode::kTruncatedRecord, record_start, "signature cache truncated");
  }

  std::uint64_t U(std::size_t width, std::uint64_t record_start, bool allow_eof, bool* eof = nullptr) {
    unsigned char buf[8];
    if (!Bytes(reinterpret_cast<char*>(buf), width, record_start, allow_eof)) {
      if (eof != nullptr) *eof = true;
      return 0;
    }
    std::uint64_t v = 0;
    for (std::size_t i = width; i-- > 0;) v = (v << 8) | buf[i];
    return v;
  }

  std::uint64_t offset() const { return offset_; }

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace

void WriteSignatureCache(const std::filesystem::path& path, const MinHashParams& params,
                         const std::vector<SignatureRecord>& records) {
  ValidateParams(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kSinkError, "cannot open " + path.string() + " for writing");
  std::string buf(kMagic, sizeof(kMagic));
  PutU64(buf, params.n);
  PutU64(buf, params.b);
  PutU64(buf, params.r);
  PutU64(buf, params.seed);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  for (const SignatureRecord& rec : records) {
    if (rec.values.size() != params.k()) {
      throw Error(ErrorCode::kParamMismatch, "signature for " + rec.id + " has the wrong length");
    }
    buf.clear();
    PutU32(buf, static_cast<std::uint32_t>(rec.id.size()));
    buf += rec.id;
    for (std::uint32_t v : rec.values) PutU32(buf, v);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kSinkError, "write to " + path.string() + " failed");
}

SignatureCache ReadSignatureCache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  Reader reader(in);
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (in.gcount() != static_cast<std::streamsize>(sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw PositionedError(ErrorCode::kBadMagic, 0, path.string() + " is not a signature cache");
  }
  SignatureCache cache;
  cache.params.n = reader.U(8, 0, false);
  cache.params.b = reader.U(8, 0, false);
  cache.params.r = reader.U(8, 0, false);
  cache.params.seed = reader.U(8, 0, false);
  if (cache.params.n == 0 || cache.params.b == 0 || cache.params.r == 0 || cache.params.k() > (1u << 24)) {
    throw Error(ErrorCode::kParamMismatch, path.string() + ": implausible parameters in header");
  }
  const std::size_t k = cache.params.k();
  while (true) {
    const std::uint64_t start = sizeof(kMagic) + reader.offset();
    bool eof = false;
    const auto id_len = static_cast<std::size_t>(reader.U(4, start, true, &eof));
    if (eof) break;
    SignatureRecord rec;
    rec.id.resize(id_len);
    if (id_len != 0) reader.Bytes(rec.id.data(), id_len, start);
    std::string raw(k * 4, '\0');
    reader.Bytes(raw.data(), raw.size(), start);
    rec.values.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(raw.data() + i * 4);
      rec.values[i] = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                      (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    }
    cache.records.push_back(std::move(rec));
  }
  return cache;
}

}  // namespace refinery
