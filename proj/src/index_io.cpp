// Copyright 2026 The Entity Pulse Authors
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

// EPX1 container.
//
//   offset 0   magic "EPX1"
//          4   u32 format version (1)
//          8   u32 section count
//         12   section table: per section
//                u32 kind, u32 crc32 of payload, u64 offset, u64 length
//   then the section payloads, in table order.
//
// Sections (all integers little-endian, doubles as IEEE-754 bit patterns):
//   1 META      u8 granularity, u8 flags (bit0 = sketched users),
//               u16 reserved, u32 reserved, f64 delta,
//               u64 entity count, u64 slice count, u64 posting count,
//               u64 co-occurrence count
//   2 STRINGS   per entity: u32 byte length, bytes (dictionary, id order)
//   3 SLICES    per slice: i64 start, i64 end, u64 text_total, u64 user_total,
//               u64 posting_begin, u64 posting_count
//   4 POSTINGS  per posting: u32 entity, u32 slice, u64 text_count,
//               u64 user_count, i64 attitude_sum, i64 sentimentality_sum,
//               u64 strong_pos, u64 strong_neg, u64 cooccur_begin,
//               u64 cooccur_count
//   5 COOCCUR   per pair: u32 entity, u32 reserved, u64 pair_text_count,
//               i64 pair_attitude_sum

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "entity_pulse/entity_index.hpp"
#include "entity_pulse/io.hpp"

namespace entity_pulse {

namespace {

constexpr char kMagic[4] = {'E', 'P', 'X', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 12;
constexpr std::size_t kTableEntrySize = 24;

enum SectionKind : std::uint32_t {
  kMeta = 1,
  kStrings = 2,
  kSlices = 3,
  kPostings = 4,
  kCooccur = 5,
};

constexpr std::size_t kMetaSize = 1 + 1 + 2 + 4 + 8 + 4 * 8;
constexpr std::size_t kSliceSize = 6 * 8;
constexpr std::size_t kPostingSize = 2 * 4 + 8 * 8;
constexpr std::size_t kCooccurSize = 2 * 4 + 2 * 8;

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void bytes(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }
  std::vector<std::uint8_t>& data() { return bytes_; }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, const char* what) : bytes_(bytes), what_(what) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw IndexFormatError(std::string("truncated ") + what_ + " section");
    }
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  const char* what_;
};

std::uint32_t checksum(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // crc32 takes a uInt length; feed large payloads in pieces.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t n = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw IndexFormatError(message);
}

}  // namespace

std::vector<std::uint8_t> EntityIndex::serialize() const {
  std::vector<std::pair<SectionKind, std::vector<std::uint8_t>>> sections;

  {
    Writer w;
    w.u8(static_cast<std::uint8_t>(granularity_));
    w.u8(sketch_users_ ? 1 : 0);
    w.u16(0);
    w.u32(0);
    w.f64(delta_);
    w.u64(entities_.size());
    w.u64(slices_.size());
    w.u64(postings_.size());
    w.u64(cooccur_.size());
    sections.emplace_back(kMeta, std::move(w.data()));
  }
  {
    Writer w;
    for (const auto& name : entities_) {
      w.u32(static_cast<std::uint32_t>(name.size()));
      w.bytes(name);
    }
    sections.emplace_back(kStrings, std::move(w.data()));
  }
  {
    Writer w;
    for (const auto& s : slices_) {
      w.i64(s.period.start.time_since_epoch().count());
      w.i64(s.period.end.time_since_epoch().count());
      w.u64(s.text_total);
      w.u64(s.user_total);
      w.u64(s.posting_begin);
      w.u64(s.posting_count);
    }
    sections.emplace_back(kSlices, std::move(w.data()));
  }
  {
    Writer w;
    for (const auto& p : postings_) {
      w.u32(p.entity);
      w.u32(p.slice);
      w.u64(p.text_count);
      w.u64(p.user_count);
      w.i64(p.attitude_sum);
      w.i64(p.sentimentality_sum);
      w.u64(p.strong_pos_count);
      w.u64(p.strong_neg_count);
      w.u64(p.cooccur_begin);
      w.u64(p.cooccur_count);
    }
    sections.emplace_back(kPostings, std::move(w.data()));
  }
  {
    Writer w;
    for (const auto& c : cooccur_) {
      w.u32(c.entity);
      w.u32(0);
      w.u64(c.pair_text_count);
      w.i64(c.pair_attitude_sum);
    }
    sections.emplace_back(kCooccur, std::move(w.data()));
  }

  Writer out;
  out.bytes(std::string_view(kMagic, 4));
  out.u32(kVersion);
  out.u32(static_cast<std::uint32_t>(sections.size()));
  std::uint64_t offset = kHeaderSize + kTableEntrySize * sections.size();
  for (const auto& [kind, payload] : sections) {
    out.u32(kind);
    out.u32(checksum(payload));
    out.u64(offset);
    out.u64(payload.size());
    offset += payload.size();
  }
  auto& bytes = out.data();
  for (const auto& [kind, payload] : sections) {
    bytes.insert(bytes.end(), payload.begin(), payload.end());
  }
  return std::move(bytes);
}

EntityIndex EntityIndex::deserialize(std::span<const std::uint8_t> bytes) {
  require(bytes.size() >= kHeaderSize, "file too short for an EPX header");
  require(std::memcmp(bytes.data(), kMagic, 4) == 0, "bad magic: not an EPX index file");
  Reader header(bytes.subspan(4, kHeaderSize - 4), "header");
  const std::uint32_t version = header.u32();
  require(version == kVersion, "unsupported EPX version " + std::to_string(version) +
                                   " (expected " + std::to_string(kVersion) + ")");
  const std::uint32_t count = header.u32();
  require(bytes.size() >= kHeaderSize + std::uint64_t{count} * kTableEntrySize,
          "truncated section table");

  std::span<const std::uint8_t> payloads[6];
  bool present[6] = {};
  Reader table(bytes.subspan(kHeaderSize, std::size_t{count} * kTableEntrySize), "table");
  // Payloads are packed back to back right after the table.
  std::uint64_t next = kHeaderSize + std::uint64_t{count} * kTableEntrySize;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t kind = table.u32();
    const std::uint32_t crc = table.u32();
    const std::uint64_t offset = table.u64();
    const std::uint64_t length = table.u64();
    require(offset <= bytes.size() && length <= bytes.size() - offset,
            "section " + std::to_string(kind) + " extends past end of file (truncated?)");
    require(offset == next, "section " + std::to_string(kind) + " is not where the table says");
    next = offset + length;
    const auto payload = bytes.subspan(offset, length);
    require(checksum(payload) == crc, "checksum mismatch in section " + std::to_string(kind));
    if (kind >= kMeta && kind <= kCooccur) {
      require(!present[kind], "duplicate section " + std::to_string(kind));
      present[kind] = true;
      payloads[kind] = payload;
    }
  }
  require(next == bytes.size(), "trailing bytes after last section");
  for (std::uint32_t k = kMeta; k <= kCooccur; ++k) {
    require(present[k], "missing section " + std::to_string(k));
  }

  EntityIndex index;
  Reader meta(payloads[kMeta], "META");
  require(payloads[kMeta].size() == kMetaSize, "bad META section size");
  const std::uint8_t g = meta.u8();
  require(g <= static_cast<std::uint8_t>(Granularity::kYear), "bad granularity code");
  index.granularity_ = static_cast<Granularity>(g);
  const std::uint8_t flags = meta.u8();
  index.sketch_users_ = (flags & 1) != 0;
  meta.u16();
  meta.u32();
  index.delta_ = meta.f64();
  require(index.delta_ >= 0.0 && index.delta_ <= 4.0, "delta outside [0, 4]");
  const std::uint64_t n_entities = meta.u64();
  const std::uint64_t n_slices = meta.u64();
  const std::uint64_t n_postings = meta.u64();
  const std::uint64_t n_cooccur = meta.u64();

  require(payloads[kSlices].size() == n_slices * kSliceSize, "SLICES size mismatch");
  require(payloads[kPostings].size() == n_postings * kPostingSize, "POSTINGS size mismatch");
  require(payloads[kCooccur].size() == n_cooccur * kCooccurSize, "COOCCUR size mismatch");
  require(n_entities <= payloads[kStrings].size() / 4, "STRINGS size mismatch");

  Reader strings(payloads[kStrings], "STRINGS");
  index.entities_.reserve(n_entities);
  for (std::uint64_t i = 0; i < n_entities; ++i) index.entities_.push_back(strings.str(strings.u32()));
  require(strings.done(), "trailing bytes in STRINGS section");

  Reader slices(payloads[kSlices], "SLICES");
  index.slices_.resize(n_slices);
  for (auto& s : index.slices_) {
    s.period.start = Timestamp{std::chrono::seconds{slices.i64()}};
    s.period.end = Timestamp{std::chrono::seconds{slices.i64()}};
    s.period.granularity = index.granularity_;
    s.text_total = slices.u64();
    s.user_total = slices.u64();
    s.posting_begin = slices.u64();
    s.posting_count = slices.u64();
  }

  Reader postings(payloads[kPostings], "POSTINGS");
  index.postings_.resize(n_postings);
  for (auto& p : index.postings_) {
    p.entity = postings.u32();
    p.slice = postings.u32();
    p.text_count = postings.u64();
    p.user_count = postings.u64();
    p.attitude_sum = postings.i64();
    p.sentimentality_sum = postings.i64();
    p.strong_pos_count = postings.u64();
    p.strong_neg_count = postings.u64();
    p.cooccur_begin = postings.u64();
    p.cooccur_count = postings.u64();
  }

  Reader cooccur(payloads[kCooccur], "COOCCUR");
  index.cooccur_.resize(n_cooccur);
  for (auto& c : index.cooccur_) {
    c.entity = cooccur.u32();
    cooccur.u32();
    c.pair_text_count = cooccur.u64();
    c.pair_attitude_sum = cooccur.i64();
  }

  index.validate();
  index.rebuild_lookup();
  return index;
}

void EntityIndex::validate() const {
  for (std::size_t i = 1; i < entities_.size(); ++i) {
    require(entities_[i - 1] < entities_[i], "entity dictionary is not strictly sorted");
  }
  std::uint64_t expected_posting = 0;
  for (std::size_t si = 0; si < slices_.size(); ++si) {
    const PeriodSlice& s = slices_[si];
    require(assign(s.period.start, granularity_) == s.period, "slice is not a calendar period");
    require(si == 0 || slices_[si - 1].period.start < s.period.start, "slices out of order");
    require(s.user_total <= s.text_total, "slice user_total exceeds text_total");
    require(s.posting_begin == expected_posting, "slice posting ranges are not contiguous");
    require(s.posting_count <= postings_.size() - s.posting_begin, "slice posting range overflow");
    expected_posting += s.posting_count;

    for (std::uint64_t pi = s.posting_begin; pi < s.posting_begin + s.posting_count; ++pi) {
      const EntityPosting& p = postings_[pi];
      require(p.slice == si, "posting points at the wrong slice");
      require(p.entity < entities_.size(), "posting entity id out of range");
      require(pi == s.posting_begin || postings_[pi - 1].entity < p.entity,
              "postings not sorted by entity");
      require(p.text_count > 0 && p.text_count <= s.text_total, "posting text_count out of range");
      require(p.user_count <= p.text_count, "posting user_count exceeds text_count");
      require(p.strong_pos_count + p.strong_neg_count <= p.text_count,
              "strong counts exceed text_count");
      const auto tc = static_cast<std::int64_t>(p.text_count);
      require(p.attitude_sum >= -4 * tc && p.attitude_sum <= 4 * tc, "attitude_sum out of range");
      require(p.sentimentality_sum >= 0 && p.sentimentality_sum <= 8 * tc,
              "sentimentality_sum out of range");
      require(p.cooccur_begin <= cooccur_.size() && p.cooccur_count <= cooccur_.size() - p.cooccur_begin,
              "co-occurrence range overflow");
    }
  }
  require(expected_posting == postings_.size(), "postings not covered by slices");

  for (const EntityPosting& p : postings_) {
    const auto co = cooccurrences(p);
    for (std::size_t i = 0; i < co.size(); ++i) {
      const CoOccurrence& c = co[i];
      require(c.entity < entities_.size() && c.entity != p.entity, "bad co-occurrence entity");
      require(i == 0 || co[i - 1].entity < c.entity, "co-occurrences not sorted");
      require(c.pair_text_count > 0 && c.pair_text_count <= p.text_count,
              "pair_text_count out of range");
      const auto pc = static_cast<std::int64_t>(c.pair_text_count);
      require(c.pair_attitude_sum >= -4 * pc && c.pair_attitude_sum <= 4 * pc,
              "pair_attitude_sum out of range");
    }
  }
}

void EntityIndex::save(const std::filesystem::path& path) const {
  const auto bytes = serialize();
  write_file_atomic(path, [&](std::ostream& out) {
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  });
}

EntityIndex EntityIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return deserialize(bytes);
}

}  // namespace entity_pulse
