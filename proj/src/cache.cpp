// Copyright 2026 The qdisorder Authors
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

#include "qdisorder/cache.hpp"

#include <array>
#include <cstring>
#include <string>
#include <vector>

#include "qdisorder/errors.hpp"

namespace qdisorder {
namespace {

constexpr std::array<char, 8> kMagic = {'Q', 'D', 'C', 'A', 'C', 'H', 'E', '1'};
constexpr std::size_t kHeaderBytes = 8 + 8 + 8;

std::size_t record_bytes(std::size_t values) { return 8 + 1 + 8 * values + 8; }

std::vector<char> encode(const RealizationRecord &r) {
    std::vector<char> buf(record_bytes(r.values.size()));
    char *p = buf.data();
    std::memcpy(p, &r.index, 8);
    p += 8;
    *p++ = static_cast<char>((r.degenerate ? 1 : 0) | (r.failed ? 2 : 0));
    std::memcpy(p, r.values.data(), 8 * r.values.size());
    p += 8 * r.values.size();
    const std::uint64_t sum = fnv1a64(std::string_view(buf.data(), static_cast<std::size_t>(p - buf.data())));
    std::memcpy(p, &sum, 8);
    return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
    std::uint64_t h = basis;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RealizationCache::RealizationCache(std::filesystem::path path, std::uint64_t key_hash, std::size_t values_per_record,
                                   bool resume)
    : path_(std::move(path)), key_hash_(key_hash), values_per_record_(values_per_record) {
    std::size_t valid_bytes = 0;
    if (resume && std::filesystem::exists(path_)) {
        std::ifstream in(path_, std::ios::binary);
        if (!in) throw IoError("cannot read cache file " + path_.string());
        std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (data.size() >= kHeaderBytes) {
            std::uint64_t stored_hash = 0, stored_values = 0;
            std::memcpy(&stored_hash, data.data() + 8, 8);
            std::memcpy(&stored_values, data.data() + 16, 8);
            if (std::memcmp(data.data(), kMagic.data(), 8) != 0 || stored_hash != key_hash_ ||
                stored_values != values_per_record_) {
                throw CacheCorruptionError("cache file " + path_.string() + " belongs to a different configuration");
            }
            const std::size_t rb = record_bytes(values_per_record_);
            std::size_t offset = kHeaderBytes;
            for (; offset + rb <= data.size(); offset += rb) {
                const char *p = data.data() + offset;
                std::uint64_t sum = 0;
                std::memcpy(&sum, p + rb - 8, 8);
                if (sum != fnv1a64(std::string_view(p, rb - 8))) {
                    throw CacheCorruptionError("checksum mismatch in cache file " + path_.string());
                }
                RealizationRecord r;
                std::memcpy(&r.index, p, 8);
                r.degenerate = (p[8] & 1) != 0;
                r.failed = (p[8] & 2) != 0;
                r.values.resize(values_per_record_);
                std::memcpy(r.values.data(), p + 9, 8 * values_per_record_);
                records_.insert_or_assign(r.index, std::move(r));
            }
            valid_bytes = offset;
        }
    }

    if (valid_bytes == 0) {
        out_.open(path_, std::ios::binary | std::ios::trunc);
        if (!out_) throw IoError("cannot create cache file " + path_.string());
        out_.write(kMagic.data(), 8);
        out_.write(reinterpret_cast<const char *>(&key_hash_), 8);
        const std::uint64_t v = values_per_record_;
        out_.write(reinterpret_cast<const char *>(&v), 8);
    } else {
        std::filesystem::resize_file(path_, valid_bytes);
        out_.open(path_, std::ios::binary | std::ios::app);
        if (!out_) throw IoError("cannot append to cache file " + path_.string());
    }
    out_.flush();
}

const RealizationRecord *RealizationCache::find(std::uint64_t index) const {
    auto it = records_.find(index);
    return it == records_.end() ? nullptr : &it->second;
}

void RealizationCache::append(std::span<const RealizationRecord> records) {
    for (const RealizationRecord &r : records) {
        if (r.values.size() != values_per_record_) {
            throw CacheCorruptionError("record has " + std::to_string(r.values.size()) + " values, cache expects " +
                                       std::to_string(values_per_record_));
        }
        const std::vector<char> buf = encode(r);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        records_.insert_or_assign(r.index, r);
    }
    out_.flush();
    if (!out_) throw IoError("write to cache file " + path_.string() + " failed");
}

}  // namespace qdisorder
