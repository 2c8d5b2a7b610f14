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

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string_view>
#include <unordered_map>

#include "qdisorder/ensemble.hpp"

namespace qdisorder {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Append-only binary file of RealizationRecords for one model point, keyed
/// by a hash of everything that determines the records (model, pairs, seed).
///
/// Layout: "QDCACHE1", key hash (u64), values per record (u64), then records
/// of index (u64), flags (u8), values (f64 x count), FNV-1a checksum (u64).
/// A truncated trailing record is dropped on open.
class RealizationCache {
   public:
    /// With `resume` false any existing file is replaced. Throws
    /// CacheCorruptionError when an existing file was written for another key
    /// or a complete record fails its checksum.
    RealizationCache(std::filesystem::path path, std::uint64_t key_hash, std::size_t values_per_record, bool resume);

    const RealizationRecord *find(std::uint64_t index) const;
    void append(std::span<const RealizationRecord> records);
    std::size_t size() const { return records_.size(); }
    const std::filesystem::path &path() const { return path_; }

   private:
    std::filesystem::path path_;
    std::uint64_t key_hash_;
    std::size_t values_per_record_;
    std::unordered_map<std::uint64_t, RealizationRecord> records_;
    std::ofstream out_;
};

}  // namespace qdisorder
