// Copyright 2026 The maxlin Authors
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

#include "maxlin/decoders.hpp"

#include <algorithm>
#include <random>

#include "internal.hpp"
#include "maxlin/error.hpp"
#include "maxlin/linsat.hpp"

namespace maxlin {
namespace {

std::size_t weight(std::span<const gf::Residue> v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](gf::Residue r) { return r != 0; }));
}

void check_syndrome(std::size_t rows, std::span<const gf::Residue> syndrome) {
  if (syndrome.size() != rows) {
    throw InvalidArgument("syndrome has " + std::to_string(syndrome.size()) +
                          " entries, expected " + std::to_string(rows));
  }
}

void check_syndrome(const CodeView& view,
                    std::span<const gf::Residue> syndrome) {
  check_syndrome(view.parity_check.rows(), syndrome);
}

}  // namespace

LookupDecoder::LookupDecoder(const CodeView& view, std::uint64_t limit)
    : length_(view.length), syndrome_length_(view.parity_check.rows()) {
  const std::uint64_t cosets = saturating_power(view.q(), view.rank);
  if (cosets > limit) {
    throw GuardExceeded("syndrome table of size q^rank = " +
                        std::to_string(view.q()) + "^" +
                        std::to_string(view.rank) + " exceeds limit " +
                        std::to_string(limit));
  }
  const std::uint64_t work_limit = limit * 64;
  std::uint64_t work = 0;
  for (std::size_t w = 0; w <= view.length && table_.size() < cosets; ++w) {
    internal::for_each_of_weight(view.length, w, view.q(), [&](const gf::Vector& e) {
      if (++work > work_limit) {
        throw GuardExceeded("syndrome table construction exceeds " +
                            std::to_string(work_limit) + " error patterns");
      }
      auto [it, inserted] = table_.try_emplace(view.syndrome(e), Entry{e, true});
      if (inserted) {
        max_weight_ = w;
      } else if (weight(it->second.leader) == w) {
        it->second.unique = false;
      }
    });
  }
}

std::optional<gf::Vector> LookupDecoder::decode(
    std::span<const gf::Residue> syndrome) const {
  check_syndrome(syndrome_length_, syndrome);
  auto it = table_.find(gf::Vector(syndrome.begin(), syndrome.end()));
  if (it == table_.end()) return std::nullopt;
  return it->second.leader;
}

bool LookupDecoder::unique_leader(std::span<const gf::Residue> syndrome) const {
  auto it = table_.find(gf::Vector(syndrome.begin(), syndrome.end()));
  return it != table_.end() && it->second.unique;
}

DecoderCapability LookupDecoder::capability() const {
  return {"lookup", true, max_weight_};
}

gf::Vector nearest_codeword(const CodeView& view,
                            std::span<const gf::Residue> word,
                            std::uint64_t limit) {
  if (word.size() != view.length) {
    throw InvalidArgument("word has " + std::to_string(word.size()) +
                          " entries, expected " + std::to_string(view.length));
  }
  gf::Vector best;
  std::size_t best_distance = view.length + 1;
  for_each_codeword(view, limit, [&](std::span<const gf::Residue> c) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < c.size(); ++i) d += c[i] != word[i];
    if (d < best_distance ||
        (d == best_distance &&
         std::lexicographical_compare(c.begin(), c.end(), best.begin(),
                                      best.end()))) {
      best_distance = d;
      best.assign(c.begin(), c.end());
    }
  });
  return best;
}

NearestDecoder::NearestDecoder(const CodeView& view, std::uint64_t limit)
    : view_(view) {
  for_each_codeword(view, limit, [&](std::span<const gf::Residue> c) {
    codewords_.emplace_back(c.begin(), c.end());
  });
  std::sort(codewords_.begin(), codewords_.end());
}

std::optional<gf::Vector> NearestDecoder::decode(
    std::span<const gf::Residue> syndrome) const {
  check_syndrome(view_, syndrome);
  auto e0 = gf::solve(view_.parity_check, syndrome);
  if (!e0) return std::nullopt;
  const gf::FieldOrder& f = view_.parity_check.order();
  // Sorted codewords make the first strict minimum the lexicographic one.
  const gf::Vector* best = nullptr;
  std::size_t best_distance = view_.length + 1;
  for (const gf::Vector& c : codewords_) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < c.size(); ++i) d += c[i] != (*e0)[i];
    if (d < best_distance) {
      best_distance = d;
      best = &c;
    }
  }
  gf::Vector e(view_.length);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = f.sub((*e0)[i], (*best)[i]);
  return e;
}

DecoderCapability NearestDecoder::capability() const {
  return {"nearest", true, view_.length};
}

std::optional<gf::Vector> isd_prange_decode(
    const CodeView& view, std::span<const gf::Residue> syndrome,
    std::size_t iterations, std::uint64_t seed,
    std::optional<std::size_t> max_weight) {
  if (iterations < 1) throw InvalidArgument("ISD needs at least 1 iteration");
  check_syndrome(view, syndrome);
  const gf::FieldMatrix& h = view.parity_check;
  const std::size_t m = view.length;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> cols(m);
  std::optional<gf::Vector> best;
  std::size_t best_weight = m + 1;
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < m; ++i) cols[i] = i;
    internal::shuffle(cols, rng);
    gf::FieldMatrix permuted = h.select_columns(cols);
    gf::EchelonForm ef = gf::reduce_row_echelon(permuted);
    std::vector<std::size_t> support;
    for (std::size_t c : ef.pivot_cols) support.push_back(cols[c]);
    std::sort(support.begin(), support.end());
    auto part = gf::solve(h.select_columns(support), syndrome);
    if (!part) return std::nullopt;  // syndrome outside the column space
    gf::Vector e(m, 0);
    for (std::size_t j = 0; j < support.size(); ++j) e[support[j]] = (*part)[j];
    std::size_t w = weight(e);
    if (w < best_weight || (w == best_weight && e < *best)) {
      best_weight = w;
      best = std::move(e);
    }
    if (best_weight == 0) break;
  }
  if (best && max_weight && best_weight > *max_weight) return std::nullopt;
  return best;
}

PrangeDecoder::PrangeDecoder(const CodeView& view, IsdOptions options)
    : view_(view), options_(options) {
  if (options_.iterations < 1) {
    throw InvalidArgument("ISD needs at least 1 iteration");
  }
}

std::optional<gf::Vector> PrangeDecoder::decode(
    std::span<const gf::Residue> syndrome) const {
  check_syndrome(view_, syndrome);
  std::uint64_t seed = internal::hash_words(syndrome, options_.seed);
  return isd_prange_decode(view_, syndrome, options_.iterations, seed,
                           options_.max_weight);
}

DecoderCapability PrangeDecoder::capability() const {
  return {"isd", false, options_.max_weight.value_or(view_.length)};
}

std::string to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::kLookup: return "lookup";
    case DecoderKind::kNearest: return "nearest";
    case DecoderKind::kIsd: return "isd";
  }
  return "lookup";
}

DecoderKind parse_decoder_kind(std::string_view name) {
  if (name == "lookup") return DecoderKind::kLookup;
  if (name == "nearest") return DecoderKind::kNearest;
  if (name == "isd") return DecoderKind::kIsd;
  throw InvalidArgument("unknown decoder '" + std::string(name) +
                        "' (expected lookup, nearest or isd)");
}

std::unique_ptr<Decoder> make_decoder(DecoderKind kind, const CodeView& view,
                                      const DecoderOptions& options) {
  switch (kind) {
    case DecoderKind::kLookup:
      return std::make_unique<LookupDecoder>(view, options.lookup_limit);
    case DecoderKind::kNearest:
      return std::make_unique<NearestDecoder>(view, options.enumeration_limit);
    case DecoderKind::kIsd:
      return std::make_unique<PrangeDecoder>(view, options.isd);
  }
  throw InvalidArgument("unknown decoder kind");
}

}  // namespace maxlin
