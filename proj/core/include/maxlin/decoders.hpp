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

// Syndrome decoders for the code of a CodeView. A decoder is built once per
// code; decode() is const and safe to call concurrently.

#ifndef MAXLIN_DECODERS_HPP_
#define MAXLIN_DECODERS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxlin/codes.hpp"
#include "maxlin/gf.hpp"

namespace maxlin {

inline constexpr std::uint64_t kDefaultLookupLimit = std::uint64_t{1} << 20;
inline constexpr std::size_t kDefaultIsdIterations = 200;

struct DecoderCapability {
  std::string name;
  bool complete = false;     // always returns a minimum-weight error
  std::size_t max_weight = 0;  // heaviest error the decoder will return
};

class Decoder {
 public:
  virtual ~Decoder() = default;
  // An error e of length m with H e = syndrome, or nullopt. Throws
  // InvalidArgument when the syndrome length is not rows(H).
  virtual std::optional<gf::Vector> decode(
      std::span<const gf::Residue> syndrome) const = 0;
  virtual DecoderCapability capability() const = 0;
};

// Coset-leader table. Leaders are the lexicographically smallest errors of
// minimum weight in their coset.
class LookupDecoder : public Decoder {
 public:
  // Throws GuardExceeded when q^rank(H) > limit.
  explicit LookupDecoder(const CodeView& view,
                         std::uint64_t limit = kDefaultLookupLimit);

  std::optional<gf::Vector> decode(
      std::span<const gf::Residue> syndrome) const override;
  DecoderCapability capability() const override;

  std::size_t size() const { return table_.size(); }
  // False when another error of the leader's weight shares the coset.
  bool unique_leader(std::span<const gf::Residue> syndrome) const;

 private:
  struct Entry {
    gf::Vector leader;
    bool unique = true;
  };
  std::map<gf::Vector, Entry> table_;
  std::size_t length_ = 0;
  std::size_t syndrome_length_ = 0;
  std::size_t max_weight_ = 0;
};

// Exhaustive nearest codeword; ties go to the lexicographically smallest
// codeword. Throws GuardExceeded when q^k > limit.
gf::Vector nearest_codeword(const CodeView& view,
                            std::span<const gf::Residue> word,
                            std::uint64_t limit = kDefaultEnumerationLimit);

// Decodes by solving H e0 = s and subtracting the nearest codeword.
class NearestDecoder : public Decoder {
 public:
  explicit NearestDecoder(const CodeView& view,
                          std::uint64_t limit = kDefaultEnumerationLimit);

  std::optional<gf::Vector> decode(
      std::span<const gf::Residue> syndrome) const override;
  DecoderCapability capability() const override;

 private:
  CodeView view_;
  std::vector<gf::Vector> codewords_;  // in enumeration order
};

struct IsdOptions {
  std::size_t iterations = kDefaultIsdIterations;
  std::uint64_t seed = 0;
  // Results heavier than this are discarded; nullopt accepts any weight.
  std::optional<std::size_t> max_weight;
};

// Prange information-set decoding. Each iteration permutes the columns of
// H, takes the first rank(H) independent ones, and solves for an error
// supported on them. The lightest solution wins, ties lexicographically.
std::optional<gf::Vector> isd_prange_decode(const CodeView& view,
                                            std::span<const gf::Residue> syndrome,
                                            std::size_t iterations,
                                            std::uint64_t seed,
                                            std::optional<std::size_t> max_weight = {});

// The generator of each call is seeded from the options seed and the
// syndrome, so decode() is a pure function.
class PrangeDecoder : public Decoder {
 public:
  PrangeDecoder(const CodeView& view, IsdOptions options);

  std::optional<gf::Vector> decode(
      std::span<const gf::Residue> syndrome) const override;
  DecoderCapability capability() const override;

 private:
  CodeView view_;
  IsdOptions options_;
};

enum class DecoderKind { kLookup, kNearest, kIsd };

std::string to_string(DecoderKind k);
DecoderKind parse_decoder_kind(std::string_view name);

struct DecoderOptions {
  std::uint64_t lookup_limit = kDefaultLookupLimit;
  std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
  IsdOptions isd;
};

std::unique_ptr<Decoder> make_decoder(DecoderKind kind, const CodeView& view,
                                      const DecoderOptions& options = {});

}  // namespace maxlin

#endif  // MAXLIN_DECODERS_HPP_
