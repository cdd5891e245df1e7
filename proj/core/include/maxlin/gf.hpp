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

// Exact arithmetic and dense linear algebra over prime fields GF(p).
//
// Field elements are stored as residues in [0, p). Matrices keep their
// entries as a flat row-major residue array plus the field order; the
// FieldElement wrapper is available for code that wants value semantics
// with the order attached.

#ifndef MAXLIN_GF_HPP_
#define MAXLIN_GF_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maxlin::gf {

using Residue = std::uint32_t;
using Vector = std::vector<Residue>;

// Deterministic Miller-Rabin. The witness set {2, ..., 41} is exact for all
// n < 3.3 * 10^24, which covers every 64-bit input.
bool is_prime(std::uint64_t n);

// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

// Largest supported field order. Products of two residues must fit into
// 64 bits.
inline constexpr std::uint64_t kMaxOrder = (std::uint64_t{1} << 32) - 1;

class FieldOrder {
 public:
  // Throws InvalidArgument unless p is a prime <= kMaxOrder.
  explicit FieldOrder(std::uint64_t p);

  std::uint64_t value() const { return p_; }

  Residue add(Residue a, Residue b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const {
    return static_cast<Residue>(a >= b ? a - b : a + p_ - b);
  }
  Residue neg(Residue a) const {
    return static_cast<Residue>(a == 0 ? 0 : p_ - a);
  }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((std::uint64_t{a} * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  // Throws InvalidArgument on zero.
  Residue inv(Residue a) const;
  // Canonical residue of an arbitrary integer.
  Residue reduce(std::int64_t v) const;
  // Representative of `r` in the window [low, low + p).
  std::int64_t lift(Residue r, std::int64_t low) const;

  friend bool operator==(const FieldOrder&, const FieldOrder&) = default;

 private:
  std::uint64_t p_;
};

class FieldElement {
 public:
  FieldElement(Residue value, FieldOrder order);

  Residue value() const { return value_; }
  const FieldOrder& order() const { return order_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  void check_same_order(const FieldElement& o) const;

  Residue value_;
  FieldOrder order_;
};

class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, FieldOrder order);
  // Entries are reduced modulo p; every row must have the same length.
  static FieldMatrix from_rows(
      FieldOrder order,
      std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static FieldMatrix from_rows(FieldOrder order,
                               const std::vector<Vector>& rows,
                               std::size_t cols);
  static FieldMatrix identity(std::size_t n, FieldOrder order);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldOrder& order() const { return order_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v);
  FieldElement element(std::size_t r, std::size_t c) const {
    return FieldElement(at(r, c), order_);
  }

  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector column(std::size_t c) const;

  FieldMatrix transpose() const;
  // Throws InvalidArgument on dimension mismatch.
  Vector multiply(std::span<const Residue> x) const;
  FieldMatrix multiply(const FieldMatrix& other) const;
  // Submatrix made of the given rows, in the given order.
  FieldMatrix select_rows(std::span<const std::size_t> rows) const;
  FieldMatrix select_columns(std::span<const std::size_t> cols) const;

  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  FieldOrder order_;
  std::vector<Residue> data_;
};

struct EchelonForm {
  FieldMatrix echelon;  // reduced row echelon form
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // strictly increasing
};

EchelonForm reduce_row_echelon(const FieldMatrix& m);

std::size_t rank(const FieldMatrix& m);

// Any x with m * x = rhs, or nullopt when the system is inconsistent. Free
// variables are set to zero.
std::optional<Vector> solve(const FieldMatrix& m, std::span<const Residue> rhs);

// Basis of the right null space, one basis vector per column. The result
// has m.cols() rows and m.cols() - rank(m) columns.
FieldMatrix kernel_basis(const FieldMatrix& m);

}  // namespace maxlin::gf

#endif  // MAXLIN_GF_HPP_
