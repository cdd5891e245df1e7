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

#include "maxlin/gf.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include "maxlin/error.hpp"

namespace maxlin::gf {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 13> kWitnesses = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n | 1;
  while (!is_prime(c)) c += 2;
  return c;
}

FieldOrder::FieldOrder(std::uint64_t p) : p_(p) {
  if (p > kMaxOrder) {
    throw InvalidArgument("field order " + std::to_string(p) +
                          " exceeds the supported maximum");
  }
  if (!is_prime(p)) {
    throw InvalidArgument("field order " + std::to_string(p) +
                          " is not prime");
  }
}

Residue FieldOrder::pow(Residue a, std::uint64_t e) const {
  return static_cast<Residue>(powmod64(a, e, p_));
}

Residue FieldOrder::inv(Residue a) const {
  if (a % p_ == 0) throw InvalidArgument("inverse of zero");
  return pow(a, p_ - 2);
}

Residue FieldOrder::reduce(std::int64_t v) const {
  auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

std::int64_t FieldOrder::lift(Residue r, std::int64_t low) const {
  auto p = static_cast<std::int64_t>(p_);
  std::int64_t shift = static_cast<std::int64_t>(r) - reduce(low);
  if (shift < 0) shift += p;
  return low + shift;
}

FieldElement::FieldElement(Residue value, FieldOrder order)
    : value_(static_cast<Residue>(value % order.value())), order_(order) {}

void FieldElement::check_same_order(const FieldElement& o) const {
  if (!(order_ == o.order_)) {
    throw InvalidArgument("field elements of different orders");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_order(o);
  return {order_.add(value_, o.value_), order_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_order(o);
  return {order_.sub(value_, o.value_), order_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_order(o);
  return {order_.mul(value_, o.value_), order_};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same_order(o);
  return {order_.mul(value_, order_.inv(o.value_)), order_};
}

FieldElement FieldElement::operator-() const {
  return {order_.neg(value_), order_};
}

FieldElement FieldElement::inverse() const {
  return {order_.inv(value_), order_};
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, FieldOrder order)
    : rows_(rows), cols_(cols), order_(order), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::from_rows(
    FieldOrder order,
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  FieldMatrix m(rows.size(), cols, order);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw InvalidArgument("ragged matrix rows");
    std::size_t c = 0;
    for (std::int64_t v : row) m.data_[r * cols + c++] = order.reduce(v);
    ++r;
  }
  return m;
}

FieldMatrix FieldMatrix::from_rows(FieldOrder order,
                                   const std::vector<Vector>& rows,
                                   std::size_t cols) {
  FieldMatrix m(rows.size(), cols, order);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m.data_[r * cols + c] = static_cast<Residue>(rows[r][c] % order.value());
    }
  }
  return m;
}

FieldMatrix FieldMatrix::identity(std::size_t n, FieldOrder order) {
  FieldMatrix m(n, n, order);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, Residue v) {
  data_[r * cols_ + c] = static_cast<Residue>(v % order_.value());
}

Vector FieldMatrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_, order_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  }
  return t;
}

Vector FieldMatrix::multiply(std::span<const Residue> x) const {
  if (x.size() != cols_) {
    throw InvalidArgument("matrix-vector dimension mismatch: " +
                          std::to_string(cols_) + " columns, vector of " +
                          std::to_string(x.size()));
  }
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + std::uint64_t{at(r, c)} * x[c]) % order_.value();
    }
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

FieldMatrix FieldMatrix::multiply(const FieldMatrix& other) const {
  if (cols_ != other.rows_ || !(order_ == other.order_)) {
    throw InvalidArgument("matrix-matrix dimension or order mismatch");
  }
  FieldMatrix out(rows_, other.cols_, order_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Residue a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        Residue& dst = out.data_[r * other.cols_ + c];
        dst = order_.add(dst, order_.mul(a, other.at(k, c)));
      }
    }
  }
  return out;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> rows) const {
  FieldMatrix out(rows.size(), cols_, order_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_),
                cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }
  return out;
}

FieldMatrix FieldMatrix::select_columns(
    std::span<const std::size_t> cols) const {
  FieldMatrix out(rows_, cols.size(), order_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out.data_[r * cols.size() + i] = at(r, cols[i]);
    }
  }
  return out;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](Residue v) { return v == 0; });
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  os << "GF(" << order_.value() << ") " << rows_ << "x" << cols_ << " [";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
  }
  os << "]";
  return os.str();
}

EchelonForm reduce_row_echelon(const FieldMatrix& m) {
  FieldMatrix a = m;
  const FieldOrder& f = m.order();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a.at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < cols; ++k) {
        Residue tmp = a.at(r, k);
        a.set(r, k, a.at(pivot, k));
        a.set(pivot, k, tmp);
      }
    }
    Residue scale = f.inv(a.at(r, c));
    for (std::size_t k = c; k < cols; ++k) a.set(r, k, f.mul(a.at(r, k), scale));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Residue factor = a.at(i, c);
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        a.set(i, k, f.sub(a.at(i, k), f.mul(factor, a.at(r, k))));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), r, std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) { return reduce_row_echelon(m).rank; }

std::optional<Vector> solve(const FieldMatrix& m,
                            std::span<const Residue> rhs) {
  if (rhs.size() != m.rows()) {
    throw InvalidArgument("solve: rhs has " + std::to_string(rhs.size()) +
                          " entries, matrix has " + std::to_string(m.rows()) +
                          " rows");
  }
  const FieldOrder& f = m.order();
  FieldMatrix aug(m.rows(), m.cols() + 1, f);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, m.cols(), static_cast<Residue>(rhs[r] % f.value()));
  }
  EchelonForm ef = reduce_row_echelon(aug);
  if (!ef.pivot_cols.empty() && ef.pivot_cols.back() == m.cols()) {
    return std::nullopt;
  }
  Vector x(m.cols(), 0);
  for (std::size_t i = 0; i < ef.rank; ++i) {
    x[ef.pivot_cols[i]] = ef.echelon.at(i, m.cols());
  }
  return x;
}

FieldMatrix kernel_basis(const FieldMatrix& m) {
  const FieldOrder& f = m.order();
  EchelonForm ef = reduce_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ef.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FieldMatrix basis(m.cols(), free_cols.size(), f);
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    basis.set(fc, j, 1);
    for (std::size_t i = 0; i < ef.rank; ++i) {
      basis.set(ef.pivot_cols[i], j, f.neg(ef.echelon.at(i, fc)));
    }
  }
  return basis;
}

}  // namespace maxlin::gf
