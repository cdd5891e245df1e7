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

#include "maxlin/codes.hpp"

#include <algorithm>
#include <limits>

#include "maxlin/error.hpp"

namespace maxlin {
namespace {

// Rank of a handful of vectors; `rows` is consumed.
std::size_t small_rank(std::vector<gf::Vector> rows,
                       const gf::FieldOrder& f) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    gf::Residue inv = f.inv(rows[rank][c]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      gf::Residue factor = f.mul(rows[r][c], inv);
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[rank][k]));
      }
    }
    ++rank;
  }
  return rank;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// Visits every d-subset of {0..m-1} in lexicographic order until fn
// returns false.
template <typename Fn>
void for_each_subset(std::size_t m, std::size_t d, Fn&& fn) {
  if (d > m) return;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == m - d + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<gf::Vector> rows_of(const gf::FieldMatrix& b) {
  std::vector<gf::Vector> out;
  out.reserve(b.rows());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    auto row = b.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

bool subset_dependent(const std::vector<gf::Vector>& rows,
                      const std::vector<std::size_t>& idx,
                      const gf::FieldOrder& f) {
  std::vector<gf::Vector> pick;
  pick.reserve(idx.size());
  for (std::size_t i : idx) pick.push_back(rows[i]);
  return small_rank(std::move(pick), f) < idx.size();
}

}  // namespace

CodeView CodeView::from_matrix(const gf::FieldMatrix& b) {
  CodeView v{b.transpose(), b.rows(), 0, 0};
  v.rank = gf::rank(v.parity_check);
  v.dimension = v.length - v.rank;
  return v;
}

CodeView CodeView::from_instance(const LinsatInstance& inst) {
  return from_matrix(inst.matrix());
}

std::optional<std::size_t> min_distance_by_subsets(const CodeView& view,
                                                   std::size_t cap,
                                                   std::uint64_t budget) {
  const gf::FieldMatrix b = view.parity_check.transpose();
  const auto rows = rows_of(b);
  const gf::FieldOrder& f = b.order();
  const std::size_t m = rows.size();
  std::uint64_t spent = 0;
  for (std::size_t d = 1; d <= std::min(cap, m); ++d) {
    spent += binomial(m, d);
    if (spent > budget) {
      throw GuardExceeded("subset search over " + std::to_string(m) +
                          " rows up to size " + std::to_string(d) +
                          " exceeds budget " + std::to_string(budget));
    }
    bool found = false;
    for_each_subset(m, d, [&](const std::vector<std::size_t>& idx) {
      found = subset_dependent(rows, idx, f);
      return !found;
    });
    if (found) return d;
  }
  return std::nullopt;
}

void for_each_codeword(
    const CodeView& view, std::uint64_t limit,
    const std::function<void(std::span<const gf::Residue>)>& fn) {
  const std::uint64_t q = view.q();
  const std::size_t k = view.dimension;
  if (saturating_power(q, k) > limit) {
    throw GuardExceeded("codeword enumeration q^k = " + std::to_string(q) +
                        "^" + std::to_string(k) + " exceeds limit " +
                        std::to_string(limit));
  }
  const gf::FieldOrder& f = view.parity_check.order();
  const std::size_t m = view.length;
  std::vector<gf::Vector> basis;
  if (k > 0) {
    gf::FieldMatrix g = gf::kernel_basis(view.parity_check);
    for (std::size_t j = 0; j < g.cols(); ++j) basis.push_back(g.column(j));
  }
  gf::Vector word(m, 0);
  std::vector<gf::Residue> digits(k, 0);
  // Odometer over message digits. Every digit change, including a wrap from
  // q-1 to 0, adds the matching basis vector once.
  while (true) {
    fn(word);
    std::size_t i = k;
    bool done = true;
    while (i > 0) {
      --i;
      for (std::size_t r = 0; r < m; ++r) {
        word[r] = f.add(word[r], basis[i][r]);
      }
      if (digits[i] + 1 < q) {
        ++digits[i];
        done = false;
        break;
      }
      digits[i] = 0;
    }
    if (done) return;
  }
}

std::optional<std::size_t> min_distance_by_enumeration(const CodeView& view,
                                                       std::uint64_t limit) {
  if (view.dimension == 0) return std::nullopt;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_codeword(view, limit, [&](std::span<const gf::Residue> c) {
    auto w = static_cast<std::size_t>(
        std::count_if(c.begin(), c.end(), [](gf::Residue r) { return r != 0; }));
    if (w > 0) best = std::min(best, w);
  });
  return best;
}

DistanceResult min_distance(const CodeView& view, std::size_t cap,
                            std::uint64_t limit) {
  DistanceResult out;
  if (view.dimension == 0) {
    out.kind = DistanceResult::Kind::kNoCodewords;
    out.method = "rank";
    return out;
  }
  if (saturating_power(view.q(), view.dimension) <= limit) {
    out.kind = DistanceResult::Kind::kExact;
    out.value = *min_distance_by_enumeration(view, limit);
    out.method = "enumeration";
    return out;
  }
  out.method = "subset_search";
  // Shrink the cap until the search fits the subset budget.
  constexpr std::uint64_t kBudget = 50'000'000;
  std::uint64_t spent = 0;
  std::size_t effective = 0;
  while (effective < std::min(cap, view.length)) {
    spent += binomial(view.length, effective + 1);
    if (spent > kBudget) break;
    ++effective;
  }
  cap = effective;
  auto d = min_distance_by_subsets(view, cap, kBudget);
  if (d) {
    out.kind = DistanceResult::Kind::kExact;
    out.value = *d;
  } else {
    out.kind = DistanceResult::Kind::kAboveCap;
    out.value = cap;
  }
  return out;
}

std::string to_string(DependencyPattern p) {
  switch (p) {
    case DependencyPattern::kDuplicate: return "duplicate";
    case DependencyPattern::kAndOrGadget: return "and_or_gadget";
    case DependencyPattern::kCycle: return "cycle";
    case DependencyPattern::kOther: return "other";
  }
  return "other";
}

std::size_t DependencyReport::count(DependencyPattern p) const {
  return static_cast<std::size_t>(std::count_if(
      sets.begin(), sets.end(),
      [p](const DependentSet& s) { return s.pattern == p; }));
}

DependencyReport find_dependent_row_sets(
    const gf::FieldMatrix& b, std::size_t cap,
    const std::vector<std::set<int>>& groups, std::size_t max_reports) {
  DependencyReport report;
  report.cap = cap;
  const auto rows = rows_of(b);
  const gf::FieldOrder& f = b.order();
  const std::size_t m = rows.size();
  auto touches_two = [&](std::size_t r) {
    return std::count_if(rows[r].begin(), rows[r].end(),
                         [](gf::Residue v) { return v != 0; }) == 2;
  };
  for (std::size_t d = 1; d <= std::min(cap, m) && !report.truncated; ++d) {
    for_each_subset(m, d, [&](const std::vector<std::size_t>& idx) {
      if (!subset_dependent(rows, idx, f)) return true;
      std::vector<std::size_t> sub;
      for (std::size_t skip = 0; skip < d; ++skip) {
        sub.clear();
        for (std::size_t j = 0; j < d; ++j) {
          if (j != skip) sub.push_back(idx[j]);
        }
        if (subset_dependent(rows, sub, f)) return true;
      }
      DependentSet s{idx, DependencyPattern::kOther};
      if (d == 2) {
        s.pattern = DependencyPattern::kDuplicate;
      } else if (d == 3 && groups.size() == m) {
        std::set<int> common = groups[idx[0]];
        for (std::size_t j = 1; j < 3; ++j) {
          std::set<int> next;
          std::set_intersection(common.begin(), common.end(),
                                groups[idx[j]].begin(), groups[idx[j]].end(),
                                std::inserter(next, next.begin()));
          common = std::move(next);
        }
        if (!common.empty()) s.pattern = DependencyPattern::kAndOrGadget;
      }
      if (s.pattern == DependencyPattern::kOther &&
          std::all_of(idx.begin(), idx.end(), touches_two)) {
        s.pattern = DependencyPattern::kCycle;
      }
      report.sets.push_back(std::move(s));
      if (report.sets.size() >= max_reports) {
        report.truncated = true;
        return false;
      }
      return true;
    });
  }
  return report;
}

DependencyReport find_dependent_row_sets(const LinsatInstance& inst,
                                         std::size_t cap,
                                         std::size_t max_reports) {
  std::vector<std::set<int>> groups;
  for (const LinsatConstraint& c : inst.constraints()) {
    groups.push_back(c.groups);
  }
  return find_dependent_row_sets(inst.matrix(), cap, groups, max_reports);
}

std::map<std::size_t, std::uint64_t> weight_enumerator(const CodeView& view,
                                                       std::uint64_t limit) {
  std::map<std::size_t, std::uint64_t> hist;
  for_each_codeword(view, limit, [&](std::span<const gf::Residue> c) {
    auto w = static_cast<std::size_t>(
        std::count_if(c.begin(), c.end(), [](gf::Residue r) { return r != 0; }));
    ++hist[w];
  });
  return hist;
}

}  // namespace maxlin
