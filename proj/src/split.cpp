#include "lexidiv/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "lexidiv/error.hpp"
#include "lexidiv/rng.hpp"

namespace lexidiv::classify {

void validate(const SplitSpec& spec) {
  const double f[3] = {spec.train_fraction, spec.validation_fraction, spec.test_fraction};
  for (double x : f)
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("split fractions must lie in [0, 1]");
  if (std::fabs(f[0] + f[1] + f[2] - 1.0) > 1e-9) throw ValidationError("split fractions must sum to 1");
}

std::array<std::size_t, 3> partition_sizes(std::size_t n, const SplitSpec& spec) {
  validate(spec);
  const double f[3] = {spec.train_fraction, spec.validation_fraction, spec.test_fraction};
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double ideal = static_cast<double>(n) * f[k];
    const double fl = std::floor(ideal + 1e-9);
    sizes[k] = static_cast<std::size_t>(fl);
    remainder[k] = std::max(0.0, ideal - fl);
    assigned += sizes[k];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return remainder[a] > remainder[b]; });
  // The leftover count equals the sum of the fractional parts, so it never
  // exceeds the number of partitions holding a positive remainder.
  for (std::size_t left = n - std::min(n, assigned), i = 0; left > 0; --left, ++i) ++sizes[order[i % 3]];
  return sizes;
}

namespace {

// Per-class partition counts: each cell is the floor or ceiling of its ideal
// share, rows sum to class sizes and columns to `sizes`. Leftover units go to
// the largest remainders first (ties in `rank` order); augmenting paths
// repair any column the greedy pass leaves short.
std::vector<std::array<std::size_t, 3>> allocate(const std::vector<std::size_t>& n_class,
                                                 const std::array<std::size_t, 3>& sizes, const double f[3],
                                                 const std::vector<std::size_t>& rank) {
  const std::size_t k = n_class.size();
  std::vector<std::array<std::size_t, 3>> count(k);
  std::vector<std::array<double, 3>> frac(k);
  std::vector<std::size_t> row_left(k);
  std::array<std::size_t, 3> col_left = sizes;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t used = 0;
    for (int p = 0; p < 3; ++p) {
      const double ideal = f[p] * static_cast<double>(n_class[c]);
      const double fl = std::floor(ideal + 1e-9);
      count[c][p] = static_cast<std::size_t>(fl);
      frac[c][p] = std::max(0.0, ideal - fl);
      if (frac[c][p] < 1e-9) frac[c][p] = 0.0;
      used += count[c][p];
      col_left[p] -= std::min(col_left[p], count[c][p]);
    }
    row_left[c] = n_class[c] - used;
  }

  std::vector<std::array<bool, 3>> extra(k, {false, false, false});
  std::vector<std::tuple<double, std::size_t, int>> cells;
  for (std::size_t c = 0; c < k; ++c)
    for (int p = 0; p < 3; ++p)
      if (frac[c][p] > 0) cells.emplace_back(-frac[c][p], rank[c], p);
  std::sort(cells.begin(), cells.end());
  std::vector<std::size_t> by_rank(k);
  for (std::size_t c = 0; c < k; ++c) by_rank[rank[c]] = c;
  for (const auto& [nf, r, p] : cells) {
    const std::size_t c = by_rank[r];
    if (row_left[c] > 0 && col_left[p] > 0) {
      extra[c][p] = true;
      --row_left[c];
      --col_left[p];
    }
  }

  // Augment: a short column p takes a unit from some class c that still has
  // one, possibly by moving c's unit from another column along the path.
  for (int p0 = 0; p0 < 3; ++p0) {
    while (col_left[p0] > 0) {
      // BFS over columns; parent holds (previous column, class) that links them.
      std::array<int, 3> prev_col = {-2, -2, -2};
      std::array<std::size_t, 3> via{};
      prev_col[p0] = -1;
      std::vector<int> queue = {p0};
      std::size_t found = k;
      int found_col = -1;
      for (std::size_t qi = 0; qi < queue.size() && found == k; ++qi) {
        const int p = queue[qi];
        for (std::size_t r = 0; r < k && found == k; ++r) {
          const std::size_t c = by_rank[r];
          if (frac[c][p] == 0 || extra[c][p]) continue;
          if (row_left[c] > 0) {
            found = c;
            found_col = p;
            break;
          }
          for (int q = 0; q < 3; ++q)
            if (extra[c][q] && prev_col[q] == -2) {
              prev_col[q] = p;
              via[q] = c;
              queue.push_back(q);
            }
        }
      }
      if (found == k) throw SplitError("cannot allocate stratified partition counts");
      --row_left[found];
      extra[found][found_col] = true;
      for (int p = found_col; prev_col[p] != -1; p = prev_col[p]) {
        const std::size_t c = via[p];
        extra[c][p] = false;
        extra[c][prev_col[p]] = true;
      }
      --col_left[p0];
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    for (int p = 0; p < 3; ++p) count[c][p] += extra[c][p] ? 1 : 0;
  return count;
}

}  // namespace

Split split(std::span<const std::size_t> class_of, std::size_t num_classes, const SplitSpec& spec) {
  const std::size_t n = class_of.size();
  const auto sizes = partition_sizes(n, spec);
  Engine rng(spec.seed);

  Split out;
  if (spec.stratified) {
    std::vector<std::vector<std::size_t>> members(num_classes);
    for (std::size_t i = 0; i < n; ++i) {
      if (class_of[i] >= num_classes) throw SplitError("class index out of range");
      members[class_of[i]].push_back(i);
    }
    std::vector<std::size_t> n_class(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c) {
      if (members[c].empty()) throw SplitError("class " + std::to_string(c) + " has no records");
      std::shuffle(members[c].begin(), members[c].end(), rng);
      n_class[c] = members[c].size();
    }
    std::vector<std::size_t> rank(num_classes);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    const double f[3] = {spec.train_fraction, spec.validation_fraction, spec.test_fraction};
    const auto count = allocate(n_class, sizes, f, rank);
    std::vector<std::size_t>* parts[3] = {&out.train, &out.validation, &out.test};
    for (std::size_t c = 0; c < num_classes; ++c) {
      auto it = members[c].begin();
      for (int p = 0; p < 3; ++p) {
        parts[p]->insert(parts[p]->end(), it, it + static_cast<std::ptrdiff_t>(count[c][p]));
        it += static_cast<std::ptrdiff_t>(count[c][p]);
      }
    }
    for (auto* part : parts) std::sort(part->begin(), part->end());
    return out;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  auto take = [&](std::size_t from, std::size_t count) {
    std::vector<std::size_t> part(order.begin() + static_cast<std::ptrdiff_t>(from),
                                  order.begin() + static_cast<std::ptrdiff_t>(from + count));
    std::sort(part.begin(), part.end());
    return part;
  };
  out.train = take(0, sizes[0]);
  out.validation = take(sizes[0], sizes[1]);
  out.test = take(sizes[0] + sizes[1], sizes[2]);
  return out;
}

}  // namespace lexidiv::classify
