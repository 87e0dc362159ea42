#include "shiftword/correspond.hpp"

#include <map>

#include "shiftword/error.hpp"

namespace shiftword {

DensityTable density_table(const std::vector<Word>& words, unsigned max_j) {
  DensityTable table;
  table.words = words;
  table.patterns = patterns_up_to(max_j);
  table.cells.reserve(words.size());
  for (const Word& w : words) {
    const std::vector<uint64_t> window = cyclic_window_counts(w, max_j);
    std::vector<Rat> row;
    row.reserve(table.patterns.size());
    for (unsigned len = 0; len <= max_j; ++len) {
      const unsigned shift = max_j - len;
      for (uint64_t idx = 0; idx < (uint64_t(1) << len); ++idx) {
        uint64_t count = 0;
        for (uint64_t v = idx << shift; v < ((idx + 1) << shift); ++v) count += window[v];
        row.emplace_back(Int(count), Int(w.size()));
      }
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

std::vector<size_t> extract_subsequence(const DensityTable& table, const Rat& tol) {
  if (tol <= 0) throw Error(ErrorKind::Domain, "tolerance must be positive");
  std::vector<size_t> survivors(table.words.size());
  for (size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;
  if (survivors.empty()) return survivors;

  for (size_t p = 0; p < table.patterns.size(); ++p) {
    std::map<Int, std::vector<size_t>> buckets;  // floor(D/tol) -> indices
    for (size_t idx : survivors) buckets[floor_rat(table.cells[idx][p] / tol)].push_back(idx);
    const std::vector<size_t>* best = nullptr;
    for (const auto& [key, members] : buckets)
      if (!best || members.size() > best->size()) best = &members;  // ties: smaller endpoint
    survivors = *best;
  }
  return survivors;
}

}  // namespace shiftword
