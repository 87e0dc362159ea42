#ifndef SHIFTWORD_WORD_HPP
#define SHIFTWORD_WORD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftword/rat.hpp"

namespace shiftword {

// Finite binary pattern sigma indexing the cylinder set [sigma]. May be empty
// (the empty pattern denotes the full space).
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::string_view bits01);
  explicit Pattern(std::vector<bool> bits) : bits_(std::move(bits)) {}

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool bit(size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const { return bits_; }
  std::string str() const;

  bool operator==(const Pattern& o) const { return bits_ == o.bits_; }

 private:
  std::vector<bool> bits_;
};

// Finite binary word of length n >= 1; cyclic pattern statistics are taken
// with wraparound mod n.
class Word {
 public:
  explicit Word(std::string_view bits01);
  explicit Word(std::vector<bool> bits);

  size_t size() const { return bits_.size(); }
  bool bit(size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const { return bits_; }
  std::string str() const;
  Pattern as_pattern() const { return Pattern(bits_); }

  bool operator==(const Word& o) const { return bits_ == o.bits_; }

 private:
  std::vector<bool> bits_;
};

// Pattern enumeration used everywhere a deterministic order is required:
// within a fixed length, lexicographic with 0 < 1 (so index i maps to the
// big-endian bits of i); across lengths, shorter first.
Pattern pattern_of_index(unsigned len, uint64_t index);
std::vector<Pattern> patterns_of_len(unsigned len);
std::vector<Pattern> patterns_up_to(unsigned max_len);

// Positions i < n where sigma occurs cyclically in a; |sigma| may exceed n
// (indices wrap repeatedly). The empty pattern occurs everywhere.
std::vector<size_t> occurrence_positions(const Word& a, const Pattern& sigma);
size_t occurrence_count(const Word& a, const Pattern& sigma);

// Cyclic occurrence density as an exact rational.
Rat density(const Word& a, const Pattern& sigma);

// Concatenation of repeat-counted segments, in list order. Throws EmptyResult
// when the total length is 0.
Word concat(const std::vector<std::pair<Word, uint64_t>>& segments);

Word repeat_truncate(const Word& a, size_t n);
Word rotate(const Word& a, size_t r);

// (1/n) * #{ i < n : sigma occurs non-cyclically at i }. Requires enough
// lookahead: a.size() >= n + max(|sigma|-1, 0).
Rat prefix_frequency(const Word& a, const Pattern& sigma, size_t n);

// Histogram of the 2^len cyclic windows of the given length (window at i is
// read MSB-first, matching pattern_of_index). One O(n) pass; the verification
// scans aggregate shorter patterns from this. `workers` splits the scan into
// deterministic chunks.
std::vector<uint64_t> cyclic_window_counts(const Word& a, unsigned len, unsigned workers = 1);

// Same histogram over the n non-cyclic windows starting at i < n.
std::vector<uint64_t> prefix_window_counts(const Word& a, unsigned len, size_t n);

// Word file format: a single line of '0'/'1', optional trailing newline.
Word read_word_file(const std::string& path);
void write_word_file(const std::string& path, const Word& a);
std::vector<Word> read_word_list_file(const std::string& path);

}  // namespace shiftword

#endif
