#ifndef IFSLAB_SYMBOLIC_HPP
#define IFSLAB_SYMBOLIC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ifslab/util.hpp"

namespace ifslab::sym {

// A finite word over the alphabet {1..m}; the empty word is the root cylinder.
using Word = std::vector<int>;

std::string to_string(const Word& w);

// Lexicographic rank of a length-n word (first symbol most significant).
std::uint64_t word_index(const Word& w, int m);
Word word_from_index(std::uint64_t idx, int m, int n);

// Infinite word preperiod|period^inf, kept in canonical form: the period is
// primitive (not a power of a shorter word) and the preperiod cannot be
// shortened by rotating the period. Canonical form makes equality structural.
class EventuallyPeriodicWord {
  public:
    EventuallyPeriodicWord(Word preperiod, Word period);

    const Word& preperiod() const { return preperiod_; }
    const Word& period() const { return period_; }

    // 0-based position in the unrolled infinite word.
    int symbol_at(std::size_t pos) const;

    bool operator==(const EventuallyPeriodicWord& other) const = default;

    std::string to_string() const;

  private:
    Word preperiod_;
    Word period_;
};

// First n symbols of the unrolled word.
Word prefix(const EventuallyPeriodicWord& i, std::size_t n);

// Maximal common prefix of two distinct infinite words; throws EqualWords
// when the canonical forms coincide.
Word common_prefix(const EventuallyPeriodicWord& i, const EventuallyPeriodicWord& j);

EventuallyPeriodicWord shift(const EventuallyPeriodicWord& i);

// All m^n words of length n in lexicographic order.
std::vector<Word> enumerate_words(int m, int n,
                                  std::uint64_t budget = kDefaultCylinderBudget);

}  // namespace ifslab::sym

#endif
