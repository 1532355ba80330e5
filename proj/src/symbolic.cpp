#include "ifslab/symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ifslab::sym {

namespace {

// Shortest u with w = u^k; standard divisor scan.
Word primitive_root(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) {
            ok = (w[i] == w[i % p]);
        }
        if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
    }
    return w;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace

std::string to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out.push_back('.');
        out += std::to_string(w[i]);
    }
    return out;
}

std::uint64_t word_index(const Word& w, int m) {
    std::uint64_t idx = 0;
    for (int s : w) {
        idx = idx * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(s - 1);
    }
    return idx;
}

Word word_from_index(std::uint64_t idx, int m, int n) {
    Word w(static_cast<std::size_t>(n));
    for (int pos = n - 1; pos >= 0; --pos) {
        w[static_cast<std::size_t>(pos)] = static_cast<int>(idx % static_cast<std::uint64_t>(m)) + 1;
        idx /= static_cast<std::uint64_t>(m);
    }
    return w;
}

EventuallyPeriodicWord::EventuallyPeriodicWord(Word preperiod, Word period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) {
        throw std::invalid_argument("period must be nonempty");
    }
    for (int s : preperiod_) {
        if (s < 1) throw std::invalid_argument("symbols must be >= 1");
    }
    for (int s : period_) {
        if (s < 1) throw std::invalid_argument("symbols must be >= 1");
    }
    period_ = primitive_root(period_);
    // Minimal preperiod: while its last symbol matches the period's last,
    // absorb it by rotating the period right. This yields a unique form.
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        preperiod_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

int EventuallyPeriodicWord::symbol_at(std::size_t pos) const {
    if (pos < preperiod_.size()) return preperiod_[pos];
    return period_[(pos - preperiod_.size()) % period_.size()];
}

std::string EventuallyPeriodicWord::to_string() const {
    return sym::to_string(preperiod_) + "(" + sym::to_string(period_) + ")";
}

Word prefix(const EventuallyPeriodicWord& i, std::size_t n) {
    Word out(n);
    for (std::size_t pos = 0; pos < n; ++pos) out[pos] = i.symbol_at(pos);
    return out;
}

Word common_prefix(const EventuallyPeriodicWord& i, const EventuallyPeriodicWord& j) {
    if (i == j) {
        throw EqualWords("common_prefix undefined for equal words");
    }
    // Distinct eventually periodic words must disagree within
    // max preperiod + lcm of periods positions.
    const std::uint64_t bound =
        std::max(i.preperiod().size(), j.preperiod().size()) +
        lcm_u64(i.period().size(), j.period().size()) + 1;
    for (std::uint64_t pos = 0; pos < bound; ++pos) {
        if (i.symbol_at(pos) != j.symbol_at(pos)) {
            return prefix(i, pos);
        }
    }
    throw EqualWords("words canonicalize differently but never disagree");
}

EventuallyPeriodicWord shift(const EventuallyPeriodicWord& i) {
    Word pre = i.preperiod();
    Word per = i.period();
    if (pre.empty()) {
        std::rotate(per.begin(), per.begin() + 1, per.end());
    } else {
        pre.erase(pre.begin());
    }
    return EventuallyPeriodicWord(std::move(pre), std::move(per));
}

std::vector<Word> enumerate_words(int m, int n, std::uint64_t budget) {
    if (m < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (n < 0) throw std::invalid_argument("word length must be >= 0");
    const std::uint64_t count = pow_checked(static_cast<std::uint64_t>(m), n, budget);
    std::vector<Word> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        out.push_back(word_from_index(idx, m, n));
    }
    return out;
}

}  // namespace ifslab::sym
