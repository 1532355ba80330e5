#ifndef IFSLAB_UTIL_HPP
#define IFSLAB_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "ifslab/errors.hpp"

namespace ifslab {

// Default cap on enumerated cylinders per call (m^n <= budget).
inline constexpr std::uint64_t kDefaultCylinderBudget = std::uint64_t{1} << 24;

// m^n, throwing BudgetExceeded when the result would pass `budget`.
std::uint64_t pow_checked(std::uint64_t m, int n, std::uint64_t budget = kDefaultCylinderBudget);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    Interval inflated(double margin) const { return {lo - margin, hi + margin}; }
};

struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // row-major [[a,b],[c,d]]

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    // Column sums (a+c, b+d); the smaller one is written <A> below.
    double col_sum_min() const { return std::min(a + c, b + d); }
    double col_sum_max() const { return std::max(a + c, b + d); }
    bool positive() const { return a > 0 && b > 0 && c > 0 && d > 0; }

    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }

    // Largest singular value; the smaller one is recovered as |det|/sv1 to
    // avoid the cancellation in the direct formula.
    double sv1() const {
        const double p = a * a + b * b + c * c + d * d;
        const double q = det();
        const double disc = std::sqrt(std::max(0.0, p * p - 4.0 * q * q));
        return std::sqrt(0.5 * (p + disc));
    }
    double sv2() const {
        const double s1 = sv1();
        return s1 > 0 ? std::abs(det()) / s1 : 0.0;
    }
};

// Counter-friendly deterministic generator (splitmix64).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Stream/cell seeds derived from a base seed; distinct streams decorrelate.
std::uint64_t seed_for_stream(std::uint64_t base_seed, std::uint64_t stream);

// Neumaier-compensated accumulator for long sums of similar magnitude.
class KahanSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares of y against x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Least squares slope of y = s*x through the origin.
double fit_slope_through_origin(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ifslab

#endif
