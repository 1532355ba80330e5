#include "ifslab/util.hpp"

#include <string>

namespace ifslab {

std::uint64_t pow_checked(std::uint64_t m, int n, std::uint64_t budget) {
    std::uint64_t out = 1;
    for (int i = 0; i < n; ++i) {
        if (m != 0 && out > budget / m) {
            throw BudgetExceeded("cylinder budget exceeded: " + std::to_string(m) + "^" +
                                 std::to_string(n) + " > " + std::to_string(budget));
        }
        out *= m;
    }
    if (out > budget) {
        throw BudgetExceeded("cylinder budget exceeded");
    }
    return out;
}

std::uint64_t seed_for_stream(std::uint64_t base_seed, std::uint64_t stream) {
    SplitMix64 mix(base_seed ^ (stream * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull));
    return mix.next();
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) {
        return {0.0, n == 1 ? y[0] : 0.0};
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        return {0.0, sy / static_cast<double>(n)};
    }
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / static_cast<double>(n);
    return fit;
}

double fit_slope_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
    double sxx = 0, sxy = 0;
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return sxx == 0.0 ? 0.0 : sxy / sxx;
}

}  // namespace ifslab
