#ifndef IFSLAB_DIMENSION_HPP
#define IFSLAB_DIMENSION_HPP

#include <optional>
#include <span>
#include <vector>

#include "ifslab/thermo.hpp"

namespace ifslab::dim {

using ifs::IFSFamily;
using thermo::GibbsApproximation;

struct EnergySeries {
    double alpha = 0.0;
    std::vector<double> terms;   // E_0 .. E_N
    double partial_sum = 0.0;
    double growth_rate = 0.0;    // fitted log slope over the last half of the levels
};

// Symbolic alpha-energy by cylinder levels: E_n sums, over level-n words and
// distinct child symbols a != b, (|X_w|/|X|)^(-alpha) mu([wa]) mu([wb]).
EnergySeries symbolic_energy(const GibbsApproximation& g, const IFSFamily& fam,
                             std::span<const double> lam, double alpha, int levels,
                             std::uint64_t budget = kDefaultCylinderBudget);

struct CorrelationDimension {
    double estimate = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// Bisection in alpha on the sign of the fitted energy growth rate.
CorrelationDimension correlation_dimension_estimate(const GibbsApproximation& g,
                                                    const IFSFamily& fam,
                                                    std::span<const double> lam, int levels,
                                                    std::uint64_t budget = kDefaultCylinderBudget);

// min{1, h/chi}.
double dimension_formula(double h, double chi);

struct BoxCount {
    int depth = 0;
    double delta = 0.0;
    std::size_t boxes = 0;
};

struct BoxDimension {
    double estimate = 0.0;
    std::vector<BoxCount> counts;
};

// Mesh width = max cylinder length per level; slope of log N vs log(1/delta).
BoxDimension box_dimension_estimate(const IFSFamily& fam, std::span<const double> lam,
                                    const std::vector<int>& depths,
                                    std::uint64_t budget = kDefaultCylinderBudget);

// Log-log slope of the empirical mass of B(x,r) over a decreasing r ladder.
double local_dimension_estimate(const std::vector<double>& samples, double x,
                                const std::vector<double>& radii);

struct EnergySandwich {
    double ratio_low = 0.0;   // E_alpha(A) / E_{alpha-eps}(B)
    double ratio_high = 0.0;  // E_alpha(A) / E_{alpha+eps}(B)
};

EnergySandwich energy_continuity_probe(const GibbsApproximation& ga,
                                       const GibbsApproximation& gb, const IFSFamily& fam,
                                       std::span<const double> lam, double alpha, double eps,
                                       int levels,
                                       std::uint64_t budget = kDefaultCylinderBudget);

struct DimensionReport {
    double h = 0.0;
    double chi = 0.0;
    double ratio_dim = 0.0;
    CorrelationDimension cor;
    std::optional<double> box_dim;
    int depth = 0;
    int levels = 0;
    double residual = 0.0;
};

DimensionReport dimension_report(const GibbsApproximation& g, const IFSFamily& fam,
                                 std::span<const double> lam, int levels,
                                 const std::vector<int>& box_depths = {},
                                 std::uint64_t budget = kDefaultCylinderBudget);

}  // namespace ifslab::dim

#endif
