#ifndef IFSLAB_TRANSVERSALITY_HPP
#define IFSLAB_TRANSVERSALITY_HPP

#include <span>
#include <vector>

#include "ifslab/ifs.hpp"

namespace ifslab::trans {

using ifs::IFSFamily;
using sym::EventuallyPeriodicWord;

// Descending ladder of candidate eta values.
inline const std::vector<double> kEtaLadder = {0.2, 0.1, 0.05, 0.02, 0.01, 0.005};

struct Violation {
    std::vector<double> lambda;
    EventuallyPeriodicWord i;
    EventuallyPeriodicWord j;
    double delta_pi = 0.0;   // |Pi(i) - Pi(j)| with the projection error folded in
    double grad_norm = 0.0;  // |grad(Pi(i) - Pi(j))| minus the truncation tails
};

struct TransversalityReport {
    double eta_passed = 0.0;  // largest ladder value with no sampled violation
    std::vector<Violation> violations;  // recorded at the first failing rung
    std::size_t pairs_tested = 0;
    int depth = 0;
    int grid = 0;
};

// Samples pairs of eventually periodic words (preperiods up to `depth`,
// single-symbol periods) with distinct first symbols over a parameter grid
// and reports the largest ladder eta with no violation.
TransversalityReport check_MT(const IFSFamily& fam, int grid_per_axis, int depth,
                              int gradient_truncation = 40,
                              std::size_t pair_budget = 1000000);

struct SlopePoint {
    double r = 0.0;
    double fraction = 0.0;
};

struct T3Slope {
    std::vector<SlopePoint> points;
    double slope = 0.0;  // least squares through the origin
};

// Fraction of grid cells with |Pi(i) - Pi(j)| < r, per rung of the r ladder.
T3Slope check_T3_slope(const IFSFamily& fam, const EventuallyPeriodicWord& i,
                       const EventuallyPeriodicWord& j, const std::vector<double>& r_ladder,
                       int grid_per_axis);

}  // namespace ifslab::trans

#endif
