#include "ifslab/transversality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifslab::trans {

namespace {

// Preperiods of all lengths <= depth combined with single-symbol periods.
std::vector<EventuallyPeriodicWord> sample_words(int m, int depth) {
    std::vector<EventuallyPeriodicWord> words;
    for (int len = 0; len <= depth; ++len) {
        const std::uint64_t count = pow_checked(static_cast<std::uint64_t>(m), len);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const sym::Word pre = sym::word_from_index(idx, m, len);
            for (int per = 1; per <= m; ++per) {
                words.emplace_back(pre, sym::Word{per});
            }
        }
    }
    // Canonicalization can collapse different (pre, per) inputs.
    std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
        if (a.preperiod() != b.preperiod()) return a.preperiod() < b.preperiod();
        return a.period() < b.period();
    });
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

}  // namespace

TransversalityReport check_MT(const IFSFamily& fam, int grid_per_axis, int depth,
                              int gradient_truncation, std::size_t pair_budget) {
    if (fam.param_dim() < 1) throw std::invalid_argument("family must be parametrized");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");

    const auto words = sample_words(fam.map_count(), depth);
    const auto grid = fam.param_grid(grid_per_axis);

    std::size_t pair_count = 0;
    for (std::size_t s = 0; s < words.size(); ++s) {
        for (std::size_t t = s + 1; t < words.size(); ++t) {
            if (words[s].symbol_at(0) != words[t].symbol_at(0)) ++pair_count;
        }
    }
    if (pair_count * grid.size() > pair_budget) {
        throw BudgetExceeded("transversality pair budget exceeded");
    }

    TransversalityReport rep;
    rep.depth = depth;
    rep.grid = grid_per_axis;

    // Per pair, eta fails as soon as eta > max(effective delta, effective grad),
    // so the pass threshold is the minimum of that quantity over all samples.
    double min_threshold = std::numeric_limits<double>::infinity();
    struct Candidate {
        double threshold;
        Violation v;
    };
    std::vector<Candidate> candidates;

    const int d = fam.param_dim();
    for (const auto& lam_vec : grid) {
        std::span<const double> lam(lam_vec);
        std::vector<ifs::Projection> proj(words.size());
        std::vector<ifs::ProjectionGradient> grads(words.size());
        for (std::size_t s = 0; s < words.size(); ++s) {
            proj[s] = ifs::natural_projection(fam, lam, words[s]);
            grads[s] = ifs::projection_gradient(fam, lam, words[s], gradient_truncation);
        }
        for (std::size_t s = 0; s < words.size(); ++s) {
            for (std::size_t t = s + 1; t < words.size(); ++t) {
                if (words[s].symbol_at(0) == words[t].symbol_at(0)) continue;
                ++rep.pairs_tested;
                const double delta_eff = std::abs(proj[s].value - proj[t].value) +
                                         proj[s].error + proj[t].error;
                double grad_sq = 0.0;
                for (int kk = 0; kk < d; ++kk) {
                    const double gcomp = grads[s].gradient[static_cast<std::size_t>(kk)] -
                                         grads[t].gradient[static_cast<std::size_t>(kk)];
                    grad_sq += gcomp * gcomp;
                }
                const double grad_eff = std::max(
                    0.0, std::sqrt(grad_sq) - grads[s].tail_bound - grads[t].tail_bound);
                const double threshold = std::max(delta_eff, grad_eff);
                min_threshold = std::min(min_threshold, threshold);
                if (threshold < kEtaLadder.front() && candidates.size() < 4096) {
                    candidates.push_back({threshold, {lam_vec, words[s], words[t], delta_eff, grad_eff}});
                }
            }
        }
    }

    rep.eta_passed = 0.0;
    double first_failing = 0.0;
    for (double eta : kEtaLadder) {  // descending
        if (eta <= min_threshold) {
            rep.eta_passed = eta;
            break;
        }
        first_failing = eta;
    }
    if (first_failing > 0.0) {
        for (auto& cand : candidates) {
            if (cand.threshold < first_failing && rep.violations.size() < 1000) {
                rep.violations.push_back(std::move(cand.v));
            }
        }
    }
    return rep;
}

T3Slope check_T3_slope(const IFSFamily& fam, const EventuallyPeriodicWord& i,
                       const EventuallyPeriodicWord& j, const std::vector<double>& r_ladder,
                       int grid_per_axis) {
    if (i.symbol_at(0) == j.symbol_at(0)) {
        throw std::invalid_argument("words must differ in the first symbol");
    }
    const auto grid = fam.param_grid(grid_per_axis);
    std::vector<double> gaps;
    gaps.reserve(grid.size());
    for (const auto& lam_vec : grid) {
        std::span<const double> lam(lam_vec);
        gaps.push_back(std::abs(ifs::natural_projection(fam, lam, i).value -
                                ifs::natural_projection(fam, lam, j).value));
    }
    T3Slope out;
    std::vector<double> rs, fracs;
    for (double r : r_ladder) {
        std::size_t hits = 0;
        for (double gap : gaps) {
            if (gap < r) ++hits;
        }
        const double frac = static_cast<double>(hits) / static_cast<double>(gaps.size());
        out.points.push_back({r, frac});
        rs.push_back(r);
        fracs.push_back(frac);
    }
    out.slope = fit_slope_through_origin(rs, fracs);
    return out;
}

}  // namespace ifslab::trans
