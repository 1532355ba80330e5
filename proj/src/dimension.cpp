#include "ifslab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifslab::dim {

namespace {

// Per-level data reused across alpha evaluations: normalized log cylinder
// lengths and the off-diagonal pair mass sum per word.
struct LevelTerms {
    std::vector<double> log_len;    // log(|X_w| / |X|)
    std::vector<double> pair_mass;  // sum_{a != b} mu([wa]) mu([wb])
};

std::vector<LevelTerms> energy_levels(const GibbsApproximation& g, const IFSFamily& fam,
                                      std::span<const double> lam, int levels,
                                      std::uint64_t budget) {
    if (levels < 0) throw std::invalid_argument("levels must be >= 0");
    const int m = g.m;
    const auto deep = g.depth >= levels + 1 ? g.marginal(levels + 1) : g.extended(levels + 1, budget);
    const double xlen = fam.domain().length();

    std::vector<LevelTerms> out(static_cast<std::size_t>(levels) + 1);
    // Walk the level masses upward from depth levels+1.
    std::vector<double> child = deep;
    for (int n = levels; n >= 0; --n) {
        std::vector<double> cur(child.size() / static_cast<std::size_t>(m));
        auto& lt = out[static_cast<std::size_t>(n)];
        lt.pair_mass.resize(cur.size());
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            double sum = 0.0, sumsq = 0.0;
            for (int a = 0; a < m; ++a) {
                const double w = child[idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)];
                sum += w;
                sumsq += w * w;
            }
            cur[idx] = sum;
            lt.pair_mass[idx] = std::max(0.0, sum * sum - sumsq);
        }
        const auto cyl = ifs::level_cylinders(fam, lam, n, budget);
        lt.log_len.resize(cyl.size());
        for (std::size_t idx = 0; idx < cyl.size(); ++idx) {
            lt.log_len[idx] = std::log(cyl[idx].length() / xlen);
        }
        child = std::move(cur);
    }
    return out;
}

EnergySeries series_from_levels(const std::vector<LevelTerms>& lv, double alpha) {
    EnergySeries es;
    es.alpha = alpha;
    KahanSum total;
    for (const auto& lt : lv) {
        KahanSum level_sum;
        for (std::size_t idx = 0; idx < lt.pair_mass.size(); ++idx) {
            if (lt.pair_mass[idx] > 0.0) {
                level_sum.add(std::exp(-alpha * lt.log_len[idx]) * lt.pair_mass[idx]);
            }
        }
        es.terms.push_back(level_sum.value());
        total.add(level_sum.value());
    }
    es.partial_sum = total.value();

    // Fit the last half of the levels; transient levels are discarded.
    const std::size_t n_terms = es.terms.size();
    const std::size_t start = n_terms - (n_terms + 1) / 2;
    std::vector<double> xs, ys;
    for (std::size_t n = start; n < n_terms; ++n) {
        if (es.terms[n] > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(es.terms[n]));
        }
    }
    if (xs.size() < 2) {
        es.growth_rate = -std::numeric_limits<double>::infinity();
    } else {
        es.growth_rate = fit_line(xs, ys).slope;
    }
    return es;
}

}  // namespace

EnergySeries symbolic_energy(const GibbsApproximation& g, const IFSFamily& fam,
                             std::span<const double> lam, double alpha, int levels,
                             std::uint64_t budget) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return series_from_levels(energy_levels(g, fam, lam, levels, budget), alpha);
}

CorrelationDimension correlation_dimension_estimate(const GibbsApproximation& g,
                                                    const IFSFamily& fam,
                                                    std::span<const double> lam, int levels,
                                                    std::uint64_t budget) {
    const auto lv = energy_levels(g, fam, lam, levels, budget);
    auto growth = [&](double alpha) { return series_from_levels(lv, alpha).growth_rate; };

    double lo = 1e-9, hi = 2.0;
    int guard = 0;
    while (growth(hi) <= 0.0 && guard++ < 4) hi *= 2.0;
    CorrelationDimension out;
    if (growth(lo) > 0.0) {
        out = {lo, 0.0, lo};
        return out;
    }
    for (int iter = 0; iter < 30; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (growth(mid) <= 0.0 ? lo : hi) = mid;
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.estimate = 0.5 * (lo + hi);
    return out;
}

double dimension_formula(double h, double chi) {
    if (!(chi > 0.0)) throw NonpositiveLyapunov("Lyapunov exponent must be positive");
    if (h < 0.0) throw std::invalid_argument("entropy must be nonnegative");
    return std::min(1.0, h / chi);
}

BoxDimension box_dimension_estimate(const IFSFamily& fam, std::span<const double> lam,
                                    const std::vector<int>& depths, std::uint64_t budget) {
    if (depths.empty()) throw std::invalid_argument("need at least one depth");
    BoxDimension out;
    std::vector<double> xs, ys;
    const double x0 = fam.domain().lo;
    for (int n : depths) {
        const auto cyl = ifs::level_cylinders(fam, lam, n, budget);
        double delta = 0.0;
        for (const Interval& I : cyl) delta = std::max(delta, I.length());
        const std::size_t bins =
            static_cast<std::size_t>(std::ceil(fam.domain().length() / delta)) + 2;
        std::vector<char> hit(bins, 0);
        // Boundary-touch tolerance: rounding of the cylinder endpoints shifts
        // them against the mesh by up to ~|X|*eps/delta per bin index, so the
        // sliver cutoff has to grow as the mesh refines.
        const double tol =
            delta * std::clamp(5e-15 * fam.domain().length() / (delta * delta), 1e-9, 0.02);
        for (const Interval& I : cyl) {
            auto j0 = static_cast<long long>(std::floor((I.lo - x0) / delta));
            auto j1 = static_cast<long long>(std::floor((I.hi - x0) / delta));
            for (long long j = std::max(0ll, j0); j <= j1 && j < static_cast<long long>(bins); ++j) {
                const double cell_lo = x0 + static_cast<double>(j) * delta;
                const double overlap = std::min(I.hi, cell_lo + delta) - std::max(I.lo, cell_lo);
                if (overlap > tol) hit[static_cast<std::size_t>(j)] = 1;
            }
        }
        std::size_t count = 0;
        for (char c : hit) count += static_cast<std::size_t>(c);
        out.counts.push_back({n, delta, count});
        xs.push_back(std::log(1.0 / delta));
        ys.push_back(std::log(static_cast<double>(count)));
    }
    out.estimate = fit_line(xs, ys).slope;
    return out;
}

double local_dimension_estimate(const std::vector<double>& samples, double x,
                                const std::vector<double>& radii) {
    if (samples.size() < 2) throw std::invalid_argument("need samples");
    if (radii.empty()) throw std::invalid_argument("need radii");
    for (std::size_t r = 1; r < radii.size(); ++r) {
        if (radii[r] >= radii[r - 1]) throw std::invalid_argument("radii must decrease");
    }
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> xs, ys;
    for (double r : radii) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x - r);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), x + r);
        const auto count = static_cast<std::size_t>(hi - lo);
        if (count == 0) {
            if (r == radii.back()) throw EmptyBall("smallest radius captured no samples");
            continue;
        }
        xs.push_back(std::log(r));
        ys.push_back(std::log(static_cast<double>(count) / static_cast<double>(sorted.size())));
    }
    if (std::count(sorted.begin(), sorted.end(), x) == static_cast<std::ptrdiff_t>(sorted.size())) {
        return 0.0;  // every sample is the center; the mass never decays
    }
    return fit_line(xs, ys).slope;
}

EnergySandwich energy_continuity_probe(const GibbsApproximation& ga,
                                       const GibbsApproximation& gb, const IFSFamily& fam,
                                       std::span<const double> lam, double alpha, double eps,
                                       int levels, std::uint64_t budget) {
    const double ea = symbolic_energy(ga, fam, lam, alpha, levels, budget).partial_sum;
    const double eb_lo =
        symbolic_energy(gb, fam, lam, std::max(alpha - eps, 1e-9), levels, budget).partial_sum;
    const double eb_hi = symbolic_energy(gb, fam, lam, alpha + eps, levels, budget).partial_sum;
    return {ea / eb_lo, ea / eb_hi};
}

DimensionReport dimension_report(const GibbsApproximation& g, const IFSFamily& fam,
                                 std::span<const double> lam, int levels,
                                 const std::vector<int>& box_depths, std::uint64_t budget) {
    DimensionReport rep;
    const auto stats = thermo::ergodic_stats(g, fam, lam, budget);
    rep.h = stats.entropy;
    rep.chi = stats.lyapunov;
    rep.ratio_dim = dimension_formula(stats.entropy, stats.lyapunov);
    rep.cor = correlation_dimension_estimate(g, fam, lam, levels, budget);
    if (!box_depths.empty()) {
        rep.box_dim = box_dimension_estimate(fam, lam, box_depths, budget).estimate;
    }
    rep.depth = g.depth;
    rep.levels = levels;
    rep.residual = stats.extrapolation_residual;
    return rep;
}

}  // namespace ifslab::dim
