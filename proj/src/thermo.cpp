#include "ifslab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifslab::thermo {

namespace {

double projection_of_ones_tail(const IFSFamily& fam, std::span<const double> lam) {
    return ifs::natural_projection(fam, lam, sym::EventuallyPeriodicWord({}, {1})).value;
}

// vals[j][idx(w)] = f_w(p*) for w in A^j, i.e. the projection of w.1^inf.
std::vector<std::vector<double>> tail_projection_tables(const IFSFamily& fam,
                                                        std::span<const double> lam, int levels) {
    const int m = fam.map_count();
    std::vector<std::vector<double>> vals(static_cast<std::size_t>(levels) + 1);
    vals[0] = {projection_of_ones_tail(fam, lam)};
    for (int j = 1; j <= levels; ++j) {
        const auto& prev = vals[static_cast<std::size_t>(j - 1)];
        auto& cur = vals[static_cast<std::size_t>(j)];
        cur.resize(prev.size() * static_cast<std::size_t>(m));
        for (int a = 1; a <= m; ++a) {
            const ifs::MapSpec& f = fam.map(a);
            const std::size_t base = static_cast<std::size_t>(a - 1) * prev.size();
            for (std::size_t t = 0; t < prev.size(); ++t) {
                cur[base + t] = f.value(prev[t], lam);
            }
        }
    }
    return vals;
}

// S_j phi(w.1^inf) for all w in A^j, j = 0..n.
std::vector<double> birkhoff_table(const Potential& pot, const IFSFamily& fam,
                                   std::span<const double> lam, int n, std::uint64_t budget) {
    const int m = fam.map_count();
    pow_checked(static_cast<std::uint64_t>(m), n, budget);
    const auto vals = tail_projection_tables(fam, lam, std::max(0, n - 1));
    std::vector<double> sums{0.0};
    for (int j = 1; j <= n; ++j) {
        const auto& tails = vals[static_cast<std::size_t>(j - 1)];
        std::vector<double> next(sums.size() * static_cast<std::size_t>(m));
        for (int a = 1; a <= m; ++a) {
            const std::size_t base = static_cast<std::size_t>(a - 1) * sums.size();
            for (std::size_t t = 0; t < sums.size(); ++t) {
                next[base + t] = pot.eval(fam, lam, a, tails[t]) + sums[t];
            }
        }
        sums = std::move(next);
    }
    return sums;
}

double shannon_entropy(const std::vector<double>& masses) {
    double h = 0.0;
    for (double w : masses) {
        if (w > 0.0) h -= w * std::log(w);
    }
    return h;
}

}  // namespace

Potential Potential::first_symbol(std::vector<double> log_weights) {
    Potential p(Kind::first_symbol);
    p.log_weights_ = std::move(log_weights);
    p.holder_alpha_ = 0.5;
    p.holder_b_ = 0.0;  // depends on the first symbol only
    p.holder_ready_ = true;
    return p;
}

Potential Potential::geometric(double s) {
    Potential p(Kind::geometric);
    p.exponent_ = s;
    return p;
}

Potential Potential::place_dependent_log(std::vector<std::function<double(double)>> probs) {
    Potential p(Kind::place_dependent_log);
    p.probs_ = std::move(probs);
    return p;
}

Potential Potential::matrix_norm(double q, std::vector<Mat2> matrices) {
    Potential p(Kind::matrix_norm);
    p.exponent_ = q;
    p.matrices_ = std::move(matrices);
    return p;
}

int Potential::symbol_count() const {
    switch (kind_) {
        case Kind::first_symbol:
            return static_cast<int>(log_weights_.size());
        case Kind::place_dependent_log:
            return static_cast<int>(probs_.size());
        case Kind::matrix_norm:
            return static_cast<int>(matrices_.size());
        case Kind::geometric:
            return 0;
    }
    return 0;
}

double Potential::eval(const IFSFamily& fam, std::span<const double> lam, int first_symbol,
                       double y) const {
    switch (kind_) {
        case Kind::first_symbol:
            return log_weights_[static_cast<std::size_t>(first_symbol - 1)];
        case Kind::geometric:
            return exponent_ * std::log(std::abs(fam.map(first_symbol).dx(y, lam)));
        case Kind::place_dependent_log:
            return std::log(probs_[static_cast<std::size_t>(first_symbol - 1)](y));
        case Kind::matrix_norm: {
            const Mat2& A = matrices_[static_cast<std::size_t>(first_symbol - 1)];
            const double norm1 = std::abs(A.a * y + A.b * (1.0 - y)) +
                                 std::abs(A.c * y + A.d * (1.0 - y));
            return exponent_ * std::log(norm1);
        }
    }
    return 0.0;
}

void Potential::set_holder(double alpha, double b) {
    if (!(alpha > 0.0 && alpha < 1.0) || b < 0.0) {
        throw std::invalid_argument("need alpha in (0,1) and b >= 0");
    }
    holder_alpha_ = alpha;
    holder_b_ = b;
    holder_ready_ = true;
}

void Potential::calibrate_holder(const IFSFamily& fam, std::span<const double> lam, int grid) {
    if (kind_ == Kind::first_symbol) return;  // already exact
    const Interval X = fam.domain();
    double lips = 0.0;
    for (int a = 1; a <= fam.map_count(); ++a) {
        double prev = eval(fam, lam, a, X.lo);
        for (int gp = 1; gp < grid; ++gp) {
            const double y = X.lo + X.length() * gp / (grid - 1);
            const double cur = eval(fam, lam, a, y);
            lips = std::max(lips, std::abs(cur - prev) / (X.length() / (grid - 1)));
            prev = cur;
        }
    }
    const double g2 = fam.gamma2();
    set_holder(g2, 1.25 * lips * X.length() / g2);
}

double Potential::sampled_variation(const IFSFamily& fam, std::span<const double> lam, int k,
                                    int samples) const {
    SplitMix64 rng(0xc0ffee1234ull + static_cast<std::uint64_t>(k));
    const int m = fam.map_count();
    double var = 0.0;
    for (int s = 0; s < samples; ++s) {
        Word stem(static_cast<std::size_t>(k));
        for (auto& sym_ : stem) sym_ = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(m));
        Word tail1{1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(m))};
        Word tail2{1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(m))};
        auto project_tail = [&](const Word& tail) {
            Word pre(stem.begin() + 1, stem.end());
            pre.insert(pre.end(), tail.begin(), tail.end());
            return ifs::natural_projection(fam, lam, sym::EventuallyPeriodicWord(pre, {1})).value;
        };
        const double y1 = project_tail(tail1);
        const double y2 = project_tail(tail2);
        var = std::max(var, std::abs(eval(fam, lam, stem[0], y1) - eval(fam, lam, stem[0], y2)));
    }
    return var;
}

double GibbsApproximation::log_eigenvalue() const { return std::log(eigenvalue); }

double GibbsApproximation::mass(const Word& w) const {
    if (static_cast<int>(w.size()) > depth) {
        throw std::invalid_argument("word longer than the stored depth");
    }
    const auto level = marginal(static_cast<int>(w.size()));
    return level[sym::word_index(w, m)];
}

std::vector<double> GibbsApproximation::marginal(int j) const {
    if (j < 0 || j > depth) throw std::invalid_argument("marginal depth out of range");
    std::vector<double> level = weights;
    for (int cur = depth; cur > j; --cur) {
        std::vector<double> up(level.size() / static_cast<std::size_t>(m));
        for (std::size_t idx = 0; idx < up.size(); ++idx) {
            double s = 0.0;
            for (int a = 0; a < m; ++a) s += level[idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)];
            up[idx] = s;
        }
        level = std::move(up);
    }
    return level;
}

std::vector<double> GibbsApproximation::extended(int n, std::uint64_t budget) const {
    if (n <= depth) return marginal(n);
    if (transition.empty()) {
        throw std::invalid_argument("no extension kernel stored for this approximation");
    }
    pow_checked(static_cast<std::uint64_t>(m), n, budget);
    const std::uint64_t mk = pow_checked(static_cast<std::uint64_t>(m), k, budget);
    std::vector<double> level = weights;
    for (int j = depth; j < n; ++j) {
        std::vector<double> next(level.size() * static_cast<std::size_t>(m));
        for (std::size_t idx = 0; idx < level.size(); ++idx) {
            const std::size_t tail = static_cast<std::size_t>(idx % mk);
            for (int a = 0; a < m; ++a) {
                next[idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)] =
                    level[idx] * transition[tail * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)];
            }
        }
        level = std::move(next);
    }
    return level;
}

PressureValue pressure(const IFSFamily& fam, std::span<const double> lam, double t, int n,
                       std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("depth must be >= 1");
    auto eval_at = [&](int depth_n) {
        const auto lens = ifs::level_cylinders(fam, lam, depth_n, budget);
        KahanSum sum;
        for (const Interval& I : lens) sum.add(std::pow(I.length(), t));
        return std::log(sum.value()) / depth_n;
    };
    PressureValue out;
    out.n = n;
    out.at_n = eval_at(n);
    bool can_double = true;
    try {
        pow_checked(static_cast<std::uint64_t>(fam.map_count()), 2 * n, budget);
    } catch (const BudgetExceeded&) {
        can_double = false;
    }
    if (can_double) {
        out.at_2n = eval_at(2 * n);
        out.extrapolated = 2.0 * *out.at_2n - out.at_n;
    }
    return out;
}

SimilarityDimensionEstimate conformal_similarity_dimension(const IFSFamily& fam,
                                                           std::span<const double> lam, int n,
                                                           std::uint64_t budget) {
    // Lengths are normalized by |X|: the limit root is scale-free and the
    // normalized finite-depth root drops the O(1/n) ambient-scale bias.
    const double xlen = fam.domain().length();
    auto root_at = [&](int depth_n) {
        const auto cyl = ifs::level_cylinders(fam, lam, depth_n, budget);
        std::vector<double> log_len(cyl.size());
        for (std::size_t idx = 0; idx < cyl.size(); ++idx) {
            log_len[idx] = std::log(cyl[idx].length() / xlen);
        }
        auto log_sum = [&](double t) {
            double mx = -std::numeric_limits<double>::infinity();
            for (double ll : log_len) mx = std::max(mx, t * ll);
            KahanSum s;
            for (double ll : log_len) s.add(std::exp(t * ll - mx));
            return mx + std::log(s.value());
        };
        double lo = 0.0;
        double hi = std::log(static_cast<double>(fam.map_count())) / (-std::log(fam.gamma2()));
        int guard = 0;
        while (log_sum(hi) > 0.0 && guard++ < 200) hi += 0.5;
        for (int iter = 0; iter < 80 && hi - lo > 1e-12; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (log_sum(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    SimilarityDimensionEstimate est;
    est.n = n;
    est.value = root_at(n);
    est.sensitivity = std::abs(est.value - root_at(std::max(2, n / 2)));
    return est;
}

double solve_similarity_dimension(const std::vector<double>& ratios) {
    if (ratios.empty()) throw std::invalid_argument("need at least one ratio");
    double rmax = 0.0;
    for (double r : ratios) {
        if (!(0.0 < r && r < 1.0)) throw std::invalid_argument("ratios must lie in (0,1)");
        rmax = std::max(rmax, r);
    }
    auto excess = [&](double s) {
        double v = -1.0;
        for (double r : ratios) v += std::pow(r, s);
        return v;
    };
    double lo = 0.0;
    double hi = std::log(static_cast<double>(ratios.size())) / (-std::log(rmax)) + 0.5;
    int guard = 0;
    while (excess(hi) > 0.0 && guard++ < 200) hi += 0.5;
    for (int iter = 0; iter < 100 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BirkhoffSum birkhoff_sum(const Potential& pot, const IFSFamily& fam,
                         std::span<const double> lam, const Word& w) {
    const std::size_t n = w.size();
    std::vector<double> tails(n + 1);
    tails[n] = projection_of_ones_tail(fam, lam);
    for (std::size_t pos = n; pos-- > 0;) {
        tails[pos] = fam.map(w[pos]).value(tails[pos + 1], lam);
    }
    KahanSum sum;
    for (std::size_t pos = 0; pos < n; ++pos) {
        sum.add(pot.eval(fam, lam, w[pos], tails[pos + 1]));
    }
    BirkhoffSum out;
    out.value = sum.value();
    const double a = pot.holder_alpha();
    out.slack = pot.holder_b() * a * (1.0 - std::pow(a, static_cast<double>(n))) / (1.0 - a);
    return out;
}

double potential_pressure(const Potential& pot, const IFSFamily& fam,
                          std::span<const double> lam, int n, std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("depth must be >= 1");
    const auto sums = birkhoff_table(pot, fam, lam, n, budget);
    double mx = -std::numeric_limits<double>::infinity();
    for (double s : sums) mx = std::max(mx, s);
    KahanSum acc;
    for (double s : sums) acc.add(std::exp(s - mx));
    return (mx + std::log(acc.value())) / n;
}

int default_truncation_depth(const Potential& pot, int m, std::uint64_t budget) {
    if (!pot.holder_ready()) throw std::invalid_argument("potential lacks Holder data");
    int cap = 1;
    std::uint64_t count = static_cast<std::uint64_t>(m);
    while (count * static_cast<std::uint64_t>(m) <= budget) {
        count *= static_cast<std::uint64_t>(m);
        ++cap;
    }
    int k = 1;
    double bound = pot.holder_b() * pot.holder_alpha();
    while (bound >= 1e-8 && k < cap) {
        bound *= pot.holder_alpha();
        ++k;
    }
    return k;
}

GibbsApproximation transfer_operator_solve(const Potential& pot, const IFSFamily& fam,
                                           std::span<const double> lam, int k, int depth,
                                           std::uint64_t budget) {
    if (k < 1) throw std::invalid_argument("truncation depth must be >= 1");
    if (!pot.holder_ready()) {
        throw std::invalid_argument("potential lacks Holder data; calibrate it first");
    }
    if (depth == 0) depth = k;
    const int m = fam.map_count();
    const std::uint64_t mk = pow_checked(static_cast<std::uint64_t>(m), k, budget);
    pow_checked(static_cast<std::uint64_t>(m), depth, budget);
    const std::uint64_t mk1 = mk / static_cast<std::uint64_t>(m);

    // phi truncated to depth-k dependence: phi(w.1^inf) per w in A^k.
    const auto vals = tail_projection_tables(fam, lam, k - 1);
    const auto& tails = vals[static_cast<std::size_t>(k - 1)];
    std::vector<double> phiw(mk);
    for (std::uint64_t idx = 0; idx < mk; ++idx) {
        const int first = static_cast<int>(idx / mk1) + 1;
        phiw[idx] = pot.eval(fam, lam, first, tails[static_cast<std::size_t>(idx % mk1)]);
    }
    std::vector<double> ephi(mk);
    for (std::uint64_t idx = 0; idx < mk; ++idx) ephi[idx] = std::exp(phiw[idx]);

    // (Lh)(u)     = sum_a exp(phi(a u|_{k-1})) h(a u|_{k-1})
    // (L*nu)(w)   = exp(phi(w)) sum_a nu(w_2..w_k a)
    std::vector<double> h(mk, 1.0), nu(mk, 1.0 / static_cast<double>(mk));
    std::vector<double> lh(mk), lnu(mk);
    double eigen = 1.0, residual = std::numeric_limits<double>::infinity();
    const int max_iter = 100000;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        double sum_lh = 0.0, sum_h = 0.0;
        for (std::uint64_t u = 0; u < mk; ++u) {
            const std::uint64_t head = u / static_cast<std::uint64_t>(m);
            double acc = 0.0;
            for (int a = 0; a < m; ++a) {
                const std::uint64_t src = static_cast<std::uint64_t>(a) * mk1 + head;
                acc += ephi[src] * h[src];
            }
            lh[u] = acc;
            sum_lh += acc;
            sum_h += h[u];
        }
        double sum_lnu = 0.0;
        for (std::uint64_t w = 0; w < mk; ++w) {
            const std::uint64_t stem = (w % mk1) * static_cast<std::uint64_t>(m);
            double acc = 0.0;
            for (int a = 0; a < m; ++a) acc += nu[stem + static_cast<std::uint64_t>(a)];
            lnu[w] = ephi[w] * acc;
            sum_lnu += lnu[w];
        }
        eigen = sum_lh / sum_h;
        double res_h = 0.0, res_nu = 0.0;
        for (std::uint64_t u = 0; u < mk; ++u) {
            res_h += std::abs(lh[u] - eigen * h[u]);
            res_nu += std::abs(lnu[u] - sum_lnu * nu[u]);
        }
        residual = std::max(res_h / sum_lh, res_nu / sum_lnu);
        // Re-normalize: h to unit mean, nu to a probability vector.
        for (std::uint64_t u = 0; u < mk; ++u) {
            h[u] = lh[u] * static_cast<double>(mk) / sum_lh;
            nu[u] = lnu[u] / sum_lnu;
        }
        if (residual <= 1e-12) break;
    }
    if (iter >= max_iter && residual > 1e-9) {
        throw NoConvergence("transfer operator power iteration stagnated");
    }

    // Scale h so that its nu-integral is one; top-level masses are h*nu.
    double hnu = 0.0;
    for (std::uint64_t u = 0; u < mk; ++u) hnu += h[u] * nu[u];
    for (std::uint64_t u = 0; u < mk; ++u) h[u] /= hnu;

    GibbsApproximation g;
    g.m = m;
    g.k = k;
    g.depth = depth;
    g.eigenvalue = eigen;
    g.residual = residual;
    g.eigenfunction = h;
    g.eigenmeasure = nu;

    // Extension kernel from the adjoint fixed-point relation, row-normalized
    // so the assembled weights marginalize exactly.
    g.transition.assign(mk * static_cast<std::uint64_t>(m), 0.0);
    for (std::uint64_t u = 0; u < mk; ++u) {
        const std::uint64_t stem = (u % mk1) * static_cast<std::uint64_t>(m);
        double row_sum = 0.0;
        for (int a = 0; a < m; ++a) {
            const double r = ephi[u] / eigen * nu[stem + static_cast<std::uint64_t>(a)] / nu[u];
            g.transition[u * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(a)] = r;
            row_sum += r;
        }
        for (int a = 0; a < m; ++a) {
            g.transition[u * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(a)] /= row_sum;
        }
    }

    std::vector<double> masses(mk);
    double total = 0.0;
    for (std::uint64_t u = 0; u < mk; ++u) {
        masses[u] = h[u] * nu[u];
        total += masses[u];
    }
    for (double& w : masses) w /= total;

    if (depth == k) {
        g.weights = std::move(masses);
    } else if (depth > k) {
        GibbsApproximation seed = g;
        seed.depth = k;
        seed.weights = std::move(masses);
        g.weights = seed.extended(depth, budget);
    } else {
        GibbsApproximation seed = g;
        seed.depth = k;
        seed.weights = std::move(masses);
        g.weights = seed.marginal(depth);
    }
    return g;
}

EntropyEstimate entropy_estimate(const GibbsApproximation& g) {
    if (g.depth < 2) throw std::invalid_argument("entropy estimate needs depth >= 2");
    const double hn = shannon_entropy(g.weights);
    const double hn1 = shannon_entropy(g.marginal(g.depth - 1));
    return {hn - hn1, hn / g.depth};
}

LyapunovEstimate lyapunov_estimate(const GibbsApproximation& g, const IFSFamily& fam,
                                   std::span<const double> lam, std::uint64_t budget) {
    auto level_value = [&](int n) {
        const auto lens = ifs::level_cylinders(fam, lam, n, budget);
        const auto masses = g.marginal(n);
        KahanSum acc;
        for (std::size_t idx = 0; idx < lens.size(); ++idx) {
            if (masses[idx] > 0.0) acc.add(-masses[idx] * std::log(lens[idx].length()));
        }
        return acc.value();
    };
    const double ln = level_value(g.depth);
    if (g.depth < 2) return {ln, ln / g.depth};
    const double ln1 = level_value(g.depth - 1);
    return {ln - ln1, ln / g.depth};
}

ErgodicStats ergodic_stats(const GibbsApproximation& g, const IFSFamily& fam,
                           std::span<const double> lam, std::uint64_t budget) {
    const auto h = entropy_estimate(g);
    const auto chi = lyapunov_estimate(g, fam, lam, budget);
    ErgodicStats st;
    st.entropy = h.conditional;
    st.lyapunov = chi.conditional;
    st.ratio = st.lyapunov > 0.0 ? st.entropy / st.lyapunov : 0.0;
    st.depth = g.depth;
    st.extrapolation_residual =
        std::max(std::abs(h.conditional - h.raw), std::abs(chi.conditional - chi.raw));
    return st;
}

double equilibrium_check(const Potential& pot, const IFSFamily& fam,
                         std::span<const double> lam, const GibbsApproximation& g,
                         std::uint64_t budget) {
    const int n = g.depth;
    const double p = potential_pressure(pot, fam, lam, n, budget);
    const auto sums = birkhoff_table(pot, fam, lam, n, budget);
    KahanSum integral;
    for (std::size_t idx = 0; idx < sums.size(); ++idx) {
        if (g.weights[idx] > 0.0) integral.add(g.weights[idx] * sums[idx] / n);
    }
    const double h = entropy_estimate(g).conditional;
    return std::abs(p - (h + integral.value()));
}

std::pair<double, double> gibbs_ratio_bounds(const GibbsApproximation& g, const Potential& pot,
                                             const IFSFamily& fam, std::span<const double> lam) {
    const int n = g.depth;
    const auto sums = birkhoff_table(pot, fam, lam, n, kDefaultCylinderBudget);
    const double logp = g.log_eigenvalue();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t idx = 0; idx < sums.size(); ++idx) {
        if (g.weights[idx] <= 0.0) continue;
        const double ratio = g.weights[idx] / std::exp(-n * logp + sums[idx]);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

double measure_modulus(const GibbsApproximation& a, const GibbsApproximation& b,
                       double param_gap, double theta) {
    if (a.depth != b.depth || a.m != b.m) {
        throw std::invalid_argument("approximations must share alphabet and depth");
    }
    if (param_gap == 0.0) throw DegenerateGap("parameter gap is zero");
    const int n = a.depth;
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.weights.size(); ++idx) {
        const double wa = a.weights[idx], wb = b.weights[idx];
        if (wa == 0.0 && wb == 0.0) continue;
        if (wa == 0.0 || wb == 0.0) {
            throw ZeroMass("cylinder has zero mass in exactly one of the measures");
        }
        worst = std::max(worst, std::abs(std::log(wa / wb)));
    }
    return worst / (n * std::pow(std::abs(param_gap), theta));
}

ModulusSweep measure_modulus_sweep(
    const GibbsApproximation& base,
    const std::vector<std::pair<double, GibbsApproximation>>& sweep) {
    if (sweep.size() < 2) throw std::invalid_argument("sweep needs at least two gaps");
    std::vector<double> log_gap, log_rate;
    double smallest_gap = std::numeric_limits<double>::infinity();
    double rate_at_smallest = 0.0;
    for (const auto& [gap, g] : sweep) {
        const double rate = measure_modulus(base, g, gap, 0.0);  // |log ratio| / n
        log_gap.push_back(std::log(std::abs(gap)));
        log_rate.push_back(std::log(std::max(rate, 1e-300)));
        if (std::abs(gap) < smallest_gap) {
            smallest_gap = std::abs(gap);
            rate_at_smallest = rate;
        }
    }
    ModulusSweep out;
    out.theta_fit = fit_line(log_gap, log_rate).slope;
    out.c_hat = rate_at_smallest / std::pow(smallest_gap, out.theta_fit);
    return out;
}

}  // namespace ifslab::thermo
