#include "ifslab/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifslab::app {

namespace {

constexpr std::size_t kBurnIn = 1000;

std::vector<double> matrix_products_at_level(const std::vector<Mat2>& mats, int n,
                                             std::uint64_t budget,
                                             std::vector<Mat2>* keep = nullptr) {
    const int m = static_cast<int>(mats.size());
    pow_checked(static_cast<std::uint64_t>(m), n, budget);
    std::vector<Mat2> level{Mat2{1, 0, 0, 1}};
    for (int j = 1; j <= n; ++j) {
        std::vector<Mat2> next(level.size() * static_cast<std::size_t>(m));
        for (int a = 0; a < m; ++a) {
            const std::size_t base = static_cast<std::size_t>(a) * level.size();
            for (std::size_t t = 0; t < level.size(); ++t) {
                next[base + t] = mats[static_cast<std::size_t>(a)] * level[t];
            }
        }
        level = std::move(next);
    }
    std::vector<double> norms(level.size());
    for (std::size_t idx = 0; idx < level.size(); ++idx) norms[idx] = level[idx].sv1();
    if (keep) *keep = std::move(level);
    return norms;
}

}  // namespace

PlaceDepBC::PlaceDepBC(double lambda_, double rho_) : lambda(lambda_), rho(rho_) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("contraction must lie in (0,1)");
    }
    if (!(rho >= 0.0 && rho < 0.5)) {
        throw std::invalid_argument("tilt must lie in [0, 1/2) to keep probabilities positive");
    }
}

std::vector<double> bc_chaos_game(const PlaceDepBC& spec, std::size_t n, std::uint64_t seed,
                                  std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    SplitMix64 rng(seed_for_stream(seed, stream));
    std::vector<double> samples;
    samples.reserve(n);
    double x = 0.0;
    for (std::size_t step = 0; step < kBurnIn + n; ++step) {
        const int branch = rng.uniform01() < spec.prob(0, x) ? 0 : 1;
        x = spec.psi(branch, x);
        if (step >= kBurnIn) samples.push_back(x);
    }
    return samples;
}

McStats bc_entropy_lyapunov(const PlaceDepBC& spec, const std::vector<double>& samples) {
    if (samples.size() < 10000) throw std::invalid_argument("need >= 1e4 samples");
    KahanSum sum, sumsq;
    for (double x : samples) {
        const double p0 = spec.prob(0, x);
        const double p1 = spec.prob(1, x);
        const double v = -(p0 * std::log(p0) + p1 * std::log(p1));
        sum.add(v);
        sumsq.add(v * v);
    }
    const double n = static_cast<double>(samples.size());
    McStats st;
    st.h = sum.value() / n;
    const double var = std::max(0.0, sumsq.value() / n - st.h * st.h);
    st.h_stderr = std::sqrt(var / n);
    // |psi'| = lambda for both branches and the probabilities sum to one,
    // so every sample contributes exactly -log(lambda).
    st.chi = -std::log(spec.lambda);
    st.chi_stderr = 0.0;
    return st;
}

BcBounds bc_bounds(double lambda, double rho) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda outside (0,1)");
    if (!(rho >= 0.0 && rho < 0.5)) throw std::invalid_argument("rho outside [0, 1/2)");
    BcBounds b;
    const double om = 1.0 - lambda;
    b.A = std::log(2.0) -
          2.0 * rho * rho * om * om / (1.0 + lambda * (4.0 * rho * om - lambda));
    b.B = rho * rho / (3.0 * (1.0 - 4.0 * rho * rho));
    const double chi = -std::log(lambda);
    b.dim_lower = (b.A - b.B) / chi;
    b.dim_upper = b.A / chi;
    return b;
}

std::string to_string(RegionClass c) {
    switch (c) {
        case RegionClass::abs_cont_ae: return "abs_cont_ae";
        case RegionClass::singular: return "singular";
        case RegionClass::undetermined: return "undetermined";
    }
    return "undetermined";
}

RegionClass bc_region_classify(double lambda, double rho) {
    const BcBounds b = bc_bounds(lambda, rho);
    if (lambda > kBcTransversalityLo && lambda < kBcTransversalityHi && b.dim_lower > 1.0) {
        return RegionClass::abs_cont_ae;
    }
    if (b.dim_upper < 1.0) {
        return RegionClass::singular;
    }
    return RegionClass::undetermined;
}

std::vector<RegionCell> bc_region_scan(double lambda_lo, double lambda_hi, int lambda_count,
                                       double rho_lo, double rho_hi, int rho_count) {
    if (lambda_count < 1 || rho_count < 1) throw std::invalid_argument("grid counts must be >= 1");
    std::vector<RegionCell> cells;
    cells.reserve(static_cast<std::size_t>(lambda_count) * static_cast<std::size_t>(rho_count));
    for (int li = 0; li < lambda_count; ++li) {
        const double lambda =
            lambda_count == 1 ? lambda_lo
                              : lambda_lo + (lambda_hi - lambda_lo) * li / (lambda_count - 1);
        for (int ri = 0; ri < rho_count; ++ri) {
            const double rho =
                rho_count == 1 ? rho_lo : rho_lo + (rho_hi - rho_lo) * ri / (rho_count - 1);
            RegionCell cell;
            cell.lambda = lambda;
            cell.rho = rho;
            cell.bounds = bc_bounds(lambda, rho);
            cell.cls = bc_region_classify(lambda, rho);
            cells.push_back(cell);
        }
    }
    return cells;
}

double stationarity_check(const PlaceDepBC& spec, const std::vector<double>& samples,
                          int test_fns) {
    if (samples.empty()) throw std::invalid_argument("need samples");
    double worst = 0.0;
    for (int j = 0; j <= test_fns; ++j) {
        auto phi = [&](double x) { return std::cos(j * std::numbers::pi * x / 2.0); };
        KahanSum lhs, rhs;
        for (double x : samples) {
            lhs.add(phi(x));
            rhs.add(spec.prob(0, x) * phi(spec.psi(0, x)) + spec.prob(1, x) * phi(spec.psi(1, x)));
        }
        worst = std::max(worst, std::abs(lhs.value() - rhs.value()) /
                                    static_cast<double>(samples.size()));
    }
    return worst;
}

ifs::IFSFamily bc_family(double lambda) {
    PlaceDepBC check(lambda, 0.0);  // validates lambda
    return ifs::affine_family({lambda, lambda}, {-(1.0 - lambda), 1.0 - lambda},
                              Interval{-1.0, 1.0});
}

ifs::IFSFamily bc_parametrized_family() {
    using ifs::LinForm;
    std::vector<ifs::MapSpec> maps;
    maps.push_back(ifs::MapSpec::affine(LinForm::with_param(0.0, 0),
                                        LinForm::with_param(-1.0, 0)));
    maps.push_back(ifs::MapSpec::affine(LinForm::with_param(0.0, 0),
                                        LinForm::with_param(1.0, 0, -1.0)));
    return ifs::IFSFamily(std::move(maps), Interval{-1.0, 1.0},
                          {Interval{kBcTransversalityLo, kBcTransversalityHi}},
                          kBcTransversalityLo, kBcTransversalityHi);
}

thermo::Potential bc_potential(const PlaceDepBC& spec) {
    std::vector<std::function<double(double)>> probs{
        [spec](double x) { return spec.prob(0, x); },
        [spec](double x) { return spec.prob(1, x); }};
    return thermo::Potential::place_dependent_log(std::move(probs));
}

bool FurstenbergSpec::in_U() const {
    for (const Mat2& A : matrices) {
        if (!A.positive()) return false;
        const double lo = A.col_sum_min();
        if (!(std::abs(A.det()) < 0.5 * lo * lo - 1e-12)) return false;
    }
    return !matrices.empty();
}

PressureEstimate furstenberg_pressure(const FurstenbergSpec& spec, int n,
                                      std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("depth must be >= 1");
    if (spec.matrices.empty()) throw std::invalid_argument("need matrices");
    auto level_sum = [&](int depth) {
        const auto norms = matrix_products_at_level(spec.matrices, depth, budget);
        KahanSum s;
        for (double norm : norms) s.add(std::pow(norm, spec.q));
        return s.value();
    };
    PressureEstimate est;
    est.n = n;
    const double sn = level_sum(n);
    est.raw = std::log(sn) / n;
    est.primary = n >= 2 ? std::log(sn / level_sum(n - 1)) : est.raw;
    return est;
}

GibbsApproximation furstenberg_gibbs(const FurstenbergSpec& spec, int k,
                                     std::uint64_t budget) {
    if (k < 1) throw std::invalid_argument("depth must be >= 1");
    const int m = static_cast<int>(spec.matrices.size());
    const auto norms = matrix_products_at_level(spec.matrices, k, budget);

    GibbsApproximation g;
    g.m = m;
    g.k = k;
    g.depth = k;
    g.residual = 0.0;
    const auto pest = furstenberg_pressure(spec, std::max(2, k), budget);
    g.eigenvalue = std::exp(pest.primary);

    g.weights.resize(norms.size());
    double total = 0.0;
    for (std::size_t idx = 0; idx < norms.size(); ++idx) {
        g.weights[idx] = std::pow(norms[idx], spec.q);
        total += g.weights[idx];
    }
    for (double& w : g.weights) w /= total;

    // Extension kernel from one-level norm ratios: p(u, a) ~ ||A_{u a}||^q / ||A_u||^q.
    if (k >= 1) {
        const std::uint64_t mk = norms.size();
        const auto child_norms = matrix_products_at_level(spec.matrices, k + 1, budget);
        g.transition.assign(mk * static_cast<std::uint64_t>(m), 0.0);
        for (std::uint64_t u = 0; u < mk; ++u) {
            double row = 0.0;
            for (int a = 0; a < m; ++a) {
                const double r = std::pow(
                    child_norms[u * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(a)],
                    spec.q);
                g.transition[u * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(a)] = r;
                row += r;
            }
            for (int a = 0; a < m; ++a) {
                g.transition[u * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(a)] /= row;
            }
        }
    }
    return g;
}

thermo::Potential furstenberg_potential(const FurstenbergSpec& spec) {
    return thermo::Potential::matrix_norm(spec.q, spec.matrices);
}

CocycleExponents cocycle_lyapunov(const FurstenbergSpec& spec, const GibbsApproximation& g,
                                  int n, std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("depth must be >= 1");
    if (g.depth < n) throw std::invalid_argument("approximation depth below requested n");
    const auto masses = g.marginal(n);
    std::vector<Mat2> prods;
    matrix_products_at_level(spec.matrices, n, budget, &prods);
    KahanSum e1, e2, ld;
    for (std::size_t idx = 0; idx < prods.size(); ++idx) {
        const double w = masses[idx];
        if (w <= 0.0) continue;
        const double s1 = prods[idx].sv1();
        const double s2 = prods[idx].sv2();
        e1.add(w * std::log(s1));
        e2.add(w * std::log(s2));
        ld.add(w * std::log(std::abs(prods[idx].det())));
    }
    CocycleExponents out;
    out.eta1 = e1.value() / n;
    out.eta2 = e2.value() / n;
    out.mean_log_det = ld.value() / n;
    return out;
}

FurstenbergReport furstenberg_dimension(const FurstenbergSpec& spec,
                                        const GibbsApproximation& g, int n,
                                        std::uint64_t budget) {
    if (!spec.in_U()) {
        throw NotInU("matrices violate |det A| < (1/2) <A>^2");
    }
    const auto pr = furstenberg_pressure(spec, n, budget);
    const auto ce = cocycle_lyapunov(spec, g, n, budget);
    FurstenbergReport rep;
    rep.pressure = pr.primary;
    rep.eta1 = ce.eta1;
    rep.eta2 = ce.eta2;
    rep.h = pr.primary - spec.q * ce.eta1;
    rep.chi = ce.eta1 - ce.eta2;
    rep.dimension = std::min(1.0, rep.h / rep.chi);
    rep.abs_cont_flag = pr.primary > (spec.q + 1.0) * ce.eta1 - ce.eta2;
    return rep;
}

BakerSpec::BakerSpec(double lambda_, double rho_) : lambda(lambda_), rho(rho_) {
    if (!(lambda > 0.5 && lambda < 1.0)) throw std::invalid_argument("lambda outside (1/2, 1)");
    if (!(rho > 0.0 && rho < 0.5)) throw std::invalid_argument("rho outside (0, 1/2)");
}

BakerOrbit baker_orbit(const BakerSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    SplitMix64 rng(seed_for_stream(seed, 0x62616b65ull));
    double x = 2.0 * rng.uniform01() - 1.0;
    double y = rng.uniform01();
    BakerOrbit orbit;
    orbit.x.reserve(n);
    orbit.y.reserve(n);
    for (std::size_t step = 0; step < kBurnIn + n; ++step) {
        const double threshold = 0.5 + spec.rho * x;
        if (y < threshold) {
            y = 2.0 * y / (1.0 + 2.0 * spec.rho * x);
            x = spec.lambda * x - (1.0 - spec.lambda);
        } else {
            y = (2.0 * y - 2.0 * spec.rho * x - 1.0) / (1.0 - 2.0 * spec.rho * x);
            x = spec.lambda * x + (1.0 - spec.lambda);
        }
        if (step >= kBurnIn) {
            orbit.x.push_back(x);
            orbit.y.push_back(y);
        }
    }
    return orbit;
}

double baker_vs_bc(const BakerSpec& spec, std::size_t n, std::uint64_t seed) {
    const BakerOrbit orbit = baker_orbit(spec, n, seed);
    const PlaceDepBC bc(spec.lambda, spec.rho);
    const auto chain = bc_chaos_game(bc, n, seed, 1);
    return ks_two_sample(orbit.x, chain);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("need samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double ks = 0.0;
    std::size_t ia = 0, ib = 0;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        ks = std::max(ks, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return ks;
}

double ks_vs_uniform(std::vector<double> samples, double lo, double hi) {
    if (samples.empty()) throw std::invalid_argument("need samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
        const double cdf = std::clamp((samples[idx] - lo) / (hi - lo), 0.0, 1.0);
        ks = std::max(ks, std::abs(static_cast<double>(idx + 1) / n - cdf));
        ks = std::max(ks, std::abs(static_cast<double>(idx) / n - cdf));
    }
    return ks;
}

}  // namespace ifslab::app
