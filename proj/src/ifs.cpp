#include "ifslab/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifslab::ifs {

namespace {

struct MobiusAt {
    double a, b, c, d;
    double n0, n1;  // N(x) = n1*x + n0
    double d0, d1;  // D(x) = d1*x + d0
    double det;
};

MobiusAt mobius_at(const MobiusMap& m, std::span<const double> lam) {
    MobiusAt r{};
    r.a = m.a.value(lam);
    r.b = m.b.value(lam);
    r.c = m.c.value(lam);
    r.d = m.d.value(lam);
    r.n1 = r.a - r.b;
    r.n0 = r.b;
    r.d1 = (r.a + r.c) - (r.b + r.d);
    r.d0 = r.b + r.d;
    r.det = r.a * r.d - r.b * r.c;
    return r;
}

}  // namespace

MapSpec MapSpec::affine(double slope, double offset) {
    return MapSpec{AffineMap{LinForm::constant(slope), LinForm::constant(offset)}};
}

MapSpec MapSpec::affine(LinForm slope, LinForm offset) {
    return MapSpec{AffineMap{std::move(slope), std::move(offset)}};
}

MapSpec MapSpec::mobius(const Mat2& m) {
    return MapSpec{MobiusMap{LinForm::constant(m.a), LinForm::constant(m.b),
                             LinForm::constant(m.c), LinForm::constant(m.d)}};
}

MapSpec MapSpec::mobius(LinForm a, LinForm b, LinForm c, LinForm d) {
    return MapSpec{MobiusMap{std::move(a), std::move(b), std::move(c), std::move(d)}};
}

MapSpec MapSpec::translated(MapSpec base, int param) {
    return MapSpec{TranslatedMap{std::make_shared<MapSpec>(std::move(base)), param}};
}

double MapSpec::value(double x, std::span<const double> lam) const {
    if (const auto* a = std::get_if<AffineMap>(&node)) {
        return a->slope.value(lam) * x + a->offset.value(lam);
    }
    if (const auto* m = std::get_if<MobiusMap>(&node)) {
        const MobiusAt at = mobius_at(*m, lam);
        return (at.n1 * x + at.n0) / (at.d1 * x + at.d0);
    }
    const auto& t = std::get<TranslatedMap>(node);
    return t.base->value(x, lam) + lam[static_cast<std::size_t>(t.param)];
}

double MapSpec::dx(double x, std::span<const double> lam) const {
    if (const auto* a = std::get_if<AffineMap>(&node)) {
        return a->slope.value(lam);
    }
    if (const auto* m = std::get_if<MobiusMap>(&node)) {
        const MobiusAt at = mobius_at(*m, lam);
        const double D = at.d1 * x + at.d0;
        return at.det / (D * D);
    }
    return std::get<TranslatedMap>(node).base->dx(x, lam);
}

double MapSpec::dxx(double x, std::span<const double> lam) const {
    if (std::holds_alternative<AffineMap>(node)) return 0.0;
    if (const auto* m = std::get_if<MobiusMap>(&node)) {
        const MobiusAt at = mobius_at(*m, lam);
        const double D = at.d1 * x + at.d0;
        return -2.0 * at.det * at.d1 / (D * D * D);
    }
    return std::get<TranslatedMap>(node).base->dxx(x, lam);
}

double MapSpec::dlam(double x, std::span<const double> lam, int param) const {
    if (const auto* a = std::get_if<AffineMap>(&node)) {
        return a->slope.coef(param) * x + a->offset.coef(param);
    }
    if (const auto* m = std::get_if<MobiusMap>(&node)) {
        const MobiusAt at = mobius_at(*m, lam);
        const double da = m->a.coef(param), db = m->b.coef(param);
        const double dc = m->c.coef(param), dd = m->d.coef(param);
        const double N = at.n1 * x + at.n0;
        const double D = at.d1 * x + at.d0;
        const double Ndot = (da - db) * x + db;
        const double Ddot = ((da + dc) - (db + dd)) * x + (db + dd);
        return (Ndot * D - N * Ddot) / (D * D);
    }
    const auto& t = std::get<TranslatedMap>(node);
    return t.base->dlam(x, lam, param) + (t.param == param ? 1.0 : 0.0);
}

double MapSpec::dlam_dx(double x, std::span<const double> lam, int param) const {
    if (const auto* a = std::get_if<AffineMap>(&node)) {
        return a->slope.coef(param);
    }
    if (const auto* m = std::get_if<MobiusMap>(&node)) {
        const MobiusAt at = mobius_at(*m, lam);
        const double da = m->a.coef(param), db = m->b.coef(param);
        const double dc = m->c.coef(param), dd = m->d.coef(param);
        const double N = at.n1 * x + at.n0;
        const double D = at.d1 * x + at.d0;
        const double Np = at.n1;
        const double Dp = at.d1;
        const double Ndot = (da - db) * x + db;
        const double Ddot = ((da + dc) - (db + dd)) * x + (db + dd);
        const double Ndotp = da - db;
        const double Ddotp = (da + dc) - (db + dd);
        const double num = Ndotp * D + Ndot * Dp - Np * Ddot - N * Ddotp;
        return num / (D * D) - 2.0 * Dp * (Ndot * D - N * Ddot) / (D * D * D);
    }
    return std::get<TranslatedMap>(node).base->dlam_dx(x, lam, param);
}

std::optional<std::pair<double, double>> MapSpec::affine_coeffs(
    std::span<const double> lam) const {
    if (const auto* a = std::get_if<AffineMap>(&node)) {
        return std::make_pair(a->slope.value(lam), a->offset.value(lam));
    }
    if (const auto* t = std::get_if<TranslatedMap>(&node)) {
        auto base = t->base->affine_coeffs(lam);
        if (!base) return std::nullopt;
        return std::make_pair(base->first,
                              base->second + lam[static_cast<std::size_t>(t->param)]);
    }
    return std::nullopt;
}

std::optional<Mat2> MapSpec::mobius_matrix(std::span<const double> lam) const {
    if (const auto* m = std::get_if<MobiusMap>(&node)) {
        return Mat2{m->a.value(lam), m->b.value(lam), m->c.value(lam), m->d.value(lam)};
    }
    return std::nullopt;
}

IFSFamily::IFSFamily(std::vector<MapSpec> maps, Interval X, std::vector<Interval> U,
                     double gamma1, double gamma2)
    : maps_(std::move(maps)), X_(X), U_(std::move(U)), gamma1_(gamma1), gamma2_(gamma2) {
    if (maps_.size() < 2) throw std::invalid_argument("need at least two maps");
    if (!(X_.lo < X_.hi)) throw std::invalid_argument("degenerate domain interval");
    if (!(0.0 < gamma1_ && gamma1_ <= gamma2_ && gamma2_ < 1.0)) {
        throw std::invalid_argument("hyperbolicity bounds must satisfy 0 < g1 <= g2 < 1");
    }
    V_ = X_.inflated(0.05 * X_.length());
}

std::vector<double> IFSFamily::param_center() const {
    std::vector<double> c(U_.size());
    for (std::size_t i = 0; i < U_.size(); ++i) c[i] = 0.5 * (U_[i].lo + U_[i].hi);
    return c;
}

std::vector<std::vector<double>> IFSFamily::param_grid(int per_axis) const {
    if (U_.empty()) return {{}};
    if (per_axis < 1) throw std::invalid_argument("grid must have at least one point per axis");
    std::vector<std::vector<double>> axes(U_.size());
    for (std::size_t i = 0; i < U_.size(); ++i) {
        if (per_axis == 1) {
            axes[i] = {0.5 * (U_[i].lo + U_[i].hi)};
            continue;
        }
        for (int k = 0; k < per_axis; ++k) {
            axes[i].push_back(U_[i].lo + (U_[i].hi - U_[i].lo) * k / (per_axis - 1));
        }
    }
    std::vector<std::vector<double>> grid;
    std::vector<std::size_t> cursor(U_.size(), 0);
    while (true) {
        std::vector<double> point(U_.size());
        for (std::size_t i = 0; i < U_.size(); ++i) point[i] = axes[i][cursor[i]];
        grid.push_back(std::move(point));
        std::size_t axis = 0;
        while (axis < U_.size() && ++cursor[axis] == axes[axis].size()) {
            cursor[axis] = 0;
            ++axis;
        }
        if (axis == U_.size()) break;
    }
    return grid;
}

DerivValue apply_word(const IFSFamily& fam, std::span<const double> lam, const Word& w,
                      double x) {
    DerivValue out{x, 1.0};
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const MapSpec& f = fam.map(*it);
        out.deriv *= f.dx(out.value, lam);
        out.value = f.value(out.value, lam);
    }
    return out;
}

CylinderInterval cylinder_interval(const IFSFamily& fam, std::span<const double> lam,
                                   const Word& w) {
    const double a = apply_word(fam, lam, w, fam.domain().lo).value;
    const double b = apply_word(fam, lam, w, fam.domain().hi).value;
    return CylinderInterval{w, {std::min(a, b), std::max(a, b)}};
}

std::vector<Interval> level_cylinders(const IFSFamily& fam, std::span<const double> lam, int n,
                                      std::uint64_t budget) {
    const int m = fam.map_count();
    pow_checked(static_cast<std::uint64_t>(m), n, budget);
    std::vector<Interval> level{fam.domain()};
    for (int j = 1; j <= n; ++j) {
        std::vector<Interval> next(level.size() * static_cast<std::size_t>(m));
        for (int a = 1; a <= m; ++a) {
            const MapSpec& f = fam.map(a);
            const std::size_t base = static_cast<std::size_t>(a - 1) * level.size();
            for (std::size_t t = 0; t < level.size(); ++t) {
                const double u = f.value(level[t].lo, lam);
                const double v = f.value(level[t].hi, lam);
                next[base + t] = {std::min(u, v), std::max(u, v)};
            }
        }
        level = std::move(next);
    }
    return level;
}

namespace {

// Fixed point of the period composition g = f_{p1} o ... o f_{pk}.
Projection periodic_fixed_point(const IFSFamily& fam, std::span<const double> lam,
                                const Word& period, double tol) {
    // Affine periods close in one linear solve.
    {
        double s = 1.0, o = 0.0;
        bool affine = true;
        for (auto it = period.rbegin(); it != period.rend() && affine; ++it) {
            auto co = fam.map(*it).affine_coeffs(lam);
            if (!co) {
                affine = false;
            } else {
                s = co->first * s;
                o = co->first * o + co->second;
            }
        }
        if (affine) {
            return {o / (1.0 - s), 0.0};
        }
    }
    // Pure Mobius periods: Perron eigenvector of the matrix product.
    {
        bool mobius = true;
        Mat2 prod{1, 0, 0, 1};
        for (int sympos : period) {
            auto m = fam.map(sympos).mobius_matrix(lam);
            if (!m) {
                mobius = false;
                break;
            }
            prod = prod * *m;
        }
        if (mobius && prod.positive()) {
            const double tr = prod.trace();
            const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * prod.det()));
            const double mu = 0.5 * (tr + disc);
            // Pick the eigenvector expression with the larger magnitude.
            double v1 = prod.b, v2 = mu - prod.a;
            const double w1 = mu - prod.d, w2 = prod.c;
            if (std::abs(w1) + std::abs(w2) > std::abs(v1) + std::abs(v2)) {
                v1 = w1;
                v2 = w2;
            }
            return {v1 / (v1 + v2), 0.0};
        }
    }
    // General case: bisect g(x) - x on the domain.
    const Interval X = fam.domain();
    auto g = [&](double x) { return apply_word(fam, lam, period, x).value; };
    double lo = X.lo, hi = X.hi;
    double flo = g(lo) - lo, fhi = g(hi) - hi;
    if (flo == 0.0) return {lo, 0.0};
    if (fhi == 0.0) return {hi, 0.0};
    if (flo < 0.0 || fhi > 0.0) {
        throw NoConvergence("periodic fixed point not bracketed; maps do not keep the domain");
    }
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid) - mid;
        if (fm >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

}  // namespace

Projection natural_projection(const IFSFamily& fam, std::span<const double> lam,
                              const EventuallyPeriodicWord& i, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    Projection fp = periodic_fixed_point(fam, lam, i.period(), tol);
    const DerivValue head = apply_word(fam, lam, i.preperiod(), fp.value);
    return {head.value, fp.error * std::abs(head.deriv)};
}

ProjectionGradient projection_gradient(const IFSFamily& fam, std::span<const double> lam,
                                       const EventuallyPeriodicWord& i, int truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation depth must be >= 1");
    const int d = fam.param_dim();
    ProjectionGradient out;
    out.gradient.assign(static_cast<std::size_t>(d), 0.0);
    if (d == 0) return out;

    const std::size_t pre_len = i.preperiod().size();
    const std::size_t per_len = i.period().size();
    const std::size_t cycle = pre_len + per_len;

    // Projections of all distinct shifts; the tail cycles with the period.
    std::vector<double> proj(cycle);
    EventuallyPeriodicWord cur = i;
    for (std::size_t n = 0; n < cycle; ++n) {
        proj[n] = natural_projection(fam, lam, cur).value;
        cur = sym::shift(cur);
    }
    auto proj_at = [&](std::size_t n) {
        if (n < cycle) return proj[n];
        return proj[pre_len + (n - pre_len) % per_len];
    };

    double prefix_deriv = 1.0;
    for (int n = 1; n <= truncation; ++n) {
        const int symbol = i.symbol_at(static_cast<std::size_t>(n - 1));
        const double point = proj_at(static_cast<std::size_t>(n));
        const MapSpec& f = fam.map(symbol);
        for (int k = 0; k < d; ++k) {
            out.gradient[static_cast<std::size_t>(k)] += prefix_deriv * f.dlam(point, lam, k);
        }
        prefix_deriv *= f.dx(point, lam);
    }

    // sup |df/dlam| sampled on the domain bounds the dropped terms.
    double m_lam = 0.0;
    const Interval X = fam.domain();
    for (int a = 1; a <= fam.map_count(); ++a) {
        for (int gp = 0; gp <= 8; ++gp) {
            const double x = X.lo + X.length() * gp / 8.0;
            for (int k = 0; k < d; ++k) {
                m_lam = std::max(m_lam, std::abs(fam.map(a).dlam(x, lam, k)));
            }
        }
    }
    const double g2 = fam.gamma2();
    out.tail_bound = m_lam * std::pow(g2, truncation) / (1.0 - g2);
    return out;
}

double distortion_ratio(const IFSFamily& fam, std::span<const double> lam, const Word& w,
                        int grid) {
    if (grid < 2) throw std::invalid_argument("distortion grid must be >= 2");
    const Interval X = fam.domain();
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (int gp = 0; gp < grid; ++gp) {
        const double x = X.lo + X.length() * gp / (grid - 1);
        const double der = std::abs(apply_word(fam, lam, w, x).deriv);
        dmin = std::min(dmin, der);
        dmax = std::max(dmax, der);
    }
    return dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
}

std::vector<std::pair<Word, Word>> detect_exact_overlap(const IFSFamily& fam,
                                                        std::span<const double> lam, int depth) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    for (const MapSpec& f : fam.maps()) {
        if (!f.affine_coeffs(lam)) {
            throw UnsupportedKind("exact-overlap detection supports affine maps only");
        }
    }
    struct Entry {
        double slope, offset;
        Word word;
    };
    std::vector<Entry> entries;
    // Level DP over composed (slope, offset) pairs.
    std::vector<std::pair<double, double>> level{{1.0, 0.0}};
    for (int j = 1; j <= depth; ++j) {
        std::vector<std::pair<double, double>> next(level.size() *
                                                    static_cast<std::size_t>(fam.map_count()));
        for (int a = 1; a <= fam.map_count(); ++a) {
            const auto co = *fam.map(a).affine_coeffs(lam);
            const std::size_t base = static_cast<std::size_t>(a - 1) * level.size();
            for (std::size_t t = 0; t < level.size(); ++t) {
                next[base + t] = {co.first * level[t].first,
                                  co.first * level[t].second + co.second};
            }
        }
        level = std::move(next);
        for (std::size_t idx = 0; idx < level.size(); ++idx) {
            entries.push_back(
                {level[idx].first, level[idx].second, sym::word_from_index(idx, fam.map_count(), j)});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
        if (l.slope != r.slope) return l.slope < r.slope;
        if (l.offset != r.offset) return l.offset < r.offset;
        return l.word < r.word;
    });
    constexpr double kTol = 1e-12;
    std::vector<std::pair<Word, Word>> pairs;
    for (std::size_t s = 0; s < entries.size(); ++s) {
        for (std::size_t t = s + 1; t < entries.size(); ++t) {
            if (entries[t].slope - entries[s].slope > kTol) break;
            if (std::abs(entries[t].offset - entries[s].offset) <= kTol) {
                Word w1 = entries[s].word, w2 = entries[t].word;
                if (w2.size() < w1.size() || (w2.size() == w1.size() && w2 < w1)) std::swap(w1, w2);
                pairs.emplace_back(std::move(w1), std::move(w2));
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

AssumptionsReport verify_assumptions(const IFSFamily& fam, int lam_grid, int x_grid) {
    if (lam_grid < 2 || x_grid < 2) throw std::invalid_argument("grids must be >= 2");
    AssumptionsReport rep;
    rep.gamma1_obs = std::numeric_limits<double>::infinity();

    const Interval X = fam.domain();
    std::vector<double> xs(static_cast<std::size_t>(x_grid));
    for (int gp = 0; gp < x_grid; ++gp) xs[static_cast<std::size_t>(gp)] = X.lo + X.length() * gp / (x_grid - 1);

    const auto grid = fam.param_grid(fam.param_dim() == 0 ? 1 : lam_grid);
    const int d = fam.param_dim();
    for (const auto& lam_vec : grid) {
        std::span<const double> lam(lam_vec);
        for (int a = 1; a <= fam.map_count(); ++a) {
            const MapSpec& f = fam.map(a);
            // Containment from endpoint images (maps are monotone).
            const double u = f.value(X.lo, lam), v = f.value(X.hi, lam);
            if (std::min(u, v) < X.lo - 1e-12 || std::max(u, v) > X.hi + 1e-12) {
                rep.violations.push_back({a, lam_vec, X.lo, "image leaves the domain"});
            }
            double prev_fxx = 0.0, prev_mixed = 0.0;
            bool have_prev = false;
            for (std::size_t xi = 0; xi < xs.size(); ++xi) {
                const double x = xs[xi];
                const double der = std::abs(f.dx(x, lam));
                rep.gamma1_obs = std::min(rep.gamma1_obs, der);
                rep.gamma2_obs = std::max(rep.gamma2_obs, der);
                if (der < fam.gamma1() - 1e-12 || der > fam.gamma2() + 1e-12) {
                    rep.violations.push_back({a, lam_vec, x, "|f'| outside declared bounds"});
                }
                const double fxx = f.dxx(x, lam);
                rep.M1 = std::max(rep.M1, std::abs(fxx));
                double mixed_max = 0.0;
                for (int k = 0; k < d; ++k) {
                    mixed_max = std::max(mixed_max, std::abs(f.dlam_dx(x, lam, k)));
                    rep.M_lam = std::max(rep.M_lam, std::abs(f.dlam(x, lam, k)));
                }
                rep.M2 = std::max(rep.M2, mixed_max);
                if (have_prev && xi > 0) {
                    const double h = x - xs[xi - 1];
                    rep.holder_fxx = std::max(rep.holder_fxx, std::abs(fxx - prev_fxx) / h);
                    rep.holder_mixed =
                        std::max(rep.holder_mixed, std::abs(mixed_max - prev_mixed) / h);
                }
                prev_fxx = fxx;
                prev_mixed = mixed_max;
                have_prev = true;
            }
        }
    }
    if (!std::isfinite(rep.gamma1_obs)) rep.gamma1_obs = 0.0;
    return rep;
}

IFSFamily vertical_translate_family(const IFSFamily& base, double eps) {
    if (base.param_dim() != 0) {
        throw std::invalid_argument("vertical translates need an unparametrized base family");
    }
    if (!(eps > 0.0)) throw std::invalid_argument("translation radius must be positive");
    // |f'| < 1/2 on the extended domain keeps translates transversal.
    const Interval V = base.extended_domain();
    for (int a = 1; a <= base.map_count(); ++a) {
        for (int gp = 0; gp <= 64; ++gp) {
            const double x = V.lo + V.length() * gp / 64.0;
            if (std::abs(base.map(a).dx(x, {})) >= 0.5) {
                throw ContractionTooWeak("vertical translates require |f'| < 1/2");
            }
        }
    }
    std::vector<MapSpec> maps;
    std::vector<Interval> U;
    for (int a = 1; a <= base.map_count(); ++a) {
        maps.push_back(MapSpec::translated(base.map(a), a - 1));
        U.push_back({-eps, eps});
    }
    const Interval X = base.domain().inflated(2.0 * eps);
    return IFSFamily(std::move(maps), X, std::move(U), base.gamma1(), base.gamma2());
}

IFSFamily mobius_family(const std::vector<Mat2>& matrices,
                        const std::optional<std::vector<Interval>>& parametrization) {
    if (matrices.size() < 2) throw std::invalid_argument("need at least two matrices");
    double g1 = 1.0, g2 = 0.0;
    for (const Mat2& A : matrices) {
        if (std::abs(A.det()) < 1e-14) throw SingularMatrix("matrix is singular");
        const double lo = A.col_sum_min();
        const double hi = A.col_sum_max();
        const double sup = std::abs(A.det()) / (lo * lo);
        if (sup >= 1.0) throw NotContracting("|det| >= <A>^2: map does not contract on [0,1]");
        if (!A.positive()) {
            throw std::invalid_argument("projective form requires strictly positive entries");
        }
        g2 = std::max(g2, sup);
        g1 = std::min(g1, std::abs(A.det()) / (hi * hi));
    }
    std::vector<MapSpec> maps;
    std::vector<Interval> U;
    if (parametrization) {
        if (parametrization->size() != 4 * matrices.size()) {
            throw std::invalid_argument("parametrization box needs 4 intervals per matrix");
        }
        U = *parametrization;
        for (std::size_t i = 0; i < matrices.size(); ++i) {
            const int p = static_cast<int>(4 * i);
            maps.push_back(MapSpec::mobius(LinForm::with_param(matrices[i].a, p),
                                           LinForm::with_param(matrices[i].b, p + 1),
                                           LinForm::with_param(matrices[i].c, p + 2),
                                           LinForm::with_param(matrices[i].d, p + 3)));
        }
    } else {
        for (const Mat2& A : matrices) maps.push_back(MapSpec::mobius(A));
    }
    return IFSFamily(std::move(maps), Interval{0.0, 1.0}, std::move(U), g1, g2);
}

IFSFamily affine_family(const std::vector<double>& slopes, const std::vector<double>& offsets,
                        Interval X) {
    if (slopes.size() != offsets.size()) throw std::invalid_argument("slope/offset size mismatch");
    std::vector<MapSpec> maps;
    double g1 = 1.0, g2 = 0.0;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        maps.push_back(MapSpec::affine(slopes[i], offsets[i]));
        g1 = std::min(g1, std::abs(slopes[i]));
        g2 = std::max(g2, std::abs(slopes[i]));
    }
    return IFSFamily(std::move(maps), X, {}, g1, g2);
}

}  // namespace ifslab::ifs
