#ifndef IFSLAB_IFS_HPP
#define IFSLAB_IFS_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ifslab/symbolic.hpp"
#include "ifslab/util.hpp"

namespace ifslab::ifs {

using sym::Word;
using sym::EventuallyPeriodicWord;

// Scalar coefficient that is affine in the parameter vector: c0 + sum ci*lam_i.
struct LinForm {
    double c0 = 0.0;
    std::vector<std::pair<int, double>> terms;

    static LinForm constant(double v) { return {v, {}}; }
    static LinForm with_param(double v, int param, double coef = 1.0) {
        return {v, {{param, coef}}};
    }

    double value(std::span<const double> lam) const {
        double v = c0;
        for (const auto& [i, c] : terms) v += c * lam[static_cast<std::size_t>(i)];
        return v;
    }
    double coef(int param) const {
        double c = 0.0;
        for (const auto& [i, cc] : terms) {
            if (i == param) c += cc;
        }
        return c;
    }
    bool depends_on_params() const { return !terms.empty(); }
};

struct AffineMap {
    LinForm slope;
    LinForm offset;
};

// f(x) = (a x + b(1-x)) / ((a+c) x + (b+d)(1-x)) on [0,1]; the projective
// action of [[a,b],[c,d]] on probability vectors (x, 1-x).
struct MobiusMap {
    LinForm a, b, c, d;
};

struct MapSpec;

// f(x) = base(x) + lam_k.
struct TranslatedMap {
    std::shared_ptr<const MapSpec> base;
    int param = 0;
};

struct MapSpec {
    std::variant<AffineMap, MobiusMap, TranslatedMap> node;

    double value(double x, std::span<const double> lam) const;
    double dx(double x, std::span<const double> lam) const;
    double dxx(double x, std::span<const double> lam) const;
    double dlam(double x, std::span<const double> lam, int param) const;
    double dlam_dx(double x, std::span<const double> lam, int param) const;

    // (slope, offset) when the map is affine in x at the given parameter;
    // nullopt for Mobius kinds.
    std::optional<std::pair<double, double>> affine_coeffs(std::span<const double> lam) const;
    // Matrix when the map is a pure (untranslated) Mobius map.
    std::optional<Mat2> mobius_matrix(std::span<const double> lam) const;

    static MapSpec affine(double slope, double offset);
    static MapSpec affine(LinForm slope, LinForm offset);
    static MapSpec mobius(const Mat2& m);
    static MapSpec mobius(LinForm a, LinForm b, LinForm c, LinForm d);
    static MapSpec translated(MapSpec base, int param);
};

class IFSFamily {
  public:
    IFSFamily(std::vector<MapSpec> maps, Interval X, std::vector<Interval> U,
              double gamma1, double gamma2);

    int map_count() const { return static_cast<int>(maps_.size()); }
    int param_dim() const { return static_cast<int>(U_.size()); }
    const MapSpec& map(int i) const { return maps_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<MapSpec>& maps() const { return maps_; }
    const Interval& domain() const { return X_; }
    const Interval& extended_domain() const { return V_; }
    const std::vector<Interval>& param_box() const { return U_; }
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }

    std::vector<double> param_center() const;
    std::vector<std::vector<double>> param_grid(int per_axis) const;

  private:
    std::vector<MapSpec> maps_;
    Interval X_;
    Interval V_;  // X inflated by 5% per side
    std::vector<Interval> U_;
    double gamma1_;
    double gamma2_;
};

struct CylinderInterval {
    Word word;
    Interval interval;
    double length() const { return interval.length(); }
};

struct DerivValue {
    double value = 0.0;
    double deriv = 1.0;
};

// f_w = f_{w1} o ... o f_{wn} evaluated with its x-derivative.
DerivValue apply_word(const IFSFamily& fam, std::span<const double> lam, const Word& w, double x);

CylinderInterval cylinder_interval(const IFSFamily& fam, std::span<const double> lam,
                                   const Word& w);

// All level-n cylinder intervals, indexed by word_index.
std::vector<Interval> level_cylinders(const IFSFamily& fam, std::span<const double> lam, int n,
                                      std::uint64_t budget = kDefaultCylinderBudget);

struct Projection {
    double value = 0.0;
    double error = 0.0;  // rigorous bound; 0 for closed-form fixed points
};

// Point of the nested cylinder intersection for an eventually periodic
// address: exact periodic-tail fixed point, then the preperiod is applied.
Projection natural_projection(const IFSFamily& fam, std::span<const double> lam,
                              const EventuallyPeriodicWord& i, double tol = 1e-13);

struct ProjectionGradient {
    std::vector<double> gradient;  // d components
    double tail_bound = 0.0;       // per component, from truncating the series
};

ProjectionGradient projection_gradient(const IFSFamily& fam, std::span<const double> lam,
                                       const EventuallyPeriodicWord& i, int truncation);

double distortion_ratio(const IFSFamily& fam, std::span<const double> lam, const Word& w,
                        int grid);

// Pairs of distinct words (length <= depth) composing to the same affine map.
std::vector<std::pair<Word, Word>> detect_exact_overlap(const IFSFamily& fam,
                                                        std::span<const double> lam, int depth);

struct AssumptionViolation {
    int map = 0;
    std::vector<double> lambda;
    double x = 0.0;
    std::string what;
};

struct AssumptionsReport {
    double gamma1_obs = 0.0;   // min sampled |f'|
    double gamma2_obs = 0.0;   // max sampled |f'|
    double M1 = 0.0;           // sup |f''|
    double M2 = 0.0;           // sup |d2 f / dx dlam|
    double M_lam = 0.0;        // sup |df/dlam|
    double holder_fxx = 0.0;   // finite-difference quotient of f'' in x
    double holder_mixed = 0.0; // finite-difference quotient of d2f/dxdlam in x
    std::vector<AssumptionViolation> violations;
};

AssumptionsReport verify_assumptions(const IFSFamily& fam, int lam_grid, int x_grid);

// Family f_i + lam_i over (-eps, eps)^m; the domain is widened by 2*eps so
// translated images stay inside it. Requires sampled |f'| < 1/2 on V.
IFSFamily vertical_translate_family(const IFSFamily& base, double eps);

// Projective maps of the given matrices on [0,1]. With a parametrization box
// the entries become a+lam, b+lam, ... with one parameter per entry.
IFSFamily mobius_family(const std::vector<Mat2>& matrices,
                        const std::optional<std::vector<Interval>>& parametrization = std::nullopt);

// Unparametrized affine family (helper used throughout the tests and CLI).
IFSFamily affine_family(const std::vector<double>& slopes, const std::vector<double>& offsets,
                        Interval X);

}  // namespace ifslab::ifs

#endif
