#ifndef IFSLAB_THERMO_HPP
#define IFSLAB_THERMO_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ifslab/ifs.hpp"

namespace ifslab::thermo {

using ifs::IFSFamily;
using sym::Word;

// Holder potential on the symbol space, evaluated through the first symbol
// and the projection of the shifted word.
class Potential {
  public:
    enum class Kind { first_symbol, geometric, place_dependent_log, matrix_norm };

    static Potential first_symbol(std::vector<double> log_weights);
    static Potential geometric(double s);
    static Potential place_dependent_log(std::vector<std::function<double(double)>> probs);
    static Potential matrix_norm(double q, std::vector<Mat2> matrices);

    Kind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    // Alphabet size implied by the data (0 when any size works).
    int symbol_count() const;

    // phi(a . tail) where y is the projection of the tail.
    double eval(const IFSFamily& fam, std::span<const double> lam, int first_symbol,
                double y) const;

    // var_k phi <= holder_b * holder_alpha^k.
    double holder_alpha() const { return holder_alpha_; }
    double holder_b() const { return holder_b_; }
    bool holder_ready() const { return holder_ready_; }
    void set_holder(double alpha, double b);

    // Samples a Lipschitz bound for the symbol evaluators and derives
    // (alpha, b) from the family's contraction rate.
    void calibrate_holder(const IFSFamily& fam, std::span<const double> lam, int grid = 128);

    // Largest sampled |phi(i) - phi(j)| over word pairs agreeing to depth k.
    double sampled_variation(const IFSFamily& fam, std::span<const double> lam, int k,
                             int samples = 64) const;

  private:
    Kind kind_;
    std::vector<double> log_weights_;
    double exponent_ = 0.0;
    std::vector<std::function<double(double)>> probs_;
    std::vector<Mat2> matrices_;
    double holder_alpha_ = 0.5;
    double holder_b_ = 0.0;
    bool holder_ready_ = false;

    explicit Potential(Kind k) : kind_(k) {}
};

// Discretized Gibbs data: eigenelements of the depth-k transfer operator plus
// cylinder weights extended to `depth` through the induced Markov kernel.
struct GibbsApproximation {
    int m = 0;
    int depth = 0;
    int k = 0;
    double eigenvalue = 1.0;  // e^P
    double residual = 0.0;
    std::vector<double> weights;        // size m^depth, sums to 1
    std::vector<double> eigenfunction;  // size m^k (may be empty)
    std::vector<double> eigenmeasure;   // size m^k (may be empty)
    std::vector<double> transition;     // m^k rows * m cols (may be empty)

    double log_eigenvalue() const;
    double mass(const Word& w) const;
    // Exact marginal at depth j <= depth.
    std::vector<double> marginal(int j) const;
    // Weights at depth n >= depth via the stored kernel.
    std::vector<double> extended(int n, std::uint64_t budget = kDefaultCylinderBudget) const;
};

struct PressureValue {
    double at_n = 0.0;
    std::optional<double> at_2n;
    std::optional<double> extrapolated;  // Richardson step 2*P_{2n} - P_n
    int n = 0;
};

// (1/n) log sum over level-n cylinders of |X_w|^t.
PressureValue pressure(const IFSFamily& fam, std::span<const double> lam, double t, int n,
                       std::uint64_t budget = kDefaultCylinderBudget);

struct SimilarityDimensionEstimate {
    double value = 0.0;
    double sensitivity = 0.0;  // change of the root when the depth is halved
    int n = 0;
};

// Root of the cylinder pressure in t, by bisection.
SimilarityDimensionEstimate conformal_similarity_dimension(
    const IFSFamily& fam, std::span<const double> lam, int n = 10,
    std::uint64_t budget = kDefaultCylinderBudget);

// Root of sum |r_i|^s = 1.
double solve_similarity_dimension(const std::vector<double>& ratios);

struct BirkhoffSum {
    double value = 0.0;
    double slack = 0.0;  // variation bound for the cylinder supremum
};

// S_n phi along w . 1^inf.
BirkhoffSum birkhoff_sum(const Potential& pot, const IFSFamily& fam,
                         std::span<const double> lam, const Word& w);

// (1/n) log sum over level-n words of exp(S_n phi).
double potential_pressure(const Potential& pot, const IFSFamily& fam,
                          std::span<const double> lam, int n,
                          std::uint64_t budget = kDefaultCylinderBudget);

// Smallest k with holder_b * alpha^k < 1e-8, capped by the budget.
int default_truncation_depth(const Potential& pot, int m,
                             std::uint64_t budget = kDefaultCylinderBudget);

// Power iteration on the depth-k discretized transfer operator; weights are
// assembled at `depth` >= k (defaults to k when depth == 0).
GibbsApproximation transfer_operator_solve(const Potential& pot, const IFSFamily& fam,
                                           std::span<const double> lam, int k, int depth = 0,
                                           std::uint64_t budget = kDefaultCylinderBudget);

struct EntropyEstimate {
    double conditional = 0.0;  // H_n - H_{n-1}; primary
    double raw = 0.0;          // H_n / n
};

EntropyEstimate entropy_estimate(const GibbsApproximation& g);

struct LyapunovEstimate {
    double conditional = 0.0;  // L_n - L_{n-1}; primary
    double raw = 0.0;          // L_n / n
};

LyapunovEstimate lyapunov_estimate(const GibbsApproximation& g, const IFSFamily& fam,
                                   std::span<const double> lam,
                                   std::uint64_t budget = kDefaultCylinderBudget);

struct ErgodicStats {
    double entropy = 0.0;
    double lyapunov = 0.0;
    double ratio = 0.0;
    int depth = 0;
    double extrapolation_residual = 0.0;
};

ErgodicStats ergodic_stats(const GibbsApproximation& g, const IFSFamily& fam,
                           std::span<const double> lam,
                           std::uint64_t budget = kDefaultCylinderBudget);

// |P(phi) - (h + integral of phi)| from the approximation.
double equilibrium_check(const Potential& pot, const IFSFamily& fam,
                         std::span<const double> lam, const GibbsApproximation& g,
                         std::uint64_t budget = kDefaultCylinderBudget);

// max/min over level-n words of weights / exp(-nP + S_n phi).
std::pair<double, double> gibbs_ratio_bounds(const GibbsApproximation& g, const Potential& pot,
                                             const IFSFamily& fam, std::span<const double> lam);

// max over depth-n words of |log(mu_a / mu_b)| / (n * gap^theta).
double measure_modulus(const GibbsApproximation& a, const GibbsApproximation& b,
                       double param_gap, double theta = 1.0);

struct ModulusSweep {
    double c_hat = 0.0;     // at the smallest gap
    double theta_fit = 0.0; // least-squares exponent over the sweep
};

ModulusSweep measure_modulus_sweep(const GibbsApproximation& base,
                                   const std::vector<std::pair<double, GibbsApproximation>>& sweep);

}  // namespace ifslab::thermo

#endif
