#ifndef IFSLAB_APPLICATIONS_HPP
#define IFSLAB_APPLICATIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ifslab/thermo.hpp"

namespace ifslab::app {

using thermo::GibbsApproximation;

// Two affine maps lambda*x -/+ (1-lambda) on [-1,1] driven by the
// place-dependent probabilities 1/2 +/- rho*x.
struct PlaceDepBC {
    double lambda = 0.5;
    double rho = 0.0;

    PlaceDepBC(double lambda_, double rho_);

    double psi(int branch, double x) const {  // branch 0 or 1
        return branch == 0 ? lambda * x - (1.0 - lambda) : lambda * x + (1.0 - lambda);
    }
    double prob(int branch, double x) const {
        return branch == 0 ? 0.5 + rho * x : 0.5 - rho * x;
    }
};

std::vector<double> bc_chaos_game(const PlaceDepBC& spec, std::size_t n, std::uint64_t seed,
                                  std::uint64_t stream = 0);

struct McStats {
    double h = 0.0;
    double h_stderr = 0.0;
    double chi = 0.0;       // -log(lambda), an algebraic identity
    double chi_stderr = 0.0;  // zero by construction
};

McStats bc_entropy_lyapunov(const PlaceDepBC& spec, const std::vector<double>& samples);

struct BcBounds {
    double A = 0.0;
    double B = 0.0;
    double dim_lower = 0.0;
    double dim_upper = 0.0;
};

BcBounds bc_bounds(double lambda, double rho);

enum class RegionClass { abs_cont_ae, singular, undetermined };

std::string to_string(RegionClass c);

// Transversality interval for the one-parameter family.
inline constexpr double kBcTransversalityLo = 0.5;
inline constexpr double kBcTransversalityHi = 0.6684755;

RegionClass bc_region_classify(double lambda, double rho);

struct RegionCell {
    double lambda = 0.0;
    double rho = 0.0;
    BcBounds bounds;
    RegionClass cls = RegionClass::undetermined;
};

std::vector<RegionCell> bc_region_scan(double lambda_lo, double lambda_hi, int lambda_count,
                                       double rho_lo, double rho_hi, int rho_count);

// Max residual of the stationarity identity over the test functions
// cos(j*pi*x/2), j = 0..test_fns.
double stationarity_check(const PlaceDepBC& spec, const std::vector<double>& samples,
                          int test_fns);

// Companion objects for the thermodynamic machinery.
ifs::IFSFamily bc_family(double lambda);               // unparametrized, at a fixed lambda
ifs::IFSFamily bc_parametrized_family();               // d = 1 over the transversality interval
thermo::Potential bc_potential(const PlaceDepBC& spec);

struct FurstenbergSpec {
    std::vector<Mat2> matrices;
    double q = 0.0;

    bool in_U() const;  // |det A| < (1/2) <A>^2 for every matrix, strictly
};

struct PressureEstimate {
    double primary = 0.0;  // two-depth difference
    double raw = 0.0;      // (1/n) log sum
    int n = 0;
};

// Growth rate of sum over level-n words of ||A_w||^q (largest singular value).
PressureEstimate furstenberg_pressure(const FurstenbergSpec& spec, int n,
                                      std::uint64_t budget = kDefaultCylinderBudget);

// Cylinder weights proportional to ||A_w||^q (direct norm formula path).
GibbsApproximation furstenberg_gibbs(const FurstenbergSpec& spec, int k,
                                     std::uint64_t budget = kDefaultCylinderBudget);

// Matrix-norm potential for the transfer operator path.
thermo::Potential furstenberg_potential(const FurstenbergSpec& spec);

struct CocycleExponents {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double mean_log_det = 0.0;  // equals eta1 + eta2 up to rounding
};

CocycleExponents cocycle_lyapunov(const FurstenbergSpec& spec, const GibbsApproximation& g,
                                  int n, std::uint64_t budget = kDefaultCylinderBudget);

struct FurstenbergReport {
    double pressure = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double h = 0.0;
    double chi = 0.0;
    double dimension = 0.0;
    bool abs_cont_flag = false;  // P(q) > (q+1) eta1 - eta2
};

FurstenbergReport furstenberg_dimension(const FurstenbergSpec& spec,
                                        const GibbsApproximation& g, int n,
                                        std::uint64_t budget = kDefaultCylinderBudget);

struct BakerSpec {
    double lambda = 0.6;
    double rho = 0.1;

    BakerSpec(double lambda_, double rho_);
};

struct BakerOrbit {
    std::vector<double> x;
    std::vector<double> y;
};

BakerOrbit baker_orbit(const BakerSpec& spec, std::size_t n, std::uint64_t seed);

// Kolmogorov-Smirnov distance between the baker x-marginal and the chaos-game
// samples at the same parameters.
double baker_vs_bc(const BakerSpec& spec, std::size_t n, std::uint64_t seed);

double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_vs_uniform(std::vector<double> samples, double lo, double hi);

}  // namespace ifslab::app

#endif
