// observables.hpp — lab-frame observables, correlation analysis, scaling fits, phase labels

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/photon_frame.hpp"
#include "dicke/spin_state.hpp"

namespace dicke {

struct ObservableSet {
    int N{0};
    double energy{0.0};  // <H> of the variational state
    double E0{0.0};      // (energy - omega/2) / N
    double n_mean{0.0};  // <a^dag a> / N
    double Mz{0.0};      // sum_i <s^z_i> / N
    double abs_Mz{0.0};
    double Mx{0.0};      // sum_i <s^x_i> / N (frame invariant)
    // Correlations from the bulk site i0 = N/4 - 1, r = 0 .. N/2 - 1 (clipped to the chain).
    int bulk_site{0};
    std::vector<double> zz;    // <s^z_i0 s^z_{i0+r}>
    std::vector<double> stag;  // (-1)^r <s^z_i0 s^z_{i0+r}>
    std::vector<double> xx;    // <s^x_i0 s^x_{i0+r}>
    // Averages over r >= 1 of zz and stag; stag_bulk_opposite uses the other
    // sign convention, (-1)^(r+1) <s^z s^z>.
    double zz_bulk{0.0};
    double stag_bulk{0.0};
    double stag_bulk_opposite{0.0};
};

/// Lab-frame expectations of the state U (psi_ph x phi) for a converged pair.
ObservableSet lab_frame_observables(const ModelSpec& spec, const PhotonFrame& frame,
                                    const SpinState& state);

/// <a^dag a> (total, not per particle) from spin moments.
double lab_photon_number(const ModelSpec& spec, const PhotonFrame& frame, const SpinMoments& m);
/// sum_i <s^z_i> (total) in the lab frame.
double lab_total_sz(const ModelSpec& spec, const PhotonFrame& frame, const SpinMoments& m);

struct ScalingFit {
    double alpha{1.0};      // n_mean per particle ~ N^-alpha
    double intercept{0.0};  // log prefactor
    double rss{0.0};        // residual sum of squares in log space
    double r2{1.0};
    int points{0};
    bool degenerate{false};  // all n_mean below the numerical floor
    std::string regime;      // normal | superradiant | sublinear
};

/// Least-squares fit of log(n_mean) against log(N). Needs >= 4 distinct N.
/// Points at or below `floor` are dropped; if fewer than two remain the fit
/// is degenerate and classified normal.
ScalingFit scaling_fit(const std::vector<std::pair<int, double>>& points, double floor = 1e-12);

/// normal for |alpha - 1| <= tol, superradiant for |alpha| <= tol, otherwise sublinear.
std::string scaling_regime(double alpha, double tol = 0.1);

enum class DecayClass { exponential, power_law, long_range };

std::string to_string(DecayClass d);

struct DecayThresholds {
    double plateau_floor{0.01};  // |C(r_max)| above this may be long-range
    // Long-range also requires |C(r_max)| / |C(r_max / 2)| >= plateau_ratio. A
    // power law r^-eta gives 2^-eta; 0.85 separates eta > 0.23.
    double plateau_ratio{0.85};
};

struct DecayFit {
    DecayClass kind{DecayClass::exponential};
    bool low_confidence{false};
    double exp_rate{0.0};   // |C| ~ exp(-r / xi), rate = 1 / xi
    double exp_rss{0.0};
    double pow_exponent{0.0};  // |C| ~ r^-eta
    double pow_rss{0.0};
    double tail{0.0};   // |C(r_max)|
    double ratio{0.0};  // |C(r_max)| / |C(r_max / 2)|
};

/// Classify a correlation table indexed by r (entry 0 is r = 0, ignored).
DecayFit correlation_decay_classify(const std::vector<double>& corr, int N,
                                    const DecayThresholds& th = {});

struct PhaseThresholds {
    double superradiant_n{0.01};  // n_mean above this is superradiant
    double order_tol{0.02};       // |corr - 1/4| below this is ordered
    double sublinear_lo{0.05};    // coexistence needs alpha in (lo, hi)
    double sublinear_hi{0.95};
    DecayThresholds decay{};
};

struct PhaseLabel {
    std::string label;  // FM-NP | AFM-NP | PM-SP | XY-SP-coexistence | boundary
    std::map<std::string, double> distance;
    DecayFit xx;
};

PhaseLabel classify_phase(const ObservableSet& obs, std::optional<double> alpha = std::nullopt,
                          const PhaseThresholds& th = {});

}  // namespace dicke
