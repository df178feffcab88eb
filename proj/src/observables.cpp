#include "dicke/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "dicke/effective_hamiltonian.hpp"

namespace dicke {

double lab_photon_number(const ModelSpec& spec, const PhotonFrame& frame, const SpinMoments& m) {
    const PhotonMoments mo = moments(frame);
    const double eta = entangler_scale(frame, spec);
    return 0.5 * (mo.v_x + mo.v_p - 1.0) + 0.5 * (mo.mean_x * mo.mean_x + mo.mean_p * mo.mean_p) +
           eta * mo.mean_x * m.X + 0.5 * eta * eta * m.XX;
}

double lab_total_sz(const ModelSpec& spec, const PhotonFrame& frame, const SpinMoments& m) {
    const DressingFactors d = dressing(frame, spec);
    return d.C1 * m.Z + d.S1 * m.Y;
}

ObservableSet lab_frame_observables(const ModelSpec& spec, const PhotonFrame& frame,
                                    const SpinState& state) {
    const int N = spec.N;
    const SpinMoments m = state.moments(spec.boundary);
    const DressingFactors d = dressing(frame, spec);

    ObservableSet o;
    o.N = N;
    o.energy = couplings_energy(build(spec, frame), m);
    o.E0 = (o.energy - 0.5 * spec.omega) / N;
    o.n_mean = lab_photon_number(spec, frame, m) / N;
    o.Mz = lab_total_sz(spec, frame, m) / N;
    o.abs_Mz = std::abs(o.Mz);
    o.Mx = m.X / N;

    const int i0 = bulk_site(N);
    o.bulk_site = i0;
    const int r_end = std::max(1, std::min(N / 2, N - i0));
    // The y-dependent pieces of the rotated s^z s^z only matter off the identity frame.
    const double cyy = 0.5 * (1.0 - d.C2);
    const bool need_y = cyy != 0.0 || d.S2 != 0.0;
    std::vector<Observable> req;
    for (int r = 0; r < r_end; ++r) {
        const int j = i0 + r;
        req.push_back(Observable::pair(i0, Axis::z, j, Axis::z));
        req.push_back(Observable::pair(i0, Axis::x, j, Axis::x));
        if (need_y) {
            req.push_back(Observable::pair(i0, Axis::y, j, Axis::y));
            req.push_back(Observable::pair(i0, Axis::y, j, Axis::z));
            req.push_back(Observable::pair(i0, Axis::z, j, Axis::y));
        }
    }
    const std::vector<double> v = state.expectations(req);
    const int stride = need_y ? 5 : 2;
    for (int r = 0; r < r_end; ++r) {
        const double* e = v.data() + stride * r;
        double zz = e[0];
        if (need_y) zz = 0.5 * (1.0 + d.C2) * e[0] + cyy * e[2] + 0.5 * d.S2 * (e[3] + e[4]);
        o.zz.push_back(zz);
        o.stag.push_back((r % 2 ? -1.0 : 1.0) * zz);
        o.xx.push_back(e[1]);
    }
    if (r_end > 1) {
        double zsum = 0.0, ssum = 0.0;
        for (int r = 1; r < r_end; ++r) {
            zsum += o.zz[r];
            ssum += o.stag[r];
        }
        o.zz_bulk = zsum / (r_end - 1);
        o.stag_bulk = ssum / (r_end - 1);
        o.stag_bulk_opposite = -o.stag_bulk;
    }
    return o;
}

namespace {

struct LineFit {
    double slope{0.0}, intercept{0.0}, rss{0.0}, r2{1.0};
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    LineFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double e = y[k] - (f.intercept + f.slope * x[k]);
        f.rss += e * e;
    }
    f.r2 = syy > 0 ? 1.0 - f.rss / syy : 1.0;
    return f;
}

}  // namespace

std::string scaling_regime(double alpha, double tol) {
    if (std::abs(alpha - 1.0) <= tol) return "normal";
    if (std::abs(alpha) <= tol) return "superradiant";
    return "sublinear";
}

ScalingFit scaling_fit(const std::vector<std::pair<int, double>>& points, double floor) {
    std::set<int> distinct;
    for (const auto& p : points) distinct.insert(p.first);
    if (distinct.size() < 4) throw std::invalid_argument("scaling_fit needs at least 4 distinct N");
    std::vector<double> lx, ly;
    for (const auto& [N, n] : points) {
        if (N < 1) throw std::invalid_argument("scaling_fit: N must be positive");
        if (n > floor) {
            lx.push_back(std::log(static_cast<double>(N)));
            ly.push_back(std::log(n));
        }
    }
    ScalingFit f;
    f.points = static_cast<int>(lx.size());
    if (lx.size() < 2) {
        f.degenerate = true;
        f.alpha = 1.0;
        f.regime = "normal";
        return f;
    }
    const LineFit lf = least_squares(lx, ly);
    f.alpha = -lf.slope;
    f.intercept = lf.intercept;
    f.rss = lf.rss;
    f.r2 = lf.r2;
    f.regime = scaling_regime(f.alpha);
    return f;
}

std::string to_string(DecayClass d) {
    switch (d) {
        case DecayClass::exponential: return "exponential";
        case DecayClass::power_law: return "power-law";
        case DecayClass::long_range: return "long-range";
    }
    return "exponential";
}

DecayFit correlation_decay_classify(const std::vector<double>& corr, int N,
                                    const DecayThresholds& th) {
    DecayFit f;
    const int r_max = static_cast<int>(corr.size()) - 1;
    if (r_max < 2) throw std::invalid_argument("correlation table needs r = 0, 1, 2 at least");
    f.low_confidence = N < 12 || r_max < 4;
    constexpr double tiny = std::numeric_limits<double>::min();
    std::vector<double> r, lr, lc;
    for (int k = 1; k <= r_max; ++k) {
        r.push_back(k);
        lr.push_back(std::log(static_cast<double>(k)));
        lc.push_back(std::log(std::max(std::abs(corr[k]), tiny)));
    }
    const LineFit ef = least_squares(r, lc);
    const LineFit pf = least_squares(lr, lc);
    f.exp_rate = -ef.slope;
    f.exp_rss = ef.rss;
    f.pow_exponent = -pf.slope;
    f.pow_rss = pf.rss;
    f.tail = std::abs(corr[r_max]);
    const double mid = std::abs(corr[std::max(1, (r_max + 1) / 2)]);
    f.ratio = mid > 0 ? f.tail / mid : 0.0;
    if (f.tail > th.plateau_floor && f.ratio >= th.plateau_ratio)
        f.kind = DecayClass::long_range;
    else
        f.kind = pf.rss < ef.rss ? DecayClass::power_law : DecayClass::exponential;
    return f;
}

PhaseLabel classify_phase(const ObservableSet& obs, std::optional<double> alpha,
                          const PhaseThresholds& th) {
    PhaseLabel p;
    if (obs.xx.size() >= 3) p.xx = correlation_decay_classify(obs.xx, obs.N, th.decay);
    const double d_fm = std::abs(obs.zz_bulk - 0.25);
    const double d_afm = std::abs(std::abs(obs.stag_bulk) - 0.25);
    const double d_sr = obs.n_mean - th.superradiant_n;  // > 0 inside the superradiant side
    p.distance["FM-NP"] = std::max(d_fm, d_sr > 0 ? d_sr : 0.0);
    p.distance["AFM-NP"] = std::max(d_afm, d_sr > 0 ? d_sr : 0.0);
    p.distance["PM-SP"] = std::max(d_sr < 0 ? -d_sr : 0.0,
                                   std::max(0.0, th.order_tol - std::min(d_fm, d_afm)));
    const bool sr = obs.n_mean > th.superradiant_n;
    const bool fm = d_fm < th.order_tol;
    const bool afm = d_afm < th.order_tol;
    if (alpha) {
        const double a = *alpha;
        p.distance["XY-SP-coexistence"] =
            std::max(0.0, std::max(th.sublinear_lo - a, a - th.sublinear_hi));
        if (a > th.sublinear_lo && a < th.sublinear_hi && p.xx.kind == DecayClass::power_law) {
            p.label = "XY-SP-coexistence";
            return p;
        }
    }
    if (!sr && fm)
        p.label = "FM-NP";
    else if (!sr && afm)
        p.label = "AFM-NP";
    else if (sr && !fm && !afm)
        p.label = "PM-SP";
    else
        p.label = "boundary";
    return p;
}

}  // namespace dicke
