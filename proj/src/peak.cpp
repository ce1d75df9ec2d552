#include "scpair/peak.hpp"

#include <cmath>

#include "scpair/errors.hpp"
#include "scpair/parallel.hpp"
#include "scpair/specfun.hpp"

namespace scpair {
namespace {

using cplx = std::complex<double>;
constexpr double pi = units::pi;
constexpr cplx I{0.0, 1.0};

struct PeakTerms {
    double prefactor; // pi^2 / (32 K1^2(|Delta|/E_C))
    double k1_err;
    cplx z;           // Hankel argument
    cplx second;      // 4 Lambda e^{i r/(2 pi^2 k_F xi^2)} / (pi sqrt(i r/(k_F w^2)))
};

PeakTerms peak_terms(const EmitterParams& params, double r)
{
    const DerivedParams d = derive_params(params);
    const double rk = units::to_kf(r), w = params.width(), xi = d.xi_kf;
    const double xi2 = xi * xi;
    const specfun::SpecfunResult k1 = specfun::bessel_k1_result(d.delta_over_ec);
    const double lambda = 1.0;
    PeakTerms t{};
    t.prefactor = pi * pi / (32.0 * std::norm(k1.value));
    t.k1_err = k1.est_error;
    t.z = cplx(-rk / (2.0 * pi * pi * units::k_fermi * xi2), w * w / (pi * pi * xi2));
    t.second = 4.0 * lambda * std::exp(I * (rk / (2.0 * pi * pi * units::k_fermi * xi2)))
             / (pi * specfun::principal_sqrt(I * (rk / (units::k_fermi * w * w))));
    return t;
}

void check_distance(double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw ParameterError("detector distance must be positive");
}

} // namespace

PeakResult delta_q_peak(const EmitterParams& params, double r)
{
    validate(params);
    check_distance(r);
    PeakResult out;
    out.regime = regime_flags(r, params);
    if (params.gap() == 0.0)
        return out; // no pair correlation
    const PeakTerms t = peak_terms(params, r);
    const specfun::SpecfunResult h = specfun::hankel2_0(t.z);
    const cplx amp = h.value - t.second;
    out.delta_q = t.prefactor * std::norm(amp);
    out.hankel_arg = t.z;
    out.est_error = 2.0 * (h.est_error * std::abs(h.value) / std::max(std::abs(amp), 1e-300) + t.k1_err);
    out.classification = classify(out.delta_q / (1.0 + out.delta_q));
    return out;
}

PeakEnvelope peak_envelope(const EmitterParams& params, double r)
{
    validate(params);
    check_distance(r);
    if (params.gap() == 0.0)
        return {};
    const PeakTerms t = peak_terms(params, r);
    // H0^(2)(z) = H0^(1)(zeta) + 2 H0^(2)(zeta), zeta = -z (z in the upper half plane)
    const specfun::Cylinder c = specfun::cylinder(0, -t.z);
    const double a = std::abs(c.h1.value - t.second);
    const double b = std::abs(2.0 * c.h2.value);
    return {t.prefactor * (a + b) * (a + b), t.prefactor * (a - b) * (a - b)};
}

double angular_profile(double theta, const EmitterParams& params)
{
    validate(params);
    if (!(theta >= 0.0 && theta < 2.0 * pi))
        throw ParameterError("theta must lie in [0, 2 pi)");
    const double kw = units::k_fermi * params.width();
    const double s = std::sin((pi - theta) / 4.0);
    return std::exp(-8.0 * kw * kw * s * s);
}

SweepRow peak_row(const SweepSpec& spec, double value)
{
    const SweepPoint pt = sweep_point(spec, value);
    const PeakResult pk = delta_q_peak(pt.params, pt.r);
    SweepRow row;
    row.parameter = value;
    row.delta_q = pk.delta_q;
    row.q = 1.0 + pk.delta_q;
    row.err_est = pk.delta_q * pk.est_error;
    row.regime = pk.regime;
    row.classification = pk.classification;
    return row;
}

std::vector<ThresholdCrossing> locate_crossings(const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    std::vector<ThresholdCrossing> out;
    const struct {
        double dq;
        const char* kind;
    } levels[] = {{entanglement_delta_q, "entanglement"}, {bell_delta_q, "bell"}};
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (const auto& lv : levels) {
            const double f0 = rows[i - 1].delta_q - lv.dq, f1 = rows[i].delta_q - lv.dq;
            if ((f0 < 0.0) == (f1 < 0.0))
                continue;
            double lo = rows[i - 1].parameter, hi = rows[i].parameter, flo = f0;
            while (std::abs(hi - lo) > 1e-7 * std::max(std::abs(lo), std::abs(hi))) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi)
                    break;
                const double fm = delta_q_peak(sweep_point(spec, mid).params, sweep_point(spec, mid).r).delta_q - lv.dq;
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            ThresholdCrossing c;
            c.parameter = 0.5 * (lo + hi);
            c.q_threshold = 1.0 + lv.dq;
            c.kind = lv.kind;
            c.rising = f1 > f0;
            out.push_back(c);
        }
    }
    return out;
}

SweepResult threshold_map(const SweepSpec& spec, int threads)
{
    if (spec.grid.empty())
        throw ParameterError("empty sweep grid");
    SweepResult res;
    res.parameter = spec.parameter;
    res.rows = parallel_map(spec.grid.size(), threads, [&spec](std::size_t i) { return peak_row(spec, spec.grid[i]); });
    res.crossings = locate_crossings(spec, res.rows);
    return res;
}

} // namespace scpair
