#pragma once

#include "scpair/model.hpp"

namespace scpair {

// Validity flags for the asymptotic regime; cutoffs are in units.hpp.
struct RegimeFlags {
    bool far_field = true;    // k_F r >= 50
    bool fraunhofer = true;   // r / (k_F w^2) >= 10
    bool filter = true;       // mu / E_C >= 20
    bool lambda_valid = true; // w >= lambda_F, where Lambda = 1 is used

    bool all() const { return far_field && fraunhofer && filter && lambda_valid; }
};

// r in units of lambda_F (the smaller detector distance).
inline RegimeFlags regime_flags(double r, const EmitterParams& p)
{
    RegimeFlags f;
    const double rk = units::to_kf(r), w = p.width();
    f.far_field = units::k_fermi * rk >= units::far_field_min;
    f.fraunhofer = rk / (units::k_fermi * w * w) >= units::fraunhofer_min;
    f.filter = units::mu / p.ec >= units::filter_min;
    f.lambda_valid = p.w >= 1.0;
    return f;
}

} // namespace scpair
