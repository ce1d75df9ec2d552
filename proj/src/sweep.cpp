#include "scpair/sweep.hpp"

#include <cmath>
#include <string>

#include "scpair/errors.hpp"

namespace scpair {

std::string_view to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::delta: return "delta";
    case SweepParameter::ec: return "ec";
    case SweepParameter::w: return "w";
    case SweepParameter::r: return "r";
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view name)
{
    if (name == "delta")
        return SweepParameter::delta;
    if (name == "ec")
        return SweepParameter::ec;
    if (name == "w")
        return SweepParameter::w;
    if (name == "r")
        return SweepParameter::r;
    throw ParameterError("unknown sweep parameter '" + std::string(name) + "' (delta, ec, w, r)");
}

std::vector<double> make_grid(double lo, double hi, int count, bool log_spacing)
{
    if (count < 1)
        throw ParameterError("empty grid");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw ParameterError("grid bounds must be finite");
    if (count == 1) {
        if (lo != hi)
            throw ParameterError("a one-point grid needs min == max");
        return {lo};
    }
    if (!(lo < hi))
        throw ParameterError("grid must be strictly increasing (min < max)");
    if (log_spacing && !(lo > 0.0))
        throw ParameterError("log grid needs a positive lower bound");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = double(i) / double(count - 1);
        g[i] = log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    for (int i = 1; i < count; ++i)
        if (!(g[i] > g[i - 1]))
            throw ParameterError("grid collapses: too many points for the range");
    return g;
}

SweepPoint sweep_point(const SweepSpec& spec, double value)
{
    SweepPoint pt{spec.base, spec.r};
    switch (spec.parameter) {
    case SweepParameter::delta:
        pt.params.delta = std::polar(value, std::arg(spec.base.delta));
        break;
    case SweepParameter::ec: pt.params.ec = value; break;
    case SweepParameter::w: pt.params.w = value; break;
    case SweepParameter::r: pt.r = value; break;
    }
    return pt;
}

} // namespace scpair
