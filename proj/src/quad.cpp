#include "scpair/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "scpair/errors.hpp"

namespace scpair::quad {
namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point nodes (positive half) and weights; Gauss 7 weights on odd nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double err;
    int depth;
};

Panel gk15(const Integrand& f, double a, double b, int depth, long& evals)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx rk = fc * wgk[7];
    cplx rg = fc * wg[3];
    double resabs = std::abs(fc) * wgk[7];
    std::array<cplx, 15> fv{};
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const cplx f1 = f(c - dx), f2 = f(c + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        rk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            rg += wg[j / 2] * (f1 + f2);
    }
    evals += 15;
    const cplx mean = rk * 0.5;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    const double habs = std::abs(h);
    resabs *= habs;
    resasc *= habs;
    double err = std::abs((rk - rg) * h);
    // QUADPACK error heuristic: sharper than |K - G| when the rule has converged.
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {a, b, rk * h, err, depth};
}

double tolerance(const QuadSpec& spec, cplx value)
{
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

void check_spec(const QuadSpec& spec)
{
    if (!(spec.rel_tol >= 1e-12) && !(spec.rel_tol == 0.0 && spec.abs_tol > 0.0))
        throw ParameterError("rel_tol must be >= 1e-12");
    if (spec.abs_tol < 0.0 || spec.max_depth < 1)
        throw ParameterError("invalid quadrature spec");
}

} // namespace

QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadSpec& spec, std::span<const double> breaks)
{
    check_spec(spec);
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw ParameterError("integrate_1d requires finite a < b");

    std::vector<double> cuts{a};
    for (double x : breaks)
        if (x > a && x < b)
            cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    if (spec.oscillation_hint && *spec.oscillation_hint > 0.0) {
        // Split so that no initial panel holds more than one period.
        const double period = 2.0 * std::numbers::pi / *spec.oscillation_hint;
        std::vector<double> fine{cuts.front()};
        for (std::size_t i = 1; i < cuts.size(); ++i) {
            const double lo = cuts[i - 1], hi = cuts[i];
            const long n = std::clamp<long>(static_cast<long>(std::ceil((hi - lo) / period)), 1, 100000);
            for (long k = 1; k < n; ++k)
                fine.push_back(lo + (hi - lo) * double(k) / double(n));
            fine.push_back(hi);
        }
        cuts.swap(fine);
    }

    QuadResult res;
    std::vector<Panel> panels;
    panels.reserve(cuts.size() * 4);
    for (std::size_t i = 1; i < cuts.size(); ++i)
        panels.push_back(gk15(f, cuts[i - 1], cuts[i], 0, res.evaluations));

    // Max-heap of splittable panels by error; ties broken by creation index so
    // the refinement sequence is fully determined by the integrand.
    auto worse = [&panels](std::size_t i, std::size_t j) {
        return panels[i].err < panels[j].err || (panels[i].err == panels[j].err && i > j);
    };
    std::vector<std::size_t> heap;
    cplx value = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        value += panels[i].value;
        err += panels[i].err;
        heap.push_back(i);
    }
    std::make_heap(heap.begin(), heap.end(), worse);

    const std::size_t max_panels = panels.size() + 4000;
    while (err > tolerance(spec, value) && !heap.empty() && panels.size() < max_panels) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        const std::size_t k = heap.back();
        heap.pop_back();
        const Panel p = panels[k];
        const double mid = 0.5 * (p.a + p.b);
        if (p.depth >= spec.max_depth || !(mid > p.a && mid < p.b))
            continue; // frozen; its error stays in the total
        panels[k] = gk15(f, p.a, mid, p.depth + 1, res.evaluations);
        panels.push_back(gk15(f, mid, p.b, p.depth + 1, res.evaluations));
        value += panels[k].value + panels.back().value - p.value;
        err += panels[k].err + panels.back().err - p.err;
        for (std::size_t idx : {k, panels.size() - 1}) {
            heap.push_back(idx);
            std::push_heap(heap.begin(), heap.end(), worse);
        }
    }
    // Final totals in left-to-right order, independent of refinement history.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    value = 0.0;
    err = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        err += p.err;
    }
    res.value = value;
    res.err_est = err;
    res.converged = std::isfinite(err) && err <= tolerance(spec, value);
    return res;
}

QuadResult integrate_semi_infinite(const Integrand& f, double a, const QuadSpec& spec)
{
    auto g = [&f, a](double t) -> cplx {
        if (t >= 1.0)
            return 0.0;
        const double s = 1.0 - t;
        return f(a + t / s) / (s * s);
    };
    return integrate_1d(g, 0.0, 1.0, spec);
}

QuadResult integrate_real_line(const Integrand& f, const QuadSpec& spec, double center)
{
    const QuadResult right = integrate_semi_infinite(f, center, spec);
    const QuadResult left = integrate_semi_infinite([&f, center](double x) { return f(2.0 * center - x); }, center, spec);
    QuadResult out;
    out.value = left.value + right.value;
    out.err_est = left.err_est + right.err_est;
    out.evaluations = left.evaluations + right.evaluations;
    out.converged = left.converged && right.converged;
    return out;
}

namespace {

QuadResult nested_level(const NestedIntegrand& f, std::span<const DomainFn> domains, const QuadSpec& spec,
                        std::vector<double>& x, std::size_t level)
{
    QuadSpec local = spec;
    // Each inner level is one order tighter.  Every level that has inner
    // levels keeps half of its budget for their propagated error.
    double tighten = std::pow(10.0, -double(level));
    if (level + 1 < domains.size())
        tighten *= 0.5;
    local.rel_tol = std::max(1e-12, spec.rel_tol * tighten);
    local.abs_tol = spec.abs_tol * tighten;
    if (level > 0)
        local.oscillation_hint.reset();

    const Domain dom = domains[level](std::span<const double>(x.data(), level));
    if (!(dom.lo < dom.hi))
        return {};

    long inner_evals = 0;
    double inner_err = 0.0;
    int failed = -1;
    auto integrand = [&](double t) -> cplx {
        x[level] = t;
        if (level + 1 == domains.size())
            return f(std::span<const double>(x.data(), domains.size()));
        const QuadResult inner = nested_level(f, domains, spec, x, level + 1);
        inner_evals += inner.evaluations;
        inner_err = std::max(inner_err, inner.err_est / std::max(1e-300, std::abs(inner.value)));
        if (!inner.converged && failed < 0)
            failed = inner.failed_dimension >= 0 ? inner.failed_dimension : static_cast<int>(level) + 1;
        return inner.value;
    };
    QuadResult res = integrate_1d(integrand, dom.lo, dom.hi, local, dom.breaks);
    // Inner relative errors propagate linearly into the outer integral.
    res.err_est += inner_err * std::abs(res.value);
    res.evaluations += inner_evals;
    if (failed >= 0) {
        res.converged = false;
        res.failed_dimension = failed;
    } else if (!res.converged) {
        res.failed_dimension = static_cast<int>(level);
    }
    return res;
}

} // namespace

QuadResult integrate_nested(const NestedIntegrand& f, std::span<const DomainFn> domains, const QuadSpec& spec)
{
    if (domains.empty() || domains.size() > max_nested_dimension)
        throw ParameterError("integrate_nested supports 1 to 5 dimensions");
    check_spec(spec);
    std::vector<double> x(domains.size(), 0.0);
    QuadResult res = nested_level(f, domains, spec, x, 0);
    if (res.converged && res.err_est > tolerance(spec, res.value)) {
        // The propagated inner error alone can exceed the outer tolerance.
        res.converged = false;
        res.failed_dimension = 0;
    }
    return res;
}

} // namespace scpair::quad
