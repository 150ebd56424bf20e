#include "swimmer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace swimmer {

namespace {

void require_same_grid(const ElongationField& u, const ElongationField& v)
{
    if (!(u.grid == v.grid) || u.values.size() != v.values.size()) {
        throw std::invalid_argument("fields live on different grids");
    }
}

}  // namespace

double l2_inner(const ElongationField& u, const ElongationField& v)
{
    require_same_grid(u, v);
    const double h = u.grid.h();
    const auto& a = u.values;
    const auto& b = v.values;
    double sum = 0.0;
    // exact integral of a product of two linear functions on [y_j, y_{j+1}]
    for (std::size_t j = 0; j + 1 < a.size(); ++j) {
        sum += 2.0 * a[j] * b[j] + a[j] * b[j + 1] + a[j + 1] * b[j] + 2.0 * a[j + 1] * b[j + 1];
    }
    return sum * h / 6.0;
}

double l2_norm(const ElongationField& f)
{
    return std::sqrt(std::max(0.0, l2_inner(f, f)));
}

double h1_inner(const ElongationField& u, const ElongationField& v)
{
    require_same_grid(u, v);
    const double h = u.grid.h();
    const auto& a = u.values;
    const auto& b = v.values;
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < a.size(); ++j) {
        sum += (a[j + 1] - a[j]) * (b[j + 1] - b[j]);
    }
    return sum / h;
}

double h1_seminorm(const ElongationField& f)
{
    return std::sqrt(h1_inner(f, f));
}

DiscreteInnerProducts discrete_inner_products(const ElongationField& u, const ElongationField& v)
{
    require_same_grid(u, v);
    const double h = u.grid.h();
    const std::size_t n = static_cast<std::size_t>(u.grid.n);
    double tail = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        tail += u.values[j] * v.values[j];
    }
    const double head = u.values[0] * v.values[0];

    DiscreteInnerProducts out;
    out.paren_h = h * (head + tail);
    out.angle_h = h * (0.5 * head + tail);
    out.delta_h = out.paren_h - l2_inner(u, v);
    return out;
}

ElongationField interpolate(const ContinuousModeShape& mode, const UniformGrid& grid, double t)
{
    std::vector<double> v(static_cast<std::size_t>(grid.n) + 1);
    for (int j = 1; j <= grid.n; ++j) {
        v[static_cast<std::size_t>(j - 1)] = eval_continuous(mode, grid.node(j), t);
    }
    // the analytic Dirichlet end is zero up to roundoff; the interpolant enforces it
    v.back() = 0.0;
    return ElongationField(grid, std::move(v));
}

ErrorRecord error_vs_analytic(const ElongationField& numeric, const ContinuousModeShape& mode, double t)
{
    const ElongationField exact = interpolate(mode, numeric.grid, t);
    std::vector<double> diff(numeric.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = numeric.values[i] - exact.values[i];
    }
    const ElongationField e(numeric.grid, std::move(diff));
    return {numeric.grid.n, numeric.grid.h(), l2_norm(e), h1_seminorm(e)};
}

RateEstimate fit_rate(std::span<const ErrorRecord> records, ErrorNorm which)
{
    if (records.size() < 3) {
        throw std::invalid_argument("rate fit needs at least three records");
    }
    std::set<int> distinct;
    for (const auto& r : records) {
        distinct.insert(r.n);
    }
    if (distinct.size() != records.size()) {
        throw std::invalid_argument("rate fit needs distinct N values");
    }

    std::vector<double> xs;
    std::vector<double> ys;
    bool all_zero = true;
    for (const auto& r : records) {
        const double e = which == ErrorNorm::L2 ? r.l2_error : r.h1_error;
        if (!std::isfinite(e) || e < 0.0) {
            throw std::invalid_argument("errors must be finite and non-negative");
        }
        if (e > 0.0) {
            all_zero = false;
        }
        const double h = r.h > 0.0 ? r.h : 1.0 / r.n;
        xs.push_back(std::log(h));
        ys.push_back(std::log(e));
    }
    if (all_zero) {
        throw DegenerateFitError("all errors are zero; no convergence rate can be fitted");
    }
    for (double y : ys) {
        if (!std::isfinite(y)) {
            throw DegenerateFitError("an error is exactly zero; log-log fit undefined");
        }
    }

    const double m = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    RateEstimate out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    out.points = static_cast<int>(xs.size());
    return out;
}

RateReport fit_rate_report(std::span<const ErrorRecord> records, ErrorNorm which)
{
    RateReport report;
    report.full = fit_rate(records, which);
    if (report.full.r_squared < 0.99 && records.size() >= 4) {
        std::vector<ErrorRecord> sorted(records.begin(), records.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](const ErrorRecord& a, const ErrorRecord& b) { return a.n < b.n; });
        sorted.erase(sorted.begin());
        report.without_coarsest = fit_rate(sorted, which);
    }
    return report;
}

NormEquivalence norm_equivalence_check(const ElongationField& v)
{
    const auto ip = discrete_inner_products(v, v);
    const double l2 = l2_inner(v, v);
    const double lumped = ip.paren_h;
    const double head = v.grid.h() * v.values[0] * v.values[0];
    // roundoff slack only; the inequalities themselves are not relaxed
    const double slack = 1e-13 * std::max({lumped, l2, head});

    NormEquivalence out;
    out.lhs_ok = lumped / 6.0 <= l2 + slack && l2 <= lumped + slack;
    out.rhs_ok = head <= lumped + slack && lumped <= 6.0 * l2 + slack;
    return out;
}

}  // namespace swimmer
