#include <algorithm>
#include <cmath>
#include <string>

#include "hecke/eisenstein.hpp"
#include "hecke/epstein.hpp"
#include "hecke/errors.hpp"
#include "hecke/harness.hpp"
#include "hecke/lfunctions.hpp"
#include "hecke/quadforms.hpp"

namespace hecke {
namespace {

constexpr double kBottom = 0.8660254037844386;  // sqrt(3) / 2

ScanRecord make_record(ScanKind kind, std::vector<std::pair<std::string, double>> inputs, double value) {
    ScanRecord r{kind, std::move(inputs), value, 0.0};
    r.ratio = value / envelope(r);
    return r;
}

std::vector<double> geometric_grid(double lo, double hi, int steps) {
    std::vector<double> out;
    for (int k = 0; k < steps; ++k) {
        out.push_back(k == steps - 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(k) / (steps - 1)));
    }
    return out;
}

struct RowMax {
    double value = -1.0;
    double x = 0.0;
    double y = 0.0;
    std::int64_t points = 0;
};

RowMax scan_row(double t, double y, double step, double tol) {
    const EisensteinRow row = eisenstein_row(y, Complex(0.5, t), tol);
    const double x_min = y < 1.0 ? std::sqrt(1.0 - y * y) : 0.0;
    const double sqrt_y = std::sqrt(y);
    RowMax best;
    const auto n = static_cast<std::int64_t>(std::ceil((0.5 - x_min) / step));
    for (std::int64_t k = 0; k <= n; ++k) {
        const double x = k == n ? 0.5 : x_min + static_cast<double>(k) * step;
        const double v = std::abs(row.at(x)) / sqrt_y;
        ++best.points;
        if (v > best.value) {
            best.value = v;
            best.x = x;
            best.y = y;
        }
    }
    return best;
}

// Arc-length integral of y(reduced z)^delta over one automorph period. The
// integrand has kinks where the reducing matrix changes, so the trapezoid
// rule is only second order here; doubling stops at 1e-7 relative change.
double geodesic_height_integral(const GeodesicCycle& cyc, double delta) {
    auto f = [&](double u) {
        const HalfPlanePoint z{cyc.center + cyc.radius * std::tanh(u), cyc.radius / std::cosh(u), false};
        return std::pow(reduce_to_fundamental(z).first.y, delta);
    };
    const double L = cyc.period_length;
    int n = 64;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        sum += f(L * j / n);
    }
    double estimate = sum * L / n;
    while (n < (1 << 20)) {
        for (int j = 0; j < n; ++j) {
            sum += f(L * (2 * j + 1) / (2.0 * n));
        }
        n *= 2;
        const double refined = sum * L / n;
        if (std::abs(refined - estimate) <= 1e-7 * refined) {
            return refined;
        }
        estimate = refined;
    }
    return estimate;
}

}  // namespace

std::vector<ScanRecord> scan_supnorm(const SupnormOptions& opt) {
    if (!(opt.t_min >= 1.0 && opt.t_min < opt.t_max && opt.t_max <= 500.0)) {
        throw RangeError("scan_supnorm: need 1 <= t_min < t_max <= 500");
    }
    if (opt.t_steps < 2 || !(opt.y_max >= 1.0) || !(opt.grid_density > 0.0)) {
        throw RangeError("scan_supnorm: need t_steps >= 2, y_max >= 1, grid_density > 0");
    }
    const std::vector<double> ts = geometric_grid(opt.t_min, opt.t_max, opt.t_steps);
    struct Row {
        std::size_t t_index;
        double y;
        double step;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double h0 = std::min(0.02, 1.0 / (4.0 * ts[i])) / opt.grid_density;
        for (double y = kBottom;; y += h0 * std::max(1.0, y)) {
            const double yy = std::min(y, opt.y_max);
            rows.push_back({i, yy, h0 * std::max(1.0, yy)});
            if (yy >= opt.y_max) {
                break;
            }
        }
    }
    const std::vector<RowMax> maxima = parallel_map<RowMax>(
        rows.size(), resolve_workers(opt.workers),
        [&](std::size_t k) { return scan_row(ts[rows[k].t_index], rows[k].y, rows[k].step, opt.tol); });
    std::vector<RowMax> per_t(ts.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        RowMax& m = per_t[rows[k].t_index];
        m.points += maxima[k].points;
        if (maxima[k].value > m.value) {
            m.value = maxima[k].value;
            m.x = maxima[k].x;
            m.y = maxima[k].y;
        }
    }
    std::vector<ScanRecord> out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out.push_back(make_record(ScanKind::supnorm,
                                  {{"t", ts[i]},
                                   {"x", per_t[i].x},
                                   {"y", per_t[i].y},
                                   {"grid_points", static_cast<double>(per_t[i].points)}},
                                  per_t[i].value));
    }
    return out;
}

std::vector<ScanRecord> scan_lemma21(std::int64_t d_min, std::int64_t d_max, double delta, int workers) {
    const bool imaginary = -1'000'000 <= d_min && d_min < d_max && d_max <= -3;
    const bool real = 2 <= d_min && d_min < d_max && d_max <= 1'000'000;
    if (!imaginary && !real) {
        throw RangeError("scan_lemma21: need -1e6 <= d_min < d_max <= -3 or 2 <= d_min < d_max <= 1e6");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw RangeError("scan_lemma21: delta must be positive");
    }
    std::vector<std::int64_t> discs;
    for (std::int64_t d = d_min; d <= d_max; ++d) {
        if (is_fundamental_discriminant(d)) {
            discs.push_back(d);
        }
    }
    return parallel_map<ScanRecord>(discs.size(), resolve_workers(workers), [&](std::size_t k) {
        const std::int64_t d = discs[k];
        const Discriminant D = Discriminant::make(d);
        double sum = 0.0;
        std::size_t h = 0;
        if (d < 0) {
            const auto forms = enumerate_reduced(D);
            h = forms.size();
            const double root = std::sqrt(static_cast<double>(-d));
            for (const QuadraticForm& f : forms) {
                sum += std::pow(root / (2.0 * static_cast<double>(f.a)), delta);
            }
        } else {
            const auto data = class_group_shared(D);
            h = data->reduced_forms.size();
            for (const QuadraticForm& f : data->reduced_forms) {
                const GeodesicCycle cyc = geodesic_cycle(f);
                sum += cyc.period_weight * geodesic_height_integral(cyc, delta);
            }
        }
        return make_record(ScanKind::lemma21,
                           {{"D", static_cast<double>(d)}, {"delta", delta}, {"h", static_cast<double>(h)}}, sum);
    });
}

std::vector<ScanRecord> scan_subconvexity(const std::vector<std::int64_t>& d_list, const std::vector<double>& t_list,
                                          double tol, int workers) {
    for (double t : t_list) {
        if (!(std::abs(t) >= 0.5) || !(std::abs(t) <= 500.0)) {
            throw RangeError("scan_subconvexity: need 0.5 <= |t| <= 500");
        }
    }
    std::vector<Discriminant> discs;
    for (std::int64_t d : d_list) {
        discs.push_back(Discriminant::fundamental_only(d));
    }
    struct Item {
        std::size_t d;
        std::size_t t;
        int chi;  // -1 for the second moment
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        const int h = static_cast<int>(class_group_shared(discs[i])->h);
        for (std::size_t j = 0; j < t_list.size(); ++j) {
            for (int chi = 0; chi < h; ++chi) {
                items.push_back({i, j, chi});
            }
        }
    }
    for (std::size_t i = 0; i < discs.size(); ++i) {
        for (std::size_t j = 0; j < t_list.size(); ++j) {
            if (discs[i].D < 0) {
                items.push_back({i, j, -1});
            }
        }
    }
    return parallel_map<ScanRecord>(items.size(), resolve_workers(workers), [&](std::size_t k) {
        const Item& it = items[k];
        const Discriminant& D = discs[it.d];
        const double t = t_list[it.t];
        const double d = static_cast<double>(D.D);
        if (it.chi >= 0) {
            const Complex v = lk_hecke(D, it.chi, Complex(0.5, t), tol).value;
            return make_record(ScanKind::subconvexity, {{"D", d}, {"chi", static_cast<double>(it.chi)}, {"t", t}},
                               std::abs(v));
        }
        const SecondMoment m = second_moment(D, t, tol);
        const double gap = std::abs(m.direct_route - m.orthogonality_route) / m.direct_route;
        return make_record(ScanKind::second_moment, {{"D", d}, {"t", t}, {"identity_gap", gap}}, m.direct_route);
    });
}

std::vector<ScanRecord> scan_expsum(const std::vector<double>& a_list, const std::vector<double>& b_list,
                                    const std::vector<double>& t_list, int workers) {
    struct Box {
        double a, b, t, X1, X2;
    };
    std::vector<Box> boxes;
    std::int64_t total = 0;
    for (double a : a_list) {
        for (double b : b_list) {
            GramMatrix::make(a, b);  // validates the shape
            for (double t : t_list) {
                if (!(t > 0.0) || !std::isfinite(t)) {
                    throw RangeError("scan_expsum: t must be positive");
                }
                for (double X1 = std::cbrt(t); a * X1 * X1 <= 4.0 * std::sqrt(a) * t; X1 *= 2.0) {
                    const double X2 = std::sqrt(a) * X1;
                    boxes.push_back({a, b, t, X1, X2});
                    total += box_point_count(X1, 2.0 * X1, X2, 2.0 * X2);
                }
            }
        }
    }
    if (total > kMaxExpSumPoints) {
        throw ResourceError("scan_expsum: " + std::to_string(total) + " lattice points exceed the budget");
    }
    return parallel_map<ScanRecord>(boxes.size(), resolve_workers(workers), [&](std::size_t k) {
        const Box& bx = boxes[k];
        const GramMatrix z = GramMatrix::make(bx.a, bx.b);
        const Complex s = exp_sum(z, bx.t, bx.X1, 2.0 * bx.X1, bx.X2, 2.0 * bx.X2, +1);
        const double points = static_cast<double>(box_point_count(bx.X1, 2.0 * bx.X1, bx.X2, 2.0 * bx.X2));
        return make_record(ScanKind::expsum,
                           {{"a", bx.a},
                            {"b", bx.b},
                            {"t", bx.t},
                            {"X1", bx.X1},
                            {"X2", bx.X2},
                            {"Qplus", bx.a * bx.X1 * bx.X1 + bx.X2 * bx.X2},
                            {"points", points}},
                           std::abs(s));
    });
}

PeakHeight find_peak_height(double t, double y_min) {
    if (!(t >= 10.0) || !(t <= 500.0) || !(y_min >= 5.0) || !std::isfinite(y_min)) {
        throw RangeError("find_peak_height: need 10 <= t <= 500 and y_min >= 5");
    }
    const Complex s(0.5, t);
    const Complex phi = scattering_phi(s);
    const double theta = std::arg(phi);
    double k = std::floor((theta - 2.0 * t * std::log(y_min)) / (2.0 * kPi));
    double y = std::exp((theta - 2.0 * kPi * k) / (2.0 * t));
    if (y < y_min) {
        y = std::exp((theta - 2.0 * kPi * (k - 1.0)) / (2.0 * t));
    }
    PeakHeight out;
    out.y = y;
    const Complex y_pow = std::exp(Complex(0.0, -2.0 * t * std::log(y)));
    out.phase_residual = std::abs(1.0 + phi * y_pow - 2.0);
    // The leading Fourier terms are kept even when they fall below double
    // precision relative to E, so that the remainder is measured, not assumed.
    const EisensteinRow row = eisenstein_row(y, s, 1e-14, 3);
    const Complex e = row.at(0.0);
    out.E_ratio = std::abs(e) / (2.0 * std::sqrt(y));
    out.main_term_residual = std::abs(row.fourier_part(0.0)) / 2.0;
    return out;
}

}  // namespace hecke
