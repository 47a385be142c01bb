#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cqdyn/circuit.hpp"
#include "cqdyn/dynamics.hpp"
#include "cqdyn/entanglement.hpp"

namespace cqdyn {

// Uniform grid on the dimensionless time axis.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 20.0;
    int n_points = 4001;

    void validate() const {
        if (t_start < 0.0) throw ValidationError("TimeGrid: t_start must be >= 0");
        if (!(t_end > t_start)) throw ValidationError("TimeGrid: t_end must exceed t_start");
        if (n_points < 2) throw ValidationError("TimeGrid: n_points must be >= 2");
    }

    // Endpoint-exact interpolation.
    double time(int i) const {
        if (i <= 0) return t_start;
        if (i >= n_points - 1) return t_end;
        const double n = static_cast<double>(n_points - 1);
        return (static_cast<double>(n_points - 1 - i) * t_start + static_cast<double>(i) * t_end) / n;
    }
};

struct SeriesRecord {
    double t;
    std::array<double, 4> populations;
    double zeta;
    double concurrence;
    double purity;
    double mems_deviation;
};

// A simulated trajectory. Keeps the evolution plan it was produced from so
// detectors can re-evaluate the exact state between grid points instead of
// interpolating.
struct TimeSeries {
    TimeGrid grid;
    std::vector<SeriesRecord> records;
    EvolutionPlan plan;
};

inline SeriesRecord evaluate_state(const EvolutionPlan& plan, double t) {
    const DensityMatrix rho = evolve_closed_form(plan, t);
    const EntanglementRecord ent = measure_entanglement(rho);
    return SeriesRecord{t, populations(rho), ent.zeta, ent.concurrence, ent.purity,
                        ent.mems_deviation};
}

// Scale energies by 1/time_scale so the closed form runs directly in the
// dimensionless time of the grid.
inline EvolutionPlan make_plan(const CircuitParams& p, const DensityMatrix& rho0) {
    p.validate();
    const Hermitian4 h = build_hamiltonian(p);
    const Hermitian4 h_scaled((1.0 / p.time_scale) * h.matrix());
    return EvolutionPlan::create(h_scaled, rho0, p.gamma);
}

inline TimeSeries simulate_series(const CircuitParams& p, const DensityMatrix& rho0,
                                  const TimeGrid& grid) {
    grid.validate();
    EvolutionPlan plan = make_plan(p, rho0);
    std::vector<SeriesRecord> records;
    records.reserve(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) records.push_back(evaluate_state(plan, grid.time(i)));
    return TimeSeries{grid, std::move(records), std::move(plan)};
}

// Times at which the coupled system is predicted to pass through the
// equal-halves entangled form:
//   t_n = n * pi / (sqrt((EJ1+EJ2)^2 + Em^2/4) - sqrt((EJ1-EJ2)^2 + Em^2/4))
// on the dimensionless time axis. Linearity in n is exact by construction.
inline std::vector<double> predict_mems_times(const CircuitParams& p, int n_max) {
    p.validate();
    if (n_max < 1) throw ValidationError("predict_mems_times: n_max must be >= 1");
    if (p.ej1 * p.ej2 == 0.0)
        throw DegenerateDenominatorError("predict_mems_times: needs ej1 > 0 and ej2 > 0");
    const double sum = p.ej1 + p.ej2;
    const double diff = p.ej1 - p.ej2;
    const double quarter = 0.25 * p.em * p.em;
    const double denom = std::sqrt(sum * sum + quarter) - std::sqrt(diff * diff + quarter);
    const double t1 = std::numbers::pi * p.time_scale / denom;
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) times.push_back(static_cast<double>(n) * t1);
    return times;
}

namespace detail {

// Golden-section minimum of f on [a, b]; deterministic iteration count.
inline double golden_minimize(const std::function<double(double)>& f, double a, double b) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 120 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Root of g on [a, b] given g(a) and g(b) of opposite sign.
inline double bisect(const std::function<double(double)>& g, double a, double b, double ga) {
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if ((gm < 0.0) == (ga < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

struct MemsEvent {
    double t;
    double zeta;
    double deviation;
};

// Scan the series for local minima of the template deviation, refine each
// candidate by golden-section search on the exact closed-form state, and
// keep those that sit within dev_tol of the equal-halves form with a corner
// coherence of at least zeta_min.
inline std::vector<MemsEvent> detect_mems_events(const TimeSeries& series,
                                                 double dev_tol = tol().mems_dev_tol,
                                                 double zeta_min = tol().mems_zeta_min) {
    if (!(dev_tol > 0.0)) throw ValidationError("detect_mems_events: dev_tol must be > 0");
    if (zeta_min < 0.0) throw ValidationError("detect_mems_events: zeta_min must be >= 0");

    const auto deviation_at = [&series](double t) {
        return mems_measure(evolve_closed_form(series.plan, t)).deviation;
    };

    std::vector<MemsEvent> events;
    const auto& rec = series.records;

    // Refinement can only improve a bracketed minimum by roughly the local
    // slope times the grid spacing; minima sitting far above dev_tol on that
    // scale cannot become events, so skip the search for them.
    double max_step = 0.0;
    for (std::size_t i = 0; i + 1 < rec.size(); ++i)
        max_step = std::max(max_step,
                            std::abs(rec[i + 1].mems_deviation - rec[i].mems_deviation));
    const double reject_margin = 4.0 * max_step;

    for (std::size_t i = 1; i + 1 < rec.size(); ++i) {
        const bool is_min = rec[i].mems_deviation < rec[i - 1].mems_deviation &&
                            rec[i].mems_deviation <= rec[i + 1].mems_deviation;
        if (!is_min) continue;
        if (rec[i].mems_deviation > dev_tol + reject_margin) continue;
        const double t_star =
            detail::golden_minimize(deviation_at, rec[i - 1].t, rec[i + 1].t);
        const MemsMeasure m = mems_measure(evolve_closed_form(series.plan, t_star));
        if (m.deviation <= dev_tol && m.zeta >= zeta_min)
            events.push_back(MemsEvent{t_star, m.zeta, m.deviation});
    }
    return events;
}

struct EsdInterval {
    double t_start;
    double t_end;

    double length() const { return t_end - t_start; }
};

// Maximal runs of >= 2 consecutive grid points with concurrence below
// zero_tol, with endpoints sharpened by bisection on C(t) - zero_tol against
// the exact closed-form state.
inline std::vector<EsdInterval> detect_esd_intervals(const TimeSeries& series,
                                                     double zero_tol = tol().esd_zero_tol) {
    if (!(zero_tol > 0.0)) throw ValidationError("detect_esd_intervals: zero_tol must be > 0");

    const auto excess_at = [&series, zero_tol](double t) {
        return concurrence(evolve_closed_form(series.plan, t)) - zero_tol;
    };

    std::vector<EsdInterval> intervals;
    const auto& rec = series.records;
    const std::size_t n = rec.size();
    std::size_t i = 0;
    while (i < n) {
        if (rec[i].concurrence >= zero_tol) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && rec[j + 1].concurrence < zero_tol) ++j;
        if (j > i) { // at least two grid points
            double t_lo = rec[i].t;
            if (i > 0)
                t_lo = detail::bisect(excess_at, rec[i - 1].t, rec[i].t,
                                      rec[i - 1].concurrence - zero_tol);
            double t_hi = rec[j].t;
            if (j + 1 < n)
                t_hi = detail::bisect(excess_at, rec[j].t, rec[j + 1].t,
                                      rec[j].concurrence - zero_tol);
            intervals.push_back(EsdInterval{t_lo, t_hi});
        }
        i = j + 1;
    }
    return intervals;
}

inline double total_esd_length(const std::vector<EsdInterval>& intervals) {
    double s = 0.0;
    for (const EsdInterval& iv : intervals) s += iv.length();
    return s;
}

// Grid-local maxima of the concurrence, as (t, value). Strictly greater than
// the left neighbour and at least the right neighbour, so plateaus count
// once. min_relative_height (fraction of the series' peak) screens out
// residual fast-coherence ripple near the zero floor.
inline std::vector<std::pair<double, double>> concurrence_local_maxima(
    const TimeSeries& series, double min_relative_height = 0.0) {
    const auto& rec = series.records;
    double peak = 0.0;
    for (const SeriesRecord& r : rec) peak = std::max(peak, r.concurrence);
    const double floor_value = min_relative_height * peak;

    std::vector<std::pair<double, double>> maxima;
    for (std::size_t i = 1; i + 1 < rec.size(); ++i) {
        const double c = rec[i].concurrence;
        if (c > rec[i - 1].concurrence && c >= rec[i + 1].concurrence && c > floor_value &&
            c > 0.0)
            maxima.emplace_back(rec[i].t, c);
    }
    return maxima;
}

enum class SweepAxis { ej1, ej2, em, gamma };

inline SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "ej1") return SweepAxis::ej1;
    if (name == "ej2") return SweepAxis::ej2;
    if (name == "em") return SweepAxis::em;
    if (name == "gamma") return SweepAxis::gamma;
    throw InvalidAxisError("sweep axis must be one of ej1, ej2, em, gamma (got '" + name + "')");
}

inline std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::ej1: return "ej1";
        case SweepAxis::ej2: return "ej2";
        case SweepAxis::em: return "em";
        case SweepAxis::gamma: return "gamma";
    }
    return "?";
}

inline CircuitParams with_axis_value(CircuitParams base, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::ej1: base.ej1 = value; break;
        case SweepAxis::ej2: base.ej2 = value; break;
        case SweepAxis::em: base.em = value; break;
        case SweepAxis::gamma: base.gamma = value; break;
    }
    return base;
}

struct SweepSummary {
    double axis_value;
    double peak_concurrence;
    double t_first_peak; // time of the first grid point attaining the peak
    double esd_total_length;
    std::optional<MemsEvent> first_mems;
};

struct SweepPoint {
    SweepSummary summary;
    TimeSeries series;
};

inline SweepPoint summarize_value(const CircuitParams& base, SweepAxis axis, double value,
                                  const DensityMatrix& rho0, const TimeGrid& grid,
                                  double dev_tol = tol().mems_dev_tol,
                                  double zeta_min = tol().mems_zeta_min,
                                  double zero_tol = tol().esd_zero_tol) {
    const CircuitParams p = with_axis_value(base, axis, value);
    TimeSeries series = simulate_series(p, rho0, grid);

    SweepSummary s{};
    s.axis_value = value;
    s.peak_concurrence = 0.0;
    s.t_first_peak = series.records.front().t;
    for (const SeriesRecord& r : series.records) {
        if (r.concurrence > s.peak_concurrence) {
            s.peak_concurrence = r.concurrence;
            s.t_first_peak = r.t;
        }
    }
    s.esd_total_length = total_esd_length(detect_esd_intervals(series, zero_tol));
    const std::vector<MemsEvent> events = detect_mems_events(series, dev_tol, zeta_min);
    if (!events.empty()) s.first_mems = events.front();
    return SweepPoint{s, std::move(series)};
}

// One summary per axis value, in the given order.
inline std::vector<SweepSummary> sweep(const CircuitParams& base, SweepAxis axis,
                                       const std::vector<double>& values,
                                       const DensityMatrix& rho0, const TimeGrid& grid) {
    std::vector<SweepSummary> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(summarize_value(base, axis, v, rho0, grid).summary);
    return out;
}

// Prediction/detection comparison table.
struct MemsReportRow {
    int n = 0;
    std::optional<double> predicted_t;
    std::optional<MemsEvent> detected;
};

struct MemsReport {
    std::optional<std::string> note;
    std::vector<MemsReportRow> rows;
};

// Pair each predicted time with the nearest unclaimed detected event within
// half a prediction period; leftover detections get their own rows. When the
// prediction is degenerate the table carries detections only, plus a note.
inline MemsReport make_mems_report(const CircuitParams& p, const TimeSeries& series,
                                   double dev_tol = tol().mems_dev_tol,
                                   double zeta_min = tol().mems_zeta_min) {
    MemsReport report;
    const std::vector<MemsEvent> events = detect_mems_events(series, dev_tol, zeta_min);

    std::vector<double> predicted;
    try {
        std::vector<double> one = predict_mems_times(p, 1);
        const double t1 = one.front();
        const double t_end = series.grid.t_end;
        int n_max = std::max(1, static_cast<int>(std::floor(t_end / t1)));
        n_max = std::min(n_max, 10000);
        predicted = predict_mems_times(p, n_max);
    } catch (const DegenerateDenominatorError& e) {
        report.note = std::string("prediction degenerate: ") + e.what();
    }

    std::vector<bool> claimed(events.size(), false);
    for (std::size_t n = 0; n < predicted.size(); ++n) {
        MemsReportRow row;
        row.n = static_cast<int>(n) + 1;
        row.predicted_t = predicted[n];
        const double half_period = 0.5 * predicted.front();
        std::size_t best = events.size();
        double best_dist = half_period;
        for (std::size_t k = 0; k < events.size(); ++k) {
            if (claimed[k]) continue;
            const double dist = std::abs(events[k].t - predicted[n]);
            if (dist <= best_dist) {
                best_dist = dist;
                best = k;
            }
        }
        if (best < events.size()) {
            claimed[best] = true;
            row.detected = events[best];
        }
        report.rows.push_back(row);
    }
    for (std::size_t k = 0; k < events.size(); ++k) {
        if (claimed[k]) continue;
        MemsReportRow row;
        row.detected = events[k];
        report.rows.push_back(row);
    }
    return report;
}

} // namespace cqdyn
