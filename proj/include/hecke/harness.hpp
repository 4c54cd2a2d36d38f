#pragma once

// Numerical experiments around the sup-norm and subconvexity bounds: exponent
// scans, peak finding, record output and run configuration.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hecke/numerics.hpp"

namespace hecke {

enum class ScanKind { supnorm, lemma21, subconvexity, second_moment, expsum };

const char* to_string(ScanKind kind);

struct ScanRecord {
    ScanKind kind = ScanKind::supnorm;
    /// Named inputs in a fixed order per kind (t, D, delta, grid coordinates, ...).
    std::vector<std::pair<std::string, double>> inputs;
    double value = 0.0;
    /// value / envelope(*this).
    double ratio = 0.0;

    double input(const std::string& key) const;
};

/// The predicted growth envelope a record is compared against, recomputed
/// from its inputs alone.
double envelope(const ScanRecord& r);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

/// Least-squares line through (log x, log y). DomainError for fewer than 8
/// points or any non-positive coordinate.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);

struct RunConfig {
    double tol = 1e-10;
    int workers = 0;  ///< 0 = hardware concurrency
    std::filesystem::path cache_dir;  ///< empty = library default

    int worker_count() const;
};

/// workers > 0 as given, otherwise the hardware concurrency.
int resolve_workers(int workers);

/// Reads `key = value` lines (keys tol, workers, cache_dir; `#` starts a
/// comment). Unknown keys and malformed lines raise DomainError naming the line.
RunConfig load_config(const std::filesystem::path& path);

/// Applies the cache directory of a config (HECKE_CACHE_DIR still wins).
void apply_config(const RunConfig& config);

/// results[i] = f(i) for i < n, computed on up to `workers` threads. Items are
/// claimed dynamically but stored by index, so the output never depends on
/// the worker count. The first exception thrown by f is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& f);

// Scans. Every scan returns records in a deterministic order.

struct SupnormOptions {
    double t_min = 10.0;
    double t_max = 200.0;
    int t_steps = 12;
    double y_max = 30.0;
    double grid_density = 1.0;
    double tol = 1e-10;
    int workers = 0;
};

/// For each t on a geometric grid, sup over a grid of the fundamental domain
/// (y <= y_max) of |E(z, 1/2 + it)| / y^{1/2}. The grid step is
/// min(0.02, 1/(4t)) / grid_density near y = 1 and grows proportionally to y
/// above it. Inputs: t, x, y (the arg max), grid_points. Envelope
/// (1 + t)^{1/3}.
std::vector<ScanRecord> scan_supnorm(const SupnormOptions& opt);

/// Per fundamental D in [d_min, d_max]: sum_a y(z_a)^delta (D < 0) or
/// sum_a int_{C_a} y(z)^delta ds over the class geodesics (D > 0). Inputs: D,
/// delta, h. Envelope |D|^{max(delta, 1) / 2}.
std::vector<ScanRecord> scan_lemma21(std::int64_t d_min, std::int64_t d_max, double delta, int workers = 0);

/// |L_K(1/2 + it, chi)| for every character (inputs D, chi, t; envelope
/// |D|^{1/4} (1 + |t|)^{1/3}), then for D < 0 the second moment (inputs D, t,
/// identity_gap; envelope |D|^{1/2} (1 + |t|)^{2/3}).
std::vector<ScanRecord> scan_subconvexity(const std::vector<std::int64_t>& d_list, const std::vector<double>& t_list,
                                          double tol = 1e-10, int workers = 0);

/// |sum_{x in box} e^{it log Q(x)}| over dyadic boxes [X1, 2 X1] x [X2, 2 X2],
/// X2 = sqrt(a) X1, for X1 = t^{1/3} 2^k while a X1^2 <= 4 sqrt(a) t.
/// Inputs a, b, t, X1, X2, Qplus = a X1^2 + X2^2, points. Envelope
/// Qplus^{1/2} t^{1/3}.
std::vector<ScanRecord> scan_expsum(const std::vector<double>& a_list, const std::vector<double>& b_list,
                                    const std::vector<double>& t_list, int workers = 0);

struct PeakHeight {
    double y = 0.0;
    /// |E(iy, 1/2 + it)| / (2 y^{1/2}): the peak ratio for the usual
    /// normalization sum over cosets, whose main terms there add up to 2 y^{1/2}.
    double E_ratio = 0.0;
    /// |1 + phi(1/2 + it) y^{-2it} - 2|.
    double phase_residual = 0.0;
    /// |E - constant term| / 2, the Fourier remainder in the usual normalization.
    double main_term_residual = 0.0;
};

/// Smallest y >= y_min at which y^{it} and phi y^{-it} are in phase, i.e.
/// arg phi - 2t log y = 0 (mod 2 pi), solved in closed form.
PeakHeight find_peak_height(double t, double y_min);

// Output.

/// Header row plus one line per record; floats with 17 significant digits.
/// All records must be of one kind (the column order is fixed per kind).
std::string records_to_csv(const std::vector<ScanRecord>& records);
/// JSON array with one object per record; field names match the CSV header.
std::string records_to_json(const std::vector<ScanRecord>& records);
/// Standalone SVG of log(x_field) against log(ratio).
std::string records_to_svg(const std::vector<ScanRecord>& records, const std::string& x_field);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hecke

#include "hecke/parallel_map.ipp"
