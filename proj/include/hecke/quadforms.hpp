#pragma once

// Binary quadratic forms, class groups of quadratic fields with their
// characters, Heegner points, closed geodesics and fundamental units.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hecke/modgroup.hpp"
#include "hecke/numerics.hpp"

namespace hecke {

inline constexpr std::int64_t kMaxClassGroupDisc = 10'000'000;
/// The composition table is stored densely; beyond this many classes the
/// h x h table no longer fits a desk budget.
inline constexpr std::int64_t kMaxClassNumber = 6000;

struct Discriminant {
    std::int64_t D = 0;
    bool fundamental = false;

    /// Validates D = 0, 1 (mod 4), D != 0, and records fundamentality.
    static Discriminant make(std::int64_t d);
    /// As make(), but throws DomainError unless D is fundamental.
    static Discriminant fundamental_only(std::int64_t d);
};

struct QuadraticForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    std::int64_t disc() const;
    /// Value at (x, y).
    std::int64_t operator()(std::int64_t x, std::int64_t y) const;
    auto operator<=>(const QuadraticForm&) const = default;
};

std::string to_string(const QuadraticForm& f);

/// f o g: the form (x, y) -> f(p x + q y, r x + s y).
QuadraticForm transform(const QuadraticForm& f, const ModularWord& g);

/// Reduction of a positive definite form. Returns (f', g) with f' reduced and
/// f' = transform(f, g).
std::pair<QuadraticForm, ModularWord> reduce_definite(const QuadraticForm& f);

bool is_reduced_definite(const QuadraticForm& f);

/// Reduced forms of a negative fundamental discriminant, sorted lexicographically.
std::vector<QuadraticForm> enumerate_reduced(const Discriminant& d);

/// #{0 < b <= 2a : b^2 = D (mod 4a)}.
std::int64_t rho(const Discriminant& d, std::int64_t a);

/// Dirichlet composition followed by reduction (D < 0).
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);

// Indefinite forms. A form of discriminant D > 0 is reduced when
// 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b.

bool is_reduced_indefinite(const QuadraticForm& f);

/// One step of the reduction operator: the right neighbour (c, b', a') with
/// b' = -b (mod 2c), together with the matrix realizing it.
std::pair<QuadraticForm, ModularWord> rho_step(const QuadraticForm& f);

/// Applies rho_step until the form is reduced.
std::pair<QuadraticForm, ModularWord> reduce_indefinite(const QuadraticForm& f);

/// The reduction cycle through a reduced indefinite form.
std::vector<QuadraticForm> reduction_cycle(const QuadraticForm& f);

struct FundamentalUnit {
    double unit_log = 0.0;      ///< log eps_K, eps_K > 1 the fundamental unit
    int norm = 1;               ///< norm of eps_K, +1 or -1
    double positive_log = 0.0;  ///< log of the smallest totally positive unit > 1
    /// Minimal t, u >= 1 with t^2 - D u^2 = 4, when both fit in 64 bits.
    std::optional<std::pair<std::int64_t, std::int64_t>> pell_tu;
};

FundamentalUnit fundamental_unit(const Discriminant& d);

struct ClassGroupData {
    Discriminant D;
    /// One reduced representative per (wide) class; index 0 is principal.
    std::vector<QuadraticForm> reduced_forms;
    std::int64_t h = 0;
    /// composition_table[i * h + j] = index of class i * class j.
    std::vector<std::int32_t> composition_table;
    std::vector<std::pair<std::int32_t, std::int32_t>> cyclic_decomposition;
    /// characters[chi][cls]; character values are exp(2 pi i e / h) with
    /// e = char_exponents[chi][cls].
    std::vector<std::vector<Complex>> characters;
    std::vector<std::vector<std::int32_t>> char_exponents;
    int omega = 0;         ///< number of roots of unity (D < 0)
    double unit_log = 0.0; ///< log eps_K (D > 0)

    std::int32_t mul(std::int32_t i, std::int32_t j) const {
        return composition_table[static_cast<std::size_t>(i * h + j)];
    }
};

/// Full class group data, computed from scratch (no cache).
ClassGroupData compute_class_group(const Discriminant& d);

/// Class group data, served from the on-disk cache when available. A missing,
/// truncated or corrupted cache file is rebuilt transparently.
ClassGroupData class_group(const Discriminant& d);

/// As class_group, memoized in-process so repeated callers share one copy.
std::shared_ptr<const ClassGroupData> class_group_shared(const Discriminant& d);

/// Cache location: HECKE_CACHE_DIR when set, else the configured directory
/// (default ".hecke-cache" under the working directory).
std::filesystem::path cache_directory();
void set_cache_directory(const std::filesystem::path& dir);
std::filesystem::path class_cache_path(std::int64_t D);

/// Text record for one discriminant: `D`, `h`, `form a b c` lines, `table`
/// with h rows, `chars` with h rows of `re:im` pairs, then `omega`,
/// `unit_log` and `cyclic g n` lines, and a closing `ok`.
void write_class_cache(const ClassGroupData& data, const std::filesystem::path& path);
/// Parses a cache record; std::nullopt when the file is absent or malformed.
std::optional<ClassGroupData> read_class_cache(const std::filesystem::path& path, std::int64_t D);

/// Index in data.reduced_forms of the class containing f (same discriminant).
std::int32_t class_index(const ClassGroupData& data, const QuadraticForm& f);

/// z_f = (-b + i sqrt|D|) / (2a).
HalfPlanePoint heegner_point(const QuadraticForm& f);

struct GeodesicCycle {
    QuadraticForm form;
    double center = 0.0;
    double radius = 0.0;
    /// Primitive automorph ((t - b u)/2, -c u; a u, (t + b u)/2), when the
    /// Pell solution fits in 64 bits.
    std::optional<ModularWord> automorph;
    /// Hyperbolic length of one automorph period: 2 log eps_+.
    double period_length = 0.0;
    /// log eps_K / log eps_+ (1 or 1/2): the weight that turns an integral over
    /// one automorph period into the integral over the class geodesic of
    /// length 2 log eps_K used in the real-quadratic Hecke formula.
    double period_weight = 1.0;
};

GeodesicCycle geodesic_cycle(const QuadraticForm& f);

}  // namespace hecke
