#include "hecke/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hecke/errors.hpp"
#include "hecke/quadforms.hpp"
#include "json.hpp"

namespace hecke {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void check_one_kind(const std::vector<ScanRecord>& records) {
    for (const ScanRecord& r : records) {
        if (r.kind != records.front().kind || r.inputs.size() != records.front().inputs.size()) {
            throw DomainError("records of different kinds cannot share one table");
        }
    }
}

}  // namespace

const char* to_string(ScanKind kind) {
    switch (kind) {
        case ScanKind::supnorm: return "supnorm";
        case ScanKind::lemma21: return "lemma21";
        case ScanKind::subconvexity: return "subconvexity";
        case ScanKind::second_moment: return "second_moment";
        case ScanKind::expsum: return "expsum";
    }
    return "?";
}

double ScanRecord::input(const std::string& key) const {
    for (const auto& [k, v] : inputs) {
        if (k == key) {
            return v;
        }
    }
    throw DomainError(std::string("record of kind ") + to_string(kind) + " has no input " + key);
}

double envelope(const ScanRecord& r) {
    switch (r.kind) {
        case ScanKind::supnorm:
            return std::cbrt(1.0 + r.input("t"));
        case ScanKind::lemma21:
            return std::pow(std::abs(r.input("D")), std::max(r.input("delta"), 1.0) / 2.0);
        case ScanKind::subconvexity:
            return std::pow(std::abs(r.input("D")), 0.25) * std::cbrt(1.0 + std::abs(r.input("t")));
        case ScanKind::second_moment:
            return std::sqrt(std::abs(r.input("D"))) * std::pow(1.0 + std::abs(r.input("t")), 2.0 / 3.0);
        case ScanKind::expsum:
            return std::sqrt(r.input("Qplus")) * std::cbrt(r.input("t"));
    }
    return 1.0;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 8) {
        throw DomainError("fit_exponent: need at least 8 points, got " + std::to_string(points.size()));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
            throw DomainError("fit_exponent: coordinates must be positive and finite");
        }
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double n = static_cast<double>(points.size());
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    if (!(vx > 0.0)) {
        throw DomainError("fit_exponent: all x values coincide");
    }
    ExponentFit fit;
    fit.slope = cxy / vx;
    fit.intercept = (sy - fit.slope * sx) / n;
    // A constant y explains itself perfectly.
    fit.r_squared = vy <= 1e-300 ? 1.0 : cxy * cxy / (vx * vy);
    fit.n_points = static_cast<int>(points.size());
    return fit;
}

int resolve_workers(int workers) {
    if (workers > 0) {
        return workers;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int RunConfig::worker_count() const { return resolve_workers(workers); }

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot read config file " + path.string());
    }
    RunConfig config;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw DomainError(where + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "tol") {
                config.tol = std::stod(value);
                if (!(config.tol > 0.0)) {
                    throw DomainError(where + ": tol must be positive");
                }
            } else if (key == "workers") {
                config.workers = std::stoi(value);
            } else if (key == "cache_dir") {
                config.cache_dir = value;
            } else {
                throw DomainError(where + ": unknown key " + key);
            }
        } catch (const std::logic_error&) {
            throw DomainError(where + ": bad value " + value);
        }
    }
    return config;
}

void apply_config(const RunConfig& config) {
    if (!config.cache_dir.empty()) {
        set_cache_directory(config.cache_dir);
    }
}

std::string records_to_csv(const std::vector<ScanRecord>& records) {
    std::ostringstream out;
    if (records.empty()) {
        out << "kind,value,ratio\n";
        return out.str();
    }
    check_one_kind(records);
    out << "kind";
    for (const auto& in : records.front().inputs) {
        out << ',' << in.first;
    }
    out << ",value,ratio\n";
    for (const ScanRecord& r : records) {
        out << to_string(r.kind);
        for (const auto& in : r.inputs) {
            out << ',' << fmt17(in.second);
        }
        out << ',' << fmt17(r.value) << ',' << fmt17(r.ratio) << '\n';
    }
    return out.str();
}

std::string records_to_json(const std::vector<ScanRecord>& records) {
    check_one_kind(records);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ScanRecord& r : records) {
        nlohmann::ordered_json obj;
        obj["kind"] = to_string(r.kind);
        for (const auto& [k, v] : r.inputs) {
            obj[k] = v;
        }
        obj["value"] = r.value;
        obj["ratio"] = r.ratio;
        arr.push_back(std::move(obj));
    }
    return arr.dump(1) + "\n";
}

std::string records_to_svg(const std::vector<ScanRecord>& records, const std::string& x_field) {
    std::vector<std::pair<double, double>> pts;
    for (const ScanRecord& r : records) {
        const double x = std::abs(r.input(x_field));
        if (x > 0.0 && r.ratio > 0.0) {
            pts.emplace_back(std::log10(x), std::log10(r.ratio));
        }
    }
    constexpr double W = 640, H = 480, M = 60;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end());
        x0 = xmin->first;
        x1 = xmax->first;
        auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(),
                                                [](const auto& a, const auto& b) { return a.second < b.second; });
        y0 = ymin->second;
        y1 = ymax->second;
    }
    if (x1 - x0 < 1e-9) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 - y0 < 1e-9) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">log10 " << x_field
        << " [" << fmt17(x0).substr(0, 6) << ", " << fmt17(x1).substr(0, 6) << "]</text>\n";
    out << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
        << ")\" text-anchor=\"middle\">log10 ratio [" << fmt17(y0).substr(0, 6) << ", " << fmt17(y1).substr(0, 6)
        << "]</text>\n";
    for (const auto& [x, y] : pts) {
        out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !(out.flush())) {
        throw Error("cannot write " + path.string());
    }
}

}  // namespace hecke
