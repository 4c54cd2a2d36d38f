#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "hecke/errors.hpp"
#include "hecke/quadforms.hpp"

namespace hecke {
namespace {

std::mutex g_dir_mutex;

// Function-local so that static initializers elsewhere may set it safely.
std::filesystem::path& configured_dir() {
    static std::filesystem::path dir = ".hecke-cache";
    return dir;
}

std::mutex g_memo_mutex;
std::map<std::int64_t, std::shared_ptr<const ClassGroupData>>& memo() {
    static std::map<std::int64_t, std::shared_ptr<const ClassGroupData>> m;
    return m;
}

// Reads "<key> <value...>" and checks the key.
bool expect_key(std::istream& in, const std::string& key) {
    std::string word;
    return static_cast<bool>(in >> word) && word == key;
}

}  // namespace

std::filesystem::path cache_directory() {
    if (const char* env = std::getenv("HECKE_CACHE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    std::lock_guard lock(g_dir_mutex);
    return configured_dir();
}

void set_cache_directory(const std::filesystem::path& dir) {
    std::lock_guard lock(g_dir_mutex);
    configured_dir() = dir;
}

std::filesystem::path class_cache_path(std::int64_t D) {
    return cache_directory() / ("class_" + std::to_string(D) + ".txt");
}

void write_class_cache(const ClassGroupData& data, const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path());
    std::ostringstream tag;
    tag << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    std::filesystem::path tmp = path;
    tmp += tag.str();
    {
        std::ofstream out(tmp);
        if (!out) {
            throw Error("cannot write cache file " + tmp.string());
        }
        out << "D " << data.D.D << "\n" << "h " << data.h << "\n";
        for (const auto& f : data.reduced_forms) {
            out << "form " << f.a << " " << f.b << " " << f.c << "\n";
        }
        out << "table\n";
        for (std::int64_t i = 0; i < data.h; ++i) {
            for (std::int64_t j = 0; j < data.h; ++j) {
                out << (j ? " " : "") << data.composition_table[static_cast<std::size_t>(i * data.h + j)];
            }
            out << "\n";
        }
        out << "chars\n";
        char buf[80];
        for (const auto& row : data.characters) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                std::snprintf(buf, sizeof buf, "%s%.17g:%.17g", j ? " " : "", row[j].real(), row[j].imag());
                out << buf;
            }
            out << "\n";
        }
        std::snprintf(buf, sizeof buf, "%.17g", data.unit_log);
        out << "omega " << data.omega << "\n" << "unit_log " << buf << "\n";
        for (const auto& [g, n] : data.cyclic_decomposition) {
            out << "cyclic " << g << " " << n << "\n";
        }
        out << "ok\n";
        if (!out) {
            throw Error("failed writing cache file " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::optional<ClassGroupData> read_class_cache(const std::filesystem::path& path, std::int64_t D) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    ClassGroupData data;
    std::int64_t file_d = 0;
    if (!expect_key(in, "D") || !(in >> file_d) || file_d != D) {
        return std::nullopt;
    }
    try {
        data.D = Discriminant::fundamental_only(D);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (!expect_key(in, "h") || !(in >> data.h) || data.h <= 0 || data.h > kMaxClassNumber) {
        return std::nullopt;
    }
    for (std::int64_t i = 0; i < data.h; ++i) {
        QuadraticForm f;
        if (!expect_key(in, "form") || !(in >> f.a >> f.b >> f.c) || f.disc() != D) {
            return std::nullopt;
        }
        data.reduced_forms.push_back(f);
    }
    if (!expect_key(in, "table")) {
        return std::nullopt;
    }
    data.composition_table.resize(static_cast<std::size_t>(data.h * data.h));
    for (auto& entry : data.composition_table) {
        if (!(in >> entry) || entry < 0 || entry >= data.h) {
            return std::nullopt;
        }
    }
    if (!expect_key(in, "chars")) {
        return std::nullopt;
    }
    const double step = 2.0 * kPi / static_cast<double>(data.h);
    for (std::int64_t i = 0; i < data.h; ++i) {
        std::vector<Complex> row;
        std::vector<std::int32_t> exps;
        for (std::int64_t j = 0; j < data.h; ++j) {
            std::string token;
            if (!(in >> token)) {
                return std::nullopt;
            }
            const auto colon = token.find(':');
            if (colon == std::string::npos) {
                return std::nullopt;
            }
            double re = 0.0, im = 0.0;
            try {
                re = std::stod(token.substr(0, colon));
                im = std::stod(token.substr(colon + 1));
            } catch (const std::exception&) {
                return std::nullopt;
            }
            const Complex value(re, im);
            double k = std::round(std::arg(value) / step);
            if (k < 0) {
                k += static_cast<double>(data.h);
            }
            const auto e = static_cast<std::int32_t>(k) % static_cast<std::int32_t>(data.h);
            const Complex exact = std::polar(1.0, step * e);
            if (std::abs(value - exact) > 1e-9) {
                return std::nullopt;
            }
            row.push_back(exact);
            exps.push_back(e);
        }
        data.characters.push_back(std::move(row));
        data.char_exponents.push_back(std::move(exps));
    }
    if (!expect_key(in, "omega") || !(in >> data.omega) || !expect_key(in, "unit_log") || !(in >> data.unit_log)) {
        return std::nullopt;
    }
    std::string word;
    std::int64_t order_product = 1;
    while (in >> word && word == "cyclic") {
        std::int32_t g = 0, n = 0;
        if (!(in >> g >> n) || g < 0 || g >= data.h || n < 1) {
            return std::nullopt;
        }
        data.cyclic_decomposition.emplace_back(g, n);
        order_product *= n;
    }
    if (word != "ok" || order_product != data.h) {
        return std::nullopt;
    }
    if (data.composition_table[0] != 0) {
        return std::nullopt;
    }
    return data;
}

ClassGroupData class_group(const Discriminant& d) {
    if (!d.fundamental) {
        throw DomainError("class_group needs a fundamental discriminant, got " + std::to_string(d.D));
    }
    if (std::llabs(d.D) > kMaxClassGroupDisc) {
        throw ResourceError("class_group: |D| above the cap of " + std::to_string(kMaxClassGroupDisc));
    }
    const auto path = class_cache_path(d.D);
    if (auto cached = read_class_cache(path, d.D)) {
        return *std::move(cached);
    }
    ClassGroupData data = compute_class_group(d);
    try {
        write_class_cache(data, path);
    } catch (const std::exception&) {
        // The cache only accelerates; an unwritable directory is not an error.
    }
    return data;
}

std::shared_ptr<const ClassGroupData> class_group_shared(const Discriminant& d) {
    {
        std::lock_guard lock(g_memo_mutex);
        if (auto it = memo().find(d.D); it != memo().end()) {
            return it->second;
        }
    }
    auto data = std::make_shared<const ClassGroupData>(class_group(d));
    std::lock_guard lock(g_memo_mutex);
    return memo().emplace(d.D, std::move(data)).first->second;
}

}  // namespace hecke
