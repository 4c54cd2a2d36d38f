// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <cstdio>
#include <filesystem>

#include "hecke/acceptance.hpp"
#include "hecke/quadforms.hpp"

int main(int argc, char** argv) {
    const auto cache = std::filesystem::temp_directory_path() / "hecke-acceptance-cache";
    std::filesystem::remove_all(cache);
    hecke::set_cache_directory(cache);
    int failures = 0;
    auto print = [&](const hecke::CriterionResult& r) {
        std::printf("%s\n", hecke::format_result(r).c_str());
        std::fflush(stdout);
        failures += r.passed ? 0 : 1;
    };
    if (argc > 1) {
        for (int k = 1; k < argc; ++k) {
            print(hecke::run_criterion(argv[k]));
        }
    } else {
        hecke::run_acceptance(0, print);
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
