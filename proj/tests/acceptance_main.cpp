// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "dicke/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    dicke::AcceptanceOptions opt;
    std::vector<int> only;
    app.add_option("--only", only, "criterion ids")->delimiter(',');
    app.add_option("--out", opt.out_dir, "directory for sweep data");
    app.add_option("--workers", opt.workers, "sweep worker-pool width");
    app.add_flag("--verbose", opt.verbose, "progress on stderr");
    CLI11_PARSE(app, argc, argv);
    opt.only.insert(only.begin(), only.end());
    if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
    const auto res = dicke::run_acceptance(opt);
    dicke::print_acceptance(std::cout, res);
    for (const auto& r : res)
        if (!r.pass) return 1;
    return 0;
}
