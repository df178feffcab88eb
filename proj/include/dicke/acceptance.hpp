// acceptance.hpp — the acceptance suite shared by the test binary and `dicke benchmark`

#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace dicke {

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;
    double seconds{0.0};
};

struct AcceptanceOptions {
    std::set<int> only;   // empty: all criteria
    std::string out_dir;  // sweep data of the criteria is written here when set
    int workers{0};       // sweep worker-pool width (0: DICKE_WORKERS or 1)
    bool verbose{false};  // progress lines on stderr
};

/// Run the selected criteria. A criterion that throws is reported as failed.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// One "PASS|FAIL [id] name: detail (seconds)" line per criterion.
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& res);

/// Number of the acceptance criteria.
inline constexpr int kCriterionCount = 10;

}  // namespace dicke
