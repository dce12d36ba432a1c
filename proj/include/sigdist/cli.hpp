#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigdist/distributivity.hpp"
#include "sigdist/product.hpp"

namespace sigdist::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNegative = 1,
    kInputError = 2,
};

nlohmann::ordered_json report_json(const DistributivityReport& report, const ProductSpace& space);
void print_report(std::ostream& out, const DistributivityReport& report, const ProductSpace& space);

nlohmann::ordered_json summary_json(const VerificationSummary& summary);
void print_summary(std::ostream& out, const VerificationSummary& summary);

// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sigdist::cli
