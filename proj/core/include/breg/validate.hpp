#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace breg {

/// One empirical validation check: a named statistic measured by
/// simulation and the threshold it must respect.  For lower-bounded
/// checks (coverage) `measured` must lie within [lower_bound, bound].
struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double bound = 0.0;
    double lower_bound = 0.0;   // 0 unless the check is two-sided
    std::string comparison;     // "<=" or "in"
    std::string detail;
    double seconds = 0.0;       // wall time; excluded from canonical output
};

/// Runs the validation suite: every distributional limit, concentration
/// bound, transport identity and optimizer contract the library ships is
/// exercised against an independent oracle at a fixed seed.  `quick`
/// shrinks the simulation sizes (and widens the purely statistical
/// tolerances accordingly) to finish in well under two minutes.
std::vector<CheckResult> run_validation(bool quick, std::uint64_t seed);

/// JSON report of the results.  With include_timings=false the output is
/// a pure function of (results content), i.e. byte-identical across runs
/// with the same seed; timings are for human consumption only.
std::string render_report_json(const std::vector<CheckResult>& results, std::uint64_t seed,
                               bool quick, bool include_timings);

}  // namespace breg
