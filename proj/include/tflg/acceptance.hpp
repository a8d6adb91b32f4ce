#pragma once
#include <iosfwd>
#include <string>
#include <vector>
#include <json.hpp>

namespace tflg {

struct CriterionResult
{
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions
{
    std::string config_dir;   // holds exp1.json, exp2.json, exp3.json, bounds.json
    std::string out_dir;      // two output runs land in out_dir/run1 and out_dir/run2
};

/// Runs criteria 1-11 in order, printing one PASS/FAIL line per criterion to `log` as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log);

/// {"passed": bool, "failures": [{"criterion": id, "title": ..., "detail": ...}]}
nlohmann::json acceptance_report(const std::vector<CriterionResult>& results);

} // namespace tflg
