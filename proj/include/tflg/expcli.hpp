#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include <json.hpp>
#include <tflg/region.hpp>

namespace tflg {

/// Parsed experiment config: schema tflg-experiment/1.
struct ExperimentConfig
{
    std::string experiment;   // exp1 | exp2 | exp3 | bounds
    int L = 480;
    std::uint64_t seed = 1;
    nlohmann::json params = nlohmann::json::object();
    std::string base_dir;     // relative paths in params resolve here
    std::string config_hash;  // FNV-1a 64 of the canonical JSON dump, hex

    static ExperimentConfig from_json(const nlohmann::json& j, const std::string& base_dir);
    static ExperimentConfig load(const std::string& path);
};

/// FNV-1a 64-bit, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

/// Numeric cell text: integers verbatim, reals in %.10g.
std::string cell(double v);
std::string cell(int v);
std::string cell(long long v);
std::string cell(std::size_t v);

struct ResultTable
{
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> meta;   // extra key=value pairs for the header line

    void add(std::vector<std::string> row);

    /// "# table=... config_hash=... seed=... [meta]" then the CSV header and rows.
    std::string to_csv(const ExperimentConfig& cfg) const;
};

struct Assertion
{
    std::string id;
    bool passed = false;
    std::string detail;
};

struct ExperimentResult
{
    std::string experiment;
    std::vector<ResultTable> tables;
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, Region>> masks;   // file stem, region

    bool passed() const;
    std::vector<Assertion> failures() const;
    const Assertion* find(const std::string& id) const;
    const ResultTable* table(const std::string& name) const;

    void check(const std::string& id, bool ok, const std::string& detail);
};

ExperimentResult run_exp1(const ExperimentConfig& cfg);
ExperimentResult run_exp2(const ExperimentConfig& cfg);
ExperimentResult run_exp3(const ExperimentConfig& cfg);
ExperimentResult run_bounds(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes <name>.csv per table, <stem>.pbm per mask and assertions.json; returns written paths.
std::vector<std::string> write_outputs(const ExperimentResult& r, const ExperimentConfig& cfg, const std::string& out_dir);

/// {"experiment": ..., "passed": ..., "failures": [{"id": ..., "detail": ...}]}
nlohmann::json failure_report(const ExperimentResult& r);

} // namespace tflg
