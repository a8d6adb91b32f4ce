#include <tflg/errors.hpp>
#include <tflg/expcli.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tflg {

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, const std::string& base_dir)
{
    if (!j.is_object()) throw config_error("config: top level must be an object");
    const auto schema = j.value("schema", std::string());
    if (schema != "tflg-experiment/1") throw config_error("config.schema: expected tflg-experiment/1, got '" + schema + "'");

    ExperimentConfig cfg;
    try {
        cfg.experiment = j.at("experiment").get<std::string>();
        cfg.L = j.value("L", 480);
        cfg.seed = j.value("seed", std::uint64_t{1});
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    if (cfg.experiment != "exp1" && cfg.experiment != "exp2" && cfg.experiment != "exp3" && cfg.experiment != "bounds") {
        throw config_error("config.experiment: expected exp1 | exp2 | exp3 | bounds, got '" + cfg.experiment + "'");
    }
    if (cfg.L < 16) throw config_error("config.L: must be at least 16");
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw config_error("config.params: must be an object");
        cfg.params = j.at("params");
    }
    cfg.base_dir = base_dir;
    cfg.config_hash = fnv1a_hex(j.dump());
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path + ": " + e.what());
    }
    return from_json(j, std::filesystem::path(path).parent_path().string());
}

std::string cell(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string cell(int v) { return std::to_string(v); }
std::string cell(long long v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }

void ResultTable::add(std::vector<std::string> row)
{
    if (row.size() != columns.size()) {
        throw precondition_error("ResultTable " + name + ": row has " + std::to_string(row.size()) +
                                 " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string ResultTable::to_csv(const ExperimentConfig& cfg) const
{
    std::ostringstream os;
    os << "# table=" << name << " experiment=" << cfg.experiment << " config_hash=" << cfg.config_hash
       << " seed=" << cfg.seed << " L=" << cfg.L;
    for (const auto& [k, v] : meta) os << ' ' << k << '=' << v;
    os << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << '\n';
    }
    return os.str();
}

bool ExperimentResult::passed() const
{
    for (const auto& a : assertions) {
        if (!a.passed) return false;
    }
    return true;
}

std::vector<Assertion> ExperimentResult::failures() const
{
    std::vector<Assertion> out;
    for (const auto& a : assertions) {
        if (!a.passed) out.push_back(a);
    }
    return out;
}

const Assertion* ExperimentResult::find(const std::string& id) const
{
    for (const auto& a : assertions) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

const ResultTable* ExperimentResult::table(const std::string& name) const
{
    for (const auto& t : tables) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

void ExperimentResult::check(const std::string& id, bool ok, const std::string& detail)
{
    assertions.push_back({id, ok, detail});
}

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    if (cfg.experiment == "exp1") return run_exp1(cfg);
    if (cfg.experiment == "exp2") return run_exp2(cfg);
    if (cfg.experiment == "exp3") return run_exp3(cfg);
    if (cfg.experiment == "bounds") return run_bounds(cfg);
    throw config_error("unknown experiment '" + cfg.experiment + "'");
}

std::vector<std::string> write_outputs(const ExperimentResult& r, const ExperimentConfig& cfg, const std::string& out_dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto put = [&](const std::string& file, const std::string& text) {
        const auto path = (fs::path(out_dir) / file).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw error("cannot write " + path);
        out << text;
        written.push_back(path);
    };
    for (const auto& t : r.tables) put(t.name + ".csv", t.to_csv(cfg));
    for (const auto& [stem, region] : r.masks) put(stem + ".pbm", to_pbm(region));

    nlohmann::json j = failure_report(r);
    j["config_hash"] = cfg.config_hash;
    j["seed"] = cfg.seed;
    nlohmann::json all = nlohmann::json::array();
    for (const auto& a : r.assertions) all.push_back({{"id", a.id}, {"passed", a.passed}, {"detail", a.detail}});
    j["assertions"] = all;
    put("assertions.json", j.dump(2) + "\n");
    return written;
}

nlohmann::json failure_report(const ExperimentResult& r)
{
    nlohmann::json f = nlohmann::json::array();
    for (const auto& a : r.failures()) f.push_back({{"id", a.id}, {"detail", a.detail}});
    return {{"experiment", r.experiment}, {"passed", r.passed()}, {"failures", f}};
}

} // namespace tflg
