#pragma once
#include <filesystem>
#include <string>
#include <json.hpp>
#include <tflg/dsignal.hpp>
#include <tflg/errors.hpp>
#include <tflg/gabor.hpp>

namespace tflg::detail {

/// params[key] or the default; type errors name the field path.
template <class T>
T param(const nlohmann::json& p, const std::string& key, const T& def, const std::string& where = "params")
{
    if (!p.contains(key)) return def;
    try {
        return p.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(where + "." + key + ": " + e.what());
    }
}

inline std::string resolve_path(const std::string& base_dir, const std::string& path)
{
    const std::filesystem::path p(path);
    return p.is_absolute() || base_dir.empty() ? path : (std::filesystem::path(base_dir) / p).string();
}

inline Lattice lattice_param(int L, const nlohmann::json& p, const std::string& key, std::array<int, 2> def,
                             const std::string& where = "params")
{
    const auto ab = param(p, key, def, where);
    try {
        return Lattice(L, ab[0], ab[1]);
    } catch (const precondition_error& e) {
        throw config_error(where + "." + key + ": " + e.what());
    }
}

/// {"kind": "gaussian" | "file", "path": ..., "tight": bool}
inline Signal window_param(const Lattice& lattice, const nlohmann::json& w, const std::string& base_dir,
                           const std::string& where)
{
    const auto kind = param(w, "kind", std::string("gaussian"), where);
    Signal g;
    if (kind == "gaussian") {
        g = gaussian_window(lattice.L);
    } else if (kind == "file") {
        g = read_signal_csv(resolve_path(base_dir, param(w, "path", std::string(), where)));
        if (g.size() != lattice.L) throw config_error(where + ": window length != L");
    } else {
        throw config_error(where + ".kind: unknown window '" + kind + "'");
    }
    if (param(w, "tight", false, where)) g = tight_window(GaborSystem(g, lattice));
    return g;
}

} // namespace tflg::detail
