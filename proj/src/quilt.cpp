#include <tflg/dsignal.hpp>
#include <tflg/numkernel.hpp>
#include <tflg/quilt.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>

namespace tflg {

FamilyMode parse_family_mode(const std::string& s)
{
    if (s == "none") return FamilyMode::none;
    if (s == "exact") return FamilyMode::exact;
    if (s == "approximate") return FamilyMode::approximate;
    throw config_error("unknown family mode '" + s + "' (none | exact | approximate)");
}

std::string to_string(FamilyMode m)
{
    switch (m) {
        case FamilyMode::none: return "none";
        case FamilyMode::exact: return "exact";
        case FamilyMode::approximate: return "approximate";
    }
    return "?";
}

int NRule::apply(const EigenSystem& E) const
{
    if (fixed >= 0) return std::min(fixed, E.size());
    return E.count_above(threshold);
}

void RegionFamily::validate() const
{
    if (members.empty()) throw config_error("family: no regions");
    if (analysis_window.size() != L) throw config_error("family: analysis window length != L");
    for (const auto& m : members) {
        if (m.region.L() != L || m.cover.L() != L || m.window.size() != L || m.lattice.L != L) {
            throw config_error("family: region " + m.name + " does not match L");
        }
        if (m.region.empty()) throw config_error("family: region " + m.name + " is empty");
        if (!m.region.subset_of(m.cover)) throw config_error("family: region " + m.name + " is not inside its cover");
    }
    const auto count = coverage_count(regions());
    const auto [lo, hi] = std::minmax_element(count.begin(), count.end());
    if (*lo < 1) throw config_error("family: regions leave grid cells uncovered");
    if (*hi > max_overlap) {
        throw config_error("family: region overlap " + std::to_string(*hi) + " exceeds max_overlap " +
                           std::to_string(max_overlap));
    }
}

void RegionFamily::prepare()
{
    for (auto& m : members) {
        if (!m.eigen) m.eigen = std::make_shared<const EigenSystem>(eigensystem(localization_op(analysis_window, m.region)));
        m.n_eig = m.n_fixed >= 0 ? std::min(m.n_fixed, m.eigen->size()) : n_rule.apply(*m.eigen);
    }
}

RegionFamily RegionFamily::with_margin(int margin) const
{
    RegionFamily out = *this;
    for (auto& m : out.members) m.cover = m.region.dilate(margin);
    return out;
}

RegionFamily RegionFamily::translated(TFPoint mu) const
{
    RegionFamily out = *this;
    for (auto& m : out.members) {
        m.region = m.region.translated(mu);
        m.cover = m.cover.translated(mu);
        m.eigen.reset();
    }
    return out;
}

std::vector<Region> RegionFamily::regions() const
{
    std::vector<Region> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.region);
    return out;
}

namespace {

using nlohmann::json;

template <class T>
T field(const json& j, const std::string& key, const std::string& where)
{
    if (!j.contains(key)) throw config_error(where + "." + key + ": missing");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error(where + "." + key + ": " + e.what());
    }
}

std::string resolve(const std::string& base_dir, const std::string& path)
{
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

Region shape_from_json(const json& s, int L, const std::string& base_dir, const std::string& where)
{
    const auto type = field<std::string>(s, "type", where);
    if (type == "disk") {
        const auto c = field<std::array<int, 2>>(s, "center", where);
        const auto boundary = s.value("boundary", std::string("strict"));
        if (boundary != "strict" && boundary != "closed") throw config_error(where + ".boundary: strict | closed");
        return region_disk(L, {c[0], c[1]}, field<double>(s, "radius", where),
                           boundary == "strict" ? Boundary::strict : Boundary::closed);
    }
    if (type == "rect") {
        const auto x = field<std::array<int, 2>>(s, "x", where);
        const auto w = field<std::array<int, 2>>(s, "w", where);
        return region_rect(L, x[0], x[1], w[0], w[1]);
    }
    if (type == "polygon") {
        return region_polygon(L, field<std::vector<std::array<double, 2>>>(s, "vertices", where));
    }
    if (type == "mask") {
        const auto path = resolve(base_dir, field<std::string>(s, "path", where));
        const auto ext = std::filesystem::path(path).extension().string();
        const auto format = s.value("format", ext == ".pbm" ? std::string("pbm") : std::string("rle"));
        Region r = format == "pbm" ? read_pbm(path) : read_rle(path);
        if (r.L() != L) throw config_error(where + ": mask size " + std::to_string(r.L()) + " != L");
        return r;
    }
    throw config_error(where + ".type: unknown shape '" + type + "'");
}

Signal window_from_json(const json& w, int L, const std::string& base_dir, const std::string& where)
{
    const auto kind = w.value("kind", std::string("gaussian"));
    if (kind == "gaussian") return gaussian_window(L);
    if (kind == "file") {
        Signal g = read_signal_csv(resolve(base_dir, field<std::string>(w, "path", where)));
        if (g.size() != L) throw config_error(where + ": window length != L");
        return g;
    }
    throw config_error(where + ".kind: unknown window '" + kind + "'");
}

NRule n_rule_from_json(const json& j, const std::string& where)
{
    NRule r;
    if (j.contains("fixed")) r.fixed = field<int>(j, "fixed", where);
    if (j.contains("threshold")) r.threshold = field<double>(j, "threshold", where);
    return r;
}

} // namespace

RegionFamily family_from_json(const nlohmann::json& j, const std::string& base_dir)
{
    const std::string where = "family";
    const auto schema = j.value("schema", std::string());
    if (schema != "tflg-family/1") throw config_error(where + ".schema: expected tflg-family/1, got '" + schema + "'");

    RegionFamily F;
    F.L = field<int>(j, "L", where);
    if (F.L < 16) throw config_error(where + ".L: must be at least 16");
    F.name = j.value("name", std::string("family"));
    F.mode = parse_family_mode(j.value("mode", std::string("exact")));
    F.max_overlap = j.value("max_overlap", 1);
    if (j.contains("n_rule")) F.n_rule = n_rule_from_json(j.at("n_rule"), where + ".n_rule");
    F.analysis_window = window_from_json(j.value("analysis_window", json::object()), F.L, base_dir, where + ".analysis_window");
    if (std::abs(F.analysis_window.norm() - 1) > 1e-8) F.analysis_window.normalize();
    const int margin = j.value("cover_margin", 0);

    const auto& regions = j.at("regions");
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const auto& r = regions[k];
        const std::string rw = where + ".regions[" + std::to_string(k) + "]";
        FamilyMember m;
        m.name = r.value("name", "R" + std::to_string(k + 1));
        m.region = shape_from_json(field<json>(r, "shape", rw), F.L, base_dir, rw + ".shape");
        m.cover = r.contains("cover") ? shape_from_json(r.at("cover"), F.L, base_dir, rw + ".cover")
                                      : m.region.dilate(r.value("cover_margin", margin));
        const auto ab = field<std::array<int, 2>>(r, "lattice", rw);
        try {
            m.lattice = Lattice(F.L, ab[0], ab[1]);
        } catch (const precondition_error& e) {
            throw config_error(rw + ".lattice: " + e.what());
        }
        const json w = r.value("window", json::object());
        m.window = window_from_json(w, F.L, base_dir, rw + ".window");
        if (w.value("tight", false)) m.window = tight_window(GaborSystem(m.window, m.lattice));
        m.n_fixed = r.value("n_eig", -1);
        F.members.push_back(std::move(m));
    }
    F.validate();
    return F;
}

RegionFamily load_family(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open family file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path + ": " + e.what());
    }
    return family_from_json(j, std::filesystem::path(path).parent_path().string());
}

GlobalFrame build_global(const RegionFamily& F)
{
    return build_global(F, F.mode);
}

GlobalFrame build_global(const RegionFamily& F, FamilyMode mode)
{
    GlobalFrame G;
    G.L = F.L;
    G.mode = mode;
    std::vector<CMatrix> a_blocks, s_blocks;
    Eigen::Index total = 0;
    for (std::size_t mu = 0; mu < F.members.size(); ++mu) {
        const auto& m = F.members[mu];
        std::vector<TFPoint> active;
        for (const auto& z : m.lattice.points()) {
            if (m.cover.contains(z)) active.push_back(z);
        }
        if (active.empty()) throw config_error("build_global: region " + m.name + " has no lattice points in its cover");
        for (const auto& z : active) G.provenance.push_back({static_cast<int>(mu), z});

        CMatrix raw = atom_matrix(m.window, active);
        if (mode != FamilyMode::none) {
            if (!m.eigen) throw precondition_error("build_global: family not prepared");
            const auto pm = mode == FamilyMode::exact ? ProjectionMode::exact : ProjectionMode::approximate;
            const EigenspaceProjector P(*m.eigen, m.n_eig, pm);
            CMatrix projected = P.apply(raw);
            if (mode == FamilyMode::exact) a_blocks.push_back(projected);
            else a_blocks.push_back(raw);
            s_blocks.push_back(std::move(projected));
        } else {
            a_blocks.push_back(raw);
            s_blocks.push_back(std::move(raw));
        }
        total += static_cast<Eigen::Index>(active.size());
    }
    G.analysis.resize(F.L, total);
    G.synthesis.resize(F.L, total);
    Eigen::Index col = 0;
    for (std::size_t k = 0; k < a_blocks.size(); ++k) {
        const Eigen::Index n = a_blocks[k].cols();
        G.analysis.middleCols(col, n) = a_blocks[k];
        G.synthesis.middleCols(col, n) = s_blocks[k];
        col += n;
    }
    return G;
}

CMatrix global_frame_operator(const GlobalFrame& G)
{
    if (G.atom_count() == 0) throw precondition_error("global_frame_operator: no atoms");
    CMatrix S = G.synthesis * G.analysis.adjoint();
    if (G.mode != FamilyMode::approximate) S = (S + S.adjoint()).eval() * 0.5;
    return S;
}

FrameBounds global_spectrum(const GlobalFrame& G)
{
    if (G.mode == FamilyMode::approximate) {
        throw precondition_error("global_spectrum: approximate-mode operator is not Hermitian");
    }
    const auto eig = herm_eig(global_frame_operator(G), 1e-10);
    return {std::max(0.0, eig.values(eig.values.size() - 1)), eig.values(0)};
}

double condition_number(const GlobalFrame& G)
{
    const auto fb = global_spectrum(G);
    if (fb.lower <= not_a_frame_ratio * fb.upper) return std::numeric_limits<double>::infinity();
    return fb.condition();
}

double apply_and_error(const GlobalFrame& G, const Signal& f)
{
    const double n = f.norm();
    if (!(n > 0)) throw precondition_error("apply_and_error: zero signal");
    if (f.size() != G.L) throw precondition_error("apply_and_error: length mismatch");
    return (f - G.apply(f)).norm() / n;
}

ReconResult frame_algorithm(const GlobalFrame& G, const Signal& f, int max_iter, double tol)
{
    const auto fb = global_spectrum(G);
    if (fb.lower <= not_a_frame_ratio * fb.upper) throw not_a_frame_error("frame_algorithm: not a frame (singular operator)");
    const double n = f.norm();
    if (!(n > 0)) throw precondition_error("frame_algorithm: zero signal");

    const double lambda = 2 / (fb.lower + fb.upper);
    const Signal Sf = G.apply(f);
    ReconResult out;
    out.f = Signal::Zero(G.L);
    for (int it = 0; it < max_iter; ++it) {
        out.f += lambda * (Sf - G.apply(out.f));
        const double err = (f - out.f).norm() / n;
        out.trace.errors.push_back(err);
        if (err <= tol) {
            out.trace.converged = true;
            break;
        }
    }
    out.trace.rate = fit_rate(out.trace.errors);
    return out;
}

NormEquivalence norm_equivalence_check(const RegionFamily& F, int trials, Rng& rng)
{
    if (trials < 1) throw precondition_error("norm_equivalence_check: need at least one trial");
    for (const auto& m : F.members) {
        if (!m.eigen) throw precondition_error("norm_equivalence_check: family not prepared");
    }
    NormEquivalence out{std::numeric_limits<double>::infinity(), 0};
    for (int t = 0; t < trials; ++t) {
        const Signal f = rng.unit_signal(F.L);
        double s = 0;
        for (const auto& m : F.members) {
            s += (m.eigen->vectors.leftCols(m.n_eig).adjoint() * f).squaredNorm();
        }
        out.min_ratio = std::min(out.min_ratio, s);
        out.max_ratio = std::max(out.max_ratio, s);
    }
    return out;
}

} // namespace tflg
