#pragma once
#include <memory>
#include <string>
#include <vector>
#include <json.hpp>
#include <tflg/gabor.hpp>
#include <tflg/localframe.hpp>
#include <tflg/random.hpp>
#include <tflg/region.hpp>
#include <tflg/tfloc.hpp>

namespace tflg {

enum class FamilyMode
{
    none,         // raw atoms: quilted system
    exact,        // atoms projected by P_N
    approximate   // analysis by raw atoms, synthesis by H_N-weighted atoms
};

FamilyMode parse_family_mode(const std::string& s);
std::string to_string(FamilyMode m);

/// Eigenspace dimension: fixed, or #{alpha_k > threshold}.
struct NRule
{
    double threshold = 0.5;
    int fixed = -1;   // used when >= 0

    int apply(const EigenSystem& E) const;
};

struct FamilyMember
{
    std::string name;
    Region region;   // Omega_mu
    Region cover;    // Omega*_mu
    Lattice lattice;
    Signal window;   // g^mu
    int n_fixed = -1;   // per-member override of the family rule
    int n_eig = 0;      // N_mu, set by prepare()
    std::shared_ptr<const EigenSystem> eigen;   // of the localization operator on Omega_mu
};

struct RegionFamily
{
    int L = 0;
    std::string name;
    Signal analysis_window;   // phi, unit norm
    FamilyMode mode = FamilyMode::exact;
    int max_overlap = 1;      // declared upper bound on sum_mu chi_Omega_mu
    NRule n_rule;
    std::vector<FamilyMember> members;

    /// Region containment and 1 <= sum_mu chi_Omega_mu <= max_overlap; throws config_error.
    void validate() const;

    /// Computes missing eigen systems and sets every n_eig.
    void prepare();

    /// Covers = regions box-dilated by `margin` cells.
    RegionFamily with_margin(int margin) const;

    /// Regions and covers moved by mu, windows kept; eigen systems are recomputed by prepare().
    RegionFamily translated(TFPoint mu) const;

    std::vector<Region> regions() const;
};

/**
 * Builds a family from JSON. Shapes: disk, rect, polygon, mask (rle or pbm file
 * relative to base_dir). Windows: gaussian or a signal CSV, optionally tightened
 * on the member's lattice. Eigen systems are not computed here.
 */
RegionFamily family_from_json(const nlohmann::json& j, const std::string& base_dir);
RegionFamily load_family(const std::string& path);

struct AtomSource
{
    int member = 0;
    TFPoint lambda;
};

/// Flat atom list S f = sum_k s_k <f, a_k>, with analysis atoms a_k and synthesis atoms s_k.
struct GlobalFrame
{
    int L = 0;
    FamilyMode mode = FamilyMode::none;
    CMatrix analysis;    // L x K
    CMatrix synthesis;   // L x K
    std::vector<AtomSource> provenance;

    int atom_count() const { return static_cast<int>(provenance.size()); }
    Signal apply(const Signal& f) const { return synthesis * (analysis.adjoint() * f); }
};

GlobalFrame build_global(const RegionFamily& F);
GlobalFrame build_global(const RegionFamily& F, FamilyMode mode);

CMatrix global_frame_operator(const GlobalFrame& G);

/// Extreme eigenvalues of S; lower is 0 when S is singular. Throws in approximate mode.
FrameBounds global_spectrum(const GlobalFrame& G);

/// B / A of S; infinity when A <= not_a_frame_ratio * B.
double condition_number(const GlobalFrame& G);

/// ||f - S f|| / ||f||.
double apply_and_error(const GlobalFrame& G, const Signal& f);

/**
 * Richardson iteration f_{n+1} = f_n + 2/(A+B) (S f - S f_n) from f_0 = 0,
 * A, B from the spectrum of S. Trace holds ||f - f_n|| / ||f||.
 */
ReconResult frame_algorithm(const GlobalFrame& G, const Signal& f, int max_iter = 5000, double tol = 1e-10);

struct NormEquivalence
{
    double min_ratio = 0;
    double max_ratio = 0;
};

/// Range of sum_mu sum_{k <= N_mu} |<f, psi_k^mu>|^2 over random unit f.
NormEquivalence norm_equivalence_check(const RegionFamily& F, int trials, Rng& rng);

} // namespace tflg
