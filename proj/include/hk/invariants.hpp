#pragma once

// Invariants of S = HK(n) and the per-n rigidity verdict.

#include "hk/character.hpp"
#include "hk/picard.hpp"
#include "hk/registry.hpp"
#include "hk/vanishing.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hk {

struct SurfaceInvariants {
    int n = 0;
    std::int64_t K2 = 0;
    std::int64_t euler = 0;
    std::int64_t chiO = 0;
    std::int64_t chiTheta = 0;

    friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

SurfaceInvariants closed_form(int n);

/// A stratum of Y with the exponent d such that each point has n^d preimages.
struct Stratum {
    std::string name;
    std::int64_t euler = 0;
    int fibre_exponent = 0;
};

/// Y \ D, the open parts of the ten lines, and the nodes of D, with Euler
/// numbers read off the intersection table.
std::vector<Stratum> stratification(const IntersectionTable& table = IntersectionTable::standard());

std::int64_t euler_by_stratification(int n, const IntersectionTable& table = IntersectionTable::standard());

struct ChiCrosscheck {
    std::int64_t sum = 0;       // sum over all characters of chi_log
    std::int64_t chiTheta = 0;  // from the closed form
    bool ok() const { return sum == chiTheta; }
};

ChiCrosscheck chi_crosscheck(int n);

// ---------------------------------------------------------------------------

struct RigidityOptions {
    bool orbits = true;
    int jobs = 0;  // 0: hardware concurrency
    ProveOptions prove;
};

struct NonVanishingWitness {
    Character rep;  // canonical orbit representative
    std::int64_t orbit_size = 0;
    std::int64_t chi = 0;
    VanishingProblem problem;  // of the representative
};

/// Kinds in report order; "trivial" counts the zero character.
const std::vector<std::string>& tally_keys();

struct RigidityReport {
    int n = 0;
    bool orbit_mode = true;
    std::int64_t total_characters = 0;
    std::int64_t orbit_count = 0;
    std::map<std::string, std::int64_t> tally;  // weighted by characters
    std::vector<std::string> unresolved_keys;   // canonical drop-reduced problems
    std::vector<NonVanishingWitness> nonvanishing;
    std::vector<std::string> registry_ids_used;
    std::int64_t distinct_problems = 0;
    std::int64_t certificates_replayed = 0;
    std::vector<std::string> replay_failures;
    ChiCrosscheck crosscheck;
    bool rigid = false;
    bool crosscheck_ok = false;

    /// Exit status of the rigidity command: 0 rigid, 1 non-vanishing, 2 unresolved.
    int status() const;
};

RigidityReport rigidity_report(int n, const Registry& registry, const RigidityOptions& opts = {});

/// Problems of the n = 5 run left unresolved by drop, gvt and superset,
/// as canonical drop-reduced forms with ids R01, R02, ... in key order.
Registry regenerate_registry(const RigidityOptions& opts = {});

std::string problem_key(const VanishingProblem& p);

}  // namespace hk
