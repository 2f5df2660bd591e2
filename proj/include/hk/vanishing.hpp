#pragma once

// Vanishing of H^1 for twisted logarithmic sheaves Omega^1_Y(log T)(Delta)
// on the degree-5 Del Pezzo surface.
//
// A problem is a pair (T, Delta): the sheaf depends on nothing else, so
// problems coming from different characters or different n are shared.
// The engine produces certificates that can be replayed by check() using
// only the raw intersection table of the ten lines.

#include "hk/picard.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hk {

class Registry;

struct VanishingProblem {
    LineSet logset;
    DivisorClass twist;
    /// H^2 = 0 is an axiom supplied by the caller; character problems with n >= 3 set it.
    bool h2_zero = false;
    /// Number of blown-up points.
    int blown_up_points = 4;

    friend auto operator<=>(const VanishingProblem&, const VanishingProblem&) = default;
};

std::string to_string(const VanishingProblem& p);

/// Twist^2 - (m+1) + sum over T of (1 + E.twist).
std::int64_t chi_log(const LineSet& logset, const DivisorClass& twist, int blown_up_points = 4);
inline std::int64_t chi_log(const VanishingProblem& p) {
    return chi_log(p.logset, p.twist, p.blown_up_points);
}

// ---------------------------------------------------------------------------
// Vanishing criterion with a decomposition twist = A - B.

class MalformedWitness : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GvtReport {
    bool h2_zero = false;
    bool residue_degrees = false;  // every E in A & T has E.twist >= -1
    bool positivity = false;       // every E in A meets (T \ B) + (A \ T) at least once
    bool rank_bound = false;
    int rank = 0;                  // rank of lines of T|A orthogonal to every line of B
    std::int64_t required_rank = 0;
    std::int64_t correction = 0;   // R
    bool passed() const { return h2_zero && residue_degrees && positivity && rank_bound; }
};

/// Throws MalformedWitness unless A & B is empty, B is inside T and
/// class(A) - class(B) equals the twist.
GvtReport gvt_check(const VanishingProblem& prob, const LineSet& a, const LineSet& b);

struct GvtWitness {
    LineSet a;
    LineSet b;
    friend auto operator<=>(const GvtWitness&, const GvtWitness&) = default;
};

/// First passing witness in the order: B by (size, bits) over subsets of T,
/// then A by (size, bits) over subsets of the other lines with the right class.
std::optional<GvtWitness> gvt_search(const VanishingProblem& prob);

// ---------------------------------------------------------------------------
// Residue-sequence moves.

struct DropResult {
    VanishingProblem reduced;
    LineSet removed;
};

/// Removes the lines E of T with E.twist = -1. Their residue terms are
/// O(-1) on P^1, so H^0 and H^1 are unchanged.
DropResult drop_reduce(const VanishingProblem& prob);

// ---------------------------------------------------------------------------
// Certificates.

enum class CertificateKind { kGvt, kDrop, kSuperset, kExternalAxiom, kNonVanishing, kUnresolved };

std::string to_string(CertificateKind kind);

struct Certificate;
using CertificatePtr = std::shared_ptr<const Certificate>;

struct GvtProof {
    GvtWitness witness;
};
struct DropProof {
    LineSet removed;
    CertificatePtr inner;
};
struct SupersetProof {
    LineSet added;
    std::int64_t slack = 0;
    CertificatePtr inner;
};
struct AxiomProof {
    std::string registry_id;
    /// relabel(problem) is the registry entry as stored.
    Permutation5 relabel;
};
struct NonVanishingProof {
    std::int64_t chi = 0;
    std::int64_t h1_lower_bound = 0;
};
struct UnresolvedProof {};

struct Certificate {
    VanishingProblem problem;
    std::variant<GvtProof, DropProof, SupersetProof, AxiomProof, NonVanishingProof, UnresolvedProof> proof;

    CertificateKind kind() const;
    /// True for certificates asserting H^1 = 0.
    bool proves_vanishing() const;
    /// Tally label: the strongest rule used anywhere in the chain, ordered
    /// external axiom > superset > drop > gvt.
    CertificateKind decisive_kind() const;
};

class TransferInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Certificate for (T, twist) from a vanishing certificate for
/// (T | added, twist): h^1(T) <= chi(T | added) - chi(T) = slack <= 0.
Certificate superset_transfer(const VanishingProblem& prob, const LineSet& added, CertificatePtr inner);

/// Relabels a certificate for P into one for t(P).
Certificate transform(const Certificate& cert, const Permutation5& t);

// ---------------------------------------------------------------------------
// Symmetry.

struct CanonicalForm {
    VanishingProblem problem;
    /// t(original) == problem
    Permutation5 relabel;
};

/// Apply t to the problem: lines by index permutation, twist by the lattice map.
VanishingProblem transform(const VanishingProblem& p, const Permutation5& t);
/// Minimum of (logset bits, twist) over the S5-orbit.
CanonicalForm canonical_form(const VanishingProblem& p);

// ---------------------------------------------------------------------------

struct ProveOptions {
    int superset_depth = 2;
    /// Switching gvt off leaves drop, registry and superset; used to exercise the axiom path.
    bool use_gvt = true;
};

/// Deterministic pipeline: chi < 0 -> non-vanishing; otherwise drop_reduce,
/// gvt_search (reduced, then original), registry lookup, superset transfers
/// up to the depth limit. Works on the canonical form, so the result does
/// not depend on how the problem is labelled.
Certificate prove(const VanishingProblem& prob, const Registry& registry, const ProveOptions& opts = {});

/// Memoising front end keyed on the canonical form; the cache never changes results.
class Prover {
public:
    Prover(const Registry& registry, ProveOptions opts) : registry_(registry), opts_(opts) {}

    CertificatePtr prove(const VanishingProblem& prob);
    std::size_t cache_size() const { return cache_.size(); }

private:
    const Registry& registry_;
    ProveOptions opts_;
    std::map<VanishingProblem, CertificatePtr> cache_;
};

// ---------------------------------------------------------------------------
// Independent replay.

struct CheckResult {
    bool ok = true;
    std::string error;
    explicit operator bool() const { return ok; }
};

/// Re-validates a certificate from the intersection table alone: every
/// intersection number, rank, chi and class identity is recomputed.
CheckResult check(const Certificate& cert, const IntersectionTable& table, const Registry& registry);

}  // namespace hk
