#pragma once

// Characters of G = (Z/n)^5 and the data they induce on Y: loop values on
// the ten lines, the eigensheaf class L_psi, the twist K_Y + L_psi, the
// log-pole set and the 17-way classification of the twist.

#include "hk/picard.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

/// Representative of x mod n in {0, ..., n-1}.
constexpr int bracket(std::int64_t x, int n) {
    const std::int64_t r = x % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

struct Character {
    int n = 2;
    std::array<int, 5> a{};

    Character() = default;
    /// Residues are normalised with bracket().
    Character(int modulus, const std::array<int, 5>& residues);

    /// a6 = [-(a1 + ... + a5)]
    int a6() const;
    bool is_trivial() const { return a == std::array<int, 5>{}; }

    friend auto operator<=>(const Character&, const Character&) = default;
};

std::string to_string(const Character& psi);

class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Local monodromy of each line under the covering, as an integer linear
/// form in (a1..a5); loop_value is its bracket.
const std::array<std::array<int, 5>, 10>& loop_forms();

int loop_value(const Character& psi, const LinePair& p);
std::array<int, 10> loop_values(const Character& psi);

/// Lines whose loop value differs from n - 1.
LineSet log_poles(const Character& psi);

struct CharacterGeometry {
    std::int64_t F = 0;
    std::array<std::int64_t, 4> lambda{};
    std::int64_t S = 0;
    DivisorClass eigenclass;  // L_psi
    DivisorClass twist;       // K_Y + L_psi
    LineSet logset;
    int case_id = 0;          // 0 for the trivial character, else 1..17
};

/// Throws InconsistencyError if F or some lambda_i is not divisible by n, or
/// if the twist vector disagrees with the (F, S) pattern of its case.
CharacterGeometry geometry_of(const Character& psi);

/// Case number 1..17 of a nonzero twist K_Y + L_psi, read off the vector.
/// Throws InconsistencyError if the vector is not one of the 17 shapes.
int case_of_twist(const DivisorClass& twist);

/// Expected (F/n, S/n) for each case id 1..17.
std::pair<int, int> case_pattern(int case_id);

/// Character psi' with loop_value(psi', p) = loop_value(psi, t(p)).
Character s5_act(const Permutation5& t, const Character& psi);

struct OrbitRep {
    Character rep;  // lexicographically minimal residue tuple of the orbit
    int orbit_size = 0;
};

std::vector<OrbitRep> orbit_representatives(int n);

/// Lexicographically minimal element of the S5-orbit of psi.
Character canonical_character(const Character& psi);

enum class RankExceptionKind { kNone, kApexThree, kStar, kFibre5, kTriangle };

std::string to_string(RankExceptionKind kind);

struct RankException {
    RankExceptionKind kind = RankExceptionKind::kNone;
    int rank = 5;
    LineSet logset;
    /// Twists predicted by the pattern; the actual twist should be one of them.
    std::vector<DivisorClass> predicted_twists;
    bool twist_matches = true;
};

class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Classifies a rank-deficient log-pole set:
///   kApexThree  {A, B1, B2, B3} with A.Bi = 1, Bi.Bj = 0; twist A
///   kStar       the four lines through one index i; twist X_i
///   kFibre5     five lines avoiding one index; twist A - B with B in the
///               set, A outside it, A.B = 0 and A.(sum of the set) = 2
///   kTriangle   three lines avoiding {i,j}; twist E_ij
/// Throws ClassificationError when deficient but matching none of these.
RankException rank_exception_classify(const Character& psi);

}  // namespace hk
