#pragma once

// Iterated Campedelli-Burniat line configurations in P^2 over the integers.
//
// Points and lines are primitive integer triples. The contraction A sends
// the vertices e1, e2, e3 of the reference triangle to the midpoints of the
// opposite sides and fixes the barycentre e4 = (1,1,1).

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk::cb {

enum class Kind { kPoint, kLine };

class ProjectiveElement {
public:
    /// Normalises: gcd 1, first nonzero entry positive. Throws on (0,0,0).
    ProjectiveElement(Kind kind, const std::array<std::int64_t, 3>& coords);

    static ProjectiveElement point(std::int64_t x, std::int64_t y, std::int64_t z) {
        return {Kind::kPoint, {x, y, z}};
    }
    static ProjectiveElement line(std::int64_t x, std::int64_t y, std::int64_t z) {
        return {Kind::kLine, {x, y, z}};
    }

    Kind kind() const { return kind_; }
    const std::array<std::int64_t, 3>& coords() const { return c_; }
    std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    friend auto operator<=>(const ProjectiveElement&, const ProjectiveElement&) = default;

private:
    Kind kind_;
    std::array<std::int64_t, 3> c_;
};

std::string to_string(const ProjectiveElement& e);

/// Point on line.
bool incident(const ProjectiveElement& point, const ProjectiveElement& line);
/// Meet of two distinct lines, or join of two distinct points.
ProjectiveElement cross(const ProjectiveElement& u, const ProjectiveElement& v);

struct SequenceTriple {
    int n = 0;
    std::int64_t a = 0;
    /// b_n and c_n are integers for n >= 0 only (b_{-1} = 1/2).
    std::optional<std::int64_t> b;
    std::optional<std::int64_t> c;
};

SequenceTriple sequence(int n);

ProjectiveElement contract(const ProjectiveElement& e);
ProjectiveElement contract(const ProjectiveElement& e, int times);

/// e_i for i = 1..4.
ProjectiveElement vertex(int i);
/// L_i(m) = A^m {x_i = 0}, from the closed formula.
ProjectiveElement line_at_level(int i, int m);
/// Median {x_j = x_k}.
ProjectiveElement median(int i);

struct ConfigLine {
    std::string name;  // "L1(0)", "M2", ...
    ProjectiveElement line;
};

class ConstructionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The 3(n+2) lines L_i(m), 0 <= m <= n, then the three medians.
std::vector<ConfigLine> build_configuration(int n);

struct CensusPoint {
    ProjectiveElement point;
    int valency = 0;
};

struct IncidenceCensus {
    int n = 0;
    std::vector<ConfigLine> lines;
    std::vector<CensusPoint> points;  // sorted by coordinates
    std::map<int, std::int64_t> tally;
    std::int64_t pair_sum = 0;        // sum of C(v, 2)
    std::int64_t line_pairs = 0;      // C(#lines, 2)

    int valency_of(const ProjectiveElement& p) const;
};

IncidenceCensus census(int n);

/// Counts predicted per family: double points 3n(n-1)+3, the four triple
/// points, 3n quadruple points, and three points of valency n+1. Families
/// with equal valency are merged; families of valency < 2 are dropped.
struct ExpectedTally {
    std::map<int, std::int64_t> tally;
    std::map<int, std::vector<std::pair<std::string, std::int64_t>>> provenance;
};

ExpectedTally expected_tally(int n);

struct CbCheck {
    int n = 0;
    std::string name;
    bool ok = false;
    std::string detail;
};

struct CbReport {
    std::vector<CbCheck> checks;
    bool pass() const;
};

CbReport verify_cb_propositions(int max_n);

/// Drawing in the layout of the equilateral reference triangle; medians
/// run from e_i to e_i(1), L_i(m) from e_j(m) to e_k(m).
std::string to_svg(const IncidenceCensus& c);
std::string to_tikz(const IncidenceCensus& c);

}  // namespace hk::cb
