#pragma once

// Picard lattice of the degree-5 Del Pezzo surface Y = Bl_4(P^2).
//
// Classes are integer vectors in the basis (L, E1, E2, E3, E4) with the
// intersection form diag(1, -1, -1, -1, -1). The ten (-1)-curves on Y are
// indexed by unordered pairs {i,j} of {1,...,5}: E_{i5} is the exceptional
// curve over p_i, and E_{ij} (i,j <= 4) is the strict transform of the line
// through the two remaining points.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hk {

struct DivisorClass {
    std::int64_t ell = 0;
    std::array<std::int64_t, 4> e{};

    friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

    DivisorClass& operator+=(const DivisorClass& o) {
        ell += o.ell;
        for (int i = 0; i < 4; ++i) e[i] += o.e[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o) {
        ell -= o.ell;
        for (int i = 0; i < 4; ++i) e[i] -= o.e[i];
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator-(DivisorClass a) { return DivisorClass{} - a; }
    friend DivisorClass operator*(std::int64_t k, DivisorClass a) {
        a.ell *= k;
        for (auto& x : a.e) x *= k;
        return a;
    }

    bool is_zero() const { return *this == DivisorClass{}; }
    std::array<std::int64_t, 5> coords() const { return {ell, e[0], e[1], e[2], e[3]}; }
    static DivisorClass from_coords(const std::array<std::int64_t, 5>& c) {
        return {c[0], {c[1], c[2], c[3], c[4]}};
    }
};

std::ostream& operator<<(std::ostream& os, const DivisorClass& d);
std::string to_string(const DivisorClass& d);

inline constexpr DivisorClass kL{1, {0, 0, 0, 0}};
inline constexpr DivisorClass kCanonical{-3, {1, 1, 1, 1}};

/// Exceptional class E_i, i in 1..4.
DivisorClass exceptional(int i);

std::int64_t pairing(const DivisorClass& a, const DivisorClass& b);

/// Unordered pair {i,j} of distinct indices in 1..5, stored with i < j.
class LinePair {
public:
    LinePair(int i, int j);

    int first() const { return lo_; }
    int second() const { return hi_; }
    bool contains(int k) const { return k == lo_ || k == hi_; }
    /// Position 0..9 in lexicographic order {1,2},{1,3},...,{4,5}.
    int index() const;
    static LinePair from_index(int idx);

    friend auto operator<=>(const LinePair&, const LinePair&) = default;

private:
    int lo_;
    int hi_;
};

std::ostream& operator<<(std::ostream& os, const LinePair& p);
std::string to_string(const LinePair& p);

/// All ten lines in index order.
const std::array<LinePair, 10>& all_lines();

/// Subset of the ten lines, bit k <-> LinePair::from_index(k).
class LineSet {
public:
    constexpr LineSet() = default;
    constexpr explicit LineSet(std::uint16_t bits) : bits_(bits & 0x3FF) {}
    LineSet(std::initializer_list<LinePair> pairs) {
        for (const auto& p : pairs) insert(p);
    }

    static constexpr LineSet full() { return LineSet(0x3FF); }

    constexpr std::uint16_t bits() const { return bits_; }
    bool contains(const LinePair& p) const { return (bits_ >> p.index()) & 1U; }
    bool contains_index(int k) const { return (bits_ >> k) & 1U; }
    void insert(const LinePair& p) { bits_ |= static_cast<std::uint16_t>(1U << p.index()); }
    void erase(const LinePair& p) { bits_ &= static_cast<std::uint16_t>(~(1U << p.index())); }
    int size() const { return __builtin_popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    std::vector<LinePair> members() const;

    friend LineSet operator|(LineSet a, LineSet b) { return LineSet(a.bits_ | b.bits_); }
    friend LineSet operator&(LineSet a, LineSet b) { return LineSet(a.bits_ & b.bits_); }
    /// Set difference.
    friend LineSet operator-(LineSet a, LineSet b) {
        return LineSet(static_cast<std::uint16_t>(a.bits_ & ~b.bits_));
    }
    friend auto operator<=>(const LineSet&, const LineSet&) = default;

private:
    std::uint16_t bits_ = 0;
};

std::ostream& operator<<(std::ostream& os, const LineSet& s);
std::string to_string(const LineSet& s);

DivisorClass class_of(const LinePair& p);
/// Sum of the classes of the lines in s.
DivisorClass class_of(const LineSet& s);

/// Conic-bundle pencil X_i: L - E_i for i <= 4, 2L - E1 - E2 - E3 - E4 for i = 5.
DivisorClass pencil_class(int i);
/// The three reducible fibres of X_i, one per (2,2)-partition of {1..5} \ {i}.
std::array<std::array<LinePair, 2>, 3> pencil_fibres(int i);

/// Rank over Q of the subgroup spanned by the given classes.
int rank_of(std::span<const DivisorClass> classes);
int rank_of(const LineSet& lines);

/// Fraction-free rank of an integer matrix (rows x cols, row-major).
int integer_rank(std::vector<std::vector<std::int64_t>> rows);

/// Bijection of {1,...,5}.
class Permutation5 {
public:
    Permutation5();  // identity
    explicit Permutation5(const std::array<int, 5>& images);

    int operator()(int i) const { return image_[i - 1]; }
    LinePair operator()(const LinePair& p) const;
    LineSet operator()(const LineSet& s) const;

    /// (a * b)(i) = a(b(i)).
    friend Permutation5 operator*(const Permutation5& a, const Permutation5& b);
    Permutation5 inverse() const;
    bool is_identity() const;
    const std::array<int, 5>& images() const { return image_; }

    /// Transposition of i and j.
    static Permutation5 swap(int i, int j);
    /// All 120 permutations in lexicographic order of their image tuples.
    static const std::vector<Permutation5>& all();

    friend auto operator<=>(const Permutation5&, const Permutation5&) = default;

private:
    std::array<int, 5> image_;
};

std::ostream& operator<<(std::ostream& os, const Permutation5& t);

/// Integer 5x5 matrix acting on coordinate vectors (L, E1..E4).
struct LatticeMap {
    std::array<std::array<std::int64_t, 5>, 5> m{};

    DivisorClass operator()(const DivisorClass& d) const;
    friend LatticeMap operator*(const LatticeMap& a, const LatticeMap& b);
    friend bool operator==(const LatticeMap&, const LatticeMap&) = default;
    static LatticeMap identity();
};

/// Lattice automorphism with class_of({i,j}) -> class_of({t(i),t(j)}).
const LatticeMap& lattice_map(const Permutation5& t);
DivisorClass s5_transform(const Permutation5& t, const DivisorClass& c);

/// Intersection numbers of the ten lines, indexed by LinePair::index().
/// This is the raw input of the certificate checker and of the exhaustive
/// dependency verification; it can be corrupted on purpose for fault tests.
class IntersectionTable {
public:
    /// Table computed from pairing() on class_of().
    static IntersectionTable standard();
    /// Table from the |{i,j} & {h,k}| rule, independent of the coordinates.
    static IntersectionTable combinatorial();

    std::int64_t operator()(int p, int q) const { return t_[p][q]; }
    std::int64_t operator()(const LinePair& p, const LinePair& q) const {
        return t_[p.index()][q.index()];
    }
    void set(int p, int q, std::int64_t v) { t_[p][q] = v; }

    /// Intersection numbers of an arbitrary class with the ten lines, using
    /// L = E34 + E15 + E25 and E_i = E_{i5}.
    std::array<std::int64_t, 10> row_of(const DivisorClass& d) const;
    std::array<std::int64_t, 10> row_of(const LineSet& s) const;
    std::int64_t self_intersection(const DivisorClass& d) const;
    int rank_of(const LineSet& s) const;

    /// Structural consistency: symmetry, (-1) diagonal, pencil relations,
    /// Gram rank 5. Returns an empty string when consistent.
    std::string validate() const;

    friend bool operator==(const IntersectionTable&, const IntersectionTable&) = default;

private:
    std::array<std::array<std::int64_t, 10>, 10> t_{};
};

struct DependencyReport {
    bool pass = true;
    std::size_t subsets_checked = 0;
    std::array<std::size_t, 11> deficient_by_size{};
    std::vector<LineSet> counterexamples;
};

/// Exhaustive check of the rank-deficiency patterns of subsets of lines:
/// six lines are deficient iff they avoid one index or are the six pairs
/// meeting some {i,j} in one element (rank 4); five lines are deficient iff
/// they contain two reducible fibres of one pencil (rank 4); seven or more
/// lines always have rank 5.
DependencyReport verify_dependencies(const IntersectionTable& table = IntersectionTable::standard());

}  // namespace hk
