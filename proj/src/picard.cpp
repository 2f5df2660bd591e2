#include "hk/picard.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hk {

std::ostream& operator<<(std::ostream& os, const DivisorClass& d) {
    os << '(' << d.ell << ';' << d.e[0] << ',' << d.e[1] << ',' << d.e[2] << ',' << d.e[3] << ')';
    return os;
}

std::string to_string(const DivisorClass& d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

DivisorClass exceptional(int i) {
    if (i < 1 || i > 4) throw std::out_of_range("exceptional: index must be in 1..4");
    DivisorClass d;
    d.e[i - 1] = 1;
    return d;
}

std::int64_t pairing(const DivisorClass& a, const DivisorClass& b) {
    std::int64_t s = a.ell * b.ell;
    for (int i = 0; i < 4; ++i) s -= a.e[i] * b.e[i];
    return s;
}

// ---------------------------------------------------------------------------

LinePair::LinePair(int i, int j) {
    if (i < 1 || i > 5 || j < 1 || j > 5 || i == j)
        throw std::invalid_argument("LinePair: need two distinct indices in 1..5");
    lo_ = std::min(i, j);
    hi_ = std::max(i, j);
}

int LinePair::index() const {
    // offsets of the rows {1,*}, {2,*}, {3,*}, {4,*}
    static constexpr int kOffset[5] = {0, 4, 7, 9, 10};
    return kOffset[lo_ - 1] + (hi_ - lo_ - 1);
}

LinePair LinePair::from_index(int idx) { return all_lines().at(static_cast<std::size_t>(idx)); }

const std::array<LinePair, 10>& all_lines() {
    static const std::array<LinePair, 10> lines = {
        LinePair{1, 2}, LinePair{1, 3}, LinePair{1, 4}, LinePair{1, 5}, LinePair{2, 3},
        LinePair{2, 4}, LinePair{2, 5}, LinePair{3, 4}, LinePair{3, 5}, LinePair{4, 5}};
    return lines;
}

std::ostream& operator<<(std::ostream& os, const LinePair& p) {
    return os << 'E' << p.first() << p.second();
}

std::string to_string(const LinePair& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

std::vector<LinePair> LineSet::members() const {
    std::vector<LinePair> out;
    for (int k = 0; k < 10; ++k)
        if (contains_index(k)) out.push_back(LinePair::from_index(k));
    return out;
}

std::ostream& operator<<(std::ostream& os, const LineSet& s) {
    os << '{';
    bool first = true;
    for (const auto& p : s.members()) {
        if (!first) os << ',';
        os << p;
        first = false;
    }
    return os << '}';
}

std::string to_string(const LineSet& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

// ---------------------------------------------------------------------------

DivisorClass class_of(const LinePair& p) {
    if (p.second() == 5) return exceptional(p.first());
    // strict transform of the line through the two points not in p
    DivisorClass d = kL;
    for (int k = 1; k <= 4; ++k)
        if (!p.contains(k)) d.e[k - 1] = -1;
    return d;
}

DivisorClass class_of(const LineSet& s) {
    DivisorClass d;
    for (const auto& p : s.members()) d += class_of(p);
    return d;
}

DivisorClass pencil_class(int i) {
    if (i < 1 || i > 5) throw std::out_of_range("pencil_class: index must be in 1..5");
    if (i == 5) return {2, {-1, -1, -1, -1}};
    return kL - exceptional(i);
}

std::array<std::array<LinePair, 2>, 3> pencil_fibres(int i) {
    if (i < 1 || i > 5) throw std::out_of_range("pencil_fibres: index must be in 1..5");
    std::array<int, 4> rest{};
    int k = 0;
    for (int j = 1; j <= 5; ++j)
        if (j != i) rest[k++] = j;
    const int a = rest[0];
    return {{{LinePair{a, rest[1]}, LinePair{rest[2], rest[3]}},
             {LinePair{a, rest[2]}, LinePair{rest[1], rest[3]}},
             {LinePair{a, rest[3]}, LinePair{rest[1], rest[2]}}}};
}

// ---------------------------------------------------------------------------

int integer_rank(std::vector<std::vector<std::int64_t>> rows) {
    // Bareiss fraction-free elimination; entries stay bounded by minors.
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    int rank = 0;
    std::int64_t prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                const __int128 v = static_cast<__int128>(rows[r][c]) * rows[i][j] -
                                   static_cast<__int128>(rows[i][c]) * rows[r][j];
                rows[i][j] = static_cast<std::int64_t>(v / prev);
            }
            rows[i][c] = 0;
        }
        prev = rows[r][c];
        ++r;
        ++rank;
    }
    return rank;
}

int rank_of(std::span<const DivisorClass> classes) {
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(classes.size());
    for (const auto& d : classes) {
        const auto c = d.coords();
        rows.emplace_back(c.begin(), c.end());
    }
    return integer_rank(std::move(rows));
}

int rank_of(const LineSet& lines) {
    static const std::array<int, 1024> table = [] {
        std::array<int, 1024> t{};
        for (int mask = 0; mask < 1024; ++mask) {
            std::vector<DivisorClass> cs;
            for (const auto& p : LineSet(static_cast<std::uint16_t>(mask)).members())
                cs.push_back(class_of(p));
            t[static_cast<std::size_t>(mask)] = rank_of(cs);
        }
        return t;
    }();
    return table[lines.bits()];
}

// ---------------------------------------------------------------------------

Permutation5::Permutation5() : image_{1, 2, 3, 4, 5} {}

Permutation5::Permutation5(const std::array<int, 5>& images) : image_(images) {
    std::array<bool, 5> seen{};
    for (int v : image_) {
        if (v < 1 || v > 5 || seen[v - 1]) throw std::invalid_argument("Permutation5: not a bijection");
        seen[v - 1] = true;
    }
}

LinePair Permutation5::operator()(const LinePair& p) const {
    return LinePair{(*this)(p.first()), (*this)(p.second())};
}

LineSet Permutation5::operator()(const LineSet& s) const {
    LineSet out;
    for (const auto& p : s.members()) out.insert((*this)(p));
    return out;
}

Permutation5 operator*(const Permutation5& a, const Permutation5& b) {
    std::array<int, 5> img{};
    for (int i = 1; i <= 5; ++i) img[i - 1] = a(b(i));
    return Permutation5(img);
}

Permutation5 Permutation5::inverse() const {
    std::array<int, 5> img{};
    for (int i = 1; i <= 5; ++i) img[image_[i - 1] - 1] = i;
    return Permutation5(img);
}

bool Permutation5::is_identity() const { return *this == Permutation5{}; }

Permutation5 Permutation5::swap(int i, int j) {
    std::array<int, 5> img{1, 2, 3, 4, 5};
    std::swap(img.at(static_cast<std::size_t>(i - 1)), img.at(static_cast<std::size_t>(j - 1)));
    return Permutation5(img);
}

const std::vector<Permutation5>& Permutation5::all() {
    static const std::vector<Permutation5> perms = [] {
        std::vector<Permutation5> out;
        std::array<int, 5> img{1, 2, 3, 4, 5};
        do {
            out.emplace_back(img);
        } while (std::next_permutation(img.begin(), img.end()));
        return out;
    }();
    return perms;
}

std::ostream& operator<<(std::ostream& os, const Permutation5& t) {
    os << '[';
    for (int i = 1; i <= 5; ++i) os << t(i) << (i < 5 ? " " : "");
    return os << ']';
}

// ---------------------------------------------------------------------------

DivisorClass LatticeMap::operator()(const DivisorClass& d) const {
    const auto c = d.coords();
    std::array<std::int64_t, 5> out{};
    for (int r = 0; r < 5; ++r)
        for (int k = 0; k < 5; ++k) out[r] += m[r][k] * c[k];
    return DivisorClass::from_coords(out);
}

LatticeMap operator*(const LatticeMap& a, const LatticeMap& b) {
    LatticeMap out;
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c)
            for (int k = 0; k < 5; ++k) out.m[r][c] += a.m[r][k] * b.m[k][c];
    return out;
}

LatticeMap LatticeMap::identity() {
    LatticeMap id;
    for (int i = 0; i < 5; ++i) id.m[i][i] = 1;
    return id;
}

namespace {

// Basis images: E_i = E_{i5} and L = E_{34} + E_{15} + E_{25}.
LatticeMap build_lattice_map(const Permutation5& t) {
    std::array<DivisorClass, 5> cols;
    cols[0] = class_of(t(LinePair{3, 4})) + class_of(t(LinePair{1, 5})) + class_of(t(LinePair{2, 5}));
    for (int i = 1; i <= 4; ++i) cols[i] = class_of(t(LinePair{i, 5}));
    LatticeMap out;
    for (int c = 0; c < 5; ++c) {
        const auto v = cols[c].coords();
        for (int r = 0; r < 5; ++r) out.m[r][c] = v[r];
    }
    return out;
}

}  // namespace

const LatticeMap& lattice_map(const Permutation5& t) {
    static const std::vector<LatticeMap> maps = [] {
        std::vector<LatticeMap> out;
        for (const auto& p : Permutation5::all()) out.push_back(build_lattice_map(p));
        return out;
    }();
    const auto& perms = Permutation5::all();
    const auto it = std::lower_bound(perms.begin(), perms.end(), t);
    return maps[static_cast<std::size_t>(it - perms.begin())];
}

DivisorClass s5_transform(const Permutation5& t, const DivisorClass& c) { return lattice_map(t)(c); }

// ---------------------------------------------------------------------------

IntersectionTable IntersectionTable::standard() {
    IntersectionTable t;
    for (int p = 0; p < 10; ++p)
        for (int q = 0; q < 10; ++q)
            t.t_[p][q] = pairing(class_of(LinePair::from_index(p)), class_of(LinePair::from_index(q)));
    return t;
}

IntersectionTable IntersectionTable::combinatorial() {
    IntersectionTable t;
    for (int p = 0; p < 10; ++p) {
        for (int q = 0; q < 10; ++q) {
            const auto a = LinePair::from_index(p);
            const auto b = LinePair::from_index(q);
            const int common = int(b.contains(a.first())) + int(b.contains(a.second()));
            t.t_[p][q] = common == 2 ? -1 : (common == 1 ? 0 : 1);
        }
    }
    return t;
}

std::array<std::int64_t, 10> IntersectionTable::row_of(const DivisorClass& d) const {
    std::array<std::int64_t, 10> out{};
    static const int kE34 = LinePair{3, 4}.index();
    static const int kE15 = LinePair{1, 5}.index();
    static const int kE25 = LinePair{2, 5}.index();
    for (int q = 0; q < 10; ++q) {
        std::int64_t v = d.ell * (t_[kE34][q] + t_[kE15][q] + t_[kE25][q]);
        for (int i = 1; i <= 4; ++i) v += d.e[i - 1] * t_[LinePair{i, 5}.index()][q];
        out[q] = v;
    }
    return out;
}

std::array<std::int64_t, 10> IntersectionTable::row_of(const LineSet& s) const {
    std::array<std::int64_t, 10> out{};
    for (int p = 0; p < 10; ++p)
        if (s.contains_index(p))
            for (int q = 0; q < 10; ++q) out[q] += t_[p][q];
    return out;
}

std::int64_t IntersectionTable::self_intersection(const DivisorClass& d) const {
    // D.D = ell * (D.L) + sum e_i (D.E_i), with D.L read off the E34+E15+E25 columns.
    const auto row = row_of(d);
    std::int64_t dl = row[LinePair{3, 4}.index()] + row[LinePair{1, 5}.index()] + row[LinePair{2, 5}.index()];
    std::int64_t s = d.ell * dl;
    for (int i = 1; i <= 4; ++i) s += d.e[i - 1] * row[LinePair{i, 5}.index()];
    return s;
}

int IntersectionTable::rank_of(const LineSet& s) const {
    // The lines span Pic(Y) and the form is non-degenerate, so the rank of a
    // set of lines equals the rank of its rows in the intersection table.
    std::vector<std::vector<std::int64_t>> rows;
    for (int p = 0; p < 10; ++p)
        if (s.contains_index(p)) rows.emplace_back(t_[p].begin(), t_[p].end());
    return integer_rank(std::move(rows));
}

std::string IntersectionTable::validate() const {
    std::ostringstream err;
    for (int p = 0; p < 10; ++p) {
        if (t_[p][p] != -1) err << "diagonal entry " << LinePair::from_index(p) << " is " << t_[p][p] << "; ";
        for (int q = p + 1; q < 10; ++q)
            if (t_[p][q] != t_[q][p])
                err << "asymmetric entry " << LinePair::from_index(p) << "," << LinePair::from_index(q) << "; ";
    }
    for (int i = 1; i <= 5; ++i) {
        const auto fibres = pencil_fibres(i);
        std::array<std::array<std::int64_t, 10>, 3> sums{};
        for (int f = 0; f < 3; ++f)
            sums[f] = row_of(LineSet{fibres[f][0], fibres[f][1]});
        if (sums[0] != sums[1] || sums[0] != sums[2]) err << "pencil " << i << " fibres disagree; ";
    }
    if (rank_of(LineSet::full()) != 5) err << "Gram rank is not 5; ";
    return err.str();
}

// ---------------------------------------------------------------------------

namespace {

bool avoids_an_index(const LineSet& s) {
    for (int j = 1; j <= 5; ++j) {
        bool hit = false;
        for (const auto& p : s.members()) hit = hit || p.contains(j);
        if (!hit) return true;
    }
    return false;
}

// The six pairs meeting {i,j} in exactly one element.
bool is_mixed_six(const LineSet& s) {
    for (const auto& ij : all_lines()) {
        LineSet want;
        for (const auto& p : all_lines()) {
            const int common = int(p.contains(ij.first())) + int(p.contains(ij.second()));
            if (common == 1) want.insert(p);
        }
        if (want == s) return true;
    }
    return false;
}

bool has_two_fibres_of_a_pencil(const LineSet& s) {
    for (int j = 1; j <= 5; ++j) {
        int fibres = 0;
        for (const auto& f : pencil_fibres(j)) fibres += int(s.contains(f[0]) && s.contains(f[1]));
        if (fibres >= 2) return true;
    }
    return false;
}

}  // namespace

DependencyReport verify_dependencies(const IntersectionTable& table) {
    DependencyReport rep;
    for (int mask = 0; mask < 1024; ++mask) {
        const LineSet s(static_cast<std::uint16_t>(mask));
        const int k = s.size();
        if (k < 5) continue;
        ++rep.subsets_checked;
        const int r = table.rank_of(s);
        if (r < 5) ++rep.deficient_by_size[static_cast<std::size_t>(k)];
        bool ok = true;
        if (k == 5) {
            const bool predicted = has_two_fibres_of_a_pencil(s);
            ok = predicted ? r == 4 : r == 5;
        } else if (k == 6) {
            const bool predicted = avoids_an_index(s) || is_mixed_six(s);
            ok = predicted ? r == 4 : r == 5;
        } else {
            ok = r == 5;
        }
        if (!ok) rep.counterexamples.push_back(s);
    }
    rep.pass = rep.counterexamples.empty();
    return rep;
}

}  // namespace hk
