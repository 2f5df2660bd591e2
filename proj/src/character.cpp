#include "hk/character.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hk {

Character::Character(int modulus, const std::array<int, 5>& residues) : n(modulus) {
    if (modulus < 2) throw std::invalid_argument("Character: modulus must be >= 2");
    for (int i = 0; i < 5; ++i) a[i] = bracket(residues[i], n);
}

int Character::a6() const { return bracket(-(a[0] + a[1] + a[2] + a[3] + a[4]), n); }

std::string to_string(const Character& psi) {
    std::ostringstream os;
    os << '(' << psi.a[0] << ',' << psi.a[1] << ',' << psi.a[2] << ',' << psi.a[3] << ',' << psi.a[4] << ')';
    return os.str();
}

const std::array<std::array<int, 5>, 10>& loop_forms() {
    // index order {1,2},{1,3},{1,4},{1,5},{2,3},{2,4},{2,5},{3,4},{3,5},{4,5}
    static const std::array<std::array<int, 5>, 10> forms = {{
        {-1, -1, -1, -1, -1},  // E12 -> -(e1+...+e5)
        {0, 0, 0, 0, 1},       // E13 -> e5
        {1, 0, 0, 0, 0},       // E14 -> e1
        {0, 1, 1, 1, 0},       // E15 -> e2+e3+e4
        {0, 0, 0, 1, 0},       // E23 -> e4
        {0, 1, 0, 0, 0},       // E24 -> e2
        {1, 0, 1, 0, 1},       // E25 -> e1+e3+e5
        {0, 0, 1, 0, 0},       // E34 -> e3
        {0, 0, -1, -1, -1},    // E35 -> -(e3+e4+e5)
        {-1, -1, -1, 0, 0},    // E45 -> -(e1+e2+e3)
    }};
    return forms;
}

namespace {

int eval_form(const std::array<int, 5>& form, const Character& psi) {
    std::int64_t s = 0;
    for (int i = 0; i < 5; ++i) s += static_cast<std::int64_t>(form[i]) * psi.a[i];
    return bracket(s, psi.n);
}

}  // namespace

int loop_value(const Character& psi, const LinePair& p) {
    return eval_form(loop_forms()[static_cast<std::size_t>(p.index())], psi);
}

std::array<int, 10> loop_values(const Character& psi) {
    std::array<int, 10> out{};
    for (int k = 0; k < 10; ++k) out[k] = eval_form(loop_forms()[k], psi);
    return out;
}

LineSet log_poles(const Character& psi) {
    const auto v = loop_values(psi);
    std::uint16_t bits = 0;
    for (int k = 0; k < 10; ++k)
        if (v[k] != psi.n - 1) bits |= static_cast<std::uint16_t>(1U << k);
    return LineSet(bits);
}

// ---------------------------------------------------------------------------

int case_of_twist(const DivisorClass& twist) {
    std::array<std::int64_t, 4> e = twist.e;
    std::sort(e.begin(), e.end());
    using Key = std::pair<std::int64_t, std::array<std::int64_t, 4>>;
    static const std::map<Key, int> table = {
        {{-2, {0, 1, 1, 1}}, 1},     {{-2, {1, 1, 1, 1}}, 2},    {{-1, {-1, 1, 1, 1}}, 3},
        {{-1, {0, 0, 0, 0}}, 4},     {{-1, {0, 0, 0, 1}}, 5},    {{-1, {0, 0, 1, 1}}, 6},
        {{-1, {0, 1, 1, 1}}, 7},     {{0, {-1, 0, 0, 0}}, 8},    {{0, {-1, 0, 0, 1}}, 9},
        {{0, {0, 0, 0, 0}}, 10},     {{0, {-1, 0, 1, 1}}, 11},   {{0, {0, 0, 0, 1}}, 12},
        {{1, {-1, -1, -1, -1}}, 13}, {{1, {-1, -1, -1, 0}}, 14}, {{1, {-1, -1, 0, 0}}, 15},
        {{1, {-1, 0, 0, 0}}, 16},    {{2, {-1, -1, -1, -1}}, 17},
    };
    const auto it = table.find({twist.ell, e});
    if (it == table.end()) throw InconsistencyError("twist " + to_string(twist) + " matches none of the 17 cases");
    return it->second;
}

std::pair<int, int> case_pattern(int case_id) {
    static constexpr std::array<std::pair<int, int>, 18> patterns = {{
        {0, 0},
        {1, 1}, {1, 2},
        {2, 2}, {2, 0}, {2, 1}, {2, 2}, {2, 3},
        {3, 1}, {3, 2}, {3, 2}, {3, 3}, {3, 3},
        {4, 0}, {4, 1}, {4, 2}, {4, 3},
        {5, 2},
    }};
    if (case_id < 1 || case_id > 17) throw std::out_of_range("case_pattern: case id must be in 1..17");
    return patterns[static_cast<std::size_t>(case_id)];
}

CharacterGeometry geometry_of(const Character& psi) {
    const int n = psi.n;
    const auto& a = psi.a;
    auto br = [n](std::int64_t x) -> std::int64_t { return bracket(x, n); };
    const std::int64_t sum = a[0] + a[1] + a[2] + a[3] + a[4];

    CharacterGeometry g;
    g.F = br(a[0]) + br(a[1]) + br(a[2]) + br(a[3]) + br(a[4]) + br(-sum);
    g.lambda[0] = br(a[1]) + br(a[2]) + br(a[3]) - br(a[1] + a[2] + a[3]);
    g.lambda[1] = br(a[0]) + br(a[2]) + br(a[4]) - br(a[0] + a[2] + a[4]);
    g.lambda[2] = br(a[0]) + br(a[1]) + br(-sum) - br(-(a[2] + a[3] + a[4]));
    g.lambda[3] = br(a[3]) + br(a[4]) + br(-sum) - br(-(a[0] + a[1] + a[2]));
    g.S = br(-(a[0] + a[1] + a[2])) + br(a[1] + a[2] + a[3]) + br(a[0] + a[2] + a[4]) +
          br(-(a[2] + a[3] + a[4]));

    if (g.F % n != 0) throw InconsistencyError("F not divisible by n for " + to_string(psi));
    for (auto l : g.lambda)
        if (l % n != 0) throw InconsistencyError("lambda not divisible by n for " + to_string(psi));
    if (g.S % n != 0) throw InconsistencyError("S not divisible by n for " + to_string(psi));

    g.eigenclass.ell = g.F / n;
    for (int i = 0; i < 4; ++i) g.eigenclass.e[i] = -g.lambda[i] / n;
    g.twist = kCanonical + g.eigenclass;
    g.logset = log_poles(psi);

    if (psi.is_trivial()) {
        g.case_id = 0;
        return g;
    }
    g.case_id = case_of_twist(g.twist);
    const auto [f, s] = case_pattern(g.case_id);
    if (g.F != static_cast<std::int64_t>(f) * n || g.S != static_cast<std::int64_t>(s) * n)
        throw InconsistencyError("case " + std::to_string(g.case_id) + " disagrees with F/S pattern for " +
                                 to_string(psi));
    return g;
}

// ---------------------------------------------------------------------------

namespace {

// Row k of the action matrix is the loop form of t(basis line k), where the
// basis lines E14, E24, E34, E23, E13 carry e1..e5.
std::array<std::array<int, 5>, 5> action_matrix(const Permutation5& t) {
    static const std::array<LinePair, 5> basis = {LinePair{1, 4}, LinePair{2, 4}, LinePair{3, 4},
                                                  LinePair{2, 3}, LinePair{1, 3}};
    std::array<std::array<int, 5>, 5> m{};
    for (int k = 0; k < 5; ++k) m[k] = loop_forms()[static_cast<std::size_t>(t(basis[k]).index())];
    return m;
}

const std::vector<std::array<std::array<int, 5>, 5>>& all_action_matrices() {
    static const std::vector<std::array<std::array<int, 5>, 5>> mats = [] {
        std::vector<std::array<std::array<int, 5>, 5>> out;
        for (const auto& t : Permutation5::all()) out.push_back(action_matrix(t));
        return out;
    }();
    return mats;
}

std::array<int, 5> apply_matrix(const std::array<std::array<int, 5>, 5>& m, const std::array<int, 5>& a, int n) {
    std::array<int, 5> out{};
    for (int k = 0; k < 5; ++k) {
        std::int64_t s = 0;
        for (int i = 0; i < 5; ++i) s += static_cast<std::int64_t>(m[k][i]) * a[i];
        out[k] = bracket(s, n);
    }
    return out;
}

}  // namespace

Character s5_act(const Permutation5& t, const Character& psi) {
    Character out;
    out.n = psi.n;
    out.a = apply_matrix(action_matrix(t), psi.a, psi.n);
    return out;
}

Character canonical_character(const Character& psi) {
    Character best = psi;
    for (const auto& m : all_action_matrices()) {
        const auto img = apply_matrix(m, psi.a, psi.n);
        if (img < best.a) best.a = img;
    }
    return best;
}

std::vector<OrbitRep> orbit_representatives(int n) {
    if (n < 2) throw std::invalid_argument("orbit_representatives: n must be >= 2");
    const std::size_t total = static_cast<std::size_t>(n) * n * n * n * n;
    auto encode = [n](const std::array<int, 5>& a) {
        std::size_t code = 0;
        for (int v : a) code = code * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
        return code;
    };
    // Scanning in lexicographic order, the first unvisited element of an
    // orbit is its minimum.
    std::vector<bool> visited(total, false);
    std::vector<OrbitRep> reps;
    const auto& mats = all_action_matrices();
    std::vector<std::size_t> images;
    images.reserve(mats.size());
    for (std::size_t code = 0; code < total; ++code) {
        if (visited[code]) continue;
        std::array<int, 5> a{};
        std::size_t c = code;
        for (int i = 4; i >= 0; --i) {
            a[i] = static_cast<int>(c % static_cast<std::size_t>(n));
            c /= static_cast<std::size_t>(n);
        }
        images.clear();
        for (const auto& m : mats) images.push_back(encode(apply_matrix(m, a, n)));
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        for (auto img : images) visited[img] = true;
        reps.push_back({Character(n, a), static_cast<int>(images.size())});
    }
    return reps;
}

// ---------------------------------------------------------------------------

std::string to_string(RankExceptionKind kind) {
    switch (kind) {
        case RankExceptionKind::kNone: return "none";
        case RankExceptionKind::kApexThree: return "apex_three";
        case RankExceptionKind::kStar: return "star";
        case RankExceptionKind::kFibre5: return "fibre5";
        case RankExceptionKind::kTriangle: return "triangle";
    }
    return "?";
}

namespace {

int common_indices(const LinePair& a, const LinePair& b) {
    return int(b.contains(a.first())) + int(b.contains(a.second()));
}

bool avoids(const LineSet& s, int j) {
    for (const auto& p : s.members())
        if (p.contains(j)) return false;
    return true;
}

}  // namespace

RankException rank_exception_classify(const Character& psi) {
    if (psi.is_trivial()) throw std::invalid_argument("rank_exception_classify: trivial character");
    const auto g = geometry_of(psi);
    RankException ex;
    ex.logset = g.logset;
    ex.rank = rank_of(g.logset);
    if (ex.rank == 5) return ex;

    const auto lines = g.logset.members();
    const int size = static_cast<int>(lines.size());

    if (size == 4) {
        for (const auto& apex : lines) {
            bool ok = true;
            for (const auto& b : lines) {
                if (b == apex) continue;
                if (pairing(class_of(apex), class_of(b)) != 1) ok = false;
                for (const auto& c : lines)
                    if (c != apex && c != b && pairing(class_of(b), class_of(c)) != 0) ok = false;
            }
            if (ok) {
                ex.kind = RankExceptionKind::kApexThree;
                ex.predicted_twists = {class_of(apex)};
                break;
            }
        }
        if (ex.kind == RankExceptionKind::kNone) {
            for (int i = 1; i <= 5; ++i) {
                LineSet star;
                for (int j = 1; j <= 5; ++j)
                    if (j != i) star.insert(LinePair{i, j});
                if (star == g.logset) {
                    ex.kind = RankExceptionKind::kStar;
                    ex.predicted_twists = {pencil_class(i)};
                }
            }
        }
    } else if (size == 5) {
        for (int j = 1; j <= 5 && ex.kind == RankExceptionKind::kNone; ++j) {
            if (!avoids(g.logset, j)) continue;
            ex.kind = RankExceptionKind::kFibre5;
            const auto total = class_of(g.logset);
            for (const auto& b : lines) {
                for (const auto& a : all_lines()) {
                    if (g.logset.contains(a)) continue;
                    if (common_indices(a, b) == 1 && pairing(class_of(a), total) == 2)
                        ex.predicted_twists.push_back(class_of(a) - class_of(b));
                }
            }
        }
    } else if (size == 3) {
        for (const auto& ij : all_lines()) {
            if (avoids(g.logset, ij.first()) && avoids(g.logset, ij.second())) {
                ex.kind = RankExceptionKind::kTriangle;
                ex.predicted_twists = {class_of(ij)};
                break;
            }
        }
    }

    if (ex.kind == RankExceptionKind::kNone)
        throw ClassificationError("rank-deficient log-pole set " + to_string(g.logset) + " of " + to_string(psi) +
                                  " (n=" + std::to_string(psi.n) + ") matches no known pattern");
    ex.twist_matches = std::find(ex.predicted_twists.begin(), ex.predicted_twists.end(), g.twist) !=
                       ex.predicted_twists.end();
    return ex;
}

}  // namespace hk
