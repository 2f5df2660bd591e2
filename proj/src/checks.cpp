#include "hk/checks.hpp"

#include <algorithm>
#include <set>

namespace hk {

namespace {

template <class F>
void each_character(int n, F&& f) {
    std::array<int, 5> a{};
    for (a[0] = 0; a[0] < n; ++a[0])
        for (a[1] = 0; a[1] < n; ++a[1])
            for (a[2] = 0; a[2] < n; ++a[2])
                for (a[3] = 0; a[3] < n; ++a[3])
                    for (a[4] = 0; a[4] < n; ++a[4]) f(Character(n, a));
}

void note(std::vector<std::string>& out, std::string s) {
    if (out.size() < 8) out.push_back(std::move(s));
}

}  // namespace

std::vector<RankExceptionKind> expected_rank_kinds(int n) {
    if (n == 4) return {RankExceptionKind::kFibre5, RankExceptionKind::kTriangle};
    if (n == 6) return {RankExceptionKind::kApexThree, RankExceptionKind::kStar};
    return {RankExceptionKind::kApexThree};
}

RankSurvey rank_exception_survey(int n) {
    RankSurvey s;
    s.n = n;
    const auto allowed = expected_rank_kinds(n);
    each_character(n, [&](const Character& psi) {
        if (psi.is_trivial()) return;
        const LineSet logset = log_poles(psi);
        if (rank_of(logset) == 5) return;
        ++s.deficient;
        try {
            const auto ex = rank_exception_classify(psi);
            ++s.by_kind[ex.kind];
            if (!ex.twist_matches) {
                ++s.twist_mismatches;
                note(s.problems, "twist mismatch at " + to_string(psi));
            }
            if (std::find(allowed.begin(), allowed.end(), ex.kind) == allowed.end()) {
                ++s.unexpected_kind;
                note(s.problems, to_string(ex.kind) + " at " + to_string(psi));
            }
        } catch (const ClassificationError& e) {
            ++s.unclassified;
            note(s.problems, e.what());
        }
    });
    bool all_seen = true;
    for (auto k : allowed) all_seen = all_seen && s.by_kind.count(k) > 0;
    s.pass = all_seen && s.twist_mismatches == 0 && s.unclassified == 0 && s.unexpected_kind == 0;
    return s;
}

CharacterSurvey character_survey(int n) {
    CharacterSurvey s;
    s.n = n;
    each_character(n, [&](const Character& psi) {
        ++s.characters;
        CharacterGeometry g;
        try {
            g = geometry_of(psi);
        } catch (const InconsistencyError&) {
            ++s.case_failures;
            return;
        }
        bool ok = g.F >= 0 && g.F <= 5 * n && (g.F == 0) == psi.is_trivial();
        std::int64_t lsum = 0;
        for (auto l : g.lambda) {
            ok = ok && l >= 0 && l <= 2 * n;
            lsum += l;
        }
        ok = ok && g.S >= 0 && g.S <= 3 * n && lsum == 2 * g.F - g.S;
        if (!ok) ++s.range_violations;

        const auto values = loop_values(psi);
        DivisorClass rebuilt;
        for (int k = 0; k < 10; ++k) rebuilt += static_cast<std::int64_t>(values[static_cast<std::size_t>(k)]) * class_of(LinePair::from_index(k));
        if (rebuilt != static_cast<std::int64_t>(n) * g.eigenclass) ++s.reconstruction_failures;

        for (int i = 1; i <= 4; ++i)
            if (g.lambda[static_cast<std::size_t>(i - 1)] == 2 * n && loop_value(psi, LinePair(i, 5)) == n - 1)
                ++s.residue_implication_failures;

        if (psi.is_trivial()) {
            if (g.case_id != 0) ++s.case_failures;
        } else if (g.case_id < 1 || g.case_id > 17) {
            ++s.case_failures;
        } else {
            ++s.case_counts[g.case_id];
        }
    });
    return s;
}

}  // namespace hk
