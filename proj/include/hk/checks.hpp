#pragma once

// Exhaustive verification suites shared by the CLI and the acceptance run.

#include "hk/character.hpp"
#include "hk/picard.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hk {

struct RankSurvey {
    int n = 0;
    std::int64_t deficient = 0;
    std::map<RankExceptionKind, std::int64_t> by_kind;
    std::int64_t twist_mismatches = 0;
    std::int64_t unclassified = 0;
    std::int64_t unexpected_kind = 0;
    std::vector<std::string> problems;  // first few offenders
    bool pass = false;
};

/// Kinds allowed for n: {Fibre5, Triangle} for n = 4, {ApexThree, Star}
/// for n = 6, {ApexThree} otherwise.
std::vector<RankExceptionKind> expected_rank_kinds(int n);

/// Every rank-deficient log-pole set over all characters mod n; passes when
/// the kinds seen are exactly the expected ones and every twist matches.
RankSurvey rank_exception_survey(int n);

struct CharacterSurvey {
    int n = 0;
    std::int64_t characters = 0;
    std::int64_t range_violations = 0;       // F, lambda, S ranges, lambda-sum identity
    std::int64_t reconstruction_failures = 0;  // n L_psi = sum of loop value * line
    std::int64_t residue_implication_failures = 0;  // lambda_i = 2n => E_i5 is a log pole
    std::int64_t case_failures = 0;          // inconsistency errors or missing case id
    std::map<int, std::int64_t> case_counts;
    bool pass() const {
        return range_violations == 0 && reconstruction_failures == 0 && residue_implication_failures == 0 &&
               case_failures == 0;
    }
};

CharacterSurvey character_survey(int n);

}  // namespace hk
