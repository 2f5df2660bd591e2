#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include "hk/character.hpp"
#include "hk/picard.hpp"

#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

struct Frac {
    __int128 num = 0, den = 1;
    static __int128 g(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    Frac() = default;
    Frac(__int128 n, __int128 d = 1) : num(n), den(d) {
        if (den < 0) num = -num, den = -den;
        const __int128 k = g(num, den);
        if (k > 1) num /= k, den /= k;
    }
    Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
    Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
    Frac operator/(const Frac& o) const { return Frac(num * o.den, den * o.num); }
    bool zero() const { return num == 0; }
};

/// Gauss-Jordan over the rationals.
inline int rational_rank(const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty()) return 0;
    std::vector<std::vector<Frac>> m;
    for (const auto& r : rows) {
        std::vector<Frac> fr;
        for (auto x : r) fr.emplace_back(x);
        m.push_back(fr);
    }
    const std::size_t cols = m[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][c].zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        const auto& pr = m[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c].zero()) continue;
            const Frac f = m[r][c] / pr[c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] - f * pr[k];
        }
        ++rank;
    }
    return rank;
}

/// Coefficients of the line {i,j} in (L, E1..E4), written out by hand.
inline std::array<std::int64_t, 5> line_coords(int i, int j) {
    if (i > j) std::swap(i, j);
    std::array<std::int64_t, 5> c{};
    if (j == 5) {
        c[static_cast<std::size_t>(i)] = 1;
        return c;
    }
    c[0] = 1;
    for (int h = 1; h <= 4; ++h)
        if (h != i && h != j) c[static_cast<std::size_t>(h)] = -1;
    return c;
}

inline int overlap_rule(int i, int j, int h, int k) {
    const int common = (i == h) + (i == k) + (j == h) + (j == k);
    return common == 2 ? -1 : common == 1 ? 0 : 1;
}

inline int mod(std::int64_t x, int n) { return static_cast<int>(((x % n) + n) % n); }

/// Loop values read directly off the monodromy table, indexed by pair order
/// {1,2},{1,3},{1,4},{1,5},{2,3},{2,4},{2,5},{3,4},{3,5},{4,5}.
inline std::array<int, 10> loop_table(int n, const std::array<int, 5>& a) {
    const std::int64_t a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4];
    return {mod(-(a1 + a2 + a3 + a4 + a5), n), mod(a5, n), mod(a1, n), mod(a2 + a3 + a4, n),
            mod(a4, n), mod(a2, n), mod(a1 + a3 + a5, n), mod(a3, n),
            mod(-(a3 + a4 + a5), n), mod(-(a1 + a2 + a3), n)};
}

struct Twisted {
    std::array<std::int64_t, 5> delta{};
    std::uint16_t logbits = 0;
    bool integral = true;
};

/// Delta = K_Y + (1/n) sum of loop value * line, and the log poles, from the loop table alone.
inline Twisted twist_from_loops(int n, const std::array<int, 5>& a) {
    const auto v = loop_table(n, a);
    std::array<std::int64_t, 5> s{};
    static const int pairs[10][2] = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
    Twisted t;
    for (int k = 0; k < 10; ++k) {
        const auto c = line_coords(pairs[k][0], pairs[k][1]);
        for (int q = 0; q < 5; ++q) s[static_cast<std::size_t>(q)] += v[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(q)];
        if (v[static_cast<std::size_t>(k)] != n - 1) t.logbits |= static_cast<std::uint16_t>(1U << k);
    }
    const std::array<std::int64_t, 5> canon{-3, 1, 1, 1, 1};
    for (int q = 0; q < 5; ++q) {
        if (s[static_cast<std::size_t>(q)] % n != 0) t.integral = false;
        t.delta[static_cast<std::size_t>(q)] = canon[static_cast<std::size_t>(q)] + s[static_cast<std::size_t>(q)] / n;
    }
    return t;
}

inline std::int64_t form(const std::array<std::int64_t, 5>& x, const std::array<std::int64_t, 5>& y) {
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3] - x[4] * y[4];
}

/// Euler characteristic of the twisted log sheaf, computed with coordinates.
inline std::int64_t chi(std::uint16_t logbits, const std::array<std::int64_t, 5>& delta) {
    static const int pairs[10][2] = {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}};
    std::int64_t c = form(delta, delta) - 5;
    for (int k = 0; k < 10; ++k)
        if ((logbits >> k) & 1U) c += 1 + form(line_coords(pairs[k][0], pairs[k][1]), delta);
    return c;
}

/// Number of S5-orbits on characters mod n, by Burnside: a permutation fixes
/// a character when its loop table is invariant under the induced relabelling.
inline std::int64_t burnside_orbits(int n) {
    std::vector<std::array<int, 5>> perms;
    std::array<int, 5> p{1, 2, 3, 4, 5};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto idx = [](int i, int j) {
        if (i > j) std::swap(i, j);
        static const int off[5] = {0, 4, 7, 9, 10};
        return off[i - 1] + (j - i - 1);
    };
    std::int64_t fixed = 0;
    std::array<int, 5> a{};
    for (a[0] = 0; a[0] < n; ++a[0])
        for (a[1] = 0; a[1] < n; ++a[1])
            for (a[2] = 0; a[2] < n; ++a[2])
                for (a[3] = 0; a[3] < n; ++a[3])
                    for (a[4] = 0; a[4] < n; ++a[4]) {
                        const auto v = loop_table(n, a);
                        for (const auto& t : perms) {
                            bool fix = true;
                            for (int i = 1; i <= 5 && fix; ++i)
                                for (int j = i + 1; j <= 5 && fix; ++j)
                                    fix = v[static_cast<std::size_t>(idx(i, j))] ==
                                          v[static_cast<std::size_t>(idx(t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(j - 1)]))];
                            fixed += fix;
                        }
                    }
    return fixed / 120;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611ULL);
    return g;
}

inline hk::Permutation5 random_perm() {
    const auto& all = hk::Permutation5::all();
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng())];
}

inline hk::Character random_character(int n) {
    std::uniform_int_distribution<int> d(0, n - 1);
    return hk::Character(n, {d(rng()), d(rng()), d(rng()), d(rng()), d(rng())});
}

}  // namespace oracle
