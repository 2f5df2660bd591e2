#include "hk/cb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hk::cb {

ProjectiveElement::ProjectiveElement(Kind kind, const std::array<std::int64_t, 3>& coords) : kind_(kind), c_(coords) {
    const std::int64_t g = std::gcd(std::gcd(c_[0], c_[1]), c_[2]);
    if (g == 0) throw std::invalid_argument("projective element with zero coordinates");
    std::int64_t s = g;
    for (auto x : c_)
        if (x != 0) {
            if (x < 0) s = -g;
            break;
        }
    for (auto& x : c_) x /= s;
}

std::string to_string(const ProjectiveElement& e) {
    std::ostringstream os;
    os << (e.kind() == Kind::kPoint ? "(" : "[") << e[0] << "," << e[1] << "," << e[2]
       << (e.kind() == Kind::kPoint ? ")" : "]");
    return os.str();
}

bool incident(const ProjectiveElement& point, const ProjectiveElement& line) {
    __int128 s = 0;
    for (int i = 0; i < 3; ++i) s += static_cast<__int128>(point[i]) * line[i];
    return s == 0;
}

ProjectiveElement cross(const ProjectiveElement& u, const ProjectiveElement& v) {
    const Kind k = u.kind() == Kind::kLine ? Kind::kPoint : Kind::kLine;
    const __int128 x = static_cast<__int128>(u[1]) * v[2] - static_cast<__int128>(u[2]) * v[1];
    const __int128 y = static_cast<__int128>(u[2]) * v[0] - static_cast<__int128>(u[0]) * v[2];
    const __int128 z = static_cast<__int128>(u[0]) * v[1] - static_cast<__int128>(u[1]) * v[0];
    // reduce in 128 bits before narrowing
    auto g128 = [](__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    const __int128 g = g128(g128(x, y), z);
    if (g == 0) throw std::invalid_argument("cross: elements coincide");
    return {k, {static_cast<std::int64_t>(x / g), static_cast<std::int64_t>(y / g), static_cast<std::int64_t>(z / g)}};
}

SequenceTriple sequence(int n) {
    if (n < -1) throw std::invalid_argument("sequence: n must be at least -1");
    auto pow_m2 = [](int k) {
        std::int64_t p = 1;
        for (int i = 0; i < k; ++i) p *= -2;
        return p;
    };
    SequenceTriple s;
    s.n = n;
    s.a = 1 - pow_m2(n + 1);
    if (n >= 0) {
        const std::int64_t b3 = std::abs(1 - pow_m2(n));
        s.b = b3 / 3;
        s.c = *s.b + (n % 2 == 0 ? 1 : -1);
    }
    return s;
}

ProjectiveElement contract(const ProjectiveElement& e) {
    const auto& c = e.coords();
    if (e.kind() == Kind::kPoint) return ProjectiveElement::point(c[1] + c[2], c[0] + c[2], c[0] + c[1]);
    return ProjectiveElement::line(-c[0] + c[1] + c[2], c[0] - c[1] + c[2], c[0] + c[1] - c[2]);
}

ProjectiveElement contract(const ProjectiveElement& e, int times) {
    ProjectiveElement out = e;
    for (int i = 0; i < times; ++i) out = contract(out);
    return out;
}

ProjectiveElement vertex(int i) {
    if (i == 4) return ProjectiveElement::point(1, 1, 1);
    std::array<std::int64_t, 3> c{};
    c.at(static_cast<std::size_t>(i - 1)) = 1;
    return {Kind::kPoint, c};
}

ProjectiveElement line_at_level(int i, int m) {
    if (i < 1 || i > 3 || m < 0) throw std::invalid_argument("line_at_level: bad index");
    const std::int64_t am = sequence(m).a, am1 = sequence(m - 1).a;
    std::array<std::int64_t, 3> c{am1, am1, am1};
    c[static_cast<std::size_t>(i - 1)] = am;
    return {Kind::kLine, c};
}

ProjectiveElement median(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("median: bad index");
    std::array<std::int64_t, 3> c{};
    const int j = i == 1 ? 2 : 1, k = i == 3 ? 2 : 3;
    c[static_cast<std::size_t>(j - 1)] = 1;
    c[static_cast<std::size_t>(k - 1)] = -1;
    return {Kind::kLine, c};
}

std::vector<ConfigLine> build_configuration(int n) {
    if (n < 0) throw std::invalid_argument("build_configuration: n must be nonnegative");
    std::vector<ConfigLine> out;
    for (int m = 0; m <= n; ++m)
        for (int i = 1; i <= 3; ++i)
            out.push_back({"L" + std::to_string(i) + "(" + std::to_string(m) + ")", line_at_level(i, m)});
    for (int i = 1; i <= 3; ++i) out.push_back({"M" + std::to_string(i), median(i)});
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b)
            if (out[a].line == out[b].line)
                throw ConstructionError("lines " + out[a].name + " and " + out[b].name + " coincide");
    return out;
}

int IncidenceCensus::valency_of(const ProjectiveElement& p) const {
    const auto it = std::lower_bound(points.begin(), points.end(), p,
                                     [](const CensusPoint& cp, const ProjectiveElement& q) { return cp.point < q; });
    return it != points.end() && it->point == p ? it->valency : 0;
}

IncidenceCensus census(int n) {
    IncidenceCensus c;
    c.n = n;
    c.lines = build_configuration(n);
    const std::size_t k = c.lines.size();
    std::map<ProjectiveElement, int> pairs_at;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) ++pairs_at[cross(c.lines[a].line, c.lines[b].line)];
    for (const auto& [p, pairs] : pairs_at) {
        int v = 0;
        for (const auto& l : c.lines) v += incident(p, l.line) ? 1 : 0;
        if (pairs != v * (v - 1) / 2) throw std::logic_error("census: pair count disagrees with incidence count");
        c.points.push_back({p, v});
        ++c.tally[v];
        c.pair_sum += static_cast<std::int64_t>(v) * (v - 1) / 2;
    }
    c.line_pairs = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(k - 1) / 2;
    return c;
}

ExpectedTally expected_tally(int n) {
    const std::int64_t m = n;
    const std::vector<std::tuple<std::string, int, std::int64_t>> families = {
        {"double", 2, 3 * m * (m - 1) + 3},
        {"triple", 3, 4},
        {"quadruple", 4, 3 * m},
        {"median feet", n + 1, 3},
    };
    ExpectedTally t;
    for (const auto& [name, v, count] : families) {
        if (v < 2 || count == 0) continue;
        t.tally[v] += count;
        t.provenance[v].emplace_back(name, count);
    }
    return t;
}

bool CbReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CbCheck& c) { return c.ok; });
}

namespace {

std::string render(const std::map<int, std::int64_t>& m) {
    std::string s = "{";
    for (const auto& [k, v] : m) s += (s.size() > 1 ? "," : "") + std::to_string(k) + ":" + std::to_string(v);
    return s + "}";
}

}  // namespace

CbReport verify_cb_propositions(int max_n) {
    CbReport rep;
    auto add = [&](int n, std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({n, std::move(name), ok, std::move(detail)});
    };
    for (int n = 0; n <= max_n; ++n) {
        const auto s = sequence(n);
        const auto c = census(n);
        add(n, "line count", static_cast<int>(c.lines.size()) == 3 * (n + 2), std::to_string(c.lines.size()));
        add(n, "pair identity", c.pair_sum == c.line_pairs,
            std::to_string(c.pair_sum) + " vs " + std::to_string(c.line_pairs));
        const auto want = expected_tally(n);
        add(n, "valency tally", c.tally == want.tally, render(c.tally) + " vs " + render(want.tally));

        bool levels = true;
        for (int i = 1; i <= 3; ++i)
            for (int m = 0; m <= n; ++m)
                levels = levels && line_at_level(i, m) == contract(line_at_level(i, 0), m);
        add(n, "L_i(m) = A^m L_i", levels);

        const auto e1n = contract(vertex(1), n);
        add(n, "e1(n) = (c,b,b)", e1n == ProjectiveElement::point(*s.c, *s.b, *s.b), to_string(e1n));

        // where the special vertices sit and how many lines pass
        bool vertices = true;
        for (int i = 1; i <= 4; ++i) vertices = vertices && c.valency_of(vertex(i)) == 3;
        for (int i = 1; i <= 3; ++i) {
            for (int m = 1; m <= n; ++m) vertices = vertices && c.valency_of(contract(vertex(i), m)) == 4;
            vertices = vertices && c.valency_of(contract(vertex(i), n + 1)) == 2;
        }
        add(n, "valency of e_i and e_i(m)", vertices);

        const auto hat = ProjectiveElement::point(0, 1, -1);
        int through_hat = 0;
        for (const auto& l : c.lines) through_hat += incident(hat, l.line) ? 1 : 0;
        add(n, "lines through (0,1,-1)", through_hat == n + 1, std::to_string(through_hat));

        const auto meet11 = cross(median(1), line_at_level(1, n));
        const auto s1 = sequence(n + 1);
        add(n, "M1 meet L1(n) = (2b_n, b_{n+1}, b_{n+1}) = e1(n+1)",
            meet11 == ProjectiveElement::point(2 * *s.b, *s1.b, *s1.b) && meet11 == contract(vertex(1), n + 1),
            to_string(meet11));

        if (n >= 1) {
            const auto meet21 = cross(median(2), line_at_level(1, n));
            const auto sp = sequence(n - 1);
            add(n, "M2 meet L1(n) = (b_n, 2b_{n-1}, b_n)",
                meet21 == ProjectiveElement::point(*s.b, 2 * *sp.b, *s.b), to_string(meet21));
        }
        const auto side = cross(line_at_level(1, n), line_at_level(2, 0));
        add(n, "L1(n) meet L2 = (b_n, 0, b_{n+1})", side == ProjectiveElement::point(*s.b, 0, *s1.b), to_string(side));
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct Xy {
    double x, y;
};

std::optional<Xy> place(const ProjectiveElement& p) {
    const double s = static_cast<double>(p[0] + p[1] + p[2]);
    if (s == 0) return std::nullopt;
    const double u = p[0] / s, v = p[1] / s, w = p[2] / s;
    return Xy{u * 0.0 + v * 10.0 + w * 5.0, u * 0.0 + v * 0.0 + w * 8.660254};
}

struct Segment {
    std::string name;
    Xy from, to;
};

std::vector<Segment> segments(const IncidenceCensus& c) {
    std::vector<Segment> out;
    for (int m = 0; m <= c.n; ++m)
        for (int i = 1; i <= 3; ++i) {
            const int j = i == 1 ? 2 : 1, k = i == 3 ? 2 : 3;
            out.push_back({"L" + std::to_string(i) + "(" + std::to_string(m) + ")",
                           *place(contract(vertex(j), m)), *place(contract(vertex(k), m))});
        }
    for (int i = 1; i <= 3; ++i)
        out.push_back({"M" + std::to_string(i), *place(vertex(i)), *place(contract(vertex(i), 1))});
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

std::string to_svg(const IncidenceCensus& c) {
    std::ostringstream os;
    const double scale = 50.0, pad = 30.0;
    auto sx = [&](double x) { return fmt(pad + scale * x); };
    auto sy = [&](double y) { return fmt(pad + scale * (8.660254 - y)); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(2 * pad + 10 * scale) << "\" height=\""
       << fmt(2 * pad + 8.660254 * scale) << "\">\n";
    for (const auto& s : segments(c))
        os << "  <line x1=\"" << sx(s.from.x) << "\" y1=\"" << sy(s.from.y) << "\" x2=\"" << sx(s.to.x) << "\" y2=\""
           << sy(s.to.y) << "\" stroke=\"black\" stroke-width=\"1\"><title>" << s.name << "</title></line>\n";
    for (const auto& p : c.points) {
        const auto xy = place(p.point);
        if (!xy || xy->x < -1e-9 || xy->x > 10 + 1e-9 || xy->y < -1e-9 || xy->y > 8.660254 + 1e-9) continue;
        os << "  <circle cx=\"" << sx(xy->x) << "\" cy=\"" << sy(xy->y) << "\" r=\"" << (1 + p.valency)
           << "\" fill=\"" << (p.valency >= 4 ? "red" : "black") << "\"><title>" << to_string(p.point) << " v"
           << p.valency << "</title></circle>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string to_tikz(const IncidenceCensus& c) {
    std::ostringstream os;
    os << "\\begin{tikzpicture}\n";
    for (const auto& s : segments(c))
        os << "  \\draw (" << fmt(s.from.x) << "," << fmt(s.from.y) << ") -- (" << fmt(s.to.x) << "," << fmt(s.to.y)
           << "); % " << s.name << "\n";
    os << "\\end{tikzpicture}\n";
    return os.str();
}

}  // namespace hk::cb
