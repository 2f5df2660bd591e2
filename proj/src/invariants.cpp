#include "hk/invariants.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <thread>

namespace hk {

SurfaceInvariants closed_form(int n) {
    if (n < 2) throw std::invalid_argument("closed_form: n must be at least 2");
    SurfaceInvariants s;
    s.n = n;
    const std::int64_t m = n;
    s.K2 = 5 * (m - 2) * (m - 2) * m * m * m;
    s.euler = m * m * m * (2 * m * m - 10 * m + 15);
    if ((s.K2 + s.euler) % 12 != 0) throw std::logic_error("closed_form: Noether identity not integral");
    s.chiO = (s.K2 + s.euler) / 12;
    s.chiTheta = 2 * s.K2 - 10 * s.chiO;
    return s;
}

std::vector<Stratum> stratification(const IntersectionTable& table) {
    // b2(Y) is the rank of the lattice spanned by the lines; b0 = b4 = 1, odd Betti numbers vanish.
    const std::int64_t euler_y = 2 + table.rank_of(LineSet::full());
    std::int64_t nodes = 0;
    std::int64_t open_lines = 0;
    for (int p = 0; p < 10; ++p) {
        std::int64_t on_line = 0;
        for (int q = 0; q < 10; ++q)
            if (q != p && table(p, q) == 1) ++on_line;
        open_lines += 2 - on_line;
        for (int q = p + 1; q < 10; ++q)
            if (table(p, q) == 1) ++nodes;
    }
    const std::int64_t euler_d = 2 * 10 - nodes;
    return {
        {"complement", euler_y - euler_d, 5},
        {"open lines", open_lines, 4},
        {"nodes", nodes, 3},
    };
}

std::int64_t euler_by_stratification(int n, const IntersectionTable& table) {
    std::int64_t e = 0;
    for (const auto& s : stratification(table)) {
        std::int64_t fibre = 1;
        for (int i = 0; i < s.fibre_exponent; ++i) fibre *= n;
        e += s.euler * fibre;
    }
    return e;
}

namespace {

template <class F>
void for_each_character(int n, F&& f) {
    std::array<int, 5> a{};
    for (a[0] = 0; a[0] < n; ++a[0])
        for (a[1] = 0; a[1] < n; ++a[1])
            for (a[2] = 0; a[2] < n; ++a[2])
                for (a[3] = 0; a[3] < n; ++a[3])
                    for (a[4] = 0; a[4] < n; ++a[4]) f(Character(n, a));
}

}  // namespace

ChiCrosscheck chi_crosscheck(int n) {
    ChiCrosscheck c;
    c.chiTheta = closed_form(n).chiTheta;
    for_each_character(n, [&](const Character& psi) {
        const auto g = geometry_of(psi);
        c.sum += chi_log(g.logset, g.twist);
    });
    return c;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& tally_keys() {
    static const std::vector<std::string> keys = {"drop",         "gvt",       "nonvanishing", "registry",
                                                  "superset",     "trivial",   "unresolved"};
    return keys;
}

std::string problem_key(const VanishingProblem& p) {
    std::string s = "T=[";
    bool first = true;
    for (const auto& e : p.logset.members()) {
        s += first ? "" : ",";
        s += "[" + std::to_string(e.first()) + "," + std::to_string(e.second()) + "]";
        first = false;
    }
    s += "] twist=[";
    const auto c = p.twist.coords();
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

int RigidityReport::status() const {
    if (!nonvanishing.empty()) return 1;
    if (!unresolved_keys.empty()) return 2;
    return 0;
}

namespace {

struct Item {
    Character psi;
    std::int64_t weight = 1;
};

struct Outcome {
    CertificatePtr cert;
    std::int64_t chi = 0;
};

void collect_ids(const Certificate& c, std::set<std::string>& out) {
    std::visit(
        [&](const auto& pr) {
            using P = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<P, AxiomProof>) out.insert(pr.registry_id);
            if constexpr (std::is_same_v<P, DropProof> || std::is_same_v<P, SupersetProof>) collect_ids(*pr.inner, out);
        },
        c.proof);
}

int worker_count(int jobs, std::size_t items) {
    int w = jobs > 0 ? jobs : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(w), std::max<std::size_t>(1, items)));
}

}  // namespace

RigidityReport rigidity_report(int n, const Registry& registry, const RigidityOptions& opts) {
    if (n < 3) throw std::invalid_argument("rigidity_report: n must be at least 3");
    RigidityReport rep;
    rep.n = n;
    rep.orbit_mode = opts.orbits;
    for (const auto& k : tally_keys()) rep.tally[k] = 0;

    std::vector<Item> items;
    const auto reps = orbit_representatives(n);
    rep.orbit_count = static_cast<std::int64_t>(reps.size());
    if (opts.orbits) {
        for (const auto& r : reps) items.push_back({r.rep, r.orbit_size});
    } else {
        for_each_character(n, [&](const Character& psi) { items.push_back({psi, 1}); });
    }

    std::vector<Outcome> outcomes(items.size());
    const int workers = worker_count(opts.jobs, items.size());
    const std::size_t chunk = (items.size() + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    Prover prover(registry, opts.prove);
                    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
                    const std::size_t hi = std::min(items.size(), lo + chunk);
                    for (std::size_t i = lo; i < hi; ++i) {
                        if (items[i].psi.is_trivial()) continue;
                        const auto g = geometry_of(items[i].psi);
                        const VanishingProblem p{g.logset, g.twist, true, 4};
                        outcomes[i] = {prover.prove(p), chi_log(p)};
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::set<std::string> unresolved;
    std::set<std::string> ids;
    std::map<Character, std::pair<std::int64_t, std::int64_t>> nv;  // rep -> (weight, chi)
    std::map<VanishingProblem, CertificatePtr> distinct;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto w = items[i].weight;
        rep.total_characters += w;
        if (items[i].psi.is_trivial()) {
            rep.tally["trivial"] += w;
            continue;
        }
        const auto& o = outcomes[i];
        rep.crosscheck.sum += w * o.chi;
        rep.tally[to_string(o.cert->decisive_kind())] += w;
        distinct.emplace(canonical_form(o.cert->problem).problem, o.cert);
        collect_ids(*o.cert, ids);
        if (o.cert->kind() == CertificateKind::kUnresolved)
            unresolved.insert(problem_key(canonical_form(drop_reduce(o.cert->problem).reduced).problem));
        if (o.cert->kind() == CertificateKind::kNonVanishing) {
            auto& slot = nv[canonical_character(items[i].psi)];
            slot.first += w;
            slot.second = o.chi;
        }
    }
    rep.crosscheck.chiTheta = closed_form(n).chiTheta;
    rep.crosscheck_ok = rep.crosscheck.ok();
    rep.unresolved_keys.assign(unresolved.begin(), unresolved.end());
    rep.registry_ids_used.assign(ids.begin(), ids.end());
    for (const auto& [psi, wc] : nv) {
        const auto g = geometry_of(psi);
        rep.nonvanishing.push_back({psi, wc.first, wc.second, {g.logset, g.twist, true, 4}});
    }

    const auto table = IntersectionTable::standard();
    rep.distinct_problems = static_cast<std::int64_t>(distinct.size());
    for (const auto& [prob, cert] : distinct) {
        ++rep.certificates_replayed;
        if (const auto r = check(*cert, table, registry); !r.ok)
            rep.replay_failures.push_back(problem_key(prob) + ": " + r.error);
    }
    rep.rigid = rep.nonvanishing.empty() && rep.unresolved_keys.empty();
    return rep;
}

Registry regenerate_registry(const RigidityOptions& opts) {
    constexpr int n = 5;
    const Registry empty;
    Prover prover(empty, opts.prove);
    // canonical key -> (first character in enumeration order, its case)
    std::map<std::pair<std::uint16_t, DivisorClass>, std::pair<Character, int>> found;
    for_each_character(n, [&](const Character& psi) {
        if (psi.is_trivial()) return;
        const auto g = geometry_of(psi);
        const VanishingProblem p{g.logset, g.twist, true, 4};
        const auto cert = prover.prove(p);
        if (cert->kind() != CertificateKind::kUnresolved) return;
        const auto cf = canonical_form(drop_reduce(p).reduced);
        found.try_emplace({cf.problem.logset.bits(), cf.problem.twist}, psi, g.case_id);
    });

    std::vector<RegistryEntry> entries;
    for (const auto& [key, origin] : found) {
        RegistryEntry e;
        e.logset = LineSet(key.first);
        e.twist = key.second;
        e.justification = "H^1 vanishes on the n=5 covering, a compact ball quotient (Calabi-Vesentini); realised by psi=" +
                          to_string(origin.first) + ", case " + std::to_string(origin.second);
        entries.push_back(std::move(e));
    }
    Registry reg;
    std::string scratch;
    {
        // ids follow the serialized order
        Registry order;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            entries[i].id = "tmp" + std::to_string(i);
            order.add(entries[i]);
        }
        scratch = order.serialize();
        const Registry sorted = Registry::parse(scratch);
        int next = 1;
        for (auto e : sorted.entries()) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "R%02d", next++);
            e.id = buf;
            reg.add(std::move(e));
        }
    }
    return reg;
}

}  // namespace hk
