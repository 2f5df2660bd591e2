#include "hk/vanishing.hpp"

#include "hk/registry.hpp"

#include <algorithm>
#include <sstream>

namespace hk {

std::string to_string(const VanishingProblem& p) {
    std::ostringstream os;
    os << "T=" << p.logset << " twist=" << p.twist;
    if (!p.h2_zero) os << " (no h2 axiom)";
    return os.str();
}

std::int64_t chi_log(const LineSet& logset, const DivisorClass& twist, int blown_up_points) {
    std::int64_t chi = pairing(twist, twist) - (blown_up_points + 1);
    for (const auto& e : logset.members()) chi += 1 + pairing(class_of(e), twist);
    return chi;
}

// ---------------------------------------------------------------------------

namespace {

struct SubsetTables {
    std::array<DivisorClass, 1024> cls;
    // masks grouped by class, each group ordered by (size, bits)
    std::map<DivisorClass, std::vector<std::uint16_t>> by_class;
    std::vector<std::uint16_t> by_size;  // all masks ordered by (size, bits)
};

const SubsetTables& subset_tables() {
    static const SubsetTables tables = [] {
        SubsetTables t;
        for (int m = 0; m < 1024; ++m) {
            t.by_size.push_back(static_cast<std::uint16_t>(m));
            t.cls[static_cast<std::size_t>(m)] = class_of(LineSet(static_cast<std::uint16_t>(m)));
        }
        std::stable_sort(t.by_size.begin(), t.by_size.end(), [](std::uint16_t x, std::uint16_t y) {
            return __builtin_popcount(x) < __builtin_popcount(y);
        });
        for (auto m : t.by_size) t.by_class[t.cls[m]].push_back(m);
        return t;
    }();
    return tables;
}

std::int64_t line_dot(int k, const DivisorClass& d) { return pairing(class_of(LinePair::from_index(k)), d); }

}  // namespace

GvtReport gvt_check(const VanishingProblem& prob, const LineSet& a, const LineSet& b) {
    if (!(a & b).empty()) throw MalformedWitness("gvt_check: A and B share a line");
    if ((b - prob.logset).size() != 0) throw MalformedWitness("gvt_check: B is not contained in T");
    const auto& cls = subset_tables().cls;
    if (cls[a.bits()] - cls[b.bits()] != prob.twist)
        throw MalformedWitness("gvt_check: class(A) - class(B) differs from the twist");

    const LineSet& t = prob.logset;
    GvtReport rep;
    rep.h2_zero = prob.h2_zero;

    rep.residue_degrees = true;
    for (int k = 0; k < 10; ++k)
        if ((a & t).contains_index(k) && line_dot(k, prob.twist) < -1) rep.residue_degrees = false;

    const DivisorClass outer = cls[((t - b) | (a - t)).bits()];
    rep.positivity = true;
    for (int k = 0; k < 10; ++k)
        if (a.contains_index(k) && line_dot(k, outer) < 1) rep.positivity = false;

    const DivisorClass bsum = cls[b.bits()];
    const LineSet all = t | a;
    LineSet orth;
    for (int k = 0; k < 10; ++k) {
        if (!all.contains_index(k)) continue;
        bool perp = true;
        for (int j = 0; j < 10; ++j)
            if (b.contains_index(j) && line_dot(k, class_of(LinePair::from_index(j))) != 0) perp = false;
        if (perp) orth.insert(LinePair::from_index(k));
    }
    for (int k = 0; k < 10; ++k) {
        if (!(all - b).contains_index(k)) continue;
        const std::int64_t d = line_dot(k, bsum);
        if (d > 0) rep.correction += d - 1;
    }
    rep.rank = rank_of(orth);
    rep.required_rank = prob.blown_up_points + 1 - b.size() + rep.correction;
    rep.rank_bound = rep.rank >= rep.required_rank;
    return rep;
}

std::optional<GvtWitness> gvt_search(const VanishingProblem& prob) {
    if (!prob.h2_zero) return std::nullopt;
    const auto& tables = subset_tables();
    const std::uint16_t t = prob.logset.bits();
    for (std::uint16_t bmask : tables.by_size) {
        if ((bmask & ~t) != 0) continue;
        const auto it = tables.by_class.find(prob.twist + tables.cls[bmask]);
        if (it == tables.by_class.end()) continue;
        for (std::uint16_t amask : it->second) {
            if ((amask & bmask) != 0) continue;
            const LineSet a(amask), b(bmask);
            if (gvt_check(prob, a, b).passed()) return GvtWitness{a, b};
        }
    }
    return std::nullopt;
}

DropResult drop_reduce(const VanishingProblem& prob) {
    DropResult out{prob, {}};
    for (const auto& e : prob.logset.members()) {
        if (pairing(class_of(e), prob.twist) == -1) {
            out.removed.insert(e);
            out.reduced.logset.erase(e);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::kGvt: return "gvt";
        case CertificateKind::kDrop: return "drop";
        case CertificateKind::kSuperset: return "superset";
        case CertificateKind::kExternalAxiom: return "registry";
        case CertificateKind::kNonVanishing: return "nonvanishing";
        case CertificateKind::kUnresolved: return "unresolved";
    }
    return "?";
}

CertificateKind Certificate::kind() const {
    return static_cast<CertificateKind>(proof.index());
}

bool Certificate::proves_vanishing() const {
    const auto k = kind();
    return k != CertificateKind::kNonVanishing && k != CertificateKind::kUnresolved;
}

CertificateKind Certificate::decisive_kind() const {
    if (const auto* d = std::get_if<DropProof>(&proof)) {
        const auto inner = d->inner->decisive_kind();
        return inner == CertificateKind::kGvt ? CertificateKind::kDrop : inner;
    }
    if (const auto* s = std::get_if<SupersetProof>(&proof)) {
        const auto inner = s->inner->decisive_kind();
        return inner == CertificateKind::kExternalAxiom ? inner : CertificateKind::kSuperset;
    }
    return kind();
}

Certificate superset_transfer(const VanishingProblem& prob, const LineSet& added, CertificatePtr inner) {
    if (!(added & prob.logset).empty()) throw TransferInvalid("superset_transfer: added lines already in T");
    if (!prob.h2_zero) throw TransferInvalid("superset_transfer: needs the h2 axiom");
    if (!inner || !inner->proves_vanishing()) throw TransferInvalid("superset_transfer: inner does not prove vanishing");
    VanishingProblem enlarged = prob;
    enlarged.logset = prob.logset | added;
    if (inner->problem != enlarged) throw TransferInvalid("superset_transfer: inner certifies a different problem");
    std::int64_t slack = 0;
    for (const auto& e : added.members()) slack += 1 + pairing(class_of(e), prob.twist);
    if (slack > 0) throw TransferInvalid("superset_transfer: slack " + std::to_string(slack) + " > 0");
    return {prob, SupersetProof{added, slack, std::move(inner)}};
}

// ---------------------------------------------------------------------------

namespace {

struct LineRelabel {
    std::array<std::uint8_t, 10> image{};
};

const std::vector<LineRelabel>& line_relabels() {
    static const std::vector<LineRelabel> maps = [] {
        std::vector<LineRelabel> out;
        for (const auto& t : Permutation5::all()) {
            LineRelabel r;
            for (int k = 0; k < 10; ++k)
                r.image[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(t(LinePair::from_index(k)).index());
            out.push_back(r);
        }
        return out;
    }();
    return maps;
}

std::uint16_t relabel_bits(const LineRelabel& r, std::uint16_t bits) {
    std::uint16_t out = 0;
    for (int k = 0; k < 10; ++k)
        if ((bits >> k) & 1U) out |= static_cast<std::uint16_t>(1U << r.image[static_cast<std::size_t>(k)]);
    return out;
}

}  // namespace

VanishingProblem transform(const VanishingProblem& p, const Permutation5& t) {
    VanishingProblem out = p;
    out.logset = t(p.logset);
    out.twist = s5_transform(t, p.twist);
    return out;
}

CanonicalForm canonical_form(const VanishingProblem& p) {
    const auto& perms = Permutation5::all();
    const auto& relabels = line_relabels();
    CanonicalForm best{p, Permutation5{}};
    bool have = false;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        const std::uint16_t bits = relabel_bits(relabels[i], p.logset.bits());
        if (have && bits > best.problem.logset.bits()) continue;
        const DivisorClass tw = lattice_map(perms[i])(p.twist);
        if (!have || std::pair(bits, tw) < std::pair(best.problem.logset.bits(), best.problem.twist)) {
            best.problem.logset = LineSet(bits);
            best.problem.twist = tw;
            best.relabel = perms[i];
            have = true;
        }
    }
    return best;
}

Certificate transform(const Certificate& cert, const Permutation5& t) {
    Certificate out;
    out.problem = transform(cert.problem, t);
    std::visit(
        [&](const auto& pr) {
            using P = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<P, GvtProof>) {
                out.proof = GvtProof{{t(pr.witness.a), t(pr.witness.b)}};
            } else if constexpr (std::is_same_v<P, DropProof>) {
                out.proof = DropProof{t(pr.removed), std::make_shared<const Certificate>(transform(*pr.inner, t))};
            } else if constexpr (std::is_same_v<P, SupersetProof>) {
                out.proof = SupersetProof{t(pr.added), pr.slack,
                                          std::make_shared<const Certificate>(transform(*pr.inner, t))};
            } else if constexpr (std::is_same_v<P, AxiomProof>) {
                // new problem Q = t(P); relabel' with relabel'(Q) = entry, so relabel' = relabel * t^-1
                out.proof = AxiomProof{pr.registry_id, pr.relabel * t.inverse()};
            } else {
                out.proof = pr;
            }
        },
        cert.proof);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Certificate prove_canonical(const VanishingProblem& p, const Registry& registry, const ProveOptions& opts, int depth);

Certificate prove_any(const VanishingProblem& p, const Registry& registry, const ProveOptions& opts, int depth) {
    const auto cf = canonical_form(p);
    const Certificate c = prove_canonical(cf.problem, registry, opts, depth);
    return transform(c, cf.relabel.inverse());
}

Certificate prove_canonical(const VanishingProblem& p, const Registry& registry, const ProveOptions& opts, int depth) {
    const std::int64_t chi = chi_log(p);
    if (p.h2_zero && chi < 0) return {p, NonVanishingProof{chi, -chi}};

    const auto [reduced, removed] = drop_reduce(p);
    auto wrap = [&, removed = removed](Certificate inner) -> Certificate {
        if (removed.empty()) return inner;
        return {p, DropProof{removed, std::make_shared<const Certificate>(std::move(inner))}};
    };

    if (opts.use_gvt) {
        if (auto w = gvt_search(reduced)) return wrap({reduced, GvtProof{*w}});
        if (!removed.empty())
            if (auto w = gvt_search(p)) return {p, GvtProof{*w}};
    }

    if (auto m = registry.lookup(reduced)) return wrap({reduced, AxiomProof{m->entry->id, m->relabel}});

    if (depth > 0 && reduced.h2_zero) {
        for (std::uint16_t added_bits : subset_tables().by_size) {
            const LineSet added(added_bits);
            if (added.empty() || added.size() > depth) continue;
            if (!(added & reduced.logset).empty()) continue;
            std::int64_t slack = 0;
            for (const auto& e : added.members()) slack += 1 + pairing(class_of(e), reduced.twist);
            if (slack > 0) continue;
            VanishingProblem enlarged = reduced;
            enlarged.logset = reduced.logset | added;
            if (drop_reduce(enlarged).reduced == reduced) continue;  // would undo itself
            auto inner = std::make_shared<const Certificate>(prove_any(enlarged, registry, opts, depth - added.size()));
            if (inner->proves_vanishing()) return wrap(superset_transfer(reduced, added, std::move(inner)));
        }
    }
    return {p, UnresolvedProof{}};
}

}  // namespace

Certificate prove(const VanishingProblem& prob, const Registry& registry, const ProveOptions& opts) {
    return prove_any(prob, registry, opts, opts.superset_depth);
}

CertificatePtr Prover::prove(const VanishingProblem& prob) {
    const auto cf = canonical_form(prob);
    auto it = cache_.find(cf.problem);
    if (it == cache_.end())
        it = cache_.emplace(cf.problem, std::make_shared<const Certificate>(hk::prove(cf.problem, registry_, opts_))).first;
    if (cf.relabel.is_identity()) return it->second;
    return std::make_shared<const Certificate>(transform(*it->second, cf.relabel.inverse()));
}

// ---------------------------------------------------------------------------
// Replay. Everything below reads intersection numbers from the table only.

namespace {

CheckResult fail(std::string msg) { return {false, std::move(msg)}; }

std::int64_t chi_from_table(const VanishingProblem& p, const IntersectionTable& table) {
    const auto row = table.row_of(p.twist);
    std::int64_t chi = table.self_intersection(p.twist) - (p.blown_up_points + 1);
    for (int k = 0; k < 10; ++k)
        if (p.logset.contains_index(k)) chi += 1 + row[static_cast<std::size_t>(k)];
    return chi;
}

CheckResult check_gvt(const VanishingProblem& p, const GvtWitness& w, const IntersectionTable& table) {
    const LineSet& t = p.logset;
    if (!p.h2_zero) return fail("gvt: h2 axiom missing");
    if (!(w.a & w.b).empty()) return fail("gvt: A and B overlap");
    if (!(w.b - t).empty()) return fail("gvt: B not inside T");
    const auto twist_row = table.row_of(p.twist);
    const auto a_row = table.row_of(w.a);
    const auto b_row = table.row_of(w.b);
    for (int q = 0; q < 10; ++q)
        if (a_row[q] - b_row[q] != twist_row[q]) return fail("gvt: A - B is not the twist");

    for (int k = 0; k < 10; ++k)
        if ((w.a & t).contains_index(k) && twist_row[k] < -1) return fail("gvt: residue degree below -1");

    const auto outer_row = table.row_of((t - w.b) | (w.a - t));
    for (int k = 0; k < 10; ++k)
        if (w.a.contains_index(k) && outer_row[k] < 1) return fail("gvt: positivity condition fails");

    const LineSet all = t | w.a;
    LineSet orth;
    std::int64_t correction = 0;
    for (int k = 0; k < 10; ++k) {
        if (!all.contains_index(k)) continue;
        bool perp = true;
        for (int j = 0; j < 10; ++j)
            if (w.b.contains_index(j) && table(k, j) != 0) perp = false;
        if (perp) orth.insert(LinePair::from_index(k));
        if (!w.b.contains_index(k) && b_row[k] > 0) correction += b_row[k] - 1;
    }
    const std::int64_t need = p.blown_up_points + 1 - w.b.size() + correction;
    if (table.rank_of(orth) < need) return fail("gvt: rank bound fails");
    return {};
}

CheckResult check_rec(const Certificate& c, const IntersectionTable& table, const Registry& registry) {
    const auto& p = c.problem;
    if (p.blown_up_points != 4) return fail("problem is not on the degree-5 Del Pezzo surface");
    return std::visit(
        [&](const auto& pr) -> CheckResult {
            using P = std::decay_t<decltype(pr)>;
            if constexpr (std::is_same_v<P, GvtProof>) {
                return check_gvt(p, pr.witness, table);
            } else if constexpr (std::is_same_v<P, DropProof>) {
                if (!pr.inner) return fail("drop: missing inner certificate");
                if (!(pr.removed - p.logset).empty()) return fail("drop: removed line not in T");
                const auto row = table.row_of(p.twist);
                for (int k = 0; k < 10; ++k)
                    if (pr.removed.contains_index(k) && row[k] != -1) return fail("drop: removed line has E.twist != -1");
                VanishingProblem expect = p;
                expect.logset = p.logset - pr.removed;
                if (pr.inner->problem != expect) return fail("drop: inner problem mismatch");
                if (!pr.inner->proves_vanishing()) return fail("drop: inner does not prove vanishing");
                return check_rec(*pr.inner, table, registry);
            } else if constexpr (std::is_same_v<P, SupersetProof>) {
                if (!pr.inner) return fail("superset: missing inner certificate");
                if (!p.h2_zero) return fail("superset: h2 axiom missing");
                if (!(pr.added & p.logset).empty()) return fail("superset: added line already in T");
                const auto row = table.row_of(p.twist);
                std::int64_t slack = 0;
                for (int k = 0; k < 10; ++k)
                    if (pr.added.contains_index(k)) slack += 1 + row[k];
                if (slack != pr.slack) return fail("superset: slack mismatch");
                if (slack > 0) return fail("superset: positive slack");
                VanishingProblem expect = p;
                expect.logset = p.logset | pr.added;
                if (pr.inner->problem != expect) return fail("superset: inner problem mismatch");
                if (!pr.inner->proves_vanishing()) return fail("superset: inner does not prove vanishing");
                return check_rec(*pr.inner, table, registry);
            } else if constexpr (std::is_same_v<P, AxiomProof>) {
                const RegistryEntry* e = registry.find_id(pr.registry_id);
                if (!e) return fail("axiom: unknown registry id " + pr.registry_id);
                if (pr.relabel(p.logset) != e->logset) return fail("axiom: log-pole set does not match entry");
                // the relabelling must carry the twist to the entry's twist as an isometry on lines
                const auto mine = table.row_of(p.twist);
                const auto theirs = table.row_of(e->twist);
                for (int k = 0; k < 10; ++k) {
                    const int img = pr.relabel(LinePair::from_index(k)).index();
                    if (mine[k] != theirs[img]) return fail("axiom: twist does not match entry");
                }
                return {};
            } else if constexpr (std::is_same_v<P, NonVanishingProof>) {
                if (!p.h2_zero) return fail("nonvanishing: h2 axiom missing");
                const auto chi = chi_from_table(p, table);
                if (chi != pr.chi) return fail("nonvanishing: chi mismatch");
                if (chi >= 0) return fail("nonvanishing: chi is not negative");
                if (pr.h1_lower_bound != -chi) return fail("nonvanishing: wrong lower bound");
                return {};
            } else {
                return {};
            }
        },
        c.proof);
}

}  // namespace

CheckResult check(const Certificate& cert, const IntersectionTable& table, const Registry& registry) {
    if (auto err = table.validate(); !err.empty()) return fail("intersection table rejected: " + err);
    return check_rec(cert, table, registry);
}

}  // namespace hk
