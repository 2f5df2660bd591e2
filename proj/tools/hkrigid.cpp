// hkrigid: rigidity certificates, invariants and line-configuration census
// for Hirzebruch-Kummer coverings of the degree-5 Del Pezzo surface.
//
// Exit codes: 0 success / rigid, 1 non-vanishing witness or failed check,
// 2 unresolved problems, 3 usage or input error.

#include "hk/cb.hpp"
#include "hk/checks.hpp"
#include "hk/invariants.hpp"
#include "hk/registry.hpp"
#include "hk/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#ifndef HK_REGISTRY_PATH
#define HK_REGISTRY_PATH "data/registry.jsonl"
#endif

namespace {

constexpr int kUsage = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    std::optional<int> n;
    std::string n_range;

    std::vector<int> values(int min_n) const {
        std::vector<int> out;
        if (n && !n_range.empty()) throw UsageError("--n and --n-range are exclusive");
        if (n) {
            out.push_back(*n);
        } else if (!n_range.empty()) {
            static const std::regex re(R"((-?\d+)\.\.(-?\d+))");
            std::smatch m;
            if (!std::regex_match(n_range, m, re)) throw UsageError("--n-range expects a..b");
            const int a = std::stoi(m[1]), b = std::stoi(m[2]);
            if (a > b) throw UsageError("--n-range is empty");
            for (int k = a; k <= b; ++k) out.push_back(k);
        } else {
            throw UsageError("one of --n or --n-range is required");
        }
        for (int k : out)
            if (k < min_n) throw UsageError("n = " + std::to_string(k) + " is below the minimum " + std::to_string(min_n));
        return out;
    }
};

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << bytes;
}

void add_range(CLI::App* cmd, Range& r) {
    cmd->add_option("--n", r.n, "exponent n");
    cmd->add_option("--n-range", r.n_range, "inclusive range a..b");
}

nlohmann::json wrap(const std::vector<nlohmann::json>& docs) {
    if (docs.size() == 1) return docs.front();
    nlohmann::json j;
    j["schema_version"] = hk::report::kSchemaVersion;
    j["reports"] = docs;
    return j;
}

// ---------------------------------------------------------------------------

struct RigidityArgs {
    Range range;
    bool orbits = false;
    bool full = false;
    int jobs = 0;
    std::string registry = HK_REGISTRY_PATH;
    int max_superset = 2;
    std::string json_path, csv_path;
    bool timing = false;
};

int run_rigidity(const RigidityArgs& a) {
    if (a.orbits && a.full) throw UsageError("--orbits and --full are exclusive");
    if (a.max_superset < 0) throw UsageError("--max-superset must be nonnegative");
    const auto ns = a.range.values(3);
    hk::Registry registry;
    try {
        registry = hk::Registry::load(a.registry);
    } catch (const hk::RegistryError& e) {
        throw UsageError(e.what());
    }
    hk::RigidityOptions opts;
    opts.orbits = !a.full;
    opts.jobs = a.jobs;
    opts.prove.superset_depth = a.max_superset;

    std::vector<nlohmann::json> docs;
    std::string csv = hk::report::rigidity_csv_header();
    int status = 0;
    for (int n : ns) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = hk::rigidity_report(n, registry, opts);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto doc = hk::report::rigidity_json(r, registry.digest());
        if (a.timing) doc["timing"] = {{"seconds", secs}};
        docs.push_back(doc);
        csv += hk::report::rigidity_csv_row(r);
        status = std::max(status, r.status());
        std::cerr << "n=" << n << " rigid=" << (r.rigid ? "true" : "false")
                  << " nonvanishing_orbits=" << r.nonvanishing.size() << " unresolved=" << r.unresolved_keys.size()
                  << " replay_failures=" << r.replay_failures.size() << "\n";
    }
    const std::string body = hk::report::dump(wrap(docs));
    if (!a.json_path.empty()) write_file(a.json_path, body);
    if (!a.csv_path.empty()) write_file(a.csv_path, csv);
    if (a.json_path.empty()) std::cout << body;
    return status;
}

// ---------------------------------------------------------------------------

struct InvariantsArgs {
    Range range;
    std::string json_path;
};

int run_invariants(const InvariantsArgs& a) {
    std::vector<nlohmann::json> docs;
    bool ok = true;
    for (int n : a.range.values(2)) {
        auto doc = hk::report::invariants_json(n, n >= 3);
        ok = ok && doc["euler_ok"].get<bool>() && doc["noether_ok"].get<bool>() &&
             (!doc.contains("crosscheck_ok") || doc["crosscheck_ok"].get<bool>());
        docs.push_back(doc);
    }
    const std::string body = hk::report::dump(wrap(docs));
    if (!a.json_path.empty()) write_file(a.json_path, body);
    else std::cout << body;
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct ChecksArgs {
    Range range;
    std::string inject_fault;
};

int run_checks(ChecksArgs a) {
    if (!a.range.n && a.range.n_range.empty()) a.range.n_range = "4..9";
    const auto ns = a.range.values(3);
    hk::IntersectionTable table = hk::IntersectionTable::standard();
    if (!a.inject_fault.empty()) {
        int p = 0, q = 0;
        char comma = 0;
        std::istringstream in(a.inject_fault);
        if (!(in >> p >> comma >> q) || comma != ',' || p < 0 || p > 9 || q < 0 || q > 9)
            throw UsageError("--inject-fault expects p,q with 0 <= p,q <= 9");
        table.set(p, q, table(p, q) + 1);
    }
    bool all = true;
    auto line = [&](const std::string& name, bool ok, const std::string& detail = {}) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : "  " + detail) << "\n";
        all = all && ok;
    };

    const auto err = table.validate();
    line("intersection table", err.empty(), err);
    const auto dep = hk::verify_dependencies(table);
    line("line dependencies", dep.pass, std::to_string(dep.counterexamples.size()) + " counterexamples");

    for (int n : ns) {
        const auto s = hk::rank_exception_survey(n);
        line("rank exceptions n=" + std::to_string(n), s.pass,
             std::to_string(s.deficient) + " deficient" + (s.problems.empty() ? "" : ", first: " + s.problems.front()));
    }
    for (int n : ns) {
        const auto s = hk::character_survey(n);
        line("character invariants n=" + std::to_string(n), s.pass());
    }
    for (int n : ns) {
        const auto c = hk::chi_crosscheck(n);
        line("chi crosscheck n=" + std::to_string(n), c.ok(), std::to_string(c.sum) + " vs " + std::to_string(c.chiTheta));
    }
    bool euler = true;
    for (int n = 2; n <= 20; ++n) {
        const auto inv = hk::closed_form(n);
        euler = euler && hk::euler_by_stratification(n, table) == inv.euler && 12 * inv.chiO == inv.K2 + inv.euler;
    }
    line("euler and noether n=2..20", euler);
    line("cb configurations n=0..8", hk::cb::verify_cb_propositions(8).pass());

    // replay every certificate of the range against the (possibly corrupted) table
    const hk::Registry registry;
    const hk::ProveOptions opts;
    for (int n : ns) {
        std::size_t failed = 0;
        hk::Prover prover(registry, opts);
        for (const auto& rep : hk::orbit_representatives(n)) {
            if (rep.rep.is_trivial()) continue;
            const auto g = hk::geometry_of(rep.rep);
            const auto cert = prover.prove({g.logset, g.twist, true, 4});
            if (!hk::check(*cert, table, registry)) ++failed;
        }
        line("certificate replay n=" + std::to_string(n), failed == 0,
             std::to_string(failed) + " rejected");
    }
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct CbArgs {
    Range range;
    std::string json_path, csv_path, svg_path, tikz_path;
};

int run_cb(const CbArgs& a) {
    const auto ns = a.range.values(0);
    if ((!a.svg_path.empty() || !a.tikz_path.empty()) && ns.size() != 1)
        throw UsageError("drawings need a single --n");
    std::vector<nlohmann::json> docs;
    std::string csv;
    bool ok = true;
    for (int n : ns) {
        const auto c = hk::cb::census(n);
        auto doc = hk::report::cb_json(c);
        ok = ok && doc["tally_ok"].get<bool>() && doc["pair_identity_ok"].get<bool>();
        docs.push_back(doc);
        csv += hk::report::cb_csv(c);
        if (!a.svg_path.empty()) write_file(a.svg_path, hk::cb::to_svg(c));
        if (!a.tikz_path.empty()) write_file(a.tikz_path, hk::cb::to_tikz(c));
    }
    const std::string body = hk::report::dump(wrap(docs));
    if (!a.json_path.empty()) write_file(a.json_path, body);
    else std::cout << body;
    if (!a.csv_path.empty()) write_file(a.csv_path, csv);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct RegistryArgs {
    std::string path = HK_REGISTRY_PATH;
    std::string out;
    int max_superset = 2;
};

int run_registry_regen(const RegistryArgs& a) {
    hk::RigidityOptions opts;
    opts.prove.superset_depth = a.max_superset;
    const auto reg = hk::regenerate_registry(opts);
    if (a.out.empty()) std::cout << reg.serialize();
    else hk::save(reg, a.out);
    std::cerr << reg.size() << " entries, sha256 " << reg.digest() << "\n";
    return 0;
}

int run_registry_verify(const RegistryArgs& a) {
    std::ifstream in(a.path, std::ios::binary);
    if (!in) throw UsageError("cannot read registry file " + a.path);
    std::ostringstream buf;
    buf << in.rdbuf();
    hk::Registry shipped;
    try {
        shipped = hk::Registry::parse(buf.str());
    } catch (const hk::RegistryError& e) {
        throw UsageError(e.what());
    }
    hk::RigidityOptions opts;
    opts.prove.superset_depth = a.max_superset;
    const auto regen = hk::regenerate_registry(opts);
    const bool same = buf.str() == regen.serialize();
    std::cout << (same ? "PASS" : "FAIL") << " registry " << a.path << " (" << shipped.size()
              << " entries) byte-equals its regeneration from n=5 (" << regen.size() << " entries)\n"
              << "sha256 " << shipped.digest() << "\n";
    return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigidity certificates for Hirzebruch-Kummer coverings of the degree-5 Del Pezzo surface"};
    app.require_subcommand(1);

    RigidityArgs rig;
    auto* c_rig = app.add_subcommand("rigidity", "certify H^1(Theta) = 0 character by character");
    add_range(c_rig, rig.range);
    c_rig->add_flag("--orbits", rig.orbits, "one representative per S5-orbit (default)");
    c_rig->add_flag("--full", rig.full, "enumerate every character")->group("");
    c_rig->add_option("--jobs", rig.jobs, "worker threads (0: all cores)");
    c_rig->add_option("--registry", rig.registry, "external axiom registry")->capture_default_str();
    c_rig->add_option("--max-superset", rig.max_superset, "superset transfer depth")->capture_default_str();
    c_rig->add_option("--json", rig.json_path, "write the report here instead of stdout");
    c_rig->add_option("--csv", rig.csv_path, "write a one-row-per-n summary");
    c_rig->add_flag("--timing", rig.timing, "include wall-clock time in the report");

    InvariantsArgs inv;
    auto* c_inv = app.add_subcommand("invariants", "K^2, e, chi(O), chi(Theta) and their cross-checks");
    add_range(c_inv, inv.range);
    c_inv->add_option("--json", inv.json_path);

    ChecksArgs chk;
    auto* c_chk = app.add_subcommand("checks", "exhaustive verification suite");
    add_range(c_chk, chk.range);
    c_chk->add_option("--inject-fault", chk.inject_fault, "corrupt table entry p,q")->group("");

    CbArgs cbx;
    auto* c_cb = app.add_subcommand("cb", "census of the iterated Campedelli-Burniat configuration");
    add_range(c_cb, cbx.range);
    c_cb->add_option("--json", cbx.json_path);
    c_cb->add_option("--csv", cbx.csv_path, "points with valencies");
    c_cb->add_option("--emit-svg", cbx.svg_path);
    c_cb->add_option("--emit-tikz", cbx.tikz_path);

    RegistryArgs reg;
    auto* c_reg = app.add_subcommand("registry", "regenerate or verify the axiom registry");
    c_reg->require_subcommand(1);
    auto* c_regen = c_reg->add_subcommand("regen", "print the registry derived from the n=5 run");
    c_regen->add_option("--out", reg.out);
    c_regen->add_option("--max-superset", reg.max_superset);
    auto* c_verify = c_reg->add_subcommand("verify", "compare a registry file with its regeneration");
    c_verify->add_option("--registry", reg.path)->capture_default_str();
    c_verify->add_option("--max-superset", reg.max_superset);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (c_rig->parsed()) return run_rigidity(rig);
        if (c_inv->parsed()) return run_invariants(inv);
        if (c_chk->parsed()) return run_checks(chk);
        if (c_cb->parsed()) return run_cb(cbx);
        if (c_regen->parsed()) return run_registry_regen(reg);
        if (c_verify->parsed()) return run_registry_verify(reg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
