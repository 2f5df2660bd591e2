#include "hk/report.hpp"

#include <sstream>

namespace hk::report {

using nlohmann::json;

namespace {

json logset_json(const LineSet& s) {
    json arr = json::array();
    for (const auto& p : s.members()) arr.push_back({p.first(), p.second()});
    return arr;
}

}  // namespace

json rigidity_json(const RigidityReport& r, const std::string& registry_digest) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "rigidity";
    j["n"] = r.n;
    j["mode"] = r.orbit_mode ? "orbits" : "full";
    j["totals"] = {{"characters", r.total_characters},
                   {"orbits", r.orbit_count},
                   {"distinct_problems", r.distinct_problems}};
    j["verdict_tally"] = r.tally;
    j["unresolved_keys"] = r.unresolved_keys;
    json nv = json::array();
    for (const auto& w : r.nonvanishing) {
        nv.push_back({{"character", w.rep.a},
                      {"a6", w.rep.a6()},
                      {"orbit_size", w.orbit_size},
                      {"chi", w.chi},
                      {"h1_lower_bound", -w.chi},
                      {"logset", logset_json(w.problem.logset)},
                      {"twist", w.problem.twist.coords()}});
    }
    j["nonvanishing"] = nv;
    j["registry_ids_used"] = r.registry_ids_used;
    j["registry_digest"] = registry_digest;
    const auto inv = closed_form(r.n);
    j["invariants"] = {{"K2", inv.K2}, {"euler", inv.euler}, {"chiO", inv.chiO}, {"chiTheta", inv.chiTheta}};
    j["chi_sum"] = r.crosscheck.sum;
    j["crosscheck_ok"] = r.crosscheck_ok;
    j["replay"] = {{"checked", r.certificates_replayed}, {"failures", r.replay_failures}};
    j["rigid"] = r.rigid;
    return j;
}

json invariants_json(int n, bool with_crosscheck) {
    const auto inv = closed_form(n);
    const auto strat = euler_by_stratification(n);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "invariants";
    j["n"] = n;
    j["K2"] = inv.K2;
    j["euler"] = inv.euler;
    j["euler_stratified"] = strat;
    j["euler_ok"] = strat == inv.euler;
    j["chiO"] = inv.chiO;
    j["chiTheta"] = inv.chiTheta;
    j["noether_ok"] = 12 * inv.chiO == inv.K2 + inv.euler;
    if (with_crosscheck) {
        const auto c = chi_crosscheck(n);
        j["chi_sum"] = c.sum;
        j["crosscheck_ok"] = c.ok();
    }
    return j;
}

json cb_json(const cb::IncidenceCensus& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "cb";
    j["n"] = c.n;
    json lines = json::array();
    for (const auto& l : c.lines) lines.push_back({{"name", l.name}, {"coefficients", l.line.coords()}});
    j["lines"] = lines;
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({{"coords", p.point.coords()}, {"valency", p.valency}});
    j["points"] = pts;
    json tally = json::object();
    for (const auto& [v, k] : c.tally) tally[std::to_string(v)] = k;
    j["tally"] = tally;
    const auto want = cb::expected_tally(c.n);
    json expected = json::object();
    json prov = json::object();
    for (const auto& [v, k] : want.tally) {
        expected[std::to_string(v)] = k;
        json parts = json::object();
        for (const auto& [name, cnt] : want.provenance.at(v)) parts[name] = cnt;
        prov[std::to_string(v)] = parts;
    }
    j["expected_tally"] = expected;
    j["expected_provenance"] = prov;
    j["tally_ok"] = c.tally == want.tally;
    j["pair_sum"] = c.pair_sum;
    j["line_pairs"] = c.line_pairs;
    j["pair_identity_ok"] = c.pair_sum == c.line_pairs;
    return j;
}

std::string rigidity_csv_header() {
    std::string h = "n,mode,characters,orbits";
    for (const auto& k : tally_keys()) h += "," + k;
    return h + ",unresolved_keys,rigid,crosscheck_ok\n";
}

std::string rigidity_csv_row(const RigidityReport& r) {
    std::ostringstream os;
    os << r.n << "," << (r.orbit_mode ? "orbits" : "full") << "," << r.total_characters << "," << r.orbit_count;
    for (const auto& k : tally_keys()) os << "," << r.tally.at(k);
    os << "," << r.unresolved_keys.size() << "," << (r.rigid ? "true" : "false") << ","
       << (r.crosscheck_ok ? "true" : "false") << "\n";
    return os.str();
}

std::string cb_csv(const cb::IncidenceCensus& c) {
    std::ostringstream os;
    os << "x,y,z,valency\n";
    for (const auto& p : c.points) os << p.point[0] << "," << p.point[1] << "," << p.point[2] << "," << p.valency << "\n";
    return os.str();
}

void require_schema(const json& doc) {
    if (!doc.is_object() || !doc.contains("schema_version"))
        throw SchemaError("report has no schema_version");
    if (doc.at("schema_version") != kSchemaVersion)
        throw SchemaError("report schema_version " + doc.at("schema_version").dump() + ", expected " +
                          std::to_string(kSchemaVersion));
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace hk::report
