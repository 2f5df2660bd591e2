#include "hk/registry.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hk {

namespace {

using nlohmann::json;

std::vector<std::array<int, 2>> pairs_of(const LineSet& s) {
    std::vector<std::array<int, 2>> out;
    for (const auto& p : s.members()) out.push_back({p.first(), p.second()});
    return out;
}

json to_json(const RegistryEntry& e) {
    json j = json::object();
    j["id"] = e.id;
    j["justification"] = e.justification;
    j["logset"] = pairs_of(e.logset);
    j["twist"] = e.twist.coords();
    return j;
}

RegistryEntry from_json(const json& j, std::size_t line_no) {
    auto where = [&] { return "registry line " + std::to_string(line_no) + ": "; };
    if (!j.is_object()) throw RegistryError(where() + "not an object");
    for (const char* key : {"id", "justification", "logset", "twist"})
        if (!j.contains(key)) throw RegistryError(where() + "missing field '" + key + "'");
    RegistryEntry e;
    try {
        e.id = j.at("id").get<std::string>();
        e.justification = j.at("justification").get<std::string>();
        for (const auto& pr : j.at("logset")) {
            const auto ij = pr.get<std::array<int, 2>>();
            if (ij[0] < 1 || ij[0] > 5 || ij[1] < 1 || ij[1] > 5 || ij[0] == ij[1])
                throw RegistryError(where() + "bad line index");
            const LinePair p(ij[0], ij[1]);
            if (e.logset.contains(p)) throw RegistryError(where() + "repeated line " + to_string(p));
            e.logset.insert(p);
        }
        e.twist = DivisorClass::from_coords(j.at("twist").get<std::array<std::int64_t, 5>>());
    } catch (const json::exception& ex) {
        throw RegistryError(where() + ex.what());
    }
    if (e.id.empty()) throw RegistryError(where() + "empty id");
    return e;
}

bool entry_less(const RegistryEntry& x, const RegistryEntry& y) {
    const auto px = pairs_of(x.logset), py = pairs_of(y.logset);
    if (px != py) return px < py;
    return x.twist.coords() < y.twist.coords();
}

}  // namespace

Registry Registry::parse(std::string_view text) {
    Registry reg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& ex) {
            throw RegistryError("registry line " + std::to_string(line_no) + ": " + ex.what());
        }
        reg.add(from_json(j, line_no));
    }
    return reg;
}

Registry Registry::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError("cannot read registry file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void Registry::add(RegistryEntry entry) {
    if (find_id(entry.id)) throw RegistryError("duplicate registry id " + entry.id);
    const auto cf = canonical_form(VanishingProblem{entry.logset, entry.twist, true, 4});
    const Key key{cf.problem.logset.bits(), cf.problem.twist};
    if (const auto it = index_.find(key); it != index_.end())
        throw RegistryError("registry entries " + entries_[it->second.first].id + " and " + entry.id +
                            " are the same problem up to relabelling");
    index_.emplace(key, std::pair{entries_.size(), cf.relabel});
    entries_.push_back(std::move(entry));
}

std::optional<RegistryMatch> Registry::lookup(const VanishingProblem& prob) const {
    if (index_.empty()) return std::nullopt;
    const auto cf = canonical_form(prob);
    const auto it = index_.find(Key{cf.problem.logset.bits(), cf.problem.twist});
    if (it == index_.end()) return std::nullopt;
    // s(entry) = key = t(prob)  =>  s^-1 t (prob) = entry
    const auto& [idx, s] = it->second;
    return RegistryMatch{&entries_[idx], s.inverse() * cf.relabel};
}

const RegistryEntry* Registry::find_id(const std::string& id) const {
    for (const auto& e : entries_)
        if (e.id == id) return &e;
    return nullptr;
}

std::string Registry::serialize() const {
    std::vector<RegistryEntry> sorted = entries_;
    std::sort(sorted.begin(), sorted.end(), entry_less);
    std::string out;
    for (const auto& e : sorted) {
        out += to_json(e).dump();
        out += '\n';
    }
    return out;
}

std::string Registry::digest() const {
    const std::string bytes = serialize();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

void save(const Registry& registry, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RegistryError("cannot write registry file " + path);
    out << registry.serialize();
}

}  // namespace hk
