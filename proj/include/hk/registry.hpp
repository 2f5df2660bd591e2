#pragma once

// Registry of vanishing statements taken as axioms, keyed by the S5-orbit
// of the (drop-reduced) problem.
//
// On-disk format: one JSON object per line, keys sorted,
//   {"id":"R01","justification":"...","logset":[[1,2],[1,3]],"twist":[0,0,0,0,1]}
// logset pairs are sorted, twist is (ell, e1, e2, e3, e4), and lines are
// ordered by (logset, twist). serialize() is byte-stable.

#include "hk/picard.hpp"
#include "hk/vanishing.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hk {

class RegistryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RegistryEntry {
    std::string id;
    LineSet logset;
    DivisorClass twist;
    std::string justification;
};

struct RegistryMatch {
    const RegistryEntry* entry = nullptr;
    /// relabel(problem) has exactly the entry's logset and twist.
    Permutation5 relabel;
};

class Registry {
public:
    Registry() = default;

    static Registry parse(std::string_view text);
    static Registry load(const std::string& path);

    /// Throws RegistryError on duplicate ids or duplicate S5-orbits.
    void add(RegistryEntry entry);

    std::optional<RegistryMatch> lookup(const VanishingProblem& prob) const;
    const RegistryEntry* find_id(const std::string& id) const;

    const std::vector<RegistryEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    std::string serialize() const;
    /// SHA-256 of serialize(), lowercase hex.
    std::string digest() const;

private:
    using Key = std::pair<std::uint16_t, DivisorClass>;
    std::vector<RegistryEntry> entries_;
    // canonical key -> (entry index, relabel taking the entry to the key)
    std::map<Key, std::pair<std::size_t, Permutation5>> index_;
};

/// Writes the registry to path (serialize() bytes).
void save(const Registry& registry, const std::string& path);

}  // namespace hk
