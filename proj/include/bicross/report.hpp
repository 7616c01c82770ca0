#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bicross {

struct Counterexample {
    std::vector<std::uint64_t> indices;
    std::string lhs;
    std::string rhs;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::optional<Counterexample> counterexample;
    std::uint64_t cases = 0;      // tuples evaluated
    bool sampled = false;         // true when a seed-fixed sample replaced the full sweep
    std::string note;
};

struct Report {
    std::string title;
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    CheckResult& add(std::string name, bool ok, std::uint64_t cases = 1) {
        checks.push_back({std::move(name), ok, std::nullopt, cases, false, {}});
        return checks.back();
    }
    CheckResult& fail(std::string name, Counterexample cx, std::uint64_t cases = 1) {
        checks.push_back({std::move(name), false, std::move(cx), cases, false, {}});
        return checks.back();
    }
    void add(const CheckResult& r) { checks.push_back(r); }
    // Appends other's checks, prefixing their names.
    void absorb(const Report& other, const std::string& prefix = {}) {
        for (auto c : other.checks) {
            if (!prefix.empty()) c.name = prefix + "/" + c.name;
            checks.push_back(std::move(c));
        }
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// Budget for verification sweeps. Exhaustive below the caps, seed-fixed sampling above.
struct CheckOptions {
    std::size_t exhaustive_cap = 64;   // dimension above which tuple sweeps sample
    std::size_t sample_size = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

}  // namespace bicross
