#pragma once
#include <map>
#include <string>
#include <vector>

namespace drw {

/// Single verification outcome with both sides of the comparison and a
/// counterexample witness when it failed.
struct CheckResult {
    std::string name;
    std::map<std::string, std::string> params;
    bool pass = false;
    std::string lhs, rhs, witness;
};

struct VerificationReport {
    std::vector<CheckResult> cases;

    bool allPass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    void add(CheckResult c) { cases.push_back(std::move(c)); }
    void merge(const VerificationReport& o) {
        cases.insert(cases.end(), o.cases.begin(), o.cases.end());
    }
    std::size_t failures() const {
        std::size_t k = 0;
        for (const auto& c : cases)
            if (!c.pass) ++k;
        return k;
    }
};

} // namespace drw
