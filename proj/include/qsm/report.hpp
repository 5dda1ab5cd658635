#pragma once

// Machine-readable run reports.  Reports are deterministic for a fixed
// configuration (including the seed) except for the timing fields, which are
// excluded from any determinism guarantee.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "qsm/berezinian.hpp"

namespace qsm {

inline const char* status_name(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "skip";
    }
}

struct CheckResult {
    std::string suite;
    std::string name;
    std::string params;
    Status status = Status::Pass;
    std::string witness; // nonzero reduced witness or skip reason
    long ms = 0;
};

struct SuiteConfig {
    int m = 1;
    int n = 1;
    int k_max = 3;
    int trunc = 3;
    bool modular = false;
    std::vector<std::uint64_t> primes{kDefaultPrimes[0], kDefaultPrimes[1], kDefaultPrimes[2]};
    std::uint64_t seed = 1;
    std::vector<std::string> suites{"tensor", "relations", "macmahon", "newton",
                                    "traces", "berezinian", "minors", "sylvester"};
    std::optional<int> degree_cap_override;
};

struct Report {
    SuiteConfig config;
    std::vector<CheckResult> checks;

    int count(Status s) const {
        int c = 0;
        for (const auto& r : checks) c += (r.status == s);
        return c;
    }
    bool all_passed() const { return count(Status::Fail) == 0; }

    void sort_stable() {
        std::stable_sort(checks.begin(), checks.end(), [](const CheckResult& a, const CheckResult& b) {
            if (a.suite != b.suite) return a.suite < b.suite;
            if (a.name != b.name) return a.name < b.name;
            return a.params < b.params;
        });
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["version"] = "1";
        nlohmann::ordered_json cfg;
        cfg["m"] = config.m;
        cfg["n"] = config.n;
        cfg["k"] = config.k_max;
        cfg["trunc"] = config.trunc;
        cfg["backend"] = config.modular ? "modular" : "exact";
        cfg["primes"] = config.primes;
        cfg["seed"] = config.seed;
        cfg["suites"] = config.suites;
        j["config"] = cfg;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : checks) {
            nlohmann::ordered_json c;
            c["suite"] = r.suite;
            c["name"] = r.name;
            c["params"] = r.params;
            c["status"] = status_name(r.status);
            if (!r.witness.empty()) c["witness"] = r.witness;
            c["ms"] = r.ms;
            arr.push_back(c);
        }
        j["checks"] = arr;
        nlohmann::ordered_json sum;
        sum["pass"] = count(Status::Pass);
        sum["fail"] = count(Status::Fail);
        sum["skip"] = count(Status::Skip);
        j["summary"] = sum;
        return j;
    }
};

inline nlohmann::ordered_json report_schema() {
    nlohmann::ordered_json j;
    j["version"] = "1";
    j["fields"] = {
        {"version", "schema version string"},
        {"config", "echo of the run configuration (m, n, k, trunc, backend, primes, seed, suites)"},
        {"checks", "array of {suite, name, params, status, witness?, ms}"},
        {"summary", "{pass, fail, skip} counts"},
    };
    j["checks.status"] = {"pass", "fail", "skip"};
    j["checks.witness"] = "expression-grammar string; present on fail (reduced witness) and skip (reason)";
    j["checks.ms"] = "integer milliseconds, excluded from determinism guarantees";
    return j;
}

} // namespace qsm
