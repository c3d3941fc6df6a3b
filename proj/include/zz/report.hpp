#ifndef ZZ_REPORT_HPP
#define ZZ_REPORT_HPP

#include <string>
#include <vector>
#include <nlohmann/json.hpp>

namespace zz {

struct Check
{
    std::string name;
    bool pass = true;
    std::string detail;

    friend bool operator==(const Check&, const Check&) = default;
};

/**
 * Outcome of a verification pass. `notices` carry information that is not a
 * pass/fail verdict (e.g. conditions deliberately left unchecked).
 */
struct Report
{
    std::vector<Check> checks;
    std::vector<std::string> notices;

    bool passed() const;
    void add(std::string name, bool pass, std::string detail = {});
    /** Checks that failed, in insertion order. */
    std::vector<Check> failures() const;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

}   // namespace zz

#endif
