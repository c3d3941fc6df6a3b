#include "zz/report.hpp"

#include <sstream>

namespace zz {

bool Report::passed() const
{
    for (const auto& c : checks)
    {
        if (!c.pass)
            return false;
    }
    return true;
}

void Report::add(std::string name, bool pass, std::string detail)
{
    checks.push_back({std::move(name), pass, std::move(detail)});
}

std::vector<Check> Report::failures() const
{
    std::vector<Check> out;
    for (const auto& c : checks)
    {
        if (!c.pass)
            out.push_back(c);
    }
    return out;
}

nlohmann::json Report::to_json() const
{
    nlohmann::json per_check = nlohmann::json::array();
    for (const auto& c : checks)
        per_check.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"status", passed() ? "pass" : "fail"},
            {"per_check", std::move(per_check)},
            {"notices", notices}};
}

std::string Report::to_text() const
{
    std::ostringstream out;
    out << "status: " << (passed() ? "pass" : "fail") << '\n';
    for (const auto& c : checks)
    {
        out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.detail.empty())
            out << ": " << c.detail;
        out << '\n';
    }
    for (const auto& n : notices)
        out << "  notice: " << n << '\n';
    return out.str();
}

}   // namespace zz
