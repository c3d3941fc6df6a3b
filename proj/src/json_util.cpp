#include "zz/json_util.hpp"

namespace zz {

nlohmann::json to_json(const Rational& q)
{
    return to_string(q);
}

nlohmann::json to_json(const std::vector<Rational>& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

nlohmann::json to_json(const QMatrix& m)
{
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", to_json(m.entries())}};
}

}   // namespace zz
