#ifndef ZZ_JSON_UTIL_HPP
#define ZZ_JSON_UTIL_HPP

#include <vector>
#include <nlohmann/json.hpp>
#include "zz/matrix.hpp"

namespace zz {

// Rationals travel as "p/q" strings so that no precision is lost.
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const std::vector<Rational>& v);
/** {"rows": r, "cols": c, "entries": [row-major strings]} */
nlohmann::json to_json(const QMatrix& m);

}   // namespace zz

#endif
