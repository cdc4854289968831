#ifndef COARSE_JSON_DETAIL_HPP
#define COARSE_JSON_DETAIL_HPP

#include "coarse/io.hpp"
#include "json.hpp"

namespace coarse::io::detail {

using Json = nlohmann::ordered_json;

Json to_json(const WitnessReport& r);
Json to_json(const HierarchyReport& r);
Json to_json(const PointSet& s);
Json to_json(const std::vector<PointSet>& members);

// Top-level keys one per line; arrays one element per line; leaves compact.
std::string emit(const Json& doc);

}  // namespace coarse::io::detail

#endif  // COARSE_JSON_DETAIL_HPP
