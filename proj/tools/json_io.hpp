#pragma once

#include "ppd/diagram.hpp"
#include "ppd/error.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace ppd::cli {

using nlohmann::json;

inline json diagram_to_json(const PersistenceDiagram& d) {
    json points = json::array();
    for (const auto& p : d.points()) points.push_back({{"dim", p.dimension}, {"birth", p.birth}, {"death", p.death}});
    json essential = json::array();
    for (const auto& e : d.essential()) essential.push_back({{"dim", e.dimension}, {"birth", e.birth}});
    json out = {{"format", "PD v1"}, {"points", points}, {"essential", essential}};
    if (!d.label.empty()) out["label"] = d.label;
    if (d.cap) out["cap"] = *d.cap;
    return out;
}

inline PersistenceDiagram diagram_from_json(const json& j) {
    PersistenceDiagram d;
    try {
        for (const auto& p : j.at("points"))
            d.add({p.at("birth").get<double>(), p.at("death").get<double>(), p.at("dim").get<int>()});
        if (j.contains("essential"))
            for (const auto& e : j.at("essential")) d.add_essential({e.at("birth").get<double>(), e.at("dim").get<int>()});
        if (j.contains("label")) d.label = j.at("label").get<std::string>();
        if (j.contains("cap")) d.cap = j.at("cap").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad diagram JSON: ") + e.what(), 0);
    }
    return d;
}

}  // namespace ppd::cli
