#include "tate/complex_io.hpp"

#include "json.hpp"

#include <fstream>

namespace tate {

using nlohmann::json;

std::string complex_to_json(const EquivariantComplex& c) {
    json j;
    j["generators"] = json::array();
    for (auto& g : c.generators) {
        json jg;
        jg["id"] = g.id;
        jg["degree"] = g.degree;
        jg["muLevel"] = g.mu_level;
        jg["hAction"] = rat_str(g.h_action);
        if (!g.label.empty()) jg["label"] = g.label;
        j["generators"].push_back(jg);
    }
    j["boundary"] = json::object();
    for (auto& [src, terms] : c.boundary) {
        json arr = json::array();
        for (auto& t : terms) {
            json jt;
            jt["coeff"] = t.coeff.str();
            jt["uShift"] = t.u_shift;
            jt["target"] = t.target;
            arr.push_back(jt);
        }
        j["boundary"][src] = arr;
    }
    return j.dump(2);
}

EquivariantComplex complex_from_json(const std::string& text) {
    json j = json::parse(text);
    EquivariantComplex c;
    for (auto& jg : j.at("generators")) {
        BaseGenerator g;
        g.id = jg.at("id").get<std::string>();
        g.degree = jg.at("degree").get<int>();
        g.mu_level = jg.at("muLevel").get<int>();
        if (jg.at("hAction").is_string())
            g.h_action = parse_rat(jg.at("hAction").get<std::string>());
        else
            g.h_action = Rat(jg.at("hAction").get<long>());
        if (jg.contains("label")) g.label = jg.at("label").get<std::string>();
        c.generators.push_back(std::move(g));
    }
    if (j.contains("boundary")) {
        for (auto& [src, arr] : j.at("boundary").items()) {
            std::vector<BoundaryTerm> terms;
            for (auto& jt : arr) {
                BoundaryTerm t;
                t.coeff = jt.at("coeff").is_string() ? Int(jt.at("coeff").get<std::string>())
                                                     : Int(jt.at("coeff").get<long>());
                t.u_shift = jt.at("uShift").get<int>();
                t.target = jt.at("target").get<std::string>();
                terms.push_back(std::move(t));
            }
            c.boundary[src] = std::move(terms);
        }
    }
    return c;
}

EquivariantComplex load_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TateError("ParseError", "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return complex_from_json(text);
}

void save_complex_file(const EquivariantComplex& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TateError("ParseError", "cannot write " + path);
    out << complex_to_json(c) << "\n";
}

}  // namespace tate
