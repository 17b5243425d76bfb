#include "cubiccanon/json_io.hpp"

#include <json.hpp>

#include "cubiccanon/errors.hpp"
#include "cubiccanon/parse.hpp"

namespace cubiccanon {

using OrderedJson = nlohmann::ordered_json;

std::string to_json(const ClassificationResult& result) {
    OrderedJson j;
    j["schema_version"] = 1;
    j["family"] = family_name(result.family);
    OrderedJson params = OrderedJson::object();
    if (result.H) params["H"] = *result.H;
    if (result.I) params["I"] = *result.I;
    if (result.J) params["J"] = *result.J;
    j["params"] = params;
    j["scale"] = result.scale;
    j["map"] = {{"A", result.witness.A}, {"B", result.witness.B}, {"R", result.witness.R},
                {"C", result.witness.C}, {"D", result.witness.D}, {"S", result.witness.S}};
    j["canonical_text"] = to_string(result.canonical);
    j["residual"] = result.residual;
    return j.dump();
}

std::string to_json(const InvariantReport& report) {
    OrderedJson j;
    j["schema_version"] = 1;
    j["cusp"] = report.cusp;
    j["isol"] = report.isol;
    j["node"] = report.node;
    j["red"] = report.red;
    OrderedJson sing = OrderedJson::array();
    for (Complex v : report.sing_complex) sing.push_back({v.real(), v.imag()});
    j["sing_complex"] = sing;
    j["nonisolated_singular_locus"] = report.nonisolated_singular_locus;
    if (!report.degenerate.empty()) j["degenerate"] = report.degenerate;
    return j.dump();
}

ClassificationResult classification_from_json(const std::string& text) {
    const OrderedJson j = OrderedJson::parse(text);
    ClassificationResult result;
    const auto family = family_from_name(j.at("family").get<std::string>());
    if (!family) throw CubicError("unknown family id in JSON");
    result.family = *family;
    const auto& params = j.at("params");
    if (params.contains("H")) result.H = params.at("H").get<double>();
    if (params.contains("I")) result.I = params.at("I").get<double>();
    if (params.contains("J")) result.J = params.at("J").get<double>();
    result.scale = j.at("scale").get<double>();
    const auto& m = j.at("map");
    result.witness = AffineMap{m.at("A").get<double>(), m.at("B").get<double>(),
                               m.at("R").get<double>(), m.at("C").get<double>(),
                               m.at("D").get<double>(), m.at("S").get<double>()};
    result.canonical = parse_poly(j.at("canonical_text").get<std::string>());
    result.residual = j.at("residual").get<double>();
    return result;
}

InvariantReport invariant_report_from_json(const std::string& text) {
    const OrderedJson j = OrderedJson::parse(text);
    InvariantReport report;
    report.cusp = j.at("cusp").get<std::vector<double>>();
    report.isol = j.at("isol").get<std::vector<double>>();
    report.node = j.at("node").get<std::vector<double>>();
    report.red = j.at("red").get<std::vector<double>>();
    for (const auto& pair : j.at("sing_complex"))
        report.sing_complex.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    report.nonisolated_singular_locus = j.at("nonisolated_singular_locus").get<bool>();
    if (j.contains("degenerate")) report.degenerate = j.at("degenerate").get<std::vector<double>>();
    return report;
}

}  // namespace cubiccanon
