#include "json.hpp"

#include "kinetic/errors.hpp"
#include "kinetic/verify.hpp"

namespace kinetic {

std::string to_json(const ThresholdReport& r) {
  nlohmann::ordered_json j;
  j["parameter"] = r.parameter;
  j["value"] = r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json(nullptr);
  j["certificate"] = nlohmann::ordered_json::array();
  for (const CertificateEntry& c : r.certificate)
    j["certificate"].push_back({{"label", c.label}, {"argument", c.argument}, {"value", c.value}});
  j["grid"] = nlohmann::ordered_json::object();
  for (const auto& [key, v] : r.grid) j["grid"][key] = v;
  return j.dump(2);
}

ThresholdReport threshold_report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("threshold report: ") + ex.what());
  }
  ThresholdReport r;
  try {
    r.parameter = j.at("parameter").get<std::string>();
    if (!j.at("value").is_null()) r.value = j.at("value").get<double>();
    for (const auto& c : j.at("certificate"))
      r.certificate.push_back({c.at("label").get<std::string>(), c.at("argument").get<double>(),
                               c.at("value").get<double>()});
    for (const auto& [key, v] : j.at("grid").items()) r.grid[key] = v.get<double>();
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("threshold report: ") + ex.what());
  }
  return r;
}

}  // namespace kinetic
