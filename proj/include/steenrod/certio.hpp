// JSON serialization for certificates and reports. Field order is fixed by
// construction order (nlohmann ordered_json).
#pragma once

#include <bit>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "steenrod/hit.hpp"
#include "steenrod/modules.hpp"
#include "steenrod/verify.hpp"

namespace steenrod {

using ordered_json = nlohmann::ordered_json;

inline ordered_json certificate_to_json(const HitCertificate& cert) {
    ordered_json j;
    j["module"] = cert.module_spec;
    j["degree"] = cert.degree;
    j["target"] = to_string(cert.target);
    ordered_json terms = ordered_json::array();
    for (const auto& [k, pre] : cert.terms) {
        ordered_json t;
        if (std::has_single_bit(static_cast<unsigned>(k)))
            t["i"] = std::countr_zero(static_cast<unsigned>(k));
        else
            t["k"] = k;
        t["preimage"] = to_string(pre);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline HitCertificate certificate_from_json(const ordered_json& j) {
    HitCertificate cert;
    cert.module_spec = j.at("module").get<std::string>();
    cert.degree = j.at("degree").get<int>();
    auto module = ModuleRealization::parse(cert.module_spec);
    const int nv = module->ambient_vars();
    cert.target = parse_poly(j.at("target").get<std::string>(), nv);
    for (const auto& t : j.at("terms")) {
        int k;
        if (t.contains("i"))
            k = 1 << t.at("i").get<int>();
        else
            k = t.at("k").get<int>();
        cert.terms.emplace_back(k, parse_poly(t.at("preimage").get<std::string>(), nv));
    }
    return cert;
}

inline void write_certificates(const std::string& path,
                               const std::vector<HitCertificate>& certs) {
    ordered_json j;
    if (certs.size() == 1) {
        j = certificate_to_json(certs[0]);
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& c : certs) arr.push_back(certificate_to_json(c));
        j["certificates"] = std::move(arr);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline std::vector<HitCertificate> read_certificates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    ordered_json j = ordered_json::parse(in);
    std::vector<HitCertificate> certs;
    if (j.contains("certificates")) {
        for (const auto& c : j.at("certificates")) certs.push_back(certificate_from_json(c));
    } else {
        certs.push_back(certificate_from_json(j));
    }
    return certs;
}

inline ordered_json suite_to_json(const SuiteResult& res) {
    ordered_json j;
    j["suite"] = res.suite;
    j["tool_version"] = kToolVersion;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : res.params) params[k] = v;
    j["parameters"] = std::move(params);
    j["seed"] = res.seed;
    ordered_json items = ordered_json::array();
    for (const auto& item : res.items) {
        ordered_json it;
        it["name"] = item.name;
        it["pass"] = item.pass;
        if (!item.detail.empty()) it["detail"] = item.detail;
        items.push_back(std::move(it));
    }
    j["items"] = std::move(items);
    j["passed"] = res.items.size() - res.failures();
    j["failed"] = res.failures();
    j["timing_ms"] = res.ms;
    j["overall_pass"] = res.overall();
    return j;
}

inline void write_report(const std::string& path, const SuiteResult& res) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << suite_to_json(res).dump(2) << "\n";
}

} // namespace steenrod
