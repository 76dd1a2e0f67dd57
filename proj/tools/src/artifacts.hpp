#pragma once

#include <json.hpp>
#include <string>

#include "bergsense/disc.hpp"
#include "bergsense/harmonic.hpp"
#include "bergsense/probe.hpp"
#include "bergsense/runge.hpp"
#include "bergsense/verify.hpp"

namespace bergsense::io {

// Insertion-ordered JSON keeps artifact dumps byte-stable.
using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(cplx z);
cplx cplx_from_json(const json& j);

json to_json(const SensingIdentity& id);
SensingIdentity identity_from_json(const json& j);

json to_json(const ProbeDomain& probe);
ProbeDomain probe_from_json(const json& j);

json to_json(const RealSensingTable& table);
RealSensingTable table_from_json(const json& j);

json to_json(const RationalApproximant& r);
RationalApproximant approximant_from_json(const json& j);

json to_json(const ResidualReport& rep);

// Reads/writes with schema_version and kind validation.
json load_artifact(const std::string& path, const std::string& expected_kind = "");
void write_file(const std::string& path, const std::string& contents);
void write_artifact(const std::string& path, json j);

}  // namespace bergsense::io
