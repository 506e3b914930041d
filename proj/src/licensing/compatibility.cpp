// SPDX-License-Identifier: Apache-2.0
#include "licensechain/licensing/compatibility.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "licensechain/embedded_data.hpp"
#include "licensechain/error.hpp"

namespace licensechain::licensing {

namespace {

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw Error(Errc::matrix_validation, std::string(source) + ": " + what);
}

LicenseId parse_token(std::string_view source, const std::string& row, const nlohmann::json& token) {
  if (!token.is_string()) fail(source, "row '" + row + "': license tokens must be strings");
  try {
    return parse_license_id(token.get<std::string>());
  } catch (const Error&) {
    fail(source, "row '" + row + "': unknown license '" + token.get<std::string>() + "'");
  }
}

}  // namespace

const CompatibilityMatrix& CompatibilityMatrix::shipped() {
  static const CompatibilityMatrix matrix = [] {
    const auto text = embedded::file("license_matrix.json");
    if (!text) throw Error(Errc::matrix_validation, "shipped license matrix is missing");
    return parse(*text, "data/license_matrix.json");
  }();
  return matrix;
}

CompatibilityMatrix CompatibilityMatrix::parse(std::string_view json_text, std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    fail(source, std::string("parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("licenses") || !doc["licenses"].is_array()) {
    fail(source, "expected an object with a 'licenses' array");
  }

  CompatibilityMatrix matrix;
  std::array<bool, kLicenseCount> seen{};
  std::size_t row_number = 0;
  for (const auto& row : doc["licenses"]) {
    ++row_number;
    if (!row.is_object() || !row.contains("origin")) {
      fail(source, "record " + std::to_string(row_number) + " has no 'origin'");
    }
    const std::string label =
        row["origin"].is_string() ? row["origin"].get<std::string>() : std::to_string(row_number);
    const LicenseId origin = parse_token(source, label, row["origin"]);
    const auto idx = static_cast<std::size_t>(origin);
    if (seen[idx]) fail(source, "row '" + label + "' appears more than once");
    seen[idx] = true;

    if (!row.contains("allowed") || !row["allowed"].is_array()) {
      fail(source, "row '" + label + "' has no 'allowed' list");
    }
    LicenseSet allowed;
    for (const auto& token : row["allowed"]) allowed.insert(parse_token(source, label, token));
    if (!allowed.contains(origin)) {
      fail(source, "row '" + label + "' is not reflexive (does not allow itself)");
    }
    matrix.allowed_[idx] = allowed;
  }

  for (std::size_t i = 0; i < kLicenseCount; ++i) {
    if (!seen[i]) {
      fail(source, "missing row for '" + std::string(to_spdx(static_cast<LicenseId>(i))) + "'");
    }
  }
  return matrix;
}

CompatibilityMatrix load_matrix(const std::filesystem::path& data_file) {
  std::ifstream in(data_file, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read license matrix '" + data_file.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return CompatibilityMatrix::parse(text.str(), data_file.string());
}

}  // namespace licensechain::licensing
