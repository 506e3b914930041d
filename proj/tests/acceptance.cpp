// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fail.
#include <chrono>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <regex>

#include "licensechain/codescan/scanner.hpp"
#include "licensechain/ledger/block.hpp"
#include "licensechain/licensing/compatibility.hpp"
#include "support/generators.hpp"
#include "support/platform_fixture.hpp"

using namespace licensechain;
using licensing::LicenseId;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// Brute-force oracle straight from the matrix data file.
class MatrixOracle {
 public:
  MatrixOracle() {
    const auto doc = json::parse(lctest::read_file(lctest::data_dir() / "license_matrix.json"));
    for (const auto& row : doc["licenses"]) {
      auto& allowed = rows_[row["origin"].get<std::string>()];
      for (const auto& a : row["allowed"]) allowed.insert(a.get<std::string>());
    }
  }

  bool accepts(const std::vector<std::string>& origins, const std::string& declared) const {
    for (const auto& o : origins) {
      if (o != declared && !rows_.at(o).count(declared)) return false;
    }
    return true;
  }

  std::set<std::string> passing(const std::vector<std::string>& origins) const {
    std::set<std::string> out;
    for (const auto& info : licensing::license_catalog()) {
      if (accepts(origins, std::string(info.spdx))) out.insert(std::string(info.spdx));
    }
    return out;
  }

 private:
  std::map<std::string, std::set<std::string>> rows_;
};

std::set<std::string> spdx_set(const licensing::LicenseSet& s) {
  std::set<std::string> out;
  for (auto id : s.to_vector()) out.insert(std::string(licensing::to_spdx(id)));
  return out;
}

std::vector<lctest::fs::path> fixture_paths() {
  std::vector<lctest::fs::path> out;
  for (const auto& e : lctest::fs::directory_iterator(lctest::fixtures_dir() / "c20")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

Outcome demo_over_http() {
  const auto start = std::chrono::steady_clock::now();
  lctest::TempDir dir;
  service::Platform platform(lctest::demo_config(dir.path()));
  service::ApiServer api(platform);
  const int port = api.bind("127.0.0.1", 0);
  api.start();
  httplib::Client client("127.0.0.1", port);

  auto seeded = lctest::http_upload(client, "bob", service::demo::original_archive(), "libgeometry", "LGPL-2.1");
  if (!seeded || seeded->status != 201) return fail("seeding the LGPL-2.1 project failed");
  const std::string origin = json::parse(seeded->body)["project_id"];

  auto dl = client.Post("/api/projects/" + origin + "/download", {{service::kUserHeader, "alice"}}, "", "text/plain");
  if (!dl || dl->status != 200 || dl->get_header_value(service::kAgreementHeader).empty()) {
    return fail("download by the second user failed");
  }
  const auto modified = service::demo::derivative_archive();

  auto rejected = lctest::http_upload(client, "alice", modified, "geometry-render", "Apache-2.0");
  if (!rejected || rejected->status != 409) return fail("Apache-2.0 upload was not answered with 409");
  const auto body = json::parse(rejected->body);
  bool origin_listed = false;
  for (const auto& c : body["conflicts"]) origin_listed |= c["project_id"] == origin && c["license"] == "LGPL-2.1";
  if (!origin_listed) return fail("409 body does not list the LGPL-2.1 origin");
  for (const auto& s : body["suggestions"]) {
    if (s == "Apache-2.0") return fail("Apache-2.0 offered as a suggestion");
  }

  auto accepted = lctest::http_upload(client, "alice", modified, "geometry-render", "LGPL-2.1");
  if (!accepted || accepted->status != 201) return fail("LGPL-2.1 upload was not answered with 201");
  api.stop();

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 5.0) return fail("took " + std::to_string(secs) + " s");
  return {true, "409 then 201 in " + std::to_string(secs).substr(0, 5) + " s"};
}

Outcome anchored_cells() {
  const auto& m = licensing::CompatibilityMatrix::shipped();
  if (m.is_compatible(LicenseId::gpl_3_0, LicenseId::mit)) return fail("GPL-3.0 -> MIT allowed");
  if (m.is_compatible(LicenseId::lgpl_2_1, LicenseId::apache_2_0)) return fail("LGPL-2.1 -> Apache-2.0 allowed");
  if (!m.is_compatible(LicenseId::mit, LicenseId::gpl_3_0)) return fail("MIT -> GPL-3.0 denied");
  for (auto id : licensing::all_licenses()) {
    if (!m.is_compatible(id, id)) return fail(std::string(licensing::to_spdx(id)) + " not reflexive");
  }
  return {true, "3 anchored cells, 14 reflexive"};
}

Outcome regex_fidelity() {
  const std::regex reference(R"((?:function|void|int|char|float|double)\s+(\w+)\s*\([^)]*\)\s*\{([\s\S]*?)\})");
  std::size_t total = 0;
  for (const auto& path : fixture_paths()) {
    const std::string raw = lctest::read_file(path);
    const std::string text = lctest::to_lf(raw);
    std::vector<std::pair<std::string, std::string>> expected, got;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), reference); it != std::sregex_iterator(); ++it) {
      expected.emplace_back((*it)[1].str(), (*it)[0].str());
    }
    for (const auto& s : codescan::extract_functions(raw, codescan::Language::c)) got.emplace_back(s.name, s.matched_text);
    if (got != expected) return fail("span mismatch in " + path.filename().string());
    total += got.size();
  }
  if (total != 20) return fail("corpus yielded " + std::to_string(total) + " functions, expected 20");
  return {true, "20/20 (name, text) pairs identical"};
}

Outcome hash_oracle() {
  if (!lctest::have_tool("sha256sum")) return fail("sha256sum not available");
  lctest::TempDir work;
  lctest::TempDir data;
  service::Platform platform(lctest::demo_config(data.path()));

  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& p : fixture_paths()) entries.emplace_back(p.filename().string(), lctest::read_file(p));
  const auto verdict = platform.upload(lctest::upload_request("bob", lctest::zip_of(entries), LicenseId::mit, "fixtures"));
  if (!verdict.accepted()) return fail("fixture upload rejected");
  const auto stored = platform.ledger().project(*verdict.project_id)->registration.function_hashes;

  // Function texts cut independently, one file each, one sha256sum call.
  const std::regex reference(R"((?:function|void|int|char|float|double)\s+(\w+)\s*\([^)]*\)\s*\{([\s\S]*?)\})");
  std::vector<std::string> files;
  for (const auto& [name, raw] : entries) {
    const std::string text = lctest::to_lf(raw);
    for (auto it = std::sregex_iterator(text.begin(), text.end(), reference); it != std::sregex_iterator(); ++it) {
      const auto f = work / ("fn" + std::to_string(files.size()));
      lctest::write_file(f, (*it)[0].str());
      files.push_back(f.string());
    }
  }
  std::string cmd = "sha256sum";
  for (const auto& f : files) cmd += " '" + f + "'";
  std::istringstream out(lctest::run_command(cmd));
  std::size_t checked = 0;
  for (std::string line; std::getline(out, line);) {
    const auto digest = line.substr(0, 64);
    if (!std::binary_search(stored.begin(), stored.end(), codescan::FunctionHash::from_hex(digest))) {
      return fail("digest " + digest + " not stored");
    }
    ++checked;
  }
  if (checked != 20 || stored.size() != 20) {
    return fail(std::to_string(checked) + " digests checked, " + std::to_string(stored.size()) + " stored");
  }
  return {true, "20/20 stored digests match sha256sum"};
}

Outcome immutability() {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    auto chain = lctest::random_chain(rng, rng() % 50);
    const auto blocks = chain->blocks();
    if (!ledger::verify_chain(blocks).ok) return fail("fresh chain failed verification, trial " + std::to_string(trial));
    auto lines = chain->serialized();
    if (!ledger::verify_serialized(lines).ok) return fail("fresh serialization failed, trial " + std::to_string(trial));
    const std::size_t li = rng() % lines.size();
    const std::size_t bi = rng() % lines[li].size();
    const char old = lines[li][bi];
    char now = old;
    while (now == old) now = static_cast<char>(rng() & 0xff);
    lines[li][bi] = now;
    const auto report = ledger::verify_serialized(lines);
    if (report.ok) return fail("mutation undetected, trial " + std::to_string(trial));
    if (report.first_failure != li) {
      return fail("trial " + std::to_string(trial) + ": mutated block " + std::to_string(li) + ", first failure " +
                  std::to_string(*report.first_failure));
    }
  }
  return {true, "1000/1000 mutations detected at the mutated block"};
}

struct Origin {
  std::string id;
  LicenseId license;
  std::vector<std::string> functions;
};

std::vector<Origin> seed_origins(service::Platform& platform, lctest::CFunctionGen& gen, std::size_t count,
                                 const std::function<LicenseId()>& pick) {
  std::vector<Origin> out;
  for (std::size_t i = 0; i < count; ++i) {
    Origin o{"", pick(), {}};
    const std::size_t n = 2 + gen.rng()() % 4;
    std::string file;
    for (std::size_t k = 0; k < n; ++k) {
      o.functions.push_back(gen.next());
      file += o.functions.back() + "\n";
    }
    auto v = platform.upload(lctest::upload_request("bob", lctest::zip_of({{"lib.c", file}}), o.license, "origin"));
    o.id = v.project_id.value();
    out.push_back(std::move(o));
  }
  return out;
}

std::string derivative_of(const std::vector<const Origin*>& origins, lctest::CFunctionGen& gen) {
  std::vector<std::pair<std::string, std::string>> files;
  for (std::size_t i = 0; i < origins.size(); ++i) {
    std::string text;
    for (const auto& f : origins[i]->functions) {
      if (text.empty() || gen.rng()() % 2) text += f + "\n";
    }
    files.emplace_back("src/part" + std::to_string(i) + ".c", text);
  }
  files.emplace_back("src/new.c", gen.next() + "\n" + gen.next());
  return lctest::zip_of(files);
}

Outcome no_partial_effects() {
  const MatrixOracle oracle;
  lctest::TempDir dir;
  service::Platform platform(lctest::demo_config(dir.path()));
  lctest::CFunctionGen gen(77);
  const auto origins = seed_origins(platform, gen, 12, [&] { return lctest::random_license(gen.rng()); });

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<const Origin*> picked;
    std::vector<std::string> origin_licenses;
    while (picked.empty() || gen.rng()() % 2) {
      const auto* o = &origins[gen.rng()() % origins.size()];
      if (std::find(picked.begin(), picked.end(), o) != picked.end()) continue;
      picked.push_back(o);
      origin_licenses.emplace_back(licensing::to_spdx(o->license));
      if (picked.size() == 3) break;
    }
    const auto passing = oracle.passing(origin_licenses);
    std::vector<LicenseId> failing;
    for (auto id : licensing::all_licenses()) {
      if (!passing.count(std::string(licensing::to_spdx(id)))) failing.push_back(id);
    }
    if (failing.empty()) {
      --trial;
      continue;
    }
    const auto declared = failing[gen.rng()() % failing.size()];
    const auto archive = derivative_of(picked, gen);

    const auto before = lctest::snapshot_dir(dir.path());
    const auto verdict = platform.upload(lctest::upload_request("alice", archive, declared, "attempt"));
    if (verdict.accepted()) return fail("trial " + std::to_string(trial) + " was accepted");
    if (lctest::snapshot_dir(dir.path()) != before) {
      return fail("trial " + std::to_string(trial) + " changed the data directory");
    }
  }
  return {true, "200/200 rejected uploads left chain, registry and archives byte-identical"};
}

Outcome suggestion_soundness() {
  const MatrixOracle oracle;
  lctest::CFunctionGen gen(1234);
  std::size_t resubmissions = 0;
  for (int fixture = 0; fixture < 100; ++fixture) {
    lctest::TempDir base;
    std::vector<Origin> origins;
    {
      service::Platform platform(lctest::demo_config(base.path()));
      origins = seed_origins(platform, gen, 2 + gen.rng()() % 3, [&] { return lctest::random_license(gen.rng()); });
    }
    std::vector<const Origin*> all;
    std::vector<std::string> origin_licenses;
    for (const auto& o : origins) {
      all.push_back(&o);
      origin_licenses.emplace_back(licensing::to_spdx(o.license));
    }
    const auto archive = derivative_of(all, gen);
    const auto expected = oracle.passing(origin_licenses);

    std::optional<std::set<std::string>> suggested;
    std::set<std::string> accepted;
    for (auto id : licensing::all_licenses()) {
      lctest::TempDir copy;
      lctest::fs::copy(base.path(), copy.path(), lctest::fs::copy_options::recursive);
      service::Platform platform(lctest::demo_config(copy.path()));
      const auto v = platform.upload(lctest::upload_request("alice", archive, id, "derivative"));
      ++resubmissions;
      const std::string spdx(licensing::to_spdx(id));
      if (v.matches.size() != origins.size()) return fail("fixture " + std::to_string(fixture) + ": origins not all matched");
      if (v.accepted()) {
        accepted.insert(spdx);
      } else {
        const auto s = spdx_set(v.suggestions);
        if (suggested && *suggested != s) return fail("fixture " + std::to_string(fixture) + ": suggestions vary");
        suggested = s;
      }
      if (v.accepted() != oracle.accepts(origin_licenses, spdx)) {
        return fail("fixture " + std::to_string(fixture) + ": " + spdx + " verdict disagrees with the oracle");
      }
    }
    if (accepted != expected) return fail("fixture " + std::to_string(fixture) + ": accepted set differs");
    if (suggested) {
      if (*suggested != expected) return fail("fixture " + std::to_string(fixture) + ": suggestions differ from oracle");
      for (const auto& s : *suggested) {
        if (!accepted.count(s)) return fail("fixture " + std::to_string(fixture) + ": suggested " + s + " rejected");
      }
    }
  }
  return {true, "100 fixtures, " + std::to_string(resubmissions) + " resubmissions, oracle agreement 100%"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"demo scenario over HTTP", demo_over_http},
      {"anchored compatibility cells", anchored_cells},
      {"C regex fidelity", regex_fidelity},
      {"function hash oracle", hash_oracle},
      {"chain immutability", immutability},
      {"no partial effects", no_partial_effects},
      {"suggestion soundness", suggestion_soundness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    failures += out.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " " << (out.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
              << ": " << out.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
