// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

#include "licensechain/codescan/scanner.hpp"
#include "licensechain/error.hpp"
#include "licensechain/ledger/block.hpp"
#include "licensechain/licensing/compatibility.hpp"
#include "licensechain/service/demo.hpp"
#include "licensechain/service/http_api.hpp"

namespace lc = licensechain;
namespace fs = std::filesystem;

namespace {

lc::service::ApiServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

lc::service::MatchScope parse_scope(const std::string& s) {
  if (s == "all") return lc::service::MatchScope::all_projects;
  if (s == "downloaded") return lc::service::MatchScope::downloaded_by_user;
  throw lc::Error(lc::Errc::config, "unknown match scope '" + s + "' (all, downloaded)");
}

int serve(lc::service::PlatformConfig config, const std::string& host, int port, bool seed_demo) {
  lc::service::Platform platform(std::move(config));
  for (const auto& id : platform.recovered()) std::cerr << "recovered registry record for " << id << "\n";
  if (seed_demo) std::cerr << "demo origin project: " << lc::service::demo::seed(platform) << "\n";
  lc::service::ApiServer server(platform);
  const int bound = server.bind(host, port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  server.serve();
  g_server = nullptr;
  return 0;
}

int scan(const fs::path& path) {
  const auto result = lc::codescan::scan_project(path);
  for (std::size_t i = 0; i < result.spans.size(); ++i) {
    const auto& s = result.spans[i];
    nlohmann::ordered_json j{{"path", s.file_path},
                             {"language", lc::codescan::to_string(s.language)},
                             {"name", s.name},
                             {"hash", result.span_hashes[i].hex()}};
    std::cout << j.dump() << "\n";
  }
  std::cerr << result.files_scanned << " files scanned, " << result.files_skipped << " skipped, "
            << result.spans.size() << " functions, " << result.hashes.size() << " distinct hashes\n";
  return 0;
}

int check(const std::string& from, const std::string& to, const std::optional<fs::path>& matrix_file) {
  const auto origin = lc::licensing::parse_license_id(from);
  const auto declared = lc::licensing::parse_license_id(to);
  const auto matrix = matrix_file ? lc::licensing::load_matrix(*matrix_file) : lc::licensing::CompatibilityMatrix::shipped();
  const bool ok = matrix.is_compatible(origin, declared);
  std::cout << (ok ? "ALLOW" : "DENY") << " " << lc::licensing::to_spdx(origin) << " -> "
            << lc::licensing::to_spdx(declared) << "\n";
  std::cout << "compatible with " << lc::licensing::to_spdx(origin) << ":";
  for (auto id : matrix.compatible_with(origin).to_vector()) std::cout << " " << lc::licensing::to_spdx(id);
  std::cout << "\n";
  return ok ? 0 : 1;
}

int chain_verify(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw lc::Error(lc::Errc::io, "cannot read '" + file.string() + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  const auto report = lc::ledger::verify_serialized(lines);
  if (report.ok) {
    std::cout << "OK " << lines.size() << " blocks\n";
    return 0;
  }
  const auto& bad = report.blocks.at(*report.first_failure);
  std::cout << "FAIL at block " << *report.first_failure << ": " << bad.detail << "\n";
  return 1;
}

int demo(const fs::path& data_dir) {
  lc::service::PlatformConfig config;
  config.data_dir = data_dir;
  config.wallets = lc::service::demo::wallets();
  lc::service::Platform platform(std::move(config));
  const auto report = lc::service::demo::run_scenario(platform);
  std::cout << "origin project " << report.origin << " (LGPL-2.1) uploaded by " << lc::service::demo::kAuthor << "\n";
  std::cout << lc::service::demo::kDownloader << " downloaded it, agreement block " << report.download_block << "\n";
  std::cout << "upload as Apache-2.0: " << (report.rejected.accepted() ? "ACCEPTED" : "REJECTED") << " "
            << lc::service::verdict_json(report.rejected) << "\n";
  std::cout << "upload as LGPL-2.1:   " << (report.accepted.accepted() ? "ACCEPTED" : "REJECTED") << " "
            << lc::service::verdict_json(report.accepted) << "\n";
  std::cout << "data directory: " << data_dir.string() << "\n";
  return report.accepted.accepted() && !report.rejected.accepted() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"License-compliance ledger for open-source projects"};
  app.require_subcommand(1);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<fs::path> wallets_flag;
  fs::path data_dir = "licensechain-data";
  std::string scope = "all";
  bool seed_demo = false;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--wallets", wallets_flag, std::string("Wallet config file (default $") + lc::registry::kWalletsEnvVar + ")");
  serve_cmd->add_option("--data-dir", data_dir, "Chain, registry and archive directory")->capture_default_str();
  serve_cmd->add_option("--scope", scope, "Match uploads against: all, downloaded")->capture_default_str();
  serve_cmd->add_flag("--seed-demo", seed_demo, "Seed the demo origin project");

  fs::path scan_path;
  auto* scan_cmd = app.add_subcommand("scan", "Print function hashes of a directory or .zip as JSON lines");
  scan_cmd->add_option("path", scan_path, "Directory or .zip")->required();

  std::string from, to;
  std::optional<fs::path> matrix_file;
  auto* check_cmd = app.add_subcommand("check", "Is relicensing from one license to another allowed?");
  check_cmd->add_option("--from", from, "Origin license")->required();
  check_cmd->add_option("--to", to, "Declared license")->required();
  check_cmd->add_option("--matrix", matrix_file, "Alternative matrix file");

  auto* chain_cmd = app.add_subcommand("chain", "Ledger inspection");
  chain_cmd->require_subcommand(1);
  fs::path chain_file;
  fs::path chain_data_dir = "licensechain-data";
  auto* verify_cmd = chain_cmd->add_subcommand("verify", "Verify a chain file");
  verify_cmd->add_option("--file", chain_file, "Chain file (default <data-dir>/chain.log)");
  verify_cmd->add_option("--data-dir", chain_data_dir, "Data directory")->capture_default_str();

  fs::path demo_dir = fs::temp_directory_path() / "licensechain-demo";
  auto* demo_cmd = app.add_subcommand("demo", "Run the download/derivative-upload scenario");
  demo_cmd->add_option("--data-dir", demo_dir, "Fresh data directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) {
      lc::service::PlatformConfig config;
      config.data_dir = data_dir;
      config.scope = parse_scope(scope);
      if (seed_demo && !wallets_flag && !std::getenv(lc::registry::kWalletsEnvVar)) {
        config.wallets = lc::service::demo::wallets();
      } else {
        config.wallets = lc::registry::WalletDirectory::load(lc::registry::resolve_wallet_config_path(wallets_flag));
      }
      return serve(std::move(config), host, port, seed_demo);
    }
    if (*scan_cmd) return scan(scan_path);
    if (*check_cmd) return check(from, to, matrix_file);
    if (*verify_cmd) return chain_verify(chain_file.empty() ? chain_data_dir / "chain.log" : chain_file);
    if (*demo_cmd) return demo(demo_dir);
  } catch (const lc::Error& e) {
    std::cerr << "error (" << lc::to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
