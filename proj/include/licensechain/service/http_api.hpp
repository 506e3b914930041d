// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>

#include "licensechain/error.hpp"
#include "licensechain/service/platform.hpp"

namespace licensechain::service {

/// Request header naming the acting user.
inline constexpr const char* kUserHeader = "X-LicenseChain-User";
/// Download response header carrying the agreement block index.
inline constexpr const char* kAgreementHeader = "X-Agreement-Block";

/// JSON body for an upload verdict (201 and 409 responses).
std::string verdict_json(const UploadVerdict& verdict);

/// HTTP status for an error code.
int http_status(Errc code) noexcept;

/// JSON API over a Platform.
///
///   GET  /api/projects?query=Q
///   GET  /api/projects/{id}
///   POST /api/projects                 multipart: archive, name, description, license, parents[]
///   POST /api/projects/{id}/download   ZIP body, agreement index in X-Agreement-Block
///   GET  /api/licenses
///   GET  /api/licenses/{id}/compatible
///   GET  /api/chain
///   GET  /api/chain/verify
class ApiServer {
 public:
  explicit ApiServer(Platform& platform);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires bind().
  void serve();
  /// Runs serve() on a background thread and waits until it accepts.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace licensechain::service
