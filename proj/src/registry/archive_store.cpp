// SPDX-License-Identifier: Apache-2.0
#include "licensechain/registry/archive_store.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include "licensechain/crypto/hex.hpp"
#include "licensechain/crypto/sha256.hpp"
#include "licensechain/error.hpp"

namespace licensechain::registry {

namespace fs = std::filesystem;

ArchiveStore::ArchiveStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(Errc::io, "cannot create archive directory '" + root_.string() + "': " + ec.message());
}

fs::path ArchiveStore::path_for(const std::string& key) const {
  if (!crypto::is_lower_hex(key, 64)) throw Error(Errc::not_found, "no archive '" + key + "'");
  return root_ / (key + ".zip");
}

std::string ArchiveStore::put(std::string_view bytes) {
  const std::string key = crypto::sha256_hex(bytes);
  const fs::path target = path_for(key);
  if (fs::exists(target)) return key;

  static std::atomic<unsigned> counter{0};
  const fs::path tmp = root_ / (".incoming-" + key + "-" + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(Errc::io, "cannot write archive '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::io, "cannot store archive '" + target.string() + "'");
  }
  return key;
}

std::string ArchiveStore::get(const std::string& key) const {
  const fs::path path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::not_found, "no archive '" + key + "'");
  std::ostringstream out;
  out << in.rdbuf();
  std::string bytes = out.str();
  if (crypto::sha256_hex(bytes) != key) throw Error(Errc::integrity, "archive '" + key + "' is corrupt");
  return bytes;
}

bool ArchiveStore::contains(const std::string& key) const {
  return crypto::is_lower_hex(key, 64) && fs::exists(root_ / (key + ".zip"));
}

std::vector<std::string> ArchiveStore::keys() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(root_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() == 68 && name.ends_with(".zip") && crypto::is_lower_hex(name.substr(0, 64), 64)) {
      out.push_back(name.substr(0, 64));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace licensechain::registry
