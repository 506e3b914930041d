// SPDX-License-Identifier: Apache-2.0
#include <sqlite3.h>

#include <mutex>

#include "licensechain/error.hpp"
#include "licensechain/registry/project_store.hpp"

namespace licensechain::registry {

namespace {

struct DbCloser {
  void operator()(sqlite3* db) const { sqlite3_close(db); }
};
struct StmtFinalizer {
  void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
};
using DbHandle = std::unique_ptr<sqlite3, DbCloser>;
using Statement = std::unique_ptr<sqlite3_stmt, StmtFinalizer>;

class SqliteProjectStore final : public ProjectStore {
 public:
  explicit SqliteProjectStore(const std::filesystem::path& file) {
    sqlite3* raw = nullptr;
    const int rc = sqlite3_open_v2(file.c_str(), &raw,
                                   SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX, nullptr);
    db_.reset(raw);
    if (rc != SQLITE_OK) fail("cannot open registry database '" + file.string() + "'");
    exec("PRAGMA synchronous=FULL");
    exec("CREATE TABLE IF NOT EXISTS projects ("
         " project_id TEXT PRIMARY KEY,"
         " record TEXT NOT NULL)");
    exec("CREATE TABLE IF NOT EXISTS users ("
         " username TEXT PRIMARY KEY,"
         " wallet TEXT NOT NULL,"
         " created_at INTEGER NOT NULL)");
  }

  void put(const ProjectRecord& record) override {
    std::lock_guard lock(mutex_);
    auto stmt = prepare("INSERT OR REPLACE INTO projects(project_id, record) VALUES(?1, ?2)");
    bind(stmt, 1, record.project_id);
    bind(stmt, 2, to_json_text(record));
    step_done(stmt);
  }

  std::optional<ProjectRecord> find(const contracts::ProjectId& id) const override {
    std::lock_guard lock(mutex_);
    auto stmt = prepare("SELECT record FROM projects WHERE project_id = ?1");
    bind(stmt, 1, id);
    if (sqlite3_step(stmt.get()) != SQLITE_ROW) return std::nullopt;
    return record_from_json_text(column_text(stmt, 0));
  }

  std::vector<ProjectRecord> list() const override {
    std::lock_guard lock(mutex_);
    auto stmt = prepare("SELECT record FROM projects ORDER BY project_id");
    std::vector<ProjectRecord> out;
    while (sqlite3_step(stmt.get()) == SQLITE_ROW) out.push_back(record_from_json_text(column_text(stmt, 0)));
    return out;
  }

  UserAccount ensure_account(const std::string& username, const contracts::WalletAddress& wallet,
                             std::int64_t now) override {
    std::lock_guard lock(mutex_);
    if (auto existing = account_locked(username)) {
      if (existing->wallet == wallet) return *existing;
      auto stmt = prepare("UPDATE users SET wallet = ?2 WHERE username = ?1");
      bind(stmt, 1, username);
      bind(stmt, 2, wallet.str());
      step_done(stmt);
      existing->wallet = wallet;
      return *existing;
    }
    auto stmt = prepare("INSERT INTO users(username, wallet, created_at) VALUES(?1, ?2, ?3)");
    bind(stmt, 1, username);
    bind(stmt, 2, wallet.str());
    sqlite3_bind_int64(stmt.get(), 3, now);
    step_done(stmt);
    return UserAccount{username, wallet, now};
  }

  std::optional<UserAccount> account(const std::string& username) const override {
    std::lock_guard lock(mutex_);
    return account_locked(username);
  }

 private:
  std::optional<UserAccount> account_locked(const std::string& username) const {
    auto stmt = prepare("SELECT wallet, created_at FROM users WHERE username = ?1");
    bind(stmt, 1, username);
    if (sqlite3_step(stmt.get()) != SQLITE_ROW) return std::nullopt;
    return UserAccount{username, contracts::WalletAddress::parse(column_text(stmt, 0)),
                       sqlite3_column_int64(stmt.get(), 1)};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::io, what + ": " + (db_ ? sqlite3_errmsg(db_.get()) : "out of memory"));
  }

  void exec(const char* sql) {
    char* msg = nullptr;
    if (sqlite3_exec(db_.get(), sql, nullptr, nullptr, &msg) != SQLITE_OK) {
      const std::string text = msg ? msg : "unknown error";
      sqlite3_free(msg);
      throw Error(Errc::io, std::string("registry database: ") + text);
    }
  }

  Statement prepare(const char* sql) const {
    sqlite3_stmt* raw = nullptr;
    if (sqlite3_prepare_v2(db_.get(), sql, -1, &raw, nullptr) != SQLITE_OK) fail("prepare failed");
    return Statement(raw);
  }

  void bind(Statement& stmt, int index, const std::string& value) const {
    if (sqlite3_bind_text(stmt.get(), index, value.data(), static_cast<int>(value.size()), SQLITE_TRANSIENT) !=
        SQLITE_OK) {
      fail("bind failed");
    }
  }

  void step_done(Statement& stmt) const {
    if (sqlite3_step(stmt.get()) != SQLITE_DONE) fail("write failed");
  }

  static std::string column_text(Statement& stmt, int column) {
    const auto* text = reinterpret_cast<const char*>(sqlite3_column_text(stmt.get(), column));
    return text ? std::string(text, static_cast<std::size_t>(sqlite3_column_bytes(stmt.get(), column)))
                : std::string();
  }

  DbHandle db_;
  mutable std::mutex mutex_;
};

}  // namespace

std::unique_ptr<ProjectStore> open_sqlite_store(const std::filesystem::path& db_file) {
  return std::make_unique<SqliteProjectStore>(db_file);
}

}  // namespace licensechain::registry
