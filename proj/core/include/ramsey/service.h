#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ramsey/adaptive.h"
#include "ramsey/game.h"
#include "ramsey/solver.h"

namespace ramsey {

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

struct ServiceConfig {
  // Sessions, hall of fame, strategy and learning files live here. Empty
  // keeps everything in memory.
  std::string data_dir;
  int learning_factor = 4;
  ScoreWeights weights;
  // Seed for session ids and default session seeds; 0 draws from the OS.
  uint64_t seed = 0;
  int max_vertices = 6;
  // Milliseconds since the epoch.
  std::function<int64_t()> clock;
};

// Reads RAMSEY_DATA_DIR; falls back to fallback.
std::string data_dir_from_env(const std::string& fallback);

// Live play against the adaptive engine. Every public call is thread-safe;
// moves within one session are serialized.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  // Routes:
  //   POST /api/games                 create a session
  //   GET  /api/games/{id}            session state
  //   POST /api/games/{id}/moves      human move, engine reply
  //   POST /api/experience            merge a learning delta
  //   GET  /api/halloffame            entries, fastest first
  //   POST /api/halloffame            submit a nickname for a won session
  //   GET  /api/health
  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  size_t session_count() const;
  // Copy of the merged learning store for a spec, if any experience exists.
  std::optional<LearningTable> learning_table(uint64_t spec_fingerprint) const;
  // Solved table for the spec, solving (or loading from data_dir) on demand.
  std::shared_ptr<const StrategyTable> strategy_for(const GameSpec& spec);

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Blocks serving the API until stop_http_server is called from another
// thread or the process ends. Returns false if binding fails.
bool run_http_server(GameService& service, const std::string& host, int port);
void stop_http_server();

}  // namespace ramsey
