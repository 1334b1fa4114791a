#include "ramsey/service.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <shared_mutex>
#include <tuple>

#include <json.hpp>

#include "ramsey/canonical.h"
#include "ramsey/table_io.h"

namespace ramsey {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ServiceError : std::runtime_error {
  int status;
  ServiceError(int s, const std::string& what) : std::runtime_error(what), status(s) {}
};

std::string hex64(uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

uint64_t parse_hex64(const std::string& s) {
  if (s.empty() || s.size() > 16 || s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
    throw ServiceError(400, "fingerprint must be a hex string of at most 16 digits");
  return std::stoull(s, nullptr, 16);
}

const char* player_key(Player p) { return p == Player::kRed ? "red" : "green"; }

const char* reason_name(EndReason r) {
  switch (r) {
    case EndReason::kNone: return "none";
    case EndReason::kCompleted: return "completed";
    case EndReason::kNoMoves: return "no-moves";
    case EndReason::kBoardFull: return "board-full";
  }
  return "none";
}

json error_body(int status, const std::string& message) {
  return {{"error", {{"code", status}, {"message", message}}}};
}

// Rules, keys and (lazily) the solved table for one spec.
struct SpecRuntime {
  GameSpec spec;
  uint64_t fingerprint;
  GameEngine engine;
  PositionKeyer keyer;
  SalienceWeights salience;
  std::once_flag solved;
  std::shared_ptr<const StrategyTable> table;

  explicit SpecRuntime(const GameSpec& s)
      : spec(s),
        fingerprint(s.fingerprint()),
        engine(s),
        keyer(s, true),
        salience(SalienceWeights::for_board(*s.board)) {}
};

struct Session {
  std::mutex mu;
  std::string id;
  std::shared_ptr<SpecRuntime> rt;
  bool shaking = false;
  bool multi_move = false;
  Player engine = Player::kGreen;
  uint64_t seed = 0;
  // Moves and the record use the unshaken labels; frame maps them to the
  // labels clients see.
  GameState state;
  std::vector<int> frame;
  GameRecord record;
  int64_t started_ms = 0;
  int64_t finished_ms = -1;
  bool hof_submitted = false;
  bool corrupt = false;
  // Reported on the response that produced them.
  std::vector<int> last_engine_edges;
  std::vector<int> last_permutation;

  Player human() const { return opponent(engine); }
};

struct HallEntry {
  std::string nickname;
  int64_t elapsed_ms = 0;
  int64_t timestamp = 0;
  uint64_t fingerprint = 0;
  std::string session;
};

json hall_json(const HallEntry& e) {
  return {{"nickname", e.nickname},
          {"elapsed_ms", e.elapsed_ms},
          {"timestamp", e.timestamp},
          {"fingerprint", hex64(e.fingerprint)},
          {"session", e.session}};
}

Rng move_rng(uint64_t seed, int move_number, uint32_t tag) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(move_number), tag};
  return Rng(seq);
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  size_t i = 0;
  while (i < path.size()) {
    size_t j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    if (j > i) parts.emplace_back(path.substr(i, j - i));
    i = j + 1;
  }
  return parts;
}

std::map<std::string, std::string> parse_query(std::string_view q) {
  std::map<std::string, std::string> out;
  size_t i = 0;
  while (i < q.size()) {
    size_t j = q.find('&', i);
    if (j == std::string_view::npos) j = q.size();
    std::string_view kv = q.substr(i, j - i);
    size_t eq = kv.find('=');
    if (!kv.empty()) {
      if (eq == std::string_view::npos)
        out[std::string(kv)] = "";
      else
        out[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
    }
    i = j + 1;
  }
  return out;
}

json parse_object(std::string_view body, bool allow_empty) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    if (allow_empty) return json::object();
    throw ServiceError(400, "request body must be a JSON object");
  }
  json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ServiceError(400, "request body must be a JSON object");
  return j;
}

void only_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw ServiceError(400, "unknown field '" + k + "'");
  }
}

bool get_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw ServiceError(400, std::string(key) + " must be a boolean");
  return j[key].get<bool>();
}

}  // namespace

std::string data_dir_from_env(const std::string& fallback) {
  const char* v = std::getenv("RAMSEY_DATA_DIR");
  return v && *v ? std::string(v) : fallback;
}

struct GameService::Impl {
  ServiceConfig config;

  mutable std::mutex specs_mu;
  std::map<uint64_t, std::shared_ptr<SpecRuntime>> specs;

  mutable std::shared_mutex sessions_mu;
  std::map<std::string, std::shared_ptr<Session>> sessions;

  // All learning merges go through this lock.
  mutable std::mutex learn_mu;
  std::map<uint64_t, std::shared_ptr<const LearningTable>> learning;

  mutable std::mutex hall_mu;
  std::vector<HallEntry> hall;

  std::mutex log_mu;
  std::mutex rng_mu;
  Rng rng;

  explicit Impl(ServiceConfig c) : config(std::move(c)) {
    if (!config.clock)
      config.clock = [] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
      };
    uint64_t seed = config.seed;
    if (seed == 0) seed = (uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    rng.seed(seed);
    if (config.learning_factor <= 0) throw std::invalid_argument("learning factor must be positive");
    if (!config.data_dir.empty()) {
      fs::create_directories(config.data_dir);
      replay_sessions();
      load_hall();
    }
  }

  uint64_t draw() {
    std::lock_guard<std::mutex> lock(rng_mu);
    return rng();
  }

  std::string file(const std::string& name) const { return (fs::path(config.data_dir) / name).string(); }

  void append(const std::string& name, const json& line) {
    if (config.data_dir.empty()) return;
    std::lock_guard<std::mutex> lock(log_mu);
    std::ofstream out(file(name), std::ios::app);
    out << line.dump() << '\n';
    out.flush();
    if (!out) std::cerr << "failed to append to " << file(name) << '\n';
  }

  // ---- specs, tables, learning ----

  std::shared_ptr<SpecRuntime> runtime(const GameSpec& spec) {
    uint64_t fp = spec.fingerprint();
    std::shared_ptr<SpecRuntime> rt;
    {
      std::lock_guard<std::mutex> lock(specs_mu);
      auto& slot = specs[fp];
      if (!slot) slot = std::make_shared<SpecRuntime>(spec);
      rt = slot;
    }
    load_learning(*rt);
    return rt;
  }

  std::shared_ptr<SpecRuntime> runtime(uint64_t fp) const {
    std::lock_guard<std::mutex> lock(specs_mu);
    auto it = specs.find(fp);
    return it == specs.end() ? nullptr : it->second;
  }

  std::string strategy_file(uint64_t fp) const {
    return config.data_dir.empty() ? "" : file("strategy-" + hex64(fp) + ".grst");
  }
  std::string learning_file(uint64_t fp) const {
    return config.data_dir.empty() ? "" : file("learning-" + hex64(fp) + ".grln");
  }

  const StrategyTable& table(SpecRuntime& rt) {
    std::call_once(rt.solved, [&] {
      std::string path = strategy_file(rt.fingerprint);
      if (!path.empty() && fs::exists(path)) {
        try {
          rt.table = std::make_shared<StrategyTable>(load_strategy_table(path, rt.spec));
          return;
        } catch (const std::exception& e) {
          std::cerr << "ignoring unreadable strategy file " << path << ": " << e.what() << '\n';
        }
      }
      auto t = std::make_shared<StrategyTable>(solve(rt.engine));
      if (!path.empty()) save_strategy_table(path, *t);
      rt.table = std::move(t);
    });
    return *rt.table;
  }

  void load_learning(const SpecRuntime& rt) {
    std::lock_guard<std::mutex> lock(learn_mu);
    if (learning.count(rt.fingerprint)) return;
    std::string path = learning_file(rt.fingerprint);
    if (!path.empty() && fs::exists(path)) {
      try {
        LearningTable t = load_learning_table(path);
        if (t.fingerprint() == rt.fingerprint) {
          learning[rt.fingerprint] = std::make_shared<const LearningTable>(std::move(t));
          return;
        }
        std::cerr << "ignoring learning file " << path << " with a foreign fingerprint\n";
      } catch (const std::exception& e) {
        std::cerr << "ignoring unreadable learning file " << path << ": " << e.what() << '\n';
      }
    }
    learning[rt.fingerprint] = std::make_shared<const LearningTable>(rt.spec);
  }

  std::shared_ptr<const LearningTable> learning_snapshot(uint64_t fp) const {
    std::lock_guard<std::mutex> lock(learn_mu);
    auto it = learning.find(fp);
    return it == learning.end() ? nullptr : it->second;
  }

  const LearningTable& merge(const SpecRuntime& rt, const LearningTable& delta) {
    std::lock_guard<std::mutex> lock(learn_mu);
    auto& slot = learning[rt.fingerprint];
    LearningTable merged = merge_experience(slot ? *slot : LearningTable(rt.spec), delta);
    std::string path = learning_file(rt.fingerprint);
    if (!path.empty()) save_learning_table(path, merged);
    slot = std::make_shared<const LearningTable>(std::move(merged));
    return *slot;
  }

  // ---- sessions ----

  std::shared_ptr<Session> find_session(const std::string& id) const {
    std::shared_lock<std::shared_mutex> lock(sessions_mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw ServiceError(404, "no session '" + id + "'");
    return it->second;
  }

  void apply(Session& s, const Move& m) {
    s.record.steps.push_back({s.rt->keyer.key(s.state.position, s.state.to_move), m, s.state.to_move});
    s.state = s.rt->engine.apply_unchecked(s.state, m);
  }

  void log_move(const Session& s, Player mover, const Move& m) {
    append("sessions.jsonl",
           {{"event", "move"}, {"id", s.id}, {"mover", player_key(mover)}, {"edges", m.edges}, {"t", config.clock()}});
  }

  void close(Session& s, int64_t when) {
    s.finished_ms = when;
    s.record.outcome = s.state.status;
    s.record.forced_loss = s.state.reason == EndReason::kNoMoves;
  }

  void finish(Session& s) {
    close(s, config.clock());
    append("sessions.jsonl",
           {{"event", "end"}, {"id", s.id}, {"status", status_name(s.state.status)}, {"t", s.finished_ms}});
    try {
      const StrategyTable& t = table(*s.rt);
      LearningTable delta =
          update_after_game(s.rt->engine, t, LearningTable(s.rt->spec), s.record, config.learning_factor);
      if (delta.size()) merge(*s.rt, delta);
    } catch (const std::exception& e) {
      std::cerr << "session " << s.id << ": learning update skipped: " << e.what() << '\n';
    }
  }

  static std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(inner.size());
    for (size_t v = 0; v < inner.size(); ++v) out[v] = outer[inner[v]];
    return out;
  }

  void engine_turns(Session& s) {
    while (!s.state.terminal() && s.state.to_move == s.engine) {
      const StrategyTable& t = table(*s.rt);
      auto learn = learning_snapshot(s.rt->fingerprint);
      Rng r = move_rng(s.seed, s.state.move_number, 1);
      Move m = choose_move(s.rt->engine, s.state, t, *learn, s.rt->salience, r, config.weights);
      apply(s, m);
      s.last_engine_edges = m.edges;
      log_move(s, s.engine, m);
      if (s.shaking && !s.state.terminal()) {
        Rng sr = move_rng(s.seed, s.state.move_number, 2);
        std::vector<int> perm = shake(s.state, sr).first;
        s.frame = compose(perm, s.frame);
        s.last_permutation = perm;
        append("sessions.jsonl", {{"event", "shake"}, {"id", s.id}, {"perm", perm}});
      }
    }
    if (s.state.terminal() && s.finished_ms < 0) finish(s);
  }

  json edge_pair(const Session& s, int e) const {
    const Edge& ed = s.rt->spec.board->edge(e);
    int a = s.frame[ed.u], b = s.frame[ed.v];
    return json::array({std::min(a, b), std::max(a, b)});
  }

  json state_json(const Session& s) const {
    const Graph& board = *s.rt->spec.board;
    std::vector<std::pair<std::pair<int, int>, Color>> shown;
    for (int e = 0; e < board.edge_count(); ++e) {
      json p = edge_pair(s, e);
      shown.push_back({{p[0].get<int>(), p[1].get<int>()}, s.state.position.color(e)});
    }
    std::sort(shown.begin(), shown.end());
    json edges = json::array();
    for (const auto& [uv, c] : shown)
      edges.push_back({{"u", uv.first},
                       {"v", uv.second},
                       {"color", c == Color::kRed ? json("red") : c == Color::kGreen ? json("green") : json(nullptr)}});
    auto pairs = [&](const std::vector<int>& internal) {
      json out = json::array();
      for (int e : internal) out.push_back(edge_pair(s, e));
      return out;
    };
    json moves = json::array();
    for (const auto& step : s.record.steps)
      moves.push_back({{"mover", player_key(step.mover)}, {"edges", pairs(step.move.edges)}});

    json out = {
        {"id", s.id},
        {"variant", variant_name(s.rt->spec.variant)},
        {"n", board.vertex_count()},
        {"fingerprint", hex64(s.rt->fingerprint)},
        {"shaking", s.shaking},
        {"multi_move", s.multi_move},
        {"engine", player_key(s.engine)},
        {"human", player_key(s.human())},
        {"to_move", player_key(s.state.to_move)},
        {"move_number", s.state.move_number},
        {"status", status_name(s.state.status)},
        {"reason", reason_name(s.state.reason)},
        {"closed", s.state.terminal()},
        {"canonical_key", std::to_string(s.rt->keyer.key(s.state.position, s.state.to_move))},
        {"edges", edges},
        {"moves", moves},
        {"last_engine_move", s.last_engine_edges.empty() ? json(nullptr) : pairs(s.last_engine_edges)},
        {"permutation", s.last_permutation.empty() ? json(nullptr) : json(s.last_permutation)},
        {"started_at", s.started_ms},
        {"finished_at", s.finished_ms >= 0 ? json(s.finished_ms) : json(nullptr)},
        {"winner", nullptr},
    };
    if (s.state.terminal()) {
      if (s.state.status == win_for(s.engine)) out["winner"] = "engine";
      if (s.state.status == win_for(s.human())) out["winner"] = "human";
      out["elapsed_ms"] = s.finished_ms - s.started_ms;
    }
    return out;
  }

  // ---- handlers ----

  HttpResponse create_game(std::string_view body) {
    json req = parse_object(body, true);
    only_keys(req, {"variant", "n", "target", "target_green", "precolor_red", "precolor_green", "shaking",
                    "multi_move", "seed", "engine"});
    bool shaking = get_bool(req, "shaking", false);
    bool multi = get_bool(req, "multi_move", false);
    json spec_json = {{"variant", multi ? "avoid-plus" : "avoid"}, {"n", 6}, {"target", "k3"}};
    for (const char* k : {"variant", "n", "target", "target_green", "precolor_red", "precolor_green"})
      if (req.contains(k)) spec_json[k] = req[k];
    GameSpec spec;
    try {
      spec = spec_from_json(spec_json.dump());
      spec.validate();
    } catch (const std::exception& e) {
      throw ServiceError(400, e.what());
    }
    if (spec.variant == GameVariant::kAvoidPlus) {
      if (req.contains("multi_move") && !multi) throw ServiceError(400, "avoid-plus is always multi-move");
      multi = true;
    } else if (multi) {
      throw ServiceError(400, "multi_move requires the avoid-plus variant");
    }
    if (spec.board->vertex_count() > config.max_vertices)
      throw ServiceError(400, "live play supports at most " + std::to_string(config.max_vertices) + " vertices");
    Player engine = Player::kGreen;
    if (req.contains("engine")) {
      if (req["engine"] == "red")
        engine = Player::kRed;
      else if (req["engine"] != "green")
        throw ServiceError(400, "engine must be \"red\" or \"green\"");
    }
    uint64_t seed;
    if (req.contains("seed")) {
      if (!req["seed"].is_number_unsigned()) throw ServiceError(400, "seed must be a nonnegative integer");
      seed = req["seed"].get<uint64_t>();
    } else {
      seed = draw();
    }

    auto s = std::make_shared<Session>();
    s->rt = runtime(spec);
    s->shaking = shaking;
    s->multi_move = multi;
    s->engine = engine;
    s->seed = seed;
    s->state = s->rt->engine.initial_state();
    s->frame.resize(spec.board->vertex_count());
    std::iota(s->frame.begin(), s->frame.end(), 0);
    s->record.engine = engine;
    s->started_ms = config.clock();
    std::lock_guard<std::mutex> session_lock(s->mu);
    {
      std::unique_lock<std::shared_mutex> lock(sessions_mu);
      do s->id = hex64(draw());
      while (sessions.count(s->id));
      sessions[s->id] = s;
    }
    append("sessions.jsonl", {{"event", "create"},
                              {"id", s->id},
                              {"spec", json::parse(spec_to_json(spec))},
                              {"shaking", shaking},
                              {"multi_move", multi},
                              {"engine", player_key(engine)},
                              {"seed", seed},
                              {"t", s->started_ms}});
    if (s->state.terminal()) finish(*s);
    engine_turns(*s);
    return {201, state_json(*s).dump()};
  }

  HttpResponse get_state(const std::string& id) {
    auto s = find_session(id);
    std::lock_guard<std::mutex> lock(s->mu);
    return {200, state_json(*s).dump()};
  }

  HttpResponse post_move(const std::string& id, std::string_view body) {
    auto s = find_session(id);
    std::lock_guard<std::mutex> lock(s->mu);
    if (s->corrupt) throw ServiceError(409, "session could not be restored");
    if (s->state.terminal()) throw ServiceError(409, "game is over");
    if (s->state.to_move != s->human()) throw ServiceError(409, "not the human's turn");
    json req = parse_object(body, false);
    only_keys(req, {"edges"});
    if (!req.contains("edges") || !req["edges"].is_array() || req["edges"].empty())
      throw ServiceError(400, "edges must be a nonempty array of [u, v] pairs");
    const int n = s->rt->spec.board->vertex_count();
    std::vector<int> inverse(n);
    for (int v = 0; v < n; ++v) inverse[s->frame[v]] = v;
    Move m;
    for (const auto& pair : req["edges"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
        throw ServiceError(400, "each edge must be a pair [u, v] of vertex numbers");
      int u = pair[0].get<int>(), v = pair[1].get<int>();
      if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw ServiceError(400, "no such edge");
      int e = s->rt->spec.board->edge_index(inverse[u], inverse[v]);
      if (e < 0) throw ServiceError(400, "no such edge");
      m.edges.push_back(e);
    }
    std::sort(m.edges.begin(), m.edges.end());
    if (std::adjacent_find(m.edges.begin(), m.edges.end()) != m.edges.end())
      throw ServiceError(400, "edge listed twice");
    std::string why = s->rt->engine.check_move(s->state, m);
    if (!why.empty()) throw ServiceError(400, "illegal move: " + why);

    s->last_engine_edges.clear();
    s->last_permutation.clear();
    apply(*s, m);
    log_move(*s, s->human(), m);
    if (s->state.terminal())
      finish(*s);
    else
      engine_turns(*s);
    return {200, state_json(*s).dump()};
  }

  HttpResponse post_experience(std::string_view body) {
    json req = parse_object(body, false);
    only_keys(req, {"fingerprint", "entries", "spec"});
    if (!req.contains("fingerprint") || !req["fingerprint"].is_string())
      throw ServiceError(400, "fingerprint is required");
    uint64_t fp = parse_hex64(req["fingerprint"].get<std::string>());
    std::shared_ptr<SpecRuntime> rt;
    if (req.contains("spec")) {
      GameSpec spec;
      try {
        spec = spec_from_json(req["spec"].dump());
        spec.validate();
      } catch (const std::exception& e) {
        throw ServiceError(400, e.what());
      }
      if (spec.fingerprint() != fp) throw ServiceError(400, "spec does not match the fingerprint");
      rt = runtime(spec);
    } else {
      rt = runtime(fp);
      if (!rt) throw ServiceError(400, "unknown spec fingerprint; include the spec");
    }
    if (!req.contains("entries") || !req["entries"].is_array()) throw ServiceError(400, "entries must be an array");
    LearningTable delta(rt->spec);
    for (const auto& entry : req["entries"]) {
      if (!entry.is_array() || entry.size() != 2) throw ServiceError(400, "each entry must be [key, value]");
      uint64_t key;
      if (entry[0].is_number_unsigned()) {
        key = entry[0].get<uint64_t>();
      } else if (entry[0].is_string()) {
        const std::string& k = entry[0].get_ref<const std::string&>();
        if (k.empty() || k.size() > 20 || k.find_first_not_of("0123456789") != std::string::npos)
          throw ServiceError(400, "key must be a decimal string");
        try {
          key = std::stoull(k);
        } catch (const std::exception&) {
          throw ServiceError(400, "key out of range");
        }
      } else {
        throw ServiceError(400, "key must be a decimal string or unsigned integer");
      }
      if (!entry[1].is_number_integer()) throw ServiceError(400, "value must be an integer");
      int64_t value = entry[1].get<int64_t>();
      if (value == 0 || value < kLearnMin || value > kLearnMax)
        throw ServiceError(400, "value must be a nonzero byte in [-128, 127]");
      if (delta.contains(key)) throw ServiceError(400, "key listed twice");
      delta.set(key, static_cast<int>(value));
    }
    const LearningTable& merged = merge(*rt, delta);
    json out = {{"fingerprint", hex64(fp)}, {"merged", delta.size()}, {"entries", merged.size()}};
    return {200, out.dump()};
  }

  HttpResponse get_hall(const std::map<std::string, std::string>& query) {
    std::optional<uint64_t> filter;
    if (auto it = query.find("fingerprint"); it != query.end()) filter = parse_hex64(it->second);
    std::vector<HallEntry> entries;
    {
      std::lock_guard<std::mutex> lock(hall_mu);
      for (const auto& e : hall)
        if (!filter || e.fingerprint == *filter) entries.push_back(e);
    }
    std::stable_sort(entries.begin(), entries.end(), [](const HallEntry& a, const HallEntry& b) {
      return std::tie(a.elapsed_ms, a.timestamp) < std::tie(b.elapsed_ms, b.timestamp);
    });
    json list = json::array();
    for (const auto& e : entries) list.push_back(hall_json(e));
    return {200, json{{"entries", list}}.dump()};
  }

  HttpResponse post_hall(std::string_view body) {
    json req = parse_object(body, false);
    only_keys(req, {"session", "nickname"});
    if (!req.contains("session") || !req["session"].is_string()) throw ServiceError(400, "session is required");
    if (!req.contains("nickname") || !req["nickname"].is_string()) throw ServiceError(400, "nickname is required");
    std::string nick = req["nickname"].get<std::string>();
    if (nick.empty() || nick.size() > 32) throw ServiceError(400, "nickname must have 1 to 32 characters");
    for (unsigned char c : nick)
      if (c < 0x20 || c == 0x7f) throw ServiceError(400, "nickname contains control characters");
    auto s = find_session(req["session"].get<std::string>());
    std::lock_guard<std::mutex> lock(s->mu);
    if (!s->shaking) throw ServiceError(422, "hall of fame entries need a session with shaking enabled");
    if (!s->state.terminal() || s->state.status != win_for(s->human()))
      throw ServiceError(409, "only a finished game won by the human qualifies");
    if (s->hof_submitted) throw ServiceError(409, "this session is already in the hall of fame");
    HallEntry e{nick, s->finished_ms - s->started_ms, config.clock(), s->rt->fingerprint, s->id};
    s->hof_submitted = true;
    {
      std::lock_guard<std::mutex> hl(hall_mu);
      hall.push_back(e);
    }
    append("halloffame.jsonl", hall_json(e));
    return {201, hall_json(e).dump()};
  }

  HttpResponse route(std::string_view method, std::string_view target, std::string_view body) {
    std::string_view path = target, query;
    if (size_t q = target.find('?'); q != std::string_view::npos) {
      path = target.substr(0, q);
      query = target.substr(q + 1);
    }
    auto parts = split_path(path);
    auto need = [&](std::string_view m) {
      if (method != m) throw ServiceError(405, "method not allowed");
    };
    if (parts.size() >= 2 && parts[0] == "api") {
      const std::string& what = parts[1];
      if (what == "health" && parts.size() == 2) {
        need("GET");
        return {200, json{{"ok", true}}.dump()};
      }
      if (what == "games") {
        if (parts.size() == 2) {
          need("POST");
          return create_game(body);
        }
        if (parts.size() == 3) {
          need("GET");
          return get_state(parts[2]);
        }
        if (parts.size() == 4 && parts[3] == "moves") {
          need("POST");
          return post_move(parts[2], body);
        }
      }
      if (what == "experience" && parts.size() == 2) {
        need("POST");
        return post_experience(body);
      }
      if (what == "halloffame" && parts.size() == 2) {
        if (method == "GET") return get_hall(parse_query(query));
        need("POST");
        return post_hall(body);
      }
    }
    throw ServiceError(404, "no route for " + std::string(path));
  }

  // ---- recovery ----

  void replay_sessions() {
    std::ifstream in(file("sessions.jsonl"));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      json ev = json::parse(line, nullptr, false);
      if (ev.is_discarded() || !ev.is_object() || !ev.contains("event") || !ev.contains("id")) {
        std::cerr << "sessions.jsonl:" << lineno << ": skipping malformed line\n";
        continue;
      }
      try {
        replay_event(ev);
      } catch (const std::exception& e) {
        std::cerr << "sessions.jsonl:" << lineno << ": " << e.what() << '\n';
        auto it = sessions.find(ev["id"].get<std::string>());
        if (it != sessions.end()) it->second->corrupt = true;
      }
    }
  }

  void replay_event(const json& ev) {
    const std::string kind = ev.at("event").get<std::string>();
    const std::string id = ev.at("id").get<std::string>();
    if (kind == "create") {
      auto s = std::make_shared<Session>();
      s->id = id;
      s->rt = runtime(spec_from_json(ev.at("spec").dump()));
      s->shaking = ev.at("shaking").get<bool>();
      s->multi_move = ev.at("multi_move").get<bool>();
      s->engine = ev.at("engine") == "red" ? Player::kRed : Player::kGreen;
      s->seed = ev.at("seed").get<uint64_t>();
      s->state = s->rt->engine.initial_state();
      s->frame.resize(s->rt->spec.board->vertex_count());
      std::iota(s->frame.begin(), s->frame.end(), 0);
      s->record.engine = s->engine;
      s->started_ms = ev.at("t").get<int64_t>();
      sessions[id] = s;
      return;
    }
    auto it = sessions.find(id);
    if (it == sessions.end()) throw std::runtime_error("event for unknown session " + id);
    Session& s = *it->second;
    if (s.corrupt) return;
    if (kind == "move") {
      Move m{ev.at("edges").get<std::vector<int>>()};
      Player mover = ev.at("mover") == "red" ? Player::kRed : Player::kGreen;
      if (s.state.terminal() || mover != s.state.to_move) throw std::runtime_error("move out of turn");
      std::string why = s.rt->engine.check_move(s.state, m);
      if (!why.empty()) throw std::runtime_error("illegal logged move: " + why);
      apply(s, m);
    } else if (kind == "shake") {
      auto perm = ev.at("perm").get<std::vector<int>>();
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      for (size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i) || sorted.size() != s.frame.size())
          throw std::runtime_error("bad permutation");
      s.frame = compose(perm, s.frame);
    } else if (kind == "end") {
      if (!s.state.terminal()) throw std::runtime_error("end event for a running game");
      close(s, ev.at("t").get<int64_t>());
    } else {
      throw std::runtime_error("unknown event " + kind);
    }
  }

  void load_hall() {
    std::ifstream in(file("halloffame.jsonl"));
    std::string line;
    while (std::getline(in, line)) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      try {
        HallEntry e{j.at("nickname").get<std::string>(), j.at("elapsed_ms").get<int64_t>(),
                    j.at("timestamp").get<int64_t>(), parse_hex64(j.at("fingerprint").get<std::string>()),
                    j.at("session").get<std::string>()};
        if (auto it = sessions.find(e.session); it != sessions.end()) it->second->hof_submitted = true;
        hall.push_back(std::move(e));
      } catch (const std::exception&) {
        std::cerr << "halloffame.jsonl: skipping malformed entry\n";
      }
    }
  }
};

GameService::GameService(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
GameService::~GameService() = default;

HttpResponse GameService::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    return impl_->route(method, path, body);
  } catch (const ServiceError& e) {
    return {e.status, error_body(e.status, e.what()).dump()};
  } catch (const BudgetExceeded& e) {
    return {503, error_body(503, e.what()).dump()};
  } catch (const std::exception& e) {
    return {500, error_body(500, e.what()).dump()};
  }
}

size_t GameService::session_count() const {
  std::shared_lock<std::shared_mutex> lock(impl_->sessions_mu);
  return impl_->sessions.size();
}

std::optional<LearningTable> GameService::learning_table(uint64_t spec_fingerprint) const {
  auto t = impl_->learning_snapshot(spec_fingerprint);
  if (!t) return std::nullopt;
  return *t;
}

std::shared_ptr<const StrategyTable> GameService::strategy_for(const GameSpec& spec) {
  auto rt = impl_->runtime(spec);
  impl_->table(*rt);
  return rt->table;
}

}  // namespace ramsey
