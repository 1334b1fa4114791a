// Command-line front end: solve, stats, play, reduce, count, estimate,
// verify-witness, serve, plus bounds and threshold.
#include <algorithm>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramsey/adaptive.h"
#include "ramsey/estimate.h"
#include "ramsey/formula.h"
#include "ramsey/polya.h"
#include "ramsey/reductions.h"
#include "ramsey/service.h"
#include "ramsey/solver.h"
#include "ramsey/table_io.h"
#include "ramsey/witness.h"

using namespace ramsey;
using nlohmann::ordered_json;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecArgs {
  std::string variant = "avoid";
  int n = 6;
  std::string target = "k3";
  std::string target_green;
  std::string spec_file;

  void add(CLI::App* app) {
    app->add_option("--variant", variant, "avoid, avoid-misere, avoid-plus, achieve, achieve-prime, "
                                          "achieve-weak, asymmetric-avoid")
        ->capture_default_str();
    app->add_option("--n", n, "vertices of the complete board")->capture_default_str();
    app->add_option("--target", target, "k<k>, bowtie or topus<m>")->capture_default_str();
    app->add_option("--target-green", target_green, "green target for asymmetric-avoid");
    app->add_option("--spec", spec_file, "spec JSON file; overrides the flags above");
  }

  GameSpec build() const {
    GameSpec spec;
    if (!spec_file.empty()) {
      spec = spec_from_json(read_file(spec_file));
    } else {
      if (n < 1) throw CliError("--n must be positive");
      spec = make_spec(parse_variant(variant), n, parse_target_name(target));
      if (!target_green.empty()) spec.target_green = parse_target_name(target_green);
    }
    spec.validate();
    return spec;
  }

  std::string label() const {
    if (!spec_file.empty()) {
      std::string base = spec_file.substr(spec_file.find_last_of('/') + 1);
      return base.substr(0, base.find('.'));
    }
    return variant + "-n" + std::to_string(n) + "-" + target;
  }

  static std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Non-complete boards (reduction outputs) solve faster with precomputed
// target copies.
GameEngine engine_for(const GameSpec& spec) {
  if (spec.board->is_complete()) return GameEngine(spec);
  return GameEngine(spec, incidence_detector(spec));
}

ordered_json stats_json(const StrategyTable& t) {
  ordered_json j;
  j["root"] = value_name(t.root_value());
  j["entries"] = t.size();
  j["nonisomorphic_with_terminal"] = t.stats().nonisomorphic_with_terminal;
  j["nonisomorphic_stored"] = t.stats().nonisomorphic_stored;
  if (t.stats().earliest_forced_win)
    j["earliest_forced_win"] = *t.stats().earliest_forced_win;
  else
    j["earliest_forced_win"] = nullptr;
  return j;
}

void print_stats(const ordered_json& j, bool json_out) {
  if (json_out) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

std::string board_text(const GameState& s) {
  std::ostringstream out;
  const Graph& g = s.position.board();
  for (int e = 0; e < g.edge_count(); ++e) {
    Color c = s.position.color(e);
    out << g.edge(e).u << '-' << g.edge(e).v << ':' << (c == Color::kRed ? 'R' : c == Color::kGreen ? 'G' : '.')
        << (e + 1 < g.edge_count() ? ' ' : '\n');
  }
  return out.str();
}

int run_play(const SpecArgs& sa, const std::string& engine_side, uint64_t seed, const std::string& learn_file,
             int factor, bool shaking) {
  GameSpec spec = sa.build();
  if (!spec.board->is_complete() && shaking) throw CliError("--shake needs a complete board");
  GameEngine engine = engine_for(spec);
  std::cout << "solving..." << std::flush;
  StrategyTable table = solve(engine);
  std::cout << " done, root " << value_name(table.root_value()) << '\n';
  LearningTable learn(spec);
  if (!learn_file.empty() && std::ifstream(learn_file).good()) {
    learn = load_learning_table(learn_file);
    if (learn.fingerprint() != spec.fingerprint()) throw CliError("learning file belongs to another spec");
  }
  SalienceWeights salience = SalienceWeights::for_board(*spec.board);
  Player eng = engine_side == "red" ? Player::kRed : Player::kGreen;
  Rng rng(seed);
  GameRecord record;
  record.engine = eng;
  GameState s = engine.initial_state();
  // Shaking relabels what the human sees; moves are mapped back.
  std::vector<int> frame(spec.board->vertex_count());
  std::iota(frame.begin(), frame.end(), 0);
  auto shown = [&] {
    GameState d = s;
    if (shaking) d = permute_state(s, frame);
    return d;
  };
  while (!s.terminal()) {
    if (s.to_move == eng) {
      Move m = choose_move(engine, s, table, learn, salience, rng);
      record.steps.push_back({table.keyer().key(s.position, s.to_move), m, s.to_move});
      s = engine.apply_unchecked(s, m);
      std::cout << "engine:";
      for (int e : m.edges) {
        const Edge& ed = spec.board->edge(e);
        std::cout << ' ' << frame[ed.u] << ' ' << frame[ed.v];
      }
      std::cout << '\n';
      if (shaking && !s.terminal()) {
        auto perm = shake(s, rng).first;
        for (int& v : frame) v = perm[v];
        std::cout << "shaken:";
        for (int v : perm) std::cout << ' ' << v;
        std::cout << '\n';
      }
      continue;
    }
    std::cout << board_text(shown()) << player_name(s.to_move) << " to move (pairs 'u v', 'quit')> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) return 1;
    if (line == "quit") return 0;
    std::istringstream in(line);
    std::vector<int> inverse(frame.size());
    for (size_t v = 0; v < frame.size(); ++v) inverse[frame[v]] = static_cast<int>(v);
    Move m;
    int u, v;
    bool bad = false;
    while (in >> u >> v) {
      if (u < 0 || v < 0 || u >= static_cast<int>(frame.size()) || v >= static_cast<int>(frame.size())) {
        bad = true;
        break;
      }
      int e = spec.board->edge_index(inverse[u], inverse[v]);
      if (e < 0) {
        bad = true;
        break;
      }
      m.edges.push_back(e);
    }
    std::sort(m.edges.begin(), m.edges.end());
    if (std::adjacent_find(m.edges.begin(), m.edges.end()) != m.edges.end()) bad = true;
    std::string why = bad || m.edges.empty() ? "expected vertex pairs of board edges" : engine.check_move(s, m);
    if (!why.empty()) {
      std::cout << "illegal: " << why << '\n';
      continue;
    }
    record.steps.push_back({table.keyer().key(s.position, s.to_move), m, s.to_move});
    s = engine.apply_unchecked(s, m);
  }
  std::cout << board_text(shown()) << "result: " << status_name(s.status) << '\n';
  record.outcome = s.status;
  record.forced_loss = s.reason == EndReason::kNoMoves;
  if (!learn_file.empty()) {
    learn = update_after_game(engine, table, learn, record, factor);
    save_learning_table(learn_file, learn);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey game toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  app.add_flag("--json", json_out, "machine-readable output and errors");

  SpecArgs spec_args;

  auto* solve_cmd = app.add_subcommand("solve", "solve a game and write its strategy table");
  spec_args.add(solve_cmd);
  std::string out_file;
  bool raw = false;
  uint64_t max_entries = 200'000'000;
  solve_cmd->add_option("--out", out_file, "table file (default <label>.grst)");
  solve_cmd->add_flag("--raw", raw, "memoize uncanonicalized positions");
  solve_cmd->add_option("--max-entries", max_entries)->capture_default_str();

  auto* stats_cmd = app.add_subcommand("stats", "solve and print position statistics");
  spec_args.add(stats_cmd);
  std::string table_file;
  stats_cmd->add_option("--table", table_file, "summarize an existing table file instead of solving");

  auto* play_cmd = app.add_subcommand("play", "play against the engine on stdin/stdout");
  spec_args.add(play_cmd);
  std::string engine_side = "green", learn_file;
  uint64_t seed = 1;
  int factor = 4;
  bool shaking = false;
  play_cmd->add_option("--engine", engine_side)->check(CLI::IsMember({"red", "green"}))->capture_default_str();
  play_cmd->add_option("--seed", seed)->capture_default_str();
  play_cmd->add_option("--learning", learn_file, "GRLN1 file read before and updated after the game");
  play_cmd->add_option("--factor", factor, "learning factor")->check(CLI::PositiveNumber)->capture_default_str();
  play_cmd->add_flag("--shake", shaking, "relabel the board after each engine move");

  auto* reduce_cmd = app.add_subcommand("reduce", "build the game for a positive formula");
  std::string kind = "avoid", formula_file, reduce_out;
  bool reduce_verify = false;
  uint64_t max_states = 50'000'000;
  reduce_cmd->add_option("--kind", kind)->check(CLI::IsMember({"avoid", "achieve-weak", "achieve"}))->capture_default_str();
  reduce_cmd->add_option("--formula", formula_file, "POSCNF/POSDNF file")->required();
  reduce_cmd->add_option("--out", reduce_out, "spec JSON output (default stdout)");
  reduce_cmd->add_flag("--verify", reduce_verify, "solve formula and graph game and compare winners");
  reduce_cmd->add_option("--max-states", max_states)->capture_default_str();

  auto* count_cmd = app.add_subcommand("count", "exact non-isomorphic coloring counts");
  int count_n = 18, count_r = -1, count_g = -1;
  count_cmd->add_option("--n", count_n)->required();
  count_cmd->add_option("--r", count_r, "red edges");
  count_cmd->add_option("--g", count_g, "green edges");

  auto* est_cmd = app.add_subcommand("estimate", "Monte-Carlo count of mono-free positions");
  int est_n = 18, est_k = 4, threads = 1;
  std::string method = "l1";
  uint64_t samples = 1000;
  double schedule_scale = 1.0;
  est_cmd->add_option("--n", est_n)->required();
  est_cmd->add_option("--k", est_k)->required();
  est_cmd->add_option("--method", method)->check(CLI::IsMember({"l1", "l2"}))->capture_default_str();
  est_cmd->add_option("--seed", seed)->capture_default_str();
  est_cmd->add_option("--samples", samples, "L1 samples per stratum")->capture_default_str();
  est_cmd->add_option("--schedule-scale", schedule_scale, "multiplies the L2 schedule")->capture_default_str();
  est_cmd->add_option("--threads", threads)->capture_default_str();

  auto* wit_cmd = app.add_subcommand("verify-witness", "check a coloring for monochromatic cliques");
  std::string wit_file, wit_out;
  int wit_k = 4, paley = 0, duplicate = -1;
  bool regular = false;
  wit_cmd->add_option("--file", wit_file, "witness file");
  wit_cmd->add_option("--paley", paley, "use the quadratic-residue coloring of K_q");
  wit_cmd->add_option("--k", wit_k)->capture_default_str();
  wit_cmd->add_flag("--regular", regular, "also require each color class to be regular");
  wit_cmd->add_option("--duplicate", duplicate, "check the one-vertex extension twinning this vertex");
  wit_cmd->add_option("--write", wit_out, "write the checked coloring to this file");

  auto* serve_cmd = app.add_subcommand("serve", "HTTP game service");
  std::string host = "127.0.0.1", data_dir;
  int port = 8080;
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--data-dir", data_dir, "defaults to $RAMSEY_DATA_DIR, else ./ramsey-data");
  uint64_t serve_seed = 0;
  serve_cmd->add_option("--seed", serve_seed, "0 draws from the OS")->capture_default_str();
  serve_cmd->add_option("--factor", factor)->check(CLI::PositiveNumber)->capture_default_str();

  auto* bounds_cmd = app.add_subcommand("bounds", "Erdos-Selfridge style verdict for K_n, K_k");
  int bn = 6, bk = 3;
  bounds_cmd->add_option("--n", bn)->required();
  bounds_cmd->add_option("--k", bk)->required();

  auto* thr_cmd = app.add_subcommand("threshold", "balanced move count that forces the target");
  spec_args.add(thr_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (json_out && e.get_exit_code() != 0) {
      std::cout << ordered_json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << '\n';
      return 2;
    }
    return app.exit(e);
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    if (*solve_cmd) {
      GameSpec spec = spec_args.build();
      GameEngine engine = engine_for(spec);
      StrategyTable t = solve(engine, SolveOptions{!raw, max_entries});
      if (out_file.empty()) out_file = spec_args.label() + ".grst";
      save_strategy_table(out_file, t);
      ordered_json j = stats_json(t);
      j["file"] = out_file;
      j["seconds"] = seconds_since(t0);
      print_stats(j, json_out);
    } else if (*stats_cmd) {
      GameSpec spec = spec_args.build();
      if (!table_file.empty()) {
        GameEngine engine = engine_for(spec);
        StrategyTable t = load_strategy_table(table_file, spec);
        ordered_json j;
        j["root"] = value_name(t.at(engine.initial_state()));
        j["entries"] = t.size();
        j["content_fingerprint"] = t.content_fingerprint();
        print_stats(j, json_out);
      } else {
        StrategyTable t = solve(engine_for(spec));
        ordered_json j = stats_json(t);
        j["seconds"] = seconds_since(t0);
        print_stats(j, json_out);
      }
    } else if (*play_cmd) {
      return run_play(spec_args, engine_side, seed, learn_file, factor, shaking);
    } else if (*reduce_cmd) {
      PositiveFormula f = parse_formula(SpecArgs::read_file(formula_file));
      ReductionKind rk = parse_reduction_kind(kind);
      ReductionOutput r = reduce(f, rk);
      std::string text = spec_to_json(r.spec);
      if (reduce_out.empty() && !reduce_verify) {
        std::cout << text << '\n';
      } else if (!reduce_out.empty()) {
        std::ofstream(reduce_out) << text << '\n';
      }
      if (reduce_verify) {
        ReductionCheck c = verify_reduction(f, rk, max_states);
        ordered_json j = {{"vertices", r.spec.board->vertex_count()},
                          {"edges", r.spec.board->edge_count()},
                          {"uncolored", r.edge.size()},
                          {"formula_winner", winner_name(c.formula_winner)},
                          {"graph_value", value_name(c.graph_value)},
                          {"graph_states", c.graph_states},
                          {"preserved", c.preserved}};
        print_stats(j, json_out);
        if (!c.preserved) return 3;
      }
    } else if (*count_cmd) {
      ordered_json j = {{"n", count_n}};
      if (count_r >= 0 || count_g >= 0) {
        if (count_r < 0 || count_g < 0) throw CliError("give both --r and --g");
        j["r"] = count_r;
        j["g"] = count_g;
        j["count"] = count_colorings(count_n, count_r, count_g).get_str();
      } else {
        j["total_legal_positions"] = total_legal_positions(count_n).get_str();
      }
      print_stats(j, json_out);
    } else if (*est_cmd) {
      Rng rng(seed);
      EstimateOptions opt;
      opt.threads = threads;
      EstimateReport rep;
      if (method == "l1") {
        rep = estimate_L1(est_n, est_k, samples, rng, opt);
      } else {
        if (!(schedule_scale > 0)) throw CliError("--schedule-scale must be positive");
        rep = estimate_L2(
            est_n, est_k,
            [&](int c, int e) {
              return std::max<uint64_t>(1, static_cast<uint64_t>(default_l2_schedule(c, e) * schedule_scale));
            },
            rng, opt);
      }
      ordered_json j = {{"method", rep.method},
                        {"n", rep.n},
                        {"k", rep.k},
                        {"seed", seed},
                        {"estimate", rep.estimate_double()},
                        {"ci_low", rep.ci_low},
                        {"ci_high", rep.ci_high},
                        {"confidence", 0.99},
                        {"samples", rep.total_samples},
                        {"seconds", seconds_since(t0)}};
      print_stats(j, json_out);
    } else if (*wit_cmd) {
      if (wit_file.empty() == (paley == 0)) throw CliError("give exactly one of --file and --paley");
      ColoredPosition p = paley ? paley_coloring(paley) : load_witness(wit_file);
      WitnessReport base = verify_witness(p, wit_k);
      ordered_json j = {{"n", p.vertex_count()}, {"k", wit_k}, {"complete", base.complete},
                        {"mono_free", base.mono_free}, {"regular", base.regular}};
      if (base.regular && p.vertex_count() > 0) {
        j["red_degree"] = base.red_degree[0];
        j["green_degree"] = base.green_degree[0];
      }
      if (!base.mono_free) j["clique"] = base.clique;
      bool ok = base.passes(regular);
      if (duplicate >= 0) {
        p = extend_by_duplicate(p, duplicate);
        WitnessReport ext = verify_witness(p, wit_k);
        j["extended"] = {{"n", p.vertex_count()}, {"red", p.red_count()}, {"green", p.green_count()},
                         {"uncolored", p.uncolored_count()}, {"mono_free", ext.mono_free}};
        ok = ok && ext.mono_free;
      }
      if (!wit_out.empty()) std::ofstream(wit_out) << format_witness(p);
      j["passes"] = ok;
      print_stats(j, json_out);
      if (!ok) return 3;
    } else if (*serve_cmd) {
      ServiceConfig cfg;
      cfg.data_dir = data_dir.empty() ? data_dir_from_env("ramsey-data") : data_dir;
      cfg.seed = serve_seed;
      cfg.learning_factor = factor;
      GameService service(cfg);
      std::signal(SIGINT, [](int) { stop_http_server(); });
      std::signal(SIGTERM, [](int) { stop_http_server(); });
      std::cerr << "serving on http://" << host << ':' << port << " (data in " << cfg.data_dir << ")\n";
      if (!run_http_server(service, host, port)) throw CliError("cannot listen on " + host + ":" + std::to_string(port));
    } else if (*bounds_cmd) {
      print_stats({{"n", bn}, {"k", bk}, {"verdict", bounds_name(bounds_predicate(bn, bk))}}, json_out);
    } else if (*thr_cmd) {
      auto c = arrowing_threshold_c(spec_args.build());
      ordered_json j;
      j["c"] = c ? ordered_json(*c) : ordered_json(nullptr);
      j["parity"] = c ? ordered_json(*c % 2 == 0 ? "even" : "odd") : ordered_json(nullptr);
      print_stats(j, json_out);
    }
  } catch (const std::exception& e) {
    if (json_out)
      std::cout << ordered_json{{"error", {{"kind", "runtime"}, {"message", e.what()}}}}.dump() << '\n';
    else
      std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
