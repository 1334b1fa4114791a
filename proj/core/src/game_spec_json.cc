#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "ramsey/game.h"

namespace ramsey {

using nlohmann::ordered_json;

namespace {

ordered_json graph_json(const Graph& g) {
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return ordered_json{{"n", g.vertex_count()}, {"edges", edges}};
}

std::vector<Edge> edges_from_json(const ordered_json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be [i, j]");
    out.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return out;
}

Graph graph_from_json(const ordered_json& j) {
  if (j.is_string()) return parse_target_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw std::invalid_argument("graph needs n and edges");
  return Graph(j.at("n").get<int>(), edges_from_json(j.at("edges")));
}

ordered_json edge_list_json(const Graph& board, const std::vector<int>& idx) {
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  ordered_json out = ordered_json::array();
  for (int e : sorted) out.push_back({board.edge(e).u, board.edge(e).v});
  return out;
}

std::vector<int> edge_indices(const Graph& board, const ordered_json& j) {
  std::vector<int> out;
  for (const Edge& e : edges_from_json(j)) {
    int idx = board.edge_index(e.u, e.v);
    if (idx < 0) throw std::invalid_argument("precolored pair is not a board edge");
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Graph parse_target_name(std::string_view name) {
  auto number = [&](size_t from) {
    std::string digits(name.substr(from));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad target name '" + std::string(name) + "'");
    return std::stoi(digits);
  };
  if (name == "bowtie" || name == "bow-tie") return bow_tie_graph();
  if (name.size() > 1 && (name[0] == 'k' || name[0] == 'K')) return clique_graph(number(1));
  if (name.substr(0, 5) == "topus") return topus_graph(number(5));
  throw std::invalid_argument("unknown target '" + std::string(name) + "'");
}

std::string spec_to_json(const GameSpec& spec) {
  ordered_json j;
  j["variant"] = variant_name(spec.variant);
  j["n"] = spec.board->vertex_count();
  if (!spec.board->is_complete()) j["edges"] = graph_json(*spec.board)["edges"];
  j["target"] = graph_json(spec.target_red);
  if (spec.variant == GameVariant::kAsymmetricAvoid) j["target_green"] = graph_json(spec.target_green);
  j["precolor_red"] = edge_list_json(*spec.board, spec.precolor_red);
  j["precolor_green"] = edge_list_json(*spec.board, spec.precolor_green);
  return j.dump();
}

GameSpec spec_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec JSON: ") + e.what());
  }
  try {
    GameSpec s;
    s.variant = parse_variant(j.at("variant").get<std::string>());
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("n must be positive");
    s.board = j.contains("edges") ? make_board(Graph(n, edges_from_json(j.at("edges"))))
                                  : complete_board(n);
    s.target_red = graph_from_json(j.at("target"));
    s.target_green = j.contains("target_green") ? graph_from_json(j.at("target_green")) : s.target_red;
    if (j.contains("precolor_red")) s.precolor_red = edge_indices(*s.board, j.at("precolor_red"));
    if (j.contains("precolor_green"))
      s.precolor_green = edge_indices(*s.board, j.at("precolor_green"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spec JSON: ") + e.what());
  }
}

uint64_t GameSpec::fingerprint() const {
  // FNV-1a over the canonical JSON form.
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : spec_to_json(*this)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ramsey
