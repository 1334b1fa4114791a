#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/game.h"
#include "ramsey/graph.h"

namespace ramsey {

struct WitnessReport {
  bool complete = false;  // no uncolored edges
  bool mono_free = false;
  // A monochromatic K_k when one exists.
  std::vector<int> clique;
  Color clique_color = Color::kUncolored;
  // Per-vertex red and green degrees; regular when each is constant.
  std::vector<int> red_degree;
  std::vector<int> green_degree;
  bool regular = false;

  bool passes(bool require_regular) const { return complete && mono_free && (!require_regular || regular); }
};

// Works on partial colorings too; complete reports whether p is full.
WitnessReport verify_witness(const ColoredPosition& p, int k);

// Adds a twin u of v on K_{n+1}: color{x,u} = color{x,v}, {u,v} uncolored.
ColoredPosition extend_by_duplicate(const ColoredPosition& p, int v);

// Edge {i,j} red iff i - j is a nonzero square mod q; q prime, q = 1 mod 4.
ColoredPosition paley_coloring(int q);

// First line n, then "i j c" per edge with c in {r, g, u}.
std::string format_witness(const ColoredPosition& p);
ColoredPosition parse_witness(std::string_view text);
ColoredPosition load_witness(const std::string& path);

// Smallest balanced move count s (ceil(s/2) red, floor(s/2) green on the
// uncolored edges) at which every such coloring holds a monochromatic
// target. Empty when no s works. Throws std::length_error past
// max_uncolored.
std::optional<int> arrowing_threshold_c(const GameSpec& spec, int max_uncolored = 24);

}  // namespace ramsey
