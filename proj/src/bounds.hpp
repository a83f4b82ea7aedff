#pragma once

#include "graph.hpp"
#include "paths.hpp"

namespace efg {

// Extremal entry-to-terminal energies with witness paths. Both bounds
// re-evaluate exactly through path_energy on their witnesses.
struct EnergyBounds {
  double bcec = 0.0;
  double wcec = 0.0;
  Path bcec_path;
  Path wcec_path;
};

// Topological-order dynamic programming; rejects cyclic graphs and
// graphs whose entry cannot reach any terminal.
EnergyBounds energy_bounds(const Graph& graph);

}  // namespace efg
