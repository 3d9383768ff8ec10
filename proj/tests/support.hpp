#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "c2lab/multigraph.hpp"
#include "c2lab/poly.hpp"

namespace c2lab::testkit {

Multigraph complete_graph(unsigned n);
Multigraph circulant(unsigned n, std::vector<unsigned> steps);

// Spanning tree first, then extra edges (loops and parallels allowed unless
// simple). Orientation and edge order are shuffled.
Multigraph random_connected(std::mt19937_64& rng, unsigned vmin, unsigned vmax, unsigned emax, bool loops = true,
                            bool simple = false);
Multigraph random_graph(std::mt19937_64& rng, unsigned vmax, unsigned emax);

// All connected multigraphs (loops allowed) with 1..max_edges edges, one per
// isomorphism class.
std::vector<Multigraph> connected_multigraphs(unsigned max_edges);

// Dense-ish random polynomial in vars with coefficients in [-c, c].
Poly random_poly(std::mt19937_64& rng, const std::vector<unsigned>& vars, unsigned max_deg_per_var,
                 unsigned max_total, int c, unsigned terms);
Poly random_homogeneous(std::mt19937_64& rng, const std::vector<unsigned>& vars, unsigned degree, int c,
                        unsigned terms);

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace c2lab::testkit
