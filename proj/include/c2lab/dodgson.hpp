#pragma once

#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "c2lab/multigraph.hpp"
#include "c2lab/poly.hpp"

namespace c2lab {

using EdgeWord = std::vector<unsigned>;

// Sign of the permutation sorting w into increasing order; 0 on a repeated letter.
int word_sign(const EdgeWord& w);

// A row/column label of the expanded Laplacian.
struct Letter {
  bool vertex = false;
  unsigned id = 0;  // edge label or vertex index
  friend bool operator==(const Letter&, const Letter&) = default;
};

using PolyMatrix = std::vector<std::vector<Poly>>;

struct LaplacianMatrix {
  std::vector<Letter> letters;
  PolyMatrix m;
};

// Edges (by label) before vertices (by index).
std::vector<Letter> natural_order(const Multigraph& g);
LaplacianMatrix expanded_laplacian(const Multigraph& g);
LaplacianMatrix expanded_laplacian(const Multigraph& g, const std::vector<Letter>& order);

// Fraction-free elimination with full pivoting.
Poly determinant(PolyMatrix m);

// Dodgson with an explicit ordering of all letters and an explicit struck vertex.
Poly dodgson_raw(const Multigraph& g, const EdgeWord& I, const EdgeWord& J, const EdgeSet& K,
                 const std::vector<Letter>& order, unsigned struck);

// Thread-safe memo keyed by the labelled graph and the indices.
class DodgsonCache {
 public:
  bool lookup(const std::string& key, Poly& out) const;
  void store(const std::string& key, const Poly& value);
  size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Poly> map_;
};

Poly dodgson(const Multigraph& g, const EdgeWord& I = {}, const EdgeWord& J = {}, const EdgeSet& K = {},
             DodgsonCache* cache = nullptr);
Poly dodgson(const GraphSum& g, const EdgeWord& I = {}, const EdgeWord& J = {}, const EdgeSet& K = {},
             DodgsonCache* cache = nullptr);

// Sum over spanning trees of the product of the variables not in the tree.
Poly spanning_tree_poly(const Multigraph& g);

struct ThreeValentData {
  unsigned e1 = 0, e2 = 0, e3 = 0;
  Poly f0, f1, f2, f3, f123;
};

// Evaluated on a copy of g whose three edges at v all leave v.
ThreeValentData three_valent_data(const Multigraph& g, unsigned v);
// Same, with the three edges given explicitly (they must be the edges at v).
ThreeValentData three_valent_data(const Multigraph& g, unsigned v, unsigned e1, unsigned e2, unsigned e3);
// Copy of g in which every non-loop edge at v leaves v.
Multigraph orient_outward(const Multigraph& g, unsigned v);

Poly five_invariant(const Multigraph& g, unsigned e1, unsigned e2, unsigned e3, unsigned e4, unsigned e5);

}  // namespace c2lab
