#ifndef ESK_INSTANCE_HPP
#define ESK_INSTANCE_HPP

#include "esk/graph.hpp"
#include "esk/rational.hpp"
#include "esk/tree.hpp"

namespace esk {

// A (graph, tree) pair under test, with the standing hypotheses cached.
struct Instance {
  Graph g;
  Tree t;
  int k = 0;
  bool avedeg_ok = false;       // avedeg(G) > k-2, exact comparison
  bool k_ge_n_minus_4 = false;  // k >= n-4

  static Instance make(Graph g, Tree t) {
    Instance inst;
    inst.k = t.order();
    inst.avedeg_ok = avedeg(g) > Rational(inst.k - 2);
    inst.k_ge_n_minus_4 = inst.k >= g.order() - 4;
    inst.g = std::move(g);
    inst.t = std::move(t);
    return inst;
  }
};

// smallest edge count forced by avedeg(G) > k-2 at order k+4
inline long paper_edge_threshold(int k) {
  return 1 + static_cast<long>(k - 2) * (k + 4) / 2;
}

}  // namespace esk

#endif
