#pragma once

#include "vecflow/graph.hpp"

namespace vecflow {

/// G_{a,b,p}: v_i = i, w_i = p + i. Edge ids: v_i v_{i+a} = i, w_i w_{i+b} = p + i,
/// v_i w_i = 2p + i. With a = p/2 the layer is a doubled matching (parallel
/// pairs), so every parameter choice has exactly 3p edges.
Multigraph quasi_petersen(int a, int b, int p);

/// G(n,k): u_i = i, v_i = n + i; edges u_i u_{i+1}, u_i v_i, v_i v_{i+k}.
Multigraph generalized_petersen(int n, int k);

Multigraph complete_graph(int n);
Multigraph complete_bipartite(int m, int n);
Multigraph cycle_graph(int n);
Multigraph cube_graph();
/// Triangular prism: triangles 0,1,2 and 3,4,5 joined by i -- i+3.
Multigraph prism_graph();
/// Two triangles {0,1,2}, {3,4,5} joined by the bridge 2 -- 3 (edge id 6).
Multigraph bridged_triangles();

}  // namespace vecflow
