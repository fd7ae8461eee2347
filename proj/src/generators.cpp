#include "vecflow/generators.hpp"

#include <string>

#include "vecflow/errors.hpp"

namespace vecflow {

Multigraph quasi_petersen(int a, int b, int p) {
  if (p < 3) throw PreconditionError("parameter_range", "quasi_petersen needs p >= 3");
  auto in_range = [p](int x) { return 6 * x >= p && 2 * x <= p; };  // ceil(p/6) <= x <= floor(p/2)
  if (!in_range(a) || !in_range(b))
    throw PreconditionError("parameter_range", "quasi_petersen needs ceil(p/6) <= a, b <= floor(p/2), got a=" +
                                                   std::to_string(a) + " b=" + std::to_string(b) +
                                                   " p=" + std::to_string(p));
  Multigraph g;
  for (int i = 0; i < 2 * p; ++i) g.add_vertex(i);
  for (int i = 0; i < p; ++i) g.add_edge(i, i, (i + a) % p);
  for (int i = 0; i < p; ++i) g.add_edge(p + i, p + i, p + (i + b) % p);
  for (int i = 0; i < p; ++i) g.add_edge(2 * p + i, i, p + i);
  return g;
}

Multigraph generalized_petersen(int n, int k) {
  if (n < 3 || k < 1 || 2 * k >= n)
    throw PreconditionError("parameter_range", "generalized_petersen needs n >= 3 and 1 <= k < n/2");
  Multigraph g;
  for (int i = 0; i < 2 * n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) g.add_edge(i, n + i);
  for (int i = 0; i < n; ++i) g.add_edge(n + i, n + (i + k) % n);
  return g;
}

Multigraph complete_graph(int n) {
  if (n < 1) throw PreconditionError("parameter_range", "complete_graph needs n >= 1");
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Multigraph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1) throw PreconditionError("parameter_range", "complete_bipartite needs m, n >= 1");
  Multigraph g;
  for (int i = 0; i < m + n; ++i) g.add_vertex(i);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) g.add_edge(i, m + j);
  return g;
}

Multigraph cycle_graph(int n) {
  if (n < 3) throw PreconditionError("parameter_range", "cycle_graph needs n >= 3");
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Multigraph cube_graph() {
  Multigraph g;
  for (int i = 0; i < 8; ++i) g.add_vertex(i);
  for (int i = 0; i < 8; ++i)
    for (int bit = 1; bit < 8; bit <<= 1)
      if (!(i & bit)) g.add_edge(i, i | bit);
  return g;
}

Multigraph prism_graph() {
  Multigraph g;
  for (int i = 0; i < 6; ++i) g.add_vertex(i);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(3, 5);
  for (int i = 0; i < 3; ++i) g.add_edge(i, i + 3);
  return g;
}

Multigraph bridged_triangles() {
  Multigraph g;
  for (int i = 0; i < 6; ++i) g.add_vertex(i);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(3, 5);
  g.add_edge(2, 3);
  return g;
}

}  // namespace vecflow
