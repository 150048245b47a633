// Copyright 2026 The simplexnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "oracles.hpp"
#include "simplexnet/graph.hpp"
#include "simplexnet/growth.hpp"
#include "simplexnet/qanalysis.hpp"
#include "simplexnet/rng.hpp"
#include "simplexnet/transform.hpp"

using namespace simplexnet;

namespace {

LabeledGraph clique(std::size_t n, std::optional<std::pair<VertexId, VertexId>> defect = {}) {
  LabeledGraph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      g.add_edge(u, v, defect && defect->first == u && defect->second == v ? BondType::defect
                                                                            : BondType::pure);
  return g;
}

LabeledGraph two_triangles_sharing_an_edge() {
  LabeledGraph g(4);
  g.add_edge(0, 1, BondType::pure);
  g.add_edge(0, 2, BondType::pure);
  g.add_edge(1, 2, BondType::pure);
  g.add_edge(1, 3, BondType::pure);
  g.add_edge(2, 3, BondType::pure);
  return g;
}

GrowthConfig config(double nu, double p, std::uint64_t seed, std::size_t nodes = 1000) {
  GrowthConfig c;
  c.target_nodes = nodes;
  c.affinity = nu;
  c.defect_probability = p;
  c.seed = seed;
  return c;
}

}  // namespace

// ---------------------------------------------------------------- transform

TEST(RemoveDefectEdges, DefectTetrahedronBreaksIntoTwoTriangles) {
  const auto [g, report] = remove_defect_edges(clique(4, {{0, 1}}));
  EXPECT_EQ(report.removed, 1u);
  EXPECT_EQ(report.removed_defect, 1u);
  EXPECT_EQ(report.components, 1u);
  const auto complex = maximal_cliques(g);
  EXPECT_EQ(complex.cliques,
            (std::vector<std::vector<VertexId>>{{0, 2, 3}, {1, 2, 3}}));
}

TEST(RemoveDefectEdges, CliqueBreakRuleForAllSizes) {
  for (std::size_t n = 3; n <= 10; ++n) {
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        const auto [g, report] = remove_defect_edges(clique(n, {{a, b}}));
        const auto complex = maximal_cliques(g);
        ASSERT_EQ(complex.cliques.size(), 2u) << "n=" << n;
        ASSERT_EQ(complex.cliques[0].size(), n - 1);
        ASSERT_EQ(complex.cliques[1].size(), n - 1);
        ASSERT_EQ(detail::intersection_size(complex.cliques[0], complex.cliques[1]), n - 2);
        ASSERT_EQ(complex.max_order(), static_cast<int>(n) - 2);
      }
    }
  }
}

TEST(RemoveDefectEdges, PureGraphIsUnchanged) {
  const LabeledGraph g = clique(5);
  const auto [out, report] = remove_defect_edges(g);
  EXPECT_EQ(out, g);
  EXPECT_EQ(report.removed, 0u);
}

TEST(RemoveDefectEdges, IdempotentAndVertexPreserving) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = grow(config(static_cast<double>(seed % 3) * 5.0 - 5.0, 0.7, seed, 500));
    const auto [once, r1] = remove_defect_edges(s.graph());
    const auto [twice, r2] = remove_defect_edges(once);
    EXPECT_EQ(once.node_count(), s.graph().node_count());
    EXPECT_EQ(r1.removed, s.graph().defect_edge_count());
    EXPECT_EQ(once.edge_count(), s.graph().edge_count() - s.graph().defect_edge_count());
    EXPECT_EQ(once.defect_edge_count(), 0u);
    EXPECT_EQ(twice, once);
    EXPECT_EQ(r2.removed, 0u);
    const auto split = largest_component(once);
    EXPECT_EQ(std::accumulate(split.sizes.begin(), split.sizes.end(), std::size_t{0}),
              once.node_count());
    EXPECT_EQ(split.sizes.size(), r1.components);
    EXPECT_EQ(split.subgraph.node_count(), r1.largest_component);
  }
}

TEST(RemoveRandomEdges, ZeroIsIdentityAndAllLeavesIsolatedVertices) {
  Pcg32 rng(1);
  const LabeledGraph g = clique(6, {{2, 4}});
  const auto [same, r0] = remove_random_edges(g, 0, rng);
  EXPECT_EQ(same, g);
  EXPECT_EQ(r0.removed, 0u);
  const auto [empty, r1] = remove_random_edges(g, g.edge_count(), rng);
  EXPECT_EQ(empty.node_count(), 6u);
  EXPECT_EQ(empty.edge_count(), 0u);
  EXPECT_EQ(r1.removed_defect, 1u);
  EXPECT_EQ(r1.components, 6u);
  EXPECT_THROW(remove_random_edges(g, g.edge_count() + 1, rng), UsageError);
}

TEST(RemoveRandomEdges, PreservesRemainingTypes) {
  Pcg32 rng(4);
  const auto s = grow(config(0.0, 0.7, 3, 300));
  const auto [g, report] = remove_random_edges(s.graph(), 100, rng);
  EXPECT_EQ(g.edge_count(), s.graph().edge_count() - 100);
  EXPECT_EQ(report.removed, 100u);
  std::size_t lost_defects = 0;
  s.graph().for_each_edge([&](const Edge& e) {
    const auto b = g.bond(e.u, e.v);
    if (b) {
      EXPECT_EQ(*b, e.bond);
    } else if (e.bond == BondType::defect) {
      ++lost_defects;
    }
  });
  EXPECT_EQ(lost_defects, report.removed_defect);
}

TEST(RemoveRandomEdges, MatchedCountEqualsDefectRemovedTwin) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = grow(config(5.0, 0.7, seed, 500));
    Pcg32 rng(mix_seed(seed, 9));
    const auto [twin, r1] = remove_defect_edges(s.graph());
    const auto [random, r2] = remove_random_edges(s.graph(), s.graph().defect_edge_count(), rng);
    EXPECT_EQ(twin.edge_count(), random.edge_count());
    EXPECT_EQ(r1.removed, r2.removed);
    EXPECT_EQ(defect_concentration(clear_bond_types(random)), 0.0);
  }
}

TEST(RemoveRandomEdges, EachEdgeEquallyLikely) {
  const LabeledGraph g = clique(5);
  Pcg32 rng(8);
  std::vector<std::size_t> hits(10, 0);
  const auto edges = g.edges();
  for (int trial = 0; trial < 50000; ++trial) {
    const auto [out, report] = remove_random_edges(g, 1, rng);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (!out.has_edge(edges[i].u, edges[i].v)) ++hits[i];
  }
  double stat = 0.0;
  for (const auto h : hits) stat += (static_cast<double>(h) - 5000.0) * (static_cast<double>(h) - 5000.0) / 5000.0;
  const boost::math::chi_squared dist(9);
  EXPECT_LT(stat, boost::math::quantile(boost::math::complement(dist, 0.01)));
}

TEST(LargestComponent, ConnectedGraphIsItself) {
  const LabeledGraph g = clique(4);
  const auto split = largest_component(g);
  EXPECT_EQ(split.subgraph, g);
  EXPECT_EQ(split.sizes, (std::vector<std::size_t>{4}));
}

TEST(LargestComponent, TiesGoToTheComponentOfTheSmallestVertex) {
  LabeledGraph g(6);
  for (const auto [u, v] : {std::pair{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}}) {
    g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v), BondType::pure);
  }
  const auto split = largest_component(g);
  EXPECT_EQ(split.vertices, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(split.sizes, (std::vector<std::size_t>{3, 3}));
}

TEST(LargestComponent, AgreesWithReachabilityOracle) {
  Pcg32 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const LabeledGraph g = oracle::random_graph(20, 0.08, rng);
    const auto d = oracle::floyd(g);
    std::size_t best = 0;
    VertexId best_root = 0;
    std::vector<bool> seen(20, false);
    for (VertexId v = 0; v < 20; ++v) {
      if (seen[v]) continue;
      std::size_t size = 0;
      for (VertexId w = 0; w < 20; ++w) {
        if (d[v][w] >= 0) {
          seen[w] = true;
          ++size;
        }
      }
      if (size > best) {
        best = size;
        best_root = v;
      }
    }
    const auto split = largest_component(g);
    ASSERT_EQ(split.vertices.size(), best);
    ASSERT_EQ(split.vertices.front(), best_root);
  }
}

// ---------------------------------------------------------------- qanalysis

TEST(MaximalCliques, SmallExamples) {
  EXPECT_EQ(maximal_cliques(clique(3)).cliques, (std::vector<std::vector<VertexId>>{{0, 1, 2}}));
  EXPECT_EQ(maximal_cliques(two_triangles_sharing_an_edge()).cliques,
            (std::vector<std::vector<VertexId>>{{0, 1, 2}, {1, 2, 3}}));
  LabeledGraph g(3);
  g.add_edge(0, 1, BondType::pure);
  EXPECT_EQ(maximal_cliques(g).cliques, (std::vector<std::vector<VertexId>>{{0, 1}, {2}}));
}

TEST(MaximalCliques, EqualBruteForceOnRandomGraphs) {
  Pcg32 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + rng.below(21);
    const double density = 0.2 + 0.4 * rng.uniform();
    const LabeledGraph g = oracle::random_graph(n, density, rng);
    const auto complex = maximal_cliques(g);
    ASSERT_EQ(complex.cliques, oracle::maximal(g)) << "trial " << trial;
    const auto want = oracle::structure_vectors(complex.cliques);
    const auto sv = structure_vectors(complex);
    ASSERT_EQ(sv.components, want.Q);
    ASSERT_EQ(sv.simplices, want.n);
    ASSERT_EQ(sv.q_star, want.q_star);
    for (std::size_t q = 0; q < want.tsv.size(); ++q) ASSERT_DOUBLE_EQ(sv.connectivity[q], want.tsv[q]);
    const auto f = f_vector(g, complex);
    ASSERT_EQ(f, oracle::f_counts(g, f.size()));
  }
}

TEST(IncidenceMatrix, Examples) {
  const auto one = incidence_matrix(maximal_cliques(clique(3)));
  EXPECT_EQ(one.rows(), 1u);
  EXPECT_EQ(one.columns(), 3u);
  for (VertexId v = 0; v < 3; ++v) EXPECT_EQ(one.at(0, v), 1);
  const auto two = incidence_matrix(maximal_cliques(two_triangles_sharing_an_edge()));
  EXPECT_EQ(two.row_sums(), (std::vector<std::size_t>{3, 3}));
  EXPECT_EQ(two.column_sums(), (std::vector<std::size_t>{1, 2, 2, 1}));
  EXPECT_EQ(two.at(0, 3), 0);
  EXPECT_EQ(two.overlap(0, 1), 2u);
  EXPECT_THROW(incidence_matrix(CliqueComplex{}), UsageError);
}

TEST(IncidenceMatrix, GramDiagonalIsCliqueSize) {
  Pcg32 rng(5);
  const LabeledGraph g = oracle::random_graph(18, 0.4, rng);
  const auto complex = maximal_cliques(g);
  const auto m = incidence_matrix(complex);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    EXPECT_EQ(m.overlap(i, i), complex.cliques[i].size());
    for (std::size_t j = 0; j < m.rows(); ++j) {
      std::size_t dot = 0;
      for (VertexId v = 0; v < m.columns(); ++v) dot += m.at(i, v) * m.at(j, v);
      ASSERT_EQ(m.overlap(i, j), dot);
    }
  }
}

TEST(StructureVectors, SingleClique) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto sv = structure_vectors(maximal_cliques(clique(n)));
    ASSERT_EQ(sv.components.size(), n);
    for (std::size_t q = 0; q < n; ++q) {
      EXPECT_EQ(sv.components[q], 1u);
      EXPECT_EQ(sv.simplices[q], 1u);
      EXPECT_EQ(sv.connectivity[q], 0.0);
    }
    EXPECT_EQ(sv.q_star, 1);
  }
}

TEST(StructureVectors, TwoTrianglesSharingAnEdge) {
  const auto sv = structure_vectors(maximal_cliques(two_triangles_sharing_an_edge()));
  EXPECT_EQ(sv.components, (std::vector<std::size_t>{1, 1, 2}));
  EXPECT_EQ(sv.simplices, (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(sv.connectivity, (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_EQ(sv.q_star, 2);
  EXPECT_EQ(sv.connectivity_before_q_star, 0.5);
}

TEST(StructureVectors, FirstZeroLevel) {
  // Two tetrahedra sharing a triangle: connected up to q = 2, split at q = 3.
  LabeledGraph g(5);
  for (VertexId u = 0; u < 5; ++u)
    for (VertexId v = u + 1; v < 5; ++v)
      if (!(u == 3 && v == 4)) g.add_edge(u, v, BondType::pure);
  const auto sv = structure_vectors(maximal_cliques(g));
  EXPECT_EQ(sv.components, (std::vector<std::size_t>{1, 1, 1, 2}));
  EXPECT_EQ(sv.q_star, 3);
  LabeledGraph path(3);
  path.add_edge(0, 1, BondType::pure);
  path.add_edge(1, 2, BondType::pure);
  const auto p = structure_vectors(maximal_cliques(path));
  EXPECT_EQ(p.components, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(p.q_star, 1);
  EXPECT_EQ(p.connectivity_before_q_star, 0.5);
  // Only singletons: no level q >= 1 exists, so q* = q_max + 1 = 1.
  const auto e = structure_vectors(maximal_cliques(LabeledGraph(3)));
  EXPECT_EQ(e.components, (std::vector<std::size_t>{3}));
  EXPECT_EQ(e.q_star, 1);
}

TEST(StructureVectors, InvariantsOnGrownAssemblies) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    for (const double p : {0.0, 0.7}) {
      const auto s = grow(config(static_cast<double>(seed % 3) * 5.0 - 5.0, p, seed, 800));
      const auto complex = maximal_cliques(s.graph());
      const auto sv = structure_vectors(complex);
      EXPECT_EQ(sv.components[0], 1u);
      EXPECT_EQ(sv.simplices[0], complex.cliques.size());
      for (std::size_t q = 0; q < sv.components.size(); ++q) {
        EXPECT_LE(sv.components[q], sv.simplices[q]);
        EXPECT_GE(sv.connectivity[q], 0.0);
        EXPECT_LT(sv.connectivity[q], 1.0);
        if (sv.simplices[q] == 1) EXPECT_EQ(sv.connectivity[q], 0.0);
        if (sv.simplices[q] >= 1) EXPECT_GE(sv.components[q], 1u);
        if (q > 0) EXPECT_LE(sv.simplices[q], sv.simplices[q - 1]);
      }
      const auto f = f_vector(s.graph(), complex);
      EXPECT_EQ(f[0], s.graph().node_count());
      EXPECT_EQ(f[1], s.graph().edge_count());
      // Every clique of the graph lies in the census built during growth.
      for (std::size_t q = 0; q < f.size(); ++q) EXPECT_EQ(f[q], s.census().count(q + 1));
    }
  }
}

TEST(StructureVectors, ComponentCountAtLevelZero) {
  LabeledGraph g(7);
  g.add_edge(0, 1, BondType::pure);
  g.add_edge(1, 2, BondType::pure);
  g.add_edge(3, 4, BondType::pure);
  const auto sv = structure_vectors(maximal_cliques(g));
  std::size_t count = 0;
  component_labels(g, &count);
  EXPECT_EQ(sv.components[0], count);
}

TEST(FVector, Examples) {
  const LabeledGraph tetra = clique(4);
  EXPECT_EQ(f_vector(tetra, maximal_cliques(tetra)), (std::vector<std::size_t>{4, 6, 4, 1}));
  const LabeledGraph two = two_triangles_sharing_an_edge();
  EXPECT_EQ(f_vector(two, maximal_cliques(two)), (std::vector<std::size_t>{4, 5, 2}));
  const LabeledGraph tri = clique(3);
  EXPECT_EQ(f_vector(tri, maximal_cliques(tri)), (std::vector<std::size_t>{3, 3, 1}));
}

TEST(FVector, IsolatedCliqueIsBinomial) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const LabeledGraph g = clique(n);
    const auto f = f_vector(g, maximal_cliques(g));
    std::size_t binom = n;
    for (std::size_t q = 0; q < n; ++q) {
      ASSERT_EQ(f[q], binom);
      binom = binom * (n - q - 1) / (q + 2);
    }
  }
}
