#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cogres/core.hpp"

namespace cogres {

// All measures work on |w_ij| with the diagonal excluded.

/// Off-diagonal absolute weights of a connectome.
Matrix abs_adjacency(const Connectome& c);

Vector node_strength(const Connectome& c);

/// Principal eigenvector of |W|, non-negative, unit 2-norm. Iterates x <- (I + A)x
/// so bipartite graphs do not oscillate. Throws NumericalError on non-convergence.
Vector eigenvector_centrality(const Connectome& c, double tol = 1e-12,
                              std::size_t max_iter = 100000);

/// PageRank with row-normalized |W| transitions; zero-strength nodes
/// teleport uniformly. Entries sum to 1.
Vector pagerank(const Connectome& c, double damping = 0.85, double tol = 1e-13,
                std::size_t max_iter = 100000);

/// Laplacian energy sum_i s_i^2 + 2 sum_{i<j} w_ij^2 of a non-negative adjacency.
double laplacian_energy(const Matrix& adjacency);

/// LC(v) = E(G) - E(G without v).
Vector laplacian_centrality(const Connectome& c);

/// Stephenson-Zelen information centrality, per connected component of the
/// positive-weight graph; isolated nodes get 0.
Vector information_centrality(const Connectome& c);

struct KlOptions {
  std::size_t bins = 20;
  double smoothing = 1e-10;
};

/// KL(P || Q) between histograms of two samples on shared bins spanning the
/// pooled range. Returns 0 when the pooled range is degenerate.
double kl_divergence(std::span<const double> p, std::span<const double> q, KlOptions opts = {});

/// Measure names, in report order.
const std::vector<std::string>& topology_measures();

/// Node-level values of the named measure.
Vector topology_measure(const std::string& name, const Connectome& c);

/// Mean over subjects of KL(subject || CBT), for every measure.
std::map<std::string, double> topology_report(const Connectome& cbt,
                                              std::span<const Connectome> test_subjects,
                                              KlOptions opts = {});

}  // namespace cogres
