#include "cogres/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cogres {

Matrix abs_adjacency(const Connectome& c) {
  Matrix a = c.weights().cwiseAbs();
  a.diagonal().setZero();
  return a;
}

Vector node_strength(const Connectome& c) { return abs_adjacency(c).rowwise().sum(); }

Vector eigenvector_centrality(const Connectome& c, double tol, std::size_t max_iter) {
  const Matrix a = abs_adjacency(c);
  const auto n = a.rows();
  Vector x = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vector next = x + a * x;
    next /= next.norm();
    const double delta = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (delta < tol) return x;
  }
  throw NumericalError("eigenvector centrality did not converge in " + std::to_string(max_iter) +
                       " iterations");
}

Vector pagerank(const Connectome& c, double damping, double tol, std::size_t max_iter) {
  if (!(damping >= 0.0 && damping < 1.0)) throw ConfigError("damping must lie in [0, 1)");
  const Matrix a = abs_adjacency(c);
  const auto n = a.rows();
  const double nn = static_cast<double>(n);
  const Vector strength = a.rowwise().sum();

  // Column-stochastic transpose of the row-normalized transition matrix.
  Matrix pt = Matrix::Zero(n, n);
  std::vector<Eigen::Index> dangling;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (strength(i) > 0.0) {
      pt.col(i) = a.row(i).transpose() / strength(i);
    } else {
      dangling.push_back(i);
    }
  }

  Vector x = Vector::Constant(n, 1.0 / nn);
  for (std::size_t it = 0; it < max_iter; ++it) {
    double dangling_mass = 0.0;
    for (auto i : dangling) dangling_mass += x(i);
    Vector next = damping * (pt * x);
    next.array() += damping * dangling_mass / nn + (1.0 - damping) / nn;
    next /= next.sum();
    const double delta = (next - x).cwiseAbs().sum();
    x = std::move(next);
    if (delta < tol) return x;
  }
  throw NumericalError("PageRank did not converge in " + std::to_string(max_iter) +
                       " iterations");
}

double laplacian_energy(const Matrix& adjacency) {
  const Vector s = adjacency.rowwise().sum();
  double off = 0.0;
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j) off += adjacency(i, j) * adjacency(i, j);
  }
  return s.squaredNorm() + 2.0 * off;
}

Vector laplacian_centrality(const Connectome& c) {
  const Matrix a = abs_adjacency(c);
  const auto n = a.rows();
  const double full = laplacian_energy(a);
  Vector lc(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    Matrix reduced(n - 1, n - 1);
    for (Eigen::Index i = 0, ri = 0; i < n; ++i) {
      if (i == v) continue;
      for (Eigen::Index j = 0, rj = 0; j < n; ++j) {
        if (j == v) continue;
        reduced(ri, rj++) = a(i, j);
      }
      ++ri;
    }
    lc(v) = std::max(0.0, full - laplacian_energy(reduced));
  }
  return lc;
}

Vector information_centrality(const Connectome& c) {
  const Matrix a = abs_adjacency(c);
  const auto n = a.rows();
  Vector ic = Vector::Zero(n);

  std::vector<int> component(n, -1);
  int next_id = 0;
  for (Eigen::Index start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::vector<Eigen::Index> members{start};
    component[start] = next_id;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto u = members[k];
      for (Eigen::Index v = 0; v < n; ++v) {
        if (component[v] < 0 && a(u, v) > 0.0) {
          component[v] = next_id;
          members.push_back(v);
        }
      }
    }
    ++next_id;
    if (members.size() < 2) continue;  // isolated node keeps 0

    std::sort(members.begin(), members.end());
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd b(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) b(i, j) = -a(members[i], members[j]);
    }
    b.diagonal() = -b.rowwise().sum();
    b.array() += 1.0;  // B = L + J
    const Eigen::MatrixXd inv = b.partialPivLu().inverse();
    const double trace = inv.trace();
    const Eigen::VectorXd rows = inv.rowwise().sum();
    const double md = static_cast<double>(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      // sum_v (C_uu + C_vv - 2 C_uv), i.e. the total effective resistance from u.
      const double resistance = md * inv(i, i) + trace - 2.0 * rows(i);
      ic(members[i]) = resistance > 0.0 ? md / resistance : 0.0;
    }
  }
  return ic;
}

double kl_divergence(std::span<const double> p, std::span<const double> q, KlOptions opts) {
  if (p.empty() || q.empty()) throw DataError("KL divergence of an empty sample");
  if (opts.bins < 1) throw ConfigError("KL needs at least one bin");
  const auto [pmin, pmax] = std::minmax_element(p.begin(), p.end());
  const auto [qmin, qmax] = std::minmax_element(q.begin(), q.end());
  const double lo = std::min(*pmin, *qmin);
  const double hi = std::max(*pmax, *qmax);
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DataError("KL divergence of non-finite samples");
  if (!(hi > lo)) return 0.0;

  const auto bins = opts.bins;
  auto histogram = [&](std::span<const double> s) {
    std::vector<double> h(bins, 0.0);
    for (double v : s) {
      auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
      h[std::min(b, bins - 1)] += 1.0;
    }
    double total = 0.0;
    for (auto& x : h) {
      x = x / static_cast<double>(s.size()) + opts.smoothing;
      total += x;
    }
    for (auto& x : h) x /= total;
    return h;
  };
  const auto hp = histogram(p);
  const auto hq = histogram(q);
  double kl = 0.0;
  for (std::size_t b = 0; b < bins; ++b) kl += hp[b] * std::log(hp[b] / hq[b]);
  return std::max(0.0, kl);
}

const std::vector<std::string>& topology_measures() {
  static const std::vector<std::string> names{"information_centrality", "laplacian_centrality",
                                              "eigenvector_centrality", "pagerank_centrality",
                                              "node_strength"};
  return names;
}

Vector topology_measure(const std::string& name, const Connectome& c) {
  if (name == "information_centrality") return information_centrality(c);
  if (name == "laplacian_centrality") return laplacian_centrality(c);
  if (name == "eigenvector_centrality") return eigenvector_centrality(c);
  if (name == "pagerank_centrality") return pagerank(c);
  if (name == "node_strength") return node_strength(c);
  throw ConfigError("unknown topology measure '" + name + "'");
}

std::map<std::string, double> topology_report(const Connectome& cbt,
                                              std::span<const Connectome> test_subjects,
                                              KlOptions opts) {
  if (test_subjects.empty()) throw DataError("topology report needs at least one test subject");
  std::map<std::string, double> out;
  for (const auto& name : topology_measures()) {
    const Vector ref = topology_measure(name, cbt);
    double sum = 0.0;
    for (const auto& s : test_subjects) {
      if (s.size() != cbt.size()) throw DimensionError("test subject size differs from the CBT");
      const Vector v = topology_measure(name, s);
      sum += kl_divergence(std::span<const double>(v.data(), v.size()),
                           std::span<const double>(ref.data(), ref.size()), opts);
    }
    out[name] = sum / static_cast<double>(test_subjects.size());
  }
  return out;
}

}  // namespace cogres
