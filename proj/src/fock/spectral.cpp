#include "rqichan/fock/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <lapacke.h>

namespace rqichan::fock {

namespace {

// Below this size Eigen's solver beats the LAPACK call overhead.
constexpr Index kSmallDense = 48;

struct Entry {
  Index p, q;
  Complex v;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

void lapack_check(lapack_int info, const char* routine) {
  if (info != 0) {
    throw std::runtime_error(std::string(routine) + " failed with info " + std::to_string(info));
  }
}

// Returns the path order of a block whose off-diagonal graph is a union of
// simple paths, or an empty vector otherwise.
std::vector<Index> path_order(Index n, const std::vector<Entry>& entries) {
  std::vector<std::array<Index, 2>> nbr(static_cast<std::size_t>(n), {-1, -1});
  for (const auto& e : entries) {
    if (e.p == e.q) continue;
    auto& slot = nbr[static_cast<std::size_t>(e.p)];
    if (slot[0] == e.q || slot[1] == e.q) continue;
    if (slot[0] < 0) {
      slot[0] = e.q;
    } else if (slot[1] < 0) {
      slot[1] = e.q;
    } else {
      return {};
    }
  }
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index start = 0; start < n; ++start) {
    const auto& s = nbr[static_cast<std::size_t>(start)];
    if (seen[static_cast<std::size_t>(start)] || s[1] >= 0) continue;  // only begin at endpoints
    Index prev = -1, cur = start;
    while (cur >= 0) {
      seen[static_cast<std::size_t>(cur)] = 1;
      order.push_back(cur);
      const auto& c = nbr[static_cast<std::size_t>(cur)];
      Index next = (c[0] != prev) ? c[0] : c[1];
      if (next >= 0 && seen[static_cast<std::size_t>(next)]) next = -1;
      prev = cur;
      cur = next;
    }
  }
  if (static_cast<Index>(order.size()) != n) return {};  // a cycle is left over
  return order;
}

void solve_path(EigenBlock& blk, const std::vector<Index>& order, const std::vector<Entry>& entries,
                bool with_vectors) {
  const Index n = static_cast<Index>(order.size());
  std::vector<Index> pos(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

  std::vector<double> d(static_cast<std::size_t>(n), 0.0), e(static_cast<std::size_t>(std::max<Index>(n, 1)), 0.0);
  std::vector<Complex> upper(static_cast<std::size_t>(std::max<Index>(n, 1)), Complex(0.0, 0.0));
  for (const auto& en : entries) {
    const Index a = pos[static_cast<std::size_t>(en.p)], b = pos[static_cast<std::size_t>(en.q)];
    if (a == b) {
      d[static_cast<std::size_t>(a)] = en.v.real();
    } else if (b == a + 1) {
      upper[static_cast<std::size_t>(a)] = en.v;
    }
  }
  Eigen::VectorXcd phase(n);
  if (n > 0) phase(0) = 1.0;
  for (Index k = 0; k + 1 < n; ++k) {
    const Complex u = upper[static_cast<std::size_t>(k)];
    const double mag = std::abs(u);
    e[static_cast<std::size_t>(k)] = mag;
    phase(k + 1) = mag > 0.0 ? phase(k) * std::conj(u) / mag : phase(k);
  }

  std::vector<Index> global(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) global[static_cast<std::size_t>(k)] = blk.indices[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  blk.indices = std::move(global);
  blk.phases = phase;

  if (!with_vectors || n == 1) {
    if (n > 1) lapack_check(LAPACKE_dsterf(static_cast<lapack_int>(n), d.data(), e.data()), "dsterf");
    blk.values = Eigen::Map<Eigen::VectorXd>(d.data(), n);
    if (with_vectors) blk.real_vectors = Eigen::MatrixXd::Identity(1, 1);
    return;
  }
  lapack_int found = 0;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, n);
  std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * n));
  lapack_check(LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', static_cast<lapack_int>(n), d.data(), e.data(), 0.0,
                              0.0, 0, 0, 0.0, &found, w.data(), z.data(), static_cast<lapack_int>(n),
                              isuppz.data()),
               "dstevr");
  if (found != n) throw std::runtime_error("dstevr returned too few eigenpairs");
  blk.values = std::move(w);
  blk.real_vectors = std::move(z);
}

void solve_dense(EigenBlock& blk, const std::vector<Entry>& entries, bool with_vectors) {
  const Index n = static_cast<Index>(blk.indices.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& en : entries) a(en.p, en.q) = en.v;
  if (n <= kSmallDense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    blk.values = es.eigenvalues();
    if (with_vectors) blk.vectors = es.eigenvectors();
    return;
  }
  Eigen::VectorXd w(n);
  lapack_check(LAPACKE_zheevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', static_cast<lapack_int>(n),
                              reinterpret_cast<lapack_complex_double*>(a.data()), static_cast<lapack_int>(n),
                              w.data()),
               "zheevd");
  blk.values = std::move(w);
  if (with_vectors) blk.vectors = std::move(a);
}

}  // namespace

Eigen::MatrixXcd EigenBlock::complex_vectors() const {
  if (is_path()) return phases.asDiagonal() * real_vectors.cast<Complex>();
  return vectors;
}

std::vector<double> Eigensystem::eigenvalues() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (const auto& b : blocks) out.insert(out.end(), b.values.data(), b.values.data() + b.values.size());
  out.resize(static_cast<std::size_t>(dim), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Eigen::MatrixXcd Eigensystem::dense_vectors() const {
  struct Col {
    double value;
    std::size_t block;  // blocks.size() marks an untouched basis vector
    Index col;
  };
  std::vector<Col> cols;
  std::vector<char> touched(static_cast<std::size_t>(dim), 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!blocks[b].has_vectors()) throw std::logic_error("eigensystem was computed without vectors");
    for (Index k = 0; k < blocks[b].values.size(); ++k) cols.push_back({blocks[b].values(k), b, k});
    for (Index i : blocks[b].indices) touched[static_cast<std::size_t>(i)] = 1;
  }
  for (Index i = 0; i < dim; ++i) {
    if (!touched[static_cast<std::size_t>(i)]) cols.push_back({0.0, blocks.size(), i});
  }
  std::stable_sort(cols.begin(), cols.end(), [](const Col& a, const Col& b) { return a.value > b.value; });

  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::MatrixXcd> cache(blocks.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Col& col = cols[c];
    if (col.block == blocks.size()) {
      v(col.col, static_cast<Index>(c)) = 1.0;
      continue;
    }
    if (cache[col.block].size() == 0) cache[col.block] = blocks[col.block].complex_vectors();
    const auto& idx = blocks[col.block].indices;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      v(idx[r], static_cast<Index>(c)) = cache[col.block](static_cast<Index>(r), col.col);
    }
  }
  return v;
}

Partition block_partition(const SparseMatrix& a, const SparseMatrix* b) {
  std::vector<Index> nodes;
  auto gather = [&](const SparseMatrix& m) {
    for (Index j = 0; j < m.outerSize(); ++j) {
      for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
        if (it.value() == Complex(0.0, 0.0)) continue;
        nodes.push_back(it.row());
        nodes.push_back(j);
      }
    }
  };
  gather(a);
  if (b) gather(*b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto local = [&](Index g) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), g) - nodes.begin());
  };

  UnionFind uf(nodes.size());
  auto link = [&](const SparseMatrix& m) {
    for (Index j = 0; j < m.outerSize(); ++j) {
      std::size_t lj = 0;
      bool have = false;
      for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
        if (it.row() == j || it.value() == Complex(0.0, 0.0)) continue;
        if (!have) {
          lj = local(j);
          have = true;
        }
        uf.unite(local(it.row()), lj);
      }
    }
  };
  link(a);
  if (b) link(*b);

  // roots are the smallest member, so the components come out ordered by first index
  Partition out;
  std::vector<std::size_t> slot(nodes.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::size_t r = uf.find(i);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(nodes[i]);
  }
  return out;
}

Eigensystem block_eigendecomposition(const SparseMatrix& m, const Partition& blocks, bool with_vectors) {
  struct Where {
    Index global;
    std::size_t block;
    Index pos;
  };
  std::vector<Where> where;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t k = 0; k < blocks[b].size(); ++k) where.push_back({blocks[b][k], b, static_cast<Index>(k)});
  }
  std::sort(where.begin(), where.end(), [](const Where& x, const Where& y) { return x.global < y.global; });
  auto find = [&](Index g) -> const Where* {
    auto it = std::lower_bound(where.begin(), where.end(), g,
                               [](const Where& w, Index v) { return w.global < v; });
    return (it != where.end() && it->global == g) ? &*it : nullptr;
  };

  std::vector<std::vector<Entry>> entries(blocks.size());
  for (Index j = 0; j < m.outerSize(); ++j) {
    const Where* wj = nullptr;
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.value() == Complex(0.0, 0.0)) continue;
      if (!wj) wj = find(j);
      const Where* wi = find(it.row());
      if (!wi || !wj || wi->block != wj->block) {
        throw std::logic_error("block partition splits a nonzero entry");
      }
      entries[wj->block].push_back({wi->pos, wj->pos, it.value()});
    }
  }

  Eigensystem sys;
  sys.dim = m.rows();
  sys.blocks.resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    EigenBlock& blk = sys.blocks[b];
    blk.indices = blocks[b];
    const Index n = static_cast<Index>(blk.indices.size());
    std::vector<Index> order = path_order(n, entries[b]);
    if (!order.empty()) {
      solve_path(blk, order, entries[b], with_vectors);
    } else {
      solve_dense(blk, entries[b], with_vectors);
    }
    entries[b].clear();
    entries[b].shrink_to_fit();
  }
  return sys;
}

Eigensystem hermitian_eigendecomposition(const DensityMatrix& rho) {
  const double herr = rho.hermiticity_error();
  if (herr > kHermitianTolerance) {
    throw std::invalid_argument("matrix is not hermitian (deviation " + std::to_string(herr) + ")");
  }
  return block_eigendecomposition(rho.matrix(), block_partition(rho.matrix()), true);
}

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  const double herr = rho.hermiticity_error();
  if (herr > kHermitianTolerance) {
    throw std::invalid_argument("matrix is not hermitian (deviation " + std::to_string(herr) + ")");
  }
  const SparseMatrix& m = rho.matrix();
  bool diagonal = true;
  for (Index j = 0; j < m.outerSize() && diagonal; ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.row() != j && it.value() != Complex(0.0, 0.0)) {
        diagonal = false;
        break;
      }
    }
  }
  if (diagonal) {
    std::vector<double> out(static_cast<std::size_t>(rho.dim()));
    for (Index i = 0; i < rho.dim(); ++i) out[static_cast<std::size_t>(i)] = m.coeff(i, i).real();
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }
  return block_eigendecomposition(m, block_partition(m), false).eigenvalues();
}

NegativeEigenvalueError::NegativeEigenvalueError(double value)
    : std::runtime_error("eigenvalue " + std::to_string(value) + " is below the clamping floor"), value_(value) {}

std::vector<double> clamp_spectrum(std::vector<double> values, double floor) {
  for (double& v : values) {
    if (v < floor) throw NegativeEigenvalueError(v);
    if (v < 0.0) v = 0.0;
  }
  return values;
}

Eigen::MatrixXcd dense_block(const SparseMatrix& m, const std::vector<Index>& idx) {
  const Index n = static_cast<Index>(idx.size());
  std::vector<std::pair<Index, Index>> lookup(idx.size());
  for (Index k = 0; k < n; ++k) lookup[static_cast<std::size_t>(k)] = {idx[static_cast<std::size_t>(k)], k};
  std::sort(lookup.begin(), lookup.end());
  auto pos = [&](Index g) -> Index {
    auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(g, Index{-1}));
    return (it != lookup.end() && it->first == g) ? it->second : -1;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index j = idx[static_cast<std::size_t>(k)];
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      const Index r = pos(it.row());
      if (r >= 0) out(r, k) = it.value();
    }
  }
  return out;
}

}  // namespace rqichan::fock
