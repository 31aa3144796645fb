#include "rqichan/fock/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rqichan::fock {

namespace {

// Splits a full index into (kept, discarded) indices of the two sub-layouts.
struct Splitter {
  std::vector<Index> stride, cutoff, kept_stride, disc_stride;

  Splitter(const Layout& full, std::span<const Mode> discard) {
    for (Mode m : discard) full.require(m);
    Index ks = 1, ds = 1;
    const std::size_t n = full.size();
    kept_stride.assign(n, 0);
    disc_stride.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
      const bool drop = std::find(discard.begin(), discard.end(), full.modes()[i].name) != discard.end();
      if (drop) {
        disc_stride[i] = ds;
        ds *= full.cutoff(i);
      } else {
        kept_stride[i] = ks;
        ks *= full.cutoff(i);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      stride.push_back(full.stride(i));
      cutoff.push_back(full.cutoff(i));
    }
  }

  std::pair<Index, Index> operator()(Index idx) const {
    Index k = 0, d = 0;
    for (std::size_t i = 0; i < stride.size(); ++i) {
      const Index digit = (idx / stride[i]) % cutoff[i];
      k += digit * kept_stride[i];
      d += digit * disc_stride[i];
    }
    return {k, d};
  }
};

void check_same_layout(const Layout& a, const Layout& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": layouts differ");
}

}  // namespace

DensityMatrix::DensityMatrix(Layout layout, SparseMatrix m)
    : layout_(std::move(layout)), m_(std::move(m)) {
  if (m_.rows() != layout_.dim() || m_.cols() != layout_.dim()) {
    throw std::invalid_argument("density matrix size does not match its layout");
  }
  m_.makeCompressed();
}

DensityMatrix DensityMatrix::from_triplets(Layout layout, const std::vector<Triplet>& triplets) {
  SparseMatrix m(layout.dim(), layout.dim());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(Complex(0.0, 0.0));
  return DensityMatrix(std::move(layout), std::move(m));
}

DensityMatrix DensityMatrix::from_dense(Layout layout, const Eigen::MatrixXcd& m) {
  if (m.rows() != layout.dim() || m.cols() != layout.dim()) {
    throw std::invalid_argument("dense matrix size does not match its layout");
  }
  std::vector<Triplet> t;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) t.emplace_back(i, j, m(i, j));
    }
  }
  return from_triplets(std::move(layout), t);
}

DensityMatrix DensityMatrix::diagonal(Layout layout, std::span<const double> values) {
  if (static_cast<Index>(values.size()) != layout.dim()) {
    throw std::invalid_argument("diagonal length does not match its layout");
  }
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) t.emplace_back(static_cast<Index>(i), static_cast<Index>(i), values[i]);
  }
  return from_triplets(std::move(layout), t);
}

Complex DensityMatrix::trace() const {
  Complex s(0.0, 0.0);
  for (Index j = 0; j < m_.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m_, j); it; ++it) {
      if (it.row() == j) s += it.value();
    }
  }
  return s;
}

double DensityMatrix::hermiticity_error() const {
  SparseMatrix diff = m_ - SparseMatrix(m_.adjoint());
  double worst = 0.0;
  for (Index j = 0; j < diff.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(diff, j); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

DensityMatrix DensityMatrix::renormalized() const {
  const double tr = trace().real();
  if (!(tr > 0.0)) throw std::domain_error("cannot renormalize an operator with non-positive trace");
  DensityMatrix out = *this;
  out.m_ /= Complex(tr, 0.0);
  return out;
}

Eigen::MatrixXcd DensityMatrix::to_dense() const { return Eigen::MatrixXcd(m_); }

DensityMatrix& DensityMatrix::operator+=(const DensityMatrix& other) {
  check_same_layout(layout_, other.layout_, "operator+=");
  m_ += other.m_;
  return *this;
}

DensityMatrix& DensityMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

DensityMatrix operator+(DensityMatrix a, const DensityMatrix& b) { return a += b; }
DensityMatrix operator-(DensityMatrix a, const DensityMatrix& b) {
  DensityMatrix nb = b;
  nb *= Complex(-1.0, 0.0);
  return a += nb;
}
DensityMatrix operator*(Complex s, DensityMatrix a) { return a *= s; }

PureState::PureState(Layout layout, SparseVector amplitudes)
    : layout_(std::move(layout)), v_(std::move(amplitudes)) {
  if (v_.size() != layout_.dim()) throw std::invalid_argument("amplitude vector does not match its layout");
}

PureState PureState::from_dense(Layout layout, const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != layout.dim()) throw std::invalid_argument("amplitude vector does not match its layout");
  SparseVector v(layout.dim());
  for (Index i = 0; i < amplitudes.size(); ++i) {
    if (amplitudes(i) != Complex(0.0, 0.0)) v.insert(i) = amplitudes(i);
  }
  return PureState(std::move(layout), std::move(v));
}

PureState PureState::basis(Layout layout, std::span<const Index> occupations) {
  SparseVector v(layout.dim());
  v.insert(layout.index(occupations)) = 1.0;
  return PureState(std::move(layout), std::move(v));
}

double PureState::norm() const { return v_.norm(); }

PureState PureState::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw std::domain_error("cannot normalize a zero vector");
  PureState out = *this;
  out.v_ /= Complex(n, 0.0);
  return out;
}

DensityMatrix PureState::projector() const {
  return partial_trace_cross(*this, *this, std::span<const Mode>{});
}

PureState& PureState::operator+=(const PureState& other) {
  check_same_layout(layout_, other.layout_, "operator+=");
  v_ += other.v_;
  return *this;
}

PureState& PureState::operator*=(Complex s) {
  v_ *= s;
  return *this;
}

PureState operator+(PureState a, const PureState& b) { return a += b; }
PureState operator*(Complex s, PureState a) { return a *= s; }

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Layout lay = a.layout().concat(b.layout());
  const Index db = b.dim();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.matrix().nonZeros() * b.matrix().nonZeros()));
  for (Index ja = 0; ja < a.matrix().outerSize(); ++ja) {
    for (SparseMatrix::InnerIterator ia(a.matrix(), ja); ia; ++ia) {
      for (Index jb = 0; jb < b.matrix().outerSize(); ++jb) {
        for (SparseMatrix::InnerIterator ib(b.matrix(), jb); ib; ++ib) {
          t.emplace_back(ia.row() * db + ib.row(), ja * db + jb, ia.value() * ib.value());
        }
      }
    }
  }
  return DensityMatrix::from_triplets(std::move(lay), t);
}

PureState tensor_product(const PureState& a, const PureState& b) {
  Layout lay = a.layout().concat(b.layout());
  const Index db = b.dim();
  SparseVector v(lay.dim());
  v.reserve(a.amplitudes().nonZeros() * b.amplitudes().nonZeros());
  // both inputs iterate in ascending order, so the output indices do too
  for (SparseVector::InnerIterator ia(a.amplitudes()); ia; ++ia) {
    for (SparseVector::InnerIterator ib(b.amplitudes()); ib; ++ib) {
      v.insertBack(ia.index() * db + ib.index()) = ia.value() * ib.value();
    }
  }
  return PureState(std::move(lay), std::move(v));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Mode> discard) {
  Splitter split(rho.layout(), discard);
  Layout kept = rho.layout().without(discard);
  const SparseMatrix& m = rho.matrix();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Index j = 0; j < m.outerSize(); ++j) {
    const auto [kj, dj] = split(j);
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      const auto [ki, di] = split(it.row());
      if (di == dj) t.emplace_back(ki, kj, it.value());
    }
  }
  return DensityMatrix::from_triplets(std::move(kept), t);
}

DensityMatrix partial_trace(const PureState& psi, std::span<const Mode> discard) {
  return partial_trace_cross(psi, psi, discard);
}

DensityMatrix partial_trace_cross(const PureState& ket, const PureState& bra,
                                  std::span<const Mode> discard) {
  check_same_layout(ket.layout(), bra.layout(), "partial_trace_cross");
  Splitter split(ket.layout(), discard);
  Layout kept = ket.layout().without(discard);

  struct Entry {
    Index disc, kept;
    Complex amp;
  };
  auto collect = [&](const SparseVector& v) {
    std::vector<Entry> out;
    out.reserve(static_cast<std::size_t>(v.nonZeros()));
    for (SparseVector::InnerIterator it(v); it; ++it) {
      const auto [k, d] = split(it.index());
      out.push_back({d, k, it.value()});
    }
    std::stable_sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.disc < b.disc; });
    return out;
  };
  const std::vector<Entry> kv = collect(ket.amplitudes());
  const std::vector<Entry> bv = collect(bra.amplitudes());

  std::vector<Triplet> t;
  std::size_t i = 0, j = 0;
  while (i < kv.size() && j < bv.size()) {
    if (kv[i].disc < bv[j].disc) {
      ++i;
    } else if (bv[j].disc < kv[i].disc) {
      ++j;
    } else {
      const Index d = kv[i].disc;
      std::size_t i_end = i, j_end = j;
      while (i_end < kv.size() && kv[i_end].disc == d) ++i_end;
      while (j_end < bv.size() && bv[j_end].disc == d) ++j_end;
      for (std::size_t a = i; a < i_end; ++a) {
        for (std::size_t b = j; b < j_end; ++b) {
          t.emplace_back(kv[a].kept, bv[b].kept, kv[a].amp * std::conj(bv[b].amp));
        }
      }
      i = i_end;
      j = j_end;
    }
  }
  return DensityMatrix::from_triplets(std::move(kept), t);
}

DensityMatrix permute_modes(const DensityMatrix& rho, std::span<const Mode> order) {
  const Layout& old = rho.layout();
  if (order.size() != old.size()) throw std::invalid_argument("permute_modes: order is not a permutation");
  std::vector<ModeLabel> labels;
  for (Mode m : order) labels.push_back(old.modes()[old.require(m)]);
  Layout lay(labels);  // also rejects repeated entries

  std::vector<Index> new_stride(old.size());
  for (std::size_t i = 0; i < old.size(); ++i) new_stride[i] = lay.stride(lay.require(old.modes()[i].name));
  auto map = [&](Index idx) {
    Index out = 0;
    for (std::size_t i = 0; i < old.size(); ++i) out += old.digit(idx, i) * new_stride[i];
    return out;
  };
  std::vector<Triplet> t;
  const SparseMatrix& m = rho.matrix();
  for (Index j = 0; j < m.outerSize(); ++j) {
    const Index nj = map(j);
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) t.emplace_back(map(it.row()), nj, it.value());
  }
  return DensityMatrix::from_triplets(std::move(lay), t);
}

DensityMatrix relabel(const DensityMatrix& rho, std::span<const Mode> from, std::span<const Mode> to) {
  if (from.size() != to.size()) throw std::invalid_argument("relabel: mismatched lists");
  std::vector<ModeLabel> labels = rho.layout().modes();
  for (auto& ml : labels) {
    auto it = std::find(from.begin(), from.end(), ml.name);
    if (it != from.end()) ml.name = to[static_cast<std::size_t>(it - from.begin())];
  }
  return DensityMatrix(Layout(labels), rho.matrix());
}

}  // namespace rqichan::fock
