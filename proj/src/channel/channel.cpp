#include "rqichan/channel/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rqichan::channel {

using fock::Layout;
using fock::Mode;
using fock::ModeLabel;
using fock::SparseVector;
using fock::Triplet;

namespace {

constexpr double kWeightTolerance = 1e-12;

// One term of a two-mode (R, Rbar) state: |r, rbar> with amplitude.
struct Term {
  Index r, rbar;
  Complex amp;
};

// c_p = tanh^p / cosh^{N+1} * sqrt(C(p+N, p)), p = 0..; stops when N+p leaves the cutoff.
std::vector<double> squeeze_amplitudes(int N, double r, Index cutoff) {
  std::vector<double> c;
  if (r == 0.0) {
    c.push_back(1.0);
    return c;
  }
  const double lt = std::log(std::tanh(r));
  const double lc = std::log(std::cosh(r));
  double log_binom = 0.0;
  for (Index p = 0; N + p < cutoff; ++p) {
    if (p > 0) log_binom += std::log(static_cast<double>(p + N) / static_cast<double>(p));
    c.push_back(std::exp(static_cast<double>(p) * lt + 0.5 * log_binom - (N + 1) * lc));
  }
  return c;
}

std::vector<Term> vacuum_terms(double r, Index cutoff) {
  std::vector<Term> out;
  const auto c = squeeze_amplitudes(0, r, cutoff);
  for (std::size_t n = 0; n < c.size(); ++n) out.push_back({Index(n), Index(n), c[n]});
  return out;
}

std::vector<Term> fock_terms(int N, double r, Index cutoff) {
  std::vector<Term> out;
  const auto c = squeeze_amplitudes(N, r, cutoff);
  for (std::size_t p = 0; p < c.size(); ++p) out.push_back({Index(p) + N, Index(p), c[p]});
  return out;
}

// One Unruh excitation split between the wedges:
// sum_n t^n sqrt(n+1)/cosh^2 (q_R |n+1,n> + q_L |n,n+1>).
std::vector<Term> excited_terms(const ChannelParams& p) {
  std::vector<Term> out;
  const auto c = squeeze_amplitudes(1, p.r, p.cutoff);
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Index m = Index(n);
    if (p.q_R != Complex(0.0, 0.0)) out.push_back({m + 1, m, p.q_R * c[n]});
    if (p.q_L != Complex(0.0, 0.0)) out.push_back({m, m + 1, p.q_L * c[n]});
  }
  return out;
}

PureState make_state(Layout layout, std::vector<std::pair<Index, Complex>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector v(layout.dim());
  v.reserve(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size();) {
    Complex sum = entries[i].second;
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].first == entries[i].first) sum += entries[j++].second;
    if (sum != Complex(0.0, 0.0)) v.insertBack(entries[i].first) = sum;
    i = j;
  }
  return PureState(std::move(layout), std::move(v));
}

PureState single_mode_state(const std::vector<Term>& terms, Index cutoff) {
  Layout lay({{Mode::R, cutoff}, {Mode::Rbar, cutoff}});
  std::vector<std::pair<Index, Complex>> e;
  for (const auto& t : terms) {
    if (t.r < cutoff && t.rbar < cutoff) e.emplace_back(t.r * cutoff + t.rbar, t.amp);
  }
  return make_state(std::move(lay), std::move(e));
}

// Product of per-rail states laid out as (R0, R1, Rbar0, Rbar1).
PureState dual_rail_state(const std::vector<Term>& rail0, const std::vector<Term>& rail1, Index cutoff) {
  Layout lay({{Mode::R0, cutoff}, {Mode::R1, cutoff}, {Mode::Rbar0, cutoff}, {Mode::Rbar1, cutoff}});
  std::vector<std::pair<Index, Complex>> e;
  e.reserve(rail0.size() * rail1.size());
  for (const auto& a : rail0) {
    if (a.r >= cutoff || a.rbar >= cutoff) continue;
    for (const auto& b : rail1) {
      if (b.r >= cutoff || b.rbar >= cutoff) continue;
      const Index occ[4] = {a.r, b.r, a.rbar, b.rbar};
      e.emplace_back(lay.index(occ), a.amp * b.amp);
    }
  }
  return make_state(std::move(lay), std::move(e));
}

bool is_noon(const Encoding& enc) { return std::holds_alternative<Noon>(enc.payload); }

LogicalImages closed_form_images(const ChannelParams& params, const Encoding& enc) {
  LogicalImages img;
  img.has_alice = true;
  const Index K = params.cutoff;
  if (enc.rail == Rail::single) {
    img.output = Layout({{Mode::R, K}});
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) img.out[x][y] = transform_matrix_element(x, y, params.r, K);
    }
    return img;
  }
  img.output = Layout({{Mode::R0, K}, {Mode::R1, K}});
  const Mode R[] = {Mode::R};
  const Mode R0[] = {Mode::R0};
  const Mode R1[] = {Mode::R1};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      // logical 0 puts the excitation on rail 0
      DensityMatrix a = fock::relabel(transform_matrix_element(1 - x, 1 - y, params.r, K), R, R0);
      DensityMatrix b = fock::relabel(transform_matrix_element(x, y, params.r, K), R, R1);
      img.out[x][y] = fock::tensor_product(a, b);
    }
  }
  return img;
}

LogicalImages generic_images(const ChannelParams& params, const Encoding& enc, bool keep_antirob) {
  const Index K = params.cutoff;
  std::array<PureState, 2> branch;
  std::vector<Mode> discard;
  LogicalImages img;

  if (const auto* noon = std::get_if<Noon>(&enc.payload)) {
    img.has_alice = false;
    if (enc.rail == Rail::single) {
      branch[0] = single_mode_state(vacuum_terms(params.r, K), K);
      branch[1] = single_mode_state(fock_terms(noon->N, params.r, K), K);
    } else {
      const auto vac = vacuum_terms(params.r, K);
      const auto exc = fock_terms(noon->N, params.r, K);
      branch[0] = dual_rail_state(exc, vac, K);
      branch[1] = dual_rail_state(vac, exc, K);
    }
  } else if (enc.rail == Rail::single) {
    branch[0] = single_mode_state(vacuum_terms(params.r, K), K);
    branch[1] = single_mode_state(excited_terms(params), K);
  } else {
    const auto vac = vacuum_terms(params.r, K);
    const auto exc = excited_terms(params);
    branch[0] = dual_rail_state(exc, vac, K);
    branch[1] = dual_rail_state(vac, exc, K);
  }

  if (!keep_antirob) {
    if (enc.rail == Rail::single) {
      discard = {Mode::Rbar};
    } else {
      discard = {Mode::Rbar0, Mode::Rbar1};
    }
  }
  img.output = branch[0].layout().without(discard);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) img.out[x][y] = fock::partial_trace_cross(branch[x], branch[y], discard);
  }
  return img;
}

}  // namespace

ChannelParams ChannelParams::with_real_weights(double r, double q_R, Index cutoff) {
  if (!(q_R >= 0.0 && q_R <= 1.0)) throw std::invalid_argument("q_R must lie in [0,1]");
  ChannelParams p;
  p.r = r;
  p.q_R = q_R;
  p.q_L = std::sqrt(std::max(0.0, 1.0 - q_R * q_R));
  p.cutoff = cutoff;
  return p;
}

bool ChannelParams::single_wedge() const { return q_L == Complex(0.0, 0.0) && std::abs(q_R - 1.0) < kWeightTolerance; }

void ChannelParams::validate() const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("squeezing r must be finite and >= 0");
  if (std::abs(std::norm(q_R) + std::norm(q_L) - 1.0) > kWeightTolerance) {
    throw std::invalid_argument("wedge weights must satisfy |q_R|^2 + |q_L|^2 = 1");
  }
  if (cutoff < 2) throw std::invalid_argument("cutoff must be at least 2");
}

void Encoding::validate() const {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ClassicalBit>) {
          if (!(p.p0 >= 0.0 && p.p0 <= 1.0)) throw std::invalid_argument("p0 must lie in [0,1]");
        } else if constexpr (std::is_same_v<T, QuantumQubit>) {
          if (std::abs(std::norm(p.alpha) + std::norm(p.beta) - 1.0) > 1e-12) {
            throw std::invalid_argument("qubit amplitudes must be normalised");
          }
        } else if constexpr (std::is_same_v<T, AmplitudeParam>) {
          if (!std::isfinite(p.theta)) throw std::invalid_argument("theta must be finite");
        } else {
          if (p.N < 1) throw std::invalid_argument("NOON excitation number must be >= 1");
          const bool single = p.mode == NoonMode::single_rail;
          if (single != (rail == Rail::single)) {
            throw std::invalid_argument("NOON mode does not match the rail");
          }
        }
      },
      payload);
}

PureState squeeze_fock(int N, double r, Index cutoff) {
  if (N < 0) throw std::invalid_argument("squeeze_fock: N must be >= 0");
  if (cutoff <= N) throw std::invalid_argument("squeeze_fock: cutoff must exceed N");
  if (!(r >= 0.0)) throw std::invalid_argument("squeeze_fock: r must be >= 0");
  return single_mode_state(fock_terms(N, r, cutoff), cutoff);
}

DensityMatrix transform_matrix_element(int ket, int bra, double r, Index cutoff) {
  if ((ket != 0 && ket != 1) || (bra != 0 && bra != 1)) {
    throw std::invalid_argument("transform_matrix_element: ket and bra must be 0 or 1");
  }
  if (cutoff < 2) throw std::invalid_argument("transform_matrix_element: cutoff must be >= 2");
  if (!(r >= 0.0)) throw std::invalid_argument("transform_matrix_element: r must be >= 0");
  const double t = std::tanh(r), c = std::cosh(r);
  const double t2 = t * t;
  std::vector<Triplet> trip;
  double w = 1.0;  // tanh^{2n}
  for (Index n = 0; n + ket < cutoff && n + bra < cutoff; ++n) {
    const double sq = std::sqrt(static_cast<double>(n + 1));
    double v = w / (c * c);
    if (ket == 1) v *= sq / c;
    if (bra == 1) v *= sq / c;
    if (v != 0.0) trip.emplace_back(n + ket, n + bra, v);
    w *= t2;
    if (w == 0.0) break;
  }
  return DensityMatrix::from_triplets(Layout({{Mode::R, cutoff}}), trip);
}

LogicalImages logical_images(const ChannelParams& params, const Encoding& enc, bool keep_antirob,
                             ConstructionPath path) {
  params.validate();
  enc.validate();
  const bool noon = is_noon(enc);
  if (noon && !params.single_wedge()) {
    throw std::invalid_argument("NOON payloads are only modelled under the single wedge mapping");
  }
  if (noon) {
    const int N = std::get<Noon>(enc.payload).N;
    if (params.cutoff <= N) throw std::invalid_argument("cutoff must exceed the NOON excitation number");
  }
  const bool closed_ok = !noon && !keep_antirob && params.single_wedge();
  if (path == ConstructionPath::closed_form && !closed_ok) {
    throw std::invalid_argument("closed-form construction needs q_R = 1, no antirob and a qubit payload");
  }
  if (path == ConstructionPath::closed_form || (path == ConstructionPath::automatic && closed_ok)) {
    return closed_form_images(params, enc);
  }
  return generic_images(params, enc, keep_antirob);
}

Eigen::Matrix2cd payload_matrix(const Encoding& enc) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ClassicalBit>) {
          m(0, 0) = p.p0;
          m(1, 1) = 1.0 - p.p0;
        } else if constexpr (std::is_same_v<T, QuantumQubit>) {
          m(0, 0) = std::norm(p.alpha);
          m(0, 1) = p.alpha * std::conj(p.beta);
          m(1, 0) = std::conj(p.alpha) * p.beta;
          m(1, 1) = std::norm(p.beta);
        } else if constexpr (std::is_same_v<T, AmplitudeParam>) {
          const double c = std::cos(p.theta), s = std::sin(p.theta);
          m(0, 0) = c * c;
          m(1, 1) = s * s;
          if (p.coherent) m(0, 1) = m(1, 0) = c * s;
        } else {
          const Complex ph = std::polar(1.0, p.N * p.theta);
          m(0, 0) = m(1, 1) = 0.5;
          m(0, 1) = 0.5 * std::conj(ph);
          m(1, 0) = 0.5 * ph;
        }
      },
      enc.payload);
  return m;
}

Eigen::Matrix2cd payload_matrix_derivative(const Encoding& enc) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  if (const auto* p = std::get_if<AmplitudeParam>(&enc.payload)) {
    const double c = std::cos(p->theta), s = std::sin(p->theta);
    m(0, 0) = -2.0 * c * s;
    m(1, 1) = 2.0 * c * s;
    if (p->coherent) m(0, 1) = m(1, 0) = c * c - s * s;
  } else if (const auto* n = std::get_if<Noon>(&enc.payload)) {
    const Complex ph = std::polar(1.0, n->N * n->theta);
    const Complex i(0.0, 1.0);
    m(0, 1) = -0.5 * i * static_cast<double>(n->N) * std::conj(ph);
    m(1, 0) = 0.5 * i * static_cast<double>(n->N) * ph;
  }
  return m;
}

DensityMatrix assemble(const LogicalImages& images, const Eigen::Matrix2cd& m) {
  if (!images.has_alice) {
    fock::SparseMatrix acc(images.output.dim(), images.output.dim());
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        if (m(x, y) != Complex(0.0, 0.0)) acc += m(x, y) * images.out[x][y].matrix();
      }
    }
    acc.prune(Complex(0.0, 0.0));
    return DensityMatrix(images.output, std::move(acc));
  }
  Layout lay = Layout({{Mode::A, 2}}).concat(images.output);
  const Index D = images.output.dim();
  std::vector<Triplet> t;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      if (m(x, y) == Complex(0.0, 0.0)) continue;
      const auto& o = images.out[x][y].matrix();
      for (Index j = 0; j < o.outerSize(); ++j) {
        for (fock::SparseMatrix::InnerIterator it(o, j); it; ++it) {
          t.emplace_back(x * D + it.row(), y * D + j, m(x, y) * it.value());
        }
      }
    }
  }
  return DensityMatrix::from_triplets(std::move(lay), t);
}

DensityMatrix build_channel_state(const ChannelParams& params, const Encoding& enc, bool keep_antirob,
                                  ConstructionPath path) {
  return assemble(logical_images(params, enc, keep_antirob, path), payload_matrix(enc));
}

}  // namespace rqichan::channel
