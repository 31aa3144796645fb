#pragma once

#include <array>
#include <variant>

#include "rqichan/fock/states.hpp"

namespace rqichan::channel {

using fock::Complex;
using fock::DensityMatrix;
using fock::Index;
using fock::PureState;

struct ChannelParams {
  double r = 0.0;
  Complex q_R{1.0, 0.0};
  Complex q_L{0.0, 0.0};
  Index cutoff = 30;  // Fock dimension per noisy mode

  /// q_R real in [0,1] and q_L = sqrt(1 - q_R^2).
  static ChannelParams with_real_weights(double r, double q_R, Index cutoff);
  bool single_wedge() const;
  void validate() const;
};

enum class Rail { single, dual };
enum class NoonMode { single_rail, dual_rail };

struct ClassicalBit {
  double p0 = 0.5;
};
struct QuantumQubit {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
};
/// cos(theta)|0> + sin(theta)|1>, or the cos^2/sin^2 mixture when coherent is false.
struct AmplitudeParam {
  double theta = 0.0;
  bool coherent = true;
};
/// (|N,0> + e^{iN theta}|0,N>)/sqrt2 on two rails, or (|0> + e^{iN theta}|N>)/sqrt2 on one.
struct Noon {
  int N = 1;
  double theta = 0.0;
  NoonMode mode = NoonMode::single_rail;
};

using Payload = std::variant<ClassicalBit, QuantumQubit, AmplitudeParam, Noon>;

struct Encoding {
  Rail rail = Rail::single;
  Payload payload = ClassicalBit{};
  void validate() const;
};

enum class ConstructionPath { automatic, closed_form, generic };

/// N Unruh excitations after two-mode squeezing, on modes (R, Rbar).
PureState squeeze_fock(int N, double r, Index cutoff);

/// Image on mode R of |ket><bra| (ket, bra in {0,1}) once Rbar is traced out.
DensityMatrix transform_matrix_element(int ket, int bra, double r, Index cutoff);

/// Images of the four logical operators |x><y|. For qubit payloads x labels
/// Alice's logical value; for NOON payloads it labels the two Fock components.
struct LogicalImages {
  fock::Layout output;
  std::array<std::array<DensityMatrix, 2>, 2> out;
  bool has_alice = true;
};

LogicalImages logical_images(const ChannelParams& params, const Encoding& enc, bool keep_antirob,
                             ConstructionPath path = ConstructionPath::automatic);

/// Input density matrix of the payload in its two-state logical basis, and its theta derivative
/// (zero for payloads without theta).
Eigen::Matrix2cd payload_matrix(const Encoding& enc);
Eigen::Matrix2cd payload_matrix_derivative(const Encoding& enc);

/// sum_xy m_xy [|x><y|_A ⊗] out_xy
DensityMatrix assemble(const LogicalImages& images, const Eigen::Matrix2cd& m);

DensityMatrix build_channel_state(const ChannelParams& params, const Encoding& enc, bool keep_antirob,
                                  ConstructionPath path = ConstructionPath::automatic);

}  // namespace rqichan::channel
