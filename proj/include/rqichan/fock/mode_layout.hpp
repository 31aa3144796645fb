#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rqichan::fock {

using Index = std::int64_t;

enum class Mode { A, R, Rbar, A0, A1, R0, R1, Rbar0, Rbar1 };

std::string_view mode_name(Mode m);

struct ModeLabel {
  Mode name;
  Index cutoff;  // Fock dimension kept for this mode
};

/// Ordered list of modes with mixed-radix strides. The first mode is the most
/// significant digit, so Layout{a} + Layout{b} matches Kronecker ordering.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<ModeLabel> modes);

  const std::vector<ModeLabel>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  Index dim() const { return dim_; }
  Index stride(std::size_t pos) const { return strides_[pos]; }
  Index cutoff(std::size_t pos) const { return modes_[pos].cutoff; }

  std::optional<std::size_t> position(Mode m) const;
  std::size_t require(Mode m) const;  // throws when absent
  bool contains(Mode m) const { return position(m).has_value(); }

  Index index(std::span<const Index> occupations) const;
  std::vector<Index> occupations(Index idx) const;
  Index digit(Index idx, std::size_t pos) const { return (idx / strides_[pos]) % modes_[pos].cutoff; }

  /// Concatenation; throws std::invalid_argument on a repeated mode.
  Layout concat(const Layout& other) const;
  Layout without(std::span<const Mode> drop) const;

  bool operator==(const Layout& other) const;

 private:
  std::vector<ModeLabel> modes_;
  std::vector<Index> strides_;
  Index dim_ = 1;
};

}  // namespace rqichan::fock
