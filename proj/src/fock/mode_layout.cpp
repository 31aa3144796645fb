#include "rqichan/fock/mode_layout.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace rqichan::fock {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::A: return "A";
    case Mode::R: return "R";
    case Mode::Rbar: return "Rbar";
    case Mode::A0: return "A0";
    case Mode::A1: return "A1";
    case Mode::R0: return "R0";
    case Mode::R1: return "R1";
    case Mode::Rbar0: return "Rbar0";
    case Mode::Rbar1: return "Rbar1";
  }
  return "?";
}

Layout::Layout(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].cutoff < 1) {
      throw std::invalid_argument("mode " + std::string(mode_name(modes_[i].name)) +
                                  " has cutoff below 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (modes_[j].name == modes_[i].name) {
        throw std::invalid_argument("duplicate mode label " +
                                    std::string(mode_name(modes_[i].name)));
      }
    }
  }
  strides_.assign(modes_.size(), 1);
  dim_ = 1;
  for (std::size_t i = modes_.size(); i-- > 0;) {
    strides_[i] = dim_;
    if (dim_ > std::numeric_limits<Index>::max() / modes_[i].cutoff) {
      throw std::overflow_error("layout dimension overflows the index type");
    }
    dim_ *= modes_[i].cutoff;
  }
}

std::optional<std::size_t> Layout::position(Mode m) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].name == m) return i;
  }
  return std::nullopt;
}

std::size_t Layout::require(Mode m) const {
  auto p = position(m);
  if (!p) throw std::invalid_argument("mode " + std::string(mode_name(m)) + " not in layout");
  return *p;
}

Index Layout::index(std::span<const Index> occ) const {
  if (occ.size() != modes_.size()) throw std::invalid_argument("occupation list has wrong length");
  Index idx = 0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] < 0 || occ[i] >= modes_[i].cutoff) throw std::out_of_range("occupation beyond cutoff");
    idx += occ[i] * strides_[i];
  }
  return idx;
}

std::vector<Index> Layout::occupations(Index idx) const {
  std::vector<Index> occ(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) occ[i] = digit(idx, i);
  return occ;
}

Layout Layout::concat(const Layout& other) const {
  std::vector<ModeLabel> all = modes_;
  all.insert(all.end(), other.modes_.begin(), other.modes_.end());
  return Layout(std::move(all));
}

Layout Layout::without(std::span<const Mode> drop) const {
  for (Mode m : drop) require(m);
  std::vector<ModeLabel> kept;
  for (const auto& ml : modes_) {
    if (std::find(drop.begin(), drop.end(), ml.name) == drop.end()) kept.push_back(ml);
  }
  return Layout(std::move(kept));
}

bool Layout::operator==(const Layout& other) const {
  if (modes_.size() != other.modes_.size()) return false;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].name != other.modes_[i].name || modes_[i].cutoff != other.modes_[i].cutoff) {
      return false;
    }
  }
  return true;
}

}  // namespace rqichan::fock
