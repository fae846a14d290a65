/*
   Copyright 2026 The jdpp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jdpp/error.hpp"

namespace jdpp {

// Membership of a ground-set point: X1 ("particles kept") or X2 ("holes
// swapped") under the particle-hole involution.
enum class Part : std::uint8_t { one = 1, two = 2 };

inline Part other(Part p) { return p == Part::one ? Part::two : Part::one; }

// A set of ground-set indices, stored sorted and duplicate free. The tag only
// keeps configurations and windows from being mixed up.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> members)
      : IndexSet(std::vector<std::size_t>(members)) {}
  explicit IndexSet(std::vector<std::size_t> members)
      : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) !=
        members_.end()) {
      throw PreconditionError("index set contains a repeated index");
    }
  }

  static IndexSet from_mask(std::uint64_t mask) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
      if (mask & 1U) m.push_back(i);
    }
    return IndexSet(std::move(m));
  }

  // Bit i set iff index i is a member; requires every index < 64.
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (std::size_t i : members_) {
      if (i >= 64) throw PreconditionError("index too large for a bitmask");
      m |= std::uint64_t{1} << i;
    }
    return m;
  }

  std::span<const std::size_t> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

struct ConfigurationTag {};
struct WindowTag {};

// One realization of a point process: the points present.
using Configuration = IndexSet<ConfigurationTag>;
// A bounded window (Delta) of the ground set.
using IndexWindow = IndexSet<WindowTag>;

// Finite ground set X = X1 ⊔ X2 with point weights (the reference measure).
// Points of the two parts may be interleaved; all block views go through the
// part labels. Immutable after construction.
class PartitionedSpace {
 public:
  PartitionedSpace() = default;
  explicit PartitionedSpace(std::vector<Part> parts,
                            std::vector<double> weights = {});

  // n1 points of X1 followed by n2 points of X2, unit weights.
  static PartitionedSpace split(std::size_t n1, std::size_t n2);

  std::size_t size() const { return parts_.size(); }
  Part part(std::size_t i) const { return parts_.at(i); }
  std::span<const Part> parts() const { return parts_; }
  double weight(std::size_t i) const { return weights_.at(i); }
  std::span<const double> weights() const { return weights_; }
  bool unit_weights() const;

  // Indices of the points in part p, ascending.
  std::vector<std::size_t> indices(Part p) const;
  std::size_t count(Part p) const;

  // Optional point labels; either display names or coordinates.
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& coordinates() const { return coordinates_; }
  PartitionedSpace with_names(std::vector<std::string> names) const;
  PartitionedSpace with_coordinates(std::vector<double> coords) const;

  // The space induced on a window: parts, weights and labels inherited,
  // points renumbered 0..|window|-1 in window order.
  PartitionedSpace subspace(const IndexWindow& window) const;

  // Same points with X1 and X2 exchanged.
  PartitionedSpace swapped() const;

  void check(const Configuration& gamma) const;
  void check(const IndexWindow& window) const;

  IndexWindow all() const;

  friend bool operator==(const PartitionedSpace&,
                         const PartitionedSpace&) = default;

 private:
  std::vector<Part> parts_;
  std::vector<double> weights_;
  std::vector<std::string> names_;
  std::vector<double> coordinates_;
};

// P1 or P2 as a 0/1 diagonal matrix.
Eigen::MatrixXd projector(const PartitionedSpace& space, Part which);

// J = P1 - P2.
Eigen::MatrixXd j_operator(const PartitionedSpace& space);

// Particle-hole involution: (gamma ∩ X1) ∪ (X2 \ gamma).
Configuration complement(const PartitionedSpace& space,
                         const Configuration& gamma);

// Same involution on bitmask configurations (n <= 64).
std::uint64_t complement_mask(const PartitionedSpace& space,
                              std::uint64_t mask);

// (Delta ∩ X1, Delta ∩ X2).
std::pair<IndexWindow, IndexWindow> window_split(const PartitionedSpace& space,
                                                 const IndexWindow& delta);

}  // namespace jdpp
