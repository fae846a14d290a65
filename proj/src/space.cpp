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

#include "jdpp/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jdpp {

PartitionedSpace::PartitionedSpace(std::vector<Part> parts,
                                   std::vector<double> weights)
    : parts_(std::move(parts)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(parts_.size(), 1.0);
  if (weights_.size() != parts_.size()) {
    throw PreconditionError("space: " + std::to_string(weights_.size()) +
                            " weights for " + std::to_string(parts_.size()) +
                            " points");
  }
  for (Part p : parts_) {
    if (p != Part::one && p != Part::two) {
      throw PreconditionError("space: part labels must be 1 or 2");
    }
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw PreconditionError("space: weights must be finite and positive");
    }
  }
}

PartitionedSpace PartitionedSpace::split(std::size_t n1, std::size_t n2) {
  std::vector<Part> parts(n1, Part::one);
  parts.insert(parts.end(), n2, Part::two);
  return PartitionedSpace(std::move(parts));
}

bool PartitionedSpace::unit_weights() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](double w) { return w == 1.0; });
}

std::vector<std::size_t> PartitionedSpace::indices(Part p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == p) out.push_back(i);
  }
  return out;
}

std::size_t PartitionedSpace::count(Part p) const {
  return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), p));
}

PartitionedSpace PartitionedSpace::with_names(
    std::vector<std::string> names) const {
  if (!names.empty() && names.size() != size()) {
    throw PreconditionError("space: label count does not match point count");
  }
  PartitionedSpace out = *this;
  out.names_ = std::move(names);
  return out;
}

PartitionedSpace PartitionedSpace::with_coordinates(
    std::vector<double> coords) const {
  if (!coords.empty() && coords.size() != size()) {
    throw PreconditionError(
        "space: coordinate count does not match point count");
  }
  PartitionedSpace out = *this;
  out.coordinates_ = std::move(coords);
  return out;
}

PartitionedSpace PartitionedSpace::subspace(const IndexWindow& window) const {
  check(window);
  std::vector<Part> parts;
  std::vector<double> weights;
  std::vector<std::string> names;
  std::vector<double> coords;
  for (std::size_t i : window) {
    parts.push_back(parts_[i]);
    weights.push_back(weights_[i]);
    if (!names_.empty()) names.push_back(names_[i]);
    if (!coordinates_.empty()) coords.push_back(coordinates_[i]);
  }
  PartitionedSpace out(std::move(parts), std::move(weights));
  out.names_ = std::move(names);
  out.coordinates_ = std::move(coords);
  return out;
}

PartitionedSpace PartitionedSpace::swapped() const {
  PartitionedSpace out = *this;
  for (Part& p : out.parts_) p = other(p);
  return out;
}

void PartitionedSpace::check(const Configuration& gamma) const {
  if (!gamma.empty() && gamma.members().back() >= size()) {
    throw PreconditionError("configuration index " +
                            std::to_string(gamma.members().back()) +
                            " out of bounds for n = " + std::to_string(size()));
  }
}

void PartitionedSpace::check(const IndexWindow& window) const {
  if (!window.empty() && window.members().back() >= size()) {
    throw PreconditionError("window index " +
                            std::to_string(window.members().back()) +
                            " out of bounds for n = " + std::to_string(size()));
  }
}

IndexWindow PartitionedSpace::all() const {
  std::vector<std::size_t> idx(size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return IndexWindow(std::move(idx));
}

Eigen::MatrixXd projector(const PartitionedSpace& space, Part which) {
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (space.part(static_cast<std::size_t>(i)) == which) p(i, i) = 1.0;
  }
  return p;
}

Eigen::MatrixXd j_operator(const PartitionedSpace& space) {
  return projector(space, Part::one) - projector(space, Part::two);
}

Configuration complement(const PartitionedSpace& space,
                         const Configuration& gamma) {
  space.check(gamma);
  std::vector<std::size_t> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const bool present = gamma.contains(i);
    if (space.part(i) == Part::one ? present : !present) out.push_back(i);
  }
  return Configuration(std::move(out));
}

std::uint64_t complement_mask(const PartitionedSpace& space,
                              std::uint64_t mask) {
  if (space.size() > 64) {
    throw PreconditionError("bitmask configurations need n <= 64");
  }
  std::uint64_t x2 = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.part(i) == Part::two) x2 |= std::uint64_t{1} << i;
  }
  return mask ^ x2;
}

std::pair<IndexWindow, IndexWindow> window_split(const PartitionedSpace& space,
                                                 const IndexWindow& delta) {
  space.check(delta);
  std::vector<std::size_t> first, second;
  for (std::size_t i : delta) {
    (space.part(i) == Part::one ? first : second).push_back(i);
  }
  return {IndexWindow(std::move(first)), IndexWindow(std::move(second))};
}

}  // namespace jdpp
