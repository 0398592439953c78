#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "yadf/instance.hpp"

namespace yadf {

/// SplitMix64: the 64-bit state advances by the golden-gamma constant and the
/// output is a finalized mix of it. Portable across platforms and languages,
/// so generated corpora can be reproduced bit for bit from the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = state_ += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1): top 53 bits scaled.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Index into cumulative weights (must sum to ~1).
  std::size_t categorical(const std::vector<double>& probs) {
    double x = next_double();
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (x < acc) return i;
    }
    return probs.size() - 1;
  }

 private:
  std::uint64_t state_;
};

struct GeneratorOptions {
  bool directed = false;             // undirected inputs get oriented per edge
  double symmetric_link_prob = 0.5;  // undirected only
  std::array<double, 5> group_probs{0.2, 0.2, 0.2, 0.2, 0.2};
  std::uint64_t seed = 0;
};

struct GraphInput {
  // node ids in first-appearance order; edges as index pairs in file order
  std::vector<std::string> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Whitespace-separated `u v` lines; integer tokens n become statement s<n>,
/// identifier tokens are used as is. Throws std::invalid_argument.
GraphInput parse_edge_list(const std::string& text);

/// Structure-inheriting random ADF: nodes become statements; each parent is
/// assigned to one of five groups (attack, group-attack, support,
/// group-support, xor); empty groups contribute a random truth constant; the
/// five subformulas are folded left to right with random and/or.
AdfInstance generate(const GraphInput& graph, const GeneratorOptions& opt);

}  // namespace yadf
