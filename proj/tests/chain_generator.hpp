#pragma once

// Random valid chains for property tests.

#include <optional>
#include <vector>

#include "sv/configurations.hpp"
#include "sv/random.hpp"

namespace sv::testing {

// Random valid chain of total genus <= max_genus, built from a random cyclic
// pattern of cylinder / pair-of-holes junctions.
struct GeneratedChain {
  Configuration config;
  int genus_sum = 0;
  int expected_n = 0;
  int expected_q = 0;
};

inline std::vector<int> random_composition(int total, sv::CounterRng& rng) {
  std::vector<int> parts;
  while (total > 0) {
    int part = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(total));
    parts.push_back(part);
    total -= part;
  }
  return parts;
}

inline std::optional<GeneratedChain> random_chain(sv::CounterRng& rng, int max_genus) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1)); };
  auto genus = [&]() { return rng.uniform01() < 0.7 ? 1 : pick(2, 3); };
  const int k = pick(1, 5);
  std::vector<bool> hole(k);
  for (int j = 0; j < k; ++j) hole[j] = rng.uniform01() < 0.4;
  GeneratedChain out;
  std::vector<Block> blocks(k);
  std::vector<SurfacePiece> start(k), finish(k);
  for (int j = 0; j < k; ++j) {
    if (!hole[j]) continue;
    int g = genus(), total = 2 * g - 2;
    int b1 = pick(0, total), b2 = pick(0, total - b1);
    auto in = random_composition(total - b1 - b2, rng);
    finish[j] = {b1, g, in};
    start[(j + 1) % k] = {b2, g, in};
    out.genus_sum += g;
    out.expected_n += 2 * g + static_cast<int>(in.size()) + 2 - 1;
  }
  int type_one = 0, type_two = 0;
  for (int i = 0; i < k; ++i) {
    const bool s = hole[(i + k - 1) % k], f = hole[i];
    Block& b = blocks[i];
    b.kind = s && f ? BlockKind::TypeIII : (s || f) ? BlockKind::TypeII : BlockKind::TypeI;
    type_one += b.kind == BlockKind::TypeI;
    type_two += b.kind == BlockKind::TypeII;
    if (s) b.pair_of_holes.push_back(start[i]);
    if (f) b.pair_of_holes.push_back(finish[i]);
    if (s != f) b.orientation = f ? Orientation::CylinderFirst : Orientation::CylinderLast;
    int f8 = pick(b.kind == BlockKind::TypeI ? 1 : 0, 2);
    for (int j = 0; j < f8; ++j) {
      int g = genus(), total = 2 * g - 2;
      int a = pick(0, total);
      auto in = random_composition(total - a, rng);
      b.figure_eights.push_back({a, g, in});
      out.genus_sum += g;
      out.expected_n += 2 * g + static_cast<int>(in.size()) + 1 - 1;
    }
  }
  if (out.genus_sum + 1 > max_genus) return std::nullopt;
  out.config = Configuration(std::move(blocks));
  out.expected_q = type_one + type_two / 2;
  return out;
}


}  // namespace sv::testing
