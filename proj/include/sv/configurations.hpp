#pragma once

// Configurations of homologous saddle connections, modelled as cyclic chains
// of blocks. Each block creates one newborn zero:
//
//   type I    cylinder | figure-eight surfaces (k >= 1) | cylinder
//   type II   cylinder | figure-eight surfaces (k >= 0) | pair-of-holes surface
//             (or the mirror image, see Orientation)
//   type III  pair-of-holes | figure-eight surfaces (k >= 0) | pair-of-holes
//
// Consecutive blocks share their end piece. A shared cylinder is one of the
// q cylinders; a shared pair-of-holes surface appears once in each of the two
// blocks it joins, and both entries must agree on its genus and interior
// zeros. The base order recorded in an entry is the order of the surgery
// point on that block's side.

#include <algorithm>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sv/errors.hpp"
#include "sv/rational.hpp"
#include "sv/strata.hpp"

namespace sv {

enum class BlockKind { TypeI, TypeII, TypeIII };

inline std::string_view to_string(BlockKind k) {
  switch (k) {
    case BlockKind::TypeI: return "I";
    case BlockKind::TypeII: return "II";
    case BlockKind::TypeIII: return "III";
  }
  return "?";
}

inline BlockKind parse_block_kind(std::string_view s) {
  if (s == "I") return BlockKind::TypeI;
  if (s == "II") return BlockKind::TypeII;
  if (s == "III") return BlockKind::TypeIII;
  throw ParseError("unknown block kind '" + std::string(s) + "'");
}

/// Which end of a type II block is the cylinder.
enum class Orientation { CylinderFirst, CylinderLast };

/// A complementary surface with boundary: genus, interior zeros and the order
/// of the point where its boundary was created (a for a figure eight, b' or b''
/// for one side of a pair of holes). Order 0 means a regular point.
struct SurfacePiece {
  int base_order = 0;
  int genus = 1;
  std::vector<int> interior;

  auto operator<=>(const SurfacePiece&) const = default;
};

struct Block {
  BlockKind kind = BlockKind::TypeI;
  std::vector<SurfacePiece> figure_eights;
  std::vector<SurfacePiece> pair_of_holes;
  std::optional<Orientation> orientation;  // type II only; inferred when absent

  auto operator<=>(const Block&) const = default;
};

inline SurfacePiece torus_piece(int base_order = 0) { return {base_order, 1, {}}; }

/// Newborn zero order created by a block.
inline int newborn_order(const Block& b) {
  int order = 0;
  for (const auto& f : b.figure_eights) order += f.base_order + 2;
  for (const auto& p : b.pair_of_holes) order += p.base_order + 1;
  return order;
}

class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  /// Rotation that is lexicographically smallest; two chains describing the
  /// same cyclic arrangement have equal canonical forms.
  Configuration canonical() const {
    std::vector<Block> norm = blocks_;
    for (auto& b : norm) {
      auto sort_piece = [](SurfacePiece& p) { std::sort(p.interior.begin(), p.interior.end(), std::greater<>()); };
      std::for_each(b.figure_eights.begin(), b.figure_eights.end(), sort_piece);
      std::for_each(b.pair_of_holes.begin(), b.pair_of_holes.end(), sort_piece);
    }
    if (norm.empty()) return Configuration{};
    std::vector<Block> best = norm;
    for (std::size_t r = 1; r < norm.size(); ++r) {
      std::vector<Block> rot(norm.begin() + r, norm.end());
      rot.insert(rot.end(), norm.begin(), norm.begin() + r);
      if (rot < best) best = std::move(rot);
    }
    return Configuration(std::move(best));
  }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.canonical().blocks_ == b.canonical().blocks_;
  }

 private:
  std::vector<Block> blocks_;
};

struct ConfigurationAnalysis {
  std::vector<int> newborn_orders;          // one per block, chain order
  std::vector<Orientation> orientations;    // resolved, one per block (ignored for I/III)
  int q = 0;
  Stratum alpha;
  BoundaryStratum alpha_prime;
  int n = 0;
  Rational mean_area_conf;                  // q / (2g + m - 2)
  int first_cylinder_block = -1;            // block whose end is the first cylinder, or -1 if q = 0
};

namespace detail {

enum class End { Cylinder, PairOfHoles };

inline End start_end(const Block& b, Orientation o) {
  switch (b.kind) {
    case BlockKind::TypeI: return End::Cylinder;
    case BlockKind::TypeIII: return End::PairOfHoles;
    case BlockKind::TypeII: return o == Orientation::CylinderFirst ? End::Cylinder : End::PairOfHoles;
  }
  return End::Cylinder;
}

inline End finish_end(const Block& b, Orientation o) {
  switch (b.kind) {
    case BlockKind::TypeI: return End::Cylinder;
    case BlockKind::TypeIII: return End::PairOfHoles;
    case BlockKind::TypeII: return o == Orientation::CylinderFirst ? End::PairOfHoles : End::Cylinder;
  }
  return End::Cylinder;
}

// The pair-of-holes entry on the start / finish side of a block.
inline const SurfacePiece& start_hole(const Block& b) { return b.pair_of_holes.front(); }
inline const SurfacePiece& finish_hole(const Block& b) { return b.pair_of_holes.back(); }

inline void check_piece(const SurfacePiece& p, std::string_view what, std::size_t block) {
  const std::string where = " (block " + std::to_string(block) + ")";
  if (p.genus < 1) throw InvalidBlock(std::string(what) + " genus must be >= 1" + where);
  if (p.base_order < 0) throw InvalidBlock(std::string(what) + " base order must be >= 0" + where);
  for (int d : p.interior)
    if (d < 1) throw InvalidBlock(std::string(what) + " interior zero orders must be >= 1" + where);
}

inline int interior_sum(const SurfacePiece& p) {
  int s = 0;
  for (int d : p.interior) s += d;
  return s;
}

inline std::vector<int> sorted_desc(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline void check_structure(const std::vector<Block>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const std::string where = " (block " + std::to_string(i) + ")";
    switch (b.kind) {
      case BlockKind::TypeI:
        if (b.figure_eights.empty()) throw InvalidBlock("type I needs at least one figure-eight surface" + where);
        if (!b.pair_of_holes.empty()) throw InvalidBlock("type I has no pair-of-holes surface" + where);
        break;
      case BlockKind::TypeII:
        if (b.pair_of_holes.size() != 1) throw InvalidBlock("type II has exactly one pair-of-holes entry" + where);
        break;
      case BlockKind::TypeIII:
        if (b.pair_of_holes.size() != 2) throw InvalidBlock("type III has exactly two pair-of-holes entries" + where);
        break;
    }
    if (b.orientation && b.kind != BlockKind::TypeII)
      throw InvalidBlock("orientation is only meaningful for type II" + where);
    for (const auto& f : b.figure_eights) check_piece(f, "figure-eight surface", i);
    for (const auto& p : b.pair_of_holes) check_piece(p, "pair-of-holes surface", i);
  }
}

// Fills in type II orientations so that every junction joins equal kinds of
// end piece. Explicit orientations are respected.
inline std::optional<std::vector<Orientation>> resolve_orientations(const std::vector<Block>& blocks) {
  for (End initial : {End::Cylinder, End::PairOfHoles}) {
    std::vector<Orientation> out;
    End state = initial;
    bool ok = true;
    for (const Block& b : blocks) {
      Orientation o = Orientation::CylinderFirst;
      if (b.kind == BlockKind::TypeII)
        o = b.orientation.value_or(state == End::Cylinder ? Orientation::CylinderFirst : Orientation::CylinderLast);
      if (start_end(b, o) != state) {
        ok = false;
        break;
      }
      state = finish_end(b, o);
      out.push_back(o);
    }
    if (ok && state == initial) return out;
  }
  return std::nullopt;
}

}  // namespace detail

/// Validates a chain and derives q, the ambient stratum, the principal
/// boundary stratum and n. Surgery points are counted as marked points of the
/// boundary components even when they are regular (order 0); with that
/// convention n(alpha') = dim_C H(alpha) - q - 1 holds for every chain.
inline ConfigurationAnalysis analyze(const Configuration& c) {
  const auto& blocks = c.blocks();
  if (blocks.empty())
    throw ObstructionViolated("a configuration needs at least one cylinder or pair-of-holes surface");
  detail::check_structure(blocks);

  int type_two = 0, type_one = 0;
  for (const auto& b : blocks) {
    type_one += b.kind == BlockKind::TypeI;
    type_two += b.kind == BlockKind::TypeII;
  }
  if (type_two % 2 != 0)
    throw NonIntegerCylinders("odd number of type II blocks (" + std::to_string(type_two) +
                              ") leaves half a cylinder unmatched");

  auto orient = detail::resolve_orientations(blocks);
  if (!orient) throw ChainMismatch("blocks cannot be glued cyclically: cylinder and pair-of-holes ends do not match");

  std::vector<int> newborn_orders;
  int first_cylinder_block = -1;
  std::vector<int> alpha_orders;
  std::vector<BoundaryComponent> boundary;

  const std::size_t k = blocks.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Block& b = blocks[i];
    for (const auto& f : b.figure_eights) {
      if (detail::interior_sum(f) + f.base_order != 2 * f.genus - 2)
        throw GaussBonnetViolated("figure-eight surface in block " + std::to_string(i) + ": orders sum to " +
                                  std::to_string(detail::interior_sum(f) + f.base_order) + ", genus " +
                                  std::to_string(f.genus) + " needs " + std::to_string(2 * f.genus - 2));
      std::vector<int> orders = f.interior;
      orders.push_back(f.base_order);
      boundary.push_back({orders, f.genus});
      alpha_orders.insert(alpha_orders.end(), f.interior.begin(), f.interior.end());
    }
    newborn_orders.push_back(newborn_order(b));

    // junction between this block's finish and the next block's start
    const Block& nb = blocks[(i + 1) % k];
    if (detail::finish_end(b, (*orient)[i]) == detail::End::PairOfHoles) {
      const SurfacePiece& left = detail::finish_hole(b);
      const SurfacePiece& right = detail::start_hole(nb);
      if (left.genus != right.genus || detail::sorted_desc(left.interior) != detail::sorted_desc(right.interior))
        throw ChainMismatch("pair-of-holes surface between blocks " + std::to_string(i) + " and " +
                            std::to_string((i + 1) % k) + " is described inconsistently");
      int total = detail::interior_sum(left) + left.base_order + right.base_order;
      if (total != 2 * left.genus - 2)
        throw GaussBonnetViolated("pair-of-holes surface between blocks " + std::to_string(i) + " and " +
                                  std::to_string((i + 1) % k) + ": orders sum to " + std::to_string(total) +
                                  ", genus " + std::to_string(left.genus) + " needs " +
                                  std::to_string(2 * left.genus - 2));
      std::vector<int> orders = left.interior;
      orders.push_back(left.base_order);
      orders.push_back(right.base_order);
      boundary.push_back({orders, left.genus});
      alpha_orders.insert(alpha_orders.end(), left.interior.begin(), left.interior.end());
    } else if (first_cylinder_block < 0) {
      first_cylinder_block = static_cast<int>(i);
    }
  }

  alpha_orders.insert(alpha_orders.end(), newborn_orders.begin(), newborn_orders.end());
  Stratum alpha = Stratum::from_orders(alpha_orders);
  BoundaryStratum alpha_prime = BoundaryStratum::from_components(boundary);
  const int q = (2 * type_one + type_two) / 2;
  const int n = alpha_prime.n();
  if (n != alpha.dim_complex() - q - 1)
    throw std::logic_error("dimension bookkeeping broken: n(alpha') = " + std::to_string(n) +
                           " but dim - q - 1 = " + std::to_string(alpha.dim_complex() - q - 1));
  Rational mean(q, alpha.dim_complex() - 1);
  return ConfigurationAnalysis{std::move(newborn_orders), *orient, q, std::move(alpha), std::move(alpha_prime), n,
                               std::move(mean), first_cylinder_block};
}

/// floor(sum chi(d_i)) with chi(1) = 1/2 and chi(d) = 1 for d > 1.
///
/// This is an upper bound on the number of cylinders of a configuration in
/// H(alpha). It is reached whenever alpha has at most one odd order >= 3;
/// see max_cylinder_witness for the construction used to realize cylinders.
inline int q_max(const Stratum& s) {
  int big = 0, ones = 0;
  for (int d : s.orders()) (d == 1 ? ones : big)++;
  return big + ones / 2;
}

/// q_max(alpha) / (2g - 2 + l(alpha)), the largest mean area of the periodic
/// region allowed by q_max in this stratum.
inline Rational max_mean_area_conf(const Stratum& s) {
  return Rational(q_max(s), 2 * s.genus() - 2 + s.num_zeros());
}

/// Integer partitions of n in decreasing lexicographic order, parts descending.
inline std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  if (n <= 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

struct ExtremalResult {
  Stratum best;
  Rational value;
};

/// Exhaustive maximization of q_max(alpha) / (2g - 2 + l(alpha)) over all
/// partitions alpha of 2g - 2. Ties keep the first partition in enumeration order.
inline ExtremalResult extremal_mean_area(int genus) {
  if (genus < 2) throw UnsupportedGenus("extremal search needs genus >= 2");
  std::optional<ExtremalResult> best;
  for (auto& parts : integer_partitions(2 * genus - 2)) {
    Stratum s = Stratum::from_orders(parts);
    Rational v = max_mean_area_conf(s);
    if (!best || v > best->value) best = ExtremalResult{s, v};
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Explicit constructions

/// Type I block at a regular point of each of `tori` tori: newborn order 2*tori.
inline Block type_one_tori(int tori) {
  Block b{BlockKind::TypeI, {}, {}, std::nullopt};
  b.figure_eights.assign(tori, torus_piece());
  return b;
}

/// All zeros of even order built from type I blocks of tori. Spin parity odd.
inline Configuration all_type_one_witness(const Stratum& s) {
  if (!s.all_even()) throw InvalidOrders("an all type I torus chain needs all orders even, got " + s.to_string());
  std::vector<Block> blocks;
  for (int d : s.orders()) blocks.push_back(type_one_tori(d / 2));
  return Configuration(std::move(blocks));
}

/// All zeros built from type III blocks joined by pair-of-holes tori. With
/// `genus_two_piece` one junction surface is replaced by a genus two surface;
/// this needs either a zero of order 2 (kept as an interior zero of that
/// surface), a zero of order >= 4, or a single zero.
inline Configuration all_type_three_witness(const Stratum& s, bool genus_two_piece = false) {
  if (!s.all_even()) throw InvalidOrders("an all type III chain needs all orders even, got " + s.to_string());
  std::vector<int> orders = s.orders();
  const std::size_t m = orders.size();
  // b_start / b_finish per block and the surface at each junction (block i -> i+1)
  std::vector<int> b_start(m, 0), b_finish(m, 0);
  std::vector<SurfacePiece> junction(m, torus_piece());
  std::vector<int> newborn = orders;

  if (genus_two_piece) {
    if (m == 1) {
      // both holes of the single block sit on one genus two surface, b' = b'' = 1
      if (orders[0] < 4) throw InvalidOrders("genus two substitution needs order >= 4 in " + s.to_string());
      b_start[0] = b_finish[0] = 1;
      junction[0] = SurfacePiece{0, 2, {}};
    } else if (auto two = std::find(orders.begin(), orders.end(), 2); two != orders.end()) {
      // an order-2 zero moves inside the genus two surface
      std::size_t idx = static_cast<std::size_t>(two - orders.begin());
      newborn.erase(newborn.begin() + static_cast<long>(idx));
      b_start.pop_back();
      b_finish.pop_back();
      junction.pop_back();
      junction[0] = SurfacePiece{0, 2, {2}};
    } else {
      // first zero has order >= 4: its start side gets b = 2 on the genus two surface
      b_start[0] = 2;
      junction[m - 1] = SurfacePiece{0, 2, {}};
    }
  }

  const std::size_t k = newborn.size();
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    const SurfacePiece& before = junction[(i + k - 1) % k];
    const SurfacePiece& after = junction[i];
    int tori = (newborn[i] - (b_start[i] + 1) - (b_finish[i] + 1)) / 2;
    if (tori < 0) throw InvalidOrders("order too small for type III block in " + s.to_string());
    Block b{BlockKind::TypeIII, {}, {}, std::nullopt};
    b.figure_eights.assign(tori, torus_piece());
    b.pair_of_holes.push_back(SurfacePiece{b_start[i], before.genus, before.interior});
    b.pair_of_holes.push_back(SurfacePiece{b_finish[i], after.genus, after.interior});
    blocks.push_back(std::move(b));
  }
  return Configuration(std::move(blocks));
}

/// Even orders by type I blocks of tori, odd orders paired into
/// cylinder | tori | pair-of-holes torus | tori | cylinder chains of type II.
/// Complementary regions are tori and cylinders only.
inline Configuration paired_type_two_witness(const Stratum& s) {
  std::vector<int> odd;
  std::vector<Block> blocks;
  for (int d : s.orders()) {
    if (d % 2 == 0)
      blocks.push_back(type_one_tori(d / 2));
    else
      odd.push_back(d);
  }
  for (std::size_t i = 0; i + 1 < odd.size(); i += 2) {
    Block first{BlockKind::TypeII, {}, {torus_piece()}, Orientation::CylinderFirst};
    first.figure_eights.assign((odd[i] - 1) / 2, torus_piece());
    Block second{BlockKind::TypeII, {}, {torus_piece()}, Orientation::CylinderLast};
    second.figure_eights.assign((odd[i + 1] - 1) / 2, torus_piece());
    blocks.push_back(std::move(first));
    blocks.push_back(std::move(second));
  }
  return Configuration(std::move(blocks));
}

/// A configuration with as many cylinders as the torus constructions give:
/// one per even zero plus one per pair of odd zeros.
inline Configuration max_cylinder_witness(const Stratum& s) { return paired_type_two_witness(s); }

// ---------------------------------------------------------------------------
// Spin parity and simple complements

enum class Parity { Even, Odd, Unknown };

inline std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Unknown: return "unknown";
  }
  return "?";
}

/// Parity of the spin structure for the chain shapes where it is known:
/// all type I over tori (odd), all type III over tori (parity of g - 1), all
/// type III over tori with a single genus two pair-of-holes surface (parity
/// of g). Anything else is Unknown.
inline Parity spin_parity(const Configuration& c) {
  ConfigurationAnalysis a = analyze(c);
  if (!a.alpha.all_even()) return Parity::Unknown;
  const auto& blocks = c.blocks();
  auto all_of_kind = [&](BlockKind k) {
    return std::all_of(blocks.begin(), blocks.end(), [k](const Block& b) { return b.kind == k; });
  };
  auto f8_tori = std::all_of(blocks.begin(), blocks.end(), [](const Block& b) {
    return std::all_of(b.figure_eights.begin(), b.figure_eights.end(), [](const SurfacePiece& p) { return p.genus == 1; });
  });
  if (!f8_tori) return Parity::Unknown;
  auto parity_of = [](int v) { return v % 2 == 0 ? Parity::Even : Parity::Odd; };
  const int g = a.alpha.genus();
  if (all_of_kind(BlockKind::TypeI)) return Parity::Odd;
  if (all_of_kind(BlockKind::TypeIII)) {
    // each junction surface counted once, via the finish side of its left block
    int genus_two = 0, other = 0;
    for (const auto& b : blocks) {
      int gj = detail::finish_hole(b).genus;
      if (gj == 2)
        ++genus_two;
      else if (gj != 1)
        ++other;
    }
    if (other == 0 && genus_two == 0) return parity_of(g - 1);
    if (other == 0 && genus_two == 1) return parity_of(g);
  }
  return Parity::Unknown;
}

/// A hyperelliptic surface carries at most two homologous closed saddle
/// connections, one per block.
inline bool hyperelliptic_admissibility_guard(const Configuration& c) { return c.size() <= 2; }

enum class FeasibilityVerdict { Feasible, FeasibleWithOneGenusTwoPiece, Infeasible };

inline std::string_view to_string(FeasibilityVerdict v) {
  switch (v) {
    case FeasibilityVerdict::Feasible: return "feasible";
    case FeasibilityVerdict::FeasibleWithOneGenusTwoPiece: return "feasible_with_one_genus_two_piece";
    case FeasibilityVerdict::Infeasible: return "infeasible";
  }
  return "?";
}

struct FeasibilityResult {
  FeasibilityVerdict verdict;
  std::optional<Configuration> witness;
};

/// Can the component carry a configuration whose complementary regions are
/// only tori with boundary and cylinders? Genus >= 5.
inline FeasibilityResult simple_complement_feasibility(const Stratum& s, ComponentLabel label) {
  const int g = s.genus();
  if (g < 5)
    throw UnsupportedGenus("simple complement feasibility is stated for genus >= 5, " + s.to_string() + " has genus " +
                           std::to_string(g));
  auto labels = classify_components(s);
  if (label == ComponentLabel::Connected) {
    if (labels.size() != 1) throw InvalidComponent(s.to_string() + " is not connected");
    label = *labels.begin();
  }
  if (!labels.contains(label))
    throw InvalidComponent(s.to_string() + " has no component '" + std::string(to_string(label)) + "'");

  switch (label) {
    case ComponentLabel::Hyperelliptic:
      return {FeasibilityVerdict::Infeasible, std::nullopt};
    case ComponentLabel::NonHyperelliptic:
      return {FeasibilityVerdict::Feasible, paired_type_two_witness(s)};
    case ComponentLabel::OddSpin:
      return {FeasibilityVerdict::Feasible, all_type_one_witness(s)};
    case ComponentLabel::EvenSpin:
      if (g % 2 == 1) return {FeasibilityVerdict::Feasible, all_type_three_witness(s)};
      return {FeasibilityVerdict::FeasibleWithOneGenusTwoPiece, all_type_three_witness(s, true)};
    case ComponentLabel::Connected:
      break;
  }
  throw InvalidComponent("unhandled component label");
}

}  // namespace sv
