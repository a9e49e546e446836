#pragma once

// Strata H(d_1,...,d_m) of Abelian differentials, their principal boundary
// strata, and the Kontsevich-Zorich component classification for g >= 4.

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sv/errors.hpp"
#include "sv/rational.hpp"

namespace sv {

enum class ComponentLabel { Hyperelliptic, EvenSpin, OddSpin, NonHyperelliptic, Connected };

inline std::string_view to_string(ComponentLabel label) {
  switch (label) {
    case ComponentLabel::Hyperelliptic: return "hyp";
    case ComponentLabel::EvenSpin: return "even";
    case ComponentLabel::OddSpin: return "odd";
    case ComponentLabel::NonHyperelliptic: return "nonhyp";
    case ComponentLabel::Connected: return "connected";
  }
  return "?";
}

inline ComponentLabel parse_component_label(std::string_view text) {
  if (text == "hyp" || text == "hyperelliptic") return ComponentLabel::Hyperelliptic;
  if (text == "even") return ComponentLabel::EvenSpin;
  if (text == "odd") return ComponentLabel::OddSpin;
  if (text == "nonhyp") return ComponentLabel::NonHyperelliptic;
  if (text == "connected") return ComponentLabel::Connected;
  throw ParseError("unknown component label '" + std::string(text) + "'");
}

/// A stratum H(alpha) with every zero order >= 1. Orders are kept sorted in
/// descending order so equal strata compare equal.
class Stratum {
 public:
  static Stratum from_orders(std::vector<int> orders) {
    if (orders.empty()) throw InvalidOrders("a stratum needs at least one zero");
    long sum = 0;
    for (int d : orders) {
      if (d <= 0) throw InvalidOrders("zero orders must be positive, got " + std::to_string(d));
      sum += d;
    }
    if (sum % 2 != 0) throw InvalidOrders("total order " + std::to_string(sum) + " is odd");
    std::sort(orders.begin(), orders.end(), std::greater<>());
    return Stratum(std::move(orders), static_cast<int>(sum / 2 + 1));
  }

  const std::vector<int>& orders() const { return orders_; }
  int genus() const { return genus_; }
  int num_zeros() const { return static_cast<int>(orders_.size()); }
  int dim_complex() const { return 2 * genus_ + num_zeros() - 1; }

  bool all_even() const {
    return std::all_of(orders_.begin(), orders_.end(), [](int d) { return d % 2 == 0; });
  }

  std::string to_string() const {
    std::string s = "H(";
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(orders_[i]);
    }
    return s + ")";
  }

  auto operator<=>(const Stratum&) const = default;

 private:
  Stratum(std::vector<int> orders, int genus) : orders_(std::move(orders)), genus_(genus) {}

  std::vector<int> orders_;
  int genus_;
};

/// Accepts "H(2,2,2)" or the bare list "2,2,2"; blanks are ignored.
inline Stratum parse_stratum(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  std::string_view body = s;
  if (!body.empty() && (body.front() == 'H' || body.front() == 'h')) {
    if (body.size() < 3 || body[1] != '(' || body.back() != ')')
      throw ParseError("expected H(d1,...,dm), got '" + std::string(text) + "'");
    body = body.substr(2, body.size() - 3);
  }
  if (body.empty()) throw ParseError("empty stratum '" + std::string(text) + "'");
  std::vector<int> orders;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string_view tok = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
    std::string_view digits = tok;
    bool negative = false;
    if (!digits.empty() && digits.front() == '-') {
      negative = true;
      digits.remove_prefix(1);
    }
    if (!detail::all_digits(digits) || digits.size() > 9)
      throw ParseError("bad zero order '" + std::string(tok) + "' in '" + std::string(text) + "'");
    int d = std::stoi(std::string(digits));
    orders.push_back(negative ? -d : d);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Stratum::from_orders(std::move(orders));
}

inline int dim_complex(const Stratum& s) { return s.dim_complex(); }

/// Connected components for genus >= 4. Smaller genus is left to external
/// tables and reported as UnsupportedGenus.
inline std::set<ComponentLabel> classify_components(const Stratum& s) {
  const int g = s.genus();
  if (g < 4)
    throw UnsupportedGenus("component classification is implemented for genus >= 4 only, " + s.to_string() +
                           " has genus " + std::to_string(g));
  std::set<ComponentLabel> labels;
  const auto& o = s.orders();
  bool hyp = (o.size() == 1 && o[0] == 2 * g - 2) || (o.size() == 2 && o[0] == g - 1 && o[1] == g - 1);
  if (hyp) labels.insert(ComponentLabel::Hyperelliptic);
  if (s.all_even()) {
    labels.insert(ComponentLabel::EvenSpin);
    labels.insert(ComponentLabel::OddSpin);
  } else {
    labels.insert(ComponentLabel::NonHyperelliptic);
  }
  return labels;
}

/// One connected piece of a principal boundary stratum. Orders may contain
/// zeros (marked regular points left behind by contracted saddle connections).
struct BoundaryComponent {
  std::vector<int> orders;
  int genus = 1;

  int dim_complex() const { return 2 * genus + static_cast<int>(orders.size()) - 1; }
  auto operator<=>(const BoundaryComponent&) const = default;
};

/// Possibly disconnected stratum H(alpha'_1) x ... x H(alpha'_k).
class BoundaryStratum {
 public:
  static BoundaryStratum from_components(std::vector<BoundaryComponent> comps) {
    if (comps.empty()) throw InvalidOrders("boundary stratum needs at least one component");
    for (auto& c : comps) {
      if (c.genus < 1) throw InvalidOrders("boundary component genus must be >= 1");
      if (c.orders.empty()) throw InvalidOrders("boundary component needs a marked point");
      long sum = 0;
      for (int d : c.orders) {
        if (d < 0) throw InvalidOrders("negative order in boundary component");
        sum += d;
      }
      if (sum != 2L * c.genus - 2)
        throw InvalidOrders("boundary component orders sum to " + std::to_string(sum) + ", expected " +
                            std::to_string(2 * c.genus - 2));
      std::sort(c.orders.begin(), c.orders.end(), std::greater<>());
    }
    std::sort(comps.begin(), comps.end(), std::greater<>());
    return BoundaryStratum(std::move(comps));
  }

  const std::vector<BoundaryComponent>& components() const { return components_; }

  int n() const {
    int total = 0;
    for (const auto& c : components_) total += c.dim_complex();
    return total;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (i) s += " x ";
      s += "H(";
      for (std::size_t j = 0; j < components_[i].orders.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(components_[i].orders[j]);
      }
      s += ")";
    }
    return s;
  }

  auto operator<=>(const BoundaryStratum&) const = default;

 private:
  explicit BoundaryStratum(std::vector<BoundaryComponent> comps) : components_(std::move(comps)) {}
  std::vector<BoundaryComponent> components_;
};

}  // namespace sv
