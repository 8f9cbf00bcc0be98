#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kanforge/fincat.hpp"

namespace kanforge {

class FinPoset {
 public:
  // leq must be a partial order on 0..names.size()-1; checked.
  static FinPoset from_leq(std::vector<std::string> names,
                           const std::function<bool(int, int)>& leq);
  // Reflexive-transitive closure of the given pairs; must be acyclic.
  static FinPoset from_relations(std::vector<std::string> names,
                                 const std::vector<std::pair<int, int>>& rel);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int x) const { return names_[x]; }
  std::optional<int> find(const std::string& name) const;

  bool leq(int x, int y) const {
    return (rows_[static_cast<std::size_t>(x) * words_ + (y >> 6)] >> (y & 63)) & 1u;
  }
  bool lt(int x, int y) const { return x != y && leq(x, y); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

  const std::vector<int>& lower_covers(int x) const { return lower_covers_[x]; }
  const std::vector<int>& upper_covers(int x) const { return upper_covers_[x]; }
  const std::vector<int>& strictly_below(int x) const { return below_[x]; }
  const std::vector<int>& strictly_above(int x) const { return above_[x]; }
  std::vector<std::pair<int, int>> covers() const;

  // Kahn order, smallest index first among available elements.
  const std::vector<int>& linear_extension() const { return linear_; }
  // Position of each element in linear_extension().
  const std::vector<int>& rank() const { return rank_; }

  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;
  std::size_t num_related_pairs() const;

  FinPoset full_subposet(const std::vector<int>& elements) const;
  FinPoset opposite() const;

 private:
  void finish();

  std::vector<std::string> names_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::vector<int>> lower_covers_, upper_covers_, below_, above_;
  std::vector<int> linear_, rank_;
  std::unordered_map<std::string, int> index_;
};

using PosetPtr = std::shared_ptr<const FinPoset>;

inline PosetPtr share(FinPoset p) {
  return std::make_shared<const FinPoset>(std::move(p));
}

// Morphisms are named "x<=y" (identities "id_x"); object names are the
// element names.
FinCategory poset_as_category(const FinPoset& p, std::string name = "poset");

// Recovers a poset from a thin, skeletal category; nullopt otherwise.
std::optional<FinPoset> category_as_poset(const FinCategory& c);

// True iff map is monotone from a to b.
bool is_monotone(const FinPoset& a, const FinPoset& b, const std::vector<int>& map);
// True iff map is injective, monotone and reflects the order.
bool is_order_embedding(const FinPoset& a, const FinPoset& b, const std::vector<int>& map);

std::string poset_to_dot(const FinPoset& p, const std::string& graph_name);

}  // namespace kanforge
