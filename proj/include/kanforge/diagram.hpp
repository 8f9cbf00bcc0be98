#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanforge/fincat.hpp"
#include "kanforge/poset.hpp"

namespace kanforge {

// A functor from a finite poset into a finite category. Entries may be
// kNone while the diagram is partial.
class Diagram {
 public:
  Diagram() = default;
  Diagram(PosetPtr shape, CategoryPtr target);

  const PosetPtr& shape() const { return shape_; }
  const CategoryPtr& target() const { return target_; }
  int size() const { return shape_->size(); }

  ObjId at(int x) const { return obj_[x]; }
  MorId arrow(int x, int y) const { return arr_[idx(x, y)]; }
  void set_object(int x, ObjId o) { obj_[x] = o; }
  void set_arrow(int x, int y, MorId f) { arr_[idx(x, y)] = f; }

  bool object_defined(int x) const { return obj_[x] != kNone; }
  // True when every object and every arrow between related elements is set.
  bool complete() const;

  // First functoriality failure among the defined data, if any. Checks
  // typing, identities on x<=x and all composites x<=y<=z.
  std::optional<std::string> violation() const;

  // Fills every arrow x<y from arrows on covering pairs (which must be set)
  // and reports a violation if two paths disagree.
  std::optional<std::string> close_from_covers();

  // Pullback along a monotone map g: other -> shape.
  Diagram restrict_along(const PosetPtr& other, const std::vector<int>& g) const;

  bool operator==(const Diagram& o) const;

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(x) * shape_->size() + y;
  }

  PosetPtr shape_;
  CategoryPtr target_;
  std::vector<ObjId> obj_;
  std::vector<MorId> arr_;
};

std::string describe_element(const Diagram& d, int x);

}  // namespace kanforge
