#include "kanforge/diagram.hpp"

namespace kanforge {

Diagram::Diagram(PosetPtr shape, CategoryPtr target)
    : shape_(std::move(shape)),
      target_(std::move(target)),
      obj_(shape_->size(), kNone),
      arr_(static_cast<std::size_t>(shape_->size()) * shape_->size(), kNone) {}

bool Diagram::complete() const {
  const FinPoset& p = *shape_;
  for (int x = 0; x < p.size(); ++x) {
    if (obj_[x] == kNone || arrow(x, x) == kNone) return false;
    for (int y : p.strictly_above(x))
      if (arrow(x, y) == kNone) return false;
  }
  return true;
}

std::string describe_element(const Diagram& d, int x) { return d.shape()->name(x); }

std::optional<std::string> Diagram::violation() const {
  const FinPoset& p = *shape_;
  const FinCategory& c = *target_;
  for (int x = 0; x < p.size(); ++x) {
    if (obj_[x] != kNone && (obj_[x] < 0 || obj_[x] >= static_cast<ObjId>(c.num_objects())))
      return "element " + p.name(x) + " is sent to an unknown object";
    const MorId i = arrow(x, x);
    if (i != kNone && (obj_[x] == kNone || i != c.identity(obj_[x])))
      return "element " + p.name(x) + " is not sent to an identity";
    for (int y : p.strictly_above(x)) {
      const MorId f = arrow(x, y);
      if (f == kNone) continue;
      if (f < 0 || f >= static_cast<MorId>(c.num_morphisms()) || obj_[x] == kNone || obj_[y] == kNone ||
          c.dom(f) != obj_[x] || c.cod(f) != obj_[y])
        return "arrow " + p.name(x) + " -> " + p.name(y) + " is ill-typed";
    }
  }
  const bool full = complete();
  for (int y = 0; y < p.size(); ++y) {
    for (int x : p.strictly_below(y)) {
      const MorId f = arrow(x, y);
      if (f == kNone) continue;
      const auto& ups = full ? p.upper_covers(y) : p.strictly_above(y);
      for (int z : ups) {
        const MorId g = arrow(y, z);
        const MorId h = arrow(x, z);
        if (g == kNone || h == kNone) continue;
        if (c.compose(g, f) != h)
          return "composite " + p.name(x) + " -> " + p.name(y) + " -> " + p.name(z) + " does not commute";
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> Diagram::close_from_covers() {
  const FinPoset& p = *shape_;
  const FinCategory& c = *target_;
  for (int x = 0; x < p.size(); ++x) {
    if (obj_[x] == kNone) return "element " + p.name(x) + " has no object";
    arr_[idx(x, x)] = c.identity(obj_[x]);
  }
  for (auto [x, y] : p.covers()) {
    const MorId f = arrow(x, y);
    if (f == kNone) return "cover " + p.name(x) + " -> " + p.name(y) + " has no arrow";
    if (c.dom(f) != obj_[x] || c.cod(f) != obj_[y])
      return "cover " + p.name(x) + " -> " + p.name(y) + " is ill-typed";
  }
  for (int y : p.linear_extension()) {
    const auto& lows = p.lower_covers(y);
    for (int x : p.strictly_below(y)) {
      MorId value = kNone;
      for (int m : lows) {
        if (!p.leq(x, m)) continue;
        const MorId v = c.compose(arrow(m, y), arrow(x, m));
        if (value == kNone) {
          value = v;
        } else if (value != v) {
          return "paths " + p.name(x) + " -> " + p.name(y) + " disagree";
        }
      }
      const MorId old = arrow(x, y);
      if (old != kNone && old != value)
        return "arrow " + p.name(x) + " -> " + p.name(y) + " contradicts its composite";
      arr_[idx(x, y)] = value;
    }
  }
  return std::nullopt;
}

Diagram Diagram::restrict_along(const PosetPtr& other, const std::vector<int>& g) const {
  Diagram out(other, target_);
  for (int x = 0; x < other->size(); ++x) {
    out.obj_[x] = obj_[g[x]];
    out.arr_[out.idx(x, x)] = arrow(g[x], g[x]);
    for (int y : other->strictly_above(x)) out.arr_[out.idx(x, y)] = arrow(g[x], g[y]);
  }
  return out;
}

bool Diagram::operator==(const Diagram& o) const {
  return shape_ == o.shape_ && target_ == o.target_ && obj_ == o.obj_ && arr_ == o.arr_;
}

}  // namespace kanforge
