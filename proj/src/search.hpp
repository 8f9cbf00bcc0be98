#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kanforge/diagram.hpp"

namespace kanforge::detail {

enum class Order { Linear, Connected };

// The data-independent part of a search: processing order and, per
// element, which already-placed neighbours force or constrain its arrows.
// It depends only on the shape and on which entries are preset, so batch
// runs build it once per horn.
struct SearchPlan {
  struct Step {
    int x = -1;
    bool free = false;
    std::vector<int> down;                       // placed elements below x, rank descending
    std::vector<std::vector<int>> down_derivers;  // minimal placed z with down[i] < z < x
    std::vector<int> up;                         // placed elements above x, rank ascending
    std::vector<std::vector<int>> up_derivers;    // maximal placed w with x < w < up[i]
    std::vector<int> max_down;                   // maximal elements of down
  };
  PosetPtr shape;
  std::vector<int> prefix;  // preset elements whose data is complete among themselves
  std::vector<Step> steps;
};

SearchPlan make_plan(const Diagram& pattern, Order order);

struct SearchStats {
  std::uint64_t nodes = 0;
  bool budget_hit = false;
  bool stopped = false;
};

// Runs the backtracking search. visit receives each completed diagram and
// returns false to stop. budget == 0 means unlimited.
SearchStats run_search(const SearchPlan& plan, const Diagram& partial, bool up_to_iso, std::uint64_t budget,
                       const std::function<bool(const Diagram&)>& visit);

}  // namespace kanforge::detail
