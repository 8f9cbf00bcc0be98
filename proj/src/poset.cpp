#include "kanforge/poset.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace kanforge {

FinPoset FinPoset::from_leq(std::vector<std::string> names, const std::function<bool(int, int)>& leq) {
  FinPoset p;
  const int n = static_cast<int>(names.size());
  p.names_ = std::move(names);
  p.words_ = (static_cast<std::size_t>(n) + 63) / 64;
  p.rows_.assign(static_cast<std::size_t>(n) * p.words_, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (leq(x, y)) p.rows_[static_cast<std::size_t>(x) * p.words_ + (y >> 6)] |= std::uint64_t{1} << (y & 63);
  for (int x = 0; x < n; ++x) {
    if (!p.leq(x, x)) throw InputError("order is not reflexive at " + p.names_[x]);
    for (int y = x + 1; y < n; ++y)
      if (p.leq(x, y) && p.leq(y, x))
        throw InputError("order is not antisymmetric on " + p.names_[x] + ", " + p.names_[y]);
  }
  for (int x = 0; x < n; ++x) {
    const std::uint64_t* rx = &p.rows_[static_cast<std::size_t>(x) * p.words_];
    for (int y = 0; y < n; ++y) {
      if (!p.leq(x, y)) continue;
      const std::uint64_t* ry = &p.rows_[static_cast<std::size_t>(y) * p.words_];
      for (std::size_t w = 0; w < p.words_; ++w)
        if (ry[w] & ~rx[w]) throw InputError("order is not transitive through " + p.names_[y]);
    }
  }
  p.finish();
  return p;
}

FinPoset FinPoset::from_relations(std::vector<std::string> names, const std::vector<std::pair<int, int>>& rel) {
  const int n = static_cast<int>(names.size());
  std::vector<std::vector<int>> up(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : rel) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw InputError("relation refers to an unknown element");
    if (a == b) continue;
    up[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> order;
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push(x);
  while (!ready.empty()) {
    int x = ready.top();
    ready.pop();
    order.push_back(x);
    for (int y : up[x])
      if (--indeg[y] == 0) ready.push(y);
  }
  if (static_cast<int>(order.size()) != n) throw InputError("relations contain a cycle");
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * words, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int x = *it;
    std::uint64_t* rx = &rows[static_cast<std::size_t>(x) * words];
    rx[x >> 6] |= std::uint64_t{1} << (x & 63);
    for (int y : up[x]) {
      const std::uint64_t* ry = &rows[static_cast<std::size_t>(y) * words];
      for (std::size_t w = 0; w < words; ++w) rx[w] |= ry[w];
    }
  }
  FinPoset p;
  p.names_ = std::move(names);
  p.words_ = words;
  p.rows_ = std::move(rows);
  p.finish();
  return p;
}

void FinPoset::finish() {
  const int n = size();
  below_.assign(n, {});
  above_.assign(n, {});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && leq(x, y)) {
        above_[x].push_back(y);
        below_[y].push_back(x);
      }
  std::vector<int> indeg(n);
  for (int x = 0; x < n; ++x) indeg[x] = static_cast<int>(below_[x].size());
  // Kahn on the full order is enough here: an element becomes available
  // once everything strictly below it has been placed.
  linear_.clear();
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push(x);
  while (!ready.empty()) {
    int x = ready.top();
    ready.pop();
    linear_.push_back(x);
    for (int y : above_[x])
      if (--indeg[y] == 0) ready.push(y);
  }
  rank_.assign(n, 0);
  for (int i = 0; i < n; ++i) rank_[linear_[i]] = i;
  lower_covers_.assign(n, {});
  upper_covers_.assign(n, {});
  for (int x = 0; x < n; ++x) {
    std::vector<int> ups = above_[x];
    std::sort(ups.begin(), ups.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
    std::vector<int> found;
    for (int y : ups) {
      bool cover = true;
      for (int c : found)
        if (leq(c, y)) {
          cover = false;
          break;
        }
      if (cover) found.push_back(y);
    }
    std::sort(found.begin(), found.end());
    upper_covers_[x] = found;
    for (int y : found) lower_covers_[y].push_back(x);
  }
  index_.clear();
  for (int x = 0; x < n; ++x)
    if (!index_.emplace(names_[x], x).second) throw InputError("duplicate element name " + names_[x]);
}

std::optional<int> FinPoset::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<int, int>> FinPoset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < size(); ++x)
    for (int y : upper_covers_[x]) out.emplace_back(x, y);
  return out;
}

std::vector<int> FinPoset::minimal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (below_[x].empty()) out.push_back(x);
  return out;
}

std::vector<int> FinPoset::maximal_elements() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (above_[x].empty()) out.push_back(x);
  return out;
}

std::size_t FinPoset::num_related_pairs() const {
  std::size_t n = 0;
  for (int x = 0; x < size(); ++x) n += above_[x].size() + 1;
  return n;
}

FinPoset FinPoset::full_subposet(const std::vector<int>& elements) const {
  std::vector<std::string> names;
  names.reserve(elements.size());
  for (int x : elements) names.push_back(names_[x]);
  return from_leq(std::move(names), [&](int a, int b) { return leq(elements[a], elements[b]); });
}

FinPoset FinPoset::opposite() const {
  return from_leq(names_, [&](int a, int b) { return leq(b, a); });
}

FinCategory poset_as_category(const FinPoset& p, std::string name) {
  RawCategory r;
  r.name = std::move(name);
  const int n = p.size();
  for (int x = 0; x < n; ++x) r.objects.push_back(p.name(x));
  std::vector<MorId> id(static_cast<std::size_t>(n) * n, kNone);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p.leq(x, y)) {
        id[static_cast<std::size_t>(x) * n + y] = static_cast<MorId>(r.morphisms.size());
        r.morphisms.push_back({x == y ? "id_" + p.name(x) : p.name(x) + "->" + p.name(y), x, y});
      }
  for (int x = 0; x < n; ++x) r.identity.push_back(id[static_cast<std::size_t>(x) * n + x]);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!p.leq(x, y)) continue;
      for (int z = 0; z < n; ++z)
        if (p.leq(y, z))
          r.compose.push_back({id[static_cast<std::size_t>(x) * n + y], id[static_cast<std::size_t>(y) * n + z],
                               id[static_cast<std::size_t>(x) * n + z]});
    }
  return FinCategory::from_raw(std::move(r));
}

std::optional<FinPoset> category_as_poset(const FinCategory& c) {
  const auto n = static_cast<ObjId>(c.num_objects());
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      if (c.hom(x, y).size() > 1) return std::nullopt;
      if (x != y && !c.hom(x, y).empty() && !c.hom(y, x).empty()) return std::nullopt;
    }
  std::vector<std::string> names;
  for (ObjId x = 0; x < n; ++x) names.push_back(c.object_name(x));
  return FinPoset::from_leq(std::move(names), [&](int a, int b) { return !c.hom(a, b).empty(); });
}

bool is_monotone(const FinPoset& a, const FinPoset& b, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.size()) return false;
  for (int x = 0; x < a.size(); ++x) {
    if (map[x] < 0 || map[x] >= b.size()) return false;
    for (int y : a.upper_covers(x))
      if (!b.leq(map[x], map[y])) return false;
  }
  return true;
}

bool is_order_embedding(const FinPoset& a, const FinPoset& b, const std::vector<int>& map) {
  if (!is_monotone(a, b, map)) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      if (x != y && map[x] == map[y]) return false;
      if (b.leq(map[x], map[y]) != a.leq(x, y)) return false;
    }
  return true;
}

std::string poset_to_dot(const FinPoset& p, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << graph_name << "\" {\n  rankdir=BT;\n";
  for (int x = 0; x < p.size(); ++x) os << "  \"" << p.name(x) << "\";\n";
  for (auto [x, y] : p.covers()) os << "  \"" << p.name(x) << "\" -> \"" << p.name(y) << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace kanforge
