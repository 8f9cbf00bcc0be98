#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kanforge/fincat.hpp"
#include "kanforge/poset.hpp"

namespace kanforge {

using Subset = std::uint32_t;
using Chain = std::vector<Subset>;

inline constexpr std::size_t kDefaultSdCap = 20000;

inline Subset full_subset(int n) { return (Subset{1} << (n + 1)) - 1; }
std::string subset_name(Subset s);
std::string chain_name(const Chain& c);
// Canonical element order: by size, then lexicographically on elements.
bool subset_less(Subset a, Subset b);
bool chain_less(const Chain& a, const Chain& b);
// a <= b in the subdivision order: every entry of a is an entry of b.
bool chain_leq(const Chain& a, const Chain& b);

// c Sd^m Delta[n] (k < 0) or c Sd^m Lambda^k[n].
struct SdPoset {
  int n = 0;
  int k = -1;
  int level = 1;
  PosetPtr poset;
  // Levels 1 and 2: the subset chains (single entries at level 1).
  std::vector<Chain> chains;
  // Levels >= 3: chains of elements of `lower`, as sorted index lists.
  std::vector<std::vector<int>> members;
  std::shared_ptr<const SdPoset> lower;
  // Horns only: index of each element in sd_delta(n, level).
  std::vector<int> inclusion;

  int size() const { return poset->size(); }
  bool is_horn() const { return k >= 0; }
  std::optional<int> find(const Chain& c) const;

 private:
  friend SdPoset sd_delta(int, int, std::size_t);
  friend SdPoset sd_horn(int, int, int, std::size_t);
  std::map<Chain, int> index_;
};

SdPoset sd_delta(int n, int m, std::size_t cap = kDefaultSdCap);
SdPoset sd_horn(int n, int k, int m, std::size_t cap = kDefaultSdCap);

// Brute-force count of chains of nonempty subsets of {0..n}; used as an
// independent check of sd_delta(n, 2).
std::size_t count_subset_chains(int n);

// The partial cone K(P): (x,0) at x, (x,1) at |P| + x, apex k at 2|P|.
struct KPoset {
  PosetPtr base;
  PosetPtr poset;
  std::vector<int> zero;
  std::vector<int> one;
  int apex = -1;
};
KPoset k_cone(const PosetPtr& base);

// K on categories: objects (X,0), (X,1), k; morphisms (f,0), (f,1),
// (f,01), k>(X,1) and id_k.
FinCategory k_cone(const FinCategory& d);
Functor k_functor(const Functor& f, CategoryPtr k_source, CategoryPtr k_target);

// K(c Sd^2 Lambda^n[n]) -> c Sd^2 Delta[n]; (v,0) -> v, (v,1) -> v + n, k -> (n).
std::vector<int> p_embedding(int n, const SdPoset& horn, const KPoset& kh, const SdPoset& delta);
// True iff the chain avoids {0..n-1}, i.e. lies in the image P.
bool in_p(int n, const Chain& c);
// The retraction c Sd^2 Delta[n] -> P, as an index map on sd_delta(n, 2).
std::vector<int> retraction(int n, const SdPoset& delta);
// Transposition (i n) applied to every entry; an index map on sd_delta(n, 2).
std::vector<int> horn_automorphism(int n, int i, const SdPoset& delta);

// Index map a -> b induced by a chain transformation; throws if some
// image chain is not an element of b.
std::vector<int> map_chains(const SdPoset& a, const SdPoset& b, const std::function<Chain(const Chain&)>& f);

}  // namespace kanforge
