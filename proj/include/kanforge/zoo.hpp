#pragma once

#include <string>
#include <vector>

#include "kanforge/fincat.hpp"
#include "kanforge/poset.hpp"

namespace kanforge::zoo {

// One object "*", morphisms "1" and "a" with a∘a = a.
FinCategory idempotent_monoid();

// Skeleton of finite sets and injections: objects "{}", "{0}", "{0,1}", ...
// Injection {0..a-1} -> {0..b-1} is named "a>b:" followed by its images,
// e.g. "3>3:021" swaps 1 and 2. Guarded to N <= 4.
FinCategory fi_skeleton(int max_size, bool include_empty = true);

FinCategory parallel_pair();
FinCategory boolean_lattice(int n);
FinPoset boolean_lattice_poset(int n);
FinCategory chain_poset(int n);
FinCategory cyclic_group(int n);
FinCategory walking_iso();
FinCategory discrete(int n);

// Element 0 is the unit; table[i * order + j] = i·j, i.e. "i after j".
FinCategory monoid_from_table(int order, const std::vector<int>& table, std::string name);

// Up to isomorphism, in canonical order (by size, then canonical code).
std::vector<FinCategory> enumerate_monoids(int max_order);
std::vector<FinCategory> enumerate_posets(int max_size);

// Named builders used by the CLI: idempotent, fi, parallel_pair,
// boolean_lattice, chain, cyclic, walking_iso, discrete.
FinCategory by_name(const std::string& name, int param);
std::vector<std::string> names();

}  // namespace kanforge::zoo
