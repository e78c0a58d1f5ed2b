// Small categories and presheaves shared by the unit tests.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "deskcat/fincat.hpp"
#include "deskcat/presheaf.hpp"

namespace testing_support {

using namespace deskcat;

inline CategoryPtr ordinals(std::size_t window) {
  static std::map<std::size_t, CategoryPtr> cache;
  auto& slot = cache[window];
  if (!slot) slot = std::make_shared<const FinCategory>(materialize(ordinal_category(), window));
  return slot;
}

/// One object, morphisms named by elements, composition from a Cayley table.
inline CategoryPtr monoid(const std::vector<std::string>& elements,
                          const std::vector<std::vector<std::size_t>>& table) {
  CategoryData d;
  d.objects = {"*"};
  for (const auto& e : elements) d.morphisms.push_back({e, "*", "*"});
  d.identities["*"] = elements[0];
  for (std::size_t g = 0; g < elements.size(); ++g) {
    for (std::size_t f = 0; f < elements.size(); ++f) d.compose.push_back({elements[g], elements[f], elements[table[g][f]]});
  }
  return std::make_shared<const FinCategory>(validate_category(d));
}

inline CategoryPtr cyclic(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return monoid(names, table);
}

/// {1, a} with a∘a = a.
inline CategoryPtr idempotent_monoid() { return monoid({"1", "a"}, {{0, 1}, {1, 1}}); }

inline CategoryPtr discrete(std::size_t n) {
  CategoryData d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string o = "o" + std::to_string(i);
    d.objects.push_back(o);
    d.morphisms.push_back({"id" + o, o, o});
    d.identities[o] = "id" + o;
    d.compose.push_back({"id" + o, "id" + o, "id" + o});
  }
  return std::make_shared<const FinCategory>(validate_category(d));
}

/// 0 --f--> 1
inline CategoryPtr single_arrow() {
  CategoryData d;
  d.objects = {"0", "1"};
  d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"f", "0", "1"}};
  d.identities = {{"0", "id0"}, {"1", "id1"}};
  d.compose = {{"id0", "id0", "id0"}, {"id1", "id1", "id1"}, {"f", "id0", "f"}, {"id1", "f", "f"}};
  return std::make_shared<const FinCategory>(validate_category(d));
}

/// n objects with exactly one morphism between any two; equivalent to the terminal category.
inline CategoryPtr chaotic(std::size_t n) {
  CategoryData d;
  auto name = [](std::size_t a, std::size_t b) { return "c" + std::to_string(a) + ">" + std::to_string(b); };
  for (std::size_t a = 0; a < n; ++a) d.objects.push_back("c" + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a) {
    d.identities[d.objects[a]] = name(a, a);
    for (std::size_t b = 0; b < n; ++b) {
      d.morphisms.push_back({name(a, b), d.objects[a], d.objects[b]});
      for (std::size_t c = 0; c < n; ++c) d.compose.push_back({name(b, c), name(a, b), name(a, c)});
    }
  }
  return std::make_shared<const FinCategory>(validate_category(d));
}

/// Element names "0".."n-1" at every object; presheaf over the terminal category.
inline PresheafPtr set_of(std::size_t n) { return set_presheaf(n); }

}  // namespace testing_support
