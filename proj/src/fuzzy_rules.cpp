#include "germen/fuzzy_rules.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

#include "germen/error.hpp"

namespace germen {

FuzzyContext::FuzzyContext(std::vector<std::string> objects, std::vector<std::string> variables,
                           std::vector<double> values)
    : objects_(std::move(objects)), variables_(std::move(variables)), values_(std::move(values)) {
  if (values_.size() != objects_.size() * variables_.size()) {
    throw InputError("fuzzy context: value count does not match objects x variables");
  }
  if (std::set<std::string>(variables_.begin(), variables_.end()).size() != variables_.size()) {
    throw InputError("fuzzy context: duplicate variable label");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("fuzzy context: value outside [0, 1]");
  }
}

std::size_t FuzzyContext::variable_index(std::string_view label) const {
  const auto it = std::find(variables_.begin(), variables_.end(), label);
  if (it == variables_.end()) throw InputError("unknown variable '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

double fuse(std::span<const double> values) {
  if (values.empty()) throw InputError("fuse: empty value list");
  return *std::min_element(values.begin(), values.end());
}

double support(const FuzzyContext& ctx, const ItemIds& items) {
  if (items.empty()) throw InputError("support: empty itemset");
  for (auto i : items)
    if (i >= ctx.n_variables()) throw InputError("support: variable index out of range");
  double total = 0.0;
  std::vector<double> row(items.size());
  for (std::size_t o = 0; o < ctx.n_objects(); ++o) {
    for (std::size_t j = 0; j < items.size(); ++j) row[j] = ctx.value(o, items[j]);
    total += fuse(row);
  }
  return total;
}

double support(const FuzzyContext& ctx, const std::vector<std::string>& labels) {
  ItemIds items;
  for (const auto& l : labels) items.push_back(ctx.variable_index(l));
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return support(ctx, items);
}

namespace {

ItemIds without(const ItemIds& x, std::size_t skip_a, std::size_t skip_b = SIZE_MAX) {
  ItemIds out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != skip_a && i != skip_b) out.push_back(x[i]);
  return out;
}

double lookup(const SupportTable& supports, const ItemIds& items, double n) {
  if (items.empty()) return n;
  const auto it = supports.find(items);
  if (it == supports.end()) throw InputError("frechet_bounds: missing subset support");
  return it->second;
}

}  // namespace

Bounds frechet_bounds(const ItemIds& x, const SupportTable& supports, double n) {
  if (x.size() < 2) throw InputError("frechet_bounds: itemset needs at least two items");
  std::vector<double> drop1(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) drop1[i] = lookup(supports, without(x, i), n);

  Bounds b;
  b.hi = *std::min_element(drop1.begin(), drop1.end());
  b.lo = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double both = lookup(supports, without(x, i, j), n);
      b.lo = std::max(b.lo, drop1[i] + drop1[j] - both);
    }
  }
  // Fuzzy supports are rounded sums: an interval the subsets pin exactly can
  // come out a few ulps wide (or inverted). Snap those to a point.
  if (b.hi - b.lo <= 1e-9 * std::max(1.0, n)) b.lo = b.hi;
  return b;
}

double midova_from(double supp, Bounds bounds) {
  if (bounds.hi == bounds.lo) return 0.0;
  return supp - (bounds.lo + bounds.hi) / 2.0;
}

double midova(const FuzzyContext& ctx, const ItemIds& x) {
  if (x.size() < 2) throw InputError("midova: itemset needs at least two items");
  SupportTable table;
  // Every subset of size |x|-1 and |x|-2 (the empty set is implicit).
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto s1 = without(x, i);
    table[s1] = support(ctx, s1);
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const auto s2 = without(x, i, j);
      if (!s2.empty()) table[s2] = support(ctx, s2);
    }
  }
  const auto bounds = frechet_bounds(x, table, static_cast<double>(ctx.n_objects()));
  return midova_from(support(ctx, x), bounds);
}

std::vector<Itemset> levelwise_extract(const FuzzyContext& ctx, const ExtractOptions& opts) {
  if (opts.max_level < 1) throw InputError("levelwise_extract: max_level must be at least 1");
  if (opts.min_support < 0.0 || opts.min_midova < 0.0) {
    throw InputError("levelwise_extract: thresholds must be non-negative");
  }
  const double n = static_cast<double>(ctx.n_objects());
  SupportTable table;
  std::vector<Itemset> out;

  std::vector<ItemIds> level;
  for (std::size_t v = 0; v < ctx.n_variables(); ++v) {
    ItemIds items{v};
    const double s = support(ctx, items);
    if (s < opts.min_support) continue;
    table[items] = s;
    level.push_back(items);
    out.push_back({items, s, {s, s}, 0.0});
  }

  for (std::size_t k = 2; k <= opts.max_level && level.size() >= 2; ++k) {
    std::set<ItemIds> survivors(level.begin(), level.end());
    std::vector<ItemIds> next;
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        const auto& x = level[a];
        const auto& y = level[b];
        if (!std::equal(x.begin(), x.end() - 1, y.begin())) continue;
        ItemIds cand = x;
        cand.push_back(y.back());
        std::sort(cand.begin(), cand.end());

        bool all_subsets = true;
        for (std::size_t i = 0; i < cand.size() && all_subsets; ++i)
          all_subsets = survivors.contains(without(cand, i));
        if (!all_subsets) continue;

        const double s = support(ctx, cand);
        if (s < opts.min_support) continue;
        const auto bounds = frechet_bounds(cand, table, n);
        if (!(bounds.hi > bounds.lo)) continue;
        const double m = midova_from(s, bounds);
        if (!(m > opts.min_midova)) continue;
        next.push_back(cand);
        out.push_back({cand, s, bounds, m});
      }
    }
    std::sort(next.begin(), next.end());
    for (const auto& c : next) table[c] = support(ctx, c);
    level = std::move(next);
  }

  std::sort(out.begin(), out.end(), [](const Itemset& a, const Itemset& b) {
    if (a.midova != b.midova) return a.midova > b.midova;
    if (a.support != b.support) return a.support > b.support;
    return a.items < b.items;
  });
  return out;
}

std::vector<Rule> derive_rules(std::span<const Itemset> itemsets, double min_confidence,
                               std::vector<std::string>* skipped) {
  SupportTable table;
  for (const auto& it : itemsets) table[it.items] = it.support;

  std::vector<Rule> rules;
  for (const auto& it : itemsets) {
    const auto k = it.items.size();
    if (k < 2) continue;
    // Every non-empty proper subset as premise.
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
      Rule r;
      for (std::size_t i = 0; i < k; ++i)
        ((mask >> i) & 1 ? r.premise : r.conclusion).push_back(it.items[i]);
      const auto found = table.find(r.premise);
      if (found == table.end()) throw InputError("derive_rules: missing premise support");
      if (found->second == 0.0) {
        if (skipped) skipped->push_back("premise with zero support; confidence undefined");
        continue;
      }
      r.support = it.support;
      r.confidence = it.support / found->second;
      r.midova = it.midova;
      if (r.confidence >= min_confidence) rules.push_back(std::move(r));
    }
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.midova != b.midova) return a.midova > b.midova;
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.premise != b.premise) return a.premise < b.premise;
    return a.conclusion < b.conclusion;
  });
  return rules;
}

namespace {

std::string join(std::span<const std::string> labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += '+';
    s += labels[i];
  }
  return s;
}

}  // namespace

std::string format_rule(std::size_t number, std::span<const std::string> premise,
                        std::span<const std::string> conclusion, double supp, double mid,
                        double confidence) {
  char nums[160];
  std::snprintf(nums, sizeof nums, " ; support : %.2f, MIDOVA : %.2f, confidence : %.2f", supp,
                mid, confidence);
  return "Rule(" + std::to_string(number) + ") " + join(premise) + "->" + join(conclusion) + nums;
}

std::vector<std::string> labels_of(const FuzzyContext& ctx, const ItemIds& items) {
  std::vector<std::string> out;
  for (auto i : items) out.push_back(ctx.variables().at(i));
  return out;
}

}  // namespace germen
