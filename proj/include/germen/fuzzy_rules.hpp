#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace germen {

/// Objects x variables matrix with values in [0, 1]. A crisp context holds
/// only 0 and 1.
class FuzzyContext {
 public:
  /// `values` is row-major, one row per object. Throws InputError on a shape
  /// mismatch, duplicate variable labels, or a value outside [0, 1].
  FuzzyContext(std::vector<std::string> objects, std::vector<std::string> variables,
               std::vector<double> values);

  std::size_t n_objects() const { return objects_.size(); }
  std::size_t n_variables() const { return variables_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& variables() const { return variables_; }
  double value(std::size_t object, std::size_t variable) const {
    return values_[object * variables_.size() + variable];
  }
  /// Throws InputError for an unknown label.
  std::size_t variable_index(std::string_view label) const;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> variables_;
  std::vector<double> values_;
};

/// Sorted, duplicate-free variable indices.
using ItemIds = std::vector<std::size_t>;

/// The fusion operator (min t-norm). Equals logical AND on {0, 1}.
/// Throws InputError on an empty list.
double fuse(std::span<const double> values);

/// Sum over objects of the fused values of `items`.
double support(const FuzzyContext& ctx, const ItemIds& items);
double support(const FuzzyContext& ctx, const std::vector<std::string>& labels);

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Supports of already-evaluated itemsets. The empty itemset is implicit
/// and has support n.
using SupportTable = std::map<ItemIds, double>;

/// Feasible support interval of `x` (|x| >= 2) given the supports of its
/// (k-1)- and (k-2)-subsets. An interval narrower than 1e-9 * max(1, n) is
/// treated as rounding noise and collapsed to lo == hi. Throws InputError if
/// a subset support is missing.
Bounds frechet_bounds(const ItemIds& x, const SupportTable& supports, double n);

/// Signed interaction index: support minus the midpoint of its Frechet
/// interval. Positive means attraction, negative repulsion, and exactly 0
/// when the subsets pin the support (lo == hi).
double midova_from(double support, Bounds bounds);
double midova(const FuzzyContext& ctx, const ItemIds& x);

struct Itemset {
  ItemIds items;
  double support = 0.0;
  Bounds bounds;
  double midova = 0.0;  // 0 by convention for single items
};

struct ExtractOptions {
  std::size_t max_level = 5;
  double min_support = 2.0;
  double min_midova = 0.0;  // survivors need midova strictly above this
};

/// Apriori-style levelwise search. Level 1 keeps variables with enough
/// support. A level-k candidate joins two level-(k-1) survivors sharing
/// their first k-2 items and needs every (k-1)-subset to have survived; it
/// survives when supp >= min_support, midova > min_midova and hi > lo.
/// Output: midova desc, support desc, then items.
std::vector<Itemset> levelwise_extract(const FuzzyContext& ctx, const ExtractOptions& opts = {});

struct Rule {
  ItemIds premise;
  ItemIds conclusion;
  double support = 0.0;
  double confidence = 0.0;
  double midova = 0.0;
};

/// Splits each itemset of size >= 2 into every (A, B) pair of non-empty
/// complementary subsets and keeps A -> B when confidence >= min_confidence.
/// Subset supports come from `itemsets` itself. Splits with supp(A) = 0 are
/// skipped and described in `skipped` when given.
std::vector<Rule> derive_rules(std::span<const Itemset> itemsets, double min_confidence = 0.5,
                               std::vector<std::string>* skipped = nullptr);

/// `Rule(<n>) <A>-><B> ; support : <s>, MIDOVA : <m>, confidence : <c>`,
/// labels joined with '+', numbers with two decimals.
std::string format_rule(std::size_t number, std::span<const std::string> premise,
                        std::span<const std::string> conclusion, double support, double midova,
                        double confidence);

std::vector<std::string> labels_of(const FuzzyContext& ctx, const ItemIds& items);

}  // namespace germen
