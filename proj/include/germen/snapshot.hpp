#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "germen/engine.hpp"

namespace germen {

enum class ClusterKind { kernel, curd, outlier };

std::string_view to_string(ClusterKind kind);

struct Cluster {
  NodeIndex head = 0;
  std::vector<NodeIndex> members;  // sorted by id; includes the head
  ClusterKind kind = ClusterKind::outlier;
};

struct ClusterSnapshot {
  std::string period;
  std::vector<Cluster> clusters;    // sorted by head id
  std::vector<std::size_t> n_arity;  // indexed by NodeIndex

  const Cluster* find(NodeIndex head) const;
};

/// Inverts the heads map. Outlier: a single-member cluster. Curd: two members
/// with no 1-neighbourhood link leaving the pair. Kernel: everything else.
ClusterSnapshot extract_clusters(const Engine& engine, std::string period);

/// arity -> number of documents with that many clusterheads.
std::map<std::size_t, std::size_t> narity_histogram(const ClusterSnapshot& snapshot);

/// Share of documents (percent) in kernels, curds, outliers (all N-arity 1)
/// and of polysemic documents (N-arity > 1). Sums to 100 when non-empty.
struct Distribution {
  double kernels = 0.0;
  double curds = 0.0;
  double outliers = 0.0;
  double polysemic = 0.0;
};
Distribution document_distribution(const Engine& engine, const ClusterSnapshot& snapshot);

struct Participation {
  TermIndex term;
  double raw;      // sum over intra-cluster links of x_u[t] * x_w[t]
  double percent;  // 100 * raw / mean raw over active keywords
};

/// Keyword contributions to the links joining two members of `cluster`.
/// Each linked pair counts once whatever the edge direction. Sorted by
/// percent descending, then term. Empty when the cluster has no internal link.
std::vector<Participation> keyword_participation(const Engine& engine, const Cluster& cluster);

/// Keywords x classes, values in [0, 1]. Columns are stored sparsely.
struct TypicalityMatrix {
  std::size_t n_rows = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<SparseEntry>> values;  // per column, increasing term
  std::vector<bool> empty;                       // class has no internal link

  std::size_t column_index(std::string_view label) const;  // throws InputError
  double value(TermIndex row, std::size_t column) const;
  double column_sum(std::size_t column) const;

  /// Appends the columns of `other` (same row count required).
  void append(const TypicalityMatrix& other);
};

/// typ(t, c) = raw participation of t in c divided by the column maximum.
/// Column labels are `label_prefix + head id`.
TypicalityMatrix typicality_matrix(const Engine& engine, const ClusterSnapshot& snapshot,
                                   std::size_t n_terms, std::string_view label_prefix);

}  // namespace germen
