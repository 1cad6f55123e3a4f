#include "germen/session.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "germen/error.hpp"

namespace germen {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

Session::Session(const ClusterOptions& opts) : opts_(opts), engine_(opts.k) {
  if (opts.min_df < 1) throw InputError("min_df must be at least 1");
  if (!(opts.max_df > 0.0 && opts.max_df <= 1.0)) throw InputError("max_df must lie in (0, 1]");
  vocab_ = Vocabulary({}, {}, opts.min_df, opts.max_df);
}

Session Session::parse(std::istream& in) {
  auto data = parse_state(in);
  Session s(ClusterOptions{data.engine.k(), data.vocabulary.min_df(), data.vocabulary.max_df()});
  s.engine_ = std::move(data.engine);
  s.vocab_ = std::move(data.vocabulary);
  for (auto& d : data.documents) s.docs_.emplace(d.id, std::move(d));
  return s;
}

Session Session::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file '" + path + "'");
  return parse(in);
}

std::string Session::serialize() const {
  std::vector<StoredDocument> docs;
  docs.reserve(docs_.size());
  for (const auto& [_, d] : docs_) docs.push_back(d);
  return serialize_state(engine_, vocab_, docs);
}

void Session::save(const std::string& path) const {
  const auto text = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write state file '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing state file '" + path + "'");
}

std::string Session::period_label() const {
  std::set<std::string> periods;
  for (const auto& [_, d] : docs_) periods.insert(d.period);
  if (periods.empty()) return "(empty)";
  std::string out;
  for (const auto& p : periods) {
    if (!out.empty()) out += '+';
    out += p;
  }
  return out;
}

InsertTrace Session::insert(const Document& doc) {
  auto vec = vectorize(doc, vocab_);
  auto trace = engine_.insert_document(doc.id, std::move(vec));
  docs_.emplace(doc.id, StoredDocument{doc.id, doc.period, retained_keywords(doc, vocab_), doc.title});
  return trace;
}

Session::IngestResult Session::ingest(const ParsedCorpus& corpus,
                                      const std::optional<std::string>& period) {
  IngestResult result;
  result.diagnostics = corpus.diagnostics;

  auto vocab = build_vocabulary(corpus.documents, opts_.min_df, opts_.max_df);
  if (engine_.size() == 0) {
    vocab_ = std::move(vocab);
  } else if (vocab != vocab_) {
    throw InputError(
        "the corpus yields a different vocabulary than the resumed state; cluster every period "
        "from the same union corpus file with the same --min-df/--max-df");
  }

  for (const auto& doc : corpus.documents) {
    if (period && doc.period != *period) continue;
    if (retained_keywords(doc, vocab_).empty()) {
      result.diagnostics.push_back(
          {doc.line, "document '" + doc.id + "' is unusable (no retained keyword); skipped"});
      continue;
    }
    result.trace.push_back(insert(doc));
    ++result.inserted;
  }
  return result;
}

std::string Session::human_label(const Cluster& cluster) const {
  const auto parts = keyword_participation(engine_, cluster);
  std::vector<std::string> words;
  for (std::size_t i = 0; i < parts.size() && words.size() < 3; ++i) {
    words.push_back(vocab_.term(parts[i].term));
  }
  if (words.empty()) {
    const auto& kws = docs_.at(engine_.graph().id(cluster.head)).keywords;
    for (std::size_t i = 0; i < kws.size() && i < 3; ++i) words.push_back(kws[i]);
  }
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += '/';
    out += w;
  }
  return out;
}

std::string Session::stats_report() const {
  const auto& g = engine_.graph();
  const auto snap = extract_clusters(engine_, period_label());
  const auto dist = document_distribution(engine_, snap);

  std::size_t kernels = 0, curds = 0, outliers = 0;
  for (const auto& c : snap.clusters) {
    switch (c.kind) {
      case ClusterKind::kernel: ++kernels; break;
      case ClusterKind::curd: ++curds; break;
      case ClusterKind::outlier: ++outliers; break;
    }
  }

  // internal # = 1-based rank of the id, stable under any insertion order.
  std::vector<std::size_t> rank(g.size());
  {
    const auto order = g.nodes_by_id();
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i + 1;
  }

  std::ostringstream out;
  out << "# Clustering summary\n"
      << "period\t" << snap.period << '\n'
      << "K\t" << engine_.k() << '\n'
      << "documents\t" << engine_.size() << '\n'
      << "clusters\t" << snap.clusters.size() << '\n'
      << "kernels\t" << kernels << '\n'
      << "curds\t" << curds << '\n'
      << "outliers\t" << outliers << '\n'
      << "\n# Document distribution (%)\n"
      << "kernels\t" << fmt("%.1f", dist.kernels) << '\n'
      << "curds\t" << fmt("%.1f", dist.curds) << '\n'
      << "outliers\t" << fmt("%.1f", dist.outliers) << '\n'
      << "N-arity>1\t" << fmt("%.1f", dist.polysemic) << '\n'
      << "\n# N-arity histogram\nN-arity\tdocuments\n";
  for (const auto& [arity, count] : narity_histogram(snap)) out << arity << '\t' << count << '\n';

  std::vector<const Cluster*> listed;
  for (const auto& c : snap.clusters)
    if (c.kind == ClusterKind::kernel) listed.push_back(&c);
  std::sort(listed.begin(), listed.end(), [this](const Cluster* a, const Cluster* b) {
    return engine_.denser(a->head, b->head);
  });

  out << "\n# Kernels\n";
  for (const Cluster* c : listed) {
    out << "\nKernel number (clusterhead) = " << rank[c->head] << ": " << human_label(*c) << "\n\n"
        << "N-arity / internal # / density / external # / Title\n";
    auto members = c->members;
    std::sort(members.begin(), members.end(), [&](NodeIndex a, NodeIndex b) {
      const auto na = snap.n_arity[a], nb = snap.n_arity[b];
      if (na != nb) return na < nb;
      return engine_.denser(a, b);
    });
    std::size_t band = 0;
    for (NodeIndex v : members) {
      if (band != 0 && snap.n_arity[v] != band) out << "!\n!\n";
      band = snap.n_arity[v];
      const auto& doc = docs_.at(g.id(v));
      std::string title = doc.title;
      if (title.empty()) {
        for (const auto& kw : doc.keywords) title += (title.empty() ? "" : "; ") + kw;
      }
      out << '!' << band << '\t' << rank[v] << '\t' << fmt("%.8g", engine_.state(v).density)
          << '\t' << doc.id << '\t' << title << '\n';
    }
    out << "\n% internal links / keyword # / keyword\n";
    for (const auto& p : keyword_participation(engine_, *c)) {
      out << '!' << fmt("%.0f", p.percent) << '\t' << p.term << '\t' << vocab_.term(p.term)
          << "\t!\n";
    }
  }
  return out.str();
}

CompareResult compare_sessions(const Session& before, const Session& after,
                               const CompareOptions& opts) {
  if (before.engine().size() > 0 && after.engine().size() > 0 &&
      before.vocabulary() != after.vocabulary()) {
    throw InputError(
        "the two states were built over different vocabularies; rebuild both from the union "
        "corpus with the same --min-df/--max-df");
  }
  const auto p1 = before.period_label();
  const auto p2 = after.period_label();
  const auto snap1 = extract_clusters(before.engine(), p1);
  const auto snap2 = extract_clusters(after.engine(), p2);
  const auto n_terms = std::max(before.vocabulary().size(), after.vocabulary().size());

  auto typ = typicality_matrix(before.engine(), snap1, n_terms, "A" + p1 + "/");
  const auto typ2 = typicality_matrix(after.engine(), snap2, n_terms, "B" + p2 + "/");
  const std::size_t n1 = typ.columns.size();
  typ.append(typ2);

  CompareResult r;
  ReportContext ctx{p1, p2, {}, opts.min_confidence};
  std::size_t empty1 = 0, empty2 = 0;
  for (std::size_t i = 0; i < typ.columns.size(); ++i) {
    const bool first = i < n1;
    if (typ.empty[i]) {
      ++(first ? empty1 : empty2);
      continue;
    }
    (first ? r.c1 : r.c2).push_back(typ.columns[i]);
    const auto& snap = first ? snap1 : snap2;
    const auto& session = first ? before : after;
    ctx.human_labels[typ.columns[i]] = session.human_label(snap.clusters[first ? i : i - n1]);
  }

  r.pairs = pair_associations(typ, r.c1, r.c2, PairOptions{opts.min_support, opts.min_midova});
  r.events = classify_events(r.pairs, r.c1, r.c2);

  std::ostringstream head;
  head << "# Trend report: " << p1 << " -> " << p2 << '\n'
       << "# C1 classes compared: " << r.c1.size() << " (" << empty1
       << " without internal links)\n"
       << "# C2 classes compared: " << r.c2.size() << " (" << empty2
       << " without internal links)\n"
       << "# retained associations: " << r.pairs.size() << "\n\n";
  r.report = head.str() + render_report(r.events, ctx);
  r.rules = render_rule_dump(r.pairs, opts.min_confidence);
  r.crosstab = render_crosstab(degree_crosstab(r.pairs, r.c1, r.c2));
  return r;
}

}  // namespace germen
