#include "germen/state_io.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "germen/error.hpp"

namespace germen {

namespace {

constexpr std::string_view kGraphHeader = "GERMEN-GRAPH v1 K=";
constexpr std::string_view kDocsHeader = "GERMEN-DOCS v1";
constexpr std::string_view kVocabHeader = "GERMEN-VOCAB v1 ";

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InputError("state file: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string node_line(const Engine& engine, NodeIndex v) {
  const auto& g = engine.graph();
  std::string line = g.id(v);
  line += '\t';
  line += fixed9(engine.state(v).density);
  line += '\t';
  const auto& heads = engine.state(v).heads;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    if (i) line += ',';
    line += g.id(heads[i]);
  }
  line += '\t';
  const auto out = g.out_edges(v);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) line += ';';
    line += g.id(out[i].target);
    line += ':';
    line += fixed9(out[i].weight);
  }
  return line;
}

}  // namespace

std::string serialize_graph(const Engine& engine) {
  std::string out(kGraphHeader);
  out += std::to_string(engine.k());
  out += '\n';
  for (NodeIndex v : engine.graph().nodes_by_id()) out += node_line(engine, v) + '\n';
  return out;
}

std::string serialize_state(const Engine& engine, const Vocabulary& vocab,
                            std::span<const StoredDocument> documents) {
  std::string out = serialize_graph(engine);
  out += kDocsHeader;
  out += '\n';
  for (const auto& d : documents) {
    out += d.id + '\t' + d.period + '\t';
    for (std::size_t i = 0; i < d.keywords.size(); ++i) {
      if (i) out += ';';
      out += d.keywords[i];
    }
    out += '\t' + d.title + '\n';
  }
  out += kVocabHeader;
  out += "min_df=" + std::to_string(vocab.min_df()) + " max_df=" + shortest(vocab.max_df()) + '\n';
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    out += vocab.term(t) + '\t' + std::to_string(vocab.doc_freq()[t]) + '\n';
  }
  return out;
}

StateData parse_state(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  auto fail = [&](const std::string& msg) -> InputError {
    return InputError("state file line " + std::to_string(line_no) + ": " + msg);
  };

  if (!next() || !line.starts_with(kGraphHeader)) throw fail("missing GERMEN-GRAPH v1 header");
  const auto k = parse_number<std::size_t>(std::string_view(line).substr(kGraphHeader.size()), "K");
  if (k < 1) throw fail("K must be at least 1");

  std::vector<std::string> graph_lines;
  bool saw_docs = false;
  while (next()) {
    if (line == kDocsHeader) {
      saw_docs = true;
      break;
    }
    graph_lines.push_back(line);
  }
  if (!saw_docs) throw fail("missing GERMEN-DOCS v1 section");

  std::map<std::string, StoredDocument> docs;
  bool saw_vocab = false;
  while (next()) {
    if (line.starts_with(kVocabHeader)) {
      saw_vocab = true;
      break;
    }
    const auto f = split(line, '\t');
    if (f.size() != 4) throw fail("document record needs 4 fields");
    StoredDocument d{f[0], f[1], f[2].empty() ? std::vector<std::string>{} : split(f[2], ';'), f[3]};
    if (!docs.emplace(d.id, d).second) throw fail("duplicate document '" + d.id + "'");
  }
  if (!saw_vocab) throw fail("missing GERMEN-VOCAB v1 section");

  std::size_t min_df = 0;
  double max_df = 0.0;
  {
    const auto params = split(line.substr(kVocabHeader.size()), ' ');
    if (params.size() != 2 || !params[0].starts_with("min_df=") || !params[1].starts_with("max_df=")) {
      throw fail("vocabulary header needs min_df= and max_df=");
    }
    min_df = parse_number<std::size_t>(std::string_view(params[0]).substr(7), "min_df");
    max_df = parse_number<double>(std::string_view(params[1]).substr(7), "max_df");
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> df;
  while (next()) {
    const auto f = split(line, '\t');
    if (f.size() != 2) throw fail("vocabulary record needs 2 fields");
    terms.push_back(f[0]);
    df.push_back(parse_number<std::size_t>(f[1], "document frequency"));
  }

  StateData data{Engine(k), Vocabulary(std::move(terms), std::move(df), min_df, max_df), {}};

  std::vector<std::string> ids;
  std::vector<SparseVector> vectors;
  std::vector<std::vector<std::string>> out_ids;
  std::vector<std::vector<std::string>> head_ids;
  for (const auto& gl : graph_lines) {
    const auto f = split(gl, '\t');
    if (f.size() != 4) throw InputError("state file: graph record needs 4 fields: '" + gl + "'");
    const auto doc = docs.find(f[0]);
    if (doc == docs.end()) throw InputError("state file: node '" + f[0] + "' has no document record");
    Document tmp{doc->second.id, doc->second.period, doc->second.keywords, {}, 0};
    ids.push_back(f[0]);
    vectors.push_back(vectorize(tmp, data.vocabulary));
    head_ids.push_back(split(f[2], ','));
    std::vector<std::string> targets;
    if (!f[3].empty()) {
      for (const auto& e : split(f[3], ';')) {
        const auto colon = e.rfind(':');
        if (colon == std::string::npos) throw InputError("state file: bad edge '" + e + "'");
        targets.push_back(e.substr(0, colon));
      }
    }
    out_ids.push_back(std::move(targets));
  }
  if (ids.size() != docs.size()) throw InputError("state file: document and node counts differ");

  auto graph = SimGraph::from_adjacency(k, ids, std::move(vectors), out_ids);
  std::vector<std::vector<NodeIndex>> heads(graph.size());
  for (NodeIndex v = 0; v < graph.size(); ++v) {
    for (const auto& h : head_ids[v]) heads[v].push_back(graph.index_of(h));
  }
  data.engine = Engine::restore(std::move(graph), std::move(heads));

  // Bit-exact check: the rebuilt state must print the lines we just read.
  std::istringstream again(serialize_graph(data.engine));
  std::string expect;
  std::getline(again, expect);
  for (const auto& gl : graph_lines) {
    std::getline(again, expect);
    if (expect != gl) {
      throw InputError("state file: record disagrees with recomputed state:\n  stored:   " + gl +
                       "\n  computed: " + expect);
    }
  }
  for (auto& [_, d] : docs) data.documents.push_back(std::move(d));
  return data;
}

}  // namespace germen
