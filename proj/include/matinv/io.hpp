#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include "miner.hpp"
#include "session.hpp"

namespace matinv {

// Run parameters echoed verbatim into every output header.
struct RunConfig {
  int n = 4;
  int max_degree = 13;
  std::uint64_t seed = 0;
  int trials = 10;
  OrderKind order = OrderKind::PaperCustom;
  int jobs = 1;
  long bound = 10;

  std::string config_line() const {
    std::ostringstream os;
    os << "# config n=" << n << " max_degree=" << max_degree << " seed=" << seed
       << " trials=" << trials << " order="
       << (order == OrderKind::PaperCustom ? "paper-custom" : "grevlex") << " jobs=" << jobs
       << " bound=" << bound;
    return os.str();
  }
};

// ---- expression table: `# expr-table v1 n=<n>` then `<necklace> = <poly>` ----

inline void write_expression_table(std::ostream& os, const Session& session,
                                   const RunConfig& cfg) {
  os << "# expr-table v1 n=" << session.n() << "\n";
  os << cfg.config_line() << "\n";
  auto snapshot = session.table().snapshot();
  // ascending total degree, then the deg-lex descending enumeration order
  std::vector<const std::pair<const Necklace, GenPoly>*> entries;
  for (const auto& e : snapshot) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) {
    return compare_deglex(b->first, a->first) < 0;  // ascending degree, descending deg-lex
  });
  for (auto* e : entries) {
    if (e->first.degree() < 2) continue;
    os << render(e->first) << " = " << render(session.ring(), e->second, cfg.order) << "\n";
  }
}

inline std::map<Necklace, GenPoly, DegLexLess> read_expression_table(std::istream& is,
                                                                     const GenRing& ring) {
  std::map<Necklace, GenPoly, DegLexLess> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# expr-table v1", 0) == 0) header_seen = true;
      continue;
    }
    auto eq = line.find(" = ");
    if (eq == std::string::npos) throw std::invalid_argument("bad table line: " + line);
    Necklace v = parse_necklace(line.substr(0, eq));
    out.emplace(v, parse_genpoly(ring, line.substr(eq + 3)));
  }
  if (!header_seen) throw std::invalid_argument("missing expr-table header");
  return out;
}

// ---- relation files: `# relations v1 n=<n> max_degree=<D> seed=<s>` then
// `(<r>,<s>): <poly>`; image files add `target=<name>` to the header ----

inline void write_relations(std::ostream& os, const GenRing& ring,
                            const std::vector<Relation>& relations, const RunConfig& cfg,
                            const std::string& target = "") {
  os << "# relations v1 n=" << cfg.n << " max_degree=" << cfg.max_degree << " seed=" << cfg.seed;
  if (!target.empty()) os << " target=" << target;
  os << "\n" << cfg.config_line() << "\n";
  for (const auto& rel : relations) {
    os << "(" << rel.bidegree.r << "," << rel.bidegree.s
       << "): " << render(ring, rel.poly, cfg.order) << "\n";
  }
}

inline std::vector<Relation> read_relations(std::istream& is, const GenRing& ring) {
  std::vector<Relation> out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# relations v1", 0) == 0) header_seen = true;
      continue;
    }
    auto close = line.find("): ");
    if (line[0] != '(' || close == std::string::npos)
      throw std::invalid_argument("bad relation line: " + line);
    auto comma = line.find(',');
    Relation rel;
    rel.bidegree.r = std::stoi(line.substr(1, comma - 1));
    rel.bidegree.s = std::stoi(line.substr(comma + 1, close - comma - 1));
    rel.poly = parse_genpoly(ring, line.substr(close + 3));
    out.push_back(std::move(rel));
  }
  if (!header_seen) throw std::invalid_argument("missing relations header");
  return out;
}

}  // namespace matinv
