#include "dynanet/enrichment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dynanet/error.hpp"
#include "dynanet/parallel.hpp"
#include "dynanet/text.hpp"

namespace dynanet {

namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

void check_config(std::uint64_t e, std::uint64_t a, std::uint64_t g, std::uint64_t o) {
  if (a > e || g > e || o > std::min(a, g)) {
    throw UsageError("invalid hypergeometric configuration: E=" + std::to_string(e) + " A=" + std::to_string(a) +
                     " G=" + std::to_string(g) + " O=" + std::to_string(o));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

double log_hypergeom_tail(std::uint64_t e, std::uint64_t a, std::uint64_t g, std::uint64_t o) {
  check_config(e, a, g, o);
  if (o == 0) return 0.0;
  // Terms with g - i > e - a vanish.
  const auto lo = std::max<std::uint64_t>(o, g > e - a ? g - (e - a) : 0);
  const auto hi = std::min(a, g);
  if (lo > hi) return -INFINITY;
  const double denom = log_choose(e, g);
  std::vector<double> logs;
  logs.reserve(hi - lo + 1);
  for (auto i = lo; i <= hi; ++i) logs.push_back(log_choose(a, i) + log_choose(e - a, g - i) - denom);
  const double peak = *std::max_element(logs.begin(), logs.end());
  // Kahan summation of the rescaled terms.
  double sum = 0.0, carry = 0.0;
  for (const auto l : logs) {
    const double y = std::exp(l - peak) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return std::min(0.0, peak + std::log(sum));
}

double hypergeom_tail(std::uint64_t e, std::uint64_t a, std::uint64_t g, std::uint64_t o) {
  return std::exp(log_hypergeom_tail(e, a, g, o));
}

GeneSet make_gene_set(std::string name, std::vector<NodeId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {std::move(name), std::move(members)};
}

GeneSet load_gene_set(const std::filesystem::path& path, std::string name) {
  const auto content = read_file(path);
  std::vector<NodeId> members;
  std::istringstream in(content);
  for (std::string line; std::getline(in, line);) {
    if (text::is_comment_or_blank(line)) continue;
    const auto fields = text::split_fields(text::trim(line));
    if (fields.empty() || fields.front().empty()) continue;
    members.emplace_back(fields.front());
  }
  return make_gene_set(std::move(name), std::move(members));
}

GeneSet restrict_to(const GeneSet& set, const std::vector<NodeId>& universe, std::size_t* dropped) {
  GeneSet out{set.name, {}};
  std::set_intersection(set.members.begin(), set.members.end(), universe.begin(), universe.end(),
                        std::back_inserter(out.members));
  if (dropped) *dropped = set.members.size() - out.members.size();
  return out;
}

GeneSet complement(const GeneSet& set, const std::vector<NodeId>& universe) {
  GeneSet out{set.name + "_complement", {}};
  std::set_difference(universe.begin(), universe.end(), set.members.begin(), set.members.end(),
                      std::back_inserter(out.members));
  return out;
}

OverlapResult gene_overlap_test(const GeneSet& a, const GeneSet& g, std::size_t universe_size) {
  OverlapResult out;
  out.a = a.name;
  out.g = g.name;
  out.size_a = a.members.size();
  out.size_g = g.members.size();
  std::vector<NodeId> both;
  std::set_intersection(a.members.begin(), a.members.end(), g.members.begin(), g.members.end(),
                        std::back_inserter(both));
  out.overlap = both.size();
  const auto smaller = std::min(out.size_a, out.size_g);
  if (smaller == 0) return out;
  out.percentage = 100.0 * static_cast<double>(out.overlap) / static_cast<double>(smaller);
  out.p = hypergeom_tail(universe_size, out.size_a, out.size_g, out.overlap);
  return out;
}

RawAnnotations parse_annotations(std::string_view content, const std::set<std::string>& evidence,
                                 const std::string& source) {
  RawAnnotations raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const auto end = std::min(content.find('\n', pos), content.size());
    const auto line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (text::is_comment_or_blank(line)) {
      if (end == content.size()) break;
      continue;
    }
    const auto fields = text::split_fields(text::trim(line));
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(source, line_no, "expected gene, term and optional evidence code, got " +
                                            std::to_string(fields.size()) + " columns");
    }
    const auto gene = text::trim(fields[0]);
    const auto term = text::trim(fields[1]);
    if (gene.empty() || term.empty()) throw ParseError(source, line_no, "empty gene or term");
    if (fields.size() == 3 && !evidence.empty() && !evidence.contains(std::string(text::trim(fields[2])))) {
      ++raw.rows_filtered;
    } else {
      raw.terms[std::string(term)].insert(std::string(gene));
    }
    if (end == content.size()) break;
  }
  return raw;
}

RawAnnotations load_annotations(const std::filesystem::path& path, const std::set<std::string>& evidence) {
  return parse_annotations(read_file(path), evidence, path.string());
}

std::vector<std::string> AnnotationCatalog::term_ids() const {
  std::vector<std::string> ids;
  ids.reserve(terms.size());
  for (const auto& [id, _] : terms) ids.push_back(id);
  return ids;
}

AnnotationCatalog make_catalog(std::string kind, const RawAnnotations& raw, const std::vector<NodeId>& universe,
                               std::size_t min_genes) {
  AnnotationCatalog catalog;
  catalog.kind = std::move(kind);
  std::set<NodeId> annotated;
  for (const auto& [term, genes] : raw.terms) {
    std::vector<NodeId> members;
    std::set_intersection(genes.begin(), genes.end(), universe.begin(), universe.end(), std::back_inserter(members));
    if (members.size() < min_genes) continue;
    annotated.insert(members.begin(), members.end());
    catalog.terms.emplace(term, std::move(members));
  }
  catalog.annotated.assign(annotated.begin(), annotated.end());
  return catalog;
}

std::vector<EnrichmentResult> term_enrichment(const GeneSet& set, const AnnotationCatalog& catalog, double alpha,
                                              unsigned threads) {
  const auto a = restrict_to(set, catalog.annotated);
  std::vector<const std::pair<const std::string, std::vector<NodeId>>*> terms;
  for (const auto& entry : catalog.terms) terms.push_back(&entry);
  std::vector<EnrichmentResult> out(terms.size());
  parallel_for(terms.size(), threads, [&](std::size_t i) {
    const auto& [term, members] = *terms[i];
    std::vector<NodeId> both;
    std::set_intersection(a.members.begin(), a.members.end(), members.begin(), members.end(),
                          std::back_inserter(both));
    auto& r = out[i];
    r.term = term;
    r.term_size = members.size();
    r.overlap = both.size();
    r.p = hypergeom_tail(catalog.annotated.size(), a.members.size(), members.size(), both.size());
    r.significant = r.p <= alpha;
  });
  return out;
}

std::vector<std::string> significant_terms(const std::vector<EnrichmentResult>& results) {
  std::vector<std::string> out;
  for (const auto& r : results) {
    if (r.significant) out.push_back(r.term);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double term_overlap_test(const std::vector<std::string>& terms_a, const std::vector<std::string>& terms_g,
                         std::size_t term_universe_size) {
  std::set<std::string> a(terms_a.begin(), terms_a.end());
  std::set<std::string> g(terms_g.begin(), terms_g.end());
  std::size_t overlap = 0;
  for (const auto& t : a) overlap += g.contains(t) ? 1 : 0;
  return hypergeom_tail(term_universe_size, a.size(), g.size(), overlap);
}

}  // namespace dynanet
