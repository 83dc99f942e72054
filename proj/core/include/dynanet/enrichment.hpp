#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynanet/network.hpp"

namespace dynanet {

// P(overlap >= o) when g items are drawn without replacement from a universe
// of e items of which a are marked. Evaluated in log space; o = 0 gives 1.
// Throws UsageError unless o <= min(a, g) and a, g <= e.
double hypergeom_tail(std::uint64_t e, std::uint64_t a, std::uint64_t g, std::uint64_t o);
// Natural log of the same tail; finite where the tail underflows a double.
double log_hypergeom_tail(std::uint64_t e, std::uint64_t a, std::uint64_t g, std::uint64_t o);

struct GeneSet {
  std::string name;
  std::vector<NodeId> members;  // sorted, unique
};

// One identifier per line; blank and '#' lines ignored.
GeneSet load_gene_set(const std::filesystem::path& path, std::string name);
GeneSet make_gene_set(std::string name, std::vector<NodeId> members);

// Keeps members that are in `universe` (sorted); `dropped` receives the
// number removed.
GeneSet restrict_to(const GeneSet& set, const std::vector<NodeId>& universe, std::size_t* dropped = nullptr);
GeneSet complement(const GeneSet& set, const std::vector<NodeId>& universe);

struct OverlapResult {
  std::string a;
  std::string g;
  std::size_t size_a = 0;
  std::size_t size_g = 0;
  std::size_t overlap = 0;
  std::optional<double> percentage;  // overlap / min(size_a, size_g) * 100
  double p = 1.0;
};

// Both sets must already be subsets of a universe of `universe_size` genes.
OverlapResult gene_overlap_test(const GeneSet& a, const GeneSet& g, std::size_t universe_size);

inline const std::set<std::string>& experimental_evidence_codes() {
  static const std::set<std::string> codes{"EXP", "IDA", "IPI", "IMP", "IGI", "IEP"};
  return codes;
}

struct RawAnnotations {
  std::map<std::string, std::set<NodeId>> terms;
  std::size_t rows_filtered = 0;  // dropped by the evidence filter
};

// Two or three tab/space separated columns: gene, term, optional evidence
// code. With a non-empty `evidence` filter, three-column rows whose code is
// not listed are dropped; two-column rows are always kept.
RawAnnotations load_annotations(const std::filesystem::path& path, const std::set<std::string>& evidence);
RawAnnotations parse_annotations(std::string_view content, const std::set<std::string>& evidence,
                                 const std::string& source = "<memory>");

struct AnnotationCatalog {
  std::string kind;                                  // "GO", "DO", ...
  std::map<std::string, std::vector<NodeId>> terms;  // universe members only, sorted
  std::vector<NodeId> annotated;                     // union of all retained term members

  std::vector<std::string> term_ids() const;
};

// Restricts each term to the universe and keeps terms with at least
// `min_genes` universe members.
AnnotationCatalog make_catalog(std::string kind, const RawAnnotations& raw, const std::vector<NodeId>& universe,
                               std::size_t min_genes = 2);

struct EnrichmentResult {
  std::string term;
  std::size_t term_size = 0;
  std::size_t overlap = 0;
  double p = 1.0;
  bool significant = false;
};

// Universe for the test is catalog.annotated; the set is restricted to it.
std::vector<EnrichmentResult> term_enrichment(const GeneSet& set, const AnnotationCatalog& catalog,
                                              double alpha = 0.05, unsigned threads = 1);

std::vector<std::string> significant_terms(const std::vector<EnrichmentResult>& results);

// Both term sets must be subsets of a term universe of the given size.
double term_overlap_test(const std::vector<std::string>& terms_a, const std::vector<std::string>& terms_g,
                         std::size_t term_universe_size);

}  // namespace dynanet
