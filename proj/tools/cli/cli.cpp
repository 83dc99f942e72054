#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "dynanet/aging.hpp"
#include "dynanet/centrality.hpp"
#include "dynanet/enrichment.hpp"
#include "dynanet/error.hpp"
#include "dynanet/expression.hpp"
#include "dynanet/global_stats.hpp"
#include "dynanet/graphlets.hpp"
#include "dynanet/models.hpp"
#include "dynanet/network.hpp"
#include "dynanet/parallel.hpp"
#include "dynanet/series.hpp"
#include "dynanet/text.hpp"
#include "io.hpp"
#include "tables.hpp"

#ifndef DYNANET_VERSION
#define DYNANET_VERSION "unknown"
#endif

namespace dynanet::cli {

namespace fs = std::filesystem;

namespace {

struct Context {
  std::vector<std::string> argv;
  std::map<std::string, std::string> effective;
  unsigned threads = 1;
  std::ostream& out;
  std::ostream& err;

  Manifest manifest(const std::string& command) const {
    Manifest m(command, argv);
    m.config(effective);
    return m;
  }
};

std::vector<CentralityKind> parse_kinds(const std::string& value) {
  std::vector<CentralityKind> kinds;
  for (const auto& name : split_list(value)) {
    if (normalise_key(name) == "all") return {kAllCentralities.begin(), kAllCentralities.end()};
    const auto k = parse_centrality(name);
    if (!k) throw UsageError("unknown centrality '" + name + "' (expected DEGC, CLUSC, KC, GDC, BETWC, CLOSEC, ECC or all)");
    if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end()) kinds.push_back(*k);
  }
  if (kinds.empty()) throw UsageError("no centrality kinds given");
  return kinds;
}

std::vector<ModelFamily> parse_families(const std::string& value) {
  std::vector<ModelFamily> families;
  for (const auto& name : split_list(value)) {
    if (normalise_key(name) == "all") return {kAllFamilies.begin(), kAllFamilies.end()};
    const auto f = parse_family(name);
    if (!f) throw UsageError("unknown model family '" + name + "' (expected ER, ERDD, GEO, GEOGD, SF, SFGD or all)");
    if (std::find(families.begin(), families.end(), *f) == families.end()) families.push_back(*f);
  }
  if (families.empty()) throw UsageError("no model families given");
  return families;
}

CorrelationMethod parse_method_or_throw(const std::string& value) {
  const auto m = parse_method(value);
  if (!m) throw UsageError("unknown correlation method '" + value + "' (expected pearson or spearman)");
  return *m;
}

MeanMode parse_mean(const std::string& value) {
  const auto v = normalise_key(value);
  if (v == "arithmetic") return MeanMode::kArithmetic;
  if (v == "geometric") return MeanMode::kGeometric;
  throw UsageError("unknown mean '" + value + "' (expected arithmetic or geometric)");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Every file under a staged directory, sorted, except the manifest itself.
void finish_directory(StagedDir& stage, Manifest& manifest) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(stage.path())) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) manifest.output(f, fs::relative(f, stage.path()).generic_string());
  write_atomic(stage.path() / "manifest.json", manifest.dump());
  stage.commit();
}

fs::path sidecar(const fs::path& out) {
  auto p = out;
  p += ".manifest.json";
  return p;
}

// ---- build ---------------------------------------------------------------

struct BuildArgs {
  fs::path network, expression, out;
  double threshold = kDefaultDetectionThreshold;
  bool strict = false;
};

void run_build(const BuildArgs& a, Context& ctx) {
  auto load = load_edge_list(a.network, !a.strict);
  const auto matrix = load_expression(a.expression);
  UniverseReport report;
  const auto series = build_series(load.network, matrix, a.threshold, ctx.threads, &report);

  StagedDir stage(a.out);
  save_series(series, stage.path());
  auto m = ctx.manifest("build");
  m.input("network", a.network);
  m.input("expression", a.expression);
  auto& s = m.extra();
  s["universe_size"] = report.universe_size;
  s["network_only_genes"] = report.network_only;
  s["expression_only_genes"] = report.expression_only;
  s["self_loops_dropped"] = load.report.self_loops_dropped;
  s["duplicate_edges_dropped"] = load.report.duplicates_dropped;
  s["snapshots"] = series.size();
  finish_directory(stage, m);

  if (report.network_only + report.expression_only > 0) {
    ctx.err << "note: " << report.network_only << " network genes lack expression, "
            << report.expression_only << " expression genes are not in the network\n";
  }
  ctx.out << "built " << series.size() << " snapshots over " << report.universe_size << " genes in "
          << a.out.string() << '\n';
}

// ---- global --------------------------------------------------------------

struct GlobalArgs {
  fs::path series, out, overlap_out;
  bool exclude_low_degree = false;
};

void run_global(const GlobalArgs& a, Context& ctx) {
  const auto series = load_series(a.series);
  GlobalOptions options;
  options.exclude_low_degree = a.exclude_low_degree;
  const auto report = series_report(series, options, ctx.threads);

  OutputBatch batch;
  std::ostringstream table;
  write_global_tsv(report, table);
  batch.add(a.out, table.str());
  if (!a.overlap_out.empty()) {
    std::ostringstream overlap;
    write_overlap_tsv(report, overlap);
    batch.add(a.overlap_out, overlap.str());
  }
  auto m = ctx.manifest("global");
  m.input("series", a.series);
  batch.commit(m, sidecar(a.out));
  ctx.out << "wrote global statistics for " << series.size() << " snapshots to " << a.out.string() << '\n';
}

// ---- fit -----------------------------------------------------------------

struct FitArgs {
  fs::path network, out, summary;
  std::string families = "all";
  std::size_t instances = 10;
  std::uint64_t seed = 42;
  std::string mean = "arithmetic";
  ModelParams params;
};

void run_fit(FitArgs a, Context& ctx) {
  const auto families = parse_families(a.families);
  const auto data = load_edge_list(a.network).network;
  FitOptions options;
  options.instances_per_family = a.instances;
  options.mean_mode = parse_mean(a.mean);
  options.params = a.params;
  options.seed = a.seed;
  options.threads = ctx.threads;
  const auto report = evaluate_fit(data, families, options);

  std::ostringstream scores, summary;
  scores << "family\tinstance\tgdd_agreement\n";
  summary << "family\tinstances\tmean\tsd\tstatus\tbest\n";
  std::size_t failed = 0;
  for (const auto& f : report.families) {
    for (std::size_t i = 0; i < f.scores.size(); ++i) {
      scores << to_string(f.family) << '\t' << i << '\t' << text::format_double(f.scores[i]) << '\n';
    }
    const bool best = report.best_family == f.family;
    summary << to_string(f.family) << '\t' << f.scores.size() << '\t'
            << (f.failed ? "NA" : text::format_double(f.mean)) << '\t'
            << (f.failed ? "NA" : text::format_double(f.sd)) << '\t' << (f.failed ? "failed" : "ok") << '\t'
            << (best ? "yes" : "no") << '\n';
    if (f.failed) {
      ++failed;
      ctx.err << "warning: " << to_string(f.family) << " failed: " << f.error << '\n';
    }
  }
  if (failed == report.families.size()) throw ValidationError("every model family failed to generate");

  if (a.summary.empty()) a.summary = fs::path(a.out).replace_extension(".summary.tsv");
  OutputBatch batch;
  batch.add(a.out, scores.str());
  batch.add(a.summary, summary.str());
  auto m = ctx.manifest("fit");
  m.input("network", a.network);
  m.extra()["seed"] = a.seed;
  if (report.best_family) m.extra()["best_family"] = std::string(to_string(*report.best_family));
  batch.commit(m, sidecar(a.out));
  if (report.best_family) ctx.out << "best fitting family: " << to_string(*report.best_family) << '\n';
}

// ---- graphlets / gdd ------------------------------------------------------

struct GraphletArgs {
  fs::path network, out, gdd_out;
};

void run_graphlets(const GraphletArgs& a, Context& ctx) {
  const auto net = load_edge_list(a.network).network;
  const auto counts = count_orbits(net, ctx.threads);
  std::ostringstream table;
  table << "gene";
  for (std::size_t j = 0; j < graphlets::kOrbitCount; ++j) table << "\to" << j;
  table << '\n';
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    table << net.id(v);
    for (const auto c : counts[v]) table << '\t' << c;
    table << '\n';
  }
  OutputBatch batch;
  batch.add(a.out, table.str());
  if (!a.gdd_out.empty()) {
    const auto gdd = degree_distribution(counts);
    std::ostringstream dist;
    dist << "orbit\tk\tcount\n";
    for (std::size_t j = 0; j < graphlets::kOrbitCount; ++j) {
      for (const auto& [k, c] : gdd.orbits[j]) dist << j << '\t' << k << '\t' << c << '\n';
    }
    batch.add(a.gdd_out, dist.str());
  }
  auto m = ctx.manifest("graphlets");
  m.input("network", a.network);
  batch.commit(m, sidecar(a.out));
  ctx.out << "counted orbits for " << net.node_count() << " nodes\n";
}

struct GddArgs {
  fs::path a, b, out;
  std::string mean = "arithmetic";
};

void run_gdd(const GddArgs& a, Context& ctx) {
  const auto mode = parse_mean(a.mean);
  const auto na = load_edge_list(a.a).network;
  const auto nb = load_edge_list(a.b).network;
  const auto da = degree_distribution(count_orbits(na, ctx.threads));
  const auto db = degree_distribution(count_orbits(nb, ctx.threads));
  const auto agreement = gdd_agreement(da, db, mode);
  if (!a.out.empty()) {
    const auto per_orbit = orbit_agreements(da, db);
    std::ostringstream table;
    table << "orbit\tagreement\n";
    for (std::size_t j = 0; j < per_orbit.size(); ++j) table << j << '\t' << text::format_double(per_orbit[j]) << '\n';
    OutputBatch batch;
    batch.add(a.out, table.str());
    auto m = ctx.manifest("gdd");
    m.input("a", a.a);
    m.input("b", a.b);
    m.extra()["gdd_agreement"] = agreement;
    batch.commit(m, sidecar(a.out));
  }
  ctx.out << "gdd_agreement\t" << text::format_double(agreement) << '\n';
}

// ---- centrality -----------------------------------------------------------

struct CentralityArgs {
  fs::path series, out;
  std::string kinds = "all";
};

void run_centrality(const CentralityArgs& a, Context& ctx) {
  const auto kinds = parse_kinds(a.kinds);
  const auto series = load_series(a.series);
  const auto trajectories = build_trajectories(series, kinds, ctx.threads);
  StagedDir stage(a.out);
  for (const auto k : kinds) {
    std::ostringstream table;
    write_centrality_table(series, k, trajectories, table);
    write_atomic(stage.path() / (std::string(to_string(k)) + ".tsv"), table.str());
  }
  auto m = ctx.manifest("centrality");
  m.input("series", a.series);
  finish_directory(stage, m);
  ctx.out << "wrote " << kinds.size() << " centrality tables for " << series.universe.size() << " genes\n";
}

// ---- predict / control -----------------------------------------------------

struct TestArgs {
  std::string method = "pearson";
  std::size_t n_perm = 1000;
  double p = 0.01;
  std::size_t min_active = 5;
  std::uint64_t seed = 42;
  bool pseudo_count = false;
  double tie_tolerance = 1e-12;
  std::string kinds = "all";

  PredictOptions options(unsigned threads) const {
    PredictOptions o;
    o.method = parse_method_or_throw(method);
    o.permutation.n_perm = n_perm;
    o.permutation.pseudo_count = pseudo_count;
    o.permutation.tie_tolerance = tie_tolerance;
    o.p_threshold = p;
    o.min_active = min_active;
    o.seed = seed;
    o.threads = threads;
    if (n_perm == 0) throw UsageError("--n-perm must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw UsageError("--p must lie in (0, 1]");
    return o;
  }
};

void add_test_options(CLI::App* cmd, TestArgs& t) {
  cmd->add_option("--kinds", t.kinds, "Comma-separated centralities or 'all'");
  cmd->add_option("--method", t.method, "pearson or spearman");
  cmd->add_option("--n-perm", t.n_perm, "Permutations per gene and centrality");
  cmd->add_option("--p", t.p, "Significance threshold (p < value)");
  cmd->add_option("--min-active", t.min_active, "Minimum ages at which a gene must be active");
  cmd->add_option("--seed", t.seed, "Random seed");
  cmd->add_flag("--pseudo-count", t.pseudo_count, "Report (count + 1) / (n_perm + 1)");
  cmd->add_option("--tie-tolerance", t.tie_tolerance, "Shuffled r within this distance counts as a tie");
}

struct PredictArgs {
  fs::path series, centralities, out;
  TestArgs test;
};

void run_predict(const PredictArgs& a, Context& ctx) {
  const auto options = a.test.options(ctx.threads);
  const auto series = load_series(a.series);
  std::vector<CentralityKind> kinds;
  std::vector<Trajectory> trajectories;
  if (a.centralities.empty()) {
    kinds = parse_kinds(a.test.kinds);
    trajectories = build_trajectories(series, kinds, ctx.threads);
  } else {
    const bool all = normalise_key(a.test.kinds) == "all";
    for (const auto k : parse_kinds(a.test.kinds)) {
      const auto path = a.centralities / (std::string(to_string(k)) + ".tsv");
      if (!fs::exists(path)) {
        if (all) continue;
        throw ValidationError("no table for " + std::string(to_string(k)) + " in " + a.centralities.string());
      }
      kinds.push_back(k);
      for (auto& t : read_centrality_table(path, k, series)) trajectories.push_back(std::move(t));
    }
    if (kinds.empty()) throw ValidationError("no centrality tables found in " + a.centralities.string());
  }
  const auto result = predict(trajectories, series.ages, options);

  std::ostringstream table;
  write_predictions(result, table);
  OutputBatch batch;
  batch.add(a.out, table.str());
  auto m = ctx.manifest("predict");
  m.input("series", a.series);
  if (!a.centralities.empty()) m.input("centralities", a.centralities);
  m.extra()["seed"] = a.test.seed;
  m.extra()["genes_evaluated"] = result.evaluated;
  m.extra()["genes_skipped_low_activity"] = result.skipped_low_activity;
  m.extra()["genes_predicted"] = result.predicted.size();
  batch.commit(m, sidecar(a.out));
  ctx.out << result.predicted.size() << " of " << result.evaluated << " genes predicted\n";
}

struct ControlArgs {
  fs::path network, expression, out;
  double threshold = kDefaultDetectionThreshold;
  std::size_t repeats = 100;
  TestArgs test;
};

void run_control(const ControlArgs& a, Context& ctx) {
  ControlOptions options;
  options.predict = a.test.options(ctx.threads);
  options.kinds = parse_kinds(a.test.kinds);
  options.n_repeats = a.repeats;
  options.seed = a.test.seed;
  const auto net = load_edge_list(a.network).network;
  const auto matrix = load_expression(a.expression);
  const auto activity = universe_activity(net, matrix, a.threshold);
  const auto result = randomized_control(net, activity, options);

  const auto opt = [](const std::optional<double>& v) { return v ? text::format_double(*v) : std::string("NA"); };
  std::ostringstream summary, counts;
  summary << "metric\tvalue\n"
          << "n_real\t" << result.n_real << '\n'
          << "repeats\t" << result.counts.size() << '\n'
          << "mean\t" << text::format_double(result.mean) << '\n'
          << "sd\t" << opt(result.sd) << '\n'
          << "z\t" << opt(result.z) << '\n'
          << "empirical_p\t" << text::format_double(result.empirical_p) << '\n';
  counts << "repeat\tn_predicted\n";
  for (std::size_t i = 0; i < result.counts.size(); ++i) counts << i << '\t' << result.counts[i] << '\n';

  StagedDir stage(a.out);
  write_atomic(stage.path() / "summary.tsv", summary.str());
  write_atomic(stage.path() / "counts.tsv", counts.str());
  auto m = ctx.manifest("control");
  m.input("network", a.network);
  m.input("expression", a.expression);
  m.extra()["seed"] = a.test.seed;
  finish_directory(stage, m);
  ctx.out << "real: " << result.n_real << ", randomized mean " << text::format_double(result.mean)
          << ", z " << opt(result.z) << '\n';
}

// ---- validate ---------------------------------------------------------------

struct ValidateArgs {
  fs::path predictions, universe, series, annotations, annotations_do, out;
  std::vector<std::string> ground_truth;
  std::string evidence = "experimental";
  double alpha = 0.05;
  std::size_t min_term_genes = 2;
};

std::set<std::string> parse_evidence(const std::string& value) {
  const auto v = normalise_key(value);
  if (v == "experimental") return experimental_evidence_codes();
  if (v == "any" || v == "all") return {};
  const auto codes = split_list(value);
  return {codes.begin(), codes.end()};
}

struct OverlapRow {
  std::string level;
  std::size_t universe = 0;
  OverlapResult result;
};

std::string pct(const std::optional<double>& v, const char* missing) {
  return v ? text::format_double(*v) : std::string(missing);
}

void run_validate(const ValidateArgs& a, Context& ctx) {
  if (a.universe.empty() == a.series.empty()) throw UsageError("give exactly one of --universe or --series");
  if (a.ground_truth.empty()) throw UsageError("at least one --ground-truth name=file is required");
  if (!(a.alpha > 0.0 && a.alpha <= 1.0)) throw UsageError("--alpha must lie in (0, 1]");

  const auto universe = a.series.empty() ? load_gene_set(a.universe, "universe").members : load_series(a.series).universe;
  if (universe.empty()) throw ValidationError("the gene universe is empty");

  auto m = ctx.manifest("validate");
  m.input("predictions", a.predictions);
  m.input(a.series.empty() ? "universe" : "series", a.series.empty() ? a.universe : a.series);

  std::size_t dropped = 0;
  const auto predicted = restrict_to(make_gene_set("predicted", read_prediction_genes(a.predictions)), universe, &dropped);
  if (dropped) ctx.err << "warning: " << dropped << " predicted genes are outside the universe and were ignored\n";
  m.extra()["universe_size"] = universe.size();
  m.extra()["predicted"] = predicted.members.size();
  const auto comp = complement(predicted, universe);
  const std::vector<const GeneSet*> queries{&predicted, &comp};

  std::vector<GeneSet> references;
  std::set<std::string> names;
  for (const auto& spec : a.ground_truth) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--ground-truth expects name=file, got '" + spec + "'");
    }
    const auto name = spec.substr(0, eq);
    const fs::path file = spec.substr(eq + 1);
    if (!fs::is_regular_file(file)) throw UsageError("--ground-truth " + name + ": file does not exist: " + file.string());
    if (!names.insert(name).second) throw UsageError("ground-truth set '" + name + "' given twice");
    m.input("ground_truth:" + name, file);
    references.push_back(restrict_to(load_gene_set(file, name), universe, &dropped));
    m.extra()["ground_truth"][name] = {{"members_in_universe", references.back().members.size()},
                                       {"members_dropped", dropped}};
    if (dropped) ctx.err << "note: " << dropped << " genes of " << name << " are outside the universe\n";
  }

  std::vector<OverlapRow> rows;
  for (const auto* q : queries) {
    for (const auto& r : references) rows.push_back({"genes", universe.size(), gene_overlap_test(*q, r, universe.size())});
  }

  StagedDir stage(a.out);
  std::vector<std::string> levels{"genes"};
  const auto evidence = parse_evidence(a.evidence);
  const auto term_level = [&](const std::string& level, const fs::path& file) {
    const auto raw = load_annotations(file, evidence);
    m.input("annotations:" + level, file);
    const auto catalog = make_catalog(level, raw, universe, a.min_term_genes);
    m.extra()["annotations"][level] = {{"terms", catalog.terms.size()},
                                       {"annotated_genes", catalog.annotated.size()},
                                       {"rows_filtered", raw.rows_filtered}};
    levels.push_back(level);

    std::map<std::string, GeneSet> enriched;
    const auto enrich = [&](const GeneSet& set) {
      const auto results = term_enrichment(set, catalog, a.alpha, ctx.threads);
      const auto in_catalog = restrict_to(set, catalog.annotated).members.size();
      std::ostringstream table;
      table << "term\tuniverse\tterm_size\tset_size\toverlap\tp_value\tsignificant\n";
      for (const auto& e : results) {
        table << e.term << '\t' << catalog.annotated.size() << '\t' << e.term_size << '\t' << in_catalog << '\t'
              << e.overlap << '\t' << text::format_double(e.p) << '\t' << (e.significant ? "yes" : "no") << '\n';
      }
      write_atomic(stage.path() / ("enrichment_" + level + "_" + set.name + ".tsv"), table.str());
      enriched.emplace(set.name, make_gene_set(set.name, significant_terms(results)));
      m.extra()["annotations"][level]["enriched"][set.name] = enriched.at(set.name).members.size();
    };
    for (const auto* q : queries) enrich(*q);
    for (const auto& r : references) enrich(r);

    const auto n_terms = catalog.terms.size();
    for (const auto* q : queries) {
      for (const auto& r : references) {
        rows.push_back({level, n_terms, gene_overlap_test(enriched.at(q->name), enriched.at(r.name), n_terms)});
      }
    }
    rows.push_back({level, n_terms, gene_overlap_test(enriched.at(predicted.name), enriched.at(comp.name), n_terms)});
  };
  if (!a.annotations.empty()) term_level("GO", a.annotations);
  if (!a.annotations_do.empty()) term_level("DO", a.annotations_do);

  std::ostringstream overlap;
  overlap << "level\tquery\treference\tuniverse\tquery_size\treference_size\toverlap\toverlap_pct\tp_value\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    overlap << row.level << '\t' << r.a << '\t' << r.g << '\t' << row.universe << '\t' << r.size_a << '\t'
            << r.size_g << '\t' << r.overlap << '\t' << pct(r.percentage, "NA") << '\t' << text::format_double(r.p)
            << '\n';
  }
  write_atomic(stage.path() / "overlap.tsv", overlap.str());

  // Summary view: one column per reference set, overlap and p per level for
  // the predicted genes.
  std::ostringstream table;
  table << "level\tmetric";
  for (const auto& r : references) table << '\t' << r.name;
  table << '\n';
  for (const auto& level : levels) {
    const auto find = [&](const std::string& ref) -> const OverlapResult& {
      for (const auto& row : rows) {
        if (row.level == level && row.result.a == predicted.name && row.result.g == ref) return row.result;
      }
      throw std::logic_error("missing overlap row");
    };
    table << level << "\toverlap_pct";
    for (const auto& r : references) table << '\t' << pct(find(r.name).percentage, "N/A");
    table << '\n' << level << "\tp_value";
    for (const auto& r : references) {
      const auto& res = find(r.name);
      table << '\t' << (res.percentage ? text::format_double(res.p) : std::string("N/A"));
    }
    table << '\n';
  }
  write_atomic(stage.path() / "summary.tsv", table.str());

  finish_directory(stage, m);
  ctx.out << "validated " << predicted.members.size() << " predicted genes against " << references.size()
          << " reference sets\n";
}

// Applies key=value settings to options the command line left unset.
void apply_config(const std::map<std::string, std::string>& config, const std::vector<CLI::Option*>& options,
                  std::ostream& err) {
  std::map<std::string, CLI::Option*> by_key;
  for (auto* opt : options) by_key[normalise_key(opt->get_single_name())] = opt;
  for (const auto& [key, value] : config) {
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      err << "note: config key '" << key << "' is not used by this command\n";
      continue;
    }
    auto* opt = it->second;
    if (opt->count() > 0) continue;
    if (opt->get_expected_max() > 1) {
      for (const auto& v : split_list(value)) opt->add_result(v);
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

std::map<std::string, std::string> effective_config(const std::vector<CLI::Option*>& options) {
  std::map<std::string, std::string> out;
  for (auto* opt : options) {
    auto key = normalise_key(opt->get_single_name());
    if (opt->get_expected_max() == 0) {
      out[key] = opt->as<bool>() ? "true" : "false";
    } else if (opt->count() > 0) {
      out[key] = join(opt->results(), ",");
    } else {
      out[key] = opt->get_default_str();
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Age-resolved interaction network analysis", "dynanet"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_version_flag("--version", DYNANET_VERSION);

  unsigned threads = 0;
  fs::path config_path;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--config", config_path, "key=value file; command-line flags take precedence")
      ->check(CLI::ExistingFile);

  std::map<CLI::App*, std::function<void(Context&)>> handlers;
  std::map<CLI::App*, std::vector<std::string>> required;

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Build per-age snapshots from a network and expression calls");
  c_build->add_option("--network", build.network, "Edge list")->check(CLI::ExistingFile);
  c_build->add_option("--expression", build.expression, "Detection p-value matrix")->check(CLI::ExistingFile);
  c_build->add_option("--detection-threshold", build.threshold, "A gene is active when p < threshold");
  c_build->add_option("--out", build.out, "Output directory");
  c_build->add_flag("--strict", build.strict, "Reject duplicate edges instead of dropping them");
  handlers[c_build] = [&](Context& ctx) { run_build(build, ctx); };
  required[c_build] = {"network", "expression", "out"};

  GlobalArgs global;
  auto* c_global = app.add_subcommand("global", "Global statistics of every snapshot");
  c_global->add_option("--series", global.series, "Snapshot directory")->check(CLI::ExistingDirectory);
  c_global->add_option("--out", global.out, "Output TSV");
  c_global->add_option("--overlap-out", global.overlap_out, "Optional pairwise node/edge overlap TSV");
  c_global->add_flag("--exclude-low-degree", global.exclude_low_degree,
                     "Leave degree < 2 nodes out of the clustering mean");
  handlers[c_global] = [&](Context& ctx) { run_global(global, ctx); };
  required[c_global] = {"series", "out"};

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "GDD-agreement of random model families with a network");
  c_fit->add_option("--network", fit.network, "Edge list")->check(CLI::ExistingFile);
  c_fit->add_option("--families", fit.families, "Comma-separated families or 'all'");
  c_fit->add_option("--instances", fit.instances, "Instances per family")->check(CLI::PositiveNumber);
  c_fit->add_option("--seed", fit.seed, "Random seed");
  c_fit->add_option("--mean", fit.mean, "arithmetic or geometric");
  c_fit->add_option("--geogd-r0", fit.params.geogd_r0, "GEOGD child displacement scale");
  c_fit->add_option("--sfgd-p", fit.params.sfgd_p, "SFGD retention probability (default: calibrated)");
  c_fit->add_option("--sfgd-q", fit.params.sfgd_q, "SFGD parent-link probability");
  c_fit->add_option("--sfgd-seed-nodes", fit.params.sfgd_seed_nodes, "SFGD seed clique size");
  c_fit->add_option("--erdd-swap-factor", fit.params.erdd_swap_factor, "ERDD swap attempts per edge");
  c_fit->add_option("--edge-tolerance", fit.params.edge_tolerance, "Relative edge-count tolerance");
  c_fit->add_option("--out", fit.out, "Per-instance TSV");
  c_fit->add_option("--summary", fit.summary, "Per-family TSV (default: <out>.summary.tsv)");
  handlers[c_fit] = [&](Context& ctx) { run_fit(fit, ctx); };
  required[c_fit] = {"network", "out"};

  GraphletArgs graphlet;
  auto* c_graphlets = app.add_subcommand("graphlets", "Per-node orbit counts");
  c_graphlets->add_option("--network", graphlet.network, "Edge list")->check(CLI::ExistingFile);
  c_graphlets->add_option("--out", graphlet.out, "Orbit TSV (one row per node, 73 columns)");
  c_graphlets->add_option("--gdd-out", graphlet.gdd_out, "Optional graphlet degree distribution TSV");
  handlers[c_graphlets] = [&](Context& ctx) { run_graphlets(graphlet, ctx); };
  required[c_graphlets] = {"network", "out"};

  GddArgs gdd;
  auto* c_gdd = app.add_subcommand("gdd", "GDD-agreement between two networks");
  c_gdd->add_option("--a", gdd.a, "First edge list")->check(CLI::ExistingFile);
  c_gdd->add_option("--b", gdd.b, "Second edge list")->check(CLI::ExistingFile);
  c_gdd->add_option("--mean", gdd.mean, "arithmetic or geometric");
  c_gdd->add_option("--out", gdd.out, "Optional per-orbit agreement TSV");
  handlers[c_gdd] = [&](Context& ctx) { run_gdd(gdd, ctx); };
  required[c_gdd] = {"a", "b"};

  CentralityArgs cent;
  auto* c_cent = app.add_subcommand("centrality", "Per-gene centrality tables across ages");
  c_cent->add_option("--series", cent.series, "Snapshot directory")->check(CLI::ExistingDirectory);
  c_cent->add_option("--kinds", cent.kinds, "Comma-separated centralities or 'all'");
  c_cent->add_option("--out", cent.out, "Output directory");
  handlers[c_cent] = [&](Context& ctx) { run_centrality(cent, ctx); };
  required[c_cent] = {"series", "out"};

  PredictArgs pred;
  auto* c_pred = app.add_subcommand("predict", "Genes whose centrality changes with age");
  c_pred->add_option("--series", pred.series, "Snapshot directory")->check(CLI::ExistingDirectory);
  c_pred->add_option("--centralities", pred.centralities, "Tables from 'centrality' (default: computed)")
      ->check(CLI::ExistingDirectory);
  c_pred->add_option("--out", pred.out, "Predictions TSV");
  add_test_options(c_pred, pred.test);
  handlers[c_pred] = [&](Context& ctx) { run_predict(pred, ctx); };
  required[c_pred] = {"series", "out"};

  ControlArgs control;
  auto* c_control = app.add_subcommand("control", "Prediction counts on randomized expression");
  c_control->add_option("--network", control.network, "Edge list")->check(CLI::ExistingFile);
  c_control->add_option("--expression", control.expression, "Detection p-value matrix")->check(CLI::ExistingFile);
  c_control->add_option("--detection-threshold", control.threshold, "A gene is active when p < threshold");
  c_control->add_option("--repeats", control.repeats, "Randomized repeats");
  c_control->add_option("--out", control.out, "Output directory");
  add_test_options(c_control, control.test);
  handlers[c_control] = [&](Context& ctx) { run_control(control, ctx); };
  required[c_control] = {"network", "expression", "out"};

  ValidateArgs val;
  auto* c_val = app.add_subcommand("validate", "Overlap and enrichment of predictions against references");
  c_val->add_option("--predictions", val.predictions, "Predictions TSV")->check(CLI::ExistingFile);
  c_val->add_option("--universe", val.universe, "Gene universe, one id per line")->check(CLI::ExistingFile);
  c_val->add_option("--series", val.series, "Snapshot directory supplying the universe")
      ->check(CLI::ExistingDirectory);
  c_val->add_option("--ground-truth", val.ground_truth, "name=file, repeatable");
  c_val->add_option("--annotations", val.annotations, "GO annotations (gene, term[, evidence])")
      ->check(CLI::ExistingFile);
  c_val->add_option("--annotations-do", val.annotations_do, "Disease annotations (gene, term[, evidence])")
      ->check(CLI::ExistingFile);
  c_val->add_option("--evidence", val.evidence, "'experimental', 'any' or a comma-separated code list");
  c_val->add_option("--alpha", val.alpha, "Enrichment threshold (p <= alpha)");
  c_val->add_option("--min-term-genes", val.min_term_genes, "Drop terms with fewer universe genes");
  c_val->add_option("--out", val.out, "Output directory");
  handlers[c_val] = [&](Context& ctx) { run_validate(val, ctx); };
  required[c_val] = {"predictions", "out"};

  CLI::App* cmd = nullptr;
  std::vector<CLI::Option*> options;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    cmd = app.get_subcommands().front();
    for (auto* opt : app.get_options()) {
      const auto name = opt->get_single_name();
      if (name != "help" && name != "version" && name != "config") options.push_back(opt);
    }
    for (auto* opt : cmd->get_options()) {
      if (opt->get_single_name() != "help") options.push_back(opt);
    }
    if (!config_path.empty()) apply_config(read_config(config_path), options, err);
    for (const auto& name : required[cmd]) {
      if (cmd->get_option("--" + name)->count() == 0) {
        throw CLI::RequiredError("--" + name);
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Context ctx{args, effective_config(options), resolve_threads(threads), out, err};
  try {
    handlers.at(cmd)(ctx);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace dynanet::cli
