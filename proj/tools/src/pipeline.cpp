#include "galt_cli/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Core>
#include <json.hpp>

#include "galt/association.hpp"
#include "galt/ca_galt.hpp"
#include "galt/csv.hpp"
#include "galt/error.hpp"
#include "galt/mfa_galt.hpp"
#include "galt/unicode.hpp"
#include "galt_cli/svg.hpp"

#ifndef GALT_VERSION
#define GALT_VERSION "unknown"
#endif

namespace galt::cli {
namespace {

using Labels = std::vector<std::optional<std::string>>;

std::string lowercase(const std::string& s) {
  std::u32string cps = unicode::decode_utf8(s);
  for (auto& c : cps) c = unicode::to_lower(c);
  return unicode::encode_utf8(cps);
}

Labels column_labels(const RawTable& raw, const std::string& name) {
  const std::size_t c = raw.column(name);
  Labels out;
  for (const auto& row : raw.cells) out.push_back(row[c]);
  return out;
}

std::vector<std::string> axis_names(Eigen::Index s, const std::string& prefix = "dim") {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < s; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

void append_row(std::string& out, std::vector<std::string> head, const Eigen::RowVectorXd& values) {
  for (Eigen::Index i = 0; i < values.size(); ++i) head.push_back(format_number(values(i)));
  out += csv::format_row(head);
}

// The pieces of a factor solution that both modes share.
struct Solution {
  Eigen::VectorXd eigenvalues;
  double inertia_total = 0.0;
  std::vector<std::string> words;
  std::vector<std::string> word_sample;  // owning sample of each word row
  Eigen::MatrixXd word_coords, contributions, cos2;
  std::vector<std::string> variables;
  Eigen::MatrixXd variable_coords, variable_cos2;
};

std::string eigenvalues_csv(const Solution& s) {
  std::string out = csv::format_row({"axis", "eigenvalue", "percent", "cumulative"});
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double pct = 100.0 * s.eigenvalues(i) / s.inertia_total;
    cumulative += pct;
    out += csv::format_row({std::to_string(i + 1), format_number(s.eigenvalues(i)), format_number(pct),
                            format_number(cumulative)});
  }
  return out;
}

std::string word_coords_csv(const Solution& s) {
  const auto S = s.eigenvalues.size();
  std::vector<std::string> header{"word", "sample"};
  for (const auto& n : axis_names(S)) header.push_back(n);
  for (const auto& n : axis_names(S, "ctr_dim")) header.push_back(n);
  for (const auto& n : axis_names(S, "cos2_dim")) header.push_back(n);
  std::string out = csv::format_row(header);
  for (Eigen::Index j = 0; j < s.word_coords.rows(); ++j) {
    Eigen::RowVectorXd row(3 * S);
    row << s.word_coords.row(j), s.contributions.row(j), s.cos2.row(j);
    append_row(out, {s.words[static_cast<std::size_t>(j)], s.word_sample[static_cast<std::size_t>(j)]}, row);
  }
  return out;
}

std::string variable_coords_csv(const Solution& s) {
  const auto S = s.eigenvalues.size();
  std::vector<std::string> header{"variable"};
  for (const auto& n : axis_names(S)) header.push_back(n);
  for (const auto& n : axis_names(S, "cos2_dim")) header.push_back(n);
  std::string out = csv::format_row(header);
  for (Eigen::Index k = 0; k < s.variable_coords.rows(); ++k) {
    Eigen::RowVectorXd row(2 * S);
    row << s.variable_coords.row(k), s.variable_cos2.row(k);
    append_row(out, {s.variables[static_cast<std::size_t>(k)]}, row);
  }
  return out;
}

double plot_y(const Eigen::MatrixXd& m, Eigen::Index r) { return m.cols() > 1 ? m(r, 1) : 0.0; }

std::string axis_title(const Solution& s, Eigen::Index axis) {
  if (axis >= s.eigenvalues.size()) return "Dim " + std::to_string(axis + 1) + " (not extracted)";
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.2f", 100.0 * s.eigenvalues(axis) / s.inertia_total);
  return "Dim " + std::to_string(axis + 1) + " (" + pct + "%)";
}

std::string words_svg(const Solution& s, const std::vector<std::string>& samples) {
  ScatterPlot plot("Words", axis_title(s, 0), axis_title(s, 1));
  plot.set_series_names(samples);
  for (Eigen::Index j = 0; j < s.word_coords.rows(); ++j) {
    const auto sample = std::find(samples.begin(), samples.end(), s.word_sample[static_cast<std::size_t>(j)]);
    plot.add_point(s.word_coords(j, 0), plot_y(s.word_coords, j), s.words[static_cast<std::size_t>(j)],
                   static_cast<int>(sample - samples.begin()));
  }
  return plot.render();
}

struct ContextRow {
  std::string variable, sample;
  std::optional<double> mean, sd;
  AssociationReport report;
};

std::string association_csv(const std::vector<ContextRow>& rows) {
  std::string out = csv::format_row({"variable", "sample", "mean", "sd", "ratio", "p_value", "method", "p_approx", "df",
                                     "n_permutations", "seed", "occurrences"});
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : rows) {
    const bool perm = r.report.method == AssociationMethod::PermutationAnova;
    out += csv::format_row({r.variable, r.sample, opt(r.mean), opt(r.sd), format_number(r.report.ratio),
                            format_number(r.report.p_value), std::string(to_string(r.report.method)),
                            opt(r.report.p_approx), r.report.df ? std::to_string(*r.report.df) : "",
                            perm ? std::to_string(r.report.n_permutations) : "",
                            perm ? std::to_string(r.report.seed) : "", std::to_string(r.report.occurrences)});
  }
  return out;
}

// Unweighted mean and sample standard deviation of the observed scores.
std::pair<std::optional<double>, std::optional<double>> describe(const Eigen::VectorXd& x) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double v : x) {
    if (!std::isnan(v)) sum += v, ++n;
  }
  if (n == 0) return {};
  const double mean = sum / static_cast<double>(n);
  if (n < 2) return {mean, std::nullopt};
  double ss = 0.0;
  for (double v : x) {
    if (!std::isnan(v)) ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

std::vector<ContextRow> associations(const RunConfig& cfg, const ResolvedVariables& vars,
                                     const std::vector<PreparedSample>& samples) {
  std::vector<ContextRow> rows;
  PermutationOptions perm{cfg.n_permutations, cfg.seed, cfg.threads};
  auto add_categorical = [&](const VariableSpec& spec) {
    for (const auto& s : samples) {
      const auto labels = column_labels(s.raw, spec.name);
      rows.push_back({spec.name, s.config.name, std::nullopt, std::nullopt,
                      chi2_association(s.lexical, labels, spec.categories)});
    }
  };
  for (const auto& spec : vars.active) {
    if (spec.kind == VariableKind::Categorical) {
      add_categorical(spec);
      continue;
    }
    for (const auto& s : samples) {
      Eigen::Index col = 0;
      while (s.encoded.columns[static_cast<std::size_t>(col)].name != spec.name) ++col;
      const auto [mean, sd] = describe(s.encoded.values.col(col));
      // The centered table's column is the imputed score minus a constant.
      const Eigen::VectorXd imputed = s.centered.values.col(col);
      const auto occ = build_occurrence_table(s.lexical, std::span<const double>(imputed.data(), imputed.size()));
      auto report = anova_association(occ, perm);
      report.variable = spec.name;
      rows.push_back({spec.name, s.config.name, mean, sd, report});
    }
  }
  for (const auto& spec : vars.supplementary) add_categorical(spec);
  for (auto& r : rows) r.report.variable = r.variable;
  return rows;
}

// Categories of `spec` with at least one retained respondent in the sample.
std::vector<std::string> present_categories(const VariableSpec& spec, const Labels& labels) {
  std::vector<std::string> out;
  for (const auto& c : spec.categories) {
    if (std::any_of(labels.begin(), labels.end(), [&](const auto& l) { return l && *l == c; })) out.push_back(c);
  }
  return out;
}

nlohmann::ordered_json sample_metadata(const PreparedSample& s) {
  nlohmann::ordered_json j;
  j["name"] = s.config.name;
  j["language"] = s.config.language;
  j["responses"] = s.config.responses_entry;
  j["scores"] = s.config.scores_entry;
  j["stopwords"] = s.config.stopwords_entry;
  j["min_count"] = s.config.min_count;
  j["respondents_read"] = s.stats.respondents_read;
  j["respondents_retained"] = s.lexical.respondent_count();
  j["respondents_dropped_empty"] = s.stats.respondents_dropped;
  j["tokens_read"] = s.stats.tokens_read;
  j["vocabulary_read"] = s.stats.vocabulary_read;
  j["stopword_forms_removed"] = s.stats.stopword_forms_removed;
  j["rare_forms_removed"] = s.stats.rare_forms_removed;
  j["words_retained"] = s.stats.words_retained;
  j["occurrences"] = s.stats.occurrences;
  j["missing_cells_imputed"] = s.stats.missing_cells_imputed;
  return j;
}

nlohmann::ordered_json base_metadata(const RunConfig& cfg, const ResolvedVariables& vars,
                                     const std::vector<PreparedSample>& samples) {
  nlohmann::ordered_json meta;
  meta["tool"] = "galt";
  meta["version"] = GALT_VERSION;
  meta["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION);
  meta["json_version"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  meta["mode"] = cfg.multi_sample() ? "mfa_galt" : "ca_galt";
  meta["seed"] = cfg.seed;
  meta["n_permutations"] = cfg.n_permutations;
  meta["max_axes"] = cfg.max_axes;
  meta["tolerances"] = {{"rel_tol", cfg.rel_tol}, {"zero_variance", 1e-14}, {"zero_eigenvalue", 1e-12}};
  meta["tokenizer"] = {{"lowercase", cfg.tokenizer.lowercase},
                       {"strip_punctuation", cfg.tokenizer.strip_punctuation},
                       {"min_token_chars", cfg.tokenizer.min_token_chars},
                       {"stopwords_lowercased", cfg.tokenizer.lowercase}};
  meta["filter_order"] = {"stopwords", "min_count", "empty_respondents"};
  meta["imputation"] = {{"quantitative", "weighted column mean of observed cells"},
                        {"categorical", "all-zero indicator row"}};
  auto& variables = meta["variables"] = nlohmann::ordered_json::array();
  for (const auto& v : vars.active) {
    nlohmann::ordered_json j;
    j["name"] = v.name;
    j["kind"] = v.kind == VariableKind::Quantitative ? "quantitative" : "categorical";
    j["role"] = "active";
    if (v.kind == VariableKind::Quantitative) {
      j["standardize"] = v.standardize;
      j["invert_scale"] = v.invert_scale ? nlohmann::ordered_json(*v.invert_scale) : nlohmann::ordered_json();
    } else {
      j["categories"] = v.categories;
    }
    variables.push_back(j);
  }
  for (const auto& v : vars.supplementary) {
    variables.push_back({{"name", v.name}, {"kind", "categorical"}, {"role", "supplementary"},
                         {"categories", v.categories}});
  }
  auto& js = meta["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : samples) js.push_back(sample_metadata(s));
  return meta;
}

std::string centroid_header(Eigen::Index axes) {
  std::vector<std::string> header{"variable", "category", "sample", "occurrences"};
  for (const auto& n : axis_names(axes)) header.push_back(n);
  return csv::format_row(header);
}

void append_centroids(std::string& out, const std::string& variable, const std::string& sample,
                      const CategoryCoordinates& c) {
  for (std::size_t i = 0; i < c.categories.size(); ++i) {
    append_row(out, {variable, c.categories[i], sample, std::to_string(c.occurrences[i])},
               c.coords.row(static_cast<Eigen::Index>(i)));
  }
}

}  // namespace

ResolvedVariables resolve_variables(const RunConfig& cfg, const std::vector<RawTable>& raws) {
  ResolvedVariables out;
  auto fill = [&](VariableSpec spec) {
    if (spec.kind == VariableKind::Categorical && spec.categories.empty()) {
      spec.categories = distinct_values(raws, spec.name);
      if (spec.categories.empty()) {
        throw Error(ErrorClass::DegenerateData, "NoCategories", "variable '" + spec.name + "' has no observed value");
      }
    }
    spec.validate();
    return spec;
  };
  for (const auto& v : cfg.variables) out.active.push_back(fill(v));
  for (const auto& s : cfg.supplementary) {
    VariableSpec spec;
    spec.name = s.name;
    spec.kind = VariableKind::Categorical;
    spec.categories = s.categories;
    out.supplementary.push_back(fill(spec));
  }
  return out;
}

std::vector<PreparedSample> prepare_samples(const RunConfig& cfg, ResolvedVariables& variables) {
  std::vector<RawTable> raws;
  for (const auto& sc : cfg.samples) raws.push_back(read_raw_table(sc.scores));
  variables = resolve_variables(cfg, raws);

  std::vector<PreparedSample> out;
  for (std::size_t l = 0; l < cfg.samples.size(); ++l) {
    const auto& sc = cfg.samples[l];
    const auto responses = read_responses(sc.responses);
    TokenizerConfig tok = cfg.tokenizer;
    tok.locale_hint = sc.language;
    std::vector<std::vector<std::string>> tokens;
    FilterStats stats;
    std::map<std::string, std::int64_t> vocabulary;
    for (const auto& text : responses.texts) {
      tokens.push_back(tokenize(text, tok));
      for (const auto& t : tokens.back()) ++vocabulary[t];
      stats.tokens_read += tokens.back().size();
    }
    VocabularyFilter filter;
    filter.min_count = sc.min_count;
    if (sc.stopwords) {
      for (const auto& w : read_stopwords(*sc.stopwords)) {
        filter.stopwords.insert(cfg.tokenizer.lowercase ? lowercase(w) : w);
      }
    }
    stats.respondents_read = responses.ids.size();
    stats.vocabulary_read = vocabulary.size();
    for (const auto& [w, n] : vocabulary) {
      if (filter.stopwords.contains(w)) {
        ++stats.stopword_forms_removed;
      } else if (n < filter.min_count) {
        ++stats.rare_forms_removed;
      }
    }

    auto lex = build_lexical_table(responses.ids, tokens, filter);
    stats.respondents_dropped = responses.ids.size() - static_cast<std::size_t>(lex.respondent_count());
    stats.words_retained = static_cast<std::size_t>(lex.word_count());
    stats.occurrences = lex.grand_total();

    auto raw = select_rows(raws[l], lex.respondent_ids());
    auto encoded = encode_contextual(raw, variables.active);
    stats.missing_cells_imputed = encoded.missing_count();
    const auto weights = compute_weights(lex);
    auto centered = center_contextual(impute_missing(encoded, weights.respondent), weights.respondent);
    for (const auto& supp : variables.supplementary) raw.column(supp.name);  // fail early when absent
    out.push_back({sc, std::move(lex), std::move(encoded), std::move(centered), std::move(raw), stats});
  }
  return out;
}

OutputSet analyze(const RunConfig& cfg) {
  ResolvedVariables vars;
  const auto samples = prepare_samples(cfg, vars);
  AnalysisOptions options{cfg.max_axes, cfg.rel_tol};
  OutputSet out;
  auto meta = base_metadata(cfg, vars, samples);

  Solution sol;
  std::vector<std::string> sample_names;
  for (const auto& s : samples) sample_names.push_back(s.config.name);
  std::string centroids;
  bool any_centroids = false;

  if (cfg.multi_sample()) {
    std::vector<Sample> ms;
    for (const auto& s : samples) ms.push_back(Sample{s.config.name, s.lexical, s.centered});
    const auto r = mfa_galt(MultiSample(std::move(ms)), options);
    sol = {r.basis.eigenvalues, r.inertia_total, r.words, {}, r.word_coords, r.contributions, r.cos2,
           r.variable_names, r.variable_coords, r.variable_cos2};
    for (std::size_t l = 0; l < r.sample_count(); ++l) {
      for (Eigen::Index j = 0; j < r.word_blocks[l].size; ++j) sol.word_sample.push_back(r.sample_names[l]);
    }
    const auto S = r.basis.size();

    std::vector<std::string> header{"variable", "sample"};
    for (const auto& n : axis_names(S)) header.push_back(n);
    std::string partial = csv::format_row(header);
    for (Eigen::Index k = 0; k < r.variable_coords.rows(); ++k) {
      for (std::size_t l = 0; l < r.sample_count(); ++l) {
        append_row(partial, {r.variable_names[static_cast<std::size_t>(k)], r.sample_names[l]},
                   r.partial_coords[l].row(k));
      }
    }
    out.add("partial_coords.csv", partial);

    header = {"sample"};
    for (const auto& n : axis_names(S)) header.push_back(n);
    std::string lg = csv::format_row(header);
    for (std::size_t l = 0; l < r.sample_count(); ++l) {
      append_row(lg, {r.sample_names[l]}, r.group_coords.row(static_cast<Eigen::Index>(l)));
    }
    out.add("groups_lg.csv", lg);

    header = {"sample"};
    for (const auto& n : r.sample_names) header.push_back(n);
    std::string rv = csv::format_row(header);
    for (std::size_t l = 0; l < r.sample_count(); ++l) {
      append_row(rv, {r.sample_names[l]}, r.rv.row(static_cast<Eigen::Index>(l)));
    }
    out.add("rv.csv", rv);

    centroids = centroid_header(S);
    for (const auto& spec : vars.supplementary) {
      for (std::size_t l = 0; l < samples.size(); ++l) {
        const auto labels = column_labels(samples[l].raw, spec.name);
        const auto cats = present_categories(spec, labels);
        if (cats.empty()) continue;
        append_centroids(centroids, spec.name, r.sample_names[l],
                         project_supplementary_categories(r, l, samples[l].lexical, labels, cats));
        any_centroids = true;
      }
    }
    meta["first_eigenvalues"] = r.weights.first_eigenvalues;

    if (cfg.plots) {
      ScatterPlot vplot("Variables and partial points", axis_title(sol, 0), axis_title(sol, 1));
      std::vector<std::string> series{"global"};
      for (const auto& n : r.sample_names) series.push_back(n);
      vplot.set_series_names(series);
      for (Eigen::Index k = 0; k < r.variable_coords.rows(); ++k) {
        const double gx = r.variable_coords(k, 0), gy = plot_y(r.variable_coords, k);
        for (std::size_t l = 0; l < r.sample_count(); ++l) {
          const int series_id = static_cast<int>(l) + 1;
          vplot.add_segment(gx, gy, r.partial_coords[l](k, 0), plot_y(r.partial_coords[l], k), series_id);
          vplot.add_point(r.partial_coords[l](k, 0), plot_y(r.partial_coords[l], k), "", series_id);
        }
        vplot.add_segment(0.0, 0.0, gx, gy, 0);
        vplot.add_point(gx, gy, r.variable_names[static_cast<std::size_t>(k)], 0);
      }
      out.add("plot_variables.svg", vplot.render());

      ScatterPlot gplot("Groups (Lg)", axis_title(sol, 0), axis_title(sol, 1));
      gplot.set_series_names(r.sample_names);
      for (std::size_t l = 0; l < r.sample_count(); ++l) {
        const auto row = static_cast<Eigen::Index>(l);
        gplot.add_point(r.group_coords(row, 0), plot_y(r.group_coords, row), r.sample_names[l],
                        static_cast<int>(l));
      }
      out.add("plot_groups.svg", gplot.render());
    }
  } else {
    const auto& s = samples.front();
    const auto r = ca_galt(s.lexical, s.centered, options);
    sol = {r.basis.eigenvalues, r.total_inertia, s.lexical.words(),
           std::vector<std::string>(s.lexical.words().size(), s.config.name), r.word_coords, r.contributions, r.cos2,
           s.centered.column_names(), r.variable_coords, r.variable_cos2};
    centroids = centroid_header(r.basis.size());
    for (const auto& spec : vars.supplementary) {
      const auto labels = column_labels(s.raw, spec.name);
      const auto cats = present_categories(spec, labels);
      if (cats.empty()) continue;
      append_centroids(centroids, spec.name, s.config.name,
                       category_centroids(s.lexical, r.word_coords, labels, cats));
      any_centroids = true;
    }
    if (cfg.plots) {
      ScatterPlot vplot("Variables", axis_title(sol, 0), axis_title(sol, 1));
      for (Eigen::Index k = 0; k < r.variable_coords.rows(); ++k) {
        vplot.add_segment(0.0, 0.0, r.variable_coords(k, 0), plot_y(r.variable_coords, k), 0);
        vplot.add_point(r.variable_coords(k, 0), plot_y(r.variable_coords, k), sol.variables[static_cast<std::size_t>(k)], 0);
      }
      out.add("plot_variables.svg", vplot.render());
    }
  }

  out.add("eigenvalues.csv", eigenvalues_csv(sol));
  out.add("word_coords.csv", word_coords_csv(sol));
  out.add("variable_coords.csv", variable_coords_csv(sol));
  out.add("association.csv", association_csv(associations(cfg, vars, samples)));
  if (any_centroids) out.add("category_centroids.csv", centroids);
  if (cfg.plots) out.add("plot_words.svg", words_svg(sol, sample_names));

  meta["axes_extracted"] = sol.eigenvalues.size();
  meta["total_inertia"] = sol.inertia_total;
  std::vector<std::string> files = out.names();
  files.push_back("run_metadata.json");
  std::sort(files.begin(), files.end());
  meta["outputs"] = files;
  out.add("run_metadata.json", meta.dump(2) + "\n");
  return out;
}

OutputSet run(const RunConfig& cfg) {
  auto out = analyze(cfg);
  out.commit(cfg.output);
  return out;
}

}  // namespace galt::cli
