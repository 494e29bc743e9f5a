#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galt/context.hpp"
#include "galt/corpus.hpp"
#include "galt_cli/config.hpp"
#include "galt_cli/output.hpp"

namespace galt::cli {

// What the corpus filters did to one sample, for the metadata sidecar.
struct FilterStats {
  std::size_t respondents_read = 0;
  std::size_t respondents_dropped = 0;  // empty after filtering
  std::size_t tokens_read = 0;
  std::size_t vocabulary_read = 0;
  std::size_t stopword_forms_removed = 0;
  std::size_t rare_forms_removed = 0;  // below min_count
  std::size_t words_retained = 0;
  std::int64_t occurrences = 0;
  std::size_t missing_cells_imputed = 0;
};

struct PreparedSample {
  SampleConfig config;
  LexicalTable lexical;
  ContextualTable encoded;   // after scale inversion, before imputation (NaN = missing)
  ContextualTable centered;  // imputed and centered
  RawTable raw;              // aligned with lexical's respondents
  FilterStats stats;
};

// Active variable specs with categorical categories filled from the data
// when the config leaves them out.
struct ResolvedVariables {
  std::vector<VariableSpec> active;
  std::vector<VariableSpec> supplementary;  // categorical
};

ResolvedVariables resolve_variables(const RunConfig& cfg, const std::vector<RawTable>& raws);

std::vector<PreparedSample> prepare_samples(const RunConfig& cfg, ResolvedVariables& variables);

// Runs the full analysis and renders every output file in memory. Nothing
// touches the output directory.
OutputSet analyze(const RunConfig& cfg);

// analyze() followed by an atomic commit into cfg.output.
OutputSet run(const RunConfig& cfg);

}  // namespace galt::cli
