#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "galt/error.hpp"
#include "galt_cli/config.hpp"
#include "galt_cli/output.hpp"
#include "galt_cli/svg.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixture = GALT_FIXTURE_DIR;

struct RunOutcome {
  int code = -1;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("galt_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

RunOutcome run_cli(const std::string& args, const fs::path& work) {
  const auto err = work / "stderr.txt";
  const std::string cmd = std::string(GALT_CLI) + " " + args + " > /dev/null 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

std::vector<std::string> listing(const fs::path& dir) {
  std::vector<std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

// Config pointing at the fixture files with absolute paths.
nlohmann::json fixture_config() {
  auto cfg = nlohmann::json::parse(slurp(kFixture / "config.json"));
  for (auto& s : cfg["samples"]) {
    for (const char* key : {"responses", "scores", "stopwords"}) s[key] = (kFixture / s[key].get<std::string>()).string();
  }
  cfg.erase("output");
  return cfg;
}

}  // namespace

TEST(Cli, FixtureRunIsByteIdenticalAcrossRuns) {
  const auto work = scratch("determinism");
  const auto config = (kFixture / "config.json").string();
  ASSERT_EQ(run_cli("analyze " + config + " --plots --out " + (work / "a").string(), work).code, 0);
  ASSERT_EQ(run_cli("analyze " + config + " --plots --out " + (work / "b").string(), work).code, 0);
  const auto files = listing(work / "a");
  EXPECT_EQ(files, listing(work / "b"));
  EXPECT_EQ(files, (std::vector<std::string>{"association.csv", "category_centroids.csv", "eigenvalues.csv",
                                             "groups_lg.csv", "partial_coords.csv", "plot_groups.svg",
                                             "plot_variables.svg", "plot_words.svg", "run_metadata.json", "rv.csv",
                                             "variable_coords.csv", "word_coords.csv"}));
  for (const auto& f : files) EXPECT_EQ(slurp(work / "a" / f), slurp(work / "b" / f)) << f;
}

TEST(Cli, OutputSchemas) {
  const auto work = scratch("schemas");
  ASSERT_EQ(run_cli("analyze " + (kFixture / "config.json").string() + " --dims 2 --out " + (work / "o").string(), work)
                .code,
            0);
  const auto o = work / "o";
  EXPECT_EQ(first_line(slurp(o / "eigenvalues.csv")), "axis,eigenvalue,percent,cumulative");
  EXPECT_EQ(first_line(slurp(o / "word_coords.csv")),
            "word,sample,dim1,dim2,ctr_dim1,ctr_dim2,cos2_dim1,cos2_dim2");
  EXPECT_EQ(first_line(slurp(o / "variable_coords.csv")), "variable,dim1,dim2,cos2_dim1,cos2_dim2");
  EXPECT_EQ(first_line(slurp(o / "partial_coords.csv")), "variable,sample,dim1,dim2");
  EXPECT_EQ(first_line(slurp(o / "groups_lg.csv")), "sample,dim1,dim2");
  EXPECT_EQ(first_line(slurp(o / "rv.csv")), "sample,english,spanish");
  EXPECT_EQ(first_line(slurp(o / "association.csv")),
            "variable,sample,mean,sd,ratio,p_value,method,p_approx,df,n_permutations,seed,occurrences");
  EXPECT_EQ(first_line(slurp(o / "category_centroids.csv")), "variable,category,sample,occurrences,dim1,dim2");
  const auto eig = slurp(o / "eigenvalues.csv");
  EXPECT_EQ(std::count(eig.begin(), eig.end(), '\n'), 3);

  const auto meta = nlohmann::json::parse(slurp(o / "run_metadata.json"));
  EXPECT_EQ(meta["mode"], "mfa_galt");
  EXPECT_EQ(meta["seed"], 42);
  EXPECT_EQ(meta["max_axes"], 2);
  EXPECT_EQ(meta["samples"].size(), 2u);
  EXPECT_EQ(meta["variables"][0]["invert_scale"], 10.0);
  const double l1 = meta["first_eigenvalues"][0];
  EXPECT_GT(l1, 0.0);
}

TEST(Cli, SeedFlagChangesOnlyPermutationOutputs) {
  const auto work = scratch("seed");
  const auto config = (kFixture / "config.json").string();
  ASSERT_EQ(run_cli("analyze " + config + " --seed 1 --out " + (work / "a").string(), work).code, 0);
  ASSERT_EQ(run_cli("analyze " + config + " --seed 2 --out " + (work / "b").string(), work).code, 0);
  EXPECT_EQ(slurp(work / "a" / "word_coords.csv"), slurp(work / "b" / "word_coords.csv"));
  EXPECT_EQ(nlohmann::json::parse(slurp(work / "b" / "run_metadata.json"))["seed"], 2);
}

TEST(Cli, SingleSampleWritesCaGaltOutputsOnly) {
  const auto work = scratch("single");
  auto cfg = fixture_config();
  cfg["samples"].erase(1);
  spit(work / "config.json", cfg.dump());
  ASSERT_EQ(run_cli("analyze " + (work / "config.json").string() + " --plots --out " + (work / "o").string(), work)
                .code,
            0);
  EXPECT_EQ(listing(work / "o"),
            (std::vector<std::string>{"association.csv", "category_centroids.csv", "eigenvalues.csv",
                                      "plot_variables.svg", "plot_words.svg", "run_metadata.json",
                                      "variable_coords.csv", "word_coords.csv"}));
  EXPECT_EQ(nlohmann::json::parse(slurp(work / "o" / "run_metadata.json"))["mode"], "ca_galt");
}

TEST(Cli, MalformedCsvIsAnIoErrorAndWritesNothing) {
  const auto work = scratch("malformed");
  auto cfg = fixture_config();
  auto text = slurp(kFixture / "es_responses.csv");
  text += "es999,\"unterminated answer\n";
  spit(work / "broken.csv", text);
  cfg["samples"][1]["responses"] = (work / "broken.csv").string();
  spit(work / "config.json", cfg.dump());
  const auto out = run_cli("analyze " + (work / "config.json").string() + " --out " + (work / "o").string(), work);
  EXPECT_EQ(out.code, 3);
  EXPECT_EQ(out.err.rfind("error:io:MalformedCsv:", 0), 0u) << out.err;
  EXPECT_EQ(std::count(out.err.begin(), out.err.end(), '\n'), 1);
  EXPECT_TRUE(listing(work / "o").empty());
}

TEST(Cli, ErrorClassesMapToExitCodes) {
  const auto work = scratch("errors");
  auto cfg = fixture_config();
  cfg["colour"] = "blue";
  spit(work / "unknown_key.json", cfg.dump());
  auto r = run_cli("analyze " + (work / "unknown_key.json").string(), work);
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error:config:UnknownKey:", 0), 0u) << r.err;

  cfg = fixture_config();
  cfg["samples"][0]["scores"] = (work / "nope.csv").string();
  spit(work / "missing.json", cfg.dump());
  r = run_cli("analyze " + (work / "missing.json").string(), work);
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.err.rfind("error:io:FileNotFound:", 0), 0u) << r.err;

  cfg = fixture_config();
  for (auto& s : cfg["samples"]) s["min_count"] = 100000;
  spit(work / "aggressive.json", cfg.dump());
  r = run_cli("analyze " + (work / "aggressive.json").string() + " --out " + (work / "o").string(), work);
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.err.rfind("error:degenerate-data:AllRowsEmpty:", 0), 0u) << r.err;

  spit(work / "bad.json", "{ not json");
  EXPECT_EQ(run_cli("analyze " + (work / "bad.json").string(), work).code, 2);
  EXPECT_EQ(run_cli("analyze", work).code, 2);
  EXPECT_EQ(run_cli("analyze " + (work / "bad.json").string() + " --dims 0", work).code, 2);
  EXPECT_TRUE(listing(work / "o").empty());
}

TEST(Cli, PlotsHaveOnePointPerWord) {
  const auto work = scratch("plots");
  ASSERT_EQ(run_cli("analyze " + (kFixture / "config.json").string() + " --plots --out " + (work / "o").string(), work)
                .code,
            0);
  const auto words = slurp(work / "o" / "word_coords.csv");
  const auto svg = slurp(work / "o" / "plot_words.svg");
  auto count = [](const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count(svg, "<circle"), static_cast<std::size_t>(std::count(words.begin(), words.end(), '\n') - 1));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  const auto groups = slurp(work / "o" / "plot_groups.svg");
  EXPECT_EQ(count(groups, "<circle"), 2u);
}

TEST(Config, RelativePathsResolveAgainstConfigDirectory) {
  const auto cfg = galt::cli::load_config(kFixture / "config.json");
  ASSERT_EQ(cfg.samples.size(), 2u);
  EXPECT_EQ(cfg.samples[0].responses, kFixture / "en_responses.csv");
  EXPECT_EQ(cfg.samples[0].responses_entry, "en_responses.csv");
  EXPECT_EQ(cfg.output, kFixture / "out");
  EXPECT_EQ(cfg.variables[0].invert_scale, 10.0);
  EXPECT_EQ(cfg.supplementary[0].categories, (std::vector<std::string>{"family", "leisure", "work"}));
}

TEST(Config, RejectsInvalidSettings) {
  auto base = fixture_config();
  auto name = [&](const nlohmann::json& cfg) {
    try {
      galt::cli::parse_config(cfg.dump(), kFixture);
    } catch (const galt::Error& e) {
      return e.name();
    }
    return std::string();
  };
  EXPECT_EQ(name(base), "");
  auto c = base;
  c["n_permutations"] = 10;
  EXPECT_EQ(name(c), "InvalidConfig");
  c = base;
  c["variables"][3]["standardize"] = true;
  EXPECT_EQ(name(c), "InvalidVariable");
  c = base;
  c["samples"][1]["name"] = c["samples"][0]["name"];
  EXPECT_EQ(name(c), "DuplicateName");
  c = base;
  c["variables"][0]["kind"] = "ordinal";
  EXPECT_EQ(name(c), "InvalidConfig");
  c = base;
  c["samples"][0]["min_count"] = 0;
  EXPECT_EQ(name(c), "InvalidConfig");
}

TEST(Output, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0, 1e22}) {
    EXPECT_EQ(std::stod(galt::cli::format_number(v)), v);
  }
  EXPECT_EQ(galt::cli::format_number(-0.0), "0");
}

TEST(Output, CommitReplacesFilesWithoutLeavingTemporaries) {
  const auto work = scratch("commit");
  spit(work / "a.csv", "old\n");
  galt::cli::OutputSet out;
  out.add("a.csv", "new\n");
  out.add("b.csv", "x\n");
  out.commit(work);
  EXPECT_EQ(slurp(work / "a.csv"), "new\n");
  EXPECT_EQ(listing(work), (std::vector<std::string>{"a.csv", "b.csv"}));
}

TEST(Svg, EscapesText) {
  EXPECT_EQ(galt::cli::xml_escape("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
  galt::cli::ScatterPlot plot("t", "x", "y");
  plot.add_point(1, 2, "<w>", 0);
  EXPECT_NE(plot.render().find("&lt;w&gt;"), std::string::npos);
}
