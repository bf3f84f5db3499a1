#include "lexidiv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lexidiv/corpus.hpp"
#include "lexidiv/error.hpp"
#include "lexidiv/measures.hpp"
#include "lexidiv/pipeline.hpp"
#include "lexidiv/profile_io.hpp"
#include "lexidiv/replicate.hpp"
#include "lexidiv/report.hpp"
#include "lexidiv/rng.hpp"
#include "lexidiv/simulate.hpp"
#include "lexidiv/svm.hpp"
#include "lexidiv/wordnet.hpp"

namespace lexidiv::cli {

namespace {

namespace fs = std::filesystem;

struct Config {
  std::string wordnet;
  std::string manifest;
  std::string root;
  std::string in;
  std::string out;
  std::string model_out;
  std::string format;
  std::string features;
  std::string label = "writer_type";
  std::string writer;
  std::string split = "0.64,0.16,0.20";
  bool unstratified = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> n_per_group;
  std::string moments;
  std::string preset = "groups";
  std::size_t repeats = classify::kImportanceRepeats;
  std::size_t seeds = 10;
};

void emit(const Config& c, const std::string& content, std::ostream& out) {
  if (c.out.empty())
    out << content;
  else
    profile_io::write_file(c.out, content);
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), format) == allowed.end())
    throw ValidationError(fmt::format("format '{}' is not supported here (use {})", format, fmt::join(allowed, "|")));
}

corpus::DependentVariable dependent_variable(const std::string& s) {
  auto dv = corpus::parse_dependent_variable(s);
  if (!dv)
    throw ValidationError("unknown dependent variable '" + s +
                          "' (writer_type|model|language_status|education|group12)");
  return *dv;
}

std::vector<measures::ProfiledText> load_profiles(const Config& c) {
  if (c.in.empty()) throw ValidationError("--in is required");
  auto rows = profile_io::read_file(c.in);
  if (!c.writer.empty()) {
    if (c.writer != "human" && c.writer != "llm") throw ValidationError("--writer must be human or llm");
    std::erase_if(rows, [&](const auto& r) { return corpus::class_label(r.group, corpus::DependentVariable::writer_type) != c.writer; });
  }
  return rows;
}

std::string render_profiles(const std::vector<measures::ProfiledText>& rows, const std::string& format) {
  require_format(format, {"csv", "json", "text"});
  if (format == "json") return profile_io::to_json(rows);
  if (format == "text") return profile_io::to_text(rows);
  return profile_io::to_csv(rows);
}

classify::SplitSpec parse_split(const std::string& s, bool unstratified) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::logic_error&) {
      throw ValidationError("--split expects three comma-separated fractions, got '" + s + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw ValidationError("--split expects three comma-separated fractions, got '" + s + "'");
  classify::SplitSpec spec{parts[0], parts[1], parts[2], 0, !unstratified};
  classify::validate(spec);
  return spec;
}

int cmd_profile(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.wordnet.empty()) throw ValidationError("--wordnet (or LEXIDIV_WORDNET) is required");
  if (c.manifest.empty()) throw ValidationError("--manifest is required");
  const std::string format = c.format.empty() ? "csv" : c.format;
  require_format(format, {"csv", "json", "text"});
  const auto db = wordnet::load_wordnet(c.wordnet);
  err << fmt::format("wordnet: version {}, {} lemmas, {} exceptions\n", db.index.version(), db.index.lemma_count(),
                     db.morph.exception_count());
  const fs::path manifest(c.manifest);
  const fs::path root = c.root.empty() ? manifest.parent_path() : fs::path(c.root);
  const auto records = corpus::load_manifest(manifest, root);
  const auto rows = measures::profile_corpus(records, db);
  emit(c, render_profiles(rows, format), out);
  return kExitOk;
}

int cmd_stats(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"json", "text"});
  const auto features = measures::parse_feature_set(c.features.empty() ? "ld6" : c.features);
  const auto dv = dependent_variable(c.label);
  const auto rows = load_profiles(c);
  const auto r = report::run_stats(rows, dv, features);
  emit(c, format == "json" ? report::to_json(r) : report::to_text(r), out);
  return kExitOk;
}

int cmd_classify(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"json", "text"});
  const auto features = measures::parse_feature_set(c.features.empty() ? "ld4" : c.features);
  classify::PipelineOptions po;
  po.split = parse_split(c.split, c.unstratified);
  po.seed = c.seed;
  if (c.repeats < 1) throw ValidationError("--repeats must be >= 1");
  po.importance_repeats = c.repeats;
  const auto dv = dependent_variable(c.label);
  const auto rows = load_profiles(c);
  const auto r = classify::run_classification(rows, dv, features, po);
  if (!c.model_out.empty()) profile_io::write_file(c.model_out, classify::to_json(r.model));
  emit(c, format == "json" ? report::to_json(r) : report::to_text(r), out);
  return kExitOk;
}

int cmd_simulate(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "csv" : c.format;
  require_format(format, {"csv", "json", "text"});
  std::vector<simulate::GroupMoments> moments;
  if (!c.moments.empty())
    moments = simulate::moments_from_json(profile_io::read_text_file(c.moments));
  else if (c.preset == "groups")
    moments = simulate::twelve_group_moments();
  else if (c.preset == "pooled")
    moments = simulate::pooled_moments();
  else
    throw ValidationError("--preset must be groups or pooled");

  std::vector<std::size_t> counts;
  for (const auto& g : moments) {
    if (c.n_per_group)
      counts.push_back(*c.n_per_group);
    else if (g.n)
      counts.push_back(*g.n);
    else
      throw ValidationError("group '" + g.group + "' has no 'n'; pass --n-per-group");
  }
  if (c.n_per_group && *c.n_per_group < 1) throw ValidationError("--n-per-group must be >= 1");
  const auto rows = simulate::sample_profiles(moments, counts, c.seed);
  emit(c, render_profiles(rows, format), out);
  return kExitOk;
}

int cmd_replicate(const Config& c, std::ostream& out) {
  const std::string format = c.format.empty() ? "text" : c.format;
  require_format(format, {"json", "text"});
  replicate::Options o;
  o.seed = c.seed;
  o.seed_sweep = c.seeds;
  if (c.n_per_group) o.n_per_group = *c.n_per_group;
  if (o.seed_sweep < 1 || o.n_per_group < 2) throw ValidationError("--seeds must be >= 1 and --n-per-group >= 2");
  const auto s = replicate::run(o);
  emit(c, format == "json" ? replicate::to_json(s) : replicate::to_text(s), out);
  return s.all_passed() ? kExitOk : kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Lexical diversity profiling, statistics and classification", "lexidiv"};
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* sub, const std::string& formats) {
    sub->add_option("--out", c.out, "Output file (default: stdout)");
    sub->add_option("--format", c.format, "Output format: " + formats);
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  };

  auto* profile = app.add_subcommand("profile", "Measure every text of a corpus manifest");
  profile->add_option("--wordnet", c.wordnet, "WordNet database directory")->envname("LEXIDIV_WORDNET");
  profile->add_option("--manifest", c.manifest, "Manifest CSV");
  profile->add_option("--root", c.root, "Corpus root for manifest paths (default: manifest directory)");
  add_out(profile, "csv|json|text (default csv)");

  auto* stats = app.add_subcommand("stats", "Descriptives, ANOVA, MANOVA and pairwise tests");
  stats->add_option("--in", c.in, "Profile table (CSV or JSON)");
  stats->add_option("--label", c.label, "Grouping variable")->capture_default_str();
  stats->add_option("--features", c.features, "ld4|ld6|<comma list> (default ld6)");
  stats->add_option("--writer", c.writer, "Keep only human or llm rows");
  add_out(stats, "json|text (default text)");

  auto* cls = app.add_subcommand("classify", "Train and evaluate the linear SVM");
  cls->add_option("--in", c.in, "Profile table (CSV or JSON)");
  cls->add_option("--label", c.label, "Dependent variable")->capture_default_str();
  cls->add_option("--features", c.features, "ld4|ld6|<comma list> (default ld4)");
  cls->add_option("--writer", c.writer, "Keep only human or llm rows");
  cls->add_option("--split", c.split, "train,validation,test fractions")->capture_default_str();
  cls->add_flag("--unstratified", c.unstratified, "Split without stratifying by class");
  cls->add_option("--repeats", c.repeats, "Permutation-importance repeats")->capture_default_str();
  cls->add_option("--model", c.model_out, "Write the trained model as JSON");
  add_seed(cls);
  add_out(cls, "json|text (default text)");

  auto* sim = app.add_subcommand("simulate", "Sample synthetic profiles from group moments");
  sim->add_option("--moments", c.moments, "Moments JSON (overrides --preset)");
  sim->add_option("--preset", c.preset, "groups (twelve groups) or pooled (two writer types)")->capture_default_str();
  sim->add_option("--n-per-group", c.n_per_group, "Rows per group (default: each group's n)");
  add_seed(sim);
  add_out(sim, "csv|json|text (default csv)");

  auto* rep = app.add_subcommand("replicate", "Run the replication checks and print a pass/fail summary");
  rep->add_option("--seeds", c.seeds, "Seeds in each Monte-Carlo sweep")->capture_default_str();
  rep->add_option("--n-per-group", c.n_per_group, "Rows per group of the twelve-group preset (default 30)");
  add_seed(rep);
  add_out(rep, "json|text (default text)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (profile->parsed()) return cmd_profile(c, out, err);
    if (stats->parsed()) return cmd_stats(c, out);
    if (cls->parsed()) return cmd_classify(c, out);
    if (sim->parsed()) return cmd_simulate(c, out);
    return cmd_replicate(c, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace lexidiv::cli
