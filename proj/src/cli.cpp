#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <set>

#include "ldasvm/commands.hpp"
#include "ldasvm/error.hpp"
#include "ldasvm/model_io.hpp"
#include "ldasvm/synth.hpp"

namespace ldasvm {
namespace fs = std::filesystem;

namespace {

std::string flag_echo(const CvFlags& f) {
  return "-g " + format_percent(f.gamma) + " -c " + format_percent(f.cost) + " -v " +
         std::to_string(f.folds) + " --seed " + std::to_string(f.seed);
}

void warn_starved(const CvResult& r, const FeatureSet& fs, std::ostream& err) {
  if (r.starved_labels.empty()) return;
  err << "warning: TooFewSamples: class(es)";
  for (int l : r.starved_labels) err << ' ' << fs.class_names[static_cast<std::size_t>(l - 1)];
  err << " cannot appear in every training fold; those folds train on the remaining labels\n";
}

std::string fold_list(const std::vector<int>& fold_of) {
  std::string s;
  for (int f : fold_of) s += (s.empty() ? "" : " ") + std::to_string(f);
  return s;
}

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("-g,--gamma", f.gamma, "Kernel gamma")->capture_default_str();
  cmd->add_option("-c,--cost", f.cost, "SVM cost C")->capture_default_str();
  cmd->add_option("--kernel", f.kernel, "linear | rbf | polynomial")->capture_default_str();
  cmd->add_option("--lda-dim", f.lda_dim, "LDA output dimension (0 = classes - 1)")
      ->capture_default_str();
  cmd->add_flag("--no-lda", f.no_lda, "Feed raw MFCC vectors to the SVM");
  cmd->add_option("--ridge", f.ridge, "Ridge added to S_W (default 1e-6 trace(S_W)/d)");
  cmd->add_option("--frame-len", f.frontend.frame_len_n, "Frame length N (power of two)")
      ->capture_default_str();
  cmd->add_option("--frame-shift", f.frontend.frame_shift_m, "Frame shift M")
      ->capture_default_str();
  cmd->add_option("--filters", f.frontend.num_filters_k, "Mel filters K")->capture_default_str();
  cmd->add_option("--sample-rate", f.frontend.sample_rate_hz, "Expected sample rate (Hz)")
      ->capture_default_str();
}

void add_cv_flags(CLI::App* cmd, CvFlags& f) {
  add_pipeline_flags(cmd, f);
  cmd->add_option("-v,--folds", f.folds, "Cross-validation folds")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Fold shuffle seed")->capture_default_str();
  cmd->add_flag("--paper-protocol", f.paper_protocol,
                "Fit LDA on the whole corpus before cross-validation (leaks held-out data; "
                "the default refits LDA inside every training fold)");
}

}  // namespace

PipelineOptions PipelineFlags::options() const {
  PipelineOptions o;
  o.frontend = frontend;
  o.kernel.kind = parse_kernel_kind(kernel);
  o.kernel.gamma = gamma;
  o.cost_c = cost;
  o.use_lda = !no_lda;
  o.lda_dim = lda_dim;
  o.ridge = ridge;
  return o;
}

std::optional<double> RunReport::accuracy_percent() const {
  if (with_truth == 0) return std::nullopt;
  return 100.0 * correct / with_truth;
}

std::string format_percent(double percent) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", percent);
  return buf;
}

std::string accuracy_line(int correct, int total) {
  return "Accuracy = " + format_percent(100.0 * correct / total) + "% (" +
         std::to_string(correct) + "/" + std::to_string(total) + ") (classification)";
}

std::string crossval_line(double percent) {
  return "Cross Validation Accuracy = " + format_percent(percent) + "%";
}

PipelineModel cmd_train(const fs::path& corpus_root, const PipelineFlags& flags,
                        const fs::path& out_path, std::ostream& out) {
  const PipelineOptions options = flags.options();
  const FeatureSet features = extract_corpus(scan_corpus(corpus_root), options.frontend);
  const PipelineModel model = train_pipeline(features.data, features.class_names, options);
  save_model(model, out_path);

  out << "classes:\n";
  for (std::size_t c = 0; c < model.class_names.size(); ++c) {
    int count = 0;
    for (int l : features.data.labels) count += l == static_cast<int>(c) + 1;
    out << "  " << c + 1 << "  " << model.class_names[c] << "  (" << count << " files)\n";
  }
  out << "nr_class: " << model.svm.nr_class() << "\n";
  out << "pairwise machines: " << model.svm.pairwise.size() << "\n";
  out << "lda: "
      << (model.lda ? std::to_string(model.lda->input_dim()) + " -> " +
                          std::to_string(model.lda->output_dim())
                    : std::string("none"))
      << "\n";
  long total_sv = 0;
  for (const auto& pm : model.svm.pairwise) total_sv += pm.machine.support_vectors.rows();
  out << "support vectors (summed over pairs): " << total_sv << "\n";

  int correct = 0;
  for (Eigen::Index i = 0; i < features.data.size(); ++i) {
    correct += predict_features(model, features.data.vectors.row(i).transpose()).label ==
               features.data.labels[static_cast<std::size_t>(i)];
  }
  out << "training " << accuracy_line(correct, static_cast<int>(features.data.size())) << "\n";
  out << "model written to " << out_path.string() << "\n";
  return model;
}

RunReport cmd_predict(const fs::path& model_path, const std::vector<fs::path>& paths,
                      std::ostream& out) {
  const PipelineModel model = load_model(model_path);
  model.validate();
  const MfccFrontend frontend(model.frontend);

  std::vector<std::pair<fs::path, std::optional<int>>> inputs;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      const CorpusIndex index = scan_corpus(p);
      for (const auto& e : index.entries) {
        std::optional<int> truth;
        for (std::size_t c = 0; c < model.class_names.size(); ++c) {
          if (model.class_names[c] == e.class_name) truth = static_cast<int>(c) + 1;
        }
        inputs.emplace_back(e.file, truth);
      }
    } else {
      inputs.emplace_back(p, std::nullopt);
    }
  }

  RunReport report;
  for (const auto& [file, truth] : inputs) {
    const auto clip = load_wav(file);
    const Prediction pred = predict_features(model, frontend.extract(clip));
    report.predictions.push_back({file, truth, pred.label, pred.votes});
    out << file.string() << "\tpredict=" << pred.label << " ("
        << model.class_names[static_cast<std::size_t>(pred.label - 1)] << ")\tvotes=" << pred.votes;
    if (truth) {
      out << "\ttruth=" << *truth;
      ++report.with_truth;
      report.correct += *truth == pred.label;
    }
    out << "\n";
  }
  if (report.with_truth > 0) out << accuracy_line(report.correct, report.with_truth) << "\n";
  return report;
}

CvResult cmd_crossval(const fs::path& corpus_root, const CvFlags& flags, std::ostream& out,
                      std::ostream& err) {
  const PipelineOptions options = flags.options();
  const FeatureSet features = extract_corpus(scan_corpus(corpus_root), options.frontend);
  const CvProtocol protocol = !options.use_lda        ? CvProtocol::Raw
                              : flags.paper_protocol ? CvProtocol::LdaPreProjected
                                                     : CvProtocol::LdaPerFold;
  out << "crossval: " << flag_echo(flags) << " (" << protocol_name(protocol) << ")\n";
  const CvResult r = crossval_pipeline(features.data, options, protocol, flags.folds, flags.seed);
  warn_starved(r, features, err);
  out << crossval_line(r.accuracy_percent) << "\n";
  return r;
}

CompareReport cmd_compare(const fs::path& corpus_root, const CvFlags& flags, std::ostream& out,
                          std::ostream& err) {
  PipelineOptions options = flags.options();
  const FeatureSet features = extract_corpus(scan_corpus(corpus_root), options.frontend);
  const CvProtocol lda_protocol =
      flags.paper_protocol ? CvProtocol::LdaPreProjected : CvProtocol::LdaPerFold;
  out << "compare: " << flag_echo(flags) << "\n";

  CompareReport rep;
  options.use_lda = false;
  rep.raw = crossval_pipeline(features.data, options, CvProtocol::Raw, flags.folds, flags.seed);
  options.use_lda = true;
  rep.lda = crossval_pipeline(features.data, options, lda_protocol, flags.folds, flags.seed);
  warn_starved(rep.lda, features, err);

  out << "folds (raw): " << fold_list(rep.raw.fold_of) << "\n";
  out << "folds (lda): " << fold_list(rep.lda.fold_of) << "\n";
  out << "raw MFCC:  " << crossval_line(rep.raw.accuracy_percent) << "\n";
  out << protocol_name(lda_protocol) << ":  " << crossval_line(rep.lda.accuracy_percent) << "\n";
  const double delta = rep.lda.accuracy_percent - rep.raw.accuracy_percent;
  out << "delta (lda - raw): " << (delta >= 0 ? "+" : "") << format_percent(delta)
      << " percentage points\n";
  return rep;
}

void cmd_synth(const fs::path& root, std::uint64_t seed, std::ostream& out) {
  const SynthOptions opts;
  write_synthetic_corpus(root, seed, opts);
  out << "wrote " << synth_class_names().size() << " classes x (" << opts.train_per_class
      << " train + " << opts.test_per_class << " test) clips under " << root.string()
      << " (seed " << seed << ")\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MFCC -> LDA -> SVM spoken word recognizer", "ldasvm"};
  app.require_subcommand(1);

  PipelineFlags train_flags;
  std::string train_root;
  std::string train_out;
  auto* train = app.add_subcommand("train", "Train a pipeline model from <root>/<class>/*.wav");
  train->add_option("root", train_root, "Corpus root")->required();
  train->add_option("-o,--out", train_out, "Model output path")->required();
  add_pipeline_flags(train, train_flags);

  std::string predict_model;
  std::vector<std::string> predict_paths;
  auto* predict_cmd = app.add_subcommand("predict", "Classify WAV files or labeled directories");
  predict_cmd->add_option("model", predict_model, "Model file")->required();
  predict_cmd->add_option("paths", predict_paths, "WAV files or <dir>/<class>/*.wav trees")
      ->required();

  CvFlags cv_flags;
  std::string cv_root;
  auto* crossval = app.add_subcommand("crossval", "Stratified k-fold cross-validation");
  crossval->add_option("root", cv_root, "Corpus root")->required();
  add_cv_flags(crossval, cv_flags);

  CvFlags cmp_flags;
  std::string cmp_root;
  auto* compare = app.add_subcommand("compare", "Cross-validate raw MFCC vs LDA on identical folds");
  compare->add_option("root", cmp_root, "Corpus root")->required();
  add_cv_flags(compare, cmp_flags);

  std::string synth_root;
  std::uint64_t synth_seed = 42;
  auto* synth = app.add_subcommand("synth", "Write the deterministic 5-class synthetic corpus");
  synth->add_option("root", synth_root, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*train) {
      cmd_train(train_root, train_flags, train_out, out);
    } else if (*predict_cmd) {
      std::vector<fs::path> paths(predict_paths.begin(), predict_paths.end());
      cmd_predict(predict_model, paths, out);
    } else if (*crossval) {
      cmd_crossval(cv_root, cv_flags, out, err);
    } else if (*compare) {
      cmd_compare(cmp_root, cmp_flags, out, err);
    } else if (*synth) {
      cmd_synth(synth_root, synth_seed, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InvalidArgument || e.code() == Errc::InvalidConfig ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ldasvm
