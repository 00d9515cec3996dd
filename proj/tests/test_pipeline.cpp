#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "ldasvm/commands.hpp"
#include "ldasvm/model_io.hpp"
#include "ldasvm/synth.hpp"
#include "model_compare.hpp"
#include "test_util.hpp"

using namespace ldasvm;
using ldasvm::test::same_model;
using ldasvm::test::TempDir;
using ldasvm::test::thrown_code;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// One synthetic corpus shared by every case in this file.
const TempDir& corpus() {
  static TempDir dir("pipeline_corpus");
  static bool written = [] {
    std::ostringstream sink;
    cmd_synth(dir.path(), 42, sink);
    return true;
  }();
  (void)written;
  return dir;
}

const FeatureSet& train_features() {
  static const FeatureSet f = extract_corpus(scan_corpus(corpus() / "train"), FrontendConfig{});
  return f;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  int n = 0;
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_SUITE("model persistence") {
  TEST_CASE("load(save(m)) is exact") {
    TempDir dir("persist");
    PipelineFlags flags;
    std::ostringstream sink;
    const PipelineModel m = cmd_train(corpus() / "train", flags, dir / "m.model", sink);
    const PipelineModel back = load_model(dir / "m.model");
    CHECK(same_model(m, back));
    CHECK(serialize_model(back) == slurp(dir / "m.model"));
    CHECK(count_lines_starting(serialize_model(m), "pair ") == 10);
    REQUIRE(m.lda.has_value());
    CHECK(m.lda->output_dim() == 4);
    CHECK(m.svm.dim == 4);
  }

  TEST_CASE("model without LDA") {
    TempDir dir("nolda");
    PipelineFlags flags;
    flags.no_lda = true;
    std::ostringstream sink;
    const PipelineModel m = cmd_train(corpus() / "train", flags, dir / "m.model", sink);
    CHECK_FALSE(m.lda.has_value());
    CHECK(m.svm.dim == 19);
    CHECK(same_model(m, load_model(dir / "m.model")));
  }

  TEST_CASE("training twice writes identical bytes") {
    TempDir dir("twice");
    std::ostringstream sink;
    cmd_train(corpus() / "train", PipelineFlags{}, dir / "a.model", sink);
    cmd_train(corpus() / "train", PipelineFlags{}, dir / "b.model", sink);
    CHECK(slurp(dir / "a.model") == slurp(dir / "b.model"));
  }

  TEST_CASE("parse errors") {
    const PipelineModel m = train_pipeline(train_features().data, train_features().class_names, PipelineOptions{});
    const std::string text = serialize_model(m);
    CHECK(thrown_code([] { parse_model("hello\n"); }) == Errc::BadMagic);
    CHECK(thrown_code([] { parse_model(""); }) == Errc::TruncatedFile);
    std::string v9 = text;
    v9.replace(v9.find("v1"), 2, "v9");
    CHECK(thrown_code([&] { parse_model(v9); }) == Errc::UnsupportedVersion);
    const std::string head = text.substr(0, text.find('\n', text.size() / 2) + 1);
    CHECK(thrown_code([&] { parse_model(head); }) == Errc::TruncatedFile);
    CHECK(thrown_code([&] { parse_model(text.substr(0, text.rfind("end"))); }) == Errc::TruncatedFile);
    std::string bad = text;
    bad.replace(bad.find("svm"), 3, "xyz");
    CHECK(thrown_code([&] { parse_model(bad); }) == Errc::MalformedModel);
    CHECK(thrown_code([] { load_model("/nonexistent/ldasvm.model"); }) == Errc::Io);
  }

  TEST_CASE("failed save leaves nothing behind") {
    TempDir dir("atomic");
    const PipelineModel m = train_pipeline(train_features().data, train_features().class_names, PipelineOptions{});
    const fs::path target = dir / "no_such_dir/m.model";
    CHECK(thrown_code([&] { save_model(m, target); }) == Errc::Io);
    CHECK_FALSE(fs::exists(target));
    CHECK(fs::is_empty(dir.path()));

    // Overwriting a good file keeps it valid.
    save_model(m, dir / "m.model");
    save_model(m, dir / "m.model");
    CHECK(same_model(m, load_model(dir / "m.model")));
    CHECK_FALSE(fs::exists(dir / "m.model.tmp"));
  }

  TEST_CASE("inconsistent models are rejected") {
    PipelineModel m = train_pipeline(train_features().data, train_features().class_names, PipelineOptions{});
    m.svm.dim = 7;
    CHECK(thrown_code([&] { m.validate(); }) == Errc::DimensionMismatch);
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("LDA per fold never sees the held-out vectors") {
    const LabeledDataset& ds = train_features().data;
    std::vector<LabeledDataset> seen;
    const auto observer = [&](const LabeledDataset& fit) { seen.push_back(fit); };
    const CvResult r = crossval_pipeline(ds, PipelineOptions{}, CvProtocol::LdaPerFold, 10, 1, observer);
    REQUIRE(seen.size() == 10);
    for (int fold = 0; fold < 10; ++fold) {
      const LabeledDataset& fit = seen[static_cast<std::size_t>(fold)];
      int expected_rows = 0;
      for (std::size_t i = 0; i < ds.labels.size(); ++i) {
        if (r.fold_of[i] == fold) {
          for (Eigen::Index row = 0; row < fit.vectors.rows(); ++row)
            CHECK_FALSE(fit.vectors.row(row) == ds.vectors.row(static_cast<Eigen::Index>(i)));
        } else {
          ++expected_rows;
        }
      }
      CHECK(fit.vectors.rows() == expected_rows);
    }

    seen.clear();
    crossval_pipeline(ds, PipelineOptions{}, CvProtocol::LdaPreProjected, 10, 1, observer);
    REQUIRE(seen.size() == 1);
    CHECK(seen[0].size() == ds.size());
  }

  TEST_CASE("protocols share folds and the LDA pipeline wins") {
    const LabeledDataset& ds = train_features().data;
    PipelineOptions raw_opts;
    raw_opts.use_lda = false;
    const CvResult raw = crossval_pipeline(ds, raw_opts, CvProtocol::Raw, 10, 1);
    const CvResult lda = crossval_pipeline(ds, PipelineOptions{}, CvProtocol::LdaPerFold, 10, 1);
    CHECK(raw.fold_of == lda.fold_of);
    CHECK(lda.accuracy_percent >= raw.accuracy_percent + 20.0);
    CHECK(lda.accuracy_percent >= 90.0);
  }

  TEST_CASE("training accuracy is at least the cross-validated accuracy") {
    const FeatureSet& f = train_features();
    for (bool use_lda : {true, false}) {
      PipelineOptions opts;
      opts.use_lda = use_lda;
      const PipelineModel m = train_pipeline(f.data, f.class_names, opts);
      int correct = 0;
      for (Eigen::Index i = 0; i < f.data.vectors.rows(); ++i)
        if (predict_features(m, f.data.vectors.row(i).transpose()).label == f.data.labels[static_cast<std::size_t>(i)])
          ++correct;
      const double train_acc = 100.0 * correct / static_cast<double>(f.data.size());
      const CvResult cv =
          crossval_pipeline(f.data, opts, use_lda ? CvProtocol::LdaPerFold : CvProtocol::Raw, 10, 1);
      CHECK(train_acc >= cv.accuracy_percent);
    }
  }

  TEST_CASE("white noise carries no class information") {
    TempDir dir("noise");
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 0.2);
    for (const char* name : {"a", "b", "c", "d", "e"}) {
      fs::create_directories(dir / name);
      for (int i = 0; i < 8; ++i) {
        std::vector<double> s(5000);
        for (double& v : s) v = n(rng);
        write_wav(dir / (std::string(name) + "/n" + std::to_string(i) + ".wav"), s, 10000);
      }
    }
    const FeatureSet f = extract_corpus(scan_corpus(dir.path()), FrontendConfig{});
    PipelineOptions opts;
    opts.kernel.gamma = 0.5;
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      sum += crossval_pipeline(f.data, opts, CvProtocol::LdaPerFold, 8, seed).accuracy_percent;
    CHECK(sum / 5.0 <= 45.0);  // chance is 20%
  }

  TEST_CASE("front-end mismatch is reported") {
    const PipelineModel m = train_pipeline(train_features().data, train_features().class_names, PipelineOptions{});
    AudioClip clip{std::vector<double>(4000, 0.0), 8000};
    CHECK(thrown_code([&] { predict_clip(m, clip); }) == Errc::SampleRateMismatch);
  }
}

TEST_SUITE("command line") {
  TEST_CASE("predict on a labeled directory prints the accuracy line") {
    TempDir dir("predict");
    const std::string model = (dir / "m.model").string();
    REQUIRE(cli({"train", (corpus() / "train").string(), "-o", model}) == 0);
    std::string out;
    REQUIRE(cli({"predict", model, (corpus() / "test").string()}, &out) == 0);
    CHECK(count_lines_starting(out, "Accuracy = ") == 1);
    CHECK(std::regex_search(out, std::regex(R"(\nAccuracy = [0-9.]+% \(\d+/10\) \(classification\)\n$)")));
    CHECK(out.find("Accuracy = 100% (10/10) (classification)\n") != std::string::npos);

    // Loose files carry no truth, so no accuracy line.
    const fs::path one = corpus() / "test/go/clip_00.wav";
    REQUIRE(fs::exists(one));
    REQUIRE(cli({"predict", model, one.string()}, &out) == 0);
    CHECK(out.find("Accuracy") == std::string::npos);
    CHECK(out.find("predict=1 (go)") != std::string::npos);
  }

  TEST_CASE("crossval echoes its parameters and is reproducible") {
    std::string a;
    std::string b;
    REQUIRE(cli({"crossval", (corpus() / "train").string(), "-g", "2", "-c", "10", "-v", "10"}, &a) == 0);
    REQUIRE(cli({"crossval", (corpus() / "train").string(), "-g", "2", "-c", "10", "-v", "10"}, &b) == 0);
    CHECK(a == b);
    CHECK(a.rfind("crossval: -g 2 -c 10 -v 10 --seed 1", 0) == 0);
    CHECK(std::regex_search(a, std::regex(R"(\nCross Validation Accuracy = [0-9.]+%\n$)")));
  }

  TEST_CASE("compare reports both pipelines") {
    std::string out;
    REQUIRE(cli({"compare", (corpus() / "train").string()}, &out) == 0);
    CHECK(out.find("raw MFCC:  Cross Validation Accuracy = ") != std::string::npos);
    CHECK(out.find("delta (lda - raw): +") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    std::string out;
    std::string err;
    CHECK(cli({"--help"}, &out) == 0);
    CHECK(cli({}, &out, &err) == 1);
    CHECK(cli({"train"}, &out, &err) == 1);
    CHECK(cli({"crossval", (corpus() / "train").string(), "-v", "1"}, &out, &err) == 1);
    CHECK(cli({"crossval", (corpus() / "train").string(), "-g", "-3"}, &out, &err) == 1);
    CHECK(cli({"crossval", "/nonexistent/corpus"}, &out, &err) == 2);
    CHECK(cli({"predict", "/nonexistent/m.model", "x.wav"}, &out, &err) == 2);
    CHECK_FALSE(err.empty());
  }

  TEST_CASE("starved classes warn but still run") {
    TempDir dir("starved");
    for (const char* name : {"a", "b"}) {
      fs::create_directories(dir / name);
      for (int i = 0; i < (name[0] == 'a' ? 6 : 1); ++i) {
        write_wav(dir / (std::string(name) + "/x" + std::to_string(i) + ".wav"),
                  synth_clip(name[0] == 'a' ? 0 : 1, static_cast<std::uint64_t>(i) + 1, SynthOptions{}), 10000);
      }
    }
    std::string out;
    std::string err;
    CHECK(cli({"crossval", dir.path().string(), "-v", "3"}, &out, &err) == 0);
    CHECK(err.find("TooFewSamples") != std::string::npos);
    CHECK(out.find("Cross Validation Accuracy = ") != std::string::npos);
  }
}
