#include "ldasvm/model_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <vector>

#include "ldasvm/error.hpp"

namespace ldasvm {
namespace fs = std::filesystem;

namespace {

std::string fmt_real(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

class Writer {
 public:
  Writer& line(std::string_view s) {
    out_ << s << '\n';
    return *this;
  }

  template <class Vec>
  Writer& reals(std::string_view key, const Vec& v) {
    out_ << key;
    for (Eigen::Index i = 0; i < v.size(); ++i) out_ << ' ' << fmt_real(v(i));
    out_ << '\n';
    return *this;
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view l = text.substr(start, end - start);
      if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
      lines_.push_back(l);
      start = end + 1;
    }
  }

  std::size_t line_no() const { return pos_; }  // 1-based number of the last line read

  std::string_view raw(std::string_view what) {
    if (pos_ >= lines_.size()) {
      throw Error(Errc::TruncatedFile, "line " + std::to_string(pos_ + 1) + ": file ends, expected " +
                                           std::string(what));
    }
    return lines_[pos_++];
  }

  /// Reads the next line, checks its keyword and returns the remaining tokens.
  std::vector<std::string_view> expect(std::string_view keyword) {
    const std::string_view l = raw("'" + std::string(keyword) + "'");
    auto tokens = split(l);
    if (tokens.empty() || tokens.front() != keyword) {
      fail("expected '" + std::string(keyword) + "', found '" + std::string(l) + "'");
    }
    tokens.erase(tokens.begin());
    return tokens;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::MalformedModel, "line " + std::to_string(pos_) + ": " + msg);
  }

  double real(std::string_view tok) const {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      fail("bad number '" + std::string(tok) + "'");
    }
    return v;
  }

  long integer(std::string_view tok) const {
    long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      fail("bad integer '" + std::string(tok) + "'");
    }
    return v;
  }

  void count(const std::vector<std::string_view>& tokens, std::size_t n) const {
    if (tokens.size() != n) {
      fail("expected " + std::to_string(n) + " values, found " + std::to_string(tokens.size()));
    }
  }

  double single_real(std::string_view key) {
    const auto t = expect(key);
    count(t, 1);
    return real(t[0]);
  }

  long single_int(std::string_view key) {
    const auto t = expect(key);
    count(t, 1);
    return integer(t[0]);
  }

  Eigen::VectorXd reals(std::string_view key, Eigen::Index n) {
    const auto t = expect(key);
    count(t, static_cast<std::size_t>(n));
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = real(t[static_cast<std::size_t>(i)]);
    return v;
  }

  static std::vector<std::string_view> split(std::string_view l) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < l.size()) {
      while (i < l.size() && l[i] == ' ') ++i;
      if (i >= l.size()) break;
      std::size_t j = l.find(' ', i);
      if (j == std::string_view::npos) j = l.size();
      out.push_back(l.substr(i, j - i));
      i = j;
    }
    return out;
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const PipelineModel& model) {
  model.validate();
  Writer w;
  w.line(std::string(kModelMagic) + " v" + std::to_string(model.format_version));

  const auto& fe = model.frontend;
  w.line("frontend")
      .line("frame_len_n=" + std::to_string(fe.frame_len_n))
      .line("frame_shift_m=" + std::to_string(fe.frame_shift_m))
      .line("num_filters_k=" + std::to_string(fe.num_filters_k))
      .line("sample_rate_hz=" + std::to_string(fe.sample_rate_hz))
      .line("log_floor=" + fmt_real(fe.log_floor));

  w.line("classes " + std::to_string(model.class_names.size()));
  for (std::size_t i = 0; i < model.class_names.size(); ++i) {
    w.line(std::to_string(i + 1) + " " + model.class_names[i]);
  }

  if (!model.lda) {
    w.line("lda none");
  } else {
    const auto& lda = *model.lda;
    w.line("lda " + std::to_string(lda.input_dim()) + " " + std::to_string(lda.output_dim()) + " " +
           std::to_string(lda.class_means.rows()));
    w.reals("eigenvalues", lda.eigenvalues);
    w.reals("global_mean", lda.global_mean);
    for (Eigen::Index c = 0; c < lda.class_means.rows(); ++c) {
      w.reals("class_mean " + std::to_string(c + 1), lda.class_means.row(c));
    }
    for (Eigen::Index r = 0; r < lda.basis.rows(); ++r) w.reals("basis", lda.basis.row(r));
  }

  const auto& svm = model.svm;
  w.line("svm")
      .line("kernel " + std::string(kernel_name(svm.kernel.kind)))
      .line("gamma " + fmt_real(svm.kernel.gamma))
      .line("degree " + std::to_string(svm.kernel.degree))
      .line("coef0 " + fmt_real(svm.kernel.coef0))
      .line("cost " + fmt_real(svm.cost_c))
      .line("dim " + std::to_string(svm.dim))
      .line("nr_class " + std::to_string(svm.nr_class()));
  std::string labels = "labels";
  for (int l : svm.labels) labels += " " + std::to_string(l);
  w.line(labels);
  for (const auto& pm : svm.pairwise) {
    w.line("pair " + std::to_string(pm.first_label) + " " + std::to_string(pm.second_label));
    w.line("sv " + std::to_string(pm.machine.support_vectors.rows()));
    w.line("rho " + fmt_real(-pm.machine.bias));
    w.reals("alpha_y", pm.machine.alpha_y);
    for (Eigen::Index s = 0; s < pm.machine.support_vectors.rows(); ++s) {
      w.reals("vector", pm.machine.support_vectors.row(s));
    }
  }
  w.line("end");
  return w.str();
}

PipelineModel parse_model(std::string_view text) {
  Reader in(text);
  PipelineModel model;

  const std::string_view magic = in.raw("magic line");
  const std::string prefix = std::string(kModelMagic) + " v";
  if (magic.substr(0, prefix.size()) != prefix) {
    throw Error(Errc::BadMagic, "line 1: not a model file (found '" + std::string(magic) + "')");
  }
  const std::string_view ver = magic.substr(prefix.size());
  int version = 0;
  const auto vres = std::from_chars(ver.data(), ver.data() + ver.size(), version);
  if (vres.ec != std::errc() || vres.ptr != ver.data() + ver.size()) {
    throw Error(Errc::BadMagic, "line 1: malformed version '" + std::string(ver) + "'");
  }
  if (version != kModelFormatVersion) {
    throw Error(Errc::UnsupportedVersion, "line 1: model format v" + std::to_string(version) +
                                              ", this build reads v" +
                                              std::to_string(kModelFormatVersion));
  }
  model.format_version = version;

  in.expect("frontend");
  const auto keyed = [&](std::string_view key) -> std::string_view {
    const std::string_view l = in.raw("'" + std::string(key) + "='");
    const std::string k = std::string(key) + "=";
    if (l.substr(0, k.size()) != k) in.fail("expected '" + k + "'");
    return l.substr(k.size());
  };
  auto& fe = model.frontend;
  fe.frame_len_n = static_cast<int>(in.integer(keyed("frame_len_n")));
  fe.frame_shift_m = static_cast<int>(in.integer(keyed("frame_shift_m")));
  fe.num_filters_k = static_cast<int>(in.integer(keyed("num_filters_k")));
  fe.sample_rate_hz = static_cast<int>(in.integer(keyed("sample_rate_hz")));
  fe.log_floor = in.real(keyed("log_floor"));

  const long classes = in.single_int("classes");
  if (classes < 2) in.fail("need at least two classes");
  for (long c = 1; c <= classes; ++c) {
    const std::string_view l = in.raw("class name line");
    const std::size_t sp = l.find(' ');
    if (sp == std::string_view::npos || in.integer(l.substr(0, sp)) != c) {
      in.fail("expected '<" + std::to_string(c) + "> <name>'");
    }
    model.class_names.emplace_back(l.substr(sp + 1));
  }

  const auto lda_head = in.expect("lda");
  if (!(lda_head.size() == 1 && lda_head[0] == "none")) {
    in.count(lda_head, 3);
    const Eigen::Index d = in.integer(lda_head[0]);
    const Eigen::Index r = in.integer(lda_head[1]);
    const Eigen::Index c = in.integer(lda_head[2]);
    if (d < 1 || r < 1 || c < 1) in.fail("LDA dimensions must be positive");
    LdaModel lda;
    lda.eigenvalues = in.reals("eigenvalues", r);
    lda.global_mean = in.reals("global_mean", d);
    lda.class_means.resize(c, d);
    for (Eigen::Index k = 0; k < c; ++k) {
      auto t = in.expect("class_mean");
      in.count(t, static_cast<std::size_t>(d + 1));
      if (in.integer(t[0]) != k + 1) in.fail("class_mean rows out of order");
      for (Eigen::Index j = 0; j < d; ++j) lda.class_means(k, j) = in.real(t[static_cast<std::size_t>(j + 1)]);
    }
    lda.basis.resize(d, r);
    for (Eigen::Index i = 0; i < d; ++i) lda.basis.row(i) = in.reals("basis", r).transpose();
    model.lda = std::move(lda);
  }

  in.expect("svm");
  auto& svm = model.svm;
  {
    auto t = in.expect("kernel");
    in.count(t, 1);
    try {
      svm.kernel.kind = parse_kernel_kind(t[0]);
    } catch (const Error&) {
      in.fail("unknown kernel '" + std::string(t[0]) + "'");
    }
  }
  svm.kernel.gamma = in.single_real("gamma");
  svm.kernel.degree = static_cast<int>(in.single_int("degree"));
  svm.kernel.coef0 = in.single_real("coef0");
  svm.cost_c = in.single_real("cost");
  svm.dim = in.single_int("dim");
  const long nr_class = in.single_int("nr_class");
  if (nr_class < 2) in.fail("nr_class must be at least 2");
  {
    auto t = in.expect("labels");
    in.count(t, static_cast<std::size_t>(nr_class));
    for (auto tok : t) svm.labels.push_back(static_cast<int>(in.integer(tok)));
  }

  for (std::size_t a = 0; a < svm.labels.size(); ++a) {
    for (std::size_t b = a + 1; b < svm.labels.size(); ++b) {
      PairMachine pm;
      auto head = in.expect("pair");
      in.count(head, 2);
      pm.first_label = static_cast<int>(in.integer(head[0]));
      pm.second_label = static_cast<int>(in.integer(head[1]));
      if (pm.first_label != svm.labels[a] || pm.second_label != svm.labels[b]) {
        in.fail("pair sections out of canonical order");
      }
      const long s = in.single_int("sv");
      if (s < 0) in.fail("negative support vector count");
      pm.machine.kernel = svm.kernel;
      pm.machine.bias = -in.single_real("rho");
      pm.machine.alpha_y = in.reals("alpha_y", s);
      pm.machine.support_vectors.resize(s, svm.dim);
      for (long k = 0; k < s; ++k) pm.machine.support_vectors.row(k) = in.reals("vector", svm.dim).transpose();
      svm.pairwise.push_back(std::move(pm));
    }
  }
  in.expect("end");

  try {
    model.validate();
  } catch (const Error& e) {
    throw Error(Errc::MalformedModel, e.message());
  }
  return model;
}

void save_model(const PipelineModel& model, const fs::path& path) {
  const std::string text = serialize_model(model);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(Errc::Io, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::Io, "cannot move model into place at " + path.string());
  }
}

PipelineModel load_model(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_model(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

}  // namespace ldasvm
