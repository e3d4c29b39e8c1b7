#include "qtrend/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qtrend/numfmt.hpp"

namespace qtrend {

namespace {

constexpr const char* kMagic = "qtrend-checkpoint";
constexpr int kVersion = 1;

const std::vector<std::pair<const char*, int>>& array_layout(const LstmDims& d,
                                                             std::vector<std::pair<const char*, int>>& buf) {
  buf = {{"W_i", d.hidden * d.input}, {"U_i", d.hidden * d.hidden}, {"b_i", d.hidden},
         {"W_f", d.hidden * d.input}, {"U_f", d.hidden * d.hidden}, {"b_f", d.hidden},
         {"W_g", d.hidden * d.input}, {"U_g", d.hidden * d.hidden}, {"b_g", d.hidden},
         {"W_o", d.hidden * d.input}, {"U_o", d.hidden * d.hidden}, {"b_o", d.hidden},
         {"V", d.output * d.hidden},  {"c", d.output}};
  return buf;
}

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw std::runtime_error(origin + ": " + msg);
}

std::string next_line(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) fail(origin, "unexpected end of checkpoint");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace

void write_parameters(std::ostream& out, const LstmParameters& params) {
  const LstmDims& d = params.dims;
  out << "dims " << d.input << ' ' << d.hidden << ' ' << d.output << '\n';
  auto view = parameter_view(params);
  std::vector<std::pair<const char*, int>> layout;
  array_layout(d, layout);
  size_t pos = 0;
  for (const auto& [label, count] : layout) {
    out << label;
    for (int i = 0; i < count; ++i) out << ' ' << format_double_hex(*view[pos++]);
    out << '\n';
  }
}

LstmParameters read_parameters(std::istream& in, const std::string& origin) {
  auto dims_words = words(next_line(in, origin));
  if (dims_words.size() != 4 || dims_words[0] != "dims")
    fail(origin, "expected 'dims <input> <hidden> <output>'");
  LstmDims d;
  auto geti = [&](const std::string& w) {
    auto v = parse_long(w);
    if (!v || *v < 1) fail(origin, "bad dimension '" + w + "'");
    return static_cast<int>(*v);
  };
  d.input = geti(dims_words[1]);
  d.hidden = geti(dims_words[2]);
  d.output = geti(dims_words[3]);

  LstmParameters params = zero_parameters(d);
  auto view = parameter_view(params);
  std::vector<std::pair<const char*, int>> layout;
  array_layout(d, layout);
  size_t pos = 0;
  for (const auto& [label, count] : layout) {
    auto w = words(next_line(in, origin));
    if (w.empty() || w[0] != label)
      fail(origin, std::string("expected array '") + label + "'");
    if (static_cast<int>(w.size()) != count + 1)
      fail(origin, std::string("array '") + label + "' has " + std::to_string(w.size() - 1) +
                       " values, expected " + std::to_string(count));
    for (int i = 0; i < count; ++i) {
      auto v = parse_double_hex(w[static_cast<size_t>(i + 1)]);
      if (!v) fail(origin, std::string("array '") + label + "': bad value '" + w[static_cast<size_t>(i + 1)] + "'");
      *view[pos++] = *v;
    }
  }
  return params;
}

void save_checkpoint(const std::string& path, const TrainedModel& model) {
  std::ostringstream out;
  out << kMagic << ' ' << kVersion << '\n';
  out << "mode " << train_mode_name(model.mode) << '\n';
  out << "window " << model.window << '\n';
  out << "scaler " << kNumFeatures << '\n';
  for (int f = 0; f < kNumFeatures; ++f) {
    const auto& r = model.scaler.ranges[static_cast<size_t>(f)];
    out << (f < kNumFinancial ? kFinancialColumns[static_cast<size_t>(f)] : "sentiment") << ' '
        << format_double_hex(r.min) << ' ' << format_double_hex(r.max) << '\n';
  }
  out << "models " << model.models.size() << '\n';
  for (const auto& m : model.models) write_parameters(out, m);

  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open checkpoint file: " + path);
  file << out.str();
  if (!file) throw std::runtime_error("write failed: " + path);
}

TrainedModel load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint file: " + path);

  auto header = words(next_line(in, path));
  if (header.size() != 2 || header[0] != kMagic)
    fail(path, "not a qtrend checkpoint");
  if (header[1] != std::to_string(kVersion))
    fail(path, "unsupported checkpoint version " + header[1]);

  TrainedModel model;
  auto mode_words = words(next_line(in, path));
  if (mode_words.size() != 2 || mode_words[0] != "mode") fail(path, "expected 'mode <name>'");
  model.mode = parse_train_mode(mode_words[1]);

  auto window_words = words(next_line(in, path));
  if (window_words.size() != 2 || window_words[0] != "window") fail(path, "expected 'window <n>'");
  auto win = parse_long(window_words[1]);
  if (!win || *win < 1) fail(path, "bad window '" + window_words[1] + "'");
  model.window = static_cast<int>(*win);

  auto scaler_words = words(next_line(in, path));
  if (scaler_words.size() != 2 || scaler_words[0] != "scaler" ||
      scaler_words[1] != std::to_string(kNumFeatures))
    fail(path, "expected 'scaler " + std::to_string(kNumFeatures) + "'");
  for (int f = 0; f < kNumFeatures; ++f) {
    auto w = words(next_line(in, path));
    if (w.size() != 3) fail(path, "bad scaler line");
    auto lo = parse_double_hex(w[1]);
    auto hi = parse_double_hex(w[2]);
    if (!lo || !hi) fail(path, "bad scaler range for '" + w[0] + "'");
    model.scaler.ranges[static_cast<size_t>(f)] = {*lo, *hi};
  }

  auto models_words = words(next_line(in, path));
  if (models_words.size() != 2 || models_words[0] != "models") fail(path, "expected 'models <n>'");
  auto count = parse_long(models_words[1]);
  if (!count || (*count != 1 && *count != kNumFinancial))
    fail(path, "model count must be 1 or " + std::to_string(kNumFinancial));
  for (long i = 0; i < *count; ++i) model.models.push_back(read_parameters(in, path));

  bool expect_multi = model.mode == TrainMode::multivariate;
  if (expect_multi != (model.models.size() == 1))
    fail(path, "model count does not match mode");
  return model;
}

}  // namespace qtrend
