#pragma once

//
// Shared file formats (all JSON):
//   matrix          {"rows": r, "cols": c, "data": [[re, im], ...]}  row-major
//   channel         {"dim": d, "kraus": [matrix, ...]}
//   representation  {"dim": d, "elements": [matrix, ...]}
//
// Loading validates the payload (density matrices, completeness, unitarity
// and closure). Writing goes through JsonWriter, which serializes every
// double with 17 significant digits so scalars round-trip exactly.
//

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "skewinfo/channel.hpp"
#include "skewinfo/density.hpp"
#include "skewinfo/group.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal streaming JSON writer with deterministic layout: two-space pretty
// printing, with compact (single-line) containers for numeric payloads.
class JsonWriter {
 public:
  void begin_object(bool compact = false) { open('{', compact); }
  void end_object() { close('}'); }
  void begin_array(bool compact = false) { open('[', compact); }
  void end_array() { close(']'); }

  void key(std::string_view name) {
    separator();
    append_quoted(name);
    buf_ += ": ";
    pending_key_ = true;
  }

  void value(double v) {
    separator();
    buf_ += format_double(v);
  }
  void value_int(long long v) {
    separator();
    buf_ += std::to_string(v);
  }
  void value_u64(std::uint64_t v) {
    separator();
    buf_ += std::to_string(v);
  }
  void value(std::string_view v) {
    separator();
    append_quoted(v);
  }
  void value(bool v) {
    separator();
    buf_ += v ? "true" : "false";
  }

  const std::string& str() const { return buf_; }

 private:
  void open(char bracket, bool compact) {
    separator();
    buf_ += bracket;
    counts_.push_back(0);
    if (compact) ++compact_depth_;
    compact_flags_.push_back(compact);
  }

  void close(char bracket) {
    const bool had_items = counts_.back() > 0;
    const bool compact = compact_flags_.back();
    counts_.pop_back();
    compact_flags_.pop_back();
    if (compact) --compact_depth_;
    if (had_items && compact_depth_ == 0 && !compact) newline_indent();
    buf_ += bracket;
  }

  void separator() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (counts_.empty()) return;
    if (counts_.back() > 0) buf_ += compact_depth_ > 0 ? ", " : ",";
    ++counts_.back();
    if (compact_depth_ == 0) newline_indent();
  }

  void newline_indent() {
    buf_ += '\n';
    buf_.append(2 * counts_.size(), ' ');
  }

  void append_quoted(std::string_view s) {
    buf_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': buf_ += "\\\""; break;
        case '\\': buf_ += "\\\\"; break;
        case '\n': buf_ += "\\n"; break;
        case '\t': buf_ += "\\t"; break;
        case '\r': buf_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char esc[8];
            std::snprintf(esc, sizeof(esc), "\\u%04x", c);
            buf_ += esc;
          } else {
            buf_ += c;
          }
      }
    }
    buf_ += '"';
  }

  std::string buf_;
  std::vector<int> counts_;
  std::vector<bool> compact_flags_;
  int compact_depth_ = 0;
  bool pending_key_ = false;
};

inline void write_matrix(JsonWriter& w, const Matrix& m) {
  w.begin_object(true);
  w.key("rows");
  w.value_int(m.rows());
  w.key("cols");
  w.value_int(m.cols());
  w.key("data");
  w.begin_array(true);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      w.begin_array(true);
      w.value(m(i, j).real());
      w.value(m(i, j).imag());
      w.end_array();
    }
  }
  w.end_array();
  w.end_object();
}

inline void write_channel(JsonWriter& w, const KrausChannel& channel) {
  w.begin_object();
  w.key("dim");
  w.value_int(channel.dim());
  w.key("kraus");
  w.begin_array();
  for (const Matrix& k : channel.kraus()) write_matrix(w, k);
  w.end_array();
  w.end_object();
}

inline void write_representation(JsonWriter& w, const GroupRepresentation& rep) {
  w.begin_object();
  w.key("dim");
  w.value_int(rep.dim());
  w.key("elements");
  w.begin_array();
  for (const Matrix& u : rep.elements()) write_matrix(w, u);
  w.end_array();
  w.end_object();
}

inline std::string matrix_to_json(const Matrix& m) {
  JsonWriter w;
  write_matrix(w, m);
  return w.str();
}

inline std::string channel_to_json(const KrausChannel& channel) {
  JsonWriter w;
  write_channel(w, channel);
  return w.str();
}

inline std::string representation_to_json(const GroupRepresentation& rep) {
  JsonWriter w;
  write_representation(w, rep);
  return w.str();
}

// --- parsing --- //

inline Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw std::runtime_error("matrix json: expected object with rows, cols, data");
  }
  const auto rows = j.at("rows").get<long long>();
  const auto cols = j.at("cols").get<long long>();
  if (rows < 1 || cols < 1) throw std::runtime_error("matrix json: rows and cols must be positive");
  const auto& data = j.at("data");
  if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols) {
    throw std::runtime_error("matrix json: data length must equal rows*cols");
  }
  Matrix m(rows, cols);
  long long idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++idx) {
      const auto& entry = data.at(static_cast<std::size_t>(idx));
      if (!entry.is_array() || entry.size() != 2) {
        throw std::runtime_error("matrix json: each entry must be a [re, im] pair");
      }
      const double re = entry.at(0).get<double>();
      const double im = entry.at(1).get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::runtime_error("matrix json: non-finite entry");
      }
      m(i, j2) = Complex(re, im);
    }
  }
  return m;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid json in " + path + ": " + e.what());
  }
  return j;
}

inline Matrix load_matrix(const std::string& path) {
  return matrix_from_json(load_json_file(path));
}

inline DensityMatrix load_density(const std::string& path,
                                  const TolerancePolicy& tol = default_tolerance()) {
  return DensityMatrix::validate(load_matrix(path), tol);
}

inline KrausChannel channel_from_json(const nlohmann::json& j,
                                      const TolerancePolicy& tol = default_tolerance()) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("kraus")) {
    throw std::runtime_error("channel json: expected object with dim and kraus");
  }
  const auto dim = j.at("dim").get<long long>();
  std::vector<Matrix> kraus;
  for (const auto& mj : j.at("kraus")) {
    Matrix k = matrix_from_json(mj);
    if (k.rows() != dim || k.cols() != dim) {
      throw std::runtime_error("channel json: Kraus operator dimension differs from dim");
    }
    kraus.push_back(std::move(k));
  }
  return KrausChannel::validate(std::move(kraus), tol);
}

inline KrausChannel load_channel(const std::string& path,
                                 const TolerancePolicy& tol = default_tolerance()) {
  return channel_from_json(load_json_file(path), tol);
}

inline GroupRepresentation representation_from_json(
    const nlohmann::json& j, const TolerancePolicy& tol = default_tolerance()) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("elements")) {
    throw std::runtime_error("representation json: expected object with dim and elements");
  }
  const auto dim = j.at("dim").get<long long>();
  std::vector<Matrix> elements;
  for (const auto& mj : j.at("elements")) {
    Matrix u = matrix_from_json(mj);
    if (u.rows() != dim || u.cols() != dim) {
      throw std::runtime_error("representation json: element dimension differs from dim");
    }
    elements.push_back(std::move(u));
  }
  return GroupRepresentation::validate(std::move(elements), tol);
}

inline GroupRepresentation load_representation(const std::string& path,
                                               const TolerancePolicy& tol = default_tolerance()) {
  return representation_from_json(load_json_file(path), tol);
}

inline void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline void save_matrix(const std::string& path, const Matrix& m) {
  save_text_file(path, matrix_to_json(m) + "\n");
}

inline void save_channel(const std::string& path, const KrausChannel& channel) {
  save_text_file(path, channel_to_json(channel) + "\n");
}

inline void save_representation(const std::string& path, const GroupRepresentation& rep) {
  save_text_file(path, representation_to_json(rep) + "\n");
}

}  // namespace skewinfo
