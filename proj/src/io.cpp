#include "rbma/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "rbma/error.hpp"
#include "rbma/random.hpp"

namespace rbma::io {

namespace {

constexpr std::string_view kHeader = "Node1,Node2";
constexpr std::string_view kParamMagic = "RBMP v1";

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto b = s.find_first_not_of(" \t\r", pos);
    if (b == std::string_view::npos) break;
    auto e = s.find_first_of(" \t\r", b);
    if (e == std::string_view::npos) e = s.size();
    out.push_back(s.substr(b, e - b));
    pos = e;
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  return in;
}

// Writes `content` to `path` only after the content is fully formed.
void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

double parse_number(std::string_view tok, std::size_t line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": non-numeric token '" +
                                       std::string(tok) + "'");
  }
  return x;
}

std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t x = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": bad dimension '" +
                                       std::string(tok) + "'");
  }
  return x;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error(ErrorCode::kInvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

std::vector<HistoryRecord> parse_history(std::istream& in) {
  std::vector<HistoryRecord> records;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const bool first = !seen_content;
    seen_content = true;

    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected 2 comma-separated fields");
    }
    const auto left = trim(line.substr(0, comma));
    const auto right = trim(line.substr(comma + 1));
    if (first && left == "Node1" && right == "Node2") continue;
    if (left.empty() || right.empty()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": empty field");
    }
    records.push_back({std::string(left), std::string(right)});
  }
  if (records.empty()) throw Error(ErrorCode::kParse, "history file contains no records");
  return records;
}

std::vector<HistoryRecord> read_history(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return parse_history(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_history(const std::filesystem::path& path, const std::vector<HistoryRecord>& records) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.left_id;
    out += ',';
    out += r.right_id;
    out += '\n';
  }
  write_file(path, out);
}

void write_assignment(std::ostream& out, const Instance& inst, const BinaryMatrix& x) {
  if (x.rows() != inst.rows() || x.cols() != inst.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "assignment shape does not match instance");
  }
  const auto report = check_feasibility(x, FeasibilityMode::kRowOnly);
  if (!report.feasible) {
    throw Error(ErrorCode::kInfeasible, "refusing to write infeasible assignment: " + report.describe());
  }
  out << kHeader << '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    const auto j = static_cast<std::size_t>(std::find(row.begin(), row.end(), 1) - row.begin());
    out << inst.left_labels()[i] << ',' << inst.right_labels()[j] << '\n';
  }
}

void write_assignment(const std::filesystem::path& path, const Instance& inst,
                      const BinaryMatrix& x) {
  std::ostringstream buf;
  write_assignment(buf, inst, x);
  write_file(path, buf.str());
}

BinaryMatrix assignment_matrix(const Instance& inst, const std::vector<HistoryRecord>& pairs) {
  std::unordered_map<std::string, std::size_t> left, right;
  for (std::size_t i = 0; i < inst.rows(); ++i) left.emplace(inst.left_labels()[i], i);
  for (std::size_t j = 0; j < inst.cols(); ++j) right.emplace(inst.right_labels()[j], j);
  BinaryMatrix x(inst.rows(), inst.cols(), 0);
  for (const auto& p : pairs) {
    const auto li = left.find(p.left_id);
    const auto rj = right.find(p.right_id);
    if (li == left.end()) throw Error(ErrorCode::kParse, "unknown left label '" + p.left_id + "'");
    if (rj == right.end()) throw Error(ErrorCode::kParse, "unknown right label '" + p.right_id + "'");
    auto& cell = x(li->second, rj->second);
    if (cell) {
      throw Error(ErrorCode::kParse, "duplicate pair '" + p.left_id + "," + p.right_id + "'");
    }
    cell = 1;
  }
  return x;
}

void write_weight_matrix(std::ostream& out, const Instance& inst) {
  out << "label";
  for (const auto& r : inst.right_labels()) out << ',' << r;
  out << '\n';
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    out << inst.left_labels()[i];
    for (std::size_t j = 0; j < inst.cols(); ++j) out << ',' << format_double(inst.weights()(i, j));
    out << '\n';
  }
}

void write_trace(std::ostream& out, const RbmaaTrace& trace) {
  out << "iter,rows_resolved,threshold\n";
  for (std::size_t k = 0; k < trace.outer_iterations; ++k) {
    out << (k + 1) << ',' << trace.rows_resolved_per_iter[k] << ','
        << format_double(trace.threshold_per_iter[k]) << '\n';
  }
}

void write_params(std::ostream& out, const RbmParams& p) {
  p.validate();
  auto line = [&](std::span<const double> xs) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k) out << ' ';
      out << format_double(xs[k]);
    }
    out << '\n';
  };
  out << kParamMagic << '\n' << p.visible() << ' ' << p.hidden() << '\n';
  for (std::size_t i = 0; i < p.visible(); ++i) line(p.conn.row(i));
  line(p.vis_bias);
  line(p.hid_bias);
}

RbmParams parse_params(std::istream& in) {
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    if (!trim(raw).empty()) lines.push_back(raw);
  }
  if (lines.empty()) throw Error(ErrorCode::kParse, "empty parameter file");

  const auto magic = trim(lines[0]);
  if (magic != kParamMagic) {
    if (magic.starts_with("RBMP")) {
      throw Error(ErrorCode::kVersion, "unsupported parameter file version '" + std::string(magic) + "'");
    }
    throw Error(ErrorCode::kParse, "line 1: not a parameter file");
  }
  if (lines.size() < 2) throw Error(ErrorCode::kParse, "missing dimension line");
  const auto dims = split_ws(lines[1]);
  if (dims.size() != 2) throw Error(ErrorCode::kParse, "line 2: expected 'c h'");
  const std::size_t c = parse_count(dims[0], 2);
  const std::size_t h = parse_count(dims[1], 2);
  if (c == 0 || h == 0) throw Error(ErrorCode::kDimension, "line 2: dimensions must be >= 1");
  if (lines.size() != c + 4) {
    throw Error(ErrorCode::kDimension, "declared " + std::to_string(c) + "x" + std::to_string(h) +
                                           " needs " + std::to_string(c + 2) +
                                           " value lines, found " +
                                           std::to_string(lines.size() - 2));
  }

  auto values = [&](std::size_t idx, std::size_t want) {
    const auto toks = split_ws(lines[idx]);
    if (toks.size() != want) {
      throw Error(ErrorCode::kDimension, "line " + std::to_string(idx + 1) + ": expected " +
                                             std::to_string(want) + " values, found " +
                                             std::to_string(toks.size()));
    }
    RealVector out;
    out.reserve(want);
    for (auto t : toks) out.push_back(parse_number(t, idx + 1));
    return out;
  };

  RbmParams p{RealMatrix(c, h, 0.0), {}, {}};
  for (std::size_t i = 0; i < c; ++i) {
    const auto row = values(2 + i, h);
    std::copy(row.begin(), row.end(), p.conn.row(i).begin());
  }
  p.vis_bias = values(2 + c, c);
  p.hid_bias = values(3 + c, h);
  p.validate();
  return p;
}

void save_params(const std::filesystem::path& path, const RbmParams& p) {
  std::ostringstream buf;
  write_params(buf, p);
  write_file(path, buf.str());
}

RbmParams load_params(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_params(in);
}

std::vector<HistoryRecord> generate_synthetic(std::size_t n, std::size_t m,
                                              std::size_t records_per_row,
                                              double concentration, std::uint64_t seed) {
  if (n == 0 || m == 0) throw Error(ErrorCode::kInvalidArgument, "synthetic: n and m must be >= 1");
  if (records_per_row == 0) throw Error(ErrorCode::kInvalidArgument, "synthetic: records_per_row must be >= 1");
  if (!(concentration > 0.0 && concentration <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic: concentration must lie in (0,1]");
  }
  Rng rng(seed);
  std::vector<HistoryRecord> out;
  out.reserve(n * records_per_row);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string left = "A" + std::to_string(i + 1);
    const std::size_t home = rng.below(m);
    for (std::size_t k = 0; k < records_per_row; ++k) {
      std::size_t col = home;
      if (m > 1 && !(rng.uniform() < concentration)) {
        col = rng.below(m - 1);
        if (col >= home) ++col;
      }
      out.push_back({left, "B" + std::to_string(col + 1)});
    }
  }
  return out;
}

}  // namespace rbma::io
