#include "pptkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include <json.hpp>

namespace pptkit {

using nlohmann::json;

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw std::invalid_argument("not a decimal literal: '" + std::string(s) + "'");
  }
  return x;
}

double parse_imag_coefficient(std::string_view s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

// 1-based line and column of a byte offset.
std::pair<int, int> position_of(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag_coefficient(body)};
  return {parse_real(body.substr(0, split)), parse_imag_coefficient(body.substr(split))};
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

SignMatrix parse_sign_matrix(std::string_view text) {
  const auto all = parse_sign_matrices(text);
  if (all.size() != 1) {
    throw ParseError("expected exactly one matrix, found " + std::to_string(all.size()), 0, 0);
  }
  return all.front();
}

std::vector<SignMatrix> parse_sign_matrices(std::string_view text) {
  std::vector<SignMatrix> out;
  std::vector<std::string> rows;
  int block_line = 0;
  auto flush = [&] {
    if (rows.empty()) return;
    try {
      out.push_back(SignMatrix::from_strings(rows));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), block_line, 1);
    }
    rows.clear();
  };
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (trim(raw).empty()) flush();
      continue;
    }
    if (line.find(':') != std::string_view::npos) continue;
    for (std::size_t c = 0; c < line.size(); ++c)
      if (line[c] != '+' && line[c] != '-') {
        const auto offset = static_cast<std::size_t>(line.data() - raw.data()) + c;
        throw ParseError(std::string("unexpected character '") + line[c] + "' in sign matrix", line_no,
                         static_cast<int>(offset) + 1);
      }
    if (!rows.empty() && line.size() != rows.front().size()) {
      throw ParseError("row length " + std::to_string(line.size()) + " differs from " +
                           std::to_string(rows.front().size()),
                       line_no, 1);
    }
    if (rows.empty()) block_line = line_no;
    rows.emplace_back(line);
  }
  flush();
  if (out.empty()) throw ParseError("no sign matrix found", 0, 0);
  return out;
}

std::string format_sign_matrix(const SignMatrix& m) { return m.to_string() + "\n"; }

namespace {

using PathItem = std::variant<std::string, std::size_t>;
using Path = std::vector<PathItem>;

std::string path_string(const Path& path) {
  std::string s;
  for (const auto& item : path) {
    if (const auto* key = std::get_if<std::string>(&item)) {
      s += (s.empty() ? "" : ".") + *key;
    } else {
      s += "[" + std::to_string(std::get<std::size_t>(item)) + "]";
    }
  }
  return s.empty() ? "document" : s;
}

// Byte offset of the value at `path` in a document already known to be valid JSON.
class Locator {
 public:
  explicit Locator(std::string_view text) : t_(text) {}

  std::size_t find(const Path& path) {
    i_ = 0;
    ws();
    for (const auto& item : path) {
      const std::size_t here = i_;
      if (!descend(item)) return here;
    }
    return i_;
  }

 private:
  void ws() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n' || t_[i_] == '\r')) ++i_;
  }
  std::string string() {
    std::string out;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\') ++i_;
      if (i_ < t_.size()) out += t_[i_++];
    }
    ++i_;
    return out;
  }
  void skip() {
    ws();
    if (i_ >= t_.size()) return;
    const char c = t_[i_];
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      while (i_ < t_.size() && t_[i_] != close) {
        if (c == '{') {
          string();
          ws();
          ++i_;  // ':'
        }
        skip();
        ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
        ws();
      }
      ++i_;
    } else {
      while (i_ < t_.size() && std::string_view(",]} \t\r\n").find(t_[i_]) == std::string_view::npos) ++i_;
    }
  }
  bool descend(const PathItem& item) {
    ws();
    if (const auto* key = std::get_if<std::string>(&item)) {
      if (i_ >= t_.size() || t_[i_] != '{') return false;
      ++i_;
      for (;;) {
        ws();
        if (i_ >= t_.size() || t_[i_] != '"') return false;
        const std::string k = string();
        ws();
        ++i_;  // ':'
        ws();
        if (k == *key) return true;
        skip();
        ws();
        if (i_ >= t_.size() || t_[i_] != ',') return false;
        ++i_;
      }
    }
    const std::size_t index = std::get<std::size_t>(item);
    if (i_ >= t_.size() || t_[i_] != '[') return false;
    ++i_;
    for (std::size_t k = 0;; ++k) {
      ws();
      if (k == index) return i_ < t_.size() && t_[i_] != ']';
      skip();
      ws();
      if (i_ >= t_.size() || t_[i_] != ',') return false;
      ++i_;
    }
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

class SpecReader {
 public:
  explicit SpecReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const Path& path, const std::string& message) const {
    const auto [line, col] = position_of(text_, Locator(text_).find(path));
    throw ParseError(path_string(path) + ": " + message, line, col);
  }

  int integer(const json& j, const Path& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(path, "integer out of range");
    return static_cast<int>(v);
  }

  const json& array(const json& j, const Path& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  void only_keys(const json& j, const Path& path, std::initializer_list<std::string_view> keys) const {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        Path p = path;
        p.emplace_back(k);
        fail(p, "unknown field");
      }
    }
  }

  ProblemSpec read() const {
    json doc;
    try {
      doc = json::parse(text_);
    } catch (const json::parse_error& e) {
      const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
      const auto [line, col] = position_of(text_, offset);
      std::string what = e.what();
      if (const auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
      throw ParseError(what, line, col);
    }
    only_keys(doc, {}, {"dims", "constraints"});
    if (!doc.contains("dims")) fail({}, "missing field 'dims'");

    ProblemSpec spec;
    const json& dims = array(doc["dims"], {"dims"});
    if (dims.empty()) fail({"dims"}, "at least one party is required");
    if (dims.size() > static_cast<std::size_t>(PartySet::kMaxParties)) fail({"dims"}, "too many parties");
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const int d = integer(dims[j], {"dims", j});
      if (d < 2) fail({"dims", j}, "local dimension must be at least 2");
      spec.dims.push_back(d);
    }
    const int n = spec.parties();
    std::uint64_t total = 0;
    try {
      total = total_dimension(spec.dims);
    } catch (const std::exception& e) {
      fail({"dims"}, e.what());
    }

    if (doc.contains("constraints")) {
      const json& cs = array(doc["constraints"], {"constraints"});
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const Path base{"constraints", i};
        only_keys(cs[i], base, {"subset", "codim", "complement_basis"});
        Constraint c;
        Path sp = base;
        sp.emplace_back("subset");
        if (!cs[i].contains("subset")) fail(base, "missing field 'subset'");
        const json& subset = array(cs[i]["subset"], sp);
        std::uint64_t bits = 0;
        for (std::size_t k = 0; k < subset.size(); ++k) {
          Path p = sp;
          p.emplace_back(k);
          const int party = integer(subset[k], p);
          if (party < 1 || party > n) fail(p, "party index " + std::to_string(party) + " outside [1, " + std::to_string(n) + "]");
          if (bits >> (party - 1) & 1U) fail(p, "party index repeated");
          bits |= std::uint64_t{1} << (party - 1);
        }
        c.subset = PartySet(bits);

        Path cp = base;
        cp.emplace_back("codim");
        if (!cs[i].contains("codim")) fail(base, "missing field 'codim'");
        c.codim = integer(cs[i]["codim"], cp);
        if (c.codim < 1 || static_cast<std::uint64_t>(c.codim) > total) {
          fail(cp, "codim must lie in [1, " + std::to_string(total) + "]");
        }

        if (cs[i].contains("complement_basis")) {
          Path bp = base;
          bp.emplace_back("complement_basis");
          const json& basis = array(cs[i]["complement_basis"], bp);
          if (basis.size() != static_cast<std::size_t>(c.codim)) fail(bp, "expected codim = " + std::to_string(c.codim) + " vectors");
          std::vector<ComplexVector> vectors;
          for (std::size_t v = 0; v < basis.size(); ++v) {
            Path vp = bp;
            vp.emplace_back(v);
            const json& vec = array(basis[v], vp);
            if (vec.size() != total) fail(vp, "expected " + std::to_string(total) + " entries");
            ComplexVector x(static_cast<Eigen::Index>(total));
            for (std::size_t a = 0; a < vec.size(); ++a) {
              Path ep = vp;
              ep.emplace_back(a);
              try {
                if (vec[a].is_string()) {
                  x[static_cast<Eigen::Index>(a)] = parse_complex(vec[a].get<std::string>());
                } else if (vec[a].is_number()) {
                  x[static_cast<Eigen::Index>(a)] = vec[a].get<double>();
                } else {
                  fail(ep, "expected a complex number string");
                }
              } catch (const std::invalid_argument& e) {
                fail(ep, e.what());
              }
            }
            vectors.push_back(std::move(x));
          }
          c.complement_basis = std::move(vectors);
        }
        spec.constraints.push_back(std::move(c));
      }
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      fail({}, e.what());
    }
    return spec;
  }

 private:
  std::string_view text_;
};

}  // namespace

ProblemSpec parse_spec(std::string_view text) { return SpecReader(text).read(); }

std::string format_spec(const ProblemSpec& spec) {
  json doc;
  doc["dims"] = spec.dims;
  doc["constraints"] = json::array();
  for (const auto& c : spec.constraints) {
    json jc;
    jc["subset"] = c.subset.indices();
    jc["codim"] = c.codim;
    if (c.complement_basis) {
      json basis = json::array();
      for (const auto& v : *c.complement_basis) {
        json entries = json::array();
        for (Eigen::Index a = 0; a < v.size(); ++a) entries.push_back(format_complex(v[a]));
        basis.push_back(std::move(entries));
      }
      jc["complement_basis"] = std::move(basis);
    }
    doc["constraints"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

DensityMatrix parse_density_matrix(std::string_view text) {
  std::vector<int> dims;
  ComplexMatrix m;
  std::vector<char> seen;
  Eigen::Index total = 0;
  int line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const int col0 = static_cast<int>(line.data() - raw.data()) + 1;

    std::istringstream in{std::string(line)};
    if (!have_header) {
      std::string key;
      in >> key;
      if (key != "dims:") throw ParseError("expected header 'dims: d1 ... dn'", line_no, col0);
      int d;
      while (in >> d) {
        if (d < 2) throw ParseError("local dimension must be at least 2", line_no, col0);
        dims.push_back(d);
      }
      if (!in.eof() || dims.empty()) throw ParseError("malformed dims header", line_no, col0);
      try {
        total = static_cast<Eigen::Index>(total_dimension(dims));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), line_no, col0);
      }
      if (total > 4096) throw ParseError("total dimension above 4096 is not supported", line_no, col0);
      m = ComplexMatrix::Zero(total, total);
      seen.assign(static_cast<std::size_t>(total * total), 0);
      have_header = true;
      continue;
    }
    std::string fields[4], extra;
    in >> fields[0] >> fields[1] >> fields[2] >> fields[3];
    if (fields[3].empty() || (in >> extra)) throw ParseError("expected 'row col re im'", line_no, col0);
    Eigen::Index r = 0, c = 0;
    double re = 0.0, im = 0.0;
    try {
      const double rd = parse_real(fields[0]), cd = parse_real(fields[1]);
      if (rd != std::floor(rd) || cd != std::floor(cd)) throw std::invalid_argument("indices must be integers");
      r = static_cast<Eigen::Index>(rd);
      c = static_cast<Eigen::Index>(cd);
      re = parse_real(fields[2]);
      im = parse_real(fields[3]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, col0);
    }
    if (r < 0 || c < 0 || r >= total || c >= total) throw ParseError("index outside [0, d)", line_no, col0);
    auto& flag = seen[static_cast<std::size_t>(r * total + c)];
    if (flag) throw ParseError("entry listed twice", line_no, col0);
    flag = 1;
    m(r, c) = Complex(re, im);
  }
  if (!have_header) throw ParseError("missing 'dims:' header", 0, 0);
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) {
      throw ParseError("missing entry " + std::to_string(k / total) + " " + std::to_string(k % total), line_no, 1);
    }
  try {
    return DensityMatrix(dims, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

std::string format_density_matrix(const DensityMatrix& rho) {
  std::string out = "dims:";
  for (int d : rho.dims()) out += " " + std::to_string(d);
  out += "\n";
  for (Eigen::Index r = 0; r < rho.dimension(); ++r)
    for (Eigen::Index c = 0; c < rho.dimension(); ++c) {
      const Complex z = rho(r, c);
      out += std::to_string(r) + " " + std::to_string(c) + " " + format_double(z.real()) + " " +
             format_double(z.imag()) + "\n";
    }
  return out;
}

}  // namespace pptkit
