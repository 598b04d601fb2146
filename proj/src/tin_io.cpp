#include "tincalc/tin_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tincalc/errors.hpp"

namespace tincalc {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split on whitespace.
  std::vector<std::string> next(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(std::string("unexpected end of input, expected ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + msg);
  }

  Scalar number(const std::string& tok) const {
    try {
      return parse_scalar(tok);
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  std::size_t count(const std::string& tok) const {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      fail("expected a non-negative integer, got '" + tok + "'");
    try {
      return std::stoull(tok);
    } catch (const std::exception&) {
      fail("integer out of range: '" + tok + "'");
    }
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return false;
    }
    return true;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

Tin parse_tin(std::istream& in) {
  LineReader r(in);
  Tin t;
  auto header = r.next("header");
  if (header.size() != 2 || header[0] != "TIN" || header[1] != "1") r.fail("expected 'TIN 1'");

  auto dom = r.next("domain line");
  if (dom.size() != 5 || dom[0] != "domain") r.fail("expected 'domain xmin ymin xmax ymax'");
  t.domain = {r.number(dom[1]), r.number(dom[2]), r.number(dom[3]), r.number(dom[4])};

  auto vh = r.next("vertices line");
  if (vh.size() != 2 || vh[0] != "vertices") r.fail("expected 'vertices N'");
  const std::size_t nv = r.count(vh[1]);
  t.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    auto v = r.next("vertex");
    if (v.size() != 3) r.fail("expected 'x y z'");
    t.vertices.push_back({r.number(v[0]), r.number(v[1]), r.number(v[2])});
  }

  auto th = r.next("triangles line");
  if (th.size() != 2 || th[0] != "triangles") r.fail("expected 'triangles M'");
  const std::size_t nt = r.count(th[1]);
  t.triangles.reserve(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    auto tri = r.next("triangle");
    if (tri.size() != 3) r.fail("expected 'i j k'");
    Triangle idx{r.count(tri[0]), r.count(tri[1]), r.count(tri[2])};
    for (std::size_t k : idx)
      if (k >= nv) r.fail("vertex index " + std::to_string(k) + " out of range");
    t.triangles.push_back(idx);
  }
  if (!r.at_end()) r.fail("trailing content after the triangle list");
  return t;
}

Tin read_tin_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return parse_tin(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit_tin(std::ostream& out, const Tin& t) {
  out << "TIN 1\n";
  out << "domain " << to_string(t.domain.xmin) << ' ' << to_string(t.domain.ymin) << ' '
      << to_string(t.domain.xmax) << ' ' << to_string(t.domain.ymax) << '\n';
  out << "vertices " << t.vertices.size() << '\n';
  for (const auto& v : t.vertices) out << to_string(v.x) << ' ' << to_string(v.y) << ' ' << to_string(v.z) << '\n';
  out << "triangles " << t.triangles.size() << '\n';
  for (const auto& tri : t.triangles) out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
}

void write_tin_file(const std::string& path, const Tin& t) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  emit_tin(out, t);
}

}  // namespace tincalc
