#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "approx.hpp"
#include "ar.hpp"
#include "maps.hpp"
#include "tilting.hpp"

namespace mapscat {

// Line-oriented algebra description. Grammar (one directive per line, '#' starts a comment):
//   field p=<prime>
//   vertices <n>
//   arrow <name>: <i> -> <j>                   vertices are 1-based
//   relation [c*]<path> {(+|-) [c*]<path>} = 0  path = a_k. ... .a_1 (composition order)
//   module <Name> dims=[d_1,...,d_n] {<arrow>=<matrix>}
//   map <Name>: <Module> -> <Module> via [<matrix per vertex>]
// A matrix is a JSON list of rows; [] stands for the zero matrix of the required shape, and
// omitted arrows of a module are zero. field/vertices/arrow/relation precede module/map.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct NamedModule {
  std::string name;
  Module module;
};

struct NamedMapObject {
  std::string name;
  MapObject object;
};

struct AlgebraFile {
  AlgebraPtr algebra;
  std::vector<NamedModule> modules;
  std::vector<NamedMapObject> maps;

  const Module* find_module(const std::string& name) const {
    for (const NamedModule& m : modules)
      if (m.name == name) return &m.module;
    return nullptr;
  }
  const MapObject* find_map(const std::string& name) const {
    for (const NamedMapObject& m : maps)
      if (m.name == name) return &m.object;
    return nullptr;
  }
};

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string text, std::size_t line) : text_(std::move(text)), line_(line) {}

  std::size_t column() const { return pos_ + 1; }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& what) const { throw ParseError(line_, col, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(const std::string& token) {
    skip_space();
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }
  void expect(const std::string& token) {
    if (!accept(token)) fail("expected '" + token + "'");
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                   text_[pos_] == '\''))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }
  std::int64_t integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) fail("expected an integer");
    return std::stoll(text_.substr(start, pos_ - start));
  }
  // A balanced [...] group parsed as JSON.
  nlohmann::json bracketed() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '['");
    std::size_t start = pos_;
    int depth = 0;
    do {
      if (text_[pos_] == '[') ++depth;
      if (text_[pos_] == ']') --depth;
      ++pos_;
    } while (depth > 0 && pos_ < text_.size());
    if (depth != 0) fail_at(start + 1, "unbalanced brackets");
    try {
      return nlohmann::json::parse(text_.substr(start, pos_ - start));
    } catch (const nlohmann::json::exception& e) {
      fail_at(start + 1, std::string("malformed list: ") + e.what());
    }
  }

 private:
  std::string text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline Mat json_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols, const Field& field,
                       const LineCursor& cur, std::size_t col, const std::string& what) {
  if (!j.is_array()) cur.fail_at(col, what + ": matrix must be a list of rows");
  if (j.empty()) return Mat(rows, cols, field);
  if (j.size() != rows) cur.fail_at(col, what + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Mat m(rows, cols, field);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      cur.fail_at(col, what + ": row " + std::to_string(r + 1) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number_integer()) cur.fail_at(col, what + ": entries must be integers");
      m.set(r, c, field.reduce(j[r][c].get<std::int64_t>()));
    }
  }
  return m;
}

}  // namespace detail

// `prime_override` replaces the declared field; entries are reduced modulo the prime in use.
inline AlgebraFile parse_algebra_file(std::istream& in, std::optional<Scalar> prime_override = std::nullopt) {
  using detail::LineCursor;
  Scalar prime = 101;
  std::optional<int> vertex_count;
  Quiver quiver;
  std::vector<Relation> relations;
  std::map<std::string, int> arrow_index;
  AlgebraFile out;
  std::string raw;
  std::size_t line_no = 0;

  auto finish_algebra = [&](LineCursor& cur) {
    if (out.algebra) return;
    if (!vertex_count) cur.fail_at(1, "'vertices' must precede modules and maps");
    quiver.vertex_count = *vertex_count;
    try {
      out.algebra = Algebra::create(Field(prime_override.value_or(prime)), quiver, relations);
    } catch (const std::exception& e) {
      cur.fail_at(1, std::string("invalid algebra: ") + e.what());
    }
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    LineCursor cur(raw, line_no);
    if (cur.at_end()) continue;
    std::size_t keyword_col = cur.column();
    std::string keyword = cur.identifier();

    if (keyword == "field") {
      if (out.algebra) cur.fail_at(keyword_col, "'field' after modules or maps");
      cur.expect("p");
      cur.expect("=");
      std::size_t col = cur.column();
      std::int64_t p = cur.integer();
      if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p))) cur.fail_at(col, "field modulus must be a prime below 65536");
      prime = static_cast<Scalar>(p);
    } else if (keyword == "vertices") {
      if (vertex_count) cur.fail_at(keyword_col, "'vertices' given twice");
      std::size_t col = cur.column();
      std::int64_t n = cur.integer();
      if (n < 1 || n > 64) cur.fail_at(col, "vertex count must be between 1 and 64");
      vertex_count = static_cast<int>(n);
    } else if (keyword == "arrow") {
      if (out.algebra) cur.fail_at(keyword_col, "'arrow' after modules or maps");
      if (!vertex_count) cur.fail_at(keyword_col, "'vertices' must precede arrows");
      std::size_t name_col = cur.column();
      std::string name = cur.identifier();
      if (arrow_index.count(name)) cur.fail_at(name_col, "duplicate arrow name '" + name + "'");
      cur.expect(":");
      std::size_t scol = cur.column();
      std::int64_t s = cur.integer();
      cur.expect("->");
      std::size_t tcol = cur.column();
      std::int64_t t = cur.integer();
      if (s < 1 || s > *vertex_count) cur.fail_at(scol, "vertex out of range");
      if (t < 1 || t > *vertex_count) cur.fail_at(tcol, "vertex out of range");
      arrow_index[name] = static_cast<int>(quiver.arrows.size());
      quiver.arrows.push_back({name, static_cast<int>(s - 1), static_cast<int>(t - 1)});
    } else if (keyword == "relation") {
      if (out.algebra) cur.fail_at(keyword_col, "'relation' after modules or maps");
      Field field(prime_override.value_or(prime));
      Relation rel;
      std::optional<std::pair<int, int>> ends;
      bool first = true;
      while (true) {
        std::int64_t sign = 1;
        if (cur.accept("+"))
          sign = 1;
        else if (cur.accept("-"))
          sign = -1;
        else if (!first)
          break;
        first = false;
        std::int64_t coef = 1;
        std::size_t term_col = cur.column();
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
          coef = cur.integer();
          cur.expect("*");
        }
        Path composed;
        do {
          std::size_t col = cur.column();
          std::string name = cur.identifier();
          auto it = arrow_index.find(name);
          if (it == arrow_index.end()) cur.fail_at(col, "unknown arrow '" + name + "'");
          composed.push_back(it->second);
        } while (cur.accept("."));
        Path path(composed.rbegin(), composed.rend());
        for (std::size_t k = 1; k < path.size(); ++k)
          if (quiver.arrows[static_cast<std::size_t>(path[k - 1])].target != quiver.arrows[static_cast<std::size_t>(path[k])].source)
            cur.fail_at(term_col, "path is not composable");
        std::pair<int, int> e{quiver.arrows[static_cast<std::size_t>(path.front())].source,
                              quiver.arrows[static_cast<std::size_t>(path.back())].target};
        if (ends && *ends != e) cur.fail_at(term_col, "relation terms have different endpoints");
        ends = e;
        Scalar c = field.reduce(sign * coef);
        if (c != 0) rel.terms.push_back({c, path});
      }
      cur.expect("=");
      std::size_t zcol = cur.column();
      if (cur.integer() != 0 || !cur.at_end()) cur.fail_at(zcol, "relation must end with '= 0'");
      if (rel.terms.empty()) cur.fail_at(keyword_col, "relation has no nonzero terms");
      relations.push_back(std::move(rel));
    } else if (keyword == "module") {
      finish_algebra(cur);
      const Algebra& alg = *out.algebra;
      std::size_t name_col = cur.column();
      std::string name = cur.identifier();
      if (out.find_module(name)) cur.fail_at(name_col, "duplicate module name '" + name + "'");
      cur.expect("dims");
      cur.expect("=");
      std::size_t dcol = cur.column();
      nlohmann::json dj = cur.bracketed();
      if (dj.size() != static_cast<std::size_t>(alg.vertex_count())) cur.fail_at(dcol, "dims must list one entry per vertex");
      std::vector<std::size_t> dims;
      for (const auto& d : dj) {
        if (!d.is_number_integer() || d.get<std::int64_t>() < 0) cur.fail_at(dcol, "dims must be nonnegative integers");
        dims.push_back(d.get<std::size_t>());
      }
      std::vector<Mat> maps;
      for (std::size_t a = 0; a < alg.arrow_count(); ++a) {
        const Arrow& ar = alg.arrow(static_cast<int>(a));
        maps.emplace_back(dims[static_cast<std::size_t>(ar.target)], dims[static_cast<std::size_t>(ar.source)], alg.field());
      }
      while (!cur.at_end()) {
        std::size_t acol = cur.column();
        std::string arrow = cur.identifier();
        auto it = arrow_index.find(arrow);
        if (it == arrow_index.end()) cur.fail_at(acol, "unknown arrow '" + arrow + "'");
        cur.expect("=");
        std::size_t mcol = cur.column();
        const Arrow& ar = alg.arrow(it->second);
        maps[static_cast<std::size_t>(it->second)] =
            detail::json_matrix(cur.bracketed(), dims[static_cast<std::size_t>(ar.target)],
                                dims[static_cast<std::size_t>(ar.source)], alg.field(), cur, mcol, "arrow " + arrow);
      }
      try {
        out.modules.push_back({name, Module(out.algebra, dims, maps)});
      } catch (const std::invalid_argument& e) {
        cur.fail_at(name_col, "module " + name + ": " + e.what());
      }
    } else if (keyword == "map") {
      finish_algebra(cur);
      std::size_t name_col = cur.column();
      std::string name = cur.identifier();
      if (out.find_map(name)) cur.fail_at(name_col, "duplicate map name '" + name + "'");
      cur.expect(":");
      std::size_t scol = cur.column();
      const Module* src = out.find_module(cur.identifier());
      if (!src) cur.fail_at(scol, "unknown module");
      cur.expect("->");
      std::size_t tcol = cur.column();
      const Module* tgt = out.find_module(cur.identifier());
      if (!tgt) cur.fail_at(tcol, "unknown module");
      cur.expect("via");
      std::size_t vcol = cur.column();
      nlohmann::json vj = cur.bracketed();
      if (!cur.at_end()) cur.fail("trailing input");
      std::vector<Mat> maps;
      for (int v = 0; v < out.algebra->vertex_count(); ++v) maps.emplace_back(tgt->dim(v), src->dim(v), out.algebra->field());
      if (!vj.empty()) {
        if (vj.size() != maps.size()) cur.fail_at(vcol, "expected one matrix per vertex");
        for (int v = 0; v < out.algebra->vertex_count(); ++v)
          maps[static_cast<std::size_t>(v)] = detail::json_matrix(vj[static_cast<std::size_t>(v)], tgt->dim(v), src->dim(v),
                                                                  out.algebra->field(), cur, vcol,
                                                                  "vertex " + std::to_string(v + 1));
      }
      try {
        out.maps.push_back({name, MapObject(ModuleHom(*src, *tgt, maps))});
      } catch (const std::invalid_argument& e) {
        cur.fail_at(name_col, "map " + name + ": " + e.what());
      }
    } else {
      cur.fail_at(keyword_col, "unknown directive '" + keyword + "'");
    }
  }
  if (!out.algebra) {
    LineCursor end("", line_no + 1);
    finish_algebra(end);
  }
  return out;
}

inline AlgebraFile parse_algebra_text(const std::string& text, std::optional<Scalar> prime_override = std::nullopt) {
  std::istringstream in(text);
  return parse_algebra_file(in, prime_override);
}

inline AlgebraFile load_algebra_file(const std::string& path, std::optional<Scalar> prime_override = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_algebra_file(in, prime_override);
}

// ---- reports ----------------------------------------------------------------------------------

using ModuleLabeler = std::function<std::string(const Module&)>;

inline nlohmann::json ar_quiver_json(const ArQuiver& q, const std::string& side, const ModuleLabeler& label) {
  using nlohmann::json;
  json vertices = json::array(), arrows = json::array(), tau_edges = json::array();
  std::size_t verified = 0;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const ArVertex& v = q.vertices[i];
    if (v.verified) ++verified;
    vertices.push_back({{"index", i},
                        {"label", label(v.module)},
                        {"dims", v.module.dims()},
                        {"projective", v.projective},
                        {"injective", v.injective},
                        {"tau", v.tau ? json(*v.tau) : json(nullptr)},
                        {"sequence_verified", v.verified}});
    if (v.tau) tau_edges.push_back({{"from", i}, {"to", *v.tau}});
  }
  for (const ArArrow& a : q.arrows) arrows.push_back({{"from", a.from}, {"to", a.to}, {"multiplicity", a.multiplicity}});
  return {{"side", side},
          {"complete", q.complete},
          {"vertex_count", q.vertices.size()},
          {"projective_count", q.projective_count()},
          {"vertices", vertices},
          {"arrows", arrows},
          {"tau_edges", tau_edges},
          {"verified_sequences", verified},
          {"warnings", q.warnings}};
}

inline std::string ar_quiver_dot(const ArQuiver& q, const ModuleLabeler& label) {
  std::ostringstream os;
  os << "digraph ar_quiver {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const ArVertex& v = q.vertices[i];
    os << "  v" << i << " [label=\"" << label(v.module) << "\"";
    if (v.projective) os << ", shape=box";
    if (v.injective && !v.projective) os << ", shape=diamond";
    os << "];\n";
  }
  for (const ArArrow& a : q.arrows) {
    os << "  v" << a.from << " -> v" << a.to;
    if (a.multiplicity > 1) os << " [label=\"" << a.multiplicity << "\"]";
    os << ";\n";
  }
  for (std::size_t i = 0; i < q.vertices.size(); ++i)
    if (q.vertices[i].tau) os << "  v" << i << " -> v" << *q.vertices[i].tau << " [style=dashed, constraint=false];\n";
  os << "}\n";
  return os.str();
}

inline nlohmann::json matrix_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().signed_value(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json hom_json(const ModuleHom& h) {
  nlohmann::json out = nlohmann::json::array();
  for (const Mat& m : h.maps()) out.push_back(matrix_json(m));
  return out;
}

inline nlohmann::json map_object_json(const MapObject& x) {
  return {{"label", x.label()}, {"m1", x.m1.dims()}, {"m2", x.m2.dims()}, {"f", hom_json(x.f)}};
}

inline nlohmann::json map_morphism_json(const MapMorphism& h) {
  return {{"source", map_object_json(h.source())},
          {"target", map_object_json(h.target())},
          {"h1", hom_json(h.h1())},
          {"h2", hom_json(h.h2())}};
}

inline nlohmann::json tilting_report_json(const TiltingReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const AxiomCheck& c : r.checks)
    checks.push_back({{"axiom", c.axiom}, {"verdict", verdict_name(c.verdict)}, {"witnesses", c.witnesses}});
  return {{"tilting", r.tilting()}, {"checks", checks}};
}

inline nlohmann::json approx_certificate_json(const ApproxCertificate& c) {
  nlohmann::json tests = nlohmann::json::array();
  for (const TestFactorization& t : c.tests)
    tests.push_back({{"test", t.test}, {"homs_checked", t.homs_checked}, {"factorizations", matrix_json(t.factorizations)}});
  return {{"certified", c.certified}, {"failure", c.failure}, {"tests", tests}};
}

}  // namespace mapscat
