#pragma once

// JSON encoding of polytopes, norms, graphs and realization results.
// Rationals are canonical "p/q" strings; integers that fit in 64 bits are
// JSON numbers and larger ones are decimal strings. Readers accept either.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thurston/error.hpp"
#include "thurston/linalg.hpp"
#include "thurston/manifold.hpp"
#include "thurston/normball.hpp"
#include "thurston/polytope.hpp"
#include "thurston/realize.hpp"

namespace thurston::io {

using json = nlohmann::json;

/// Schema or value error at a JSON pointer inside a document.
class FieldError : public Error {
 public:
  FieldError(std::string pointer, const std::string& what)
      : Error(ErrorCode::ParseError, "field " + (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

namespace detail {

inline std::string child(const std::string& ptr, std::string_view key) { return ptr + "/" + std::string(key); }
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const json& member(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw FieldError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FieldError(child(ptr, key), "missing");
  return *it;
}

inline const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw FieldError(ptr, "expected an array");
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------- scalars

inline json to_json(const Rational& q) { return q.str(); }

inline json to_json(const BigInt& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return z.get_str();
}

inline Rational rational_from_json(const json& j, const std::string& ptr) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const Error& e) {
    throw FieldError(ptr, e.message());
  }
  throw FieldError(ptr, "expected a rational string such as \"-3/4\"");
}

inline BigInt integer_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    try {
      Rational q = Rational::parse(j.get<std::string>());
      if (q.is_integer()) return q.numerator();
    } catch (const Error&) {
    }
    throw FieldError(ptr, "expected an integer, got \"" + j.get<std::string>() + "\"");
  }
  throw FieldError(ptr, "expected an integer");
}

inline std::size_t count_from_json(const json& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw FieldError(ptr, "expected a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

inline json to_json(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline RatVector vector_from_json(const json& j, const std::string& ptr, std::optional<std::size_t> len = {}) {
  detail::array(j, ptr);
  if (len && j.size() != *len)
    throw FieldError(ptr, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
  RatVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], detail::child(ptr, i)));
  return v;
}

inline json to_json(const std::vector<RatVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

inline std::vector<RatVector> vectors_from_json(const json& j, const std::string& ptr,
                                                std::optional<std::size_t> len = {}) {
  detail::array(j, ptr);
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(vector_from_json(j[i], detail::child(ptr, i), len));
    if (!len) len = out.back().size();
  }
  return out;
}

inline json to_json(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

inline RatMatrix matrix_from_json(const json& j, const std::string& ptr) {
  const auto rows = vectors_from_json(j, ptr);
  if (rows.empty()) return RatMatrix(0, 0);
  return RatMatrix::from_rows(rows, rows.front().size());
}

// ---------------------------------------------------------------- polytopes

inline json to_json(const RatPolytope& p) { return {{"dim", p.dim}, {"vertices", to_json(p.vertices)}}; }

/// Reads the vertex list as given; callers decide whether to take a hull.
inline RatPolytope polytope_from_json(const json& j, const std::string& ptr = "") {
  const std::size_t dim = count_from_json(detail::member(j, ptr, "dim"), detail::child(ptr, "dim"));
  return {dim, vectors_from_json(detail::member(j, ptr, "vertices"), detail::child(ptr, "vertices"), dim)};
}

// ---------------------------------------------------------------- norms

inline json to_json(const SumAbsNorm& nrm) {
  json fs = json::array();
  for (const auto& f : nrm.functionals()) fs.push_back({{"weight", to_json(f.weight)}, {"beta", to_json(f.beta)}});
  return {{"dim", nrm.dim()}, {"functionals", fs}};
}

inline SumAbsNorm norm_from_json(const json& j, const std::string& ptr = "") {
  const std::size_t dim = count_from_json(detail::member(j, ptr, "dim"), detail::child(ptr, "dim"));
  const std::string fptr = detail::child(ptr, "functionals");
  const json& fs = detail::array(detail::member(j, ptr, "functionals"), fptr);
  std::vector<Functional> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string p = detail::child(fptr, i);
    Rational w(1);
    if (fs[i].is_object() && fs[i].contains("weight")) w = rational_from_json(fs[i]["weight"], detail::child(p, "weight"));
    if (w.sign() <= 0) throw FieldError(detail::child(p, "weight"), "weight must be positive");
    out.push_back({w, vector_from_json(detail::member(fs[i], p, "beta"), detail::child(p, "beta"), dim)});
  }
  return SumAbsNorm(dim, std::move(out));
}

// ---------------------------------------------------------------- graphs

inline json to_json(const SimplifiedGraph& g) {
  json vs = json::array();
  for (const auto& v : g.vertices) {
    json s = json::array();
    for (const auto& sp : v.surgeries) s.push_back({to_json(sp.p), to_json(sp.q)});
    vs.push_back({{"genus", v.genus}, {"euler_number", to_json(v.euler_number)}, {"surgeries", s}});
  }
  json es = json::array();
  for (const auto& e : g.edges) es.push_back({{"u", e.u}, {"v", e.v}, {"p", to_json(e.p)}});
  return {{"vertices", vs}, {"edges", es}};
}

/// Parses the schema only; mathematical conditions are left to validate().
inline SimplifiedGraph graph_from_json(const json& j, const std::string& ptr = "") {
  SimplifiedGraph g;
  const std::string vptr = detail::child(ptr, "vertices");
  const json& vs = detail::array(detail::member(j, ptr, "vertices"), vptr);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = detail::child(vptr, i);
    VertexLabel v;
    v.genus = count_from_json(detail::member(vs[i], p, "genus"), detail::child(p, "genus"));
    v.euler_number = rational_from_json(detail::member(vs[i], p, "euler_number"), detail::child(p, "euler_number"));
    if (vs[i].contains("surgeries")) {
      const std::string sptr = detail::child(p, "surgeries");
      const json& ss = detail::array(vs[i]["surgeries"], sptr);
      for (std::size_t k = 0; k < ss.size(); ++k) {
        const std::string kp = detail::child(sptr, k);
        if (!ss[k].is_array() || ss[k].size() != 2) throw FieldError(kp, "expected a pair [p, q]");
        v.surgeries.push_back({integer_from_json(ss[k][0], detail::child(kp, 0)),
                               integer_from_json(ss[k][1], detail::child(kp, 1))});
      }
    }
    g.vertices.push_back(std::move(v));
  }
  if (j.contains("edges")) {
    const std::string eptr = detail::child(ptr, "edges");
    const json& es = detail::array(j["edges"], eptr);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string p = detail::child(eptr, i);
      GraphEdge e;
      e.u = count_from_json(detail::member(es[i], p, "u"), detail::child(p, "u"));
      e.v = count_from_json(detail::member(es[i], p, "v"), detail::child(p, "v"));
      e.p = integer_from_json(detail::member(es[i], p, "p"), detail::child(p, "p"));
      g.edges.push_back(e);
    }
  }
  return g;
}

inline json to_json(const InvariantReport& r) {
  return {{"b1_gamma", r.b1_gamma},     {"null_space_dim", r.null_space_dim}, {"kernel_dim", r.kernel_dim},
          {"b2", r.b2},                 {"fibered", r.fibered}};
}

inline InvariantReport invariants_from_json(const json& j, const std::string& ptr = "") {
  InvariantReport r;
  auto num = [&](const char* k) {
    const json& x = detail::member(j, ptr, k);
    if (!x.is_number_integer()) throw FieldError(detail::child(ptr, k), "expected an integer");
    return x.get<long>();
  };
  r.b1_gamma = num("b1_gamma");
  r.null_space_dim = num("null_space_dim");
  r.kernel_dim = num("kernel_dim");
  r.b2 = num("b2");
  const json& f = detail::member(j, ptr, "fibered");
  if (!f.is_boolean()) throw FieldError(detail::child(ptr, "fibered"), "expected true or false");
  r.fibered = f.get<bool>();
  return r;
}

// ---------------------------------------------------------------- realization

inline json to_json(const RealizationResult& r) {
  json chis = json::array();
  for (const auto& c : r.chi_targets) chis.push_back(to_json(c));
  json ledger = json::array();
  for (const auto& e : r.ledger) {
    json entry = {{"check", e.check}, {"passed", e.passed}};
    if (!e.detail.empty()) entry["detail"] = e.detail;
    ledger.push_back(std::move(entry));
  }
  json genera = json::array();
  for (auto g : r.genera) genera.push_back(g);
  return {{"graph", to_json(r.graph)},
          {"scale_N", to_json(r.scale_N)},
          {"k_multiplier", to_json(r.k_multiplier)},
          {"chi_targets", chis},
          {"kernel", to_json(r.rescaled_kernel)},
          {"target", to_json(r.target)},
          {"genera", genera},
          {"abar", to_json(r.abar)},
          {"verified", r.verified()},
          {"ledger", ledger}};
}

inline RealizationResult realization_from_json(const json& j, const std::string& ptr = "") {
  using detail::child;
  using detail::member;
  RealizationResult r;
  r.graph = graph_from_json(member(j, ptr, "graph"), child(ptr, "graph"));
  r.scale_N = integer_from_json(member(j, ptr, "scale_N"), child(ptr, "scale_N"));
  if (j.contains("k_multiplier")) r.k_multiplier = integer_from_json(j["k_multiplier"], child(ptr, "k_multiplier"));
  r.chi_targets = vector_from_json(member(j, ptr, "chi_targets"), child(ptr, "chi_targets"));
  r.rescaled_kernel = vectors_from_json(member(j, ptr, "kernel"), child(ptr, "kernel"));
  r.target = norm_from_json(member(j, ptr, "target"), child(ptr, "target"));
  const json& gs = detail::array(member(j, ptr, "genera"), child(ptr, "genera"));
  for (std::size_t i = 0; i < gs.size(); ++i) r.genera.push_back(count_from_json(gs[i], child(child(ptr, "genera"), i)));
  r.abar = matrix_from_json(member(j, ptr, "abar"), child(ptr, "abar"));
  const std::string lptr = child(ptr, "ledger");
  const json& ls = detail::array(member(j, ptr, "ledger"), lptr);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string p = child(lptr, i);
    const json& c = member(ls[i], p, "check");
    const json& ok = member(ls[i], p, "passed");
    if (!c.is_string() || !ok.is_boolean()) throw FieldError(p, "expected {\"check\": string, \"passed\": bool}");
    r.ledger.push_back({c.get<std::string>(), ok.get<bool>(), ls[i].value("detail", std::string())});
  }
  return r;
}

// ---------------------------------------------------------------- documents

/// Parsed document plus the source line of every value, keyed by JSON pointer.
struct Document {
  json value;
  std::map<std::string, std::size_t> lines;

  /// Line of the value at `pointer`, or of its nearest recorded ancestor.
  std::size_t line_of(std::string pointer) const {
    for (;;) {
      auto it = lines.find(pointer);
      if (it != lines.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer.erase(pointer.rfind('/'));
    }
  }
};

namespace detail {

inline std::string escape_pointer_token(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

/// Walks syntactically valid JSON text and records where each value starts.
class LineMapper {
 public:
  explicit LineMapper(std::string_view text) : text_(text) {}

  std::map<std::string, std::size_t> run() {
    skip_ws();
    value("");
    return std::move(lines_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::map<std::string, std::size_t> lines_;

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() {
    if (peek() == '\n') ++line_;
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  std::string string_token() {
    std::string out;
    advance();  // opening quote
    while (pos_ < text_.size() && peek() != '"') {
      if (peek() == '\\') {
        advance();
        out += peek();
        advance();
        continue;
      }
      out += peek();
      advance();
    }
    advance();  // closing quote
    return out;
  }

  void value(const std::string& ptr) {
    lines_.emplace(ptr, line_);
    const char c = peek();
    if (c == '{') {
      advance();
      skip_ws();
      while (pos_ < text_.size() && peek() != '}') {
        const std::string key = string_token();
        skip_ws();
        advance();  // ':'
        skip_ws();
        value(ptr + "/" + escape_pointer_token(key));
        skip_ws();
        if (peek() == ',') advance();
        skip_ws();
      }
      advance();
    } else if (c == '[') {
      advance();
      skip_ws();
      for (std::size_t i = 0; pos_ < text_.size() && peek() != ']'; ++i) {
        value(ptr + "/" + std::to_string(i));
        skip_ws();
        if (peek() == ',') advance();
        skip_ws();
      }
      advance();
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' &&
             peek() != ']' && peek() != '}')
        advance();
    }
  }
};

}  // namespace detail

/// Parses JSON text; syntax errors become ParseError with a line number.
inline Document parse_document(const std::string& text) {
  Document doc;
  try {
    doc.value = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  doc.lines = detail::LineMapper(text).run();
  return doc;
}

}  // namespace thurston::io
