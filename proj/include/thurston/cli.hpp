#pragma once

// Command dispatch for the `thurston` executable. Argument parsing lives in
// tools/main.cpp; everything here works on a parsed Command and two streams,
// so it can be driven directly from tests.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thurston/error.hpp"
#include "thurston/json_io.hpp"
#include "thurston/manifold.hpp"
#include "thurston/normball.hpp"
#include "thurston/polytope.hpp"
#include "thurston/properties.hpp"
#include "thurston/realize.hpp"

namespace thurston::cli {

enum class Format { Json, Off, Csv };

struct Command {
  std::string subcommand;           ///< check|matrix|kernel|norm-eval|ball|realize|complete|weights|verify
  std::vector<std::string> inputs;  ///< "-" reads standard input
  std::optional<std::string> output;
  Format format = Format::Json;
  bool oracle = false;
  bool verify_equal = false;
  bool fibered = true;
  std::optional<std::vector<std::size_t>> genera;
  std::size_t max_k = kDefaultMaxTerms;
  std::uint64_t seed = 0;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int infeasible = 1;
inline constexpr int invalid_input = 2;
inline constexpr int resource_limit = 3;
}  // namespace exit_code

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ResourceLimit: return exit_code::resource_limit;
    case ErrorCode::NotRealizable:
    case ErrorCode::Unachievable:
    case ErrorCode::WitnessFailure: return exit_code::infeasible;
    default: return exit_code::invalid_input;
  }
}

/// Comma-separated nonnegative integers, e.g. "0,2,1".
inline std::vector<std::size_t> parse_genera(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw Error(ErrorCode::ParseError, "--genera expects comma-separated nonnegative integers, got \"" + text + "\"");
    out.push_back(std::stoul(item));
  }
  return out;
}

namespace detail {

struct Input {
  std::string path;
  io::Document doc;
};

inline Input load(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot open input file " + path);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  try {
    return {path, io::parse_document(text)};
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.message());
  }
}

/// Error attributed to a position in an input file.
class Located : public Error {
 public:
  Located(ErrorCode c, const std::string& where, const std::string& what) : Error(c, what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Runs a schema reader and turns FieldErrors into file:line diagnostics.
template <class F>
auto read(const Input& in, F&& reader) {
  try {
    return reader(in.doc.value);
  } catch (const io::FieldError& e) {
    throw Located(ErrorCode::ParseError, in.path + ":" + std::to_string(in.doc.line_of(e.pointer())), e.message());
  }
}

inline std::string fixed12(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", q.to_double());
  return buf;
}

/// Vertex indices of a 2D polygon or a 3D facet, in cyclic order around the
/// facet centre (angle measured in a basis of the facet plane).
inline std::vector<std::size_t> cyclic_order(const RatPolytope& p, std::vector<std::size_t> idx,
                                             const RatVector& normal) {
  const std::size_t n = p.dim;
  std::vector<double> c(n, 0.0);
  for (auto i : idx)
    for (std::size_t k = 0; k < n; ++k) c[k] += p.vertices[i][k].to_double() / static_cast<double>(idx.size());
  auto vec = [&](std::size_t i) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = p.vertices[i][k].to_double() - c[k];
    return v;
  };
  std::vector<double> u = vec(idx.front()), w(n, 0.0);
  if (n == 3) {
    const double nx = normal[0].to_double(), ny = normal[1].to_double(), nz = normal[2].to_double();
    w = {ny * u[2] - nz * u[1], nz * u[0] - nx * u[2], nx * u[1] - ny * u[0]};
  } else {
    w = {-u[1], u[0]};
  }
  std::vector<std::pair<double, std::size_t>> keyed;
  for (auto i : idx) {
    const auto v = vec(i);
    double a = 0, b = 0;
    for (std::size_t k = 0; k < n; ++k) {
      a += v[k] * u[k];
      b += v[k] * w[k];
    }
    keyed.push_back({std::atan2(b, a), i});
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t k = 0; k < keyed.size(); ++k) idx[k] = keyed[k].second;
  return idx;
}

inline std::string to_off(const RatPolytope& p) {
  if (p.dim != 2 && p.dim != 3)
    throw Error(ErrorCode::InvalidArgument, "OFF output needs a polytope of dimension 2 or 3");
  std::ostringstream os;
  os << "OFF\n";
  os << "# coordinates are 12-significant-digit decimal approximations of exact rationals;\n";
  os << "# the JSON output is authoritative\n";
  std::vector<std::vector<std::size_t>> faces;
  if (p.dim == 2) {
    std::vector<std::size_t> all(p.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    faces.push_back(cyclic_order(p, all, {}));
  } else {
    for (const auto& f : face_fan(p).facets) faces.push_back(cyclic_order(p, f.vertices, f.normal));
  }
  std::size_t edge_count = p.vertices.size();
  if (p.dim == 3) {
    edge_count = 0;
    for (const auto& f : faces) edge_count += f.size();
    edge_count /= 2;
  }
  os << p.vertices.size() << ' ' << faces.size() << ' ' << edge_count << '\n';
  for (const auto& v : p.vertices) {
    for (std::size_t k = 0; k < 3; ++k) os << (k ? " " : "") << (k < p.dim ? fixed12(v[k]) : std::string("0"));
    os << '\n';
  }
  for (const auto& f : faces) {
    os << f.size();
    for (auto i : f) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

inline std::string to_csv(const std::vector<RatVector>& rows) {
  std::string s;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i].str();
    s += '\n';
  }
  return s;
}

inline std::string pretty(const io::json& j) { return j.dump(2) + "\n"; }

/// Input betas for `realize`: {"betas": [...], "genera": [...]} or a norm document.
struct RealizeInput {
  std::vector<RatVector> betas;
  std::optional<std::vector<std::size_t>> genera;
};

inline RealizeInput realize_input(const io::json& j) {
  RealizeInput in;
  if (j.is_object() && j.contains("functionals")) {
    in.betas = io::norm_from_json(j).folded();
    return in;
  }
  in.betas = io::vectors_from_json(io::detail::member(j, "", "betas"), "/betas");
  if (j.contains("genera")) {
    const auto& gs = io::detail::array(j["genera"], "/genera");
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < gs.size(); ++i) g.push_back(io::count_from_json(gs[i], "/genera/" + std::to_string(i)));
    in.genera = std::move(g);
  }
  return in;
}

}  // namespace detail

/// Executes one command. Results go to `out` (or the -o file); diagnostics go
/// to `err`. Returns the process exit status.
inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  using detail::pretty;
  std::string result;
  int status = exit_code::ok;

  auto need_inputs = [&](std::size_t lo, std::size_t hi) {
    if (cmd.inputs.size() < lo || cmd.inputs.size() > hi)
      throw Error(ErrorCode::InvalidArgument, cmd.subcommand + " takes " +
                                                  (lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " + std::to_string(hi)) +
                                                  " input file(s)");
  };
  auto json_only = [&] {
    if (cmd.format != Format::Json)
      throw Error(ErrorCode::InvalidArgument, cmd.subcommand + " only produces JSON output");
  };
  auto emit_polytope = [&](const RatPolytope& p) {
    switch (cmd.format) {
      case Format::Json: return pretty(io::to_json(p));
      case Format::Off: return detail::to_off(p);
      case Format::Csv: return detail::to_csv(p.vertices);
    }
    return std::string();
  };

  try {
    const std::string& sub = cmd.subcommand;
    if (sub == "check" || sub == "matrix") {
      need_inputs(1, 1);
      const auto in = detail::load(cmd.inputs[0]);
      const auto g = detail::read(in, [](const io::json& j) { return io::graph_from_json(j); });
      const auto violations = validate(g);
      if (!violations.empty()) {
        for (const auto& v : violations) {
          const bool on_edge = v.kind == Violation::Kind::ZeroEdge || v.kind == Violation::Kind::EdgeOutOfRange;
          const std::string ptr = (on_edge ? "/edges/" : "/vertices/") + std::to_string(v.index);
          err << in.path << ':' << in.doc.line_of(ptr) << ": " << to_string(v.kind) << ": " << v.message << '\n';
        }
        return exit_code::invalid_input;
      }
      if (sub == "check") {
        json_only();
        result = pretty(io::to_json(invariants(g)));
      } else {
        const auto a = reduced_plumbing_matrix(g);
        std::vector<RatVector> rows;
        for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
        if (cmd.format == Format::Off) throw Error(ErrorCode::InvalidArgument, "matrix has no OFF form");
        result = cmd.format == Format::Csv ? detail::to_csv(rows) : pretty(io::to_json(a));
      }
    } else if (sub == "kernel") {
      need_inputs(1, 1);
      const auto in = detail::load(cmd.inputs[0]);
      const auto& j = in.doc.value;
      std::vector<RatVector> basis;
      if (j.is_object() && j.contains("vertices")) {
        const auto g = detail::read(in, [](const io::json& x) { return io::graph_from_json(x); });
        basis = nonvanishing_norm(g).basis;
      } else {
        const auto m = detail::read(in, [](const io::json& x) {
          return x.is_array() ? io::matrix_from_json(x, "") : io::matrix_from_json(io::detail::member(x, "", "matrix"), "/matrix");
        });
        basis = kernel_basis(m);
      }
      if (cmd.format == Format::Off) throw Error(ErrorCode::InvalidArgument, "kernel has no OFF form");
      result = cmd.format == Format::Csv ? detail::to_csv(basis) : pretty(io::to_json(basis));
    } else if (sub == "norm-eval") {
      need_inputs(1, 2);
      json_only();
      const auto in = detail::load(cmd.inputs[0]);
      const auto& j = in.doc.value;
      // The tuple comes from the second file (a bare array or {"class": [...]}),
      // or from a "class"/"vector" field of the first.
      auto tuple_from = [](const io::json& x, const std::string& base) {
        if (x.is_array()) return io::vector_from_json(x, base);
        for (const char* key : {"class", "vector"})
          if (x.is_object() && x.contains(key)) return io::vector_from_json(x[key], base + "/" + key);
        throw io::FieldError(base + "/class", "missing");
      };
      const auto src = cmd.inputs.size() == 2 ? detail::load(cmd.inputs[1]) : in;
      const auto v = detail::read(src, [&](const io::json& x) { return tuple_from(x, ""); });
      Rational value;
      if (j.is_object() && j.contains("functionals")) {
        const auto nrm = detail::read(in, [](const io::json& x) { return io::norm_from_json(x); });
        value = evaluate(nrm, v);
      } else {
        const auto g = detail::read(in, [](const io::json& x) { return io::graph_from_json(x); });
        try {
          value = thurston_value(g, v);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotRealizable) throw;
          result = pretty({{"realizable", false}, {"reason", e.message()}});
          status = exit_code::infeasible;
        }
      }
      if (status == exit_code::ok) result = pretty({{"realizable", true}, {"value", io::to_json(value)}});
    } else if (sub == "ball") {
      need_inputs(1, 1);
      const auto in = detail::load(cmd.inputs[0]);
      const auto nrm = detail::read(in, [](const io::json& x) { return io::norm_from_json(x); });
      if (cmd.verify_equal) {
        const auto a = unit_ball_deflate(nrm);
        const auto b = unit_ball_oracle(nrm, cmd.max_k);
        if (a != b) {
          err << "deflation and oracle balls differ\n";
          json_only();
          result = pretty({{"agree", false}, {"deflation", io::to_json(a)}, {"oracle", io::to_json(b)}});
          status = exit_code::infeasible;
        } else {
          result = emit_polytope(a);
        }
      } else {
        result = emit_polytope(cmd.oracle ? unit_ball_oracle(nrm, cmd.max_k) : unit_ball_deflate(nrm));
      }
    } else if (sub == "realize") {
      need_inputs(1, 1);
      json_only();
      const auto in = detail::load(cmd.inputs[0]);
      auto ri = detail::read(in, [](const io::json& x) { return detail::realize_input(x); });
      auto genera = cmd.genera ? *cmd.genera : ri.genera.value_or(std::vector<std::size_t>(ri.betas.size(), 0));
      const auto res = realize(std::move(ri.betas), std::move(genera), cmd.fibered);
      result = pretty(io::to_json(res));
    } else if (sub == "complete") {
      need_inputs(1, 1);
      json_only();
      const auto in = detail::load(cmd.inputs[0]);
      const auto raw = detail::read(in, [](const io::json& x) { return io::polytope_from_json(x); });
      const auto p = convex_hull(raw.vertices, raw.dim);
      const auto report = is_complete(p);
      const auto nrm = completion(p);
      const auto ball = unit_ball_deflate(nrm);
      io::json violations = io::json::array();
      for (const auto& v : report.violations)
        violations.push_back({{"hyperplane", io::to_json(v.hyperplane)}, {"facet", v.facet}});
      result = pretty({{"complete", report.complete},
                       {"violations", violations},
                       {"completion", io::to_json(nrm)},
                       {"ball", io::to_json(ball)},
                       {"refines", cone_refines(ball, p)}});
    } else if (sub == "weights") {
      need_inputs(1, 1);
      json_only();
      const auto in = detail::load(cmd.inputs[0]);
      const auto raw = detail::read(in, [](const io::json& x) { return io::polytope_from_json(x); });
      const auto p = convex_hull(raw.vertices, raw.dim);
      const auto w = weight_solve(p, cmd.max_k);
      io::json terms = io::json::array();
      if (w)
        for (const auto& h : *w) terms.push_back({{"hyperplane", io::to_json(h.hyperplane)}, {"weight", io::to_json(h.weight)}});
      result = pretty({{"feasible", w.has_value()}, {"weights", terms}});
      if (!w) status = exit_code::infeasible;
    } else if (sub == "verify") {
      need_inputs(0, 0);
      json_only();
      io::json reports = io::json::array();
      bool all = true;
      for (const auto& r : props::full_suite(cmd.seed)) {
        all = all && r.passed;
        io::json entry = {{"property", r.name}, {"passed", r.passed}, {"cases", r.cases}};
        if (!r.passed) entry["detail"] = r.detail;
        reports.push_back(std::move(entry));
        char line[256];
        std::snprintf(line, sizeof line, "%-50s %s  %.3f s\n", r.name.c_str(), r.passed ? "ok" : "FAILED", r.seconds);
        err << line;
      }
      result = pretty({{"seed", cmd.seed}, {"passed", all}, {"properties", reports}});
      if (!all) status = exit_code::infeasible;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown subcommand \"" + sub + "\"");
    }
  } catch (const detail::Located& e) {
    err << e.where() << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  }

  if (cmd.output) {
    std::ofstream f(*cmd.output, std::ios::binary);
    if (!f) {
      err << "cannot write " << *cmd.output << '\n';
      return exit_code::invalid_input;
    }
    f << result;
  } else {
    out << result;
  }
  return status;
}

}  // namespace thurston::cli
