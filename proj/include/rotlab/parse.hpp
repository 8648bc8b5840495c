#pragma once

// Text mini-languages used by the command line:
//   weights:  power:p=1.5 | gaussian | cauchy:a=2,b=2
//             | logpert:alpha=0.5,base=<weight> | sum:(<weight>)+(<weight>)
//   bodies:   ball[:radius=R] | disk | square | diamond | hexagon
//             | ellipse:a,b | ellipsoid:c11,c12,c22 | lq:q=1[,scale=S]
//             | polygon:FILE | image:t=0.3,a=FILE[,(<body>)]
//             | comb:l=0.5,(<body>),(<body>)
//   grids:    a:b:k  (k uniform points from a to b)
//   matrices: whitespace-separated rows in a text file
//   polygons: one "x y" vertex per line, counterclockwise, upper half only

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rotlab/bodies.hpp"
#include "rotlab/common.hpp"
#include "rotlab/testfns.hpp"
#include "rotlab/weights.hpp"

namespace rotlab {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_kv(const std::string& item, const std::string& key) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || item.substr(0, eq) != key)
    throw InvalidInput("expected '" + key + "=<number>' in '" + item + "'");
  try {
    return std::stod(item.substr(eq + 1));
  } catch (...) {
    throw InvalidInput("bad number in '" + item + "'");
  }
}

/// Extracts the parenthesized group starting at s[pos] (which must be '('),
/// returning the contents and advancing pos past the closing ')'.
inline std::string paren_group(const std::string& s, size_t& pos) {
  if (pos >= s.size() || s[pos] != '(') throw InvalidInput("expected '(' in '" + s + "'");
  int depth = 0;
  const size_t start = pos + 1;
  for (; pos < s.size(); ++pos) {
    if (s[pos] == '(') ++depth;
    if (s[pos] == ')' && --depth == 0) {
      const std::string inner = s.substr(start, pos - start);
      ++pos;
      return inner;
    }
  }
  throw InvalidInput("unbalanced parentheses in '" + s + "'");
}

}  // namespace detail

inline RadialWeightd parse_weight(const std::string& spec) {
  if (spec == "gaussian") return gaussian_weight();
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "power") return power_weight(detail::parse_kv(rest, "p"));
  if (head == "cauchy") {
    const auto items = detail::split(rest, ',');
    if (items.size() != 2) throw InvalidInput("cauchy weight needs a=...,b=...");
    return cauchy_weight(detail::parse_kv(items[0], "a"), detail::parse_kv(items[1], "b"));
  }
  if (head == "logpert") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw InvalidInput("logpert weight needs alpha=...,base=...");
    const double alpha = detail::parse_kv(rest.substr(0, comma), "alpha");
    const std::string base = rest.substr(comma + 1);
    if (base.rfind("base=", 0) != 0) throw InvalidInput("logpert weight needs base=<weight>");
    return log_perturbed_weight(alpha, parse_weight(base.substr(5)));
  }
  if (head == "sum") {
    size_t pos = 0;
    const std::string a = detail::paren_group(rest, pos);
    if (pos >= rest.size() || rest[pos] != '+') throw InvalidInput("sum weight needs (..)+(..)");
    ++pos;
    const std::string b = detail::paren_group(rest, pos);
    return sum_weight(parse_weight(a), parse_weight(b));
  }
  throw InvalidInput("unknown weight '" + spec + "'");
}

inline Matrixd parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw InvalidInput("empty matrix file '" + path + "'");
  Matrixd A(long(rows.size()), long(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw InvalidInput("ragged matrix file '" + path + "'");
    for (size_t j = 0; j < rows[i].size(); ++j) A(long(i), long(j)) = rows[i][j];
  }
  return A;
}

inline SymmetricBodyd parse_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open polygon file '" + path + "'");
  std::vector<Vec2<double>> upper;
  double x, y;
  while (in >> x >> y) upper.emplace_back(x, y);
  return SymmetricBodyd::polygon(std::move(upper));
}

inline SymmetricBodyd parse_body(const std::string& spec, int dim = 2) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "ball" || head == "disk") {
    double r = 1;
    if (!rest.empty()) r = detail::parse_kv(rest, "radius");
    return SymmetricBodyd::ball(dim, r);
  }
  if (head == "square") return square_body(rest.empty() ? 1.0 : std::stod(rest));
  if (head == "diamond") return diamond_body(rest.empty() ? 1.0 : std::stod(rest));
  if (head == "hexagon") return hexagon_body(rest.empty() ? 1.0 : std::stod(rest));
  if (head == "ellipse") {
    const auto items = detail::split(rest, ',');
    if (items.size() != 2) throw InvalidInput("ellipse needs two semi-axes: ellipse:a,b");
    return ellipse_body(std::stod(items[0]), std::stod(items[1]));
  }
  if (head == "ellipsoid") {
    const auto items = detail::split(rest, ',');
    if (items.size() != 3) throw InvalidInput("ellipsoid needs c11,c12,c22");
    Matrixd C(2, 2);
    C << std::stod(items[0]), std::stod(items[1]), std::stod(items[1]), std::stod(items[2]);
    return SymmetricBodyd::ellipsoid(C);
  }
  if (head == "lq") {
    const auto items = detail::split(rest, ',');
    double q = 0, scale = 1;
    if (items.empty()) throw InvalidInput("lq body needs q=...");
    q = items[0] == "q=inf" ? std::numeric_limits<double>::infinity()
                            : detail::parse_kv(items[0], "q");
    if (items.size() > 1) scale = detail::parse_kv(items[1], "scale");
    return SymmetricBodyd::lq_ball(dim, q, scale);
  }
  if (head == "polygon") return parse_polygon_file(rest);
  if (head == "image") {
    const auto items = detail::split(rest, ',');
    if (items.size() < 2) throw InvalidInput("image body needs t=...,a=FILE[,(<body>)]");
    const double t = detail::parse_kv(items[0], "t");
    if (items[1].rfind("a=", 0) != 0) throw InvalidInput("image body needs a=FILE");
    const Matrixd A = parse_matrix_file(items[1].substr(2));
    SymmetricBodyd inner = SymmetricBodyd::ball(int(A.rows()));
    const auto par = rest.find('(');
    if (par != std::string::npos) {
      size_t pos = par;
      inner = parse_body(detail::paren_group(rest, pos), dim);
    }
    return SymmetricBodyd::linear_image(matrix_exponential(A, t), inner);
  }
  if (head == "comb") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw InvalidInput("comb body needs l=...,(..),(..)");
    const double l = detail::parse_kv(rest.substr(0, comma), "l");
    size_t pos = comma + 1;
    const std::string a = detail::paren_group(rest, pos);
    if (pos >= rest.size() || rest[pos] != ',') throw InvalidInput("comb body needs two groups");
    ++pos;
    const std::string b = detail::paren_group(rest, pos);
    return SymmetricBodyd::minkowski_comb(l, parse_body(a, dim), parse_body(b, dim));
  }
  throw InvalidInput("unknown body '" + spec + "'");
}

/// Grid spec "a:b:k" -> k uniform points from a to b.
inline std::vector<double> parse_grid(const std::string& spec) {
  const auto items = detail::split(spec, ':');
  if (items.size() != 3) throw InvalidInput("grid spec must be a:b:k");
  try {
    return linear_spaced(std::stod(items[0]), std::stod(items[1]), std::stoi(items[2]));
  } catch (const InvalidInput&) {
    throw;
  } catch (...) {
    throw InvalidInput("bad grid spec '" + spec + "'");
  }
}

/// Test-function spec: linear:e1 | linear:e2 | bl-extremal | poincare-extremal
/// | monomial:a1,a2 (x1^a1 x2^a2) | gauge2:<body>
inline TestFunctiond parse_function(const std::string& spec, const RadialWeightd& w,
                                    const Matrixd& A, int dim) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "linear") {
    if (rest.size() != 2 || rest[0] != 'e') throw InvalidInput("linear function needs e<i>");
    const int i = std::stoi(rest.substr(1)) - 1;
    if (i < 0 || i >= dim) throw InvalidInput("linear axis out of range");
    return linear(Vectord(Vectord::Unit(dim, i)));
  }
  if (head == "bl-extremal") return bl_extremal(w, A);
  if (head == "poincare-extremal") return poincare_extremal(w);
  if (head == "gauge2") return gauge_squared(parse_body(rest, dim));
  if (head == "monomial") {
    const auto items = detail::split(rest, ',');
    if (int(items.size()) != dim) throw InvalidInput("monomial needs one exponent per axis");
    int degree = 0;
    std::vector<int> alpha;
    for (const auto& s : items) {
      alpha.push_back(std::stoi(s));
      degree += alpha.back();
    }
    const Parity par = degree % 2 == 0 ? Parity::even : Parity::odd;
    for (auto& f : basis<double>(par, std::max(1, degree), dim)) {
      std::string want = "x^(";
      for (size_t i = 0; i < alpha.size(); ++i)
        want += std::to_string(alpha[i]) + (i + 1 < alpha.size() ? "," : ")");
      if (f.label == want) return f;
    }
    throw InvalidInput("monomial '" + spec + "' not found");
  }
  throw InvalidInput("unknown function '" + spec + "'");
}

}  // namespace rotlab
