#include "relthue/field.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relthue/embeddings.hpp"
#include "relthue/errors.hpp"

namespace relthue {

namespace {

using Poly = std::vector<Rat>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// remainder of p modulo the monic integer polynomial g (ascending coeffs)
Poly poly_mod(Poly p, const std::vector<Int>& g) {
  const size_t dg = g.size() - 1;
  trim(p);
  while (p.size() > dg) {
    Rat lead = p.back();
    size_t shift = p.size() - 1 - dg;
    for (size_t k = 0; k < dg; ++k) p[shift + k] -= lead * Rat(g[k]);
    p.pop_back();
    trim(p);
  }
  p.resize(dg, Rat(0));
  return p;
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rat(static_cast<long>(k)));
  return d;
}

// Euclidean remainder over Q (b nonzero)
Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  Poly r = a;
  while (r.size() >= b.size() && !r.empty()) {
    Rat q = r.back() / b.back();
    size_t shift = r.size() - b.size();
    for (size_t k = 0; k < b.size(); ++k) r[shift + k] -= q * b[k];
    r.pop_back();
    trim(r);
  }
  return r;
}

bool poly_squarefree(const std::vector<Int>& g) {
  Poly a(g.size());
  for (size_t k = 0; k < g.size(); ++k) a[k] = Rat(g[k]);
  Poly b = poly_derivative(a);
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;  // gcd is a nonzero constant
}

// Solve W x = v exactly (W m-by-m of rationals). Returns false if singular.
bool solve_rational(std::vector<std::vector<Rat>> W, std::vector<Rat> v, std::vector<Rat>& out) {
  const size_t m = W.size();
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    while (piv < m && W[piv][col] == 0) ++piv;
    if (piv == m) return false;
    std::swap(W[piv], W[col]);
    std::swap(v[piv], v[col]);
    for (size_t r = 0; r < m; ++r) {
      if (r == col || W[r][col] == 0) continue;
      Rat factor = W[r][col] / W[col][col];
      for (size_t c = col; c < m; ++c) W[r][c] -= factor * W[col][c];
      v[r] -= factor * v[col];
    }
  }
  out.resize(m);
  for (size_t r = 0; r < m; ++r) out[r] = v[r] / W[r][r];
  return true;
}

Rat parse_rational(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
      Rat q;
      if (q.set_str(j.get<std::string>(), 10) != 0)
        throw Error(ErrorCode::ParseError, where + ": not a rational: " + j.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const Error&) {
    throw;
  } catch (...) {
  }
  throw Error(ErrorCode::ParseError, where + ": expected an integer or a rational string");
}

Int parse_int(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    Int z;
    if (z.set_str(j.get<std::string>(), 10) != 0)
      throw Error(ErrorCode::ParseError, where + ": not an integer: " + j.get<std::string>());
    return z;
  }
  throw Error(ErrorCode::ParseError, where + ": expected an integer");
}

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array() && !it->is_object() && !it->is_string() && !it->is_number())
    throw Error(ErrorCode::ParseError, std::string("missing key: ") + key);
  return *it;
}

}  // namespace

FieldElement zm_add(const FieldElement& a, const FieldElement& b) {
  FieldElement r(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = a.coords[i] + b.coords[i];
  return r;
}

FieldElement zm_sub(const FieldElement& a, const FieldElement& b) {
  FieldElement r(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = a.coords[i] - b.coords[i];
  return r;
}

FieldElement zm_neg(const FieldElement& a) {
  FieldElement r(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = -a.coords[i];
  return r;
}

FieldElement zm_mul(const FieldElement& a, const FieldElement& b, const ProblemSpec& spec) {
  const size_t m = static_cast<size_t>(spec.m);
  FieldElement r(m);
  Int t;
  for (size_t i = 0; i < m; ++i) {
    if (a.coords[i] == 0) continue;
    for (size_t j = 0; j < m; ++j) {
      if (b.coords[j] == 0) continue;
      t = a.coords[i] * b.coords[j];
      const auto& row = spec.mult_table[i][j];
      for (size_t k = 0; k < m; ++k)
        if (row[k] != 0) r.coords[k] += t * row[k];
    }
  }
  return r;
}

std::vector<FieldElement> norm_form_coefficients(const ProblemSpec& spec) { return spec.f; }

FieldElement evaluate_norm(const FieldElement& X, const FieldElement& Y, const ProblemSpec& spec) {
  const int n = spec.n;
  // powers X^j and Y^(n-j) on demand
  std::vector<FieldElement> xp(static_cast<size_t>(n) + 1), yp(static_cast<size_t>(n) + 1);
  xp[0] = spec.unit();
  yp[0] = spec.unit();
  for (int k = 1; k <= n; ++k) {
    xp[k] = zm_mul(xp[k - 1], X, spec);
    yp[k] = zm_mul(yp[k - 1], Y, spec);
  }
  FieldElement acc(static_cast<size_t>(spec.m));
  for (int j = 0; j <= n; ++j) {
    if (spec.f[j].is_zero()) continue;
    FieldElement term = zm_mul(spec.f[j], zm_mul(xp[j], yp[n - j], spec), spec);
    acc = zm_add(acc, term);
  }
  return acc;
}

std::string to_string(const FieldElement& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.coords.size(); ++i) {
    if (i) s += ",";
    s += e.coords[i].get_str();
  }
  return s + ")";
}

ProblemSpec load_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }

  ProblemSpec spec;

  const auto& bf = require(j, "base_field");
  const auto& defpoly = require(bf, "defining_polynomial");
  if (!defpoly.is_array() || defpoly.size() < 2)
    throw Error(ErrorCode::ParseError, "base_field.defining_polynomial: expected a list of degree >= 1");
  for (size_t k = 0; k < defpoly.size(); ++k)
    spec.base_poly.push_back(parse_int(defpoly[k], "base_field.defining_polynomial[" + std::to_string(k) + "]"));
  if (spec.base_poly.back() != 1)
    throw Error(ErrorCode::ParseError, "base_field.defining_polynomial: must be monic (leading coefficient 1)");
  spec.m = static_cast<int>(spec.base_poly.size()) - 1;
  const size_t m = static_cast<size_t>(spec.m);

  if (!poly_squarefree(spec.base_poly))
    throw Error(ErrorCode::RepeatedRoots, "base_field.defining_polynomial: not squarefree");

  const auto& basis = require(bf, "integral_basis");
  if (!basis.is_array() || basis.size() != m)
    throw Error(ErrorCode::ParseError, "base_field.integral_basis: expected " + std::to_string(m) + " elements");
  spec.basis.assign(m, std::vector<Rat>(m, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    const auto& bi = basis[i];
    std::string where = "base_field.integral_basis[" + std::to_string(i) + "]";
    if (!bi.is_array() || bi.empty() || bi.size() > m)
      throw Error(ErrorCode::ParseError, where + ": expected 1.." + std::to_string(m) + " theta-power coefficients");
    for (size_t k = 0; k < bi.size(); ++k)
      spec.basis[i][k] = parse_rational(bi[k], where + "[" + std::to_string(k) + "]");
  }
  {
    bool first_is_one = spec.basis[0][0] == 1;
    for (size_t k = 1; k < m && first_is_one; ++k) first_is_one = spec.basis[0][k] == 0;
    if (!first_is_one)
      throw Error(ErrorCode::ParseError, "base_field.integral_basis[0]: first basis element must be 1");
  }

  // multiplication table (exact): w_i w_j mod g, solved back into the basis
  {
    std::vector<std::vector<Rat>> W(m, std::vector<Rat>(m));
    for (size_t p = 0; p < m; ++p)
      for (size_t i = 0; i < m; ++i) W[p][i] = spec.basis[i][p];
    spec.mult_table.assign(m, std::vector<std::vector<Int>>(m, std::vector<Int>(m)));
    for (size_t i = 0; i < m; ++i) {
      for (size_t jdx = 0; jdx < m; ++jdx) {
        Poly prod = poly_mod(poly_mul(spec.basis[i], spec.basis[jdx]), spec.base_poly);
        std::vector<Rat> coords;
        if (!solve_rational(W, prod, coords))
          throw Error(ErrorCode::ParseError, "base_field.integral_basis: elements are linearly dependent");
        for (size_t k = 0; k < m; ++k) {
          if (coords[k].get_den() != 1)
            throw Error(ErrorCode::NonIntegral,
                        "base_field.integral_basis: product of basis elements " + std::to_string(i + 1) +
                            " and " + std::to_string(jdx + 1) + " leaves the basis (coordinate " +
                            coords[k].get_str() + "); not an integral basis");
          spec.mult_table[i][jdx][k] = coords[k].get_num();
        }
      }
    }
  }

  const auto& relpoly = require(j, "relative_polynomial");
  if (!relpoly.is_array() || relpoly.size() < 3)
    throw Error(ErrorCode::ParseError, "relative_polynomial: expected n+1 >= 3 coordinate vectors");
  spec.n = static_cast<int>(relpoly.size()) - 1;
  for (size_t k = 0; k < relpoly.size(); ++k) {
    const auto& ck = relpoly[k];
    std::string where = "relative_polynomial[" + std::to_string(k) + "]";
    if (!ck.is_array() || ck.size() != m)
      throw Error(ErrorCode::ParseError, where + ": expected " + std::to_string(m) + " integer coordinates");
    FieldElement e(m);
    for (size_t i = 0; i < m; ++i) e.coords[i] = parse_int(ck[i], where + "[" + std::to_string(i) + "]");
    spec.f.push_back(std::move(e));
  }
  if (spec.f.back() != spec.unit())
    throw Error(ErrorCode::NonMonic, "relative_polynomial: leading coefficient must be the unit element");

  const auto& muj = require(j, "mu");
  if (!muj.is_array() || muj.size() != m)
    throw Error(ErrorCode::ParseError, "mu: expected " + std::to_string(m) + " integer coordinates");
  spec.mu = FieldElement(m);
  for (size_t i = 0; i < m; ++i) spec.mu.coords[i] = parse_int(muj[i], "mu[" + std::to_string(i) + "]");
  if (spec.mu.is_zero()) throw Error(ErrorCode::ParseError, "mu: must be nonzero");

  const auto& cj = require(j, "bound_C");
  std::string cstr;
  if (cj.is_string()) cstr = cj.get<std::string>();
  else if (cj.is_number()) cstr = cj.dump();
  else throw Error(ErrorCode::ParseError, "bound_C: expected a decimal string or number");
  try {
    spec.bound_C = BigFloat::parse(cstr, bits_for_digits(60));
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bound_C: not a decimal value: " + cstr);
  }
  if (!(spec.bound_C > 0.0) || !spec.bound_C.is_finite())
    throw Error(ErrorCode::ParseError, "bound_C: must be positive and finite");

  // Numeric validation: conjugate separation per embedding, signature, and
  // the applicability condition. Determines the fixed conjugate order.
  auto emb = build_embeddings(spec, 60);
  spec.base_real = emb->base_real;
  spec.totally_real = emb->k_totally_real;

  if (spec.totally_real) {
    if (!(spec.n > 2 * spec.m))
      throw Error(ErrorCode::Applicability,
                  "applicability condition violated: K is totally real and n = " + std::to_string(spec.n) +
                      " <= 2m = " + std::to_string(2 * spec.m));
  } else if (!(spec.n > spec.m)) {
    throw Error(ErrorCode::Applicability,
                "applicability condition violated: n = " + std::to_string(spec.n) +
                    " <= m = " + std::to_string(spec.m));
  }

  return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open problem file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_problem(ss.str());
}

}  // namespace relthue
