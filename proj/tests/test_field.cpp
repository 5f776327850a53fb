#include <doctest.h>

#include "helpers.hpp"
#include "relthue/embeddings.hpp"
#include "relthue/errors.hpp"
#include "relthue/field.hpp"

using namespace relthue;
using testutil::inline_problem;
using testutil::problem_path;

namespace {

FieldElement fe(std::vector<long> v) {
  FieldElement e;
  for (long x : v) e.coords.emplace_back(x);
  return e;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("example 1 loads with the right shape") {
  auto spec = load_problem_file(problem_path("example1.json"));
  CHECK(spec.m == 2);
  CHECK(spec.n == 6);
  CHECK_FALSE(spec.totally_real);
  CHECK(spec.mu == spec.unit());
}

TEST_CASE("example 3 is totally real") {
  auto spec = load_problem_file(problem_path("example3.json"));
  CHECK(spec.m == 2);
  CHECK(spec.n == 9);
  CHECK(spec.totally_real);
}

TEST_CASE("applicability: quadratic f over a quadratic field is rejected") {
  // n = 2 = m violates n > m
  auto text = inline_problem("[1,0,1]", "[[1],[0,1]]", "[[-2,0],[0,0],[1,0]]", "[1,0]", "10");
  CHECK(code_of([&] { load_problem(text); }) == ErrorCode::Applicability);
}

TEST_CASE("distinct parse error codes name the offending condition") {
  // non-monic relative polynomial
  auto nonmonic = inline_problem("[1,0,1]", "[[1],[0,1]]",
                                 "[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[2,0]]", "[1,0]", "10");
  CHECK(code_of([&] { load_problem(nonmonic); }) == ErrorCode::NonMonic);

  // base polynomial with a repeated root
  auto repeated = inline_problem("[1,2,1]", "[[1],[0,1]]",
                                 "[[1,0],[1,0],[0,0],[0,0],[0,0],[0,0],[1,0]]", "[1,0]", "10");
  CHECK(code_of([&] { load_problem(repeated); }) == ErrorCode::RepeatedRoots);

  // f with a repeated root in every conjugate: (x^2-2x+1)*(x+1) = x^3-x^2-x+1
  auto frepeated = inline_problem("[1,0,1]", "[[1],[0,1]]",
                                  "[[1,0],[-1,0],[-1,0],[1,0]]", "[1,0]", "10");
  CHECK(code_of([&] { load_problem(frepeated); }) == ErrorCode::RepeatedRoots);

  // (1, theta/2) is not closed under multiplication over Q(i)
  auto nonintegral = inline_problem("[1,0,1]", "[[1],[0,\"1/2\"]]",
                                    "[[1,0],[1,0],[0,0],[0,0],[0,0],[0,0],[1,0]]", "[1,0]", "10");
  CHECK(code_of([&] { load_problem(nonintegral); }) == ErrorCode::NonIntegral);

  // zero mu
  auto zeromu = inline_problem("[1,0,1]", "[[1],[0,1]]",
                               "[[1,0],[1,0],[0,0],[0,0],[0,0],[0,0],[1,0]]", "[0,0]", "10");
  CHECK(code_of([&] { load_problem(zeromu); }) == ErrorCode::ParseError);

  // missing key is named
  try {
    load_problem("{\"base_field\":{\"defining_polynomial\":[1,0,1]}}");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("integral_basis") != std::string::npos);
  }
}

TEST_CASE("ring arithmetic in Q(i) and Q(sqrt 2)") {
  auto qi = load_problem_file(problem_path("example1.json"));
  CHECK(zm_mul(fe({1, 0}), fe({0, 1}), qi) == fe({0, 1}));
  CHECK(zm_mul(fe({0, 1}), fe({0, 1}), qi) == fe({-1, 0}));

  auto q2 = load_problem_file(problem_path("example3.json"));
  CHECK(zm_mul(fe({0, 1}), fe({0, 1}), q2) == fe({2, 0}));
}

TEST_CASE("ring axioms hold for random elements") {
  auto gen = testutil::rng(11);
  std::uniform_int_distribution<long> coord(-20, 20);
  for (const char* file : {"example1.json", "example3.json", "example4.json"}) {
    auto spec = load_problem_file(problem_path(file));
    const size_t m = static_cast<size_t>(spec.m);
    for (int trial = 0; trial < 30; ++trial) {
      FieldElement a(m), b(m), c(m);
      for (size_t i = 0; i < m; ++i) {
        a.coords[i] = coord(gen);
        b.coords[i] = coord(gen);
        c.coords[i] = coord(gen);
      }
      CHECK(zm_mul(a, b, spec) == zm_mul(b, a, spec));
      CHECK(zm_mul(zm_mul(a, b, spec), c, spec) == zm_mul(a, zm_mul(b, c, spec), spec));
      CHECK(zm_mul(a, zm_add(b, c), spec) == zm_add(zm_mul(a, b, spec), zm_mul(a, c, spec)));
      CHECK(zm_mul(a, spec.unit(), spec) == a);
    }
  }
}

TEST_CASE("norm form coefficients match the expanded binary forms") {
  auto ex1 = load_problem_file(problem_path("example1.json"));
  auto c1 = norm_form_coefficients(ex1);
  // X^6 + X Y^5 + Y^6
  CHECK(c1[6] == ex1.unit());
  CHECK(c1[1] == ex1.unit());
  CHECK(c1[0] == ex1.unit());
  for (int j : {2, 3, 4, 5}) CHECK(c1[static_cast<size_t>(j)].is_zero());

  auto ex2 = load_problem_file(problem_path("example2.json"));
  auto c2 = norm_form_coefficients(ex2);
  // X^21 - X Y^20 - Y^21
  CHECK(c2[21] == ex2.unit());
  CHECK(c2[1] == fe({-1, 0}));
  CHECK(c2[0] == fe({-1, 0}));

  auto ex4 = load_problem_file(problem_path("example4.json"));
  auto c4 = norm_form_coefficients(ex4);
  // X^6 + 2 X^5 Y + 3 X^4 Y^2 + 21 Y^6
  CHECK(c4[6] == ex4.unit());
  CHECK(c4[5] == fe({2, 0, 0}));
  CHECK(c4[4] == fe({3, 0, 0}));
  CHECK(c4[0] == fe({21, 0, 0}));
}

TEST_CASE("evaluate_norm reproduces the known example-1 solutions") {
  auto spec = load_problem_file(problem_path("example1.json"));
  CHECK(evaluate_norm(fe({1, 0}), fe({0, 0}), spec) == spec.mu);
  CHECK(evaluate_norm(fe({0, 0}), fe({1, 0}), spec) == spec.mu);
  CHECK(evaluate_norm(fe({1, 0}), fe({-1, 0}), spec) == spec.mu);
  CHECK(evaluate_norm(fe({2, 0}), fe({1, 0}), spec) != spec.mu);
}

TEST_CASE("embeddings: theta roots and S for Q(i)") {
  auto spec = load_problem_file(problem_path("example1.json"));
  auto emb = build_embeddings(spec, 50);
  REQUIRE(emb->theta.size() == 2);
  CHECK(emb->theta[0].im.to_double() == doctest::Approx(-1.0));
  CHECK(emb->theta[1].im.to_double() == doctest::Approx(1.0));
  // S rows are (1, theta^(j))
  for (int j = 0; j < 2; ++j) {
    CHECK(emb->S[j][0].re.to_double() == doctest::Approx(1.0));
    CHECK(emb->S[j][1].im.to_double() == doctest::Approx(j == 0 ? -1.0 : 1.0));
  }
  CHECK_FALSE(emb->base_real[0]);
  CHECK(emb->sinv_row_norm().to_double() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("embeddings: S inverse row norm for Q(sqrt 2) is 1") {
  auto spec = load_problem_file(problem_path("example3.json"));
  auto emb = build_embeddings(spec, 50);
  // rows of S^-1 sum to 1 and 2/(2 sqrt 2) = 0.7071; norm is the max
  CHECK(emb->sinv_row_norm().to_double() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(emb->base_real[0]);
  CHECK(emb->base_real[1]);
}

TEST_CASE("embeddings: example 4 base field is a totally real cubic") {
  auto spec = load_problem_file(problem_path("example4.json"));
  auto emb = build_embeddings(spec, 50);
  REQUIRE(emb->theta.size() == 3);
  for (int j = 0; j < 3; ++j) CHECK(emb->base_real[j]);
  CHECK_FALSE(emb->k_totally_real);  // f is totally complex
}

TEST_CASE("norm embedding consistency: F(X,Y) equals the conjugate product") {
  auto gen = testutil::rng(23);
  std::uniform_int_distribution<long> coord(-5, 5);
  for (const char* file : {"example1.json", "example3.json", "example4.json"}) {
    auto spec = load_problem_file(problem_path(file));
    auto emb = build_embeddings(spec, 60);
    const mpfr_prec_t bits = bits_for_digits(60);
    const size_t m = static_cast<size_t>(spec.m);
    for (int trial = 0; trial < 6; ++trial) {
      FieldElement X(m), Y(m);
      for (size_t i = 0; i < m; ++i) {
        X.coords[i] = coord(gen);
        Y.coords[i] = coord(gen);
      }
      FieldElement norm = evaluate_norm(X, Y, spec);
      for (int h = 0; h < spec.m; ++h) {
        BigComplex lhs = emb->embed(norm, h);
        BigComplex prod(BigFloat(1.0, bits), BigFloat(0.0, bits));
        BigComplex Xe = emb->embed(X, h), Ye = emb->embed(Y, h);
        for (int j = 0; j < spec.n; ++j)
          prod = prod * (Xe - emb->alpha[static_cast<size_t>(h)][static_cast<size_t>(j)] * Ye);
        CHECK((lhs - prod).abs().to_double() < 1e-30 * std::max(1.0, lhs.abs().to_double()));
      }
    }
  }
}

TEST_CASE("refinement moves conjugates by less than the old error budget") {
  auto spec = load_problem_file(problem_path("example1.json"));
  auto low = build_embeddings(spec, 60);
  auto high = refine_embeddings(*low, spec, 120);
  for (int j = 0; j < spec.m; ++j)
    CHECK((high->theta[static_cast<size_t>(j)] - low->theta[static_cast<size_t>(j)]).abs().to_double() < 1e-50);
  for (int h = 0; h < spec.m; ++h)
    for (int j = 0; j < spec.n; ++j)
      CHECK((high->alpha[static_cast<size_t>(h)][static_cast<size_t>(j)] -
             low->alpha[static_cast<size_t>(h)][static_cast<size_t>(j)])
                .abs()
                .to_double() < 1e-50);
}

TEST_CASE("m = 1 degenerate base field works") {
  auto spec = load_problem_file(problem_path("cubic_m1.json"));
  CHECK(spec.m == 1);
  CHECK(spec.n == 3);
  auto emb = build_embeddings(spec, 40);
  CHECK(emb->S[0][0].re.to_double() == doctest::Approx(1.0));
  CHECK(evaluate_norm(fe({1}), fe({0}), spec) == spec.mu);
  CHECK(evaluate_norm(fe({-1}), fe({-1}), spec) == spec.mu);  // (-1)^3 - 2(-1)^3 = 1
}
