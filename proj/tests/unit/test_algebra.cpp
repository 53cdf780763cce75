#include <catch2/catch_amalgamated.hpp>

#include "psicalc/algebra/checker.hpp"
#include "psicalc/instances/contexts.hpp"
#include "support/random.hpp"

using namespace psicalc;
using testing_support::Gen;

namespace {

TrigPoly mode1(std::int64_t k, GaussianRational c = GaussianRational(1)) { return TrigPoly::mode(1, {k, 0}, c); }
TrigPoly mode2(std::int64_t k1, std::int64_t k2, GaussianRational c = GaussianRational(1)) {
  return TrigPoly::mode(2, {k1, k2}, c);
}

QTorusElement mono(std::int64_t m, std::int64_t n, unsigned order = 2) { return QTorusElement::monomial(order, m, n); }

}  // namespace

TEST_CASE("trigonometric polynomials multiply modes additively") {
  CHECK(mode2(1, -2) * mode2(3, 5) == mode2(4, 3));
  CHECK(mode1(2) * mode1(-2) == TrigPoly::constant(1, GaussianRational(1)));
  CHECK((mode1(1) + mode1(1, GaussianRational(-1))).is_zero());
  CHECK((mode2(1, 0, GaussianRational(Rational(1), Rational(2))) + TrigPoly::constant(2, 3)).to_string() ==
        "3+(1+2*i)*e[1,0]");
  CHECK_THROWS_AS(mode1(1) * mode2(1, 1), ContextMismatch);
}

TEST_CASE("trigonometric polynomial algebra laws") {
  Gen g(21);
  for (int t = 0; t < 200; ++t) {
    const int dim = t % 2 ? 2 : 1;
    const auto f = g.trig(dim, 3, 3), h = g.trig(dim, 3, 3), k = g.trig(dim, 3, 3);
    CHECK(f * h == h * f);
    CHECK((f * h) * k == f * (h * k));
    CHECK(f * (h + k) == f * h + f * k);
    for (int axis = 0; axis < dim; ++axis) CHECK((f * h).partial(axis) == f.partial(axis) * h + f * h.partial(axis));
    CHECK((f * h).constant_coefficient() == (h * f).constant_coefficient());
  }
}

TEST_CASE("torus4 context") {
  const auto ctx = make_torus4_context();
  REQUIRE(ctx->hypotheses_checked());
  CHECK(ctx->report()->all_passed());
  CHECK(ctx->sigma_is_identity());
  CHECK(ctx->delta_count() == 2);
  CHECK(ctx->trace_count() == 4);
  CHECK(ctx->trace(ctx->trace_index("11"), ctx->one()) == GaussianRational(1));
  for (std::size_t t = 0; t < 4; ++t) CHECK(ctx->trace(t, ctx->one()) == GaussianRational(1));

  // delta_1 e_(3,-2) = 3 e_(3,-2) in the same component
  const auto a = TupleElement::in_component(4, 0, mode2(3, -2));
  CHECK(ctx->delta(0, a) == TupleElement::in_component(4, 0, mode2(3, -2, GaussianRational(3))));
  CHECK(ctx->delta(1, a) == TupleElement::in_component(4, 0, mode2(3, -2, GaussianRational(-2))));

  Gen g(4);
  for (int t = 0; t < 100; ++t) {
    const auto x = g.tuple(4, 2, 3, 3);
    for (std::size_t d = 0; d < 2; ++d)
      for (std::size_t s = 0; s < 4; ++s) CHECK(ctx->trace(s, ctx->delta(d, x)).is_zero());
  }
}

TEST_CASE("circle2 context") {
  const auto ctx = make_circle2_context();
  REQUIRE(ctx->hypotheses_checked());
  CHECK(ctx->delta_count() == 1);
  CHECK(ctx->trace(0, ctx->one()) == GaussianRational(1));
  CHECK(ctx->trace(1, TupleElement({TrigPoly(1), mode1(5)})).is_zero());
  const TupleElement x({mode1(2), mode1(-1)});
  CHECK(ctx->delta(0, x) == TupleElement({mode1(2, GaussianRational(2)), mode1(-1, GaussianRational(-1))}));
}

TEST_CASE("tuple components never interact") {
  const TupleElement a({mode1(1), TrigPoly(1)});
  const TupleElement b({TrigPoly(1), mode1(2)});
  CHECK((a * b).is_zero());
  CHECK((a + b).to_string() == "(e[1]; e[2])");
  CHECK_THROWS_AS(a * TupleElement::unit(4, 1), ContextMismatch);
}

TEST_CASE("quantum torus normal ordering") {
  const Cyclotomic q = Cyclotomic::root_power(3, 1);
  // UV = q VU
  CHECK(mono(1, 0, 3) * mono(0, 1, 3) == (mono(0, 1, 3) * mono(1, 0, 3)).scaled(q));
  // V^n U^m = q^{-mn} U^m V^n
  for (std::int64_t m = -3; m <= 3; ++m)
    for (std::int64_t n = -3; n <= 3; ++n)
      CHECK(mono(0, n, 3) * mono(m, 0, 3) == mono(m, n, 3).scaled(Cyclotomic::root_power(3, -m * n)));
  for (unsigned N : {2u, 3u, 4u, 6u}) {
    const auto un = mono(static_cast<std::int64_t>(N), 0, N), vn = mono(0, static_cast<std::int64_t>(N), N);
    for (const auto& x : qtorus_monomial_sample(N, 2)) {
      CHECK(un * x == x * un);
      CHECK(vn * x == x * vn);
    }
  }
  CHECK(mono(1, 1, 3) * mono(1, 1, 3).monomial_inverse() == mono(0, 0, 3));
  CHECK((mono(2, -1) - mono(0, 0)).to_string() == "-1+U^2*V^-1");
}

TEST_CASE("quantum torus associativity on random triples") {
  Gen g(8);
  for (unsigned N : {2u, 3u, 5u}) {
    for (int t = 0; t < 60; ++t) {
      const auto a = g.qtorus(N, 2, 3), b = g.qtorus(N, 2, 3), c = g.qtorus(N, 2, 3);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("default quantum torus context") {
  const auto ctx = make_qtorus_context();
  REQUIRE(ctx->hypotheses_checked());
  const auto& rep = *ctx->report();
  CHECK(rep.all_passed());
  CHECK(rep.sample_description == "all monomials U^m V^n with |m|, |n| <= 4");
  CHECK_FALSE(ctx->sigma_is_identity());
  // conjugation by W = UV under UV = -VU: (UV) U (UV)^-1 = -U
  const auto u = mono(1, 0);
  const auto w = mono(1, 1);
  CHECK(ctx->sigma(u) == -u);
  CHECK(ctx->sigma(u) * w == w * u);
  CHECK(ctx->sigma(mono(1, 1)) == mono(1, 1));
  CHECK(ctx->trace(0, w * w) == Cyclotomic(2, 1));
  CHECK(ctx->trace(ctx->trace_index("W1"), w) == Cyclotomic(2, 1));
}

TEST_CASE("quantum torus at a fourth root of unity") {
  const auto ctx = make_qtorus_context(4, 2, 2, mono(2, 2, 4), mono(4, 0, 4));
  REQUIRE(ctx->report()->all_passed());
  // sigma^k(U^m V^n) = q^{k(rn - sm)} U^m V^n
  Gen g(2);
  for (int t = 0; t < 30; ++t) {
    const auto m = g.integer(-3, 3), n = g.integer(-3, 3), k = g.integer(-3, 3);
    const auto x = mono(m, n, 4);
    CHECK(ctx->sigma_pow(k, x) == x.scaled(Cyclotomic::root_power(4, k * (2 * n - 2 * m))));
  }
}

TEST_CASE("quantum torus parameter violations are named") {
  CHECK_THROWS_AS(make_qtorus_context(3, 1, 1, mono(0, 0, 3), mono(0, 0, 3)), HypothesisError);
  // x1 = U is not sigma-invariant for the default twist, so sigma and delta_1 do not commute
  try {
    (void)make_qtorus_context(2, 1, 1, mono(1, 0), mono(0, 2));
    FAIL("expected a hypothesis failure");
  } catch (const HypothesisError& e) {
    CHECK(std::string(e.what()).find("delta1.sigma_commute") != std::string::npos);
  }
  // with a single derivation that commutation is not a hypothesis; tau_W2 then
  // loses derivation invariance (declared and confirmed), tau_W1 keeps it
  const auto one_d = make_qtorus1d_context(2, 1, 1, mono(1, 0));
  CHECK(one_d->hypotheses_checked());
  CHECK_FALSE(one_d->trace_spec(0).kind.delta_invariant);
  CHECK(one_d->trace_spec(1).kind.delta_invariant);
  CHECK_FALSE(one_d->report()->find("trace[W2].delta1_invariant")->holds);
}

TEST_CASE("iterate") {
  const auto torus = make_torus_context();
  const auto e20 = TupleElement({mode2(2, 0)});
  auto d1 = [&](const TupleElement& a) { return torus->delta(0, a); };
  CHECK(iterate(d1, 0, e20) == e20);
  CHECK(iterate(d1, 3, e20) == TupleElement({mode2(2, 0, GaussianRational(8))}));
  CHECK_THROWS_AS(iterate(d1, -1, e20), ContractViolation);

  const auto qt = make_qtorus_context();
  Gen g(9);
  for (int t = 0; t < 50; ++t) {
    const auto a = g.qtorus(2, 3, 3);
    CHECK(qt->sigma_pow(-1, qt->sigma(a)) == a);
    CHECK(qt->sigma_pow(2, a) == qt->sigma(qt->sigma(a)));
    CHECK(qt->delta_pow(0, 2, a) == qt->delta(0, qt->delta(0, a)));
  }
}

TEST_CASE("integration by parts on the sample") {
  auto run = [](const auto& ctx, std::size_t trace) {
    const auto& sample = ctx->sample();
    for (std::size_t d = 0; d < ctx->delta_count(); ++d)
      for (Order i = 0; i <= 4; ++i)
        for (std::size_t x = 0; x < sample.size(); x += 3)
          for (std::size_t y = 0; y < sample.size(); y += 7) {
            const auto& a = sample[x];
            const auto& b = sample[y];
            auto lhs = ctx->trace(trace, ctx->delta_pow(d, i, a) * b);
            auto rhs = ctx->trace(trace, ctx->sigma_pow(i, a) * ctx->delta_pow(d, i, b));
            if (i % 2) rhs = -rhs;
            REQUIRE(lhs == rhs);
          }
  };
  run(make_torus4_context(), 2);
  run(make_qtorus_context(), 0);
  run(make_qtorus_context(), 1);
}

TEST_CASE("checker rejects a trace that is not derivation invariant") {
  auto spec = torus4_spec();
  spec.traces[0].name = "coeff(1,0)";
  spec.traces[0].apply = [](const TupleElement& a) { return a.component(0).coefficient({1, 0}); };
  const TrigContext broken(spec);
  const auto report = check_hypotheses(broken);
  CHECK_FALSE(report.all_passed());
  const auto* c = report.find("trace[coeff(1,0)].delta1_invariant");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed());
  CHECK(c->witness.find("e[1,0]") != std::string::npos);
  CHECK_THROWS_AS(finalize_context(broken), HypothesisError);
  const auto kept = finalize_context(broken, false);
  CHECK_FALSE(kept->hypotheses_checked());
}

TEST_CASE("checker reports every hypothesis family") {
  const auto rep = *make_qtorus_context()->report();
  for (const char* name : {"sigma.unit", "sigma.multiplicative", "sigma.inverse", "sigma.power", "delta1.leibniz",
                           "delta2.leibniz", "delta1.sigma_commute", "delta2.sigma_commute", "delta12.commute",
                           "trace[W2].twisted_trace(k=2)", "trace[W2].delta1_invariant",
                           "trace[W2].delta2_invariant", "trace[W2].sigma_invariant",
                           "trace[W1].twisted_trace(k=1)"}) {
    INFO(name);
    const auto* c = rep.find(name);
    REQUIRE(c != nullptr);
    CHECK(c->passed());
    CHECK(c->cases > 0);
  }
  const auto torus = *make_torus4_context()->report();
  REQUIRE(torus.find("sigma.identity") != nullptr);
  CHECK(torus.find("sigma.identity")->passed());
}

TEST_CASE("a declared twist that does not hold is caught") {
  auto spec = qtorus_spec(QTorusParams{});
  spec.traces[1].kind.twist_power = 0;  // tau_W1 is not an ordinary trace
  const auto rep = check_hypotheses(QTorusContext(spec));
  const auto* c = rep.find("trace[W1].twisted_trace(k=0)");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed());
  CHECK_FALSE(c->witness.empty());
}
