#include "oracles.hpp"

#include <doctest.h>

using namespace pcdga;
using pcdga::testing::Rng;

namespace {

AlgebraPtr small_algebra()
{
    return parse_model("[algebra]\na 1\nb 1\nc 3\nx 2\ny 2\n[differential]\nc = x*y\n[cap]\n8\n").model.algebra();
}

Element el(const FreeCDGA& a, const char* text) { return parse_element(text, a); }

}  // namespace

TEST_CASE("Koszul signs on generators")
{
    auto a = small_algebra();
    CHECK(a->mul(el(*a, "a"), el(*a, "b")) == -a->mul(el(*a, "b"), el(*a, "a")));
    CHECK(a->mul(el(*a, "a"), el(*a, "a")).is_zero());
    CHECK(a->mul(el(*a, "x"), el(*a, "a")) == a->mul(el(*a, "a"), el(*a, "x")));
    CHECK(el(*a, "b*a*c") == el(*a, "-a*b*c"));
    CHECK(el(*a, "c*b*a") == el(*a, "-a*b*c"));
    CHECK(el(*a, "x*x*y") == el(*a, "x^2*y"));
    CHECK(el(*a, "a*x*a").is_zero());
    CHECK(a->pow(el(*a, "x + y"), 2) == el(*a, "x^2 + 2*x*y + y^2"));
    CHECK(a->pow(el(*a, "a + b"), 2).is_zero());
    CHECK(a->degree(el(*a, "a*b*c")) == 5);
    CHECK_FALSE(a->degree(el(*a, "a + x")).has_value());
}

TEST_CASE("differential extends as a derivation")
{
    auto a = small_algebra();
    CHECK(a->d(el(*a, "a*c")) == el(*a, "-a*x*y"));
    CHECK(a->d(el(*a, "c*x")) == el(*a, "x^2*y"));
    CHECK(a->d(a->d(el(*a, "c*a*b"))).is_zero());
    CHECK(a->linear_part(el(*a, "3*x + x*y - 2")) == el(*a, "3*x"));
}

TEST_CASE("monomial bases")
{
    auto a = small_algebra();
    CHECK(a->monomial_basis(0).size() == 1);
    CHECK(a->monomial_basis(1).size() == 2);
    CHECK(a->monomial_basis(2).size() == 3);  // ab, x, y
    CHECK(a->monomial_basis(4).size() == 7);  // abx aby ac bc x² xy y²
    for (int n = 0; n <= 6; ++n)
        for (const auto& m : a->monomial_basis(n))
            CHECK(a->degree(m) == n);
}

TEST_CASE("expression parser")
{
    auto a = small_algebra();
    CHECK(el(*a, "(x + y)*(x - y)") == el(*a, "x^2 - y^2"));
    CHECK(el(*a, "x/2 + x/2") == el(*a, "x"));
    CHECK(el(*a, "0").is_zero());
    CHECK_THROWS_AS(parse_element("z", *a), ParseError);
    CHECK_THROWS_AS(parse_element("x/y", *a), ParseError);
    CHECK_THROWS_AS(parse_element("x/0", *a), ParseError);
    CHECK_THROWS_AS(parse_element("i*x", *a), ParseError);
    CHECK_THROWS_AS(parse_element("(x", *a), ParseError);
}

TEST_CASE("construction errors")
{
    CHECK_THROWS(make_algebra(Field::Q, {{"x", 0}}, {}, 4));
    CHECK_THROWS(make_algebra(Field::Q, {{"x", 2}, {"x", 3}}, {}, 4));
    auto a = make_algebra(Field::Q, {{"x", 2}}, {}, 4);
    CHECK_THROWS_AS(make_algebra(Field::Q, {{"x", 2}, {"y", 3}}, {{}, Element::constant(Scalar::i())}, 4),
                    FieldMismatch);
    CHECK(a->find("x").has_value());
    CHECK_FALSE(a->find("q").has_value());
}

TEST_CASE("d squared and degree checks catch bad differentials")
{
    auto ok = check_d_squared(*small_algebra());
    CHECK(ok.ok);
    auto bad = parse_model("[algebra]\nx 2\nu 3\nw 4\n[differential]\nu = x^2\nw = x*u\n[cap]\n8\n");
    auto r = check_d_squared(*bad.model.algebra());
    CHECK_FALSE(r.ok);
    CHECK(r.generator == "w");
    Monomial x;
    x.factors = {{0, 1}};
    auto a = make_algebra(Field::Q, {{"x", 2}, {"y", 4}}, {{}, Element::monomial(x)}, 6);
    auto deg = check_d_squared(*a);
    CHECK_FALSE(deg.ok);
    CHECK(deg.generator == "y");
}

TEST_CASE("graded commutativity, Leibniz and d squared on every corpus algebra")
{
    Rng rng(99);
    for (const auto& cm : pcdga::testing::corpus_models()) {
        INFO(cm.entry << "/" << cm.file);
        CHECK(pcdga::testing::algebra_violations(rng, *cm.model.colimit(), 1000) == 0);
    }
}

TEST_CASE("morphisms")
{
    auto a = small_algebra();
    auto id = Morphism::identity(a);
    CHECK(verify_morphism(id).ok);
    CHECK(id.apply(el(*a, "a*c + x")) == el(*a, "a*c + x"));

    auto s = parse_model("[algebra]\nx 2\ny 3\n[differential]\ny = x^2\n").model.algebra();
    // x -> 2x, y -> 4y is a chain map; x -> 2x, y -> y is not.
    Morphism good(s, s, {el(*s, "2*x"), el(*s, "4*y")});
    Morphism bad(s, s, {el(*s, "2*x"), el(*s, "y")});
    CHECK(verify_morphism(good).ok);
    auto r = verify_morphism(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.generator == "y");
    Morphism wrong_degree(s, s, {el(*s, "y"), el(*s, "y")});
    CHECK_FALSE(verify_morphism(wrong_degree).ok);
    CHECK(compose(good, good).apply(el(*s, "x*y")) == el(*s, "64*x*y"));
}

TEST_CASE("interval tensor and homotopies")
{
    auto s = parse_model("[algebra]\nx 2\ny 3\n[differential]\ny = x^2\n").model.algebra();
    auto path = std::make_shared<const IntervalTensor>(s, 3);
    const FreeCDGA& e = *path->algebra();
    CHECK(e.gen(path->t()).degree == 0);
    CHECK(e.d(e.gen_element(path->t())) == e.gen_element(path->dt()));
    Element p = parse_element("x*t^2 + y*dt", e);
    CHECK(path->ev(p, 0).is_zero());
    CHECK(path->ev(p, 1) == el(*s, "x"));
    CHECK_THROWS_AS(e.pow(e.gen_element(path->t()), 4), TDegreeOverflow);

    Morphism zero = Morphism::zero(s, s);
    Morphism id = Morphism::identity(s);
    CHECK(verify_homotopy(constant_homotopy(id, path), id, id).ok);
    // d(x t) = x dt, but x is a cocycle.
    Morphism naive(s, path->algebra(), {parse_element("x*t", e), parse_element("y*t^2", e)});
    auto r = verify_homotopy({path, naive}, zero, id);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(verify_homotopy(constant_homotopy(id, path), zero, id).ok);
}

TEST_CASE("stage support")
{
    auto a = small_algebra();
    std::vector<int> staging = {0, 0, 3, 0, 1};
    CHECK(stage_support(el(*a, "a*x"), staging) == 0);
    CHECK(stage_support(el(*a, "a*y + c"), staging) == 3);
}
