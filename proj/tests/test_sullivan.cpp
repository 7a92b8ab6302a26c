#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace pcdga;
using pcdga::testing::Rng;

namespace {

const char* kS2 = "[algebra]\nx 2\ny 3\n[differential]\ny = x^2\n";
const char* kCP2 = "[algebra]\nx 2\ny 5\n[differential]\ny = x^3\n[cap]\n10\n";

RelativeSullivanModel model(const char* text) { return parse_model(text).model; }

std::vector<std::size_t> dims(const Cohomology& h)
{
    std::vector<std::size_t> out;
    for (int n = 0; n <= h.cap(); ++n)
        out.push_back(h.dim(n));
    return out;
}

// Same algebra with generator i renamed to position perm[i].
AlgebraPtr permuted(const FreeCDGA& a, const std::vector<GenId>& perm)
{
    std::vector<Generator> gens(a.size());
    for (GenId g = 0; g < a.size(); ++g)
        gens[perm[g]] = a.gen(g);
    auto bare = make_algebra(a.field(), gens, {}, a.cap());
    std::vector<Element> images;
    for (GenId g = 0; g < a.size(); ++g)
        images.push_back(bare->gen_element(perm[g]));
    Morphism rename(std::make_shared<const FreeCDGA>(a), bare, images);
    std::vector<Element> diff(a.size());
    for (GenId g = 0; g < a.size(); ++g)
        diff[perm[g]] = rename.apply(a.d(g));
    return make_algebra(a.field(), gens, diff, a.cap());
}

}  // namespace

TEST_CASE("cohomology of spheres and projective spaces")
{
    auto s2 = model(kS2).algebra();
    Cohomology h(s2, 5);
    CHECK(dims(h) == std::vector<std::size_t>{1, 0, 1, 0, 0, 0});

    auto cp2 = model(kCP2).algebra();
    Cohomology hc(cp2, 10);
    CHECK(dims(hc) == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0});
    CHECK_FALSE(is_zero(hc.product(2, 0, 2, 0)));
    CHECK(is_zero(hc.product(2, 0, 4, 0)) == true);

    auto s3 = model("[algebra]\nu 3\n").algebra();
    Cohomology h3(s3, 6);
    CHECK(dims(h3) == std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 0});
    CHECK_THROWS(Cohomology(s3, 7));
}

TEST_CASE("cohomology coordinates")
{
    auto s2 = model(kS2).algebra();
    Cohomology h(s2, 4);
    auto c = h.coords(parse_element("3*x", *s2), 2);
    REQUIRE(c.has_value());
    CHECK(*c == Vec{Scalar(3)});
    CHECK_FALSE(h.coords(parse_element("y", *s2), 3).has_value());
    auto exact = h.coords(parse_element("x^2", *s2), 4);
    REQUIRE(exact.has_value());
    CHECK(exact->empty());
}

TEST_CASE("minimality failures")
{
    auto linear = model("[algebra]\nx 2\nv 4\nw 3\n[differential]\nw = v + x*x\n"
                        "[relative]\nbase = x\nfiber = v, w\n");
    auto r = verify_minimality(linear);
    CHECK_FALSE(r.ok);
    CHECK(r.generator == "w");

    auto open_base = model("[algebra]\nx 2\nv 1\nu 3\n[differential]\nu = x*v\n[relative]\nbase = x, u\nfiber = v\n");
    CHECK_FALSE(verify_minimality(open_base).ok);

    auto cycle = model("[algebra]\ne 1\na 3\nb 3\n[differential]\na = e*b\nb = e*a\n"
                       "[relative]\nbase = e\nfiber = a, b\n");
    CHECK_FALSE(verify_minimality(cycle).ok);

    auto ok = model("[algebra]\nx 2\ny 3\nxb 1\nyb 2\n[differential]\ny = x^2\nxb = x\nyb = -x*xb + y\n"
                    "[relative]\nbase = x, y\nfiber = xb, yb\n");
    CHECK(verify_minimality(ok).ok);
}

TEST_CASE("linear part of the differential squares to zero on corpus models")
{
    for (const auto& cm : pcdga::testing::corpus_models()) {
        const FreeCDGA& a = *cm.model.colimit();
        INFO(cm.entry << "/" << cm.file);
        for (GenId g = 0; g < a.size(); ++g)
            CHECK(a.linear_part(a.d(a.linear_part(a.d(g)))).is_zero());
    }
}

TEST_CASE("cohomology dimensions do not depend on generator order")
{
    Rng rng(5);
    for (const auto& cm : pcdga::testing::corpus_models()) {
        const auto& a = cm.model.colimit();
        INFO(cm.entry << "/" << cm.file);
        std::vector<GenId> perm(a->size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto b = permuted(*a, perm);
        int cap = std::min(cm.cap, a->cap() - 1);
        Cohomology ha(a, cap), hb(b, cap);
        CHECK(dims(ha) == dims(hb));
        LinearHomology qa(a, cap), qb(b, cap);
        for (int n = 0; n <= cap; ++n)
            CHECK(qa.dim(n) == qb.dim(n));
    }
}

TEST_CASE("induced maps are functorial")
{
    auto s2 = model(kS2).algebra();
    Morphism two(s2, s2, {parse_element("2*x", *s2), parse_element("4*y", *s2)});
    Morphism three(s2, s2, {parse_element("3*x", *s2), parse_element("9*y", *s2)});
    Cohomology h(s2, 4);
    CHECK(induced_map(compose(three, two), h, h, 2) == induced_map(three, h, h, 2) * induced_map(two, h, h, 2));
    CHECK(induced_map(two, h, h, 2)(0, 0) == Scalar(2));
    CHECK(induced_map(Morphism::identity(s2), h, h, 2) == Matrix::identity(1));

    // Certified interleaving maps between corpus colimits.
    int checked = 0;
    for (const auto& e : all_entries()) {
        auto l = load(e);
        for (const auto& [name, c] : l.certificates) {
            INFO(e.name << "/" << name);
            Cohomology hf(c.phi.source(), l.cap), hg(c.phi.target(), l.cap);
            Morphism round = compose(c.psi, c.phi);
            for (int n = 0; n <= l.cap; ++n)
                CHECK(induced_map(round, hf, hf, n) == induced_map(c.psi, hg, hf, n) * induced_map(c.phi, hf, hg, n));
            ++checked;
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("quasi-isomorphism checks")
{
    auto s2 = model(kS2).algebra();
    CHECK(verify_quasi_iso(Morphism::identity(s2), 4).ok);
    CHECK_FALSE(verify_quasi_iso(Morphism::zero(s2, s2), 4).ok);
    Morphism two(s2, s2, {parse_element("2*x", *s2), parse_element("4*y", *s2)});
    CHECK(verify_quasi_iso(two, 4).ok);
    Morphism half(s2, s2, {parse_element("x/2", *s2), parse_element("y/4", *s2)});
    CHECK(verify_isomorphism_pair(two, half).ok);
    CHECK_FALSE(verify_isomorphism_pair(two, two).ok);
}

TEST_CASE("stages and truncation")
{
    auto m = model("[algebra]\nx 2\ny 3\nxb 1\nyb 2\n[differential]\ny = x^2\nxb = x\nyb = -x*xb + y\n"
                   "[relative]\nbase = x, y\nfiber = xb, yb\n[stages]\nyb = 4\n[truncated]\n4\n");
    CHECK(m.stage(m.algebra()->find("xb").value()) == 1);
    CHECK(m.stage(m.algebra()->find("yb").value()) == 4);
    CHECK(m.truncated_at() == 4);
    CHECK(m.max_stage() == 4);
    CHECK(m.base_algebra()->size() == 2);
}
