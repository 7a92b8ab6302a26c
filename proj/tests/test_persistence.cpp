#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace pcdga;
using pcdga::testing::model_from;

namespace {

const char* kPathS2 = "[algebra]\nx 2\ny 3\nxb 1\nyb 2\n[differential]\ny = x^2\nxb = x\nyb = -x*xb + y\n"
                      "[relative]\nbase = x, y\nfiber = xb, yb\n";

Barcode sorted(Barcode b)
{
    std::sort(b.begin(), b.end());
    return b;
}

int first_fiber_stage(const PersistenceCDGA& p)
{
    int s = kInf;
    for (GenId g = 0; g < p.colimit()->size(); ++g)
        if (p.model().is_fiber(g))
            s = std::min(s, p.staging()[g]);
    return s;
}

}  // namespace

TEST_CASE("path fibration over S^2")
{
    auto p = model_from(kPathS2);
    CHECK(p.N() == 2);
    ThetaHomology th(p, 6);
    auto b = barcode(th.h_module());
    CHECK(sorted(b) == Barcode{{0, 0, kInf}, {2, 0, 1}, {3, 1, 2}});
    CHECK(serialize(b) == "0 0 inf\n2 0 1\n3 1 2\n");
    CHECK(parse_barcode(serialize(b)) == b);
    CHECK(barcode_matches_dims(b, th.h_module()));
    CHECK_FALSE(barcode_matches_dims(Barcode{{0, 0, kInf}}, th.h_module()));
}

TEST_CASE("stage overrides that let d escape its stage are rejected")
{
    std::string text = std::string(kPathS2) + "[stages]\nxb = 3\n";
    CHECK_THROWS_AS(model_from(text.c_str()), StageEscape);
}

TEST_CASE("barcodes agree with stage-wise cohomology on every corpus model")
{
    for (const auto& cm : pcdga::testing::corpus_models()) {
        INFO(cm.entry << "/" << cm.file);
        const auto& p = cm.model;
        ThetaHomology th(p, cm.cap);
        const auto& mod = th.h_module();
        auto b = barcode(mod);
        CHECK(barcode_matches_dims(b, mod));
        CHECK(pcdga::testing::barcode_violations(p, cm.cap) == 0);
        auto q = barcode(th.hq_module());
        CHECK(barcode_matches_dims(q, th.hq_module()));
    }
}

TEST_CASE("stages below the first fiber generator carry the base cohomology")
{
    for (const auto& cm : pcdga::testing::corpus_models()) {
        INFO(cm.entry << "/" << cm.file);
        const auto& p = cm.model;
        int first = first_fiber_stage(p);
        Cohomology base(p.model().base_algebra(), cm.cap);
        ThetaHomology th(p, cm.cap);
        for (int s = 0; s < std::min(first, p.last_stage() + 1); ++s)
            for (int n = 0; n <= cm.cap; ++n)
                CHECK(th.H(s).dim(n) == base.dim(n));
        // Constant from N on.
        for (int n = 0; n <= cm.cap; ++n) {
            CHECK(th.h_map(n, p.N(), p.N() + 3) == Matrix::identity(th.H(p.N()).dim(n)));
            CHECK(th.H(p.N() + 5).dim(n) == th.H(p.N()).dim(n));
        }
    }
}

TEST_CASE("structure maps compose")
{
    for (const auto& cm : pcdga::testing::corpus_models()) {
        INFO(cm.entry << "/" << cm.file);
        ThetaHomology th(cm.model, cm.cap);
        int last = cm.model.last_stage();
        for (int n = 0; n <= cm.cap; ++n)
            for (int s = 0; s <= last; ++s) {
                CHECK(th.h_map(n, s, s) == Matrix::identity(th.H(s).dim(n)));
                for (int t = s; t <= last; ++t)
                    for (int u = t; u <= last; ++u) {
                        CHECK(th.h_map(n, s, u) == th.h_map(n, t, u) * th.h_map(n, s, t));
                        CHECK(th.hq_map(n, s, u) == th.hq_map(n, t, u) * th.hq_map(n, s, t));
                    }
            }
    }
}

TEST_CASE("shifting a module")
{
    auto p = model_from(kPathS2);
    auto m = persistence_cohomology(p, 6);
    auto s = shift(m, mpq_class(3, 2));
    for (int n = 0; n <= 6; ++n)
        for (int t = 0; t <= m.last; ++t) {
            int src = std::min(m.last, static_cast<int>(floor_q(mpq_class(t) + mpq_class(3, 2)).get_si()));
            CHECK(s.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(t)] ==
                  m.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(src)]);
        }
    CHECK(floor_q(mpq_class(-1, 2)) == -1);
    CHECK_THROWS(shift(m, mpq_class(-1)));
}

TEST_CASE("barcode text errors")
{
    CHECK_THROWS(parse_barcode("0 0\n"));
    CHECK_THROWS(parse_barcode("0 2 1\n"));
    CHECK(parse_barcode("").empty());
}
