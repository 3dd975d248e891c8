#include "obcalc/surface.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace obcalc;

namespace {

TwistWord single(const SurfaceModel& s, const std::string& curve, long long e) {
    TwistWord w;
    w.entries.push_back(TwistEntry{s.resolve(curve), e, "T(" + curve + ")^" + std::to_string(e)});
    return w;
}

H1Class random_class(std::mt19937_64& rng, const SurfaceModel& s) {
    std::uniform_int_distribution<long long> entry(-4, 4);
    H1Class x = s.zero();
    for (auto& v : x) v = entry(rng);
    return x;
}

}  // namespace

TEST_CASE("standard surfaces validate and have rank 2g + b - 1") {
    for (int g = 0; g <= 2; ++g)
        for (int b = 1; b <= 3; ++b) {
            SurfaceModel s = SurfaceModel::standard(g, b, "S");
            s.validate();
            CHECK(s.rank() == 2 * g + b - 1);
            CHECK(s.chi() == 2 - 2 * g - b);
        }
}

TEST_CASE("intersection pairing normalisation") {
    SurfaceModel s = SurfaceModel::standard(1, 1, "S");
    H1Class a1 = s.resolve("a1"), b1 = s.resolve("b1");
    CHECK(s.pair(a1, b1) == 1);
    CHECK(s.pair(a1, a1) == 0);
    H1Class sum = a1;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b1[i];
    CHECK(s.pair(sum, b1) == 1);  // bilinearity
    CHECK_THROWS_AS((void)s.pair(a1, H1Class{1, 2, 3, 4, 5}), SurfaceError);
}

TEST_CASE("boundary classes pair to zero with the interior basis") {
    SurfaceModel s = SurfaceModel::standard(2, 3, "S");
    for (const auto& label : s.boundary_labels()) {
        H1Class d = s.boundary_class(label);
        CHECK(s.pair(d, s.resolve("a1")) == 0);
        CHECK(s.pair(d, s.resolve("b2")) == 0);
        for (const auto& other : s.boundary_labels())
            CHECK(s.pair(d, s.boundary_class(other)) == 0);
    }
}

TEST_CASE("twist action on classes") {
    SurfaceModel s = SurfaceModel::standard(1, 1, "S");
    H1Class a1 = s.resolve("a1"), b1 = s.resolve("b1");
    SUBCASE("transvection along a1 sends b1 to b1 + a1") {
        H1Class expect = b1;
        for (std::size_t i = 0; i < expect.size(); ++i) expect[i] += a1[i];
        CHECK(twist_class(s, single(s, "a1", 1), b1) == expect);
    }
    SUBCASE("a curve fixes its own class") {
        CHECK(twist_class(s, single(s, "a1", 1), a1) == a1);
    }
    SUBCASE("boundary-parallel twists fix interior classes") {
        SurfaceModel t = SurfaceModel::standard(1, 2, "T");
        CHECK(twist_class(t, single(t, "d(T.1)", 3), t.resolve("a1")) == t.resolve("a1"));
    }
    SUBCASE("unresolvable curve names are rejected") {
        CHECK_THROWS_AS((void)s.resolve("c7"), SurfaceError);
    }
}

TEST_CASE("twist words invert and preserve the pairing") {
    auto rng = obcalc::test::make_rng(11);
    SurfaceModel s = SurfaceModel::standard(2, 2, "S");
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<long long> expo(-3, 3);
    const std::vector<std::string> curves{"a1", "b1", "a2", "b2", "d(S.1)"};
    for (int iter = 0; iter < 1000; ++iter) {
        TwistWord w;
        int len = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < len; ++k) {
            long long e = expo(rng);
            if (e == 0) e = 1;
            w.entries.push_back(TwistEntry{s.resolve(curves[pick(rng)]), e, ""});
        }
        H1Class x = random_class(rng, s), y = random_class(rng, s);
        CHECK(s.pair(twist_class(s, w, x), twist_class(s, w, y)) == s.pair(x, y));
        CHECK(twist_class(s, w.inverse(), twist_class(s, w, x)) == x);
    }
}

TEST_CASE("arc transvection matches the annulus co-core computation") {
    SurfaceModel s = SurfaceModel::standard(0, 2, "A");
    H1Class core = s.resolve("core");
    CHECK(core == s.boundary_class("A.1"));
    ArcClass arc{"A.1", "A.2", s.zero()};
    SUBCASE("identity word fixes arcs") {
        ArcClass out = twist_arc(s, TwistWord{}, arc);
        CHECK(is_zero(out.loop));
    }
    SUBCASE("k core twists add k copies of the core") {
        for (long long k = 0; k <= 5; ++k) {
            ArcClass out = twist_arc(s, single(s, "core", k), arc);
            H1Class expect = add_scaled(s.zero(), k, core);
            bool match = (out.loop == expect) || (out.loop == add_scaled(s.zero(), -k, core));
            CHECK(match);
        }
    }
    SUBCASE("twists along disjoint curves fix the arc") {
        SurfaceModel t = SurfaceModel::standard(1, 2, "T");
        ArcClass a{"T.1", "T.2", t.zero()};
        ArcClass out = twist_arc(t, single(t, "a1", 2), a);
        CHECK(is_zero(out.loop));
    }
}

TEST_CASE("attach_one_handle euler characteristic bookkeeping") {
    SUBCASE("disc u disc joined gives a disc") {
        SurfaceModel two =
            SurfaceModel::disjoint_union(SurfaceModel::standard(0, 1, "A"),
                                         SurfaceModel::standard(0, 1, "B"));
        CHECK(two.chi() == 2);
        HandleResult r = attach_one_handle(two, "A.1", "B.1", "M");
        CHECK(r.surface.chi() == 1);
        CHECK(r.surface.components().size() == 1);
        CHECK(r.surface.components()[0].boundary_count() == 1);
        CHECK(r.surface.components()[0].genus() == 0);
        CHECK(r.surface.rank() == 0);
    }
    SUBCASE("disc with both feet on its circle gives an annulus") {
        SurfaceModel disc = SurfaceModel::standard(0, 1, "D");
        HandleResult r = attach_one_handle(disc, "D.1", "D.1", "", "P", "Q");
        CHECK(r.surface.chi() == 0);
        CHECK(r.surface.components()[0].boundary_count() == 2);
        CHECK(r.surface.components()[0].genus() == 0);
        CHECK(r.surface.rank() == 1);
    }
    SUBCASE("annulus u annulus joined gives a three-holed sphere") {
        SurfaceModel two =
            SurfaceModel::disjoint_union(SurfaceModel::standard(0, 2, "A"),
                                         SurfaceModel::standard(0, 2, "B"));
        HandleResult r = attach_one_handle(two, "A.2", "B.1", "M");
        CHECK(r.surface.chi() == -1);
        CHECK(r.surface.components().size() == 1);
        CHECK(r.surface.components()[0].boundary_count() == 3);
        CHECK(r.surface.components()[0].genus() == 0);
    }
    SUBCASE("joining two circles of one component adds genus") {
        SurfaceModel ann = SurfaceModel::standard(0, 2, "A");
        HandleResult r = attach_one_handle(ann, "A.1", "A.2", "M");
        CHECK(r.surface.chi() == -1);
        CHECK(r.surface.components()[0].boundary_count() == 1);
        CHECK(r.surface.components()[0].genus() == 1);
        CHECK(r.surface.rank() == 2);
    }
    SUBCASE("unknown attachment sites are rejected") {
        SurfaceModel disc = SurfaceModel::standard(0, 1, "D");
        CHECK_THROWS_AS((void)attach_one_handle(disc, "D.1", "E.1", "M"), SurfaceError);
    }
    SUBCASE("rank equals 1 - chi per component after every operation") {
        SurfaceModel s = SurfaceModel::standard(1, 2, "S");
        HandleResult r1 = attach_one_handle(s, "S.1", "S.2", "M");
        r1.surface.validate();
        HandleResult r2 = attach_one_handle(r1.surface, "M", "M", "", "P", "Q");
        r2.surface.validate();
        int rank = 0;
        for (const auto& c : r2.surface.components()) rank += 1 - c.chi;
        CHECK(rank == r2.surface.rank());
    }
}

TEST_CASE("glue_double produces the closed double") {
    SUBCASE("disc u disc -> sphere") {
        DoubledSurface d = glue_double(SurfaceModel::standard(0, 1, "A"),
                                       SurfaceModel::standard(0, 1, "B"), {{"A.1", "B.1"}});
        CHECK(d.closed_genus == 0);
        CHECK(d.gens == 0);
    }
    SUBCASE("annulus u annulus -> torus") {
        DoubledSurface d =
            glue_double(SurfaceModel::standard(0, 2, "A"), SurfaceModel::standard(0, 2, "B"),
                        {{"A.1", "B.1"}, {"A.2", "B.2"}});
        CHECK(d.closed_genus == 1);
        AbelianGroup h1 = cokernel(d.relations);
        CHECK(h1 == AbelianGroup::free(2));
    }
    SUBCASE("genus-1 page doubled -> genus-2 surface") {
        DoubledSurface d = glue_double(SurfaceModel::standard(1, 1, "A"),
                                       SurfaceModel::standard(1, 1, "B"), {{"A.1", "B.1"}});
        CHECK(d.closed_genus == 2);
        CHECK(cokernel(d.relations) == AbelianGroup::free(4));
    }
    SUBCASE("boundary count mismatch is rejected") {
        CHECK_THROWS_AS((void)glue_double(SurfaceModel::standard(0, 1, "A"),
                                          SurfaceModel::standard(0, 2, "B"), {{"A.1", "B.1"}}),
                        SurfaceError);
    }
}
