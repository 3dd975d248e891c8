#include "obcalc/binding_sum.hpp"

#include <doctest.h>

#include "test_support.hpp"

using namespace obcalc;

namespace {

OpenBook3 standard_book(int genus, int boundary, const std::string& prefix, std::mt19937_64& rng,
                        int max_word) {
    SurfaceModel page = SurfaceModel::standard(genus, boundary, prefix);
    std::vector<std::string> curves;
    for (int i = 1; i <= genus; ++i) {
        curves.push_back("a" + std::to_string(i));
        curves.push_back("b" + std::to_string(i));
    }
    for (const auto& l : page.boundary_labels()) curves.push_back("d(" + l + ")");
    std::uniform_int_distribution<long long> expo(-2, 2);
    TwistWord w;
    int len = static_cast<int>(rng() % (max_word + 1));
    for (int k = 0; k < len; ++k) {
        long long e = expo(rng);
        if (e == 0) e = 1;
        const std::string& c = curves[rng() % curves.size()];
        w.entries.push_back(TwistEntry{page.resolve(c), e, "T(" + c + ")^" + std::to_string(e)});
    }
    return OpenBook3{std::move(page), std::move(w)};
}

struct PageShape {
    int genus, boundary;
};

const std::vector<PageShape> kShapes{{0, 1}, {0, 2}, {1, 1}, {1, 2}};

}  // namespace

TEST_CASE("calibration selects a consistent sign") {
    CHECK((calibrated_sign() == 1 || calibrated_sign() == -1));
    CHECK(!calibration_log().empty());
}

TEST_CASE("example: binding sum of two (disc, id)") {
    OpenBook3 d0{SurfaceModel::standard(0, 1, "A"), {}};
    OpenBook3 d1{SurfaceModel::standard(0, 1, "B"), {}};
    OpenBook3 both = OpenBook3::disjoint_union(d0, d1);
    SumResult r = binding_sum_3d(both, SumSite{"A.1", "B.1"});

    SUBCASE("page is an annulus, chi 2 -> 0") {
        CHECK(r.certificate.chi_before == 2);
        CHECK(r.certificate.chi_after == 0);
        CHECK(r.book.page.components().size() == 1);
        CHECK(r.book.page.components()[0].genus() == 0);
        CHECK(r.book.page.components()[0].boundary_count() == 2);
    }
    SUBCASE("both old binding circles persist") {
        auto labels = r.book.binding_labels();
        CHECK(std::count(labels.begin(), labels.end(), "A.1") == 1);
        CHECK(std::count(labels.begin(), labels.end(), "B.1") == 1);
    }
    SUBCASE("net word acts trivially on H1 and on defects") {
        CHECK(monodromy_matrix(r.book) == IntMatrix::identity(1));
        for (const auto& [label, d] : section_defects(r.book).delta) CHECK(is_zero(d));
    }
    SUBCASE("manifold H1 = Z") { CHECK(manifold_h1(r.book) == AbelianGroup::free(1)); }
    SUBCASE("nullhomologous collar twists are recorded as omitted") {
        CHECK(!r.certificate.omitted_trivial.empty());
    }
    SUBCASE("certificate serialises") {
        std::string t = r.certificate.to_text();
        CHECK(t.find("glue circle") != std::string::npos);
        CHECK(t.find("chi: 2 -> 0") != std::string::npos);
    }
}

TEST_CASE("binding sum errors") {
    OpenBook3 d0{SurfaceModel::standard(0, 2, "A"), {}};
    CHECK_THROWS_AS((void)binding_sum_3d(d0, SumSite{"A.1", "A.1"}), SurfaceError);
    CHECK_THROWS_AS((void)binding_sum_3d(d0, SumSite{"A.1", "C.9"}), SurfaceError);
}

TEST_CASE("chi drops by two and boundary count is preserved") {
    auto rng = obcalc::test::make_rng(31);
    for (int iter = 0; iter < 50; ++iter) {
        const PageShape s0 = kShapes[rng() % kShapes.size()];
        const PageShape s1 = kShapes[rng() % kShapes.size()];
        OpenBook3 b0 = standard_book(s0.genus, s0.boundary, "A", rng, 3);
        OpenBook3 b1 = standard_book(s1.genus, s1.boundary, "B", rng, 3);
        OpenBook3 both = OpenBook3::disjoint_union(b0, b1);
        const int chi = both.page.chi();
        const auto before = both.binding_labels();
        SumResult r = binding_sum_3d(both, SumSite{"A.1", "B.1"});
        CHECK(r.book.page.chi() == chi - 2);
        auto after = r.book.binding_labels();
        CHECK(after.size() == before.size());
        r.book.page.validate();
    }
}

TEST_CASE("sum is symmetric in the two labels") {
    auto rng = obcalc::test::make_rng(32);
    for (int iter = 0; iter < 25; ++iter) {
        const PageShape s0 = kShapes[rng() % kShapes.size()];
        const PageShape s1 = kShapes[rng() % kShapes.size()];
        OpenBook3 b0 = standard_book(s0.genus, s0.boundary, "A", rng, 3);
        OpenBook3 b1 = standard_book(s1.genus, s1.boundary, "B", rng, 3);
        OpenBook3 both = OpenBook3::disjoint_union(b0, b1);
        AbelianGroup fwd = manifold_h1(binding_sum_3d(both, SumSite{"A.1", "B.1"}).book);
        AbelianGroup rev = manifold_h1(binding_sum_3d(both, SumSite{"B.1", "A.1"}).book);
        CHECK(fwd == rev);
    }
}

TEST_CASE("sequential sums agree with the fibration oracle") {
    // Central property: summing all binding pairs must reproduce the
    // mapping-torus homology of the doubled fibre.
    auto rng = obcalc::test::make_rng(33);
    for (int iter = 0; iter < 60; ++iter) {
        const PageShape shape = kShapes[rng() % kShapes.size()];
        OpenBook3 b0 = standard_book(shape.genus, shape.boundary, "A", rng, 4);
        // Partner page: any shape with the same boundary count.
        std::vector<PageShape> partners;
        for (const auto& s : kShapes)
            if (s.boundary == shape.boundary) partners.push_back(s);
        const PageShape p = partners[rng() % partners.size()];
        OpenBook3 b1 = standard_book(p.genus, p.boundary, "B", rng, 4);

        std::vector<std::pair<std::string, std::string>> matching;
        std::vector<int> perm(shape.boundary);
        for (int i = 0; i < shape.boundary; ++i) perm[i] = i + 1;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < shape.boundary; ++i)
            matching.push_back({"A." + std::to_string(i + 1), "B." + std::to_string(perm[i])});

        AbelianGroup oracle = fibration_oracle_h1(b0, b1, matching);
        OpenBook3 acc = OpenBook3::disjoint_union(b0, b1);
        for (const auto& [la, lb] : matching)
            acc = binding_sum_3d(acc, SumSite{la, lb}).book;
        CHECK(manifold_h1(acc) == oracle);
    }
}

TEST_CASE("example: two (annulus, id) summed along one circle each") {
    OpenBook3 a0{SurfaceModel::standard(0, 2, "A"), {}};
    OpenBook3 a1{SurfaceModel::standard(0, 2, "B"), {}};
    OpenBook3 both = OpenBook3::disjoint_union(a0, a1);
    SumResult r1 = binding_sum_3d(both, SumSite{"A.1", "B.1"});
    // chi law: one sum takes 0 to -2 and keeps all four circles.
    CHECK(r1.book.page.chi() == -2);
    CHECK(r1.book.binding_labels().size() == 4);
    // Completing the sum on the remaining pair matches the oracle Z^3.
    SumResult r2 = binding_sum_3d(r1.book, SumSite{"A.2", "B.2"});
    AbelianGroup oracle =
        fibration_oracle_h1(a0, a1, {{"A.1", "B.1"}, {"A.2", "B.2"}});
    CHECK(oracle == AbelianGroup::free(3));
    CHECK(manifold_h1(r2.book) == oracle);
}

TEST_CASE("distinct sums commute across a three-book chain") {
    auto rng = obcalc::test::make_rng(34);
    for (int iter = 0; iter < 20; ++iter) {
        OpenBook3 a = standard_book(0, 2, "A", rng, 2);
        OpenBook3 b = standard_book(1, 2, "B", rng, 2);
        OpenBook3 c = standard_book(0, 2, "C", rng, 2);
        OpenBook3 all = OpenBook3::disjoint_union(OpenBook3::disjoint_union(a, b), c);
        std::vector<SumSite> sites{{"A.1", "B.1"}, {"B.2", "C.1"}, {"A.2", "C.2"}};
        AbelianGroup first;
        std::vector<int> order{0, 1, 2};
        bool have = false;
        do {
            OpenBook3 acc = all;
            for (int i : order) acc = binding_sum_3d(acc, sites[i]).book;
            CHECK(acc.page.chi() == all.page.chi() - 6);
            AbelianGroup h1 = manifold_h1(acc);
            if (!have) {
                first = h1;
                have = true;
            } else {
                CHECK(h1 == first);
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("sum within one connected open book") {
    // Self-sum of (annulus, id) = S^2 x S^1 along its own two binding
    // circles. The complement of the bindings is T^2 x I and the page
    // framings identify the ends by (c, theta) -> (-c, -theta) (the circles
    // carry opposite boundary orientations), so the result is the torus
    // bundle with monodromy -I: H1 = Z + Z/2 + Z/2 by the Wang sequence.
    OpenBook3 ann{SurfaceModel::standard(0, 2, "A"), {}};
    SumResult r = binding_sum_3d(ann, SumSite{"A.1", "A.2"});
    CHECK(r.book.page.chi() == -2);
    CHECK(r.book.page.components().size() == 1);
    CHECK(r.book.page.components()[0].genus() == 1);
    CHECK(r.book.page.components()[0].boundary_count() == 2);
    CHECK(manifold_h1(r.book) == AbelianGroup{1, {Int(2), Int(2)}});
}

TEST_CASE("symbolic binding sums") {
    SUBCASE("two (D3, id) spheres give the solid torus page and S3 x S1") {
        SymbolicOpenBook s4a{"S4a", 4, {"D3", 1, {}}, {"S2", 1}};
        SymbolicOpenBook s4b{"S4b", 4, {"D3", 1, {}}, {"S2", 1}};
        SymbolicSumResult r = binding_sum_symbolic(s4a, s4b);
        CHECK(r.book.page.chi == 0);
        CHECK(r.book.page.name == "S1xD2");
        CHECK(r.book.manifold_name == "S3xS1");
        CHECK(r.book.monodromy == SymbolicOpenBook::Monodromy::composed);
    }
    SUBCASE("two (D4, id) spheres give D3 x S1 and S4 x S1 with binding S2 x S1") {
        SymbolicOpenBook s5a{"S5a", 5, {"D4", 1, {}}, {"S3", 1}};
        SymbolicOpenBook s5b{"S5b", 5, {"D4", 1, {}}, {"S3", 1}};
        SymbolicSumResult r = binding_sum_symbolic(s5a, s5b);
        CHECK(r.book.page.chi == 0);
        CHECK(r.book.page.name == "D3xS1");
        CHECK(r.book.manifold_name == "S4xS1");
        CHECK(r.book.binding.name == "S2xS1");
    }
    SUBCASE("Sigma' = point reduces to the three-dimensional chi law") {
        SymbolicOpenBook a{"a", 3, {"disc", 1, {}}, {"pt", 1}};
        SymbolicOpenBook b{"b", 3, {"disc", 1, {}}, {"pt", 1}};
        CHECK(binding_sum_symbolic(a, b).book.page.chi == 0);
    }
    SUBCASE("descriptor mismatch is rejected") {
        SymbolicOpenBook a{"a", 5, {"D4", 1, {}}, {"S3", 1}};
        SymbolicOpenBook b{"b", 5, {"D4", 1, {}}, {"S2", 1}};
        CHECK_THROWS_AS((void)binding_sum_symbolic(a, b), SurfaceError);
    }
}
