// Acceptance suite: runs every shipping criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include "obcalc/binding_sum.hpp"
#include "obcalc/contact_verify.hpp"
#include "obcalc/doc.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

using namespace obcalc;

namespace {

std::mt19937_64 make_rng(std::uint64_t salt) {
    std::uint64_t seed = 0x0b5ca1c0ffee1234ULL;
    if (const char* env = std::getenv("OBCALC_SEED")) seed = std::strtoull(env, nullptr, 10);
    return std::mt19937_64(seed ^ salt);
}

struct Criterion {
    int id;
    std::string label;
    bool pass;
    std::string detail;
    double seconds;
    double limit;
};

template <typename F>
Criterion timed(int id, const std::string& label, double limit_seconds, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    double sec = std::chrono::duration<double>(t1 - t0).count();
    if (limit_seconds > 0 && sec > limit_seconds) {
        pass = false;
        detail += " [exceeded " + std::to_string(limit_seconds) + "s budget]";
    }
    return Criterion{id, label, pass, detail, sec, limit_seconds};
}

OpenBook3 random_book(int genus, int boundary, const std::string& prefix, std::mt19937_64& rng) {
    SurfaceModel page = SurfaceModel::standard(genus, boundary, prefix);
    std::vector<std::string> curves;
    for (int i = 1; i <= genus; ++i) {
        curves.push_back("a" + std::to_string(i));
        curves.push_back("b" + std::to_string(i));
    }
    for (const auto& l : page.boundary_labels()) curves.push_back("d(" + l + ")");
    std::uniform_int_distribution<long long> expo(-2, 2);
    TwistWord w;
    int len = static_cast<int>(rng() % 5);  // word length <= 4
    for (int k = 0; k < len; ++k) {
        long long e = expo(rng);
        if (e == 0) e = 1;
        const std::string& c = curves[rng() % curves.size()];
        w.entries.push_back(TwistEntry{page.resolve(c), e, "T(" + c + ")^" + std::to_string(e)});
    }
    return OpenBook3{std::move(page), std::move(w)};
}

bool criterion1(std::string& detail) {
    OpenBook3 both = OpenBook3::disjoint_union(OpenBook3{SurfaceModel::standard(0, 1, "A"), {}},
                                               OpenBook3{SurfaceModel::standard(0, 1, "B"), {}});
    SumResult r = binding_sum_3d(both, SumSite{"A.1", "B.1"});
    const auto& comps = r.book.page.components();
    bool page_ok = comps.size() == 1 && comps[0].genus() == 0 && comps[0].boundary_count() == 2;
    bool chi_ok = r.certificate.chi_before == 2 && r.certificate.chi_after == 0;
    bool word_ok = monodromy_matrix(r.book) == IntMatrix::identity(1);
    for (const auto& [label, d] : section_defects(r.book).delta)
        word_ok = word_ok && is_zero(d);
    AbelianGroup h1 = manifold_h1(r.book);
    bool h1_ok = h1 == AbelianGroup::free(1);
    std::ostringstream os;
    os << "page annulus: " << (page_ok ? "yes" : "NO") << ", chi 2->0: "
       << (chi_ok ? "yes" : "NO") << ", word trivial on H1+defects: " << (word_ok ? "yes" : "NO")
       << ", H1 = " << h1.to_string();
    detail = os.str();
    return page_ok && chi_ok && word_ok && h1_ok;
}

bool criterion2(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    for (long long k = 0; k <= 12; ++k) {
        SurfaceModel page = SurfaceModel::standard(0, 2, "A");
        TwistWord w;
        if (k) w.entries.push_back(TwistEntry{page.resolve("core"), k, ""});
        AbelianGroup h1 = manifold_h1(OpenBook3{page, w});
        AbelianGroup expect = k == 0 ? AbelianGroup::free(1)
                              : k == 1 ? AbelianGroup{}
                                       : AbelianGroup{0, {Int(k)}};
        if (!(h1 == expect)) {
            ok = false;
            os << " k=" << k << " got " << h1.to_string();
        }
    }
    detail = ok ? "Z/k for k = 0..12, Hopf anchor k=1 -> 0" : ("mismatches:" + os.str());
    return ok;
}

bool criterion3(std::string& detail) {
    auto rng = make_rng(101);
    struct Shape {
        int g, b;
    };
    const std::vector<Shape> shapes{{0, 1}, {0, 2}, {1, 1}, {1, 2}};
    int checked = 0;
    for (int iter = 0; iter < 200; ++iter) {
        Shape s0 = shapes[rng() % shapes.size()];
        std::vector<Shape> partners;
        for (const auto& s : shapes)
            if (s.b == s0.b) partners.push_back(s);
        Shape s1 = partners[rng() % partners.size()];
        OpenBook3 b0 = random_book(s0.g, s0.b, "A", rng);
        OpenBook3 b1 = random_book(s1.g, s1.b, "B", rng);
        std::vector<int> perm(s0.b);
        for (int i = 0; i < s0.b; ++i) perm[i] = i + 1;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<std::string, std::string>> matching;
        for (int i = 0; i < s0.b; ++i)
            matching.push_back({"A." + std::to_string(i + 1), "B." + std::to_string(perm[i])});
        AbelianGroup oracle = fibration_oracle_h1(b0, b1, matching);
        OpenBook3 acc = OpenBook3::disjoint_union(b0, b1);
        for (const auto& [la, lb] : matching) acc = binding_sum_3d(acc, SumSite{la, lb}).book;
        if (!(manifold_h1(acc) == oracle)) {
            std::ostringstream os;
            os << "instance " << iter << ": pages (" << s0.g << "," << s0.b << ")+(" << s1.g
               << "," << s1.b << ") words '" << b0.monodromy.to_string() << "' / '"
               << b1.monodromy.to_string() << "' sum=" << manifold_h1(acc).to_string()
               << " oracle=" << oracle.to_string();
            detail = os.str();
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " randomized pairs, exact equality on every instance";
    return true;
}

bool criterion4(std::string& detail) {
    SymbolicOpenBook s4a{"S4a", 4, {"D3", 1, {}}, {"S2", 1}};
    SymbolicOpenBook s4b{"S4b", 4, {"D3", 1, {}}, {"S2", 1}};
    SymbolicSumResult r4 = binding_sum_symbolic(s4a, s4b);
    bool ok4 = r4.book.page.chi == 0 && r4.book.page.name == "S1xD2" &&
               r4.book.manifold_name == "S3xS1";
    SymbolicOpenBook s5a{"S5a", 5, {"D4", 1, {}}, {"S3", 1}};
    SymbolicOpenBook s5b{"S5b", 5, {"D4", 1, {}}, {"S3", 1}};
    SymbolicSumResult r5 = binding_sum_symbolic(s5a, s5b);
    bool ok5 = r5.book.page.chi == 0 && r5.book.page.name == "D3xS1" &&
               r5.book.manifold_name == "S4xS1" && r5.book.binding.name == "S2xS1";
    std::ostringstream os;
    os << "(D3,id)#(D3,id): page chi=" << r4.book.page.chi << " \"" << r4.book.page.name
       << "\" -> " << r4.book.manifold_name << "; (D4,id)#(D4,id): page chi=" << r5.book.page.chi
       << " \"" << r5.book.page.name << "\" -> " << r5.book.manifold_name << " binding "
       << r5.book.binding.name;
    detail = os.str();
    return ok4 && ok5;
}

bool criterion5(std::string& detail) {
    const double tol = 1e-6;
    PositivityReport rep = verify_pushoff_contact(default_lutz_pair(), default_binding_pair(),
                                                  default_profile(), 2, GridSpec{10000, tol});
    std::ostringstream os;
    os.precision(6);
    os << "min(lambda mu' - lambda' mu) = " << rep.min_value << " at r' = " << rep.argmin.at(0)
       << ", margin = " << rep.margin;
    for (const auto& [k, v] : rep.notes)
        if (k.find("reduction") != std::string::npos)
            os << ", small-r' reduction " << (v == 1.0 ? "matches" : "FAILS");
    detail = os.str();
    return rep.pass;
}

bool criterion6(std::string& detail) {
    const double tol = 1e-6;
    PositivityReport rep = verify_framing_homotopy(default_profile(), GridSpec{100000, tol});
    double obstruction = 0.0, axis = 0.0, samples = 0.0;
    for (const auto& [k, v] : rep.notes) {
        if (k.find("obstruction (1/r)") != std::string::npos) obstruction = v;
        if (k.find("sin(theta)=0") != std::string::npos) axis = v;
        if (k == "samples") samples = v;
    }
    std::ostringstream os;
    os.precision(6);
    os << "min tangency distance = " << rep.min_value << " over " << samples
       << " samples, theta=pi/2 obstruction min = " << obstruction
       << ", sin(theta)=0 certificate |v1-v2| = " << axis;
    detail = os.str();
    return rep.pass && samples >= 100000.0;
}

bool criterion7(std::string& detail) {
    // 7a: SNF on 1000 random matrices.
    auto rng = make_rng(107);
    std::uniform_int_distribution<std::size_t> dim(0, 6);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int iter = 0; iter < 1000; ++iter) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        SnfResult s = smith_normal_form(m);
        if (!(s.u.mul(m).mul(s.v) == s.d) || !s.d.is_diagonal()) {
            detail = "SNF factorisation failure";
            return false;
        }
        if (m.rows() && abs(determinant(s.u)) != 1) {
            detail = "U not unimodular";
            return false;
        }
        if (m.cols() && abs(determinant(s.v)) != 1) {
            detail = "V not unimodular";
            return false;
        }
        std::size_t nmin = std::min(m.rows(), m.cols());
        for (std::size_t i = 0; i + 1 < nmin; ++i) {
            const Int &a = s.d.at(i, i), &b = s.d.at(i + 1, i + 1);
            if (a == 0 && b != 0) {
                detail = "zero ordering violated";
                return false;
            }
            if (a != 0 && b != 0 && b % a != 0) {
                detail = "divisibility chain violated";
                return false;
            }
        }
    }
    // 7b: transvections preserve the pairing, 1000 random triples.
    SurfaceModel s = SurfaceModel::standard(2, 2, "S");
    std::uniform_int_distribution<long long> coord(-4, 4);
    for (int iter = 0; iter < 1000; ++iter) {
        H1Class x = s.zero(), y = s.zero(), c = s.zero();
        for (auto& v : x) v = coord(rng);
        for (auto& v : y) v = coord(rng);
        for (auto& v : c) v = coord(rng);
        TwistWord w;
        w.entries.push_back(TwistEntry{c, (rng() % 2) ? 1 : -1, ""});
        if (s.pair(twist_class(s, w, x), twist_class(s, w, y)) != s.pair(x, y)) {
            detail = "pairing not preserved by a transvection";
            return false;
        }
    }
    // 7c: arc-choice independence of H1 on 200 random open books.
    std::uniform_int_distribution<int> genus(0, 1), extra(0, 1);
    for (int iter = 0; iter < 200; ++iter) {
        OpenBook3 ob = random_book(genus(rng), 1 + extra(rng), "S", rng);
        AbelianGroup base = manifold_h1(ob);
        std::map<std::string, H1Class> shift;
        for (const auto& l : ob.page.boundary_labels()) {
            H1Class loop = ob.page.zero();
            for (auto& v : loop) v = coord(rng);
            shift[l] = loop;
        }
        if (!(manifold_h1(ob, shift) == base)) {
            detail = "H1 changed under an arc perturbation";
            return false;
        }
    }
    detail = "SNF x1000, pairing preservation x1000, arc independence x200: zero failures";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(timed(1, "binding sum of two (disc, id) -> (annulus, id), H1 = Z", 1.0,
                            criterion1));
    results.push_back(
        timed(2, "lens family (annulus, core^k) -> Z/k, k = 0..12", 1.0, criterion2));
    results.push_back(
        timed(3, "oracle equivalence on 200 randomized binding sums", 30.0, criterion3));
    results.push_back(timed(4, "symbolic sums: S3xS1 and S4xS1 descriptors", 1.0, criterion4));
    results.push_back(timed(5, "push-off contact positivity on a 10^4 grid", 10.0, criterion5));
    results.push_back(
        timed(6, "framing homotopy tangency gap on >= 10^5 samples", 30.0, criterion6));
    results.push_back(
        timed(7, "property suites (SNF, pairing, arc independence)", 0.0, criterion7));

    bool all = true;
    for (const auto& c : results) {
        all = all && c.pass;
        std::ostringstream os;
        os.precision(3);
        os << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << " [" << std::fixed
           << c.seconds << "s] " << c.label;
        std::cout << os.str() << "\n";
        if (!c.detail.empty()) std::cout << "    " << c.detail << "\n";
    }
    std::cout << (all ? "acceptance: ALL PASS" : "acceptance: FAILURES PRESENT") << "\n";
    return all ? 0 : 1;
}
