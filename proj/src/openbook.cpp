#include "obcalc/openbook.hpp"

#include <algorithm>
#include <sstream>

namespace obcalc {

OpenBook3 OpenBook3::disjoint_union(const OpenBook3& a, const OpenBook3& b) {
    OpenBook3 out;
    out.page = SurfaceModel::disjoint_union(a.page, b.page);
    const std::size_t n = out.page.basis_names().size();
    const std::size_t n0 = a.page.basis_names().size();
    auto lift = [&](const TwistWord& w, std::size_t offset) {
        TwistWord lifted;
        for (const auto& e : w.entries) {
            TwistEntry le;
            le.exponent = e.exponent;
            le.display = e.display;
            le.curve.assign(n, 0);
            std::copy(e.curve.begin(), e.curve.end(), le.curve.begin() + static_cast<long>(offset));
            lifted.entries.push_back(std::move(le));
        }
        return lifted;
    };
    out.monodromy = TwistWord::concat(lift(a.monodromy, 0), lift(b.monodromy, n0));
    return out;
}

std::string canonical_word_string(const OpenBook3& ob) {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : ob.monodromy.entries) {
        std::string tok;
        const std::string& d = e.display;
        if (d.rfind("T(", 0) == 0) {
            auto caret = d.rfind(")^");
            if (caret != std::string::npos) {
                std::string name = d.substr(2, caret - 2);
                if (ob.page.has_curve(name) && ob.page.resolve(name) == e.curve)
                    tok = "T(" + name + ")^" + std::to_string(e.exponent);
            }
        }
        if (tok.empty()) {
            std::ostringstream vs;
            vs << "T(vec[";
            for (std::size_t i = 0; i < e.curve.size(); ++i)
                vs << (i ? "," : "") << e.curve[i];
            vs << "])^" << e.exponent;
            tok = vs.str();
        }
        os << (first ? "" : " ") << tok;
        first = false;
    }
    return os.str();
}

IntMatrix monodromy_matrix(const OpenBook3& ob) {
    const int n = ob.page.rank();
    IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        H1Class e = ob.page.zero();
        e[j] = 1;
        H1Class img = twist_class(ob.page, ob.monodromy, std::move(e));
        for (int i = 0; i < n; ++i) m.at(i, j) = img[i];
    }
    return m;
}

SectionDefects section_defects(const OpenBook3& ob,
                               const std::map<std::string, std::string>& ref_override,
                               const std::map<std::string, H1Class>& arc_shift) {
    SectionDefects out;
    for (const auto& comp : ob.page.components()) {
        std::string ref = comp.labels.front();
        for (const auto& label : comp.labels) {
            auto it = ref_override.find(label);
            if (it != ref_override.end()) ref = it->second;
        }
        for (const auto& label : comp.labels) {
            out.reference[label] = ref;
            if (label == ref) {
                out.delta[label] = ob.page.zero();
                continue;
            }
            ArcClass arc{ref, label, ob.page.zero()};
            auto sh = arc_shift.find(label);
            if (sh != arc_shift.end()) arc.loop = sh->second;
            H1Class before = arc.loop;
            ArcClass after = twist_arc(ob.page, ob.monodromy, arc);
            H1Class delta = ob.page.zero();
            for (std::size_t i = 0; i < delta.size(); ++i)
                delta[i] = before[i] - after.loop[i];
            out.delta[label] = std::move(delta);
        }
    }
    return out;
}

AbelianGroup manifold_h1(const OpenBook3& ob, const std::map<std::string, H1Class>& arc_shift) {
    const int n = ob.page.rank();
    const int ncomp = static_cast<int>(ob.page.components().size());
    const auto labels = ob.page.boundary_labels();
    SectionDefects defects = section_defects(ob, {}, arc_shift);

    IntMatrix rel(static_cast<std::size_t>(n + ncomp),
                  static_cast<std::size_t>(n + labels.size()));
    for (int j = 0; j < n; ++j) {
        H1Class e = ob.page.zero();
        e[j] = 1;
        H1Class img = twist_class(ob.page, ob.monodromy, std::move(e));
        img[j] -= 1;
        for (int i = 0; i < n; ++i) rel.at(i, j) = img[i];
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const H1Class& d = defects.delta.at(labels[k]);
        for (int i = 0; i < n; ++i) rel.at(i, n + k) = d[i];
        rel.at(n + ob.page.component_of(labels[k]), n + k) = 1;
    }
    return cokernel(rel);
}

std::array<AbelianGroup, 4> manifold_h_star(const OpenBook3& ob) {
    if (ob.page.components().size() != 1)
        throw SurfaceError("manifold_h_star: resulting manifold must be connected");
    AbelianGroup h1 = manifold_h1(ob);
    return {AbelianGroup::free(1), h1, AbelianGroup::free(h1.free_rank), AbelianGroup::free(1)};
}

AbelianGroup fibration_oracle_h1(
    const OpenBook3& ob0, const OpenBook3& ob1,
    const std::vector<std::pair<std::string, std::string>>& matching) {
    DoubledSurface d = glue_double(ob0.page, ob1.page, matching);
    const int n0 = ob0.page.rank(), n1 = ob1.page.rank();
    const int b = static_cast<int>(matching.size());

    // The fibre is (-S0) u_B S1: a fibration of the sum restricts to the
    // reversed fibration on the side-0 piece, so the glued return map is
    // phi0^{-1} there and phi1 on the other side.
    OpenBook3 rev0{ob0.page, ob0.monodromy.inverse()};

    // The crossing classes are based at the first matched pair; section
    // defects on each side are taken relative to that pair's circles.
    const std::string ref0 = matching.front().first;
    const std::string ref1 = matching.front().second;
    std::map<std::string, std::string> ro0{{ref0, ref0}}, ro1{{ref1, ref1}};
    SectionDefects def0 = section_defects(rev0, ro0);
    SectionDefects def1 = section_defects(ob1, ro1);

    // phi-hat on the presentation generators of H1 of the doubled fibre.
    const int gens = d.gens;
    IntMatrix phi(static_cast<std::size_t>(gens), static_cast<std::size_t>(gens));
    for (int j = 0; j < n0; ++j) {
        H1Class e = rev0.page.zero();
        e[j] = 1;
        H1Class img = twist_class(rev0.page, rev0.monodromy, std::move(e));
        for (int i = 0; i < n0; ++i) phi.at(i, j) = img[i];
    }
    for (int j = 0; j < n1; ++j) {
        H1Class e = ob1.page.zero();
        e[j] = 1;
        H1Class img = twist_class(ob1.page, ob1.monodromy, std::move(e));
        for (int i = 0; i < n1; ++i) phi.at(n0 + i, n0 + j) = img[i];
    }
    for (int k = 1; k < b; ++k) {
        const int col = d.crossing_offset + (k - 1);
        phi.at(col, col) = 1;
        const H1Class& d0 = def0.delta.at(matching[k].first);
        const H1Class& d1 = def1.delta.at(matching[k].second);
        for (int i = 0; i < n0; ++i) phi.at(i, col) = -d0[i];
        for (int i = 0; i < n1; ++i) phi.at(n0 + i, col) = d1[i];
    }

    // Wang sequence, presentation-level: H1(mapping torus) is the cokernel
    // of [relations | phi - id] with a free generator t for the circle.
    const std::size_t rel_cols = d.relations.cols();
    IntMatrix rel(static_cast<std::size_t>(gens + 1), rel_cols + gens);
    for (std::size_t j = 0; j < rel_cols; ++j)
        for (int i = 0; i < gens; ++i) rel.at(i, j) = d.relations.at(i, j);
    for (int j = 0; j < gens; ++j) {
        for (int i = 0; i < gens; ++i) {
            rel.at(i, rel_cols + j) = phi.at(i, j);
            if (i == j) rel.at(i, rel_cols + j) -= 1;
        }
    }
    return cokernel(rel);
}

void SymbolicOpenBook::validate() const {
    if (dim < 3) throw SurfaceError("symbolic open book needs dimension >= 3");
}

}  // namespace obcalc
