#pragma once

#include "obcalc/surface.hpp"
#include "obcalc/zmodule.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace obcalc {

/// Abstract open book in dimension three: page + monodromy word. The word
/// applies right to left; an empty word is the identity.
struct OpenBook3 {
    SurfaceModel page;
    TwistWord monodromy;

    std::vector<std::string> binding_labels() const { return page.boundary_labels(); }
    static OpenBook3 disjoint_union(const OpenBook3& a, const OpenBook3& b);
};

/// Matrix of the monodromy action on H1(page), columns = images of basis
/// vectors. Identity word gives the identity matrix.
IntMatrix monodromy_matrix(const OpenBook3& ob);

/// Word rendered against the book's own page: factors keep their curve
/// names when those still resolve to the stored class, otherwise they are
/// printed as full-rank vec[...] literals.
std::string canonical_word_string(const OpenBook3& ob);

/// Homology discrepancy of the mapping-torus sections: for each binding
/// label i, delta_i = [gamma_i - phi(gamma_i)] where gamma_i is the
/// reference arc from the component's basepoint circle to circle i.
/// Changing arc choices shifts each delta by an element of im(phi_* - id),
/// which leaves manifold_h1 unchanged.
struct SectionDefects {
    std::map<std::string, H1Class> delta;
    std::map<std::string, std::string> reference;  // label -> its component's ref label
};

SectionDefects section_defects(const OpenBook3& ob,
                               const std::map<std::string, std::string>& ref_override = {},
                               const std::map<std::string, H1Class>& arc_shift = {});

/// H1 of the closed manifold determined by the open book:
/// generators H1(page) + one t per page component, relations
/// (phi_* - id) H1(page) and { t_comp(i) + delta_i } over binding labels.
AbelianGroup manifold_h1(const OpenBook3& ob,
                         const std::map<std::string, H1Class>& arc_shift = {});

/// (H0, H1, H2, H3) for a connected resulting manifold; H2 is free of the
/// same rank as H1 by Poincare duality.
std::array<AbelianGroup, 4> manifold_h_star(const OpenBook3& ob);

/// Independent oracle: the binding sum of two open books along all of their
/// bindings fibres over the circle with fibre (-S0) u_B S1; this computes
/// H1 of that mapping torus via the glued monodromy.
AbelianGroup fibration_oracle_h1(const OpenBook3& ob0, const OpenBook3& ob1,
                                 const std::vector<std::pair<std::string, std::string>>& matching);

/// Open book in general dimension, descriptor-level only. These refuse
/// homology computations rather than faking them.
struct PageDescriptor {
    std::string name;
    int chi = 0;
    std::optional<std::vector<int>> betti;
};

struct BindingDescriptor {
    std::string name;
    int page_chi = 0;  // chi of the binding's own page Sigma'
};

struct SymbolicOpenBook {
    std::string name;
    int dim = 3;  // ambient manifold dimension, >= 3
    PageDescriptor page;
    BindingDescriptor binding;
    enum class Monodromy { identity, composed } monodromy = Monodromy::identity;
    std::string monodromy_note = "identity";
    std::string manifold_name;  // known identification if any

    void validate() const;
};

}  // namespace obcalc
