#pragma once

#include "obcalc/zmodule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace obcalc {

/// H1 class in the basis of its surface model.
using H1Class = std::vector<long long>;
/// Linear functional on H1 (arc pairing data).
using H1Covector = std::vector<long long>;

long long dot(const H1Covector& u, const H1Class& x);
H1Class add_scaled(H1Class x, long long k, const H1Class& c);
bool is_zero(const H1Class& x);

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Component {
    std::vector<std::string> labels;  // boundary circles, construction order
    int chi = 0;

    int boundary_count() const { return static_cast<int>(labels.size()); }
    int genus() const { return (2 - chi - boundary_count()) / 2; }
};

/// Homology bookkeeping for a compact oriented surface with boundary.
///
/// The model is a free Z-module with a fixed basis, the algebraic
/// intersection pairing on it, the class of every boundary circle, and one
/// arc "potential" per boundary circle: the pairing covector of a reference
/// arc running from a component's basepoint to the marked point of that
/// circle is potential(to) - potential(from). Standard surfaces get the
/// usual basis {a_i, b_i} + all boundary circles but the last; handle
/// attachments and binding sums extend the basis with derived generators.
///
/// Twists along nullhomologous curves act as the identity on everything
/// here; this model sees monodromy through H1 only.
class SurfaceModel {
public:
    /// Oriented genus-g surface with b >= 1 boundary circles labelled
    /// "<prefix>.1" .. "<prefix>.b".
    static SurfaceModel standard(int genus, int boundary, const std::string& prefix);
    static SurfaceModel disjoint_union(const SurfaceModel& s0, const SurfaceModel& s1);

    int rank() const { return static_cast<int>(basis_names_.size()); }
    int chi() const;
    const std::vector<Component>& components() const { return components_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }
    std::vector<std::string> boundary_labels() const;

    bool has_label(const std::string& label) const;
    int component_of(const std::string& label) const;
    const H1Class& boundary_class(const std::string& label) const;
    const H1Covector& arc_potential(const std::string& label) const;

    long long pair(const H1Class& x, const H1Class& y) const;
    H1Covector pairing_row(const H1Class& x) const;  // y -> pair(x, y)

    /// Resolve a named curve: a<i>, b<i>, d(<label>), glue(<label>),
    /// core (single-component annulus), or a registered alias.
    H1Class resolve(const std::string& name) const;
    bool has_curve(const std::string& name) const;
    void register_curve(const std::string& name, H1Class c);
    std::vector<std::string> registered_curves() const;

    /// Internal consistency: antisymmetry, per-component boundary classes
    /// summing to zero, rank == sum of (1 - chi) over components, and the
    /// arc/boundary crossing identities. Throws on violation.
    void validate() const;

    H1Class zero() const { return H1Class(basis_names_.size(), 0); }

    // Mutators used by the surface operations below.
    struct Builder;

private:
    std::vector<std::string> basis_names_;
    std::vector<std::vector<long long>> pairing_;
    std::vector<Component> components_;
    std::map<std::string, int> label_component_;
    std::map<std::string, H1Class> boundary_class_;
    std::map<std::string, H1Covector> arc_potential_;
    std::map<std::string, H1Class> named_curves_;

    friend struct SurfaceOps;
};

/// One Dehn-twist factor: transvection along `curve` iterated `exponent`
/// times (negative = left-handed). Factors along the same class compose by
/// adding exponents since a curve never meets itself algebraically.
struct TwistEntry {
    H1Class curve;
    long long exponent = 1;
    std::string display;  // canonical token, e.g. "T(a1)^1"
};

/// Monodromy word. Composition order is right to left: the last entry of
/// the list is applied first.
struct TwistWord {
    std::vector<TwistEntry> entries;

    bool empty() const { return entries.empty(); }
    TwistWord inverse() const;
    static TwistWord concat(const TwistWord& outer, const TwistWord& inner);
    std::string to_string() const;
};

/// x  |->  x + e * <c, x> * c   (so that a right-handed twist along a1
/// sends b1 to b1 + a1 with <a1, b1> = +1).
H1Class twist_class(const SurfaceModel& s, const TwistWord& w, H1Class x);

/// Properly embedded arc between marked points of two distinct boundary
/// circles of one component, recorded as reference arc + closed loop part.
struct ArcClass {
    std::string from, to;
    H1Class loop;
};

long long arc_pair(const SurfaceModel& s, const ArcClass& g, const H1Class& c);
ArcClass twist_arc(const SurfaceModel& s, const TwistWord& w, ArcClass g);

struct HandleResult {
    SurfaceModel surface;
    // Basis transfer old -> new is the coordinate inclusion (old basis
    // vectors keep their indices); these name what was added or renamed.
    std::vector<std::string> new_basis;
    std::vector<std::string> new_labels;
};

/// Attach an untwisted, orientation-preserving 1-handle.
///  - distinct labels: the circles merge into `merged_label`
///  - equal labels: the circle splits into `split_a` / `split_b`
///    (`split_a` inherits the old marked point)
HandleResult attach_one_handle(const SurfaceModel& s, const std::string& site_a,
                               const std::string& site_b, const std::string& merged_label,
                               const std::string& split_a = "", const std::string& split_b = "");

/// Presentation of H1 of the closed surface (-S0) u_B S1 with all boundary
/// circles matched, plus the data needed to push monodromies through.
struct DoubledSurface {
    int gens = 0;          // rank(S0) + rank(S1) + (b - 1) crossing classes
    int offset1 = 0;       // index of the first S1 generator
    int crossing_offset = 0;
    std::vector<std::pair<std::string, std::string>> matching;  // [i] <-> crossing i-1 (i>=1)
    IntMatrix relations;   // one column per matched circle pair
    int closed_genus = 0;
};

DoubledSurface glue_double(const SurfaceModel& s0, const SurfaceModel& s1,
                           const std::vector<std::pair<std::string, std::string>>& matching);

}  // namespace obcalc
