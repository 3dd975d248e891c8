#include "obcalc/surface.hpp"

#include <algorithm>
#include <sstream>

namespace obcalc {

long long dot(const H1Covector& u, const H1Class& x) {
    if (u.size() != x.size()) throw SurfaceError("dot: dimension mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * x[i];
    return s;
}

H1Class add_scaled(H1Class x, long long k, const H1Class& c) {
    if (x.size() != c.size()) throw SurfaceError("add_scaled: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += k * c[i];
    return x;
}

bool is_zero(const H1Class& x) {
    return std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
}

namespace {

H1Class unit(std::size_t n, std::size_t i) {
    H1Class e(n, 0);
    e[i] = 1;
    return e;
}

std::vector<long long> extended(const std::vector<long long>& v, std::size_t n) {
    std::vector<long long> out(n, 0);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

}  // namespace

SurfaceModel SurfaceModel::standard(int genus, int boundary, const std::string& prefix) {
    if (genus < 0 || boundary < 1)
        throw SurfaceError("standard surface needs genus >= 0 and boundary >= 1");
    SurfaceModel s;
    const int rank = 2 * genus + boundary - 1;
    s.basis_names_.reserve(rank);
    for (int i = 1; i <= genus; ++i) {
        s.basis_names_.push_back("a" + std::to_string(i));
        s.basis_names_.push_back("b" + std::to_string(i));
    }
    Component comp;
    comp.chi = 2 - 2 * genus - boundary;
    for (int i = 1; i <= boundary; ++i) {
        std::string label = prefix + "." + std::to_string(i);
        comp.labels.push_back(label);
        if (i < boundary) s.basis_names_.push_back("d(" + label + ")");
    }
    const std::size_t n = s.basis_names_.size();
    s.pairing_.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < genus; ++i) {
        s.pairing_[2 * i][2 * i + 1] = 1;
        s.pairing_[2 * i + 1][2 * i] = -1;
    }
    // Last circle carries minus the sum of the kept circle classes.
    H1Class last(n, 0);
    for (int i = 0; i < boundary - 1; ++i) last[2 * genus + i] = -1;
    for (int i = 1; i <= boundary; ++i) {
        const std::string& label = comp.labels[i - 1];
        s.label_component_[label] = 0;
        if (i < boundary) {
            s.boundary_class_[label] = unit(n, 2 * genus + i - 1);
            s.arc_potential_[label] = unit(n, 2 * genus + i - 1);
        } else {
            s.boundary_class_[label] = last;
            s.arc_potential_[label] = H1Covector(n, 0);
        }
    }
    s.components_.push_back(std::move(comp));
    for (int i = 1; i <= genus; ++i) {
        s.named_curves_["a" + std::to_string(i)] = unit(n, 2 * (i - 1));
        s.named_curves_["b" + std::to_string(i)] = unit(n, 2 * (i - 1) + 1);
    }
    return s;
}

SurfaceModel SurfaceModel::disjoint_union(const SurfaceModel& s0, const SurfaceModel& s1) {
    SurfaceModel s;
    const std::size_t n0 = s0.basis_names_.size(), n1 = s1.basis_names_.size();
    const std::size_t n = n0 + n1;
    for (const auto& nm : s0.basis_names_) s.basis_names_.push_back(nm);
    for (const auto& nm : s1.basis_names_) s.basis_names_.push_back(nm);
    s.pairing_.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j) s.pairing_[i][j] = s0.pairing_[i][j];
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) s.pairing_[n0 + i][n0 + j] = s1.pairing_[i][j];

    s.components_ = s0.components_;
    for (const auto& c : s1.components_) s.components_.push_back(c);
    for (const auto& [label, comp] : s0.label_component_) s.label_component_[label] = comp;
    const int c0 = static_cast<int>(s0.components_.size());
    for (const auto& [label, comp] : s1.label_component_) {
        if (s0.label_component_.count(label))
            throw SurfaceError("disjoint_union: duplicate boundary label " + label);
        s.label_component_[label] = comp + c0;
    }
    for (const auto& [label, cls] : s0.boundary_class_) s.boundary_class_[label] = extended(cls, n);
    for (const auto& [label, u] : s0.arc_potential_) s.arc_potential_[label] = extended(u, n);
    auto shift = [&](const std::vector<long long>& v) {
        std::vector<long long> out(n, 0);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<long>(n0));
        return out;
    };
    for (const auto& [label, cls] : s1.boundary_class_) s.boundary_class_[label] = shift(cls);
    for (const auto& [label, u] : s1.arc_potential_) s.arc_potential_[label] = shift(u);
    for (const auto& [name, cls] : s0.named_curves_) s.named_curves_[name] = extended(cls, n);
    for (const auto& [name, cls] : s1.named_curves_) {
        if (!s.named_curves_.count(name)) s.named_curves_[name] = shift(cls);
        // a1/b1 style names collide across pieces; d(label) stays unambiguous.
        else s.named_curves_.erase(name);
    }
    return s;
}

int SurfaceModel::chi() const {
    int c = 0;
    for (const auto& comp : components_) c += comp.chi;
    return c;
}

std::vector<std::string> SurfaceModel::boundary_labels() const {
    std::vector<std::string> out;
    for (const auto& comp : components_)
        for (const auto& label : comp.labels) out.push_back(label);
    return out;
}

bool SurfaceModel::has_label(const std::string& label) const {
    return label_component_.count(label) != 0;
}

int SurfaceModel::component_of(const std::string& label) const {
    auto it = label_component_.find(label);
    if (it == label_component_.end()) throw SurfaceError("unknown boundary label " + label);
    return it->second;
}

const H1Class& SurfaceModel::boundary_class(const std::string& label) const {
    auto it = boundary_class_.find(label);
    if (it == boundary_class_.end()) throw SurfaceError("unknown boundary label " + label);
    return it->second;
}

const H1Covector& SurfaceModel::arc_potential(const std::string& label) const {
    auto it = arc_potential_.find(label);
    if (it == arc_potential_.end()) throw SurfaceError("unknown boundary label " + label);
    return it->second;
}

long long SurfaceModel::pair(const H1Class& x, const H1Class& y) const {
    const std::size_t n = basis_names_.size();
    if (x.size() != n || y.size() != n)
        throw SurfaceError("pair: class does not live on this surface");
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (y[j] != 0) s += x[i] * pairing_[i][j] * y[j];
    }
    return s;
}

H1Covector SurfaceModel::pairing_row(const H1Class& x) const {
    const std::size_t n = basis_names_.size();
    H1Covector row(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0) row[j] += x[i] * pairing_[i][j];
    return row;
}

bool SurfaceModel::has_curve(const std::string& name) const {
    if (named_curves_.count(name)) return true;
    if (name.rfind("d(", 0) == 0 && name.back() == ')')
        return has_label(name.substr(2, name.size() - 3));
    if (name == "core")
        return components_.size() == 1 && components_[0].genus() == 0 &&
               components_[0].boundary_count() == 2;
    return false;
}

H1Class SurfaceModel::resolve(const std::string& name) const {
    auto it = named_curves_.find(name);
    if (it != named_curves_.end()) return it->second;
    if (name.rfind("d(", 0) == 0 && name.back() == ')')
        return boundary_class(name.substr(2, name.size() - 3));
    if (name == "core") {
        if (components_.size() == 1 && components_[0].genus() == 0 &&
            components_[0].boundary_count() == 2)
            return boundary_class(components_[0].labels[0]);
        throw SurfaceError("curve alias 'core' needs an annulus page");
    }
    throw SurfaceError("unresolvable curve name " + name);
}

void SurfaceModel::register_curve(const std::string& name, H1Class c) {
    if (c.size() != basis_names_.size()) throw SurfaceError("register_curve: bad dimension");
    named_curves_[name] = std::move(c);
}

std::vector<std::string> SurfaceModel::registered_curves() const {
    std::vector<std::string> out;
    for (const auto& [name, cls] : named_curves_) out.push_back(name);
    return out;
}

void SurfaceModel::validate() const {
    const std::size_t n = basis_names_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (pairing_[i][j] != -pairing_[j][i])
                throw SurfaceError("pairing is not antisymmetric");
    int rank_expected = 0;
    for (const auto& comp : components_) {
        rank_expected += 1 - comp.chi;
        if (comp.labels.empty()) throw SurfaceError("component without boundary");
        if ((2 - comp.chi - comp.boundary_count()) % 2 != 0 || comp.genus() < 0)
            throw SurfaceError("component has inconsistent chi/boundary data");
        H1Class sum(n, 0);
        for (const auto& label : comp.labels) {
            const H1Class& c = boundary_class(label);
            for (std::size_t i = 0; i < n; ++i) sum[i] += c[i];
        }
        if (!is_zero(sum)) throw SurfaceError("boundary classes do not sum to zero");
        // Boundary circles are null directions of the pairing.
        for (const auto& label : comp.labels)
            if (!is_zero(pairing_row(boundary_class(label))))
                throw SurfaceError("boundary class " + label + " pairs nontrivially");
        // Crossing identities for reference arcs.
        for (const auto& p : comp.labels)
            for (const auto& q : comp.labels) {
                if (p == q) continue;
                H1Covector pv(n, 0);
                const H1Covector& uq = arc_potential(q);
                const H1Covector& up = arc_potential(p);
                for (std::size_t i = 0; i < n; ++i) pv[i] = uq[i] - up[i];
                for (const auto& r : comp.labels) {
                    long long expect = (r == q) ? 1 : (r == p) ? -1 : 0;
                    if (dot(pv, boundary_class(r)) != expect)
                        throw SurfaceError("arc/boundary crossing identity fails at " + p + "->" +
                                           q + " vs " + r);
                }
            }
    }
    if (rank_expected != static_cast<int>(n))
        throw SurfaceError("rank does not match 1 - chi bookkeeping");
}

TwistWord TwistWord::inverse() const {
    TwistWord w;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        TwistEntry e = *it;
        e.exponent = -e.exponent;
        w.entries.push_back(std::move(e));
    }
    return w;
}

TwistWord TwistWord::concat(const TwistWord& outer, const TwistWord& inner) {
    TwistWord w = outer;
    for (const auto& e : inner.entries) w.entries.push_back(e);
    return w;
}

std::string TwistWord::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : entries) {
        if (!first) os << " ";
        first = false;
        os << e.display;
    }
    return os.str();
}

H1Class twist_class(const SurfaceModel& s, const TwistWord& w, H1Class x) {
    for (auto it = w.entries.rbegin(); it != w.entries.rend(); ++it) {
        long long k = s.pair(it->curve, x);
        if (k != 0) x = add_scaled(std::move(x), it->exponent * k, it->curve);
    }
    return x;
}

long long arc_pair(const SurfaceModel& s, const ArcClass& g, const H1Class& c) {
    const H1Covector& ut = s.arc_potential(g.to);
    const H1Covector& uf = s.arc_potential(g.from);
    long long v = dot(ut, c) - dot(uf, c);
    if (!g.loop.empty()) v += s.pair(g.loop, c);
    return v;
}

ArcClass twist_arc(const SurfaceModel& s, const TwistWord& w, ArcClass g) {
    if (g.loop.empty()) g.loop = s.zero();
    for (auto it = w.entries.rbegin(); it != w.entries.rend(); ++it) {
        long long k = -arc_pair(s, g, it->curve);  // <c, gamma>
        if (k != 0) g.loop = add_scaled(std::move(g.loop), it->exponent * k, it->curve);
    }
    return g;
}

// SurfaceOps has privileged access to SurfaceModel internals.
struct SurfaceOps {
    static SurfaceModel extend_basis(const SurfaceModel& base,
                                     const std::vector<std::string>& new_names) {
        SurfaceModel s = base;
        const std::size_t n = base.basis_names_.size() + new_names.size();
        for (const auto& nm : new_names) s.basis_names_.push_back(nm);
        for (auto& row : s.pairing_) row.resize(n, 0);
        s.pairing_.resize(n, std::vector<long long>(n, 0));
        for (auto& [label, cls] : s.boundary_class_) cls.resize(n, 0);
        for (auto& [label, u] : s.arc_potential_) u.resize(n, 0);
        for (auto& [name, cls] : s.named_curves_) cls.resize(n, 0);
        return s;
    }

    static void set_pair(SurfaceModel& s, std::size_t i, std::size_t j, long long v) {
        s.pairing_[i][j] = v;
        s.pairing_[j][i] = -v;
    }

    // Make pairing_row(e_i) equal `row` (antisymmetry mirrored).
    static void set_pairing_with(SurfaceModel& s, std::size_t i, const H1Covector& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (i != j) set_pair(s, i, j, row[j]);
    }

    static std::map<std::string, H1Class>& bclass(SurfaceModel& s) { return s.boundary_class_; }
    static std::map<std::string, H1Covector>& upot(SurfaceModel& s) { return s.arc_potential_; }
    static std::map<std::string, int>& lcomp(SurfaceModel& s) { return s.label_component_; }
    static std::vector<Component>& comps(SurfaceModel& s) { return s.components_; }
};

HandleResult attach_one_handle(const SurfaceModel& s, const std::string& site_a,
                               const std::string& site_b, const std::string& merged_label,
                               const std::string& split_a, const std::string& split_b) {
    if (!s.has_label(site_a)) throw SurfaceError("attach_one_handle: unknown label " + site_a);
    if (!s.has_label(site_b)) throw SurfaceError("attach_one_handle: unknown label " + site_b);
    const std::size_t n0 = s.basis_names().size();

    if (site_a != site_b) {
        // Band joining two distinct circles: they merge into one.
        const int ca = s.component_of(site_a), cb = s.component_of(site_b);
        const bool same_comp = (ca == cb);
        H1Class class_a = s.boundary_class(site_a);
        H1Class class_b = s.boundary_class(site_b);
        H1Covector pot_a = s.arc_potential(site_a);
        H1Covector pot_b = s.arc_potential(site_b);

        std::vector<std::string> fresh;
        std::string beta_name;
        if (same_comp) {
            beta_name = "band(" + merged_label + ")";
            fresh.push_back(beta_name);
        }
        SurfaceModel out = SurfaceOps::extend_basis(s, fresh);
        const std::size_t n = out.basis_names().size();
        if (same_comp) {
            // Loop through the band; pairs like the reference arc a -> b.
            H1Covector row(n, 0);
            for (std::size_t j = 0; j < n0; ++j) row[j] = pot_b[j] - pot_a[j];
            SurfaceOps::set_pairing_with(out, n0, row);
        }

        auto& bclass = SurfaceOps::bclass(out);
        auto& upot = SurfaceOps::upot(out);
        auto& lcomp = SurfaceOps::lcomp(out);
        auto& comps = SurfaceOps::comps(out);

        H1Class merged = out.zero();
        for (std::size_t i = 0; i < n0; ++i) merged[i] = class_a[i] + class_b[i];
        bclass.erase(site_a);
        bclass.erase(site_b);
        bclass[merged_label] = merged;
        upot[merged_label] = extended(pot_a, n);
        if (!same_comp) {
            // Arcs into the absorbed component route through the band; the
            // transit crosses the pushed-in circles of both attachment sites.
            for (const auto& label : comps[cb].labels) {
                H1Covector u = upot[label];
                for (std::size_t j = 0; j < n0; ++j) u[j] += pot_a[j] - pot_b[j];
                upot[label] = u;
            }
        }
        upot.erase(site_a);
        upot.erase(site_b);

        if (same_comp) {
            Component& comp = comps[ca];
            comp.chi -= 1;
            std::erase(comp.labels, site_a);
            std::erase(comp.labels, site_b);
            comp.labels.push_back(merged_label);
            lcomp.erase(site_a);
            lcomp.erase(site_b);
            lcomp[merged_label] = ca;
        } else {
            Component joined;
            joined.chi = comps[ca].chi + comps[cb].chi - 1;
            for (const auto& l : comps[ca].labels)
                if (l != site_a) joined.labels.push_back(l);
            for (const auto& l : comps[cb].labels)
                if (l != site_b) joined.labels.push_back(l);
            joined.labels.push_back(merged_label);
            std::vector<Component> rebuilt;
            for (int i = 0; i < static_cast<int>(comps.size()); ++i)
                if (i != ca && i != cb) rebuilt.push_back(comps[i]);
            rebuilt.push_back(joined);
            comps = std::move(rebuilt);
            lcomp.clear();
            for (int i = 0; i < static_cast<int>(comps.size()); ++i)
                for (const auto& l : comps[i].labels) lcomp[l] = i;
        }
        out.validate();
        HandleResult r{std::move(out), {}, {merged_label}};
        if (same_comp) r.new_basis.push_back(beta_name);
        return r;
    }

    // Both feet on one circle: it splits in two. split_a keeps the marked
    // point of the old circle.
    if (split_a.empty() || split_b.empty())
        throw SurfaceError("attach_one_handle: split needs two new labels");
    const int comp_idx = s.component_of(site_a);
    H1Class old_class = s.boundary_class(site_a);
    H1Covector old_pot = s.arc_potential(site_a);

    std::string qname = "d(" + split_b + ")";
    SurfaceModel out = SurfaceOps::extend_basis(s, {qname});
    const std::size_t n = out.basis_names().size();
    // The new circle split_b is a genuine boundary circle: null pairing row.

    auto& bclass = SurfaceOps::bclass(out);
    auto& upot = SurfaceOps::upot(out);
    auto& lcomp = SurfaceOps::lcomp(out);
    auto& comps = SurfaceOps::comps(out);

    H1Class q = out.zero();
    q[n0] = 1;
    H1Class p = extended(old_class, n);
    p[n0] -= 1;
    bclass.erase(site_a);
    bclass[split_a] = p;
    bclass[split_b] = q;
    upot[split_a] = extended(old_pot, n);
    H1Covector uq = extended(old_pot, n);
    uq[n0] += 1;
    upot[split_b] = uq;
    upot.erase(site_a);

    Component& comp = comps[comp_idx];
    comp.chi -= 1;
    std::erase(comp.labels, site_a);
    comp.labels.push_back(split_a);
    comp.labels.push_back(split_b);
    lcomp.erase(site_a);
    lcomp[split_a] = comp_idx;
    lcomp[split_b] = comp_idx;

    out.validate();
    return HandleResult{std::move(out), {qname}, {split_a, split_b}};
}

DoubledSurface glue_double(const SurfaceModel& s0, const SurfaceModel& s1,
                           const std::vector<std::pair<std::string, std::string>>& matching) {
    if (s0.components().size() != 1 || s1.components().size() != 1)
        throw SurfaceError("glue_double: pages must be connected");
    auto l0 = s0.boundary_labels();
    auto l1 = s1.boundary_labels();
    if (l0.size() != l1.size()) throw SurfaceError("glue_double: boundary count mismatch");
    if (matching.size() != l0.size()) throw SurfaceError("glue_double: matching must be full");
    {
        std::vector<std::string> seen0, seen1;
        for (const auto& [a, b] : matching) {
            if (!s0.has_label(a) || !s1.has_label(b))
                throw SurfaceError("glue_double: matching references unknown label");
            seen0.push_back(a);
            seen1.push_back(b);
        }
        std::sort(seen0.begin(), seen0.end());
        std::sort(seen1.begin(), seen1.end());
        if (std::unique(seen0.begin(), seen0.end()) != seen0.end() ||
            std::unique(seen1.begin(), seen1.end()) != seen1.end())
            throw SurfaceError("glue_double: matching is not a bijection");
    }

    DoubledSurface d;
    const int n0 = s0.rank(), n1 = s1.rank();
    const int b = static_cast<int>(matching.size());
    d.offset1 = n0;
    d.crossing_offset = n0 + n1;
    d.gens = n0 + n1 + (b - 1);
    d.matching = matching;
    const int chi_closed = s0.chi() + s1.chi();
    d.closed_genus = (2 - chi_closed) / 2;

    d.relations = IntMatrix(static_cast<std::size_t>(d.gens), static_cast<std::size_t>(b));
    for (int k = 0; k < b; ++k) {
        const H1Class& c0 = s0.boundary_class(matching[k].first);
        const H1Class& c1 = s1.boundary_class(matching[k].second);
        for (int i = 0; i < n0; ++i) d.relations.at(i, k) = c0[i];
        for (int i = 0; i < n1; ++i) d.relations.at(n0 + i, k) = -c1[i];
    }
    return d;
}

}  // namespace obcalc
