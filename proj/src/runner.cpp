#include "obcalc/doc.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>

namespace obcalc {

namespace {

using nlohmann::json;

std::string group_str(const AbelianGroup& g) { return g.to_string(); }

json group_json(const AbelianGroup& g) {
    json j;
    j["free_rank"] = g.free_rank;
    j["torsion"] = json::array();
    for (const auto& d : g.torsion) j["torsion"].push_back(d.str());
    j["pretty"] = g.to_string();
    return j;
}

std::string page_summary(const SurfaceModel& page) {
    std::ostringstream os;
    const auto& comps = page.components();
    if (comps.size() == 1) {
        os << "genus=" << comps[0].genus() << " boundary=" << comps[0].boundary_count()
           << " chi=" << comps[0].chi;
    } else {
        os << comps.size() << " components:";
        for (const auto& c : comps)
            os << " (genus=" << c.genus() << " boundary=" << c.boundary_count()
               << " chi=" << c.chi << ")";
    }
    return os.str();
}

RunOutcome run_invariants(const OpenBookDoc& doc, const RunOptions& opts) {
    RunOutcome out;
    std::ostringstream os;
    json items = json::array();
    for (const auto& decl : doc.books) {
        OpenBook3 ob = build_book(decl);
        auto h = manifold_h_star(ob);
        if (opts.json) {
            json j;
            j["name"] = decl.name;
            j["kind"] = "openbook";
            j["chi"] = ob.page.chi();
            j["H0"] = group_json(h[0]);
            j["H1"] = group_json(h[1]);
            j["H2"] = group_json(h[2]);
            j["H3"] = group_json(h[3]);
            items.push_back(j);
        } else {
            os << "openbook " << decl.name << ": page " << page_summary(ob.page) << "\n";
            os << "  H0=" << group_str(h[0]) << " H1=" << group_str(h[1])
               << " H2=" << group_str(h[2]) << " H3=" << group_str(h[3]) << "\n";
        }
    }
    for (const auto& decl : doc.symbolic) {
        SymbolicOpenBook b = build_symbolic(decl);
        if (opts.json) {
            json j;
            j["name"] = b.name;
            j["kind"] = "symbolic";
            j["dim"] = b.dim;
            j["page"] = {{"name", b.page.name}, {"chi", b.page.chi}};
            j["binding"] = {{"name", b.binding.name}, {"chi_page", b.binding.page_chi}};
            j["H1"] = "unavailable for symbolic books";
            items.push_back(j);
        } else {
            os << "symbolic " << b.name << ": dim=" << b.dim << " page chi=" << b.page.chi
               << " \"" << b.page.name << "\" binding chi_page=" << b.binding.page_chi << " \""
               << b.binding.name << "\"\n";
            os << "  H1 unavailable for symbolic books\n";
        }
    }
    out.text = opts.json ? items.dump(2) + "\n" : os.str();
    return out;
}

std::string print_result_book(const OpenBook3& ob, const std::string& name) {
    std::ostringstream os;
    const auto& comps = ob.page.components();
    if (comps.size() == 1) {
        os << "openbook " << name << " { page genus=" << comps[0].genus()
           << " boundary=" << comps[0].boundary_count() << "; monodromy = \""
           << canonical_word_string(ob) << "\"; }\n";
        os << "# binding labels:";
        for (const auto& l : ob.binding_labels()) os << " " << l;
        os << "\n";
    } else {
        os << "# result has " << comps.size() << " components: " << page_summary(ob.page) << "\n";
        os << "# monodromy: " << canonical_word_string(ob) << "\n";
    }
    return os.str();
}

RunOutcome run_sum(const OpenBookDoc& doc, const RunOptions& opts) {
    RunOutcome out;
    std::ostringstream os;
    json items = json::array();
    if (doc.sums.empty()) {
        out.text = "no sum directives\n";
        return out;
    }
    const bool symbolic_mode = doc.find_symbolic(doc.sums.front().book0) != nullptr;
    if (symbolic_mode) {
        std::map<std::string, SymbolicOpenBook> live;
        for (const auto& d : doc.symbolic) live[d.name] = build_symbolic(d);
        for (const auto& s : doc.sums) {
            auto i0 = live.find(s.book0), i1 = live.find(s.book1);
            if (i0 == live.end() || i1 == live.end())
                throw SurfaceError("sum references a consumed or unknown symbolic book");
            SymbolicSumResult r = binding_sum_symbolic(i0->second, i1->second);
            live.erase(s.book0);
            live.erase(s.book1);
            live[r.book.name] = r.book;
            if (opts.json) {
                json j;
                j["sum"] = {s.book0, s.book1};
                j["result"] = r.book.name;
                j["page"] = {{"name", r.book.page.name}, {"chi", r.book.page.chi}};
                j["binding"] = {{"name", r.book.binding.name},
                                {"chi_page", r.book.binding.page_chi}};
                j["manifold"] = r.book.manifold_name;
                j["monodromy"] = r.book.monodromy_note;
                j["note"] = r.note;
                items.push_back(j);
            } else {
                os << "symbolic sum " << s.book0 << " # " << s.book1 << ":\n";
                os << "  page chi=" << r.book.page.chi << " \"" << r.book.page.name << "\"\n";
                os << "  binding chi_page=" << r.book.binding.page_chi << " \""
                   << r.book.binding.name << "\"\n";
                if (!r.book.manifold_name.empty())
                    os << "  manifold: " << r.book.manifold_name << "\n";
                os << "  monodromy: " << r.book.monodromy_note << "\n";
                os << "  " << r.note << "\n";
            }
        }
        out.text = opts.json ? items.dump(2) + "\n" : os.str();
        return out;
    }

    if (doc.books.empty()) {
        out.ok = false;
        out.text = "sum requires concrete open book declarations\n";
        return out;
    }
    OpenBook3 acc = build_book(doc.books.front());
    for (std::size_t i = 1; i < doc.books.size(); ++i)
        acc = OpenBook3::disjoint_union(acc, build_book(doc.books[i]));
    for (const auto& s : doc.sums) {
        SumSite site{s.book0 + "." + s.label0, s.book1 + "." + s.label1};
        SumResult r = binding_sum_3d(acc, site);
        acc = std::move(r.book);
        if (opts.json) {
            json j;
            j["site"] = {site.label0, site.label1};
            j["glue"] = r.certificate.glue_label;
            j["handles"] = {r.certificate.handle1, r.certificate.handle2};
            j["chi_before"] = r.certificate.chi_before;
            j["chi_after"] = r.certificate.chi_after;
            j["sign"] = r.certificate.sign;
            j["appended_word"] = r.certificate.appended.to_string();
            j["omitted_trivial"] = r.certificate.omitted_trivial;
            items.push_back(j);
        } else {
            os << r.certificate.to_text();
        }
    }
    if (opts.json) {
        json j;
        j["result"] = json::object();
        const auto& comps = acc.page.components();
        j["result"]["components"] = json::array();
        for (const auto& c : comps)
            j["result"]["components"].push_back(
                {{"genus", c.genus()}, {"boundary", c.boundary_count()}, {"chi", c.chi}});
        j["result"]["monodromy"] = canonical_word_string(acc);
        j["result"]["H1"] = group_json(manifold_h1(acc));
        items.push_back(j);
        out.text = items.dump(2) + "\n";
    } else {
        os << print_result_book(acc, "result");
        os << "# H1 of the resulting manifold";
        if (acc.page.components().size() > 1) os << " (disjoint union)";
        os << ": " << group_str(manifold_h1(acc)) << "\n";
        out.text = os.str();
    }
    return out;
}

RunOutcome run_oracle_compare(const OpenBookDoc& doc, const RunOptions& opts) {
    RunOutcome out;
    if (doc.books.size() != 2 || !doc.symbolic.empty())
        throw SurfaceError("oracle-compare needs exactly two concrete open books");
    const ConcreteDecl& d0 = doc.books[0];
    const ConcreteDecl& d1 = doc.books[1];
    if (d0.boundary != d1.boundary)
        throw SurfaceError("oracle-compare needs equal binding counts");
    if (static_cast<int>(doc.sums.size()) != d0.boundary)
        throw SurfaceError("oracle-compare needs sum directives matching every binding pair");
    std::vector<std::pair<std::string, std::string>> matching;
    for (const auto& s : doc.sums) {
        std::string a, b;
        if (s.book0 == d0.name && s.book1 == d1.name) {
            a = s.book0 + "." + s.label0;
            b = s.book1 + "." + s.label1;
        } else if (s.book0 == d1.name && s.book1 == d0.name) {
            a = s.book1 + "." + s.label1;
            b = s.book0 + "." + s.label0;
        } else {
            throw SurfaceError("oracle-compare sums must pair the two declared books");
        }
        matching.emplace_back(a, b);
    }

    OpenBook3 b0 = build_book(d0), b1 = build_book(d1);
    AbelianGroup oracle = fibration_oracle_h1(b0, b1, matching);
    OpenBook3 acc = OpenBook3::disjoint_union(b0, b1);
    for (const auto& [la, lb] : matching) acc = binding_sum_3d(acc, SumSite{la, lb}).book;
    AbelianGroup summed = manifold_h1(acc);
    const bool match = summed == oracle;

    if (opts.json) {
        json j;
        j["binding_sum_h1"] = group_json(summed);
        j["fibration_oracle_h1"] = group_json(oracle);
        j["match"] = match;
        out.text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "binding-sum route:   H1 = " << group_str(summed) << "\n";
        os << "fibration oracle:    H1 = " << group_str(oracle) << "\n";
        os << (match ? "MATCH" : "MISMATCH") << "\n";
        out.text = os.str();
    }
    out.ok = match;
    return out;
}

RunOutcome run_contact_verify(const OpenBookDoc& doc, const RunOptions& opts) {
    RunOutcome out;
    std::vector<VerifyDirective> directives = doc.verifies;
    if (directives.empty())
        directives = {{"contact", {}, 0}, {"framing", {}, 0}, {"f1", {}, 0}};

    std::ostringstream os;
    json items = json::array();
    bool all_pass = true;
    for (const auto& v : directives) {
        GridSpec grid{opts.grid, opts.tol};
        if (auto it = v.opts.find("grid"); it != v.opts.end()) grid.n = std::stoll(it->second);
        if (auto it = v.opts.find("tol"); it != v.opts.end()) grid.tol = std::stod(it->second);
        int n_dim = 2;
        if (auto it = v.opts.find("n"); it != v.opts.end()) n_dim = std::stoi(it->second);

        PositivityReport rep;
        if (v.kind == "contact") {
            rep = verify_pushoff_contact(default_lutz_pair(), default_binding_pair(),
                                         default_profile(), n_dim, grid);
        } else if (v.kind == "framing") {
            GridSpec g = grid;
            if (g.n < 100000) g.n = 100000;
            rep = verify_framing_homotopy(default_profile(), g);
        } else {
            rep = verify_f1_nontangent(default_profile(), grid);
        }
        all_pass = all_pass && rep.pass;
        if (opts.json)
            items.push_back(json::parse(rep.to_json()));
        else
            os << rep.to_text();
    }
    out.ok = all_pass;
    out.text = opts.json ? items.dump(2) + "\n" : os.str();
    return out;
}

}  // namespace

RunOutcome run(const OpenBookDoc& doc, const std::string& command, const RunOptions& opts) {
    if (command == "invariants") return run_invariants(doc, opts);
    if (command == "sum") return run_sum(doc, opts);
    if (command == "oracle-compare") return run_oracle_compare(doc, opts);
    if (command == "contact-verify") return run_contact_verify(doc, opts);
    throw SurfaceError("unknown command '" + command + "'");
}

}  // namespace obcalc
