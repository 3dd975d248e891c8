#include "obcalc/binding_sum.hpp"
#include "obcalc/contact_verify.hpp"
#include "obcalc/doc.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace obcalc;

namespace {

py::object int_to_py(const Int& v) {
    // Route arbitrary-precision values through their decimal form.
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

IntMatrix matrix_from_rows(const std::vector<std::vector<long long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(int_to_py(m.at(i, j)));
        rows.append(row);
    }
    return rows;
}

py::dict group_to_py(const AbelianGroup& g) {
    py::dict d;
    d["free_rank"] = g.free_rank;
    py::list tors;
    for (const auto& t : g.torsion) tors.append(int_to_py(t));
    d["torsion"] = tors;
    d["pretty"] = g.to_string();
    return d;
}

py::dict report_to_py(const PositivityReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["grid"] = r.grid;
    d["min"] = r.min_value;
    d["argmin"] = r.argmin;
    py::dict terms;
    for (const auto& [k, v] : r.term_min) terms[py::str(k)] = v;
    d["term_min"] = terms;
    py::dict notes;
    for (const auto& [k, v] : r.notes) notes[py::str(k)] = v;
    d["notes"] = notes;
    d["tolerance"] = r.tolerance;
    d["margin"] = r.margin;
    d["pass"] = r.pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_obcalc, m) {
    m.doc() = "open book calculus: binding sums, homology oracles, contact certification";

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<long long>>& rows) {
            SnfResult s = smith_normal_form(matrix_from_rows(rows));
            return py::make_tuple(matrix_to_py(s.u), matrix_to_py(s.d), matrix_to_py(s.v));
        },
        py::arg("matrix"), "Smith normal form (U, D, V) with U*M*V = D");
    m.def(
        "cokernel",
        [](const std::vector<std::vector<long long>>& rows) {
            return group_to_py(cokernel(matrix_from_rows(rows)));
        },
        py::arg("matrix"), "Z^rows / column span as {free_rank, torsion}");

    py::class_<OpenBook3>(m, "OpenBook")
        .def_property_readonly("binding_labels", &OpenBook3::binding_labels)
        .def_property_readonly("chi", [](const OpenBook3& ob) { return ob.page.chi(); })
        .def_property_readonly("monodromy",
                               [](const OpenBook3& ob) { return canonical_word_string(ob); })
        .def_property_readonly("components",
                               [](const OpenBook3& ob) {
                                   py::list out;
                                   for (const auto& c : ob.page.components())
                                       out.append(py::make_tuple(c.genus(), c.boundary_count()));
                                   return out;
                               })
        .def("h1", [](const OpenBook3& ob) { return group_to_py(manifold_h1(ob)); })
        .def("h_star",
             [](const OpenBook3& ob) {
                 auto h = manifold_h_star(ob);
                 return py::make_tuple(group_to_py(h[0]), group_to_py(h[1]), group_to_py(h[2]),
                                       group_to_py(h[3]));
             })
        .def("monodromy_matrix",
             [](const OpenBook3& ob) { return matrix_to_py(monodromy_matrix(ob)); })
        .def("disjoint_union", &OpenBook3::disjoint_union)
        .def("binding_sum", [](const OpenBook3& ob, const std::string& l0, const std::string& l1) {
            SumResult r = binding_sum_3d(ob, SumSite{l0, l1});
            py::dict cert;
            cert["glue"] = r.certificate.glue_label;
            cert["chi_before"] = r.certificate.chi_before;
            cert["chi_after"] = r.certificate.chi_after;
            cert["appended_word"] = r.certificate.appended.to_string();
            cert["omitted_trivial"] = r.certificate.omitted_trivial;
            cert["sign"] = r.certificate.sign;
            return py::make_tuple(r.book, cert);
        });

    m.def(
        "open_book",
        [](int genus, int boundary, const std::string& monodromy, const std::string& name) {
            std::ostringstream doc;
            doc << "openbook " << name << " { page genus=" << genus << " boundary=" << boundary
                << "; monodromy = \"" << monodromy << "\"; }";
            OpenBookDoc parsed = parse_document(doc.str());
            return build_book(parsed.books.at(0));
        },
        py::arg("genus"), py::arg("boundary"), py::arg("monodromy") = "", py::arg("name") = "A",
        "Open book with a standard page; monodromy uses the T(curve)^k grammar");

    m.def(
        "fibration_oracle_h1",
        [](const OpenBook3& a, const OpenBook3& b,
           const std::vector<std::pair<std::string, std::string>>& matching) {
            return group_to_py(fibration_oracle_h1(a, b, matching));
        },
        py::arg("book0"), py::arg("book1"), py::arg("matching"));

    m.def("calibrated_sign", &calibrated_sign);
    m.def("calibration_log", [] { return calibration_log(); });

    m.def(
        "verify_pushoff_contact",
        [](int n, long long grid, double tol) {
            return report_to_py(verify_pushoff_contact(default_lutz_pair(),
                                                       default_binding_pair(), default_profile(),
                                                       n, GridSpec{grid, tol}));
        },
        py::arg("n") = 2, py::arg("grid") = 10000, py::arg("tol") = 1e-6);
    m.def(
        "verify_framing_homotopy",
        [](long long grid, double tol) {
            return report_to_py(verify_framing_homotopy(default_profile(), GridSpec{grid, tol}));
        },
        py::arg("grid") = 100000, py::arg("tol") = 1e-6);
    m.def(
        "verify_f1_nontangent",
        [](long long grid, double tol) {
            return report_to_py(verify_f1_nontangent(default_profile(), GridSpec{grid, tol}));
        },
        py::arg("grid") = 10000, py::arg("tol") = 1e-6);

    m.def(
        "run",
        [](const std::string& text, const std::string& command, long long grid, double tol,
           bool json) {
            OpenBookDoc doc = parse_document(text);
            RunOptions opts;
            opts.grid = grid;
            opts.tol = tol;
            opts.json = json;
            RunOutcome out = run(doc, command, opts);
            return py::make_tuple(out.ok, out.text);
        },
        py::arg("text"), py::arg("command"), py::arg("grid") = 10000, py::arg("tol") = 1e-6,
        py::arg("json") = false,
        "Parse a description document and run invariants | sum | oracle-compare | contact-verify");

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<SurfaceError>(m, "SurfaceError");
    py::register_exception<VerifyError>(m, "VerifyError");
}
