#pragma once

#include "obcalc/binding_sum.hpp"
#include "obcalc/contact_verify.hpp"
#include "obcalc/openbook.hpp"

#include <map>
#include <string>
#include <vector>

namespace obcalc {

struct ParseError : std::runtime_error {
    int line = 0, col = 0;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                             ": " + msg),
          line(line_),
          col(col_) {}
};

/// One monodromy factor as written: curve name in canonical spelling
/// (a1, b1, d(<book>.<i>), glue(<g>), vec[...]) plus a signed exponent.
struct WordFactor {
    std::string curve;
    long long exponent = 1;
};

struct ConcreteDecl {
    std::string name;
    int genus = 0;
    int boundary = 1;
    std::vector<WordFactor> word;
};

struct SymbolicDecl {
    std::string name;
    int dim = 3;
    int page_chi = 0;
    std::string page_desc;
    int binding_chi_page = 0;
    std::string binding_desc;
};

struct SumDirective {
    std::string book0, label0, book1, label1;
    int line = 0;
};

struct VerifyDirective {
    std::string kind;  // contact | framing | f1
    std::map<std::string, std::string> opts;
    int line = 0;
};

/// Parsed description file. Declaration order is preserved; directives run
/// in order.
struct OpenBookDoc {
    std::vector<ConcreteDecl> books;
    std::vector<SymbolicDecl> symbolic;
    std::vector<SumDirective> sums;
    std::vector<VerifyDirective> verifies;

    const ConcreteDecl* find_book(const std::string& name) const;
    const SymbolicDecl* find_symbolic(const std::string& name) const;
};

OpenBookDoc parse_document(const std::string& text);
std::string print_document(const OpenBookDoc& doc);

/// Instantiate a declared open book (page labelled "<name>.1" ..).
OpenBook3 build_book(const ConcreteDecl& decl);
SymbolicOpenBook build_symbolic(const SymbolicDecl& decl);

struct RunOptions {
    long long grid = 10000;
    double tol = 1e-6;
    bool json = false;
};

struct RunOutcome {
    std::string text;
    bool ok = true;
};

/// Commands: invariants | sum | oracle-compare | contact-verify.
RunOutcome run(const OpenBookDoc& doc, const std::string& command, const RunOptions& opts = {});

}  // namespace obcalc
