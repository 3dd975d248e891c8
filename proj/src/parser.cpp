#include "obcalc/doc.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace obcalc {

namespace {

struct Token {
    enum Kind { ident, number, string, punct, eof } kind = eof;
    std::string text;
    long long value = 0;
    bool is_integer = false;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::eof;
            return;
        }
        char c = text_[pos_];
        if (c == '"') {
            get();
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') throw ParseError(line_, col_, "unterminated string");
                s.push_back(get());
            }
            if (pos_ >= text_.size()) throw ParseError(tok_.line, tok_.col, "unterminated string");
            get();
            tok_.kind = Token::string;
            tok_.text = s;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            // Full numeric literal: integer, decimal, or scientific form.
            std::string s;
            bool integer = true;
            if (c == '-') s.push_back(get());
            auto digits = [&] {
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    s.push_back(get());
            };
            digits();
            if (pos_ < text_.size() && text_[pos_] == '.') {
                integer = false;
                s.push_back(get());
                digits();
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                integer = false;
                s.push_back(get());
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
                    s.push_back(get());
                digits();
            }
            tok_.kind = Token::number;
            tok_.text = s;
            tok_.is_integer = integer;
            if (integer) {
                try {
                    tok_.value = std::stoll(s);
                } catch (const std::out_of_range&) {
                    throw ParseError(tok_.line, tok_.col, "integer literal out of range");
                }
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                s.push_back(get());
            tok_.kind = Token::ident;
            tok_.text = s;
            return;
        }
        tok_.kind = Token::punct;
        tok_.text = std::string(1, get());
    }

    void skip_space() {
        for (;;) {
            while (pos_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_])))
                get();
            if (pos_ < text_.size() && text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') get();
                continue;
            }
            break;
        }
    }

    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    OpenBookDoc parse() {
        OpenBookDoc doc;
        while (lex_.peek().kind != Token::eof) {
            Token head = expect(Token::ident, "declaration or directive");
            if (head.text == "openbook") {
                doc.books.push_back(parse_openbook(doc));
            } else if (head.text == "symbolic") {
                doc.symbolic.push_back(parse_symbolic(doc));
            } else if (head.text == "sum") {
                doc.sums.push_back(parse_sum(doc, head.line));
            } else if (head.text == "verify") {
                doc.verifies.push_back(parse_verify(head.line));
            } else {
                throw ParseError(head.line, head.col,
                                 "expected openbook, symbolic, sum, or verify; got '" +
                                     head.text + "'");
            }
        }
        return doc;
    }

private:
    Lexer lex_;

    Token expect(Token::Kind kind, const std::string& what) {
        Token t = lex_.take();
        if (t.kind != kind)
            throw ParseError(t.line, t.col, "expected " + what + ", got '" + t.text + "'");
        return t;
    }
    Token expect_punct(const std::string& p) {
        Token t = lex_.take();
        if (t.kind != Token::punct || t.text != p)
            throw ParseError(t.line, t.col, "expected '" + p + "', got '" + t.text + "'");
        return t;
    }
    Token expect_keyword(const std::string& kw) {
        Token t = expect(Token::ident, "'" + kw + "'");
        if (t.text != kw)
            throw ParseError(t.line, t.col, "expected '" + kw + "', got '" + t.text + "'");
        return t;
    }
    Token expect_int(const std::string& what) {
        Token t = expect(Token::number, what);
        if (!t.is_integer)
            throw ParseError(t.line, t.col, what + " must be an integer, got '" + t.text + "'");
        return t;
    }

    void check_fresh_name(const OpenBookDoc& doc, const Token& name) {
        if (doc.find_book(name.text) || doc.find_symbolic(name.text))
            throw ParseError(name.line, name.col, "duplicate name '" + name.text + "'");
    }

    ConcreteDecl parse_openbook(const OpenBookDoc& doc) {
        ConcreteDecl d;
        Token name = expect(Token::ident, "open book name");
        check_fresh_name(doc, name);
        d.name = name.text;
        expect_punct("{");
        expect_keyword("page");
        expect_keyword("genus");
        expect_punct("=");
        Token g = expect_int("genus value");
        expect_keyword("boundary");
        expect_punct("=");
        Token b = expect_int("boundary value");
        if (g.value < 0) throw ParseError(g.line, g.col, "genus must be >= 0");
        if (b.value < 1) throw ParseError(b.line, b.col, "boundary must be >= 1");
        d.genus = static_cast<int>(g.value);
        d.boundary = static_cast<int>(b.value);
        expect_punct(";");
        expect_keyword("monodromy");
        expect_punct("=");
        Token w = expect(Token::string, "monodromy word string");
        d.word = parse_word(w, d);
        expect_punct(";");
        expect_punct("}");
        return d;
    }

    SymbolicDecl parse_symbolic(const OpenBookDoc& doc) {
        SymbolicDecl d;
        Token name = expect(Token::ident, "symbolic open book name");
        check_fresh_name(doc, name);
        d.name = name.text;
        expect_punct("{");
        expect_keyword("dim");
        expect_punct("=");
        Token n = expect_int("dimension");
        if (n.value < 3) throw ParseError(n.line, n.col, "dim must be >= 3");
        d.dim = static_cast<int>(n.value);
        expect_punct(";");
        expect_keyword("page");
        expect_keyword("chi");
        expect_punct("=");
        d.page_chi = static_cast<int>(expect_int("page chi").value);
        d.page_desc = expect(Token::string, "page description").text;
        expect_punct(";");
        expect_keyword("binding");
        expect_keyword("chi_page");
        expect_punct("=");
        d.binding_chi_page = static_cast<int>(expect_int("binding chi_page").value);
        d.binding_desc = expect(Token::string, "binding description").text;
        expect_punct(";");
        expect_punct("}");
        return d;
    }

    std::pair<std::string, std::string> parse_site(const OpenBookDoc& doc) {
        Token book = expect(Token::ident, "book name");
        expect_punct(".");
        Token label = lex_.take();
        if (label.kind != Token::ident && label.kind != Token::number)
            throw ParseError(label.line, label.col, "expected binding label");
        if (const ConcreteDecl* b = doc.find_book(book.text)) {
            if (label.kind != Token::number || label.value < 1 || label.value > b->boundary)
                throw ParseError(label.line, label.col,
                                 "book '" + book.text + "' has no binding circle '" +
                                     label.text + "'");
        } else if (doc.find_symbolic(book.text)) {
            if (label.text != "B")
                throw ParseError(label.line, label.col,
                                 "symbolic books expose a single binding labelled 'B'");
        } else {
            throw ParseError(book.line, book.col, "unknown book '" + book.text + "'");
        }
        return {book.text, label.text};
    }

    SumDirective parse_sum(const OpenBookDoc& doc, int line) {
        SumDirective s;
        s.line = line;
        auto [b0, l0] = parse_site(doc);
        auto [b1, l1] = parse_site(doc);
        s.book0 = b0;
        s.label0 = l0;
        s.book1 = b1;
        s.label1 = l1;
        const bool sym0 = doc.find_symbolic(s.book0) != nullptr;
        const bool sym1 = doc.find_symbolic(s.book1) != nullptr;
        if (sym0 != sym1)
            throw ParseError(line, 1, "cannot sum a concrete and a symbolic open book");
        if (s.book0 == s.book1 && s.label0 == s.label1)
            throw ParseError(line, 1, "sum sites must be distinct");
        expect_punct(";");
        return s;
    }

    VerifyDirective parse_verify(int line) {
        VerifyDirective v;
        v.line = line;
        Token kind = expect(Token::ident, "verify kind (contact|framing|f1)");
        if (kind.text != "contact" && kind.text != "framing" && kind.text != "f1")
            throw ParseError(kind.line, kind.col, "unknown verify kind '" + kind.text + "'");
        v.kind = kind.text;
        while (lex_.peek().kind == Token::ident) {
            Token key = lex_.take();
            expect_punct("=");
            Token val = lex_.take();
            if (val.kind != Token::number && val.kind != Token::ident)
                throw ParseError(val.line, val.col, "expected option value");
            v.opts[key.text] = val.text;
        }
        expect_punct(";");
        return v;
    }

    // Word grammar: whitespace-separated factors T(<curve>)^<k>.
    std::vector<WordFactor> parse_word(const Token& tok, const ConcreteDecl& decl) {
        std::vector<WordFactor> out;
        const std::string& s = tok.text;
        std::size_t i = 0;
        auto fail = [&](std::size_t at, const std::string& msg) {
            throw ParseError(tok.line, tok.col + static_cast<int>(at) + 1, msg);
        };
        while (i < s.size()) {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i >= s.size()) break;
            std::size_t start = i;
            if (s.compare(i, 2, "T(") != 0) fail(i, "expected twist factor 'T(...)^k'");
            i += 2;
            int depth = 1;
            std::string curve;
            while (i < s.size() && depth > 0) {
                if (s[i] == '(' || s[i] == '[') ++depth;
                if (s[i] == ')' || s[i] == ']') --depth;
                if (depth > 0) curve.push_back(s[i]);
                ++i;
            }
            if (depth != 0) fail(start, "unbalanced parentheses in twist factor");
            if (i >= s.size() || s[i] != '^') fail(i, "expected '^<exponent>' after twist curve");
            ++i;
            std::size_t expo_start = i;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == expo_start || (i == expo_start + 1 && !std::isdigit(static_cast<unsigned char>(
                                                               s[expo_start]))))
                fail(expo_start, "missing exponent in twist factor");
            WordFactor f;
            try {
                f.exponent = std::stoll(s.substr(expo_start, i - expo_start));
            } catch (const std::out_of_range&) {
                fail(expo_start, "exponent out of range");
            }
            f.curve = canonical_curve(curve, decl, tok, start);
            out.push_back(std::move(f));
        }
        return out;
    }

    std::string canonical_curve(const std::string& curve, const ConcreteDecl& decl,
                                const Token& tok, std::size_t at) {
        auto fail = [&](const std::string& msg) {
            throw ParseError(tok.line, tok.col + static_cast<int>(at) + 1, msg);
        };
        if (curve == "core") {
            if (decl.genus != 0 || decl.boundary != 2)
                fail("alias 'core' needs an annulus page");
            return "d(" + decl.name + ".1)";
        }
        if ((curve[0] == 'a' || curve[0] == 'b') && curve.size() > 1) {
            for (std::size_t k = 1; k < curve.size(); ++k)
                if (!std::isdigit(static_cast<unsigned char>(curve[k])))
                    fail("bad curve name '" + curve + "'");
            int idx = 0;
            try {
                idx = std::stoi(curve.substr(1));
            } catch (const std::exception&) {
                fail("curve index out of range in '" + curve + "'");
            }
            if (idx < 1 || idx > decl.genus)
                fail("curve '" + curve + "' does not exist on a genus-" +
                     std::to_string(decl.genus) + " page");
            return curve;
        }
        if (curve.rfind("d(", 0) == 0 && curve.back() == ')') {
            std::string label = curve.substr(2, curve.size() - 3);
            std::string full = label;
            if (label.find('.') == std::string::npos) full = decl.name + "." + label;
            std::string idx_part = full.substr(full.find('.') + 1);
            std::string book_part = full.substr(0, full.find('.'));
            if (book_part != decl.name) fail("boundary label '" + label + "' is not on this page");
            if (idx_part.empty()) fail("bad boundary label '" + label + "'");
            for (char ch : idx_part)
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    fail("bad boundary label '" + label + "'");
            int idx = 0;
            try {
                idx = std::stoi(idx_part);
            } catch (const std::exception&) {
                fail("boundary index out of range in '" + label + "'");
            }
            if (idx < 1 || idx > decl.boundary)
                fail("page has no boundary circle '" + label + "'");
            return "d(" + full + ")";
        }
        if (curve.rfind("glue(", 0) == 0)
            fail("glue circles do not exist before a sum; '" + curve + "' is unresolved");
        if (curve.rfind("vec[", 0) == 0 && curve.back() == ']') {
            std::string body = curve.substr(4, curve.size() - 5);
            std::vector<long long> entries;
            if (!body.empty()) {
                std::stringstream ss(body);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    try {
                        entries.push_back(std::stoll(item));
                    } catch (...) {
                        fail("bad vector literal '" + curve + "'");
                    }
                }
            }
            int rank = 2 * decl.genus + decl.boundary - 1;
            if (static_cast<int>(entries.size()) != rank)
                fail("vector literal has " + std::to_string(entries.size()) +
                     " entries; page rank is " + std::to_string(rank));
            long long g = 0;
            for (long long v : entries) g = std::gcd(g, v);
            if (g > 1)
                fail("vector class must be primitive or zero; '" + curve + "' has content " +
                     std::to_string(g));
            return curve;
        }
        fail("unresolvable curve name '" + curve + "'");
        return {};
    }
};

}  // namespace

const ConcreteDecl* OpenBookDoc::find_book(const std::string& name) const {
    for (const auto& b : books)
        if (b.name == name) return &b;
    return nullptr;
}

const SymbolicDecl* OpenBookDoc::find_symbolic(const std::string& name) const {
    for (const auto& s : symbolic)
        if (s.name == name) return &s;
    return nullptr;
}

OpenBookDoc parse_document(const std::string& text) { return Parser(text).parse(); }

std::string print_document(const OpenBookDoc& doc) {
    std::ostringstream os;
    for (const auto& b : doc.books) {
        os << "openbook " << b.name << " { page genus=" << b.genus
           << " boundary=" << b.boundary << "; monodromy = \"";
        for (std::size_t i = 0; i < b.word.size(); ++i) {
            os << (i ? " " : "") << "T(" << b.word[i].curve << ")^" << b.word[i].exponent;
        }
        os << "\"; }\n";
    }
    for (const auto& s : doc.symbolic) {
        os << "symbolic " << s.name << " { dim=" << s.dim << "; page chi=" << s.page_chi << " \""
           << s.page_desc << "\"; binding chi_page=" << s.binding_chi_page << " \""
           << s.binding_desc << "\"; }\n";
    }
    for (const auto& s : doc.sums)
        os << "sum " << s.book0 << "." << s.label0 << " " << s.book1 << "." << s.label1 << ";\n";
    for (const auto& v : doc.verifies) {
        os << "verify " << v.kind;
        for (const auto& [k, val] : v.opts) os << " " << k << "=" << val;
        os << ";\n";
    }
    return os.str();
}

OpenBook3 build_book(const ConcreteDecl& decl) {
    SurfaceModel page = SurfaceModel::standard(decl.genus, decl.boundary, decl.name);
    TwistWord w;
    for (const auto& f : decl.word) {
        TwistEntry e;
        if (f.curve.rfind("vec[", 0) == 0) {
            std::string body = f.curve.substr(4, f.curve.size() - 5);
            H1Class c = page.zero();
            std::size_t idx = 0;
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (idx >= c.size()) throw SurfaceError("vector literal too long");
                c[idx++] = std::stoll(item);
            }
            e.curve = std::move(c);
        } else {
            e.curve = page.resolve(f.curve);
        }
        e.exponent = f.exponent;
        e.display = "T(" + f.curve + ")^" + std::to_string(f.exponent);
        w.entries.push_back(std::move(e));
    }
    return OpenBook3{std::move(page), std::move(w)};
}

SymbolicOpenBook build_symbolic(const SymbolicDecl& decl) {
    SymbolicOpenBook b;
    b.name = decl.name;
    b.dim = decl.dim;
    b.page = PageDescriptor{decl.page_desc, decl.page_chi, {}};
    b.binding = BindingDescriptor{decl.binding_desc, decl.binding_chi_page};
    b.validate();
    return b;
}

}  // namespace obcalc
