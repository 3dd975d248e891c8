#include "obcalc/doc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int dispatch(const std::string& command, const std::string& path,
             const obcalc::RunOptions& opts) {
    obcalc::OpenBookDoc doc = obcalc::parse_document(slurp(path));
    obcalc::RunOutcome out = obcalc::run(doc, command, opts);
    std::cout << out.text;
    return out.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"obcalc - open book calculus: binding sums, homology oracles, "
                 "and contact-condition certification"};
    app.require_subcommand(1);

    std::string file;
    obcalc::RunOptions opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", file, "open book description file")->required();
        sub->add_flag("--json", opts.json, "emit JSON instead of text");
    };
    CLI::App* inv = app.add_subcommand("invariants", "chi and H0..H3 of each declared book");
    add_common(inv);
    CLI::App* sum = app.add_subcommand("sum", "apply the sum directives and print certificates");
    add_common(sum);
    CLI::App* cmp = app.add_subcommand(
        "oracle-compare", "binding-sum H1 against the fibration oracle; exit 1 on MISMATCH");
    add_common(cmp);
    CLI::App* ver = app.add_subcommand("contact-verify", "grid certification reports");
    add_common(ver);
    ver->add_option("--grid", opts.grid, "grid resolution (default 10000)");
    ver->add_option("--tol", opts.tol, "pass tolerance (default 1e-6)");

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* sub : {inv, sum, cmp, ver})
            if (sub->parsed()) return dispatch(sub->get_name(), file, opts);
    } catch (const obcalc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
