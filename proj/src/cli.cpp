#include "sigdist/cli.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "sigdist/error.hpp"
#include "sigdist/problem.hpp"

namespace sigdist::cli {

namespace {

using json = nlohmann::ordered_json;

json pairs_json(const SubsetMask& s, const ProductSpace& space) {
    json out = json::array();
    s.for_each([&](std::size_t i) {
        const auto [x, u] = space.point(i);
        out.push_back({x, u});
    });
    return out;
}

json atoms_json(const SigmaAlgebra& c) {
    json out = json::array();
    for (const SubsetMask& atom : atoms_of(c)) out.push_back(atom.indices());
    return out;
}

json atom_pairs_json(const SigmaAlgebra& c, const ProductSpace& space) {
    json out = json::array();
    for (const SubsetMask& atom : atoms_of(c)) out.push_back(pairs_json(atom, space));
    return out;
}

void print_indices(std::ostream& out, const SubsetMask& s) {
    out << '[';
    bool first = true;
    s.for_each([&](std::size_t i) {
        out << (first ? "" : ", ") << i;
        first = false;
    });
    out << ']';
}

void print_pairs(std::ostream& out, const SubsetMask& s, const ProductSpace& space) {
    out << '{';
    bool first = true;
    s.for_each([&](std::size_t i) {
        const auto [x, u] = space.point(i);
        out << (first ? "" : " ") << '(' << x << ',' << u << ')';
        first = false;
    });
    out << '}';
}

void print_product_set(std::ostream& out, const SubsetMask& s, const ProductSpace& space) {
    print_indices(out, s);
    out << ' ';
    print_pairs(out, s, space);
}

void print_atom_list(std::ostream& out, const char* name, const SigmaAlgebra& c, const ProductSpace& space) {
    const auto atoms = atoms_of(c);
    out << name << ": " << atoms.size() << '\n';
    for (const SubsetMask& atom : atoms) {
        out << "  ";
        print_product_set(out, atom, space);
        out << '\n';
    }
}

const char* flag(bool b) { return b ? "true" : "false"; }

SubsetMask parse_set(const std::string& text, std::size_t n) {
    SubsetMask b(n);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view token(text.data() + pos, comma - pos);
        std::size_t value = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
            throw ProblemError("--set: '" + std::string(token) + "' is not a point index");
        }
        if (value >= n) {
            throw ProblemError("--set: index " + std::to_string(value) + " outside product space of size " +
                               std::to_string(n));
        }
        b.set(value);
        pos = comma + 1;
    }
    return b;
}

json failure_json(const TripleFailure& f) {
    const ProductSpace space(GroundSet(f.x_size), GroundSet(f.u_size));
    const ProblemFile problem{f.x_size, f.u_size, SigmaSpec::from_atoms(f.a), SigmaSpec::from_atoms(f.f),
                              SigmaSpec::from_atoms(f.g)};
    json j = json::object();
    j["x_size"] = f.x_size;
    j["u_size"] = f.u_size;
    j["rank"] = {f.rank.a, f.rank.f, f.rank.g};
    j["problem"] = json::parse(print_problem(problem));
    j["join_holds"] = f.join_holds;
    j["report"] = report_json(f.report, space);
    return j;
}

int cmd_check(const std::string& path, bool as_json, std::ostream& out) {
    const Problem p = realize(read_problem(path));
    const DistributivityReport report = check(p.a, p.f, p.g);
    const ProductSpace space = ProductSpace::of(p.a, p.f);
    if (as_json) {
        out << report_json(report, space).dump() << '\n';
    } else {
        print_report(out, report, space);
    }
    return report.equal ? kSuccess : kNegative;
}

int cmd_verify(std::size_t max_x, std::size_t max_u, unsigned jobs, bool as_json, std::ostream& out,
               std::ostream& err) {
    const VerificationSummary summary = verify_all(max_x, max_u, {.jobs = jobs});
    if (as_json) {
        out << summary_json(summary).dump() << '\n';
    } else {
        print_summary(out, summary);
    }
    err << "elapsed: " << std::fixed << std::setprecision(3)
        << std::chrono::duration<double>(summary.elapsed).count() << " s\n";
    return summary.failures == 0 ? kSuccess : kNegative;
}

int cmd_decompose(const std::string& path, const std::string& set_text, bool as_json, std::ostream& out,
                  std::ostream& err) {
    const Problem p = realize(read_problem(path));
    const ProductSpace space = ProductSpace::of(p.a, p.f);
    const SubsetMask b = parse_set(set_text, space.size());
    const bool in_f = in_product(b, p.a, p.f);
    const bool in_g = in_product(b, p.a, p.g);

    std::vector<MeetRectangle> pieces;
    std::string diagnostic;
    try {
        pieces = decompose_over_meet(b, p.a, p.f, p.g);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInProduct) throw;
        diagnostic = e.what();
    }
    const bool ok = diagnostic.empty();
    const bool reconstructs = ok && union_of_rectangles(space, pieces) == b;
    const bool lefts_measurable =
        ok && std::all_of(pieces.begin(), pieces.end(), [&](const MeetRectangle& r) { return p.a.contains(r.left); });

    if (as_json) {
        json j = json::object();
        j["set"] = b.indices();
        j["set_pairs"] = pairs_json(b, space);
        j["in_A_times_F"] = in_f;
        j["in_A_times_G"] = in_g;
        if (ok) {
            json list = json::array();
            for (const MeetRectangle& r : pieces) list.push_back({{"left", r.left.indices()}, {"right", r.right.indices()}});
            j["pieces"] = list;
        } else {
            j["pieces"] = nullptr;
        }
        j["reconstructs"] = reconstructs;
        j["left_sets_in_A"] = lefts_measurable;
        out << j.dump() << '\n';
    } else {
        out << "set: ";
        print_product_set(out, b, space);
        out << "\nin A⊗F: " << flag(in_f) << "\nin A⊗G: " << flag(in_g) << '\n';
        if (ok) {
            out << "pieces: " << pieces.size() << '\n';
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                out << "  A_" << i << " = ";
                print_indices(out, pieces[i].left);
                out << "  H_" << i << " = ";
                print_indices(out, pieces[i].right);
                out << '\n';
            }
            out << "reconstruction: " << (reconstructs ? "exact" : "MISMATCH") << '\n';
            out << "left sets in A: " << flag(lefts_measurable) << '\n';
        }
    }
    if (!ok) {
        err << diagnostic << '\n';
        return kNegative;
    }
    return reconstructs && lefts_measurable ? kSuccess : kNegative;
}

int cmd_search(std::size_t nx, std::size_t nu, unsigned jobs, std::ostream& out) {
    const auto found = search_counterexample(nx, nu, {.jobs = jobs});
    if (!found) {
        out << "none\n";
        return kSuccess;
    }
    const ProblemFile problem{nx, nu, SigmaSpec::from_atoms(found->a), SigmaSpec::from_atoms(found->f),
                              SigmaSpec::from_atoms(found->g)};
    out << print_problem(problem) << '\n';
    out << "witness: ";
    if (found->report.witness) {
        print_product_set(out, *found->report.witness, ProductSpace(GroundSet(nx), GroundSet(nu)));
    } else {
        out << "none";
    }
    out << '\n';
    return kNegative;
}

int cmd_atoms(const std::string& path, bool as_json, std::ostream& out) {
    const Problem p = realize(read_problem(path));
    const ProductSpace space = ProductSpace::of(p.a, p.f);
    const SigmaAlgebra fg = meet(p.f, p.g);
    const SigmaAlgebra af = product_sigma(p.a, p.f);
    const SigmaAlgebra ag = product_sigma(p.a, p.g);
    if (as_json) {
        json j = json::object();
        j["A"] = atoms_json(p.a);
        j["F"] = atoms_json(p.f);
        j["G"] = atoms_json(p.g);
        j["F_meet_G"] = atoms_json(fg);
        j["A_times_F"] = atoms_json(af);
        j["A_times_G"] = atoms_json(ag);
        j["A_times_F_pairs"] = atom_pairs_json(af, space);
        j["A_times_G_pairs"] = atom_pairs_json(ag, space);
        out << j.dump() << '\n';
        return kSuccess;
    }
    auto factor = [&](const char* name, const SigmaAlgebra& c) {
        out << name << ": " << c.atom_count() << '\n';
        for (const SubsetMask& atom : atoms_of(c)) {
            out << "  ";
            print_indices(out, atom);
            out << '\n';
        }
    };
    factor("A", p.a);
    factor("F", p.f);
    factor("G", p.g);
    factor("F∩G", fg);
    print_atom_list(out, "A⊗F", af, space);
    print_atom_list(out, "A⊗G", ag, space);
    return kSuccess;
}

} // namespace

json report_json(const DistributivityReport& report, const ProductSpace& space) {
    json j = json::object();
    j["equal"] = report.equal;
    j["same_atoms"] = report.same_atoms;
    j["lhs_atoms_are_rectangles"] = report.lhs_atoms_are_rectangles;
    j["rhs_within_lhs"] = report.rhs_within_lhs;
    if (report.witness) {
        j["witness"] = report.witness->indices();
        j["witness_pairs"] = pairs_json(*report.witness, space);
    } else {
        j["witness"] = nullptr;
        j["witness_pairs"] = nullptr;
    }
    j["x_size"] = space.left().size();
    j["u_size"] = space.right().size();
    j["lhs_atoms"] = atoms_json(report.lhs);
    j["rhs_atoms"] = atoms_json(report.rhs);
    j["lhs_atom_pairs"] = atom_pairs_json(report.lhs, space);
    j["rhs_atom_pairs"] = atom_pairs_json(report.rhs, space);
    return j;
}

void print_report(std::ostream& out, const DistributivityReport& report, const ProductSpace& space) {
    out << "equal: " << flag(report.equal) << '\n'
        << "same_atoms: " << flag(report.same_atoms) << '\n'
        << "lhs_atoms_are_rectangles: " << flag(report.lhs_atoms_are_rectangles) << '\n'
        << "rhs_within_lhs: " << flag(report.rhs_within_lhs) << '\n'
        << "witness: ";
    if (report.witness) {
        print_product_set(out, *report.witness, space);
    } else {
        out << "none";
    }
    out << '\n';
    print_atom_list(out, "lhs_atoms", report.lhs, space);
    print_atom_list(out, "rhs_atoms", report.rhs, space);
}

json summary_json(const VerificationSummary& s) {
    json j = json::object();
    j["max_x"] = s.max_x;
    j["max_u"] = s.max_u;
    j["triples_checked"] = s.triples_checked;
    j["expected_triples"] = expected_triple_count(s.max_x, s.max_u);
    j["failures"] = s.failures;
    j["distributivity_failures"] = s.distributivity_failures;
    j["join_failures"] = s.join_failures;
    j["chain_violations"] = s.chain_violations;
    j["inclusion_failures"] = s.inclusion_failures;
    j["witnessed_failures"] = s.witnessed_failures;
    j["first_failure"] = s.first_failure ? failure_json(*s.first_failure) : json(nullptr);
    j["first_witnessed_failure"] = s.first_witnessed_failure ? failure_json(*s.first_witnessed_failure) : json(nullptr);
    return j;
}

void print_summary(std::ostream& out, const VerificationSummary& s) {
    out << "sizes: " << s.max_x << " x " << s.max_u << '\n'
        << "triples_checked: " << s.triples_checked << '\n'
        << "expected_triples: " << expected_triple_count(s.max_x, s.max_u) << '\n'
        << "failures: " << s.failures << '\n'
        << "distributivity_failures: " << s.distributivity_failures << '\n'
        << "join_failures: " << s.join_failures << '\n'
        << "chain_violations: " << s.chain_violations << '\n'
        << "inclusion_failures: " << s.inclusion_failures << '\n'
        << "witnessed_failures: " << s.witnessed_failures << '\n';
    auto print_failure = [&](const char* name, const TripleFailure& f) {
        const ProblemFile problem{f.x_size, f.u_size, SigmaSpec::from_atoms(f.a), SigmaSpec::from_atoms(f.f),
                                  SigmaSpec::from_atoms(f.g)};
        out << name << ": " << print_problem(problem) << '\n' << name << "_join_holds: " << flag(f.join_holds) << '\n';
        print_report(out, f.report, ProductSpace(GroundSet(f.x_size), GroundSet(f.u_size)));
    };
    if (s.first_failure) print_failure("first_failure", *s.first_failure);
    if (s.first_witnessed_failure) print_failure("first_witnessed_failure", *s.first_witnessed_failure);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite σ-algebra distributivity checker", "sigdist"};
    app.require_subcommand(1);

    std::string path;
    std::string set_text;
    bool as_json = false;
    std::size_t max_x = 0;
    std::size_t max_u = 0;
    std::size_t nx = 0;
    std::size_t nu = 0;
    unsigned jobs = 1;

    auto* check_cmd = app.add_subcommand("check", "Check distributivity for the triple in a problem file");
    check_cmd->add_option("file", path, "Problem file (JSON)")->required();
    check_cmd->add_flag("--json", as_json, "Emit a JSON report");

    auto* verify_cmd = app.add_subcommand("verify", "Check every triple up to the given factor sizes");
    verify_cmd->add_option("--max-x", max_x, "Largest left factor size")->required()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-u", max_u, "Largest right factor size")->required()->check(CLI::PositiveNumber);
    verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--json", as_json, "Emit a JSON summary");

    auto* decompose_cmd = app.add_subcommand("decompose", "Rewrite a product set over the atoms of F ∩ G");
    decompose_cmd->add_option("file", path, "Problem file (JSON)")->required();
    decompose_cmd->add_option("--set", set_text, "Comma-separated product indices")->required();
    decompose_cmd->add_flag("--json", as_json, "Emit JSON");

    auto* search_cmd = app.add_subcommand("search", "Search one size pair for a distributivity counterexample");
    search_cmd->add_option("--x", nx, "Left factor size")->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--u", nu, "Right factor size")->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* atoms_cmd = app.add_subcommand("atoms", "List atoms of A, F, G, F ∩ G, A ⊗ F and A ⊗ G");
    atoms_cmd->add_option("file", path, "Problem file (JSON)")->required();
    atoms_cmd->add_flag("--json", as_json, "Emit JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*check_cmd) return cmd_check(path, as_json, out);
        if (*verify_cmd) return cmd_verify(max_x, max_u, jobs, as_json, out, err);
        if (*decompose_cmd) return cmd_decompose(path, set_text, as_json, out, err);
        if (*search_cmd) return cmd_search(nx, nu, jobs, out);
        if (*atoms_cmd) return cmd_atoms(path, as_json, out);
    } catch (const ProblemError& e) {
        err << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace sigdist::cli
