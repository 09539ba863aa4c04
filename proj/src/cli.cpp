#include "brick/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "brick/lattice.hpp"
#include "brick/oeis.hpp"
#include "brick/reliability.hpp"
#include "brick/sequences.hpp"
#include "brick/transfer.hpp"

namespace brick::cli {

using nlohmann::json;

namespace {

// One bag of options for every subcommand; each command reads what it needs.
struct CliConfig {
    int width = 0;
    int length = 0;
    int max_length = 0;
    int type = 1;
    bool type_given = false;
    std::string format = "text";
    std::optional<std::uint64_t> path_limit;
    std::uint64_t bruteforce_guard = kDefaultBruteForceGuard;
    int max_state_bits = kDefaultStateGuardBits;
    double probability = 0.5;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    bool oracle = false;
    bool check = false;
    bool check_oeis = false;
    bool offline = false;
    std::string oeis_dir;
    std::string corrupt_cell;  // test hook: "row,l" forces a table1 diff
    int verify_max_width = 6;
    int verify_max_length = 8;
    int verify_rel_bits = 18;
};

LatticeSpec spec_of(const CliConfig& cfg, std::ostream& err) {
    const LatticeSpec spec(cfg.length, cfg.width, kind_from_int(cfg.type));
    if (cfg.width % 2 != 0 && cfg.type_given)
        err << "note: width " << cfg.width
            << " is odd; both types count the same set of paths\n";
    return spec;
}

json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

json dense_to_json(const DenseMatrix& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const Int& v : r) row.push_back(int_to_json(v));
        rows.push_back(std::move(row));
    }
    return rows;
}

json strings_json(const std::vector<Int>& values) {
    json arr = json::array();
    for (const Int& v : values) arr.push_back(v.str());
    return arr;
}

int cmd_count(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec = spec_of(cfg, err);
    const Int analytic = count_paths(spec);
    if (cfg.oracle) {
        const Int brute = count_paths_bruteforce(spec, cfg.bruteforce_guard);
        if (brute != analytic) {
            err << "oracle mismatch: analytic=" << analytic << " bruteforce=" << brute << "\n";
            return kExitMismatch;
        }
    }
    out << analytic << "\n";
    return kExitOk;
}

void print_paths(const std::vector<BrickPath>& paths, const std::string& format,
                 std::ostream& out) {
    if (format == "json") {
        json arr = json::array();
        for (const BrickPath& p : paths)
            arr.push_back({{"start_row", p.start_row},
                           {"steps", p.step_string()},
                           {"end_row", p.end_row()}});
        out << arr.dump(2) << "\n";
        return;
    }
    for (const BrickPath& p : paths) out << p.text() << "\n";
}

int cmd_paths(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec = spec_of(cfg, err);
    // Without an explicit --limit a hard cap still applies; hitting it is an
    // error rather than a silent truncation.
    const std::uint64_t cap = cfg.path_limit.value_or(1'000'000);
    try {
        print_paths(enumerate_paths(spec, cap), cfg.format, out);
    } catch (const TruncatedEnumeration& t) {
        if (!cfg.path_limit) {
            err << "error: more than " << cap << " paths; pass --limit to truncate\n";
            return kExitMismatch;
        }
        print_paths(t.partial, cfg.format, out);
        err << "warning: output truncated at " << *cfg.path_limit << " paths\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int check_sequence(const LatticeSpec& spec, const std::vector<Int>& terms, bool with_oeis,
                   bool offline, const std::string& oeis_dir, std::ostream& err) {
    for (int l = 1; l <= static_cast<int>(terms.size()); ++l) {
        const Int& got = terms[l - 1];
        if (spec.width == 3 && closed_form_w3(l) != got) {
            err << "check failed at l=" << l << ": closed form w=3 gives " << closed_form_w3(l)
                << ", matrix count gives " << got << "\n";
            return kExitMismatch;
        }
        if (spec.width == 4 && closed_form_w4(l, spec.kind) != got) {
            err << "check failed at l=" << l << ": closed form w=4 gives "
                << closed_form_w4(l, spec.kind) << ", matrix count gives " << got << "\n";
            return kExitMismatch;
        }
        if (l >= 2) {
            const LatticeSpec sub(l, spec.width, spec.kind);
            if (power_form_count(sub) != got) {
                err << "check failed at l=" << l << ": power form gives " << power_form_count(sub)
                    << ", matrix count gives " << got << "\n";
                return kExitMismatch;
            }
        }
    }
    if (!with_oeis) return kExitOk;

    const auto& rows = table1_reference();
    const auto row = std::find_if(rows.begin(), rows.end(), [&](const Table1Row& r) {
        return r.width == spec.width && (!r.kind || *r.kind == spec.kind);
    });
    if (row == rows.end()) {
        err << "note: no OEIS id recorded for width " << spec.width << "; skipping\n";
        return kExitOk;
    }
    oeis::ClientOptions opts = oeis::options_from_env();
    if (offline) opts.offline = true;
    if (!oeis_dir.empty()) opts.cache_dir = oeis_dir;
    oeis::OeisClient client(opts);
    const oeis::OeisSequence seq = client.get(row->oeis_id);
    const auto cmp = oeis::compare_prefix(terms, seq);
    if (!cmp.matched) {
        err << "check failed: computed terms not found in " << row->oeis_id << "\n";
        return kExitMismatch;
    }
    err << "note: matches " << row->oeis_id << " at offset " << *cmp.offset << "\n";
    return kExitOk;
}

int cmd_seq(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec(std::max(cfg.max_length, 1), cfg.width, kind_from_int(cfg.type));
    if (cfg.width % 2 != 0 && cfg.type_given)
        err << "note: width " << cfg.width << " is odd; both types count the same set of paths\n";
    const std::vector<Int> terms = sequence_for(cfg.width, spec.kind, cfg.max_length);

    if (cfg.format == "csv") {
        out << "l,count\n";
        for (std::size_t i = 0; i < terms.size(); ++i) out << i + 1 << "," << terms[i] << "\n";
    } else if (cfg.format == "json") {
        json j{{"w", cfg.width}, {"kind", cfg.type}, {"terms", strings_json(terms)}};
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < terms.size(); ++i) out << (i ? "," : "") << terms[i];
        out << "\n";
    }
    if (cfg.check)
        return check_sequence(spec, terms, cfg.check_oeis, cfg.offline, cfg.oeis_dir, err);
    return kExitOk;
}

int cmd_matrix(const CliConfig& cfg, int column, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec = spec_of(cfg, err);
    const DenseMatrix m = column > 0 ? dense(column_matrix(spec, column))
                                     : transition_matrix(spec);
    const DenseMatrix top_down = to_top_down(m);
    if (cfg.format == "json") {
        json j{{"w", cfg.width},
               {"l", cfg.length},
               {"kind", cfg.type},
               {"orientation", "top-down"},
               {"matrix", dense_to_json(top_down)}};
        if (column > 0) j["column"] = column;
        out << j.dump(2) << "\n";
    } else {
        out << format_dense(top_down);
    }
    return kExitOk;
}

json coefficients_json(const ReliabilityCoefficients& r) {
    return json{{"w", r.spec.width},       {"l", r.spec.length},
                {"kind", static_cast<int>(r.spec.kind)}, {"m", r.m},
                {"N_l", r.n_l.str()},      {"N_l1", r.n_l1.str()},
                {"P_l", r.p_l.str()},      {"P_l1", r.p_l1.str()},
                {"method", r.method}};
}

int cmd_rel_coeffs(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec = spec_of(cfg, err);
    const ReliabilityCoefficients r = analytic_coefficients(spec);
    if (cfg.format == "json")
        out << coefficients_json(r).dump(2) << "\n";
    else
        out << "m=" << r.m << " N_l=" << r.n_l << " N_l1=" << r.n_l1 << " P_l=" << r.p_l
            << " P_l1=" << r.p_l1 << "\n";
    return kExitOk;
}

int cmd_rel_table(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec = spec_of(cfg, err);
    const HammockNetwork net = build_network(spec);
    NTable n;
    try {
        n = brute_force_ntable(net, cfg.max_state_bits);
    } catch (const GuardExceeded& e) {
        err << "error: " << e.what() << "; raise --max-states\n";
        return kExitMismatch;
    }
    const PTable p = n_to_p(n);
    if (cfg.format == "json") {
        json j{{"w", cfg.width},         {"l", cfg.length},
               {"kind", cfg.type},       {"m", n.m},
               {"N", strings_json(n.coeff)}, {"P", strings_json(p.coeff)},
               {"method", "bruteforce"}};
        out << j.dump(2) << "\n";
    } else {
        out << "N:";
        for (const Int& c : n.coeff) out << " " << c;
        out << "\nP:";
        for (const Int& c : p.coeff) out << " " << c;
        out << "\n";
    }
    return kExitOk;
}

int cmd_rel_mc(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const LatticeSpec spec = spec_of(cfg, err);
    const HammockNetwork net = build_network(spec);
    const MonteCarloResult r = monte_carlo_estimate(net, cfg.probability, cfg.trials, cfg.seed);
    if (cfg.format == "json") {
        json j{{"w", cfg.width},   {"l", cfg.length},       {"kind", cfg.type},
               {"p", cfg.probability}, {"trials", r.trials}, {"seed", cfg.seed},
               {"estimate", r.estimate}, {"std_error", r.std_error}};
        out << j.dump(2) << "\n";
    } else {
        out << std::setprecision(9) << "estimate=" << r.estimate << " std_error=" << r.std_error
            << " trials=" << r.trials << " seed=" << cfg.seed << "\n";
    }
    return kExitOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream&) {
    int failures = 0;
    auto report = [&](const std::string& name, int ok, int total, const std::string& detail) {
        out << (ok == total ? "ok   " : "FAIL ") << name << ": " << ok << "/" << total << "\n";
        if (ok != total) {
            out << "     first divergence: " << detail << "\n";
            ++failures;
        }
    };

    {
        int ok = 0, total = 0;
        std::string detail;
        for (int w = 2; w <= cfg.verify_max_width; ++w)
            for (int l = 1; l <= cfg.verify_max_length; ++l)
                for (Kind k : {Kind::First, Kind::Second}) {
                    const LatticeSpec spec(l, w, k);
                    ++total;
                    if (count_paths(spec) == count_paths_bruteforce(spec, cfg.bruteforce_guard))
                        ++ok;
                    else if (detail.empty())
                        detail = "w=" + std::to_string(w) + " l=" + std::to_string(l) + " type " +
                                 to_string(k);
                }
        report("paths-oracle", ok, total, detail);
    }
    {
        int ok = 0, total = 0;
        std::string detail;
        for (int w = 2; w <= 9; ++w)
            for (int l = 2; l <= 12; ++l)
                for (Kind k : {Kind::First, Kind::Second}) {
                    const LatticeSpec spec(l, w, k);
                    ++total;
                    if (power_form_count(spec) == count_paths(spec))
                        ++ok;
                    else if (detail.empty())
                        detail = "w=" + std::to_string(w) + " l=" + std::to_string(l) + " type " +
                                 to_string(k);
                }
        report("power-forms", ok, total, detail);
    }
    {
        int ok = 0, total = 0;
        std::string detail;
        for (int w = 3; w <= 7; w += 2)
            for (int l = 1; l <= cfg.verify_max_length; ++l) {
                ++total;
                if (count_paths(LatticeSpec(l, w, Kind::First)) ==
                    count_paths(LatticeSpec(l, w, Kind::Second)))
                    ++ok;
                else if (detail.empty())
                    detail = "w=" + std::to_string(w) + " l=" + std::to_string(l);
            }
        report("odd-width-duality", ok, total, detail);
    }
    {
        int ok = 0, total = 0;
        std::string detail;
        for (int w = 2; w <= cfg.verify_rel_bits / 2; ++w)
            for (int l = 2; l * w <= cfg.verify_rel_bits; ++l)
                for (Kind k : {Kind::First, Kind::Second}) {
                    const LatticeSpec spec(l, w, k);
                    const NTable n = brute_force_ntable(build_network(spec), cfg.verify_rel_bits);
                    const PTable p = n_to_p(n);
                    ++total;
                    if (first_coefficient(spec) == n.coeff[l] &&
                        second_coefficient(spec) == p.coeff[l + 1] &&
                        second_coefficient_n(spec) == n.coeff[l + 1])
                        ++ok;
                    else if (detail.empty())
                        detail = "w=" + std::to_string(w) + " l=" + std::to_string(l) + " type " +
                                 to_string(k);
                }
        report("reliability-oracle", ok, total, detail);
    }
    {
        int ok = 0, total = 0;
        std::string detail;
        for (int w = 2; w <= 9; ++w)
            for (int l = 2; l <= 12; ++l)
                for (Kind k : {Kind::First, Kind::Second}) {
                    const LatticeSpec spec(l, w, k);
                    ++total;
                    if (second_coefficient_specialized(spec) == second_coefficient(spec))
                        ++ok;
                    else if (detail.empty())
                        detail = "w=" + std::to_string(w) + " l=" + std::to_string(l) + " type " +
                                 to_string(k);
                }
        report("specialized-second-coefficient", ok, total, detail);
    }
    return failures == 0 ? kExitOk : kExitMismatch;
}

int cmd_table1(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    int corrupt_row = -1, corrupt_l = -1;
    if (!cfg.corrupt_cell.empty()) {
        std::stringstream ss(cfg.corrupt_cell);
        char comma = 0;
        ss >> corrupt_row >> comma >> corrupt_l;
        if (!ss || comma != ',')
            throw CLI::ValidationError("--corrupt-cell expects ROW,L");
    }

    const auto& rows = table1_reference();
    int mismatches = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Table1Row& row = rows[i];
        const Kind kind = row.kind.value_or(Kind::First);
        std::vector<Int> computed = sequence_for(row.width, kind, 8);
        if (static_cast<int>(i) == corrupt_row && corrupt_l >= 1 && corrupt_l <= 8)
            computed[corrupt_l - 1] += 1;

        out << std::left << std::setw(16) << row.label() << std::right;
        for (const Int& v : computed) out << std::setw(6) << v;
        out << "  " << row.oeis_id << "\n";

        for (int l = 1; l <= 8; ++l)
            if (computed[l - 1] != Int(row.terms[l - 1])) {
                err << "mismatch " << row.label() << " l=" << l << ": computed "
                    << computed[l - 1] << " != reference " << row.terms[l - 1] << "\n";
                ++mismatches;
            }

        if (cfg.check_oeis && mismatches == 0) {
            oeis::ClientOptions opts = oeis::options_from_env();
            if (cfg.offline) opts.offline = true;
            if (!cfg.oeis_dir.empty()) opts.cache_dir = cfg.oeis_dir;
            oeis::OeisClient client(opts);
            const oeis::OeisSequence seq = client.get(row.oeis_id);
            const auto cmp = oeis::compare_prefix(computed, seq);
            if (!cmp.matched || static_cast<int>(*cmp.offset) != row.alignment_offset) {
                err << "OEIS mismatch " << row.label() << ": " << row.oeis_id
                    << (cmp.matched ? " matched at offset " + std::to_string(*cmp.offset) +
                                          " instead of " + std::to_string(row.alignment_offset)
                                    : " does not contain the computed run")
                    << "\n";
                ++mismatches;
            }
        }
    }
    return mismatches == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"brick-wall lattice path counts and hammock reliability coefficients"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_spec = [&](CLI::App* cmd, bool with_length) {
        cmd->add_option("--width,-w", cfg.width, "lattice width (rows), >= 2")->required();
        if (with_length)
            cmd->add_option("--length,-l", cfg.length, "lattice length (columns), >= 1")
                ->required();
        cmd->add_option("--type,-t", cfg.type, "lattice type (1 or 2)")
            ->check(CLI::IsMember({1, 2}));
    };
    auto add_format = [&](CLI::App* cmd, std::vector<std::string> formats) {
        cmd->add_option("--format,-f", cfg.format, "output format")
            ->check(CLI::IsMember(formats));
    };

    CLI::App* count = app.add_subcommand("count", "count paths with the transfer recurrence");
    add_spec(count, true);
    add_format(count, {"text"});
    count->add_flag("--oracle", cfg.oracle, "also run the brute-force oracle and compare");
    count->add_option("--guard", cfg.bruteforce_guard, "brute-force path guard");

    CLI::App* paths = app.add_subcommand("paths", "enumerate paths in canonical order");
    add_spec(paths, true);
    add_format(paths, {"text", "json"});
    paths->add_option("--limit", cfg.path_limit, "truncate after this many paths");

    CLI::App* seq = app.add_subcommand("seq", "emit the count sequence over l = 1..max");
    seq->add_option("--width,-w", cfg.width, "lattice width (rows), >= 2")->required();
    seq->add_option("--max-length,-L", cfg.max_length, "largest l to emit")->required();
    seq->add_option("--type,-t", cfg.type, "lattice type (1 or 2)")->check(CLI::IsMember({1, 2}));
    add_format(seq, {"text", "csv", "json"});
    seq->add_flag("--check", cfg.check, "cross-validate against closed and power forms");
    seq->add_flag("--oeis", cfg.check_oeis, "with --check, also compare against OEIS data");
    seq->add_flag("--offline", cfg.offline, "never touch the network");
    seq->add_option("--oeis-dir", cfg.oeis_dir, "directory of cached/fixture OEIS files");

    CLI::App* matrix = app.add_subcommand("matrix", "dense transfer-matrix dump (top-down)");
    add_spec(matrix, true);
    add_format(matrix, {"text", "json"});
    int matrix_column = 0;
    matrix->add_option("--column,-c", matrix_column,
                       "dump the single-column matrix A_c instead of the full product");

    CLI::App* rel = app.add_subcommand("rel", "hammock-network reliability");
    rel->require_subcommand(1);
    CLI::App* rel_coeffs =
        rel->add_subcommand("coeffs", "analytic first two non-zero coefficients");
    add_spec(rel_coeffs, true);
    add_format(rel_coeffs, {"text", "json"});
    CLI::App* rel_table = rel->add_subcommand("table", "exact N and P tables by brute force");
    add_spec(rel_table, true);
    add_format(rel_table, {"text", "json"});
    rel_table->add_option("--max-states", cfg.max_state_bits,
                          "state guard as log2(subsets), hard cap 30");
    CLI::App* rel_mc = rel->add_subcommand("mc", "Monte Carlo reliability estimate");
    add_spec(rel_mc, true);
    add_format(rel_mc, {"text", "json"});
    rel_mc->add_option("--p", cfg.probability, "relay closure probability")->required();
    rel_mc->add_option("--trials", cfg.trials, "number of trials");
    rel_mc->add_option("--seed", cfg.seed, "RNG seed");

    CLI::App* verify = app.add_subcommand("verify", "run the cross-validation sweeps");
    verify->add_option("--max-width", cfg.verify_max_width, "paths-oracle sweep width bound");
    verify->add_option("--max-length", cfg.verify_max_length, "paths-oracle sweep length bound");
    verify->add_option("--max-rel-states", cfg.verify_rel_bits,
                       "reliability sweep bound on w*l, hard cap 30");

    CLI::App* table1 = app.add_subcommand("table1", "recompute the 13 reference rows and diff");
    add_format(table1, {"text"});
    table1->add_flag("--check-oeis", cfg.check_oeis, "also compare rows against OEIS data");
    table1->add_flag("--offline", cfg.offline, "never touch the network");
    table1->add_option("--oeis-dir", cfg.oeis_dir, "directory of cached/fixture OEIS files");
    table1->add_option("--corrupt-cell", cfg.corrupt_cell, "test hook: perturb cell ROW,L")
        ->group("");  // hidden

    std::vector<const char*> argv;
    argv.push_back("brick");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        cfg.type_given = (count->count("--type") + paths->count("--type") +
                          seq->count("--type") + matrix->count("--type") +
                          rel_coeffs->count("--type") + rel_table->count("--type") +
                          rel_mc->count("--type")) > 0;

        if (count->parsed()) return cmd_count(cfg, out, err);
        if (paths->parsed()) return cmd_paths(cfg, out, err);
        if (seq->parsed()) return cmd_seq(cfg, out, err);
        if (matrix->parsed()) return cmd_matrix(cfg, matrix_column, out, err);
        if (rel->parsed()) {
            if (rel_coeffs->parsed()) return cmd_rel_coeffs(cfg, out, err);
            if (rel_table->parsed()) return cmd_rel_table(cfg, out, err);
            if (rel_mc->parsed()) return cmd_rel_mc(cfg, out, err);
        }
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        if (table1->parsed()) return cmd_table1(cfg, out, err);
        err << "error: no subcommand\n";
        return kExitUsage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GuardExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const oeis::OeisError& e) {
        err << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace brick::cli
