#include "synd/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace synd;
using namespace synd::cli;

namespace {

struct Flags {
    std::string certainty = "1";
    std::uint64_t seed = 0;
    unsigned jobs = default_jobs();
    int max_order = 6;
    std::string json_path;
    bool timings = false;
    bool no_fast_path = false;
};

void add_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--certainty", f.certainty, "fraction of the grid to test, rational in (0,1]");
    cmd->add_option("--seed", f.seed, "seed for grid sampling and parameter specialization");
    cmd->add_option("--jobs", f.jobs, "grid worker threads (default: $SYND_JOBS or 1)")->check(CLI::PositiveNumber);
    cmd->add_option("--max-order", f.max_order, "largest recurrence order tried")->check(CLI::NonNegativeNumber);
    cmd->add_option("--json", f.json_path, "append one JSON report per identity to this file");
    cmd->add_flag("--timings", f.timings, "record wall-clock durations (reports are then not byte-stable)");
    cmd->add_flag("--no-fast-path", f.no_fast_path, "skip the direct certificate search");
}

RunOptions run_options(const Flags& f)
{
    RunOptions o;
    o.prove.certainty = parse_rational(f.certainty);
    if (o.prove.certainty <= 0 || o.prove.certainty > 1)
        throw std::invalid_argument("--certainty must lie in (0, 1]");
    o.prove.seed = f.seed;
    o.prove.jobs = f.jobs;
    o.prove.max_order = f.max_order;
    o.prove.fast_path = !f.no_fast_path;
    o.timings = f.timings;
    return o;
}

void write_json(const std::string& path, const std::vector<ReportRecord>& recs)
{
    if (path.empty())
        return;
    std::ofstream out(path, path == "-" ? std::ios::out : std::ios::app);
    std::ostream& os = path == "-" ? std::cout : out;
    if (path != "-" && !out)
        throw std::runtime_error("cannot write " + path);
    for (const auto& r : recs)
        os << to_json(r).dump() << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Proves hypergeometric summation identities by determinant vanishing on integer grids"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SYND_VERSION);

    Flags pf;
    std::string prove_file;
    auto* prove_cmd = app.add_subcommand("prove", "prove one identity file");
    prove_cmd->add_option("file", prove_file, "identity file")->required();
    add_flags(prove_cmd, pf);

    Flags cf;
    std::string corpus_dir;
    auto* corpus_cmd = app.add_subcommand("corpus", "prove every *.synd file in a directory");
    corpus_cmd->add_option("dir", corpus_dir, "corpus directory")->required()->check(CLI::ExistingDirectory);
    add_flags(corpus_cmd, cf);

    std::string verify_file, recurrence, certificate;
    bool normalized = false;
    auto* verify_cmd = app.add_subcommand("verify", "check a recurrence and certificate for the summand");
    verify_cmd->add_option("file", verify_file, "identity file")->required();
    verify_cmd->add_option("--recurrence", recurrence, "coefficients a_0,...,a_J (comma separated)")->required();
    verify_cmd->add_option("--certificate", certificate, "rational function R(n,k)")->required();
    verify_cmd->add_flag("--normalized", normalized, "check against summand/rhs instead of the summand");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*prove_cmd) {
            RunOptions opt = run_options(pf);
            IdentityFile file = load_identity_file(prove_file);
            ReportRecord rec = cmd_prove(file, opt);
            print_summary(std::cout, rec);
            write_json(pf.json_path, {rec});
            return exit_code(rec.report.verdict);
        }
        if (*corpus_cmd) {
            RunOptions opt = run_options(cf);
            auto rows = cmd_corpus(corpus_dir, opt);
            print_table(std::cout, rows, opt.timings);
            std::vector<ReportRecord> recs;
            for (const auto& r : rows)
                if (r.record)
                    recs.push_back(*r.record);
            write_json(cf.json_path, recs);
            return corpus_exit_code(rows);
        }
        if (*verify_cmd) {
            IdentityFile file = load_identity_file(verify_file);
            std::vector<std::string> coeffs;
            std::string cur;
            for (char c : recurrence) {
                if (c == ',') {
                    coeffs.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            coeffs.push_back(cur);
            bool ok = cmd_verify(file, coeffs, certificate, normalized);
            std::cout << (ok ? "certificate verified" : "certificate rejected") << "\n";
            return ok ? kProved : kRefuted;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
