#pragma once

#include "synd/proof.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifndef SYND_VERSION
#define SYND_VERSION "0.1.0"
#endif

namespace synd::cli {

using Json = nlohmann::ordered_json;

class IdentityFileError : public std::runtime_error {
public:
    IdentityFileError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what)
    {
    }
};

enum ExitCode { kProved = 0, kUsage = 1, kInconclusive = 2, kRefuted = 3 };

/// `key: value` lines; `#` starts a comment line.
struct IdentityFile {
    std::string path;
    std::string name, summand, rhs = "0", sum_var = "k", rec_var = "n", lower, upper, notes;
    std::vector<std::string> params;

    Identity to_identity() const;
};

namespace detail {

inline std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

inline bool is_symbol(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

}  // namespace detail

inline IdentityFile parse_identity_file(std::istream& in, const std::string& path = "<input>")
{
    IdentityFile f;
    f.path = path;
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw IdentityFileError(path, lineno, "expected `key: value`");
        std::string key = detail::trim(std::string_view(t).substr(0, colon));
        std::string value = detail::trim(std::string_view(t).substr(colon + 1));
        if (seen.count(key))
            throw IdentityFileError(path, lineno, "duplicate key `" + key + "` (first on line " + std::to_string(seen[key]) + ")");
        seen[key] = lineno;
        if (key == "name")
            f.name = value;
        else if (key == "summand")
            f.summand = value;
        else if (key == "rhs")
            f.rhs = value;
        else if (key == "sum_var")
            f.sum_var = value;
        else if (key == "rec_var")
            f.rec_var = value;
        else if (key == "lower")
            f.lower = value;
        else if (key == "upper")
            f.upper = value;
        else if (key == "params")
            f.params = detail::split_list(value);
        else if (key == "notes")
            f.notes = value;
        else
            throw IdentityFileError(path, lineno, "unknown key `" + key + "`");
    }
    auto line_of = [&](const char* key) { return seen.count(key) ? seen[key] : 0; };
    if (f.summand.empty())
        throw IdentityFileError(path, 0, "missing `summand`");
    if (f.rhs.empty())
        throw IdentityFileError(path, line_of("rhs"), "empty `rhs`");
    if (!detail::is_symbol(f.sum_var))
        throw IdentityFileError(path, line_of("sum_var"), "bad summation variable `" + f.sum_var + "`");
    if (!detail::is_symbol(f.rec_var))
        throw IdentityFileError(path, line_of("rec_var"), "bad recurrence variable `" + f.rec_var + "`");
    if (f.sum_var == f.rec_var)
        throw IdentityFileError(path, line_of("rec_var"), "sum_var and rec_var coincide");
    for (const auto& p : f.params)
        if (!detail::is_symbol(p) || p == f.sum_var || p == f.rec_var)
            throw IdentityFileError(path, line_of("params"), "bad parameter `" + p + "`");
    if (f.name.empty())
        f.name = std::filesystem::path(path).stem().string();
    // surface grammar errors with the offending line
    try {
        (void)f.to_identity();
    } catch (const ParseError& e) {
        throw IdentityFileError(path, 0, e.what());
    } catch (const IdentityError& e) {
        throw IdentityFileError(path, 0, e.what());
    }
    return f;
}

inline IdentityFile load_identity_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw IdentityFileError(p.string(), 0, "cannot open");
    return parse_identity_file(in, p.string());
}

inline Identity IdentityFile::to_identity() const
{
    auto vars = make_term_ring(sum_var, rec_var, params);
    auto rethrow = [&](const char* key, auto&& fn) {
        try {
            return fn();
        } catch (const TermError& e) {
            throw IdentityError(std::string(key) + ": " + e.what());
        }
    };
    Identity id(rethrow("summand", [&] { return parse_term(summand, vars); }));
    id.rhs = rethrow("rhs", [&] { return parse_term_sum(rhs, vars); });
    std::erase_if(id.rhs, [](const TermExpression& t) { return t.rational_factor().is_zero(); });
    id.k = sum_var;
    id.n = rec_var;
    id.params = params;
    if (!lower.empty())
        id.lower = rethrow("lower", [&] { return parse_linear_form(lower, vars); });
    if (!upper.empty())
        id.upper = rethrow("upper", [&] { return parse_linear_form(upper, vars); });
    return id;
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".synd")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// ---- reports ----

struct ReportRecord {
    std::string name;
    std::string version = SYND_VERSION;
    ProofReport report;
    std::optional<double> duration;  // wall seconds; only recorded on request
};

inline Json point_json(const GridPoint& p)
{
    Json j = Json::object();
    for (const auto& [v, x] : p)
        j[v] = x;
    return j;
}

inline GridPoint point_from_json(const Json& j)
{
    GridPoint p;
    for (const auto& [k, v] : j.items())
        p.push_back({k, v.get<long>()});
    return p;
}

template <typename T>
Json opt_json(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const ReportRecord& rec)
{
    const ProofReport& r = rec.report;
    Json j;
    j["name"] = rec.name;
    j["version"] = rec.version;
    j["verdict"] = to_string(r.verdict);
    j["method"] = r.method;
    j["certainty"] = r.certainty.get_str();
    j["seed"] = r.seed;
    j["order"] = opt_json(r.order);
    j["degree"] = opt_json(r.degree);
    j["grid_total"] = r.grid_total;
    j["grid_tested"] = r.grid_tested;
    j["nonzero_point"] = r.nonzero_point ? point_json(*r.nonzero_point) : Json(nullptr);
    Json bounds = Json::object();
    for (const auto& [v, d] : r.degree_bounds)
        bounds[v] = d;
    j["degree_bounds"] = bounds;
    j["shape"] = r.shape;
    j["extension"] = r.extension;
    j["leading_root_bound"] = opt_json(r.leading_root_bound);
    j["leading_coefficient"] = r.leading_coefficient;
    Json spec = Json::object();
    for (const auto& [v, x] : r.specialization)
        spec[v] = x.get_str();
    j["specialization"] = spec;
    Json checks = Json::array();
    for (const auto& c : r.initial_checks)
        checks.push_back({{"n", c.n}, {"kind", c.kind}, {"passed", c.passed}});
    j["initial_checks"] = checks;
    j["certificate"] = opt_json(r.certificate);
    Json attempts = Json::array();
    for (const auto& a : r.attempts) {
        Json aj;
        aj["J"] = a.J;
        aj["K"] = a.K;
        aj["rows"] = a.rows;
        aj["cols"] = a.cols;
        aj["shape"] = a.shape;
        aj["passed"] = a.passed;
        aj["grid_total"] = a.grid_total;
        aj["grid_tested"] = a.grid_tested;
        aj["witness"] = a.witness ? point_json(*a.witness) : Json(nullptr);
        attempts.push_back(aj);
    }
    j["attempts"] = attempts;
    j["message"] = r.message;
    if (rec.duration) {
        j["duration"] = *rec.duration;
        Json t = Json::object();
        for (const auto& [s, secs] : r.timings)
            t[s] = secs;
        j["timings"] = t;
    }
    return j;
}

inline Verdict verdict_from_string(const std::string& s)
{
    for (Verdict v : {Verdict::Rigorous, Verdict::SemiRigorous, Verdict::Refuted, Verdict::Inconclusive})
        if (s == to_string(v))
            return v;
    throw std::invalid_argument("unknown verdict `" + s + "`");
}

template <typename T>
std::optional<T> opt_from(const Json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<T>();
}

inline ReportRecord report_from_json(const Json& j)
{
    ReportRecord rec;
    rec.name = j.at("name").get<std::string>();
    rec.version = j.at("version").get<std::string>();
    ProofReport& r = rec.report;
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.method = j.at("method").get<std::string>();
    r.certainty = parse_rational(j.at("certainty").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.order = opt_from<int>(j.at("order"));
    r.degree = opt_from<int>(j.at("degree"));
    r.grid_total = j.at("grid_total").get<std::uint64_t>();
    r.grid_tested = j.at("grid_tested").get<std::uint64_t>();
    if (!j.at("nonzero_point").is_null())
        r.nonzero_point = point_from_json(j.at("nonzero_point"));
    for (const auto& [v, d] : j.at("degree_bounds").items())
        r.degree_bounds.push_back({v, d.get<int>()});
    r.shape = j.at("shape").get<std::string>();
    r.extension = j.at("extension").get<bool>();
    r.leading_root_bound = opt_from<long>(j.at("leading_root_bound"));
    r.leading_coefficient = j.at("leading_coefficient").get<std::string>();
    for (const auto& [v, x] : j.at("specialization").items())
        r.specialization.push_back({v, parse_rational(x.get<std::string>())});
    for (const auto& c : j.at("initial_checks"))
        r.initial_checks.push_back({c.at("n").get<long>(), c.at("kind").get<std::string>(), c.at("passed").get<bool>()});
    r.certificate = opt_from<std::string>(j.at("certificate"));
    for (const auto& aj : j.at("attempts")) {
        Attempt a;
        a.J = aj.at("J").get<int>();
        a.K = aj.at("K").get<int>();
        a.rows = aj.at("rows").get<std::size_t>();
        a.cols = aj.at("cols").get<std::size_t>();
        a.shape = aj.at("shape").get<std::string>();
        a.passed = aj.at("passed").get<bool>();
        a.grid_total = aj.at("grid_total").get<std::uint64_t>();
        a.grid_tested = aj.at("grid_tested").get<std::uint64_t>();
        if (!aj.at("witness").is_null())
            a.witness = point_from_json(aj.at("witness"));
        r.attempts.push_back(a);
    }
    r.message = j.at("message").get<std::string>();
    if (j.contains("duration")) {
        rec.duration = j.at("duration").get<double>();
        for (const auto& [s, t] : j.at("timings").items())
            r.timings.push_back({s, t.get<double>()});
    }
    return rec;
}

inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::Rigorous:
    case Verdict::SemiRigorous:
        return kProved;
    case Verdict::Refuted:
        return kRefuted;
    case Verdict::Inconclusive:
        return kInconclusive;
    }
    return kUsage;
}

struct RunOptions {
    ProveOptions prove;
    bool timings = false;
};

inline ReportRecord cmd_prove(const IdentityFile& file, const RunOptions& opt)
{
    auto start = std::chrono::steady_clock::now();
    ReportRecord rec;
    rec.name = file.name;
    rec.report = prove(file.to_identity(), opt.prove);
    if (opt.timings)
        rec.duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

inline void print_summary(std::ostream& os, const ReportRecord& rec)
{
    const ProofReport& r = rec.report;
    os << rec.name << ": " << to_string(r.verdict);
    if (!r.method.empty())
        os << " (" << r.method << ")";
    os << "\n";
    if (r.order)
        os << "  order J = " << *r.order << ", degree K = " << *r.degree << "\n";
    if (r.method == "determinant") {
        os << "  grid " << r.grid_tested << " / " << r.grid_total << " points, certainty " << r.certainty.get_str();
        if (!r.shape.empty())
            os << ", " << r.shape;
        os << "\n";
        if (!r.degree_bounds.empty()) {
            os << "  degree bounds:";
            for (const auto& [v, d] : r.degree_bounds)
                os << " " << v << "<=" << d;
            os << "\n";
        }
        if (!r.specialization.empty()) {
            os << "  specialization:";
            for (const auto& [v, x] : r.specialization)
                os << " " << v << "=" << x.get_str();
            os << "\n";
        }
        if (!r.leading_coefficient.empty())
            os << "  leading coefficient " << r.leading_coefficient << ", largest root "
               << (r.leading_root_bound ? std::to_string(*r.leading_root_bound) : "none") << "\n";
    }
    if (r.certificate)
        os << "  certificate R = " << *r.certificate << "\n";
    if (!r.initial_checks.empty()) {
        os << "  initial checks:";
        for (const auto& c : r.initial_checks)
            os << " " << c.kind << "(" << c.n << ")=" << (c.passed ? "ok" : "FAIL");
        os << "\n";
    }
    if (r.nonzero_point) {
        os << "  nonzero determinant at";
        for (const auto& [v, x] : *r.nonzero_point)
            os << " " << v << "=" << x;
        os << "\n";
    }
    if (!r.message.empty())
        os << "  " << r.message << "\n";
    if (rec.duration)
        os << "  " << std::fixed << std::setprecision(3) << *rec.duration << " s\n" << std::defaultfloat;
}

struct CorpusRow {
    std::string file;
    std::optional<ReportRecord> record;
    std::string error;  // load failure
};

inline std::vector<CorpusRow> cmd_corpus(const std::filesystem::path& dir, const RunOptions& opt)
{
    std::vector<CorpusRow> rows;
    for (const auto& p : corpus_files(dir)) {
        CorpusRow row{p.filename().string(), std::nullopt, ""};
        try {
            row.record = cmd_prove(load_identity_file(p), opt);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Refuted outranks unreadable files, which outrank inconclusive entries.
inline int corpus_exit_code(const std::vector<CorpusRow>& rows)
{
    bool refuted = false, unreadable = false, inconclusive = false;
    for (const auto& r : rows) {
        if (!r.record)
            unreadable = true;
        else if (r.record->report.verdict == Verdict::Refuted)
            refuted = true;
        else if (r.record->report.verdict == Verdict::Inconclusive)
            inconclusive = true;
    }
    if (refuted)
        return kRefuted;
    if (unreadable)
        return kUsage;
    return inconclusive ? kInconclusive : kProved;
}

inline void print_table(std::ostream& os, const std::vector<CorpusRow>& rows, bool timings)
{
    os << std::left << std::setw(22) << "identity" << std::setw(14) << "verdict" << std::setw(4) << "J" << std::setw(4)
       << "K" << std::setw(18) << "grid";
    if (timings)
        os << "seconds";
    os << "\n";
    for (const auto& row : rows) {
        if (!row.record) {
            os << std::setw(22) << row.file << "error: " << row.error << "\n";
            continue;
        }
        const ProofReport& r = row.record->report;
        std::string grid = std::to_string(r.grid_tested) + "/" + std::to_string(r.grid_total);
        os << std::setw(22) << row.record->name << std::setw(14) << to_string(r.verdict) << std::setw(4)
           << (r.order ? std::to_string(*r.order) : "-") << std::setw(4) << (r.degree ? std::to_string(*r.degree) : "-")
           << std::setw(18) << grid;
        if (timings && row.record->duration)
            os << std::fixed << std::setprecision(3) << *row.record->duration << std::defaultfloat;
        os << "\n";
    }
    os << std::right;
}

/// Checks a user-supplied recurrence and certificate against the summand
/// (or against F / RHS when `normalized`).
inline bool cmd_verify(const IdentityFile& file, const std::vector<std::string>& coeffs, const std::string& certificate,
                       bool normalized)
{
    Identity id = file.to_identity();
    const auto& vars = id.vars();
    TermExpression f = normalized ? normalize_and_delta(id).fhat : id.summand;
    Recurrence rec;
    for (const auto& c : coeffs) {
        RationalFunction r = parse_rational_function(c, vars);
        if (!r.is_polynomial())
            throw IdentityError("recurrence coefficient `" + c + "` is not a polynomial");
        rec.coeffs.push_back(r.num());
    }
    if (rec.coeffs.empty())
        throw IdentityError("empty recurrence");
    return verify_certificate(f, rec, Certificate{parse_rational_function(certificate, vars)}, id.k, id.n);
}

inline unsigned default_jobs()
{
    if (const char* s = std::getenv("SYND_JOBS")) {
        try {
            long v = std::stol(s);
            if (v >= 1)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

}  // namespace synd::cli
