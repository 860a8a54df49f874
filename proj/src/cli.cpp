#include "qhj/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "qhj/oracle.hpp"
#include "qhj/quantizer.hpp"
#include "qhj/residues.hpp"
#include "qhj/semiclassical.hpp"
#include "qhj/spec_io.hpp"

namespace qhj::cli {

using nlohmann::json;

namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<std::string_view, E>, N>& table,
             std::string_view what) {
    for (const auto& [name, value] : table)
        if (name == s) return value;
    throw Error(ErrorCode::InvalidParameter, "unknown " + std::string(what) + " '" +
                                                 std::string(s) + "'");
}

constexpr std::array<std::pair<std::string_view, Command>, 6> kCommands{{
    {"list", Command::List},
    {"spectrum", Command::Spectrum},
    {"verify", Command::Verify},
    {"residues", Command::Residues},
    {"wkb-compare", Command::WkbCompare},
    {"sweep", Command::Sweep},
}};
constexpr std::array<std::pair<std::string_view, Method>, 5> kMethods{{
    {"qhj", Method::Qhj},
    {"closed", Method::Closed},
    {"oracle", Method::Oracle},
    {"wkb", Method::Wkb},
    {"swkb", Method::Swkb},
}};
constexpr std::array<std::pair<std::string_view, Format>, 3> kFormats{{
    {"table", Format::Table},
    {"json", Format::Json},
    {"csv", Format::Csv},
}};

template <class E, std::size_t N>
std::string_view name_of(E v, const std::array<std::pair<std::string_view, E>, N>& table) {
    for (const auto& [name, value] : table)
        if (value == v) return name;
    return "?";
}

// 15 significant digits, carried through the JSON writer unchanged.
double r15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

std::string csv_num(const std::optional<double>& v) {
    if (!v) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", *v);
    return buf;
}

std::string table_num(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", *v);
    return buf;
}

json jnum(const std::optional<double>& v) { return v ? json(r15(*v)) : json(nullptr); }
json jcplx(cplx z) { return json::array({r15(z.real()), r15(z.imag())}); }

bool has(const std::vector<Method>& ms, Method m) {
    return std::find(ms.begin(), ms.end(), m) != ms.end();
}

std::vector<Method> methods_for(const RunDescriptor& d) {
    if (!d.methods.empty()) return d.methods;
    switch (d.command) {
        case Command::Verify: return {Method::Qhj, Method::Closed, Method::Oracle};
        case Command::WkbCompare: return {Method::Qhj, Method::Closed, Method::Wkb, Method::Swkb};
        default: return {Method::Qhj, Method::Closed};
    }
}

PotentialSpec build_spec(const RunDescriptor& d) {
    if (d.family.empty())
        throw Error(ErrorCode::InvalidParameter, "--family is required for this command");
    return PotentialSpec::make(parse_family(d.family), d.params, d.units);
}

struct Row {
    unsigned n = 0;
    std::optional<double> qhj, closed, oracle, wkb, swkb, j_residual, swkb_defect;
    std::optional<bool> verified;
};

struct Notice {
    unsigned n;
    std::string code;
    std::string message;
};

struct Report {
    std::vector<Row> rows;
    std::vector<Notice> notices;
};

Report compute_levels(const PotentialSpec& spec, const RunDescriptor& d,
                      const std::vector<Method>& methods) {
    Report rep;
    const auto top = max_level(spec);
    for (unsigned n = 0; n < d.levels; ++n) {
        if (top && n > *top) {
            rep.notices.push_back({n, std::string(to_string(ErrorCode::NoBoundState)),
                                   "level " + std::to_string(n) + " is beyond max_level " +
                                       std::to_string(*top)});
            continue;
        }
        Row row;
        row.n = n;
        auto attempt = [&](Method m, auto&& fn) {
            if (!has(methods, m)) return;
            try {
                fn();
            } catch (const Error& e) {
                if (e.is_validation()) throw;
                rep.notices.push_back({n, std::string(to_string(e.code())),
                                       std::string(to_string(m)) + ": " + e.what()});
            }
        };
        attempt(Method::Qhj, [&] {
            const EnergyLevel lvl = solve_level(spec, n, d.tol);
            row.qhj = lvl.e_qhj;
            row.j_residual = lvl.j_residual;
        });
        attempt(Method::Closed, [&] { row.closed = closed_form_energy(spec, n); });
        attempt(Method::Oracle, [&] {
            OracleConfig cfg;
            cfg.energy_tol = d.oracle_tol;
            row.oracle = oracle_eigenvalue(spec, n, cfg);
        });
        attempt(Method::Wkb, [&] { row.wkb = wkb_level(spec, n, d.tol); });
        attempt(Method::Swkb, [&] { row.swkb = swkb_level(spec, n, d.tol) + ground_shift(spec); });
        rep.rows.push_back(row);
    }
    return rep;
}

// Cross-method agreement for verify: the QHJ root against the closed form at
// the solver tolerance, the oracle at its discretization tolerance.
void mark_verified(Report& rep, double tol) {
    for (auto& r : rep.rows) {
        if (!r.closed) {
            r.verified = false;
            continue;
        }
        const double e = *r.closed;
        bool ok = true;
        if (r.qhj) ok = ok && std::abs(*r.qhj - e) <= 10.0 * tol * (1.0 + std::abs(e));
        if (r.oracle) ok = ok && std::abs(*r.oracle - e) <= 1e-6 * std::max(1.0, std::abs(e));
        if (r.wkb) ok = ok && std::isfinite(*r.wkb);
        r.verified = ok;
    }
}

json row_json(const Row& r) {
    json j{{"n", r.n},
           {"e_qhj", jnum(r.qhj)},
           {"e_closed", jnum(r.closed)},
           {"e_oracle", jnum(r.oracle)},
           {"e_wkb", jnum(r.wkb)},
           {"e_swkb", jnum(r.swkb)},
           {"j_residual", jnum(r.j_residual)}};
    if (r.swkb_defect) j["swkb_defect"] = r15(*r.swkb_defect);
    if (r.verified) j["verified"] = *r.verified;
    return j;
}

json notices_json(const std::vector<Notice>& ns) {
    json a = json::array();
    for (const auto& n : ns) a.push_back({{"n", n.n}, {"code", n.code}, {"message", n.message}});
    return a;
}

const char* kCsvHeader = "n,e_qhj,e_closed,e_oracle,e_wkb,e_swkb,j_residual";

std::string row_csv(const Row& r) {
    return std::to_string(r.n) + "," + csv_num(r.qhj) + "," + csv_num(r.closed) + "," +
           csv_num(r.oracle) + "," + csv_num(r.wkb) + "," + csv_num(r.swkb) + "," +
           csv_num(r.j_residual);
}

void table_rows(std::ostream& os, const Report& rep, bool with_verified) {
    char line[256];
    std::snprintf(line, sizeof line, "%3s %17s %17s %17s %17s %17s %11s", "n", "e_qhj", "e_closed",
                  "e_oracle", "e_wkb", "e_swkb", "j_residual");
    os << line << (with_verified ? "  verified" : "") << "\n";
    for (const auto& r : rep.rows) {
        std::snprintf(line, sizeof line, "%3u %17s %17s %17s %17s %17s %11s", r.n,
                      table_num(r.qhj).c_str(), table_num(r.closed).c_str(),
                      table_num(r.oracle).c_str(), table_num(r.wkb).c_str(),
                      table_num(r.swkb).c_str(), table_num(r.j_residual).c_str());
        os << line;
        if (with_verified && r.verified) os << "  " << (*r.verified ? "yes" : "NO");
        os << "\n";
    }
    for (const auto& n : rep.notices) os << "  n=" << n.n << ": " << n.message << "\n";
}

void emit_levels(std::ostream& os, const RunDescriptor& d, const PotentialSpec& spec,
                 const Report& rep) {
    const bool verify = d.command == Command::Verify;
    switch (d.format) {
        case Format::Json: {
            json j{{"command", to_string(d.command)}, {"spec", spec_to_json(spec)}};
            json rows = json::array();
            for (const auto& r : rep.rows) rows.push_back(row_json(r));
            j["levels"] = rows;
            j["notices"] = notices_json(rep.notices);
            if (verify) {
                int ok = 0;
                for (const auto& r : rep.rows) ok += r.verified.value_or(false) ? 1 : 0;
                j["summary"] = {{"verified", ok},
                                {"failed", static_cast<int>(rep.rows.size()) - ok},
                                {"beyond_max_level", static_cast<int>(rep.notices.size())}};
            }
            os << j.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            os << kCsvHeader << "\n";
            for (const auto& r : rep.rows) os << row_csv(r) << "\n";
            break;
        case Format::Table:
            os << family_name(spec.family()) << "\n";
            table_rows(os, rep, verify);
            break;
    }
}

void emit_wkb_compare(std::ostream& os, const RunDescriptor& d, const PotentialSpec& spec,
                      const Report& rep) {
    switch (d.format) {
        case Format::Json: {
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"n", r.n},
                                {"e_closed", jnum(r.closed)},
                                {"e_qhj", jnum(r.qhj)},
                                {"e_wkb", jnum(r.wkb)},
                                {"e_swkb", jnum(r.swkb)},
                                {"swkb_defect", jnum(r.swkb_defect)}});
            json j{{"command", "wkb-compare"},
                   {"spec", spec_to_json(spec)},
                   {"levels", rows},
                   {"notices", notices_json(rep.notices)}};
            os << j.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            os << "n,e_closed,e_qhj,e_wkb,e_swkb,swkb_defect\n";
            for (const auto& r : rep.rows)
                os << r.n << "," << csv_num(r.closed) << "," << csv_num(r.qhj) << ","
                   << csv_num(r.wkb) << "," << csv_num(r.swkb) << "," << csv_num(r.swkb_defect)
                   << "\n";
            break;
        case Format::Table: {
            char line[256];
            std::snprintf(line, sizeof line, "%3s %17s %17s %17s %17s %12s", "n", "e_closed",
                          "e_qhj", "e_wkb", "e_swkb", "swkb_defect");
            os << family_name(spec.family()) << "\n" << line << "\n";
            for (const auto& r : rep.rows) {
                std::snprintf(line, sizeof line, "%3u %17s %17s %17s %17s %12s", r.n,
                              table_num(r.closed).c_str(), table_num(r.qhj).c_str(),
                              table_num(r.wkb).c_str(), table_num(r.swkb).c_str(),
                              table_num(r.swkb_defect).c_str());
                os << line << "\n";
            }
            for (const auto& n : rep.notices) os << "  n=" << n.n << ": " << n.message << "\n";
            break;
        }
    }
}

void emit_residues(std::ostream& os, const RunDescriptor& d, const PotentialSpec& spec, double E) {
    const auto records = describe_poles(spec, E);
    switch (d.format) {
        case Format::Json: {
            json a = json::array();
            for (const auto& rec : records) {
                json loc = rec.pole.at_infinity ? json("infinity") : jcplx(rec.pole.location);
                a.push_back({{"location", loc},
                             {"kind", to_string(rec.pole.kind)},
                             {"candidates", {jcplx(rec.candidates[0]), jcplx(rec.candidates[1])}},
                             {"selected", jcplx(rec.selected)},
                             {"gamma", jcplx(rec.gamma)}});
            }
            os << a.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            os << "location_re,location_im,kind,cand0_re,cand0_im,cand1_re,cand1_im,"
                  "selected_re,selected_im,gamma_re,gamma_im\n";
            for (const auto& rec : records) {
                auto c = [](cplx z) { return csv_num(z.real()) + "," + csv_num(z.imag()); };
                os << (rec.pole.at_infinity ? std::string("inf,") : c(rec.pole.location)) +
                          (rec.pole.at_infinity ? "" : ",")
                   << to_string(rec.pole.kind) << "," << c(rec.candidates[0]) << ","
                   << c(rec.candidates[1]) << "," << c(rec.selected) << "," << c(rec.gamma)
                   << "\n";
            }
            break;
        case Format::Table: {
            auto c = [](cplx z) { return "(" + table_num(z.real()) + ", " + table_num(z.imag()) + ")"; };
            os << family_name(spec.family()) << " at E = " << table_num(E) << "\n";
            for (const auto& rec : records)
                os << "  " << (rec.pole.at_infinity ? std::string("infinity") : c(rec.pole.location))
                   << "  " << to_string(rec.pole.kind) << "  selected " << c(rec.selected)
                   << "  gamma " << c(rec.gamma) << "\n";
            break;
        }
    }
}

struct FamilyInfo {
    Family family;
    std::string_view domain;
    std::string_view constraints;
};

constexpr FamilyInfo kFamilyInfo[] = {
    {Family::HarmonicOscillator, "(-inf, inf)", "omega > 0"},
    {Family::HalfLineOscillator, "(0, inf), wall at 0", "omega > 0"},
    {Family::SquareWell, "(0, L), walls at both ends", "L > 0"},
    {Family::Eckart, "(0, inf)", "alpha > 0, B > A^2, A > k/2"},
    {Family::ScarfII, "(-inf, inf)", "alpha > 0, A > 0"},
    {Family::RosenMorseII, "(-inf, inf)", "alpha > 0, A > 0, |B| < A^2"},
    {Family::GenPoschlTeller, "(0, inf)", "alpha > 0, A > 0, B > A + k/2"},
    {Family::ScarfI, "(-pi/2alpha, pi/2alpha)", "alpha > 0, A > |B| + k/2"},
    {Family::RosenMorseI, "(0, pi/alpha)", "alpha > 0, A > k/2"},
};

void emit_list(std::ostream& os, Format format) {
    switch (format) {
        case Format::Json: {
            json a = json::array();
            for (const auto& f : kFamilyInfo)
                a.push_back({{"family", family_name(f.family)},
                             {"parameters", family_parameters(f.family)},
                             {"domain", f.domain},
                             {"constraints", f.constraints},
                             {"susy", is_susy(f.family)}});
            os << a.dump(2) << "\n";
            break;
        }
        case Format::Csv:
            os << "family,parameters,domain,constraints\n";
            for (const auto& f : kFamilyInfo) {
                std::string ps;
                for (const auto& p : family_parameters(f.family)) ps += (ps.empty() ? "" : " ") + p;
                os << family_name(f.family) << "," << ps << ",\"" << f.domain << "\",\""
                   << f.constraints << "\"\n";
            }
            break;
        case Format::Table:
            for (const auto& f : kFamilyInfo) {
                std::string ps;
                for (const auto& p : family_parameters(f.family)) ps += (ps.empty() ? "" : " ") + p;
                char line[256];
                std::snprintf(line, sizeof line, "%-18s %-14s %-28s %s",
                              std::string(family_name(f.family)).c_str(), ps.c_str(),
                              std::string(f.domain).c_str(), std::string(f.constraints).c_str());
                os << line << "\n";
            }
            os << "k = alpha*hbar/sqrt(2m)\n";
            break;
    }
}

int run_command(const RunDescriptor& d, std::ostream& os) {
    if (d.levels < 1) throw Error(ErrorCode::InvalidParameter, "--levels must be at least 1");
    if (!(d.tol > 0.0) || !(d.oracle_tol > 0.0))
        throw Error(ErrorCode::InvalidParameter, "tolerances must be positive");
    switch (d.command) {
        case Command::List: emit_list(os, d.format); return 0;
        case Command::Spectrum:
        case Command::Verify: {
            const PotentialSpec spec = build_spec(d);
            Report rep = compute_levels(spec, d, methods_for(d));
            if (d.command == Command::Verify) mark_verified(rep, d.tol);
            emit_levels(os, d, spec, rep);
            if (d.command == Command::Verify)
                for (const auto& r : rep.rows)
                    if (!r.verified.value_or(false)) return 2;
            return 0;
        }
        case Command::WkbCompare: {
            const PotentialSpec spec = build_spec(d);
            Report rep = compute_levels(spec, d, methods_for(d));
            for (auto& r : rep.rows) {
                if (!r.closed) continue;
                try {
                    const double e = *r.closed - ground_shift(spec);
                    r.swkb_defect = swkb_integral(spec, e).value -
                                    r.n * std::numbers::pi * spec.hbar();
                } catch (const Error& e) {
                    rep.notices.push_back({r.n, std::string(to_string(e.code())),
                                           std::string("swkb_defect: ") + e.what()});
                }
            }
            emit_wkb_compare(os, d, spec, rep);
            return 0;
        }
        case Command::Residues: {
            const PotentialSpec spec = build_spec(d);
            emit_residues(os, d, spec, d.energy.value_or(ground_shift(spec)));
            return 0;
        }
        case Command::Sweep: {
            if (!d.sweep || d.sweep->param.empty())
                throw Error(ErrorCode::InvalidParameter, "sweep needs --param, --from, --to");
            const SweepRange& sw = *d.sweep;
            if (sw.steps < 1) throw Error(ErrorCode::InvalidParameter, "--steps must be >= 1");
            if (d.family.empty())
                throw Error(ErrorCode::InvalidParameter, "--family is required for sweep");
            const Family fam = parse_family(d.family);
            const auto names = family_parameters(fam);
            if (std::find(names.begin(), names.end(), sw.param) == names.end())
                throw Error(ErrorCode::InvalidParameter,
                            "'" + sw.param + "' is not a parameter of " + d.family);
            json blocks = json::array();
            std::ostringstream text;
            if (d.format == Format::Csv) text << sw.param << "," << kCsvHeader << "\n";
            for (int i = 0; i < sw.steps; ++i) {
                const double v =
                    sw.steps == 1 ? sw.from : sw.from + (sw.to - sw.from) * i / (sw.steps - 1);
                RunDescriptor point = d;
                point.params[sw.param] = v;
                json block{{"value", r15(v)}};
                try {
                    const PotentialSpec spec = build_spec(point);
                    const Report rep = compute_levels(spec, point, methods_for(d));
                    json rows = json::array();
                    for (const auto& r : rep.rows) rows.push_back(row_json(r));
                    block["levels"] = rows;
                    block["notices"] = notices_json(rep.notices);
                    if (d.format == Format::Csv)
                        for (const auto& r : rep.rows) text << csv_num(v) << "," << row_csv(r) << "\n";
                    if (d.format == Format::Table) {
                        text << sw.param << " = " << table_num(v) << "\n";
                        table_rows(text, rep, false);
                    }
                } catch (const Error& e) {
                    block["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
                    if (d.format == Format::Table)
                        text << sw.param << " = " << table_num(v) << "\n  " << e.what() << "\n";
                }
                blocks.push_back(block);
            }
            if (d.format == Format::Json)
                os << json{{"command", "sweep"},
                           {"family", d.family},
                           {"param", sw.param},
                           {"blocks", blocks}}
                          .dump(2)
                   << "\n";
            else
                os << text.str();
            return 0;
        }
    }
    return 0;
}

void emit_error(std::ostream& err, std::string_view code, const std::string& message,
                const std::string& context) {
    err << json{{"code", code}, {"message", message}, {"context", context}}.dump() << "\n";
}

}  // namespace

std::string_view to_string(Command c) { return name_of(c, kCommands); }
std::string_view to_string(Method m) { return name_of(m, kMethods); }
std::string_view to_string(Format f) { return name_of(f, kFormats); }
Command parse_command(std::string_view s) { return parse_enum(s, kCommands, "command"); }
Method parse_method(std::string_view s) { return parse_enum(s, kMethods, "method"); }
Format parse_format(std::string_view s) { return parse_enum(s, kFormats, "format"); }

json descriptor_to_json(const RunDescriptor& d) {
    json j{{"command", to_string(d.command)},
           {"family", d.family},
           {"params", d.params},
           {"hbar", d.units.hbar},
           {"mass", d.units.mass},
           {"levels", d.levels},
           {"tol", d.tol},
           {"oracle_tol", d.oracle_tol},
           {"format", to_string(d.format)}};
    json ms = json::array();
    for (Method m : d.methods) ms.push_back(to_string(m));
    j["methods"] = ms;
    j["output"] = d.output ? json(*d.output) : json(nullptr);
    j["energy"] = d.energy ? json(*d.energy) : json(nullptr);
    if (d.sweep)
        j["sweep"] = {{"param", d.sweep->param},
                      {"from", d.sweep->from},
                      {"to", d.sweep->to},
                      {"steps", d.sweep->steps}};
    return j;
}

RunDescriptor descriptor_from_json(const json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidParameter, "run descriptor must be an object");
    RunDescriptor d;
    try {
        if (doc.contains("command")) d.command = parse_command(doc.at("command").get<std::string>());
        if (doc.contains("family")) d.family = doc.at("family").get<std::string>();
        if (doc.contains("params"))
            for (const auto& [k, v] : doc.at("params").items()) d.params[k] = v.get<double>();
        if (doc.contains("hbar")) d.units.hbar = doc.at("hbar").get<double>();
        if (doc.contains("mass")) d.units.mass = doc.at("mass").get<double>();
        if (doc.contains("levels")) d.levels = doc.at("levels").get<unsigned>();
        if (doc.contains("tol")) d.tol = doc.at("tol").get<double>();
        if (doc.contains("oracle_tol")) d.oracle_tol = doc.at("oracle_tol").get<double>();
        if (doc.contains("format")) d.format = parse_format(doc.at("format").get<std::string>());
        if (doc.contains("methods"))
            for (const auto& m : doc.at("methods")) d.methods.push_back(parse_method(m.get<std::string>()));
        if (doc.contains("output") && !doc.at("output").is_null())
            d.output = doc.at("output").get<std::string>();
        if (doc.contains("energy") && !doc.at("energy").is_null())
            d.energy = doc.at("energy").get<double>();
        if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
            const auto& s = doc.at("sweep");
            d.sweep = SweepRange{s.at("param").get<std::string>(), s.at("from").get<double>(),
                                 s.at("to").get<double>(), s.value("steps", 1)};
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidParameter, std::string("malformed run descriptor: ") + e.what());
    }
    return d;
}

int run(const RunDescriptor& d, std::ostream& out, std::ostream& err) {
    try {
        std::ostringstream report;
        const int status = run_command(d, report);
        if (d.output) {
            std::ofstream f(*d.output, std::ios::binary);
            if (!f || !(f << report.str()) || !f.flush())
                throw Error(ErrorCode::Io, "cannot write output file", *d.output);
        } else {
            out << report.str();
        }
        if (status == 2) emit_error(err, "verification_failed", "some levels failed cross-method verification", "");
        return status;
    } catch (const Error& e) {
        emit_error(err, to_string(e.code()), e.what(), e.context());
        return e.is_validation() ? 1 : 2;
    }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact bound-state spectra from the quantum Hamilton-Jacobi residue method", "qhj"};
    app.require_subcommand(1);

    std::string family, format, config, output, param;
    std::vector<std::string> methods;
    double A = 0, B = 0, alpha = 0, omega = 0, L = 0, hbar = 1, mass = 1, tol = 1e-12;
    double energy = 0, from = 0, to = 0;
    unsigned levels = 5;
    int steps = 1;

    struct Sub {
        CLI::App* app;
        std::map<std::string, CLI::Option*> opts;
    };
    std::vector<Sub> subs;
    for (const auto& [name, cmd] : kCommands) {
        Sub s{app.add_subcommand(std::string(name)), {}};
        auto add = [&](const std::string& flag, auto& var, const std::string& help) {
            s.opts[flag] = s.app->add_option(flag, var, help);
        };
        add("--family", family, "potential family (see `qhj list`)");
        add("--A", A, "potential parameter A");
        add("--B", B, "potential parameter B");
        add("--alpha", alpha, "inverse length scale alpha");
        add("--omega", omega, "oscillator frequency");
        add("--L", L, "square-well width");
        add("--hbar", hbar, "Planck constant (default 1)");
        add("--mass", mass, "particle mass (default 1)");
        add("--levels", levels, "number of levels from n = 0 (default 5)");
        add("--tol", tol, "root-finder tolerance (default 1e-12)");
        add("--format", format, "table, json or csv");
        add("--output", output, "write the report to this file");
        add("--config", config, "JSON run descriptor; flags override it");
        add("--energy", energy, "energy for the residues report");
        s.opts["--method"] = s.app->add_option("--method", methods, "comma list of qhj,closed,oracle,wkb,swkb")
                                 ->delimiter(',');
        add("--param", param, "sweep parameter name");
        add("--from", from, "sweep start");
        add("--to", to, "sweep end");
        add("--steps", steps, "sweep points (default 1)");
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, to_string(ErrorCode::InvalidParameter), e.what(), "");
        return 1;
    }

    try {
        const Sub* active = nullptr;
        for (const auto& s : subs)
            if (s.app->parsed()) active = &s;
        auto given = [&](const std::string& flag) { return active->opts.at(flag)->count() > 0; };

        RunDescriptor d;
        if (given("--config")) {
            std::ifstream f(config);
            if (!f) throw Error(ErrorCode::Io, "cannot read config file", config);
            json doc;
            try {
                doc = json::parse(f);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::InvalidParameter, std::string("config is not JSON: ") + e.what(), config);
            }
            d = descriptor_from_json(doc);
        }
        d.command = parse_command(active->app->get_name());
        if (given("--family")) d.family = family;
        const std::pair<const char*, double*> params[] = {
            {"A", &A}, {"B", &B}, {"alpha", &alpha}, {"omega", &omega}, {"L", &L}};
        for (const auto& [name, var] : params)
            if (given(std::string("--") + name)) d.params[name] = *var;
        if (given("--hbar")) d.units.hbar = hbar;
        if (given("--mass")) d.units.mass = mass;
        if (given("--levels")) d.levels = levels;
        if (given("--tol")) d.tol = tol;
        if (given("--format")) d.format = parse_format(format);
        if (given("--output")) d.output = output;
        if (given("--energy")) d.energy = energy;
        if (given("--method")) {
            d.methods.clear();
            for (const auto& m : methods) d.methods.push_back(parse_method(m));
        }
        if (given("--param") || given("--from") || given("--to") || given("--steps")) {
            SweepRange sw = d.sweep.value_or(SweepRange{});
            if (given("--param")) sw.param = param;
            if (given("--from")) sw.from = from;
            if (given("--to")) sw.to = to;
            if (given("--steps")) sw.steps = steps;
            d.sweep = sw;
        }
        return run(d, out, err);
    } catch (const Error& e) {
        emit_error(err, to_string(e.code()), e.what(), e.context());
        return e.is_validation() ? 1 : 2;
    }
}

}  // namespace qhj::cli
