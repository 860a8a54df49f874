#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhj/catalog.hpp"

namespace qhj::cli {

enum class Command { List, Spectrum, Verify, Residues, WkbCompare, Sweep };
enum class Method { Qhj, Closed, Oracle, Wkb, Swkb };
enum class Format { Table, Json, Csv };

struct SweepRange {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int steps = 1;
};

/// Everything a run needs. The spec is kept unvalidated (family name plus raw
/// parameters) so that validation errors surface from run() with exit 1.
struct RunDescriptor {
    Command command = Command::Spectrum;
    std::string family;
    PotentialSpec::Params params;
    UnitSystem units;
    unsigned levels = 5;
    std::vector<Method> methods;  // empty: the command's default set
    double tol = 1e-12;
    double oracle_tol = 1e-12;
    Format format = Format::Table;
    std::optional<std::string> output;
    std::optional<double> energy;
    std::optional<SweepRange> sweep;
};

std::string_view to_string(Command c);
std::string_view to_string(Method m);
std::string_view to_string(Format f);
Command parse_command(std::string_view s);
Method parse_method(std::string_view s);
Format parse_format(std::string_view s);

nlohmann::json descriptor_to_json(const RunDescriptor& d);
RunDescriptor descriptor_from_json(const nlohmann::json& doc);

/// Executes the run, writing the report to `out` (or the output path) and
/// any error as a JSON record to `err`. Returns 0, 1 (validation) or 2
/// (numerical failure).
int run(const RunDescriptor& d, std::ostream& out, std::ostream& err);

/// Parses argv (flags, subcommand, optional --config file) and runs.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qhj::cli
