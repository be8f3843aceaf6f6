#pragma once

#include <map>
#include <string>
#include <vector>

#include "mimostab/transfer_matrix.hpp"

namespace mimostab {

/// A transfer matrix as described on disk: a rectangular grid of
/// {num, den} coefficient lists in ascending degree order, with optional
/// named parameter substitutions applied before reduction. Coefficients may
/// be numbers or arithmetic expressions over the parameters ("b", "-5/b",
/// "(b-4)/(b+4)" split across num/den, ...).
struct SystemDescription {
    std::string name;
    int rows = 0;
    int cols = 0;
    struct Entry {
        std::vector<double> num;
        std::vector<double> den;
    };
    std::vector<Entry> entries;  // row-major, values after substitution
    std::map<std::string, double> parameters;

    const Entry& at(int i, int j) const { return entries[static_cast<size_t>(i * cols + j)]; }

    TransferMatrix to_transfer_matrix(const Tolerances& tol = Tolerances::standard()) const;
};

/// Parse a system description from a JSON file. ParseError carries the file
/// and JSON context; ValidationError reports schema violations (ragged grid,
/// zero denominator, unknown parameter).
SystemDescription parse_system(const std::string& path);

/// Parse from JSON text (used by the built-in corpus and tests).
SystemDescription parse_system_json(const std::string& json_text, const std::string& origin = "<memory>");

/// Serialize back to the on-disk schema (numeric coefficients, i.e. the
/// substituted values). parse(emit(d)) reproduces the same reduced matrix.
std::string emit_system_json(const SystemDescription& d);

/// Evaluate a coefficient expression over named parameters: numbers,
/// identifiers, + - * /, unary sign, parentheses.
double eval_parameter_expression(const std::string& text,
                                 const std::map<std::string, double>& parameters);

} // namespace mimostab
