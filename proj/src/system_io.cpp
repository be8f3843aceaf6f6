#include "mimostab/system_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mimostab/errors.hpp"

namespace mimostab {

namespace {

using nlohmann::ordered_json;

// Minimal recursive-descent arithmetic over named parameters.
class ExprParser {
  public:
    ExprParser(const std::string& text, const std::map<std::string, double>& params)
        : text_(text), params_(params) {}

    double parse() {
        const double v = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("coefficient expression \"" + text_ + "\": " + what);
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    double expression() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) {
                const double d = factor();
                if (d == 0.0) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }
    double factor() {
        skip_ws();
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            const double v = expression();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            const double v = std::stod(text_.substr(pos_), &used);
            pos_ += used;
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            const std::string name = text_.substr(pos_, end - pos_);
            pos_ = end;
            const auto it = params_.find(name);
            if (it == params_.end()) fail("unknown parameter '" + name + "'");
            return it->second;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    const std::map<std::string, double>& params_;
    size_t pos_ = 0;
};

std::vector<double> parse_coefficients(const ordered_json& arr,
                                       const std::map<std::string, double>& params,
                                       const std::string& what) {
    if (!arr.is_array()) throw ValidationError(what + " must be an array of coefficients");
    std::vector<double> out;
    for (const auto& v : arr) {
        if (v.is_number()) {
            out.push_back(v.get<double>());
        } else if (v.is_string()) {
            out.push_back(eval_parameter_expression(v.get<std::string>(), params));
        } else {
            throw ValidationError(what + ": coefficients must be numbers or expressions");
        }
    }
    for (double c : out)
        if (!std::isfinite(c)) throw ValidationError(what + ": non-finite coefficient");
    return out;
}

} // namespace

double eval_parameter_expression(const std::string& text,
                                 const std::map<std::string, double>& parameters) {
    return ExprParser(text, parameters).parse();
}

TransferMatrix SystemDescription::to_transfer_matrix(const Tolerances& tol) const {
    TransferMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const Entry& e = at(i, j);
            m.at(i, j) = RationalFunction(Polynomial(e.num), Polynomial(e.den), tol);
        }
    return m;
}

SystemDescription parse_system_json(const std::string& json_text, const std::string& origin) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    SystemDescription d;
    try {
        d.name = doc.value("name", origin);
        if (doc.contains("parameters")) {
            for (const auto& [key, value] : doc.at("parameters").items()) {
                if (!value.is_number())
                    throw ValidationError("parameter '" + key + "' must be a number");
                d.parameters[key] = value.get<double>();
            }
        }
        const auto& grid = doc.at("entries");
        if (!grid.is_array() || grid.empty()) throw ValidationError("entries must be a non-empty grid");
        d.rows = doc.value("rows", static_cast<int>(grid.size()));
        d.cols = doc.value("cols", static_cast<int>(grid.at(0).size()));
        if (static_cast<int>(grid.size()) != d.rows)
            throw ValidationError("row count does not match 'rows'");
        for (int i = 0; i < d.rows; ++i) {
            const auto& row = grid.at(static_cast<size_t>(i));
            if (!row.is_array() || static_cast<int>(row.size()) != d.cols)
                throw ValidationError("ragged entry grid");
            for (int j = 0; j < d.cols; ++j) {
                const auto& cell = row.at(static_cast<size_t>(j));
                SystemDescription::Entry e;
                e.num = parse_coefficients(cell.at("num"), d.parameters,
                                           "entry (" + std::to_string(i) + "," + std::to_string(j) + ") num");
                e.den = parse_coefficients(cell.at("den"), d.parameters,
                                           "entry (" + std::to_string(i) + "," + std::to_string(j) + ") den");
                if (Polynomial(e.den).is_zero())
                    throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") has a zero denominator");
                d.entries.push_back(std::move(e));
            }
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return d;
}

SystemDescription parse_system(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_system_json(ss.str(), path);
}

std::string emit_system_json(const SystemDescription& d) {
    ordered_json doc;
    doc["name"] = d.name;
    doc["rows"] = d.rows;
    doc["cols"] = d.cols;
    ordered_json grid = ordered_json::array();
    for (int i = 0; i < d.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < d.cols; ++j) {
            ordered_json cell;
            cell["num"] = d.at(i, j).num;
            cell["den"] = d.at(i, j).den;
            row.push_back(cell);
        }
        grid.push_back(row);
    }
    doc["entries"] = grid;
    return doc.dump(2);
}

} // namespace mimostab
