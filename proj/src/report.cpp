#include "sobtrace/report.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sobtrace {

namespace {

std::string format_float(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string scalar_text(const Json& v) {
    if (v.is_number_float()) return format_float(v.get<double>());
    return v.dump();
}

void dump_into(const Json& v, int indent, int depth, std::string& out) {
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (!pretty) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            out += Json(it.key()).dump();
            out += pretty ? ": " : ":";
            dump_into(it.value(), indent, depth + 1, out);
        }
        newline(depth);
        out += '}';
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const Json& e : v) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            dump_into(e, indent, depth + 1, out);
        }
        newline(depth);
        out += ']';
    } else {
        out += scalar_text(v);
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string cell_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_structured()) return dump_json(v, -1);
    return scalar_text(v);
}

void pretty_into(const Json& v, int depth, std::ostringstream& os) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (it.value().is_structured() && !it.value().empty()) {
                os << pad << it.key() << ":\n";
                pretty_into(it.value(), depth + 1, os);
            } else {
                os << pad << it.key() << ": " << cell_text(it.value()) << '\n';
            }
        }
    } else if (v.is_array()) {
        for (const Json& e : v) {
            if (e.is_structured()) {
                os << pad << "-\n";
                pretty_into(e, depth + 1, os);
            } else {
                os << pad << "- " << cell_text(e) << '\n';
            }
        }
    } else {
        os << pad << cell_text(v) << '\n';
    }
}

Json poly_list(const std::vector<RationalPoly>& polys) {
    Json a = Json::array();
    for (const RationalPoly& p : polys) a.push_back(p.str());
    return a;
}

}  // namespace

Json to_json(const InequalityReport& r) {
    Json j;
    j["kind"] = "inequality";
    j["theorem"] = r.theorem;
    j["order"] = 2 * r.m;
    j["m"] = r.m;
    j["n"] = r.n;
    j["kmax"] = r.kmax;
    j["quad_degree"] = r.quad_degree;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["sharp_constant"] = r.sharp_constant;
    j["slack"] = r.slack;
    j["rel_slack"] = r.rel_slack;
    j["equality_expected"] = r.equality_expected;
    j["tolerance"] = r.tolerance;
    Json extras = Json::object();
    for (const auto& [k, v] : r.extras) extras[k] = v;
    j["extras"] = extras;
    j["notes"] = r.notes;
    j["warnings"] = r.warnings;
    j["pass"] = r.pass;
    return j;
}

Json to_json(const IdentityResult& r) {
    Json j;
    j["kind"] = "identity";
    j["order"] = 2 * r.m;
    j["m"] = r.m;
    j["residual"] = r.residual.is_zero() ? "0" : r.residual.str();
    j["published_coefficients"] = poly_list(r.published);
    j["derived_coefficients"] = poly_list(r.derived);
    j["notes"] = r.notes;
    j["pass"] = r.ok;
    return j;
}

Json to_json(const ScanResult& r) {
    Json curve = Json::array();
    for (const ScanPoint& p : r.curve) {
        Json e;
        e["epsilon"] = p.epsilon;
        e["slack"] = p.slack;
        e["rel_slack"] = p.rel_slack;
        curve.push_back(e);
    }
    Json j;
    j["kind"] = "scan";
    j["curve"] = curve;
    j["zero_at_origin"] = r.zero_at_origin;
    j["positive"] = r.positive;
    j["monotone"] = r.monotone;
    j["pass"] = r.zero_at_origin && r.positive && r.monotone;
    return j;
}

std::string dump_json(const Json& value, int indent) {
    std::string out;
    dump_into(value, indent, 0, out);
    return out;
}

std::string to_csv(const std::vector<Json>& reports) {
    std::vector<std::string> columns;
    for (const Json& r : reports)
        for (auto it = r.begin(); it != r.end(); ++it)
            if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
    os << '\n';
    for (const Json& r : reports) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ',';
            auto it = r.find(columns[i]);
            if (it != r.end()) os << csv_field(cell_text(*it));
        }
        os << '\n';
    }
    return os.str();
}

std::string to_pretty(const Json& value) {
    std::ostringstream os;
    pretty_into(value, 0, os);
    return os.str();
}

}  // namespace sobtrace
