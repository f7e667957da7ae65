#include "qel/report.hpp"

#include <charconv>
#include <cmath>

namespace qel {

namespace {

Json cell_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c);
    return nullptr;
}

// nlohmann prints doubles with 17 digits; render them ourselves instead.
void emit(std::ostream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << inner << Json(it.key()).dump() << ": ";
            emit(os, it.value(), indent + 2);
        }
        os << "\n" << pad << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ",\n";
            os << inner;
            emit(os, j[i], indent + 2);
        }
        os << "\n" << pad << "]";
    } else if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isfinite(v))
            os << format_number(v);
        else
            os << "null";
    } else {
        os << j.dump();
    }
}

}  // namespace

std::string format_number(double v) {
    if (!std::isfinite(v)) return "";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            if (std::holds_alternative<double>(row[i]))
                os << format_number(std::get<double>(row[i]));
            else if (std::holds_alternative<bool>(row[i]))
                os << (std::get<bool>(row[i]) ? "true" : "false");
        }
        os << "\n";
    }
}

Json table_json(const std::string& command, const Table& t) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

void write_json(std::ostream& os, const Json& j) {
    emit(os, j, 0);
    os << "\n";
}

Json window_json(double mu, double eta_det, const TransmissionWindow& w) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "bounds";
    j["mu"] = mu;
    j["eta_det"] = eta_det;
    j["empty"] = w.empty;
    if (w.empty) {
        j["eta_t_lower"] = nullptr;
        j["eta_t_upper"] = nullptr;
        j["lower_db"] = nullptr;
        j["upper_db"] = nullptr;
    } else {
        j["eta_t_lower"] = w.eta_t_lower;
        j["eta_t_upper"] = w.eta_t_upper;
        j["lower_db"] = w.loss_db_min;
        j["upper_db"] = w.loss_db_max;
    }
    return j;
}

Json verification_json(const VerificationReport& r) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "verify";
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    Json suites = Json::array();
    for (const auto& s : r.suites) {
        Json sj;
        sj["name"] = s.name;
        sj["passed"] = s.passed();
        Json checks = Json::array();
        for (const auto& c : s.checks) {
            Json cj;
            cj["name"] = c.name;
            cj["delta"] = c.delta;
            cj["tolerance"] = c.tolerance;
            cj["passed"] = c.passed();
            checks.push_back(std::move(cj));
        }
        sj["checks"] = std::move(checks);
        suites.push_back(std::move(sj));
    }
    j["suites"] = std::move(suites);
    j["failing"] = r.failing_checks();
    return j;
}

}  // namespace qel
