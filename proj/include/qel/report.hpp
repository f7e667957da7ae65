#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qel/channel.hpp"
#include "qel/verify.hpp"

namespace qel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qel/1";

/// 12 significant digits, locale independent; empty for non-finite values.
std::string format_number(double v);

using Cell = std::variant<std::monostate, double, bool>;  // monostate renders as an empty cell / null

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& os, const Table& t);

/// {"schema", "command", "columns", "rows": [{column: value}]}
Json table_json(const std::string& command, const Table& t);

/// Writes JSON with 2-space indent and a trailing newline. Doubles go
/// through format_number so output is reproducible byte for byte.
void write_json(std::ostream& os, const Json& j);

Json window_json(double mu, double eta_det, const TransmissionWindow& w);
Json verification_json(const VerificationReport& r);

}  // namespace qel
