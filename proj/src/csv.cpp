#include "bdp/csv.hpp"

#include "bdp/types.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bdp {

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void emit_csv(const std::vector<CsvRow>& rows, std::ostream& out) {
    out << "model,size,beta,quantity,n,k,value\n";
    for (const auto& r : rows)
        out << r.model << ',' << r.size << ',' << format_g17(r.beta) << ',' << r.quantity << ','
            << r.n << ',' << r.k << ',' << format_g17(r.value) << '\n';
}

void emit_csv(const std::vector<CsvRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw NumericError("emit_csv: cannot open '" + path + "' for writing");
    emit_csv(rows, out);
    if (!out) throw NumericError("emit_csv: write failed for '" + path + "'");
}

std::vector<CsvRow> parse_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw NumericError("parse_csv: empty input");
    if (line != "model,size,beta,quantity,n,k,value")
        throw NumericError("parse_csv: unexpected header '" + line + "'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        CsvRow r;
        auto next = [&]() {
            if (!std::getline(cells, cell, ',')) throw NumericError("parse_csv: short row");
            return cell;
        };
        r.model = next();
        r.size = std::stoi(next());
        r.beta = std::stod(next());
        r.quantity = next();
        r.n = std::stoi(next());
        r.k = std::stoi(next());
        r.value = std::stod(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace bdp
