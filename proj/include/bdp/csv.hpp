#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bdp {

/// One measurement row of the sweep output.
struct CsvRow {
    std::string model;
    int size = 0;
    double beta = 1.0;
    std::string quantity;
    int n = 0;
    int k = 0;
    double value = 0.0;
};

/// Shortest decimal form with 17 significant digits: doubles survive a
/// parse-back bit-exactly.
std::string format_g17(double value);

/// header `model,size,beta,quantity,n,k,value`, LF separators, UTF-8
void emit_csv(const std::vector<CsvRow>& rows, std::ostream& out);
void emit_csv(const std::vector<CsvRow>& rows, const std::string& path);

std::vector<CsvRow> parse_csv(std::istream& in);

}  // namespace bdp
