#pragma once
#include <string>
#include <utility>
#include <vector>

#include "proxemb/matrix.hpp"

namespace proxemb {

// shortest decimal string that parses back to exactly v
std::string format_double(double v);

// csv with '#' provenance comments up front. one row per matrix row,
// prefixed by its id (row index when ids are not given).
std::string matrix_csv_string(const DenseMatrix& m,
                              const std::vector<std::string>& comments,
                              const std::vector<std::string>& row_ids = {});

void write_matrix_csv(const std::string& path, const DenseMatrix& m,
                      const std::vector<std::string>& comments,
                      const std::vector<std::string>& row_ids = {});

struct CsvMatrix {
    DenseMatrix m;
    std::vector<std::string> row_ids;
};

// reads csv written by the functions above: skips '#' lines, takes the
// first field of each row as the id and the rest as numbers
CsvMatrix read_matrix_csv(const std::string& path);

// rows of "id,integer_label[,...]"; '#' lines are skipped
std::vector<std::pair<std::string, int>> read_label_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace proxemb
