#include "proxemb/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "proxemb/errors.hpp"

namespace proxemb {

std::string format_double(double v) {
    char buf[40];
    if (v == (long long)v && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%lld", (long long)v);
        return buf;
    }
    // shortest %.g form that survives a strtod round trip
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string matrix_csv_string(const DenseMatrix& m,
                              const std::vector<std::string>& comments,
                              const std::vector<std::string>& row_ids) {
    if (!row_ids.empty() && row_ids.size() != std::size_t(m.rows()))
        throw data_error("row id count does not match matrix rows");
    std::ostringstream out;
    for (const auto& c : comments)
        out << "# " << c << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << (row_ids.empty() ? std::to_string(i) : row_ids[i]);
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << "," << format_double(m(i, j));
        out << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw data_error("cannot write file: " + path);
    out << content;
    if (!out)
        throw data_error("write failed: " + path);
}

void write_matrix_csv(const std::string& path, const DenseMatrix& m,
                      const std::vector<std::string>& comments,
                      const std::vector<std::string>& row_ids) {
    write_text_file(path, matrix_csv_string(m, comments, row_ids));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        fields.push_back(item);
    return fields;
}

bool is_data_line(const std::string& line) {
    auto first = line.find_first_not_of(" \t\r");
    return first != std::string::npos && line[first] != '#';
}

} // namespace

CsvMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open csv: " + path);
    std::vector<std::vector<double>> rows;
    CsvMatrix out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!is_data_line(line))
            continue;
        auto fields = split_fields(line);
        if (fields.size() < 2)
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": expected 'id,value,...'");
        std::vector<double> vals;
        for (std::size_t j = 1; j < fields.size(); ++j) {
            char* end = nullptr;
            double v = std::strtod(fields[j].c_str(), &end);
            if (fields[j].empty() || end != fields[j].c_str() + fields[j].size())
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": bad number '" + fields[j] + "'");
            vals.push_back(v);
        }
        if (!rows.empty() && vals.size() != rows.front().size())
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": ragged row width");
        out.row_ids.push_back(fields[0]);
        rows.push_back(std::move(vals));
    }
    out.m.resize(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            out.m(i, j) = rows[i][j];
    return out;
}

std::vector<std::pair<std::string, int>> read_label_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open label csv: " + path);
    std::vector<std::pair<std::string, int>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!is_data_line(line))
            continue;
        auto fields = split_fields(line);
        if (fields.size() < 2)
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": expected 'id,label'");
        char* end = nullptr;
        long v = std::strtol(fields[1].c_str(), &end, 10);
        if (fields[1].empty() || end != fields[1].c_str() + fields[1].size())
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": bad label '" + fields[1] + "'");
        out.emplace_back(fields[0], int(v));
    }
    return out;
}

} // namespace proxemb
