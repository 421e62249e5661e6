#include "breg/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace breg {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
            // a comma between empty fields is still a separator; empty
            // fields are not meaningful in these formats
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
        throw std::runtime_error(context + ": cannot parse number '" + s + "'");
    return v;
}

bool looks_numeric(const std::string& s) {
    char* end = nullptr;
    (void)std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0';
}

std::vector<std::vector<std::string>> tokenize_rows(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto fields = split_fields(strip_comment(line));
        if (!fields.empty()) rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

std::string format_number(double value, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
    return buf;
}

Vector load_vector(const std::string& path) {
    Vector out;
    for (const auto& row : tokenize_rows(path))
        for (const auto& f : row) out.push_back(parse_double(f, path));
    if (out.empty()) throw std::runtime_error(path + ": no numbers found");
    return out;
}

DiscreteDistribution load_distribution(const std::string& path) {
    auto rows = tokenize_rows(path);
    if (rows.size() < 2) throw std::runtime_error(path + ": expected a header and atom rows");
    const auto& header = rows.front();
    if (header.empty() || header.front() != "w")
        throw std::runtime_error(path + ": distribution header must start with 'w'");
    const std::size_t cols = header.size();
    if (cols < 2) throw std::runtime_error(path + ": distribution needs at least one coordinate");

    std::vector<Vector> atoms;
    Vector weights;
    double sum = 0.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::runtime_error(path + ": row with wrong field count");
        const double w = parse_double(rows[r][0], path);
        Vector atom(cols - 1);
        for (std::size_t c = 1; c < cols; ++c) atom[c - 1] = parse_double(rows[r][c], path);
        weights.push_back(w);
        atoms.push_back(std::move(atom));
        sum += w;
    }
    if (sum < 0.999 || sum > 1.001)
        throw std::runtime_error(path + ": weights sum to " + format_number(sum, 6) +
                                 ", outside [0.999, 1.001]");
    for (double& w : weights) w /= sum;
    return DiscreteDistribution(std::move(atoms), std::move(weights));
}

std::vector<Vector> load_points(const std::string& path) {
    auto rows = tokenize_rows(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    std::size_t start = 0;
    bool drop_weight = false;
    if (!looks_numeric(rows[0][0])) {
        drop_weight = rows[0][0] == "w";
        start = 1;
    }
    if (start >= rows.size()) throw std::runtime_error(path + ": no point rows");
    std::vector<Vector> points;
    for (std::size_t r = start; r < rows.size(); ++r) {
        const std::size_t from = drop_weight ? 1 : 0;
        if (rows[r].size() <= from)
            throw std::runtime_error(path + ": row with no coordinates");
        Vector pt;
        for (std::size_t c = from; c < rows[r].size(); ++c)
            pt.push_back(parse_double(rows[r][c], path));
        points.push_back(std::move(pt));
    }
    return points;
}

std::vector<long> load_counts(const std::string& path) {
    std::vector<long> out;
    for (const auto& row : tokenize_rows(path)) {
        for (const auto& f : row) {
            const double v = parse_double(f, path);
            if (v < 0.0 || v != std::floor(v))
                throw std::runtime_error(path + ": counts must be nonnegative integers");
            out.push_back(static_cast<long>(v));
        }
    }
    if (out.empty()) throw std::runtime_error(path + ": no counts found");
    return out;
}

Matrix load_matrix(const std::string& path) {
    auto rows = tokenize_rows(path);
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    std::size_t start = 0;
    if (!looks_numeric(rows[0][0])) start = 1;  // skip header line
    if (start >= rows.size()) throw std::runtime_error(path + ": no data rows");
    const std::size_t cols = rows[start].size();
    Matrix m(static_cast<int>(rows.size() - start), static_cast<int>(cols));
    for (std::size_t r = start; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::runtime_error(path + ": ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<int>(r - start), static_cast<int>(c)) = parse_double(rows[r][c], path);
    }
    return m;
}

std::string plan_to_csv(const Matrix& coupling) {
    std::ostringstream out;
    out << "i,j,mass\n";
    for (int i = 0; i < coupling.rows(); ++i)
        for (int j = 0; j < coupling.cols(); ++j)
            if (coupling(i, j) != 0.0)
                out << i << ',' << j << ',' << format_number(coupling(i, j)) << '\n';
    return out.str();
}

}  // namespace breg
