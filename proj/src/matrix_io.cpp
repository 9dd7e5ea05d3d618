#include "uncert/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace uncert::io {

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

namespace {

// round-trip exact formatting for matrix payloads
std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw io_error("write_matrix_csv: matrix must be square");
    std::ostringstream out;
    out << "dim=" << m.rows() << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << fmt17(m(i, j));
        }
        out << "\n";
    }
    write_text_file(path, out.str());
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string header;
    if (!std::getline(in, header) || header.rfind("dim=", 0) != 0)
        throw io_error("read_matrix_csv: missing dim=N header in " + path);
    const int n = std::stoi(header.substr(4));
    if (n < 1) throw io_error("read_matrix_csv: bad dimension in " + path);
    Eigen::MatrixXd m(n, n);
    std::string line;
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw io_error("read_matrix_csv: truncated file " + path);
        std::istringstream row(line);
        std::string cell;
        for (int j = 0; j < n; ++j) {
            if (!std::getline(row, cell, ','))
                throw io_error("read_matrix_csv: short row in " + path);
            m(i, j) = std::stod(cell);
        }
    }
    return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw io_error("matrix_from_json: expected array of rows");
    const int n = static_cast<int>(j.size());
    Eigen::MatrixXd m(n, static_cast<int>(j[0].size()));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j[i].size()) != m.cols())
            throw io_error("matrix_from_json: ragged rows");
        for (int c = 0; c < m.cols(); ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

nlohmann::ordered_json structure_to_json(const graphs::StructureModel& s) {
    nlohmann::ordered_json doc;
    doc["kind"] = graphs::kind_name(s.kind);
    doc["parameters"] = s.parameters;
    nlohmann::ordered_json triplets = nlohmann::ordered_json::array();
    for (int i = 0; i < s.vertex_count; ++i)
        for (int j = i + 1; j < s.vertex_count; ++j)
            if (s.adjacency(i, j) != 0)
                triplets.push_back({i, j, s.adjacency(i, j)});
    doc["adjacency"] = std::move(triplets);
    doc["root"] = s.root_index;
    std::vector<int> dist(s.distance.data(), s.distance.data() + s.vertex_count);
    doc["distances"] = dist;
    doc["vertex_count"] = s.vertex_count;
    return doc;
}

graphs::StructureModel structure_from_json(const nlohmann::json& j) {
    const int n = j.at("vertex_count").get<int>();
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    for (const auto& t : j.at("adjacency")) {
        const int a = t.at(0).get<int>(), b = t.at(1).get<int>(), v = t.at(2).get<int>();
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw io_error("structure_from_json: triplet index out of range");
        adj(a, b) = v;
        adj(b, a) = v;
    }
    auto s = graphs::build_custom(adj, j.at("root").get<int>(),
                                  std::max(n, graphs::kDefaultSizeCap));
    if (j.contains("distances")) {
        const auto dist = j.at("distances").get<std::vector<int>>();
        if (static_cast<int>(dist.size()) != n)
            throw io_error("structure_from_json: distance vector length mismatch");
        for (int v = 0; v < n; ++v)
            if (dist[v] != s.distance[v])
                throw io_error("structure_from_json: stored distance disagrees with the "
                               "graph distance at vertex " + std::to_string(v));
    }
    return s;
}

}  // namespace uncert::io
