// matrix_io.hpp - dense matrix CSV ("dim=N" header row) and JSON array
// formats, structure JSON documents, and 15-significant-digit formatting.

#pragma once

#include "uncert/structures.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace uncert {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

std::string fmt15(double x);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

// {kind, parameters, adjacency (sparse triplets i<j), root, distances}
nlohmann::ordered_json structure_to_json(const graphs::StructureModel& s);
graphs::StructureModel structure_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace io
}  // namespace uncert
