// structures.hpp - builders for the discrete structures: cycle tori,
// homogeneous-tree balls, paths, lattice boxes and user graphs, with root
// distances, difference Laplacians Delta_A = D - A and Delta_P = I - P,
// diagonal distance multipliers and strict ball volumes.

#pragma once

#include "uncert/speccore.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uncert {

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace graphs {

inline constexpr int kDefaultSizeCap = 4096;

enum class StructureKind { cycle_torus, tree_ball, path, lattice_box, custom };

std::string kind_name(StructureKind k);

struct StructureModel {
    StructureKind kind = StructureKind::custom;
    int vertex_count = 0;
    Eigen::MatrixXi adjacency;  // symmetric, nonnegative, zero diagonal
    int root_index = 0;
    Eigen::VectorXi distance;   // graph distance from the root
    Eigen::VectorXi degree;     // row sums of the adjacency
    std::vector<long long> parameters;  // builder parameters, for serialization
};

StructureModel build_cycle_torus(int dims, int side, int size_cap = kDefaultSizeCap);
StructureModel build_tree_ball(int branching_degree, int radius, int size_cap = kDefaultSizeCap);
StructureModel build_path(int count, int size_cap = kDefaultSizeCap);
StructureModel build_lattice_box(int dims, int side, int size_cap = kDefaultSizeCap);
// Adjacency must be symmetric, nonnegative, zero-diagonal and connected.
StructureModel build_custom(const Eigen::MatrixXi& adjacency, int root,
                            int size_cap = kDefaultSizeCap);

// Delta_A = D - A.
spectral::SymmetricOperator adjacency_laplacian(const StructureModel& s);
// I - A/deg(G) for homogeneous structures, I - D^{-1/2} A D^{-1/2} otherwise.
spectral::SymmetricOperator transition_laplacian(const StructureModel& s);
// degree * I - A: the homogeneous-graph Laplacian compressed to functions
// supported on this finite piece (keeps the infinite structure's spectral
// gap; used for tree balls, where D - A reaches eigenvalue 0).
spectral::SymmetricOperator dirichlet_laplacian(const StructureModel& s, int degree);

// Count of vertices with distance < r (strict).
long long ball_volume(const StructureModel& s, double r);

// Nondecreasing nonnegative reparametrizations of the root distance.
struct DistanceTransform {
    enum class Kind { identity, power_shift, exp_scaled, general };
    Kind kind = Kind::identity;
    std::vector<double> parameters;
    std::function<double(double)> general_fn;

    double operator()(double rho) const;

    static DistanceTransform identity();
    // rho * (1 + rho)^sigma
    static DistanceTransform power_shift(double sigma);
    // e^{c rho} - s with s in {0, 1}
    static DistanceTransform exp_scaled(double c, double s);
    static DistanceTransform general(std::function<double(double)> fn);

    // Sampled monotonicity/nonnegativity check on [0, rho_max].
    void validate(double rho_max) const;
};

// diag(transform(distance[v])).
spectral::SymmetricOperator distance_operator(const StructureModel& s,
                                              const DistanceTransform& transform);

}  // namespace graphs
}  // namespace uncert
