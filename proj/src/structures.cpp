#include "uncert/structures.hpp"

#include <cmath>
#include <queue>
#include <utility>

namespace uncert::graphs {

namespace {

Eigen::VectorXi bfs_distances(const Eigen::MatrixXi& adj, int root) {
    const int n = static_cast<int>(adj.rows());
    Eigen::VectorXi dist = Eigen::VectorXi::Constant(n, -1);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v) {
            if (adj(u, v) > 0 && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (dist[v] < 0)
            throw std::invalid_argument("structure: graph is not connected from the root");
    return dist;
}

StructureModel finish(StructureKind kind, Eigen::MatrixXi adj, int root,
                      std::vector<long long> params) {
    StructureModel s;
    s.kind = kind;
    s.vertex_count = static_cast<int>(adj.rows());
    s.root_index = root;
    s.distance = bfs_distances(adj, root);
    s.degree = adj.rowwise().sum();
    s.adjacency = std::move(adj);
    s.parameters = std::move(params);
    return s;
}

void check_cap(double vertex_count, int size_cap, const std::string& what) {
    if (!(vertex_count <= static_cast<double>(size_cap)))
        throw capacity_error(what + ": vertex count exceeds size cap " +
                             std::to_string(size_cap));
}

}  // namespace

std::string kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::cycle_torus: return "cycle_torus";
        case StructureKind::tree_ball: return "tree_ball";
        case StructureKind::path: return "path";
        case StructureKind::lattice_box: return "lattice_box";
        case StructureKind::custom: return "custom";
    }
    return "custom";
}

StructureModel build_cycle_torus(int dims, int side, int size_cap) {
    if (dims < 1) throw std::invalid_argument("build_cycle_torus: dims must be >= 1");
    if (side < 3) throw std::invalid_argument("build_cycle_torus: side must be >= 3");
    check_cap(std::pow(static_cast<double>(side), dims), size_cap, "build_cycle_torus");

    int n = 1;
    for (int d = 0; d < dims; ++d) n *= side;

    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    std::vector<int> coord(dims);
    for (int v = 0; v < n; ++v) {
        int rest = v;
        for (int d = 0; d < dims; ++d) {
            coord[d] = rest % side;
            rest /= side;
        }
        int stride = 1;
        for (int d = 0; d < dims; ++d) {
            const int up = v + ((coord[d] + 1) % side - coord[d]) * stride;
            const int down = v + ((coord[d] + side - 1) % side - coord[d]) * stride;
            adj(v, up) = 1;
            adj(v, down) = 1;
            stride *= side;
        }
    }
    return finish(StructureKind::cycle_torus, std::move(adj), 0, {dims, side});
}

StructureModel build_tree_ball(int branching_degree, int radius, int size_cap) {
    if (branching_degree < 3)
        throw std::invalid_argument("build_tree_ball: branching degree must be >= 3");
    if (radius < 0) throw std::invalid_argument("build_tree_ball: radius must be >= 0");
    const double n = branching_degree;
    const double count =
        1.0 + n * (std::pow(n - 1.0, radius) - 1.0) / (n - 2.0);
    check_cap(count, size_cap, "build_tree_ball");

    const int total = static_cast<int>(std::llround(count));
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(total, total);
    int next = 1;
    std::vector<int> frontier = {0};
    for (int level = 0; level < radius; ++level) {
        std::vector<int> children;
        for (int v : frontier) {
            const int fan = (level == 0) ? branching_degree : branching_degree - 1;
            for (int c = 0; c < fan; ++c) {
                adj(v, next) = 1;
                adj(next, v) = 1;
                children.push_back(next);
                ++next;
            }
        }
        frontier = std::move(children);
    }
    return finish(StructureKind::tree_ball, std::move(adj), 0, {branching_degree, radius});
}

StructureModel build_path(int count, int size_cap) {
    if (count < 1) throw std::invalid_argument("build_path: count must be >= 1");
    check_cap(count, size_cap, "build_path");
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(count, count);
    for (int v = 0; v + 1 < count; ++v) {
        adj(v, v + 1) = 1;
        adj(v + 1, v) = 1;
    }
    return finish(StructureKind::path, std::move(adj), 0, {count});
}

StructureModel build_lattice_box(int dims, int side, int size_cap) {
    if (dims < 1) throw std::invalid_argument("build_lattice_box: dims must be >= 1");
    if (side < 2) throw std::invalid_argument("build_lattice_box: side must be >= 2");
    check_cap(std::pow(static_cast<double>(side), dims), size_cap, "build_lattice_box");

    int n = 1;
    for (int d = 0; d < dims; ++d) n *= side;

    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    std::vector<int> coord(dims);
    for (int v = 0; v < n; ++v) {
        int rest = v;
        for (int d = 0; d < dims; ++d) {
            coord[d] = rest % side;
            rest /= side;
        }
        int stride = 1;
        for (int d = 0; d < dims; ++d) {
            if (coord[d] + 1 < side) {
                adj(v, v + stride) = 1;
                adj(v + stride, v) = 1;
            }
            stride *= side;
        }
    }
    return finish(StructureKind::lattice_box, std::move(adj), 0, {dims, side});
}

StructureModel build_custom(const Eigen::MatrixXi& adjacency, int root, int size_cap) {
    const int n = static_cast<int>(adjacency.rows());
    if (n < 1 || adjacency.cols() != n)
        throw std::invalid_argument("build_custom: adjacency must be square, dim >= 1");
    check_cap(n, size_cap, "build_custom");
    if (root < 0 || root >= n) throw std::invalid_argument("build_custom: root out of range");
    for (int i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0)
            throw std::invalid_argument("build_custom: loops (nonzero diagonal) not supported");
        for (int j = 0; j < n; ++j) {
            if (adjacency(i, j) < 0)
                throw std::invalid_argument("build_custom: adjacency entries must be >= 0");
            if (adjacency(i, j) != adjacency(j, i))
                throw std::invalid_argument("build_custom: adjacency must be symmetric");
        }
    }
    return finish(StructureKind::custom, adjacency, root, {});
}

spectral::SymmetricOperator adjacency_laplacian(const StructureModel& s) {
    Eigen::MatrixXd lap = -s.adjacency.cast<double>();
    for (int v = 0; v < s.vertex_count; ++v) lap(v, v) = static_cast<double>(s.degree[v]);
    return spectral::SymmetricOperator::from_matrix(std::move(lap));
}

spectral::SymmetricOperator transition_laplacian(const StructureModel& s) {
    const int n = s.vertex_count;
    for (int v = 0; v < n; ++v)
        if (s.degree[v] == 0)
            throw std::domain_error("transition_laplacian: isolated vertex " +
                                    std::to_string(v) + " has degree 0");
    const bool homogeneous = (s.degree.maxCoeff() == s.degree.minCoeff());
    Eigen::MatrixXd lap;
    if (homogeneous) {
        lap = Eigen::MatrixXd::Identity(n, n) -
              s.adjacency.cast<double>() / static_cast<double>(s.degree[0]);
    } else {
        Eigen::VectorXd dinv = s.degree.cast<double>().cwiseSqrt().cwiseInverse();
        lap = Eigen::MatrixXd::Identity(n, n) -
              dinv.asDiagonal() * s.adjacency.cast<double>() * dinv.asDiagonal();
    }
    return spectral::SymmetricOperator::from_matrix(std::move(lap));
}

spectral::SymmetricOperator dirichlet_laplacian(const StructureModel& s, int degree) {
    if (degree < s.degree.maxCoeff())
        throw std::invalid_argument("dirichlet_laplacian: degree below the max vertex degree");
    Eigen::MatrixXd lap = -s.adjacency.cast<double>();
    lap.diagonal().array() += static_cast<double>(degree);
    return spectral::SymmetricOperator::from_matrix(std::move(lap));
}

long long ball_volume(const StructureModel& s, double r) {
    long long count = 0;
    for (int v = 0; v < s.vertex_count; ++v)
        if (static_cast<double>(s.distance[v]) < r) ++count;
    return count;
}

double DistanceTransform::operator()(double rho) const {
    switch (kind) {
        case Kind::identity: return rho;
        case Kind::power_shift: return rho * std::pow(1.0 + rho, parameters[0]);
        case Kind::exp_scaled: return std::exp(parameters[0] * rho) - parameters[1];
        case Kind::general: return general_fn(rho);
    }
    return rho;
}

DistanceTransform DistanceTransform::identity() { return DistanceTransform{}; }

DistanceTransform DistanceTransform::power_shift(double sigma) {
    DistanceTransform t;
    t.kind = Kind::power_shift;
    t.parameters = {sigma};
    return t;
}

DistanceTransform DistanceTransform::exp_scaled(double c, double s) {
    if (s != 0.0 && s != 1.0)
        throw std::invalid_argument("DistanceTransform::exp_scaled: shift must be 0 or 1");
    DistanceTransform t;
    t.kind = Kind::exp_scaled;
    t.parameters = {c, s};
    return t;
}

DistanceTransform DistanceTransform::general(std::function<double(double)> fn) {
    DistanceTransform t;
    t.kind = Kind::general;
    t.general_fn = std::move(fn);
    return t;
}

void DistanceTransform::validate(double rho_max) const {
    const int samples = 257;
    double prev = (*this)(0.0);
    if (prev < 0.0)
        throw std::domain_error("DistanceTransform: negative value at rho = 0");
    for (int i = 1; i < samples; ++i) {
        const double rho = rho_max * i / (samples - 1);
        const double val = (*this)(rho);
        if (val < 0.0)
            throw std::domain_error("DistanceTransform: negative value at rho = " +
                                    std::to_string(rho));
        if (val < prev - 1e-12 * std::max(1.0, std::abs(prev)))
            throw std::domain_error("DistanceTransform: not nondecreasing near rho = " +
                                    std::to_string(rho));
        prev = val;
    }
}

spectral::SymmetricOperator distance_operator(const StructureModel& s,
                                              const DistanceTransform& transform) {
    const double rho_max = s.vertex_count ? s.distance.maxCoeff() : 0.0;
    transform.validate(std::max(1.0, rho_max));
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(s.vertex_count, s.vertex_count);
    for (int v = 0; v < s.vertex_count; ++v) {
        const double val = transform(static_cast<double>(s.distance[v]));
        if (val < 0.0)
            throw std::domain_error("distance_operator: transform negative at distance " +
                                    std::to_string(s.distance[v]));
        diag(v, v) = val;
    }
    return spectral::SymmetricOperator::from_matrix(std::move(diag));
}

}  // namespace uncert::graphs
