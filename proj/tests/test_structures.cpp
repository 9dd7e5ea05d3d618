#include "uncert/structures.hpp"

#include "uncert/matrix_io.hpp"
#include "uncert/speccore.hpp"
#include "uncert/uncertainty.hpp"

#include <doctest.h>

#include <cmath>

using namespace uncert;
using graphs::StructureModel;

TEST_SUITE("structures") {

TEST_CASE("4-cycle layout") {
    auto s = graphs::build_cycle_torus(1, 4);
    CHECK(s.vertex_count == 4);
    for (int v = 0; v < 4; ++v) CHECK(s.degree[v] == 2);
    CHECK(s.distance[0] == 0);
    CHECK(s.distance[1] == 1);
    CHECK(s.distance[2] == 2);
    CHECK(s.distance[3] == 1);
}

TEST_CASE("triangle is complete") {
    auto s = graphs::build_cycle_torus(1, 3);
    Eigen::MatrixXi expected = Eigen::MatrixXi::Ones(3, 3);
    expected.diagonal().setZero();
    CHECK((s.adjacency - expected).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("3x3 torus is 4-regular with formula distances") {
    auto s = graphs::build_cycle_torus(2, 3);
    CHECK(s.vertex_count == 9);
    for (int v = 0; v < 9; ++v) CHECK(s.degree[v] == 4);
    for (int v = 0; v < 9; ++v) {
        const int x = v % 3, y = v / 3;
        const int expected = std::min(x, 3 - x) + std::min(y, 3 - y);
        CHECK(s.distance[v] == expected);
    }
}

TEST_CASE("torus distances match the closed form for larger sides") {
    auto s = graphs::build_cycle_torus(2, 5);
    for (int v = 0; v < s.vertex_count; ++v) {
        const int x = v % 5, y = v / 5;
        CHECK(s.distance[v] == std::min(x, 5 - x) + std::min(y, 5 - y));
    }
}

TEST_CASE("tree balls") {
    auto single = graphs::build_tree_ball(3, 0);
    CHECK(single.vertex_count == 1);
    auto star = graphs::build_tree_ball(3, 1);
    CHECK(star.vertex_count == 4);
    CHECK(star.degree[0] == 3);
    for (int v = 1; v < 4; ++v) CHECK(star.degree[v] == 1);
    auto ball3 = graphs::build_tree_ball(3, 3);
    CHECK(ball3.vertex_count == 22);  // 1 + 3 + 6 + 12
    for (int v = 0; v < 22; ++v)
        CHECK((ball3.degree[v] == 3 || ball3.degree[v] == 1));
}

TEST_CASE("capacity errors") {
    CHECK_THROWS_AS(graphs::build_cycle_torus(3, 64, 4096), capacity_error);
    CHECK_THROWS_AS(graphs::build_tree_ball(3, 14, 4096), capacity_error);
}

TEST_CASE("adjacency laplacian spectra") {
    auto cyc = graphs::build_cycle_torus(1, 4);
    auto dec = spectral::eigendecompose(graphs::adjacency_laplacian(cyc));
    // 2 - 2 cos(2 pi k / 4) = 0, 2, 2, 4
    CHECK(dec.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dec.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(dec.eigenvalues[2] == doctest::Approx(2.0));
    CHECK(dec.eigenvalues[3] == doctest::Approx(4.0));

    auto tri = graphs::build_cycle_torus(1, 3);
    auto tdec = spectral::eigendecompose(graphs::adjacency_laplacian(tri));
    CHECK(tdec.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tdec.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(tdec.eigenvalues[2] == doctest::Approx(3.0));

    auto one = graphs::build_tree_ball(3, 0);
    CHECK(graphs::adjacency_laplacian(one).entries(0, 0) == 0.0);
}

TEST_CASE("laplacian quadratic form equals the edge sum") {
    auto s = graphs::build_tree_ball(3, 2);
    auto lap = graphs::adjacency_laplacian(s);
    verify::GaussianStream gs(5);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd f = gs.vector(s.vertex_count);
        double edges = 0.0;
        for (int u = 0; u < s.vertex_count; ++u)
            for (int v = u + 1; v < s.vertex_count; ++v)
                if (s.adjacency(u, v)) edges += s.adjacency(u, v) * std::pow(f[u] - f[v], 2);
        CHECK(f.dot(lap.entries * f) == doctest::Approx(edges).epsilon(1e-10));
        CHECK(edges >= 0.0);
    }
}

TEST_CASE("homogeneous proportionality Delta_A = deg * Delta_P") {
    auto s = graphs::build_cycle_torus(1, 8);
    auto la = graphs::adjacency_laplacian(s);
    auto lp = graphs::transition_laplacian(s);
    CHECK((la.entries - 2.0 * lp.entries).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("transition laplacian rejects isolated vertices") {
    auto one = graphs::build_tree_ball(3, 0);  // single vertex, degree 0
    CHECK_THROWS_AS(graphs::transition_laplacian(one), std::domain_error);
}

TEST_CASE("non-constant degrees get the symmetrized transition laplacian") {
    auto ball = graphs::build_tree_ball(3, 2);  // degrees 3 and 1
    auto lp = graphs::transition_laplacian(ball);
    auto dec = spectral::eigendecompose(lp);
    CHECK(dec.eigenvalues[0] >= -1e-9 * dec.source_norm);
    // I - D^{-1/2} A D^{-1/2}: unit diagonal, kernel spanned by D^{1/2} 1
    for (int v = 0; v < ball.vertex_count; ++v) CHECK(lp.entries(v, v) == 1.0);
    Eigen::VectorXd sqrt_deg = ball.degree.cast<double>().cwiseSqrt().normalized();
    CHECK((lp.entries * sqrt_deg).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("connected structures have a simple kernel of constants") {
    for (const auto& s : {graphs::build_cycle_torus(1, 6), graphs::build_tree_ball(3, 2),
                          graphs::build_lattice_box(2, 3)}) {
        auto dec = spectral::eigendecompose(graphs::adjacency_laplacian(s));
        CHECK(dec.kernel_dim() == 1);
        const auto kernel = dec.eigenvectors.col(0);
        CHECK((kernel.array() - kernel[0]).abs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("dirichlet laplacian keeps the tree gap") {
    auto ball = graphs::build_tree_ball(3, 4);
    auto dec = spectral::eigendecompose(graphs::dirichlet_laplacian(ball, 3));
    const double b = 3.0 - 2.0 * std::sqrt(2.0);
    CHECK(dec.eigenvalues[0] > b);
}

TEST_CASE("distance operator with the identity transform") {
    auto s = graphs::build_cycle_torus(1, 4);
    auto op = graphs::distance_operator(s, graphs::DistanceTransform::identity());
    Eigen::VectorXd expected(4);
    expected << 0, 1, 2, 1;
    CHECK((op.entries.diagonal() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("distance transform values from the applications") {
    // e^{(log 2 / 3) * 3} = 2
    auto exp_t = graphs::DistanceTransform::exp_scaled(std::log(2.0) / 3.0, 0.0);
    CHECK(exp_t(3.0) == doctest::Approx(2.0));
    // 3 (1 + 3)^{1/2} = 6
    auto pow_t = graphs::DistanceTransform::power_shift(0.5);
    CHECK(pow_t(3.0) == doctest::Approx(6.0));
    // e^{c rho} - 1 vanishes at the root
    auto shifted = graphs::DistanceTransform::exp_scaled(0.7, 1.0);
    CHECK(shifted(0.0) == doctest::Approx(0.0));
}

TEST_CASE("decreasing transform rejected") {
    auto bad = graphs::DistanceTransform::general([](double rho) { return 1.0 / (1.0 + rho); });
    auto s = graphs::build_cycle_torus(1, 4);
    CHECK_THROWS_AS(graphs::distance_operator(s, bad), std::domain_error);
}

TEST_CASE("ball volume is strict") {
    auto tree = graphs::build_tree_ball(3, 3);
    CHECK(graphs::ball_volume(tree, 0.0) == 0);
    CHECK(graphs::ball_volume(tree, 0.5) == 1);
    CHECK(graphs::ball_volume(tree, 2.5) == 10);  // 1 + 3 + 6
    CHECK(graphs::ball_volume(tree, 1.0) == 1);   // distance 1 not counted at r = 1
}

TEST_CASE("torus ball volumes match the free lattice below half the side") {
    auto s = graphs::build_cycle_torus(2, 9);
    for (double r : {0.5, 1.5, 2.5, 3.5, 4.4}) {
        long long free_count = 0;
        for (int x = -8; x <= 8; ++x)
            for (int y = -8; y <= 8; ++y)
                if (std::abs(x) + std::abs(y) < r) ++free_count;
        CHECK(graphs::ball_volume(s, r) == free_count);
    }
}

TEST_CASE("tree volume matches the closed form") {
    for (int n : {3, 4, 5}) {
        for (int radius = 0; radius <= 3; ++radius) {
            auto ball = graphs::build_tree_ball(n, radius);
            const double closed =
                1.0 + n * (std::pow(n - 1.0, radius) - 1.0) / (n - 2.0);
            CHECK(ball.vertex_count == doctest::Approx(closed));
        }
    }
}

TEST_CASE("adjacent distances differ by at most one") {
    for (const auto& s : {graphs::build_cycle_torus(2, 4), graphs::build_tree_ball(3, 3),
                          graphs::build_lattice_box(1, 7)}) {
        for (int u = 0; u < s.vertex_count; ++u)
            for (int v = 0; v < s.vertex_count; ++v)
                if (s.adjacency(u, v)) CHECK(std::abs(s.distance[u] - s.distance[v]) <= 1);
    }
}

TEST_CASE("custom structures validate") {
    Eigen::MatrixXi disconnected = Eigen::MatrixXi::Zero(4, 4);
    disconnected(0, 1) = disconnected(1, 0) = 1;
    CHECK_THROWS_AS(graphs::build_custom(disconnected, 0), std::invalid_argument);

    Eigen::MatrixXi loop = Eigen::MatrixXi::Zero(2, 2);
    loop(0, 0) = 1;
    loop(0, 1) = loop(1, 0) = 1;
    CHECK_THROWS_AS(graphs::build_custom(loop, 0), std::invalid_argument);
}

TEST_CASE("structure JSON round trip") {
    auto s = graphs::build_tree_ball(3, 2);
    auto doc = io::structure_to_json(s);
    auto back = io::structure_from_json(doc);
    CHECK(back.vertex_count == s.vertex_count);
    CHECK((back.adjacency - s.adjacency).cwiseAbs().maxCoeff() == 0);
    CHECK((back.distance - s.distance).cwiseAbs().maxCoeff() == 0);
    CHECK(back.root_index == s.root_index);
}

}  // TEST_SUITE
