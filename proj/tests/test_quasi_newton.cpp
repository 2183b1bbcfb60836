#include <catch2/catch_amalgamated.hpp>

#include "nsolab/quasi_newton.hpp"
#include "testing_util.hpp"

using namespace nsolab;
using namespace nsolab::testing;

TEST_CASE("bfgs_update fixes the identity when s = y = e1", "[quasi_newton]") {
    const Index n = 4;
    Vector e1 = Vector::Zero(n);
    e1[0] = 1.0;
    Matrix H = bfgs_update(Matrix::Identity(n, n), CurvaturePair::from(e1, e1));
    CHECK((H - Matrix::Identity(n, n)).norm() < 1e-15);
}

TEST_CASE("bfgs_update satisfies the secant equation", "[quasi_newton]") {
    auto rng = make_rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Index n = 6;
        Matrix H = random_spd(n, rng);
        CurvaturePair pair = random_pair(n, rng);
        Matrix Hn = bfgs_update(H, pair);
        CHECK((Hn * pair.y - pair.s).norm() <= 1e-12 * std::max(1.0, pair.s.norm()));
        CHECK((Hn - Hn.transpose()).norm() <= 1e-13 * Hn.norm());
    }
}

TEST_CASE("bfgs_update matches the brute-force three-term product", "[quasi_newton]") {
    auto rng = make_rng(12);
    for (int rep = 0; rep < 50; ++rep) {
        const Index n = 5;
        Matrix H = random_spd(n, rng);
        CurvaturePair pair = random_pair(n, rng);
        Matrix got = bfgs_update(H, pair);
        Matrix want = naive_bfgs_update(H, pair.s, pair.y);
        CHECK((got - want).norm() <= 1e-13 * want.norm());
    }
}

TEST_CASE("bfgs_update rejects non-positive curvature", "[quasi_newton]") {
    Vector s = Vector::Ones(3);
    Vector y = -s;
    CHECK_THROWS_AS(CurvaturePair::from(s, y), std::invalid_argument);
    CHECK_THROWS_AS(bfgs_update(Matrix::Identity(3, 3), CurvaturePair{s, y, -1.0}),
                    std::invalid_argument);
}

TEST_CASE("two_loop_direction with empty memory is steepest descent", "[quasi_newton]") {
    MemoryBuffer mem(3);
    Vector g = Vector::LinSpaced(5, 1.0, 5.0);
    CHECK((two_loop_direction(mem, g, false) + g).norm() == 0.0);
    CHECK((two_loop_direction(mem, g, true) + g).norm() == 0.0);
}

TEST_CASE("scaling is a no-op when s = y", "[quasi_newton]") {
    auto rng = make_rng(13);
    MemoryBuffer mem(1);
    Vector s = standard_normal_vector(4, rng);
    mem.push(CurvaturePair::from(s, s));
    Vector g = standard_normal_vector(4, rng);
    Vector scaled = two_loop_direction(mem, g, true);
    Vector unscaled = two_loop_direction(mem, g, false);
    CHECK((scaled - unscaled).norm() <= 1e-14 * unscaled.norm());
}

TEST_CASE("two_loop_direction equals the explicit update product", "[quasi_newton]") {
    auto rng = make_rng(14);
    for (bool scaled : {false, true}) {
        MemoryBuffer mem(3);
        for (int i = 0; i < 3; ++i) mem.push(random_pair(6, rng));
        Vector g = standard_normal_vector(6, rng);
        Vector got = two_loop_direction(mem, g, scaled);
        Vector want = -(explicit_inverse_hessian(mem, 6, scaled) * g);
        CHECK(rel_vec_err(got, want) <= 1e-12);
    }
}

TEST_CASE("memory buffer evicts oldest first", "[quasi_newton]") {
    auto rng = make_rng(15);
    MemoryBuffer mem(2);
    CurvaturePair a = random_pair(3, rng);
    CurvaturePair b = random_pair(3, rng);
    CurvaturePair c = random_pair(3, rng);
    mem.push(a);
    mem.push(b);
    mem.push(c);
    REQUIRE(mem.size() == 2);
    CHECK((mem[0].s - b.s).norm() == 0.0);
    CHECK((mem[1].s - c.s).norm() == 0.0);
}
