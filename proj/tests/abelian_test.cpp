#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuntz/abelian.hpp"

#include <random>

using namespace cuntz;

namespace {

Int absInt(const Int& x) { return x < 0 ? Int(-x) : x; }

void checkSmithContract(const IntMatrix& m) {
    SmithForm s = smithNormalForm(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(absInt(determinant(s.U)) == 1);
    CHECK(absInt(determinant(s.V)) == 1);
    for (std::size_t i = 0; i + 1 < std::min(m.rows(), m.cols()); ++i) {
        CHECK(s.diag(i) >= 0);
        if (s.diag(i + 1) != 0) {
            REQUIRE(s.diag(i) != 0);
            CHECK(s.diag(i + 1) % s.diag(i) == 0);
        }
    }
}

IntMatrix randomMatrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
    return m;
}

// Random unimodular matrix as a short product of elementary row operations.
IntMatrix randomUnimodular(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    IntMatrix u = IntMatrix::identity(n);
    for (int step = 0; step < 12; ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Int c = coef(rng);
        for (std::size_t k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
    }
    return u;
}

}  // namespace

TEST_CASE("smith normal form of [[2,4],[6,8]]") {
    IntMatrix m{{2, 4}, {6, 8}};
    SmithForm s = smithNormalForm(m);
    CHECK(s.rank == 2);
    CHECK(s.diag(0) == 2);
    CHECK(s.diag(1) == 4);
    checkSmithContract(m);
}

TEST_CASE("smith normal form of the zero matrix") {
    IntMatrix m = IntMatrix::zero(3, 2);
    SmithForm s = smithNormalForm(m);
    CHECK(s.rank == 0);
    CHECK(s.D.isZero());
    CHECK(s.U == IntMatrix::identity(3));
    CHECK(s.V == IntMatrix::identity(2));
}

TEST_CASE("smith normal form of a 1x3 row with unit gcd") {
    IntMatrix m{{1, -1, 0}};
    SmithForm s = smithNormalForm(m);
    CHECK(s.rank == 1);
    CHECK(s.diag(0) == 1);
    checkSmithContract(m);
}

TEST_CASE("smith normal form contract on random matrices") {
    std::mt19937 rng(20260826);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
        checkSmithContract(randomMatrix(rng, r, c, 9));
    }
}

TEST_CASE("smith normal form is deterministic") {
    IntMatrix m{{6, 4, 2}, {4, 8, 10}};
    SmithForm a = smithNormalForm(m);
    SmithForm b = smithNormalForm(m);
    CHECK(a.U == b.U);
    CHECK(a.D == b.D);
    CHECK(a.V == b.V);
}

TEST_CASE("linear solve and kernel basis") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto sol = solveLinear(a, IntVec{Int(2), Int(0)});
    REQUIRE(sol.has_value());
    CHECK((a * *sol) == IntVec{Int(2), Int(0)});
    CHECK_FALSE(solveLinear(a, IntVec{Int(1), Int(0)}).has_value());

    IntMatrix d0{{1, -1, 0}};
    IntMatrix k = kernelBasis(d0);
    CHECK(k.cols() == 2);
    CHECK((d0 * k).isZero());
}

TEST_CASE("group normal forms and element equality") {
    auto z6 = FgAbGroup::cyclicProduct({Int(6)});
    CHECK(z6->invariantFactors() == std::vector<Int>{Int(6)});
    CHECK(z6->freeRank() == 0);
    CHECK(z6->order() == 6);
    CHECK(z6->elementsEqual(IntVec{Int(7)}, IntVec{Int(1)}));
    CHECK_FALSE(z6->elementsEqual(IntVec{Int(2)}, IntVec{Int(1)}));

    // Z_2 x Z_3 = Z_6 after invariant-factor normalization.
    auto z2z3 = FgAbGroup::cyclicProduct({Int(2), Int(3)});
    CHECK(z2z3->isomorphicTo(*z6));

    auto free2 = FgAbGroup::freeGroup(2);
    CHECK(free2->freeRank() == 2);
    CHECK(free2->invariantFactors().empty());
    CHECK(free2->normalFormString() == "Z^2");
}

TEST_CASE("presentation invariance under unimodular relation changes") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix rel = randomMatrix(rng, 3, 4, 6);
        auto g = FgAbGroup::make(4, rel);
        IntMatrix u = randomUnimodular(rng, 3);
        auto h = FgAbGroup::make(4, u * rel);
        CHECK(g->isomorphicTo(*h));
    }
}

TEST_CASE("kernel of the connecting row (1,-1,0) is free of rank 2") {
    auto z3 = FgAbGroup::freeGroup(3);
    auto z = FgAbGroup::freeGroup(1);
    GroupHom d0(z3, z, IntMatrix{{1, -1, 0}});
    auto [ker, incl] = kernel(d0);
    CHECK(ker->freeRank() == 2);
    CHECK(ker->invariantFactors().empty());
    // inclusion lands in the kernel and the composite is zero
    CHECK(compose(d0, incl).isZeroMap());
    // exactness on a witness: (1,1,0) is in the image of the inclusion
    CHECK(inImage(incl, IntVec{Int(1), Int(1), Int(0)}));
    CHECK_FALSE(inImage(incl, IntVec{Int(1), Int(0), Int(0)}));
}

TEST_CASE("kernel corner cases") {
    auto z6 = FgAbGroup::cyclicProduct({Int(6)});
    auto [kid, inclId] = kernel(GroupHom::identity(z6));
    CHECK(kid->isTrivial());

    auto z4 = FgAbGroup::cyclicProduct({Int(4)});
    auto [k2, incl2] = kernel(GroupHom::multiplication(z4, 2));
    CHECK(k2->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2)})));
    // its nonzero element maps to 2 in Z_4
    auto elems = k2->elements();
    REQUIRE(elems.size() == 2);
    bool sawTwo = false;
    for (const auto& e : elems)
        if (z4->elementsEqual(incl2.apply(e), IntVec{Int(2)})) sawTwo = true;
    CHECK(sawTwo);
}

TEST_CASE("cokernel examples") {
    auto z3 = FgAbGroup::freeGroup(3);
    auto z = FgAbGroup::freeGroup(1);
    GroupHom d0(z3, z, IntMatrix{{1, -1, 0}});
    CHECK(cokernel(d0).group->isTrivial());

    auto [czero, pzero] = cokernel(GroupHom::zero(z, z));
    CHECK(czero->freeRank() == 1);
    CHECK(pzero.isSurjective());

    auto c6 = cokernel(GroupHom::multiplication(z, 6)).group;
    CHECK(c6->isomorphicTo(*FgAbGroup::cyclicProduct({Int(6)})));
}

TEST_CASE("tensor with Z_n") {
    auto g = FgAbGroup::cyclicProduct({Int(4)}, 1);  // Z + Z_4
    auto t = tensorZn(g, 2);
    CHECK(t->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2), Int(2)})));

    CHECK(tensorZn(FgAbGroup::cyclicProduct({Int(3)}), 2)->isTrivial());
    CHECK(tensorZn(FgAbGroup::trivial(), 5)->isTrivial());
    CHECK_THROWS_AS(tensorZn(g, 1), BadModulus);

    GroupHom red = tensorReduction(g, t);
    CHECK(red.wellDefined());
    CHECK(red.isSurjective());
}

TEST_CASE("n-torsion subgroups") {
    auto z4 = FgAbGroup::cyclicProduct({Int(4)});
    auto tor = torZn(z4, 6);
    CHECK(tor.group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2)})));
    CHECK(tor.map.isInjective());

    CHECK(torZn(FgAbGroup::freeGroup(1), 7).group->isTrivial());

    auto g = FgAbGroup::cyclicProduct({Int(2), Int(8)});
    CHECK(torZn(g, 4).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2), Int(4)})));
}

TEST_CASE("hom composition, equality, image membership") {
    auto z = FgAbGroup::freeGroup(1);
    GroupHom two = GroupHom::multiplication(z, 2);
    GroupHom three = GroupHom::multiplication(z, 3);
    CHECK(compose(two, three).equalTo(GroupHom::multiplication(z, 6)));

    auto z2f = FgAbGroup::freeGroup(2);
    GroupHom diag(z2f, z2f, IntMatrix{{2, 0}, {0, 3}});
    CHECK(inImage(diag, IntVec{Int(2), Int(0)}));
    CHECK_FALSE(inImage(diag, IntVec{Int(1), Int(0)}));

    // equality is modulo target relations: x -> 5x equals x -> -x on Z_6
    auto z6 = FgAbGroup::cyclicProduct({Int(6)});
    GroupHom five = GroupHom::multiplication(z6, 5);
    GroupHom minusOne = GroupHom::multiplication(z6, -1);
    CHECK(five.equalTo(minusOne));
}

TEST_CASE("well-definedness detection") {
    auto z4 = FgAbGroup::cyclicProduct({Int(4)});
    auto z3 = FgAbGroup::cyclicProduct({Int(3)});
    GroupHom bad(z4, z3, IntMatrix{{1}});  // 4*1 = 4 is not 0 mod 3
    CHECK_FALSE(bad.wellDefined());
    CHECK_THROWS_AS(bad.requireWellDefined(), IllFormedHom);
    GroupHom good(z4, FgAbGroup::cyclicProduct({Int(2)}), IntMatrix{{1}});
    CHECK(good.wellDefined());
}

TEST_CASE("induced map on torsion subgroups commutes with inclusions") {
    auto z4 = FgAbGroup::cyclicProduct({Int(4)});
    auto z8 = FgAbGroup::cyclicProduct({Int(8)});
    GroupHom f(z4, z8, IntMatrix{{2}});  // x -> 2x, well-defined since 4*2=8
    REQUIRE(f.wellDefined());
    auto torSrc = torZn(z4, 2);
    auto torDst = torZn(z8, 2);
    GroupHom restricted = inducedOnSubgroup(f, torSrc, torDst);
    CHECK(compose(torDst.map, restricted).equalTo(compose(f, torSrc.map)));
}

TEST_CASE("grothendieck groups of presented monoids") {
    // Z as a monoid: generators 1 and -1 with relation g0 + g1 = 0.
    auto grZ = grothendieckOfPresentation(2, IntMatrix{{1, 1}});
    CHECK(grZ.group->freeRank() == 1);
    CHECK(grZ.group->invariantFactors().empty());

    // N: one generator, no relations.
    auto grN = grothendieckOfPresentation(1, IntMatrix(0, 1));
    CHECK(grN.group->freeRank() == 1);

    // N u {inf}: generators 1 and inf; inf+inf = inf gives relation inf = 0,
    // and 1+inf = inf gives 1 = 0.
    auto grNInf = grothendieckOfPresentation(2, IntMatrix{{0, 1}, {1, 0}});
    CHECK(grNInf.group->isTrivial());
}

TEST_CASE("grothendieck universal property against maps into small cyclic groups") {
    // Monoid presentation with generators a, b and relation 2a = b (written
    // additively as 2a - b = 0 in the group completion).
    auto gr = grothendieckOfPresentation(2, IntMatrix{{2, -1}});
    CHECK(gr.group->freeRank() == 1);
    for (int k = 2; k <= 12; ++k) {
        auto zk = FgAbGroup::cyclicProduct({Int(k)});
        // every assignment of generators satisfying the relation in Z_k must
        // factor through the completion
        for (int a = 0; a < k; ++a) {
            IntVec imgA{Int(a)}, imgB{Int(2 * a)};
            IntMatrix m(1, 2);
            m.at(0, 0) = imgA[0];
            m.at(0, 1) = imgB[0];
            GroupHom factor(gr.group, zk, m);
            CHECK(factor.wellDefined());
        }
    }
}
