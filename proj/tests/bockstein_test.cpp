#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuntz/bockstein.hpp"

#include <random>

using namespace cuntz;

namespace {

GroupPtr randomGroup(std::mt19937& rng) {
    std::uniform_int_distribution<int> nTor(0, 2), factor(2, 12), nFree(0, 2);
    std::vector<Int> orders;
    for (int k = nTor(rng); k > 0; --k) orders.push_back(factor(rng));
    return FgAbGroup::cyclicProduct(orders, nFree(rng));
}

}  // namespace

TEST_CASE("coefficient groups of (Z, 0) at n=2") {
    auto t = buildTotalK(FgAbGroup::freeGroup(1), FgAbGroup::trivial(), {Int(2)});
    CHECK(t.at(0, 2).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2)})));
    CHECK(t.at(1, 2).group->isTrivial());
    CHECK(t.at(0, 2).beta.isZeroMap());
    CHECK(checkSixTerm(t, 2).pass);
}

TEST_CASE("coefficient groups of (Z, Z_2) at n=2") {
    auto t = buildTotalK(FgAbGroup::freeGroup(1), FgAbGroup::cyclicProduct({Int(2)}),
                         {Int(2)});
    CHECK(t.at(0, 2).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2), Int(2)})));
    CHECK(t.at(1, 2).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(2)})));
    CHECK_FALSE(t.at(0, 2).beta.isZeroMap());
    CHECK(checkSixTerm(t, 2).pass);
}

TEST_CASE("coefficient groups of (Z^2, 0) at n=3") {
    auto t = buildTotalK(FgAbGroup::freeGroup(2), FgAbGroup::trivial(), {Int(3)});
    CHECK(t.at(0, 3).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(3), Int(3)})));
    CHECK(t.at(1, 3).group->isTrivial());
    CHECK(checkSixTerm(t, 3).pass);
}

TEST_CASE("coefficient groups of (Z, Z) at n=5") {
    auto t = buildTotalK(FgAbGroup::freeGroup(1), FgAbGroup::freeGroup(1), {Int(5)});
    CHECK(t.at(0, 5).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(5)})));
    CHECK(t.at(1, 5).group->isomorphicTo(*FgAbGroup::cyclicProduct({Int(5)})));
    CHECK(checkSixTerm(t, 5).pass);
}

TEST_CASE("six-term check fails when beta is zeroed out") {
    auto z2 = FgAbGroup::cyclicProduct({Int(2)});
    auto t = buildTotalK(z2, z2, {Int(2)});
    REQUIRE(checkSixTerm(t, 2).pass);
    for (int i = 0; i < 2; ++i) {
        ModSlot broken = t.at(i, 2);
        auto zeroBeta = GroupHom::zero(broken.group, t.k[(i + 1) % 2]);
        ModSlot replacement(broken.group, broken.tensorPart, broken.torPart, broken.rho,
                            zeroBeta);
        TotalK bad = t;
        bad.slot[i].erase(Int(2));
        bad.slot[i].emplace(Int(2), replacement);
        auto report = checkSixTerm(bad, 2);
        CHECK_FALSE(report.pass);
        CHECK(report.failure.find("K(;Z_n)") != std::string::npos);
    }
}

TEST_CASE("six-term exactness on random groups") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> modulus(2, 12);
    for (int trial = 0; trial < 200; ++trial) {
        std::set<Int> support{Int(modulus(rng))};
        auto t = buildTotalK(randomGroup(rng), randomGroup(rng), support);
        for (const Int& n : support) {
            auto report = checkSixTerm(t, n);
            CHECK_MESSAGE(report.pass, report.failure);
        }
    }
}

TEST_CASE("kappa sequence exactness and beta factorization") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 30; ++trial) {
        std::set<Int> support{Int(2), Int(3), Int(4), Int(6), Int(8), Int(12)};
        auto t = buildTotalK(randomGroup(rng), randomGroup(rng), support);
        auto report = checkKappaSequence(t);
        CHECK_MESSAGE(report.pass, report.failure);
    }
}

TEST_CASE("identity lambda hom is linear") {
    auto t = buildTotalK(FgAbGroup::cyclicProduct({Int(4)}, 1),
                         FgAbGroup::cyclicProduct({Int(6)}), {Int(2), Int(3), Int(6)});
    CHECK(checkLambdaLinear(identityLambdaHom(t)).pass);
}

TEST_CASE("induced lambda hom examples") {
    auto z = FgAbGroup::freeGroup(1);
    auto triv = FgAbGroup::trivial();
    auto src = buildTotalK(z, triv, {Int(2)});
    auto dst = buildTotalK(z, triv, {Int(2)});

    // identity components induce the identity
    auto idHom = inducedLambdaHom(GroupHom::identity(z), GroupHom::identity(triv), src, dst);
    CHECK(lambdaHomsEqual(idHom, identityLambdaHom(src)));

    // x2 on K_0 dies after tensoring with Z_2
    auto twoHom =
        inducedLambdaHom(GroupHom::multiplication(z, 2), GroupHom::identity(triv), src, dst);
    CHECK(twoHom.mod(0, 2).isZeroMap());
    CHECK(checkLambdaLinear(twoHom).pass);
}

TEST_CASE("induced hom acts summandwise on the torsion part") {
    auto z2 = FgAbGroup::cyclicProduct({Int(2)});
    auto triv = FgAbGroup::trivial();
    // K_0 = 0, K_1 = Z_2: the K_0(;Z_2) slot is pure Tor
    auto src = buildTotalK(triv, z2, {Int(2)});
    auto dst = buildTotalK(triv, z2, {Int(2)});
    auto h = inducedLambdaHom(GroupHom::zero(triv, triv), GroupHom::identity(z2), src, dst);
    // K_0(;Z_2) = 0 + Tor(K_1, Z_2) is carried entirely by f1
    CHECK_FALSE(h.mod(0, 2).isZeroMap());
    CHECK(checkLambdaLinear(h).pass);
}

TEST_CASE("lambda-linearity fails when the coefficient summands are swapped") {
    auto z2 = FgAbGroup::cyclicProduct({Int(2)});
    auto t = buildTotalK(z2, z2, {Int(2)});
    LambdaHom h = identityLambdaHom(t);
    // swap the two Z_2 summands of K_0(;Z_2)
    const auto& slot = t.at(0, 2);
    REQUIRE(slot.group->numGenerators() == 2);
    IntMatrix swap{{0, 1}, {1, 0}};
    h.fMod[0].erase(Int(2));
    h.fMod[0].emplace(Int(2), GroupHom(slot.group, slot.group, swap));
    auto report = checkLambdaLinear(h);
    CHECK_FALSE(report.pass);
    CHECK(report.failure.find("rho square") != std::string::npos);
}

TEST_CASE("induced lambda hom is functorial under composition") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = randomGroup(rng);
        auto b = randomGroup(rng);
        std::set<Int> support{Int(2), Int(4)};
        auto ta = buildTotalK(a, b, support);
        auto tb = buildTotalK(a, b, support);
        auto tc = buildTotalK(a, b, support);
        auto randomEndo = [&](const GroupPtr& g) {
            // scalar endomorphisms are always well-defined
            return GroupHom::multiplication(g, entry(rng));
        };
        GroupHom f0 = randomEndo(a), f1 = randomEndo(b);
        GroupHom g0 = randomEndo(a), g1 = randomEndo(b);
        auto hf = inducedLambdaHom(f0, f1, ta, tb);
        auto hg = inducedLambdaHom(g0, g1, tb, tc);
        auto hgf = inducedLambdaHom(compose(g0, f0), compose(g1, f1), ta, tc);
        CHECK(lambdaHomsEqual(composeLambda(hg, hf), hgf));
        CHECK(checkLambdaLinear(hf).pass);
    }
}
