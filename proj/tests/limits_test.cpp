#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cuntz/limits.hpp"

using namespace cuntz;

namespace {

Diagram identityDiagramOf(const CuPtr& s, std::size_t prefix = 2) {
    std::vector<CuPtr> stages(prefix, s);
    std::vector<CuMap> maps(prefix - 1, CuMap::identity(s));
    return Diagram::identityExtended(stages, maps);
}

// The frozen-coordinates diagram truncated at stage N and then extended by
// identities.
Diagram truncatedCoordDiagram(std::size_t n) {
    std::vector<CuPtr> stages;
    for (std::size_t i = 1; i <= n; ++i) stages.push_back(CuObject::coordStage(i));
    std::vector<CuMap> maps;
    for (std::size_t i = 0; i + 1 < n; ++i)
        maps.push_back(CuMap::coordAppend(stages[i], stages[i + 1]));
    return Diagram::identityExtended(stages, maps);
}

}  // namespace

TEST_CASE("diagram construction and composites") {
    auto e2 = CuObject::ek(2);
    auto d = identityDiagramOf(e2, 3);
    CHECK(d.stage(1) == e2);
    CHECK(d.stage(100) == e2);
    CuElem one = e2->finiteElem(1);
    CHECK(d.push(1, 7, one) == one);
    CHECK(d.between(2, 5)(one) == one);
    CHECK_THROWS_AS(d.between(5, 2), StageMismatch);

    auto e1 = CuObject::ek(1);
    CHECK_THROWS_AS(Diagram::identityExtended({e2, e1}, {CuMap::identity(e2)}),
                    StageMismatch);
    CHECK_THROWS_AS(Diagram::identityExtended({e2, e2}, {}), StageMismatch);

    auto cd = Diagram::coordinate();
    CHECK(cd.stage(3)->dim == 3);
    CuElem c1 = cd.stage(1)->coordElem({Int(2)});
    CuElem pushed = cd.push(1, 3, c1);
    CHECK(pushed == cd.stage(3)->coordElem({Int(2), Int(0), Int(0)}));
}

TEST_CASE("constant-push sequences are eventually increasing") {
    auto e2 = CuObject::ek(2);
    auto d = identityDiagramOf(e2);
    EvSeq f = embedStage(d, 4, e2->finiteElem(2));
    CHECK(f.at(d, 2) == e2->zero());
    CHECK(f.at(d, 4) == e2->finiteElem(2));
    CHECK(f.at(d, 9) == e2->finiteElem(2));
    CHECK(isEventuallyIncreasing(d, f).decision.isTrue());
}

TEST_CASE("coordinate-diagram constant-push sequence is increasing even though "
          "its seed misses every earlier stage image") {
    auto d = Diagram::coordinate();
    // s = (1,0,0,1) at stage 4: the last coordinate 1 is unreachable from
    // stage-3 images, which always end in 0.
    CuElem s = d.stage(4)->coordElem({Int(1), Int(0), Int(0), Int(1)});
    for (const CuElem& img : {d.push(3, 4, d.stage(3)->coordElem({Int(1), Int(0), Int(0)})),
                              d.push(3, 4, d.stage(3)->zero())})
        CHECK_FALSE(d.stage(4)->leq(img, s).isTrue());
    EvSeq f = embedStage(d, 4, s);
    CHECK(isEventuallyIncreasing(d, f).decision.isTrue());
}

TEST_CASE("a decreasing pair is reported with a witness") {
    auto e2 = CuObject::ek(2);
    auto d = identityDiagramOf(e2);
    EvSeq f{1, {e2->finiteElem(2), e2->finiteElem(1)}, {}};
    auto rep = isEventuallyIncreasing(d, f);
    CHECK(rep.decision.isFalse());
    CHECK(rep.witness.find("s_1") != std::string::npos);
}

TEST_CASE("seq_leq orders stable values over an identity-extended diagram") {
    auto e2 = CuObject::ek(2);
    auto d = identityDiagramOf(e2);
    EvSeq one = embedStage(d, 1, e2->finiteElem(1));
    EvSeq two = embedStage(d, 3, e2->finiteElem(2));
    CHECK(seqLeq(d, one, one).isTrue());
    CHECK(seqLeq(d, one, two).isTrue());
    CHECK(seqLeq(d, two, one).isFalse());
    CHECK(seqEquiv(d, two, two));
}

TEST_CASE("frozen coordinates make pushed stage elements incomparable") {
    auto d = Diagram::coordinate();
    EvSeq f = embedStage(d, 3, d.stage(3)->coordElem({Int(1), Int(0), Int(0)}));
    EvSeq g = embedStage(d, 4, d.stage(4)->coordElem({Int(1), Int(0), Int(0), Int(1)}));
    CHECK(seqLeq(d, f, g).isFalse());
    CHECK(seqLeq(d, g, f).isFalse());

    EvSeq a = embedStage(d, 1, d.stage(1)->coordElem({Int(1)}));
    EvSeq b = embedStage(d, 2, d.stage(2)->coordElem({Int(1), Int(1)}));
    CHECK(seqLeq(d, a, b).isFalse());
    CHECK(seqLeq(d, b, a).isFalse());
}

TEST_CASE("embed_stage is compatible with the connecting maps") {
    auto d = truncatedCoordDiagram(4);
    CuElem s = d.stage(2)->coordElem({Int(3), Int(1)});
    EvSeq early = embedStage(d, 2, s);
    EvSeq late = embedStage(d, 4, d.push(2, 4, s));
    CHECK(seqEquiv(d, early, late));
    for (std::size_t i = 1; i <= 5; ++i)
        CHECK(seqEquiv(d, embedStage(d, i, d.stage(i)->zero()),
                       embedStage(d, 1, d.stage(1)->zero())));
    CHECK_THROWS_AS(embedStage(d, 1, s), ForeignElement);
}

TEST_CASE("rapidize is the identity on finite-kind stages") {
    auto e3 = CuObject::ek(3);
    auto d = identityDiagramOf(e3);
    EvSeq f = embedStage(d, 2, e3->finiteElem(3));
    EvSeq g = rapidize(d, f);
    for (std::size_t i = 2; i <= 10; ++i) CHECK(g.at(d, i) == f.at(d, i));
    CHECK(seqEquiv(d, f, g));
}

TEST_CASE("rapidize diagonalizes an unbounded completion class into compacts") {
    auto s = CuObject::completion(CompactMonoid::linearN());
    auto d = identityDiagramOf(s);
    CuElem chain = s->chainClass({Int(1), Int(2)}, true);
    EvSeq f = embedStage(d, 1, chain);
    EvSeq g = rapidize(d, f);

    for (std::size_t i = 1; i <= 12; ++i)
        CHECK(g.at(d, i) == s->compactElem(Int(i - 1)));
    // Eventually way-below increasing, not merely increasing.
    for (std::size_t i = 1; i <= 12; ++i)
        CHECK(s->wayBelow(g.at(d, i), g.at(d, i + 1)).isTrue());
    CHECK(isEventuallyIncreasing(d, g).decision.isTrue());
    CHECK(seqEquiv(d, f, g));

    // Idempotence up to equivalence.
    CHECK(seqEquiv(d, rapidize(d, g), g));
}

TEST_CASE("sup_of_classes: singleton and finite stabilized lists") {
    auto e3 = CuObject::ek(3);
    auto d = identityDiagramOf(e3);
    EvSeq one = embedStage(d, 1, e3->finiteElem(1));
    EvSeq two = embedStage(d, 1, e3->finiteElem(2));
    CHECK(seqEquiv(d, supOfClasses(d, {one}, false), one));
    EvSeq sup = supOfClasses(d, {one, two}, false);
    CHECK(seqEquiv(d, sup, two));
    CHECK(seqLeq(d, one, sup).isTrue());
}

TEST_CASE("sup_of_classes: divergent compact staircase gives the chain class") {
    auto s = CuObject::completion(CompactMonoid::linearN());
    auto d = identityDiagramOf(s);
    std::vector<EvSeq> classes;
    for (int k = 1; k <= 3; ++k) classes.push_back(embedStage(d, 1, s->compactElem(Int(k))));
    EvSeq sup = supOfClasses(d, classes, true);
    EvSeq target = embedStage(d, 1, s->chainClass({Int(1), Int(2)}, true));
    CHECK(seqEquiv(d, sup, target));
    for (const EvSeq& c : classes) CHECK(seqLeq(d, c, sup).isTrue());
    // Least among the sampled upper bounds.
    CHECK(seqLeq(d, sup, target).isTrue());
}

TEST_CASE("limit of an identity-extended finite diagram is the final stage") {
    auto e2 = CuObject::ek(2);
    LimitObject lim(identityDiagramOf(e2));
    const Diagram& d = lim.diagram();
    std::vector<EvSeq> cls;
    std::vector<CuElem> elems = e2->sample();
    for (const CuElem& x : elems) cls.push_back(embedStage(d, 1, x));
    for (std::size_t a = 0; a < elems.size(); ++a) {
        CHECK(lim.stableValue(cls[a]) == elems[a]);
        for (std::size_t b = 0; b < elems.size(); ++b) {
            CHECK(lim.leq(cls[a], cls[b]).isTrue() == e2->leq(elems[a], elems[b]).isTrue());
            CHECK(lim.wayBelow(cls[a], cls[b]).isTrue() ==
                  e2->wayBelow(elems[a], elems[b]).isTrue());
            CuElem direct = e2->add(elems[a], elems[b]);
            CHECK(lim.equal(lim.add(cls[a], cls[b]), embedStage(d, 1, direct)));
        }
    }
}

TEST_CASE("limit of the truncated coordinate diagram is its final stage") {
    LimitObject lim(truncatedCoordDiagram(4));
    const Diagram& d = lim.diagram();
    auto s4 = d.stage(4);
    std::vector<CuElem> elems = {
        s4->zero(),
        s4->coordElem({Int(1), Int(0), Int(0), Int(0)}),
        s4->coordElem({Int(2), Int(0), Int(0), Int(0)}),
        s4->coordElem({Int(1), Int(0), Int(0), Int(1)}),
        s4->coordElem({Int(2), Int(1), Int(0), Int(0)}),
        s4->coordElem({Int(3), Int(0), Int(0), Int(0)}, true),
    };
    std::vector<EvSeq> cls;
    for (const CuElem& x : elems) cls.push_back(embedStage(d, 4, x));
    for (std::size_t a = 0; a < elems.size(); ++a) {
        for (std::size_t b = 0; b < elems.size(); ++b) {
            CHECK(lim.leq(cls[a], cls[b]).isTrue() == s4->leq(elems[a], elems[b]).isTrue());
            CuElem direct = s4->add(elems[a], elems[b]);
            CHECK(lim.equal(lim.add(cls[a], cls[b]), embedStage(d, 4, direct)));
        }
    }
    // A class whose first coordinate diverges has the infinite element as sup.
    std::vector<EvSeq> chain;
    for (int k = 1; k <= 3; ++k)
        chain.push_back(embedStage(d, 4, s4->coordElem({Int(k), Int(0), Int(0), Int(0)})));
    EvSeq sup = lim.supChain(chain, true);
    CHECK(lim.equal(sup, cls[5]));
}

TEST_CASE("limit of a constant ext diagram behaves like the stage itself") {
    auto z = CuObject::zExt();
    LimitObject lim(identityDiagramOf(z));
    const Diagram& d = lim.diagram();
    EvSeq a = embedStage(d, 1, z->extElem(Int(-2)));
    EvSeq b = embedStage(d, 1, z->extElem(Int(5)));
    EvSeq top = embedStage(d, 1, z->extInf());
    CHECK(lim.leq(a, b).isTrue());
    CHECK(lim.leq(b, a).isFalse());
    CHECK(lim.wayBelow(a, top).isTrue());
    CHECK(lim.wayBelow(top, top).isFalse());
    EvSeq sup = lim.supChain({a, b}, true);
    CHECK(lim.equal(sup, top));
}

TEST_CASE("universal map: constant diagram with identity cone is the identity") {
    auto e2 = CuObject::ek(2);
    auto d = identityDiagramOf(e2);
    Cone cone{e2, [&](std::size_t) { return CuMap::identity(e2); }};
    requireConeCompatible(d, cone);
    for (const CuElem& x : e2->sample())
        for (std::size_t i = 1; i <= 4; ++i)
            CHECK(universalMap(d, cone, embedStage(d, i, x)) == x);
}

TEST_CASE("universal map on the truncated coordinate diagram matches direct "
          "evaluation") {
    auto d = truncatedCoordDiagram(3);
    auto s3 = d.stage(3);
    Cone cone{s3, [&](std::size_t i) {
                  return i < 3 ? d.between(i, 3) : CuMap::identity(s3);
              }};
    requireConeCompatible(d, cone);
    std::vector<std::pair<std::size_t, CuElem>> seeds = {
        {1, d.stage(1)->coordElem({Int(2)})},
        {2, d.stage(2)->coordElem({Int(1), Int(3)})},
        {3, s3->coordElem({Int(4), Int(0), Int(-1)})},
        {2, d.stage(2)->zero()},
    };
    for (const auto& [i, s] : seeds)
        CHECK(universalMap(d, cone, embedStage(d, i, s)) == d.push(i, 3, s));
}

TEST_CASE("universal map takes suprema of diagonal sequences") {
    auto s = CuObject::completion(CompactMonoid::linearN());
    auto d = identityDiagramOf(s);
    Cone cone{s, [&](std::size_t) { return CuMap::identity(s); }};
    CuElem chain = s->chainClass({Int(1), Int(2)}, true);
    EvSeq f = embedStage(d, 1, chain);
    CuElem viaConstant = universalMap(d, cone, f);
    CuElem viaDiagonal = universalMap(d, cone, rapidize(d, f));
    CHECK(s->equal(viaConstant, chain));
    CHECK(s->equal(viaDiagonal, chain));
}

TEST_CASE("incompatible cones are rejected") {
    auto e2 = CuObject::ek(2);
    auto e1 = CuObject::ek(1);
    auto d = identityDiagramOf(e2);
    CuMap collapse = CuMap::fromTable(e2, e1, {0, 1, 2, 2});
    CuMap crush = CuMap::fromTable(e2, e1, {0, 0, 0, 0});
    Cone bad{e1, [&](std::size_t i) { return i == 1 ? collapse : crush; }};
    CHECK_THROWS_AS(requireConeCompatible(d, bad), IncompatibleCone);
    CHECK_THROWS_AS(
        requireConeCompatible(d, Cone{e2, [&](std::size_t) { return collapse; }}),
        IncompatibleCone);
}
