#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cuntz/descriptor_io.hpp"

using namespace cuntz;

TEST_CASE("canonical serialization round-trips bit-exactly for every fixture") {
    for (auto d : {fixtureElliottThomsenE(), fixtureEk(1), fixtureEk(2), fixtureEk(5),
                   fixtureZInfty(), fixtureKPure(0), fixtureKPure(1), fixtureKPure(2),
                   fixtureKPureAlt(), fixtureFiniteSample()}) {
        CAPTURE(d->name);
        std::string text = serializeDescriptor(*d);
        auto back = parseDescriptor(text);
        CHECK(serializeDescriptor(*back) == text);
        CHECK(back->name == d->name);
        CHECK(back->ideals.size() == d->ideals.size());
        CHECK(back->support == d->support);
        CHECK(validateDescriptor(*back).pass);
    }
}

TEST_CASE("parsed fixtures reproduce their K-theory") {
    auto et = parseDescriptor(serializeDescriptor(*fixtureElliottThomsenE()));
    CHECK(et->ideals[2].k->k[0]->isomorphicTo(*FgAbGroup::freeGroup(2)));
    CHECK(et->ideals[2].k->k[1]->isTrivial());
    CHECK(et->ideals[1].k->k[1]->isomorphicTo(*FgAbGroup::freeGroup(1)));
    TotalCu T = assembleCu1(et);
    AlphaReport rep = alphaMap(T, 1, 64);
    CHECK(rep.injective.isFalse());
}

TEST_CASE("schema violations are diagnosed") {
    CHECK_THROWS_AS(parseDescriptor(""), SchemaError);
    CHECK_THROWS_AS(parseDescriptor("{}"), SchemaError);
    CHECK_THROWS_AS(parseDescriptor("{\"format_version\": 2}"), SchemaError);
    // Valid JSON whose delta maps are missing fails validation.
    AlgebraDescriptor d = *fixtureKPure(0);
    d.delta.clear();
    std::string text = serializeDescriptor(d);
    CHECK_THROWS_WITH_AS(parseDescriptor(text),
                         doctest::Contains("missing delta"), SchemaError);
}
