#pragma once

#include "cuntz/bockstein.hpp"
#include "cuntz/cu.hpp"

#include <optional>
#include <set>

namespace cuntz {

struct NotAlgebraic : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnital : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInCuU : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncompatibleSquares : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingFlags : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingQuotientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// K-theoretic payload of one element: a K_1 class plus the finitely
/// supported family of mod-p classes (s_p, s^p), all in generator
/// coordinates of the groups of the ideal of record.
struct KData {
    IntVec u;
    std::map<Int, std::pair<IntVec, IntVec>> mods;  // p -> (K_0(;Z_p), K_1(;Z_p))
};

/// Invariant-level stand-in for a C*-algebra of stable rank one: a Cu-model,
/// its principal-ideal list with total-K payloads, the connecting delta maps,
/// flags, and an optional unit.
struct AlgebraDescriptor {
    struct IdealEntry {
        CuElem generator;
        std::shared_ptr<TotalK> k;
    };
    struct QuotientEntry {
        std::shared_ptr<TotalK> k;  // K(A/I)
        LambdaHom fromTop;          // K(A) -> K(A/I)
    };

    std::string name;
    bool realRankZero = false, kPure = false, unital = false;
    CuPtr cu;
    std::set<Int> support;
    std::vector<IdealEntry> ideals;
    std::map<std::pair<std::size_t, std::size_t>, LambdaHom> delta;  // proper pairs
    std::optional<CuElem> unit;
    std::map<std::size_t, QuotientEntry> quotients;

    std::size_t idealIndexOf(const CuElem& x, std::size_t depth = 64) const;
    bool idealContained(std::size_t i, std::size_t j, std::size_t depth = 64) const;
    std::size_t zeroIdeal() const;
    std::size_t topIdeal() const;
    LambdaHom deltaBetween(std::size_t i, std::size_t j) const;
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> failures;
};
ValidationReport validateDescriptor(const AlgebraDescriptor& d);

struct TotalElem {
    std::size_t ideal = 0;
    CuElem x;
    KData k;
};

/// The assembled total Cuntz semigroup (or its Cu_1 reduction, or the
/// image-fiber variant) over a validated descriptor.
class TotalCu {
public:
    enum class Mode { Total, K1Only };
    enum class Variant { Standard, Image };

    TotalCu(std::shared_ptr<const AlgebraDescriptor> d, Mode mode, Variant variant);

    const AlgebraDescriptor& descriptor() const { return *d_; }
    std::shared_ptr<const AlgebraDescriptor> descriptorPtr() const { return d_; }
    Mode mode() const { return mode_; }
    Variant variant() const { return variant_; }
    /// Index of the ideal whose groups carry an element's payload.
    std::size_t payloadIdeal(const TotalElem& e) const;

    TotalElem zero() const;
    TotalElem make(const CuElem& x, KData k) const;
    TotalElem unitElem() const;

    TotalElem add(const TotalElem& a, const TotalElem& b) const;
    Decision leq(const TotalElem& a, const TotalElem& b) const;
    bool equal(const TotalElem& a, const TotalElem& b) const;
    Decision wayBelow(const TotalElem& a, const TotalElem& b) const;
    TotalElem supChain(const std::vector<TotalElem>& entries, bool divergent) const;
    std::string show(const TotalElem& e) const;

    KData kdataZero(std::size_t ideal) const;
    KData kdataApply(const LambdaHom& h, const KData& k) const;
    KData kdataAdd(std::size_t ideal, const KData& a, const KData& b) const;
    bool kdataEqual(std::size_t ideal, const KData& a, const KData& b) const;
    KData pushToTop(const TotalElem& e) const;

    struct Universe {
        std::vector<TotalElem> elems;
        bool exhaustive = false;
    };
    /// All elements with the free coordinates of infinite fibers clamped to
    /// [-freeBound, freeBound]; exhaustive iff nothing was clamped and the
    /// cu sample is exhaustive.
    Universe elements(const Int& freeBound = 2, std::size_t budget = 64) const;
    Universe compactElements(const Int& freeBound = 2, std::size_t budget = 64) const;

private:
    std::shared_ptr<const AlgebraDescriptor> d_;
    Mode mode_;
    Variant variant_;
};

TotalCu assembleTotalCu(std::shared_ptr<const AlgebraDescriptor> d);
TotalCu assembleCu1(std::shared_ptr<const AlgebraDescriptor> d);
TotalCu assembleTotalCuImageVariant(std::shared_ptr<const AlgebraDescriptor> d);

/// Grothendieck group of the compact part of a Cu-object with the natural
/// map rho on compact elements.
struct CompactsGr {
    GroupPtr group;
    std::function<IntVec(const CuElem&)> rho;
};
CompactsGr grOfCuCompacts(const CuPtr& cu);

struct ConeSymmetryReport {
    bool trivial = true;  // rho(S_c) intersect -rho(S_c) == {0}
    std::string witness;
};
ConeSymmetryReport coneSymmetryCheck(const CuPtr& cu, std::size_t budget = 64);

/// Element of the (graded) total K-theory model: a Gr(Cu_c) class plus the
/// K_1/mod-p payload in the top ideal's groups.
struct KTotalValue {
    IntVec k0;
    KData rest;
};

struct AlphaReport {
    bool additive = true;
    Decision injective;
    std::string injectivityWitness;
    Decision orderIso;
    std::string orderWitness;
    bool exhaustive = false;
    std::size_t domainSize = 0;
};
/// The map alpha(e, data) = (rho(e), delta_{I_e A}(data)) on compacts, with
/// bounded injectivity/order reports.
AlphaReport alphaMap(const TotalCu& T, const Int& freeBound = 2, std::size_t budget = 64);

struct GrCompactsResult {
    GroupPtr gr;          // Gr(Cu-total compacts), assembled gradedwise
    IntVec unitClass;
    bool k0Matches = false;             // Gr(cu_c) isomorphic to descriptor K_0(top)
    bool presentationVerified = false;  // cross-checked against a raw presentation
    ConeSymmetryReport symmetry;
};
GrCompactsResult grCompacts(const TotalCu& T, const Int& freeBound = 2,
                            std::size_t budget = 64);

struct RecoverReport {
    GroupPtr gr;
    IntVec unitClass;
    bool matchesDescriptor = false;
    std::vector<std::string> notes;
};
/// H-bar: (S, u) -> (Gr(S_c), rho(S_c), [u]); throws NotInCuU naming the
/// violated membership condition.
RecoverReport recoverTotalK(const TotalCu& T, const Int& freeBound = 2,
                            std::size_t budget = 64);

struct DescriptorMap {
    std::shared_ptr<const AlgebraDescriptor> source, target;
    CuMap cuPart;
    std::map<std::size_t, LambdaHom> idealHoms;  // source ideal -> hom into image ideal K
};

struct TotalCuMorphism {
    std::function<TotalElem(const TotalElem&)> fn;
    std::vector<std::string> notes;
};
TotalCuMorphism inducedMorphism(const TotalCu& S, const TotalCu& T,
                                const DescriptorMap& phi, std::size_t budget = 64);

/// Graded hom on the total-K model (K0 part on Gr(cu_c), the rest Lambda).
struct KTotalHom {
    GroupHom k0;
    LambdaHom rest;
};
struct PositivityReport {
    bool coneToCone = false;
    bool componentwise = false;
    bool agree = false;
    std::vector<std::string> notes;
};
PositivityReport checkPositivityEquivalence(const TotalCu& S, const TotalCu& T,
                                            const KTotalHom& phi,
                                            const Int& freeBound = 2,
                                            std::size_t budget = 64);

struct ExactnessReport {
    bool pass = true;
    std::vector<std::string> failures;
};
ExactnessReport checkKPureExactness(const AlgebraDescriptor& d);

struct WeakTotalResult {
    Tri status = Tri::Undecided;
    std::string witness;
};
WeakTotalResult totalWeakCancellation(const TotalCu& T, const Int& freeBound = 1,
                                      std::size_t budget = 16);

/// Finite-monoid materialization of an exhaustive universe (throws
/// SizeExceeded otherwise).
struct MaterializedTotalCu {
    FiniteMonoid monoid;
    std::vector<TotalElem> elems;
    std::size_t zeroIdx = 0;
    std::optional<std::size_t> unitIdx;
};
MaterializedTotalCu materializeTotalCu(const TotalCu& T, std::size_t maxSize = 256);

struct IsoResult {
    enum class Status { Found, NotFound, Undecided } status = Status::Undecided;
    std::vector<std::size_t> mapping;  // lexicographically least when Found
    std::string detail;
};
IsoResult totalCuIsomorphic(const TotalCu& S, const TotalCu& T, const Int& bound = 4,
                            std::size_t budget = 100000);
/// Compare against an externally materialized finite monoid (e.g. a limit
/// object), unit-preserving.
IsoResult totalCuIsomorphicToMonoid(const TotalCu& S, const FiniteMonoid& m,
                                    std::size_t unitIdx, std::size_t budget = 100000);

// Built-in fixtures.
std::shared_ptr<const AlgebraDescriptor> fixtureElliottThomsenE();
std::shared_ptr<const AlgebraDescriptor> fixtureEk(std::size_t k);
std::shared_ptr<const AlgebraDescriptor> fixtureZInfty();
/// which = 0,1,2: simple N-union-infinity based real-rank-zero k-pure samples.
std::shared_ptr<const AlgebraDescriptor> fixtureKPure(std::size_t which);
/// Same total K as fixtureKPure(0) under a different presentation.
std::shared_ptr<const AlgebraDescriptor> fixtureKPureAlt();
/// Finite (E_1-based) fixture whose assembled total Cu has five elements.
std::shared_ptr<const AlgebraDescriptor> fixtureFiniteSample();

}  // namespace cuntz
