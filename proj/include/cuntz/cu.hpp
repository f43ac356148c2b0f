#pragma once

#include "cuntz/int_matrix.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuntz {

struct ForeignElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotIncreasing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedKind : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidMonoid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Tri { False, True, Undecided };

/// Three-valued answer for order queries that are only semi-decidable.
struct Decision {
    Tri v = Tri::Undecided;
    static Decision yes() { return {Tri::True}; }
    static Decision no() { return {Tri::False}; }
    static Decision unknown() { return {Tri::Undecided}; }
    static Decision of(bool b) { return b ? yes() : no(); }
    bool isTrue() const { return v == Tri::True; }
    bool isFalse() const { return v == Tri::False; }
    bool isUndecided() const { return v == Tri::Undecided; }
};

/// Finite partially ordered commutative monoid given by tables.
struct FiniteMonoid {
    std::size_t count = 0;
    std::size_t zeroIdx = 0;
    std::vector<std::size_t> addTable;  // count x count, row-major
    std::vector<char> leqTable;         // count x count
    std::vector<std::string> labels;    // optional display names

    std::size_t add(std::size_t i, std::size_t j) const { return addTable[i * count + j]; }
    bool leq(std::size_t i, std::size_t j) const { return leqTable[i * count + j] != 0; }
    std::string label(std::size_t i) const;

    /// All violated monoid/order axioms, empty when valid.
    std::vector<std::string> validate() const;

    static FiniteMonoid product(const FiniteMonoid& a, const FiniteMonoid& b);
    /// E_k = {0, 1, ..., k, inf} with saturating-to-inf addition.
    static FiniteMonoid ek(std::size_t k);
    /// Submonoid generated by the given elements, with the index map back
    /// into this monoid.
    FiniteMonoid submonoid(std::vector<std::size_t> generators,
                           std::vector<std::size_t>* originalIndex = nullptr) const;
};

/// Ordered-monoid isomorphism as an index permutation (lexicographically
/// least when several exist), or nullopt.
std::optional<std::vector<std::size_t>> monoidIsomorphism(const FiniteMonoid& a,
                                                          const FiniteMonoid& b);

/// Monoid of compact elements: finite tables, a linear monoid (N or Z under
/// addition with the usual order), or a finite product of these.
struct CompactMonoid {
    enum class Kind { Finite, Linear, Product };
    Kind kind = Kind::Finite;
    FiniteMonoid table;                  // Finite
    bool negatives = false;              // Linear: true = Z, false = N
    std::vector<CompactMonoid> factors;  // Product

    static CompactMonoid finite(FiniteMonoid m);
    static CompactMonoid linearN() { return {Kind::Linear, {}, false, {}}; }
    static CompactMonoid linearZ() { return {Kind::Linear, {}, true, {}}; }
    static CompactMonoid product(std::vector<CompactMonoid> fs);
};

/// Element of a CuObject. Which fields are meaningful depends on the kind of
/// the owning object:
///   Finite      - idx
///   Ext         - inf, value (Z or N extended by a top element)
///   Tuple       - parts, one per leg
///   Completion  - compact: value (linear base) or idx (finite base);
///                 chain class: isChain, chainVals, arith (extend by the last
///                 difference, linear base only)
///   Coord       - chainVals = coordinates (m_1, ..., m_d), inf = first
///                 coordinate is the top of N u {inf}
struct CuElem {
    std::size_t idx = 0;
    Int value = 0;
    bool inf = false;
    std::vector<CuElem> parts;
    bool isChain = false;
    std::vector<Int> chainVals;
    bool arith = false;

    bool operator==(const CuElem&) const = default;
};

/// An increasing sequence handed to sup_chain: explicit entries plus a flag
/// saying the entries keep growing past the end (rather than stabilizing).
struct CuChain {
    std::vector<CuElem> entries;
    bool divergent = false;
};

enum class CuKind { Finite, Ext, Tuple, Completion, Coord };

class CuObject;
using CuPtr = std::shared_ptr<const CuObject>;

class CuObject : public std::enable_shared_from_this<CuObject> {
public:
    CuKind kind = CuKind::Finite;
    FiniteMonoid mon;            // Finite
    bool negatives = false;      // Ext: true = Z u {inf}, false = N u {inf}
    std::vector<CuPtr> legs;     // Tuple
    CompactMonoid base;          // Completion
    std::size_t dim = 0;         // Coord: number of coordinates

    static CuPtr finite(FiniteMonoid m, bool requireValid = true);
    static CuPtr ek(std::size_t k);
    static CuPtr zExt();
    static CuPtr nExt();
    static CuPtr directSum(std::vector<CuPtr> parts);
    /// The coproduct with shared zero of Cu~-objects; for these commutative
    /// monoids it coincides with the direct sum.
    static CuPtr coproductSharedZero(std::vector<CuPtr> parts);
    static CuPtr completion(CompactMonoid m);
    /// Stage of the frozen-coordinates diagram: ((N\{0} u {inf}) x Z^{d-1})
    /// u {0}, ordered by first-coordinate comparison with equal tails.
    static CuPtr coordStage(std::size_t d);

    CuElem zero() const;
    CuElem finiteElem(std::size_t i) const;
    CuElem extElem(const Int& v) const;
    CuElem extInf() const;
    CuElem tupleElem(std::vector<CuElem> parts) const;
    CuElem compactElem(const Int& v) const;  // Completion, linear base
    CuElem compactIdx(std::size_t i) const;  // Completion, finite base
    CuElem chainClass(std::vector<Int> vals, bool arith) const;
    CuElem coordElem(std::vector<Int> coords, bool firstInf = false) const;

    void requireElem(const CuElem& e) const;  // throws ForeignElement

    CuElem add(const CuElem& a, const CuElem& b) const;
    Decision leq(const CuElem& a, const CuElem& b, std::size_t depth = 64) const;
    bool equal(const CuElem& a, const CuElem& b, std::size_t depth = 64) const;
    Decision wayBelow(const CuElem& a, const CuElem& b, std::size_t depth = 64) const;
    CuElem supChain(const CuChain& chain, std::size_t depth = 64) const;
    /// Canonical way-below approximant chain with supremum e (the O2 data).
    CuChain approxChain(const CuElem& e, std::size_t depth = 8) const;
    std::vector<CuElem> sample(std::size_t budget = 64) const;
    bool sampleIsExhaustive() const { return kind == CuKind::Finite; }
    /// Closed-form weak cancellation knowledge for unbounded kinds.
    bool weaklyCancellativeByConstruction() const;
    std::string show(const CuElem& e) const;

    CompactMonoid compacts() const;
    /// Embeds an element of compacts() back into this object; coords follows
    /// the CompactMonoid shape (index for finite, value for linear, one
    /// vector entry per product factor).
    CuElem fromCompact(const std::vector<Int>& coords) const;
};

CuPtr cuCompletion(const CompactMonoid& m);

struct AxiomReport {
    bool pass = true;
    std::string failure;
};
AxiomReport checkAxioms(const CuPtr& s, std::size_t budget = 100000,
                        std::size_t depth = 64);

Decision positivelyDirected(const CuPtr& s, std::size_t budget = 100000,
                            std::size_t depth = 64);

struct WeakCancelResult {
    Tri status = Tri::Undecided;  // True = has weak cancellation
    CuElem x, y, z;               // counterexample when status == False
};
WeakCancelResult weakCancellation(const CuPtr& s, std::size_t budget = 100000,
                                  std::size_t depth = 64);

CuElem infinityTimes(const CuPtr& s, const CuElem& x, std::size_t depth = 64);

struct CuIdeal {
    CuPtr parent;
    CuElem generator;
    CuElem infinity;  // sup of n * generator
    Decision contains(const CuElem& y, std::size_t depth = 64) const;
};
CuIdeal idealGenerated(const CuPtr& s, const CuElem& x, std::size_t depth = 64);

struct IdealLattice {
    CuPtr parent;
    std::vector<std::vector<std::size_t>> members;  // element index sets
    std::vector<std::size_t> generator;             // one generator per ideal
    bool contains(std::size_t i, std::size_t j) const;  // ideal i inside ideal j
    std::size_t join(std::size_t i, std::size_t j) const;
    std::size_t meet(std::size_t i, std::size_t j) const;
};
IdealLattice idealLattice(const CuPtr& s);  // Finite kind only

Decision isAlgebraic(const CuPtr& s, std::size_t budget = 1000, std::size_t depth = 16);

/// Cu~-morphism; behavior supplied as a function, properties verified by
/// checkCuMorphism on samples.
struct CuMap {
    CuPtr source, target;
    std::function<CuElem(const CuElem&)> fn;
    CuElem operator()(const CuElem& e) const { return fn(e); }

    static CuMap identity(CuPtr s);
    static CuMap fromTable(CuPtr src, CuPtr dst, std::vector<std::size_t> table);
    static CuMap coordAppend(CuPtr src, CuPtr dst);
};
CuMap composeMaps(const CuMap& g, const CuMap& f);

struct MorphismReport {
    bool pass = true;
    std::string failure;
};
MorphismReport checkCuMorphism(const CuMap& m, std::size_t budget = 2000,
                               std::size_t depth = 16);

}  // namespace cuntz
