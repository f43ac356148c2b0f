#pragma once

#include "cuntz/int_matrix.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuntz {

struct IllFormedHom : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadModulus : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FgAbGroup;
using GroupPtr = std::shared_ptr<const FgAbGroup>;

/// Finitely generated abelian group by integer presentation: Z^g modulo the
/// lattice spanned by the relation rows. Immutable; the Smith normal form of
/// the relations is computed eagerly and cached.
class FgAbGroup : public std::enable_shared_from_this<FgAbGroup> {
public:
    FgAbGroup(std::size_t numGenerators, IntMatrix relations);

    static GroupPtr make(std::size_t numGenerators, IntMatrix relations) {
        return std::make_shared<FgAbGroup>(numGenerators, std::move(relations));
    }
    static GroupPtr trivial() { return make(0, IntMatrix(0, 0)); }
    static GroupPtr freeGroup(std::size_t rank) { return make(rank, IntMatrix(0, rank)); }
    /// Z_{d1} x Z_{d2} x ... x Z^{freeRank}; d_i >= 1 (entries 1 are dropped).
    static GroupPtr cyclicProduct(const std::vector<Int>& orders, std::size_t freeRank = 0);

    std::size_t numGenerators() const { return gens_; }
    const IntMatrix& relations() const { return relations_; }

    std::size_t freeRank() const { return freeRank_; }
    const std::vector<Int>& invariantFactors() const { return invariantFactors_; }
    bool isTrivial() const { return freeRank_ == 0 && invariantFactors_.empty(); }
    bool isFinite() const { return freeRank_ == 0; }
    Int order() const;  // throws if infinite

    /// Canonical coordinates: one per invariant factor (reduced mod d), then
    /// one per free rank. Equal canonical forms == equal group elements.
    IntVec canonical(const IntVec& coords) const;
    bool elementsEqual(const IntVec& a, const IntVec& b) const;
    bool isZeroElement(const IntVec& coords) const;

    /// Generator coordinates of the element with the given canonical form.
    IntVec fromCanonical(const IntVec& canon) const;

    /// Membership of v in the relation lattice (the row span of relations).
    bool inRelationLattice(const IntVec& v) const;

    /// All elements (finite groups only), as generator-coordinate vectors.
    std::vector<IntVec> elements() const;

    /// True iff both groups have the same normal form.
    bool isomorphicTo(const FgAbGroup& other) const;

    std::string normalFormString() const;

private:
    std::size_t gens_;
    IntMatrix relations_;  // rows are relation vectors

    std::vector<Int> invariantFactors_;  // each >= 2, divisibility-ordered
    std::size_t freeRank_ = 0;
    IntMatrix toCanon_;    // g x g unimodular; canonical coords = rows at kept positions
    IntMatrix fromCanon_;  // inverse of toCanon_
    std::vector<std::size_t> torsionPos_, freePos_;
    SmithForm relationSolver_;  // SNF of relations^T, for lattice membership
};

/// Group homomorphism as an integer matrix (target generators x source
/// generators). Well-definedness = every source relation maps into the
/// target relation lattice.
class GroupHom {
public:
    GroupHom(GroupPtr source, GroupPtr target, IntMatrix matrix);

    static GroupHom identity(const GroupPtr& g);
    static GroupHom zero(GroupPtr source, GroupPtr target);
    static GroupHom multiplication(const GroupPtr& g, const Int& n);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    bool wellDefined() const;
    void requireWellDefined() const;

    IntVec apply(const IntVec& coords) const { return matrix_ * coords; }

    bool isZeroMap() const;
    bool isInjective() const;
    bool isSurjective() const;

    /// Pointwise equality as maps (sources/targets must match structurally).
    bool equalTo(const GroupHom& other) const;

private:
    GroupPtr source_, target_;
    IntMatrix matrix_;
};

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom addHoms(const GroupHom& f, const GroupHom& g);

struct SubgroupPair {
    GroupPtr group;
    GroupHom map;  // into (kernel) or out of (cokernel) the ambient group
    SubgroupPair(GroupPtr g, GroupHom m) : group(std::move(g)), map(std::move(m)) {}
};

/// Kernel with its inclusion hom into the source.
SubgroupPair kernel(const GroupHom& h);
/// Cokernel with the projection hom from the target.
SubgroupPair cokernel(const GroupHom& h);

/// Image membership: is `target`-element v in the image of h (mod relations)?
bool inImage(const GroupHom& h, const IntVec& v);
/// A preimage under h of a target element known to be in the image.
std::optional<IntVec> preimage(const GroupHom& h, const IntVec& v);

/// G tensor Z_n, same generators, extra relations n*e_i.
GroupPtr tensorZn(const GroupPtr& g, const Int& n);
/// The reduction hom G -> G tensor Z_n (identity on generators).
GroupHom tensorReduction(const GroupPtr& g, const GroupPtr& tensored);

/// Tor(G, Z_n) = n-torsion subgroup of G, with its inclusion into G.
SubgroupPair torZn(const GroupPtr& g, const Int& n);

/// Functorial map Tor(f): given f: G -> H and the two torsion inclusions,
/// the unique hom making the square commute.
GroupHom inducedOnSubgroup(const GroupHom& f, const SubgroupPair& srcSub,
                           const SubgroupPair& dstSub);

/// Grothendieck group of a commutative monoid given by a finite generating
/// set and relation rows r with sum_i r_i * gen_i = 0 interpreted in the
/// group completion. rho maps generator i to e_i.
struct GrothendieckGroup {
    GroupPtr group;
    // rho is the map sending monoid generator i to class of e_i; it is just
    // the coordinate inclusion, recorded implicitly.
};
GrothendieckGroup grothendieckOfPresentation(std::size_t numGenerators, IntMatrix relations);

}  // namespace cuntz
