#include "cuntz/abelian.hpp"

#include <sstream>

namespace cuntz {

namespace {

IntMatrix invertUnimodular(const IntMatrix& u) {
    const std::size_t n = u.rows();
    SmithForm snf = smithNormalForm(u);
    IntMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec e(n, Int(0));
        e[j] = 1;
        auto x = solveLinear(snf, e);
        if (!x) throw ShapeMismatch("matrix is not unimodular");
        for (std::size_t i = 0; i < n; ++i) inv.at(i, j) = (*x)[i];
    }
    return inv;
}

Int posMod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

IntMatrix addMatrices(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("matrix addition shape mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
}

// Columns [0, keep) of the kernel basis of (m | extra^T), i.e. the lattice of
// x with m*x in the column span of extra^T.
IntMatrix kernelModuloLattice(const IntMatrix& m, const IntMatrix& latticeRows,
                              std::size_t keep) {
    IntMatrix augmented = m.hstack(latticeRows.transposed());
    IntMatrix basis = kernelBasis(augmented);
    IntMatrix projected(keep, basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j)
        for (std::size_t i = 0; i < keep; ++i) projected.at(i, j) = basis.at(i, j);
    return projected;
}

}  // namespace

FgAbGroup::FgAbGroup(std::size_t numGenerators, IntMatrix relations)
    : gens_(numGenerators), relations_(std::move(relations)) {
    if (relations_.cols() != gens_) {
        if (relations_.rows() == 0) {
            relations_ = IntMatrix(0, gens_);
        } else {
            throw ShapeMismatch("relation row length does not match generator count");
        }
    }
    IntMatrix m = relations_.transposed();  // columns span the relation lattice
    relationSolver_ = smithNormalForm(m);
    toCanon_ = relationSolver_.U;
    fromCanon_ = invertUnimodular(toCanon_);
    for (std::size_t i = 0; i < relationSolver_.rank; ++i)
        if (relationSolver_.diag(i) > 1) {
            invariantFactors_.push_back(relationSolver_.diag(i));
            torsionPos_.push_back(i);
        }
    for (std::size_t i = relationSolver_.rank; i < gens_; ++i) freePos_.push_back(i);
    freeRank_ = freePos_.size();
}

GroupPtr FgAbGroup::cyclicProduct(const std::vector<Int>& orders, std::size_t freeRank) {
    const std::size_t g = orders.size() + freeRank;
    IntMatrix rel(orders.size(), g);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 1) throw BadModulus("cyclic order must be >= 1");
        rel.at(i, i) = orders[i];
    }
    return make(g, std::move(rel));
}

Int FgAbGroup::order() const {
    if (!isFinite()) throw ShapeMismatch("group is infinite");
    Int n = 1;
    for (const Int& d : invariantFactors_) n *= d;
    return n;
}

IntVec FgAbGroup::canonical(const IntVec& coords) const {
    if (coords.size() != gens_) throw ShapeMismatch("coordinate length mismatch");
    IntVec z = toCanon_ * coords;
    IntVec out;
    out.reserve(invariantFactors_.size() + freeRank_);
    for (std::size_t k = 0; k < torsionPos_.size(); ++k)
        out.push_back(posMod(z[torsionPos_[k]], invariantFactors_[k]));
    for (std::size_t p : freePos_) out.push_back(z[p]);
    return out;
}

bool FgAbGroup::elementsEqual(const IntVec& a, const IntVec& b) const {
    return canonical(a) == canonical(b);
}

bool FgAbGroup::isZeroElement(const IntVec& coords) const {
    return isZeroVec(canonical(coords));
}

IntVec FgAbGroup::fromCanonical(const IntVec& canon) const {
    if (canon.size() != invariantFactors_.size() + freeRank_)
        throw ShapeMismatch("canonical coordinate length mismatch");
    IntVec z(gens_, Int(0));
    for (std::size_t k = 0; k < torsionPos_.size(); ++k) z[torsionPos_[k]] = canon[k];
    for (std::size_t k = 0; k < freePos_.size(); ++k)
        z[freePos_[k]] = canon[invariantFactors_.size() + k];
    return fromCanon_ * z;
}

bool FgAbGroup::inRelationLattice(const IntVec& v) const {
    if (v.size() != gens_) throw ShapeMismatch("coordinate length mismatch");
    return solveLinear(relationSolver_, v).has_value();
}

std::vector<IntVec> FgAbGroup::elements() const {
    if (!isFinite()) throw ShapeMismatch("cannot enumerate an infinite group");
    std::vector<IntVec> out;
    IntVec canon(invariantFactors_.size(), Int(0));
    while (true) {
        out.push_back(fromCanonical(canon));
        std::size_t k = 0;
        for (; k < canon.size(); ++k) {
            canon[k] += 1;
            if (canon[k] < invariantFactors_[k]) break;
            canon[k] = 0;
        }
        if (k == canon.size()) break;
    }
    return out;
}

bool FgAbGroup::isomorphicTo(const FgAbGroup& other) const {
    return freeRank_ == other.freeRank_ && invariantFactors_ == other.invariantFactors_;
}

std::string FgAbGroup::normalFormString() const {
    if (isTrivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : invariantFactors_) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    if (freeRank_ > 0) {
        if (!first) os << " + ";
        os << "Z";
        if (freeRank_ > 1) os << "^" << freeRank_;
    }
    return os.str();
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_->numGenerators() || matrix_.cols() != source_->numGenerators())
        throw ShapeMismatch("hom matrix shape does not match generator counts");
}

GroupHom GroupHom::identity(const GroupPtr& g) {
    return GroupHom(g, g, IntMatrix::identity(g->numGenerators()));
}

GroupHom GroupHom::zero(GroupPtr source, GroupPtr target) {
    IntMatrix m(target->numGenerators(), source->numGenerators());
    return GroupHom(std::move(source), std::move(target), std::move(m));
}

GroupHom GroupHom::multiplication(const GroupPtr& g, const Int& n) {
    IntMatrix m = IntMatrix::identity(g->numGenerators());
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, i) = n;
    return GroupHom(g, g, std::move(m));
}

bool GroupHom::wellDefined() const {
    for (std::size_t r = 0; r < source_->relations().rows(); ++r)
        if (!target_->inRelationLattice(matrix_ * source_->relations().row(r))) return false;
    return true;
}

void GroupHom::requireWellDefined() const {
    if (!wellDefined()) throw IllFormedHom("matrix does not respect the source relations");
}

bool GroupHom::isZeroMap() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (!target_->isZeroElement(matrix_.col(j))) return false;
    return true;
}

bool GroupHom::isInjective() const { return kernel(*this).group->isTrivial(); }

bool GroupHom::isSurjective() const { return cokernel(*this).group->isTrivial(); }

bool GroupHom::equalTo(const GroupHom& other) const {
    if (source_->numGenerators() != other.source_->numGenerators() ||
        target_->numGenerators() != other.target_->numGenerators())
        return false;
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (!target_->elementsEqual(matrix_.col(j), other.matrix_.col(j))) return false;
    return true;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

GroupHom addHoms(const GroupHom& f, const GroupHom& g) {
    return GroupHom(f.source(), f.target(), addMatrices(f.matrix(), g.matrix()));
}

SubgroupPair kernel(const GroupHom& h) {
    const auto& src = h.source();
    const auto& dst = h.target();
    // Lattice of x in Z^gs with h(x) inside the target relation lattice.
    IntMatrix gensMat =
        kernelModuloLattice(h.matrix(), dst->relations(), src->numGenerators());
    // Relations among those generators: combinations landing in the source lattice.
    IntMatrix relT =
        kernelModuloLattice(gensMat, src->relations(), gensMat.cols());
    auto group = FgAbGroup::make(gensMat.cols(), relT.transposed());
    return SubgroupPair(group, GroupHom(group, src, gensMat));
}

SubgroupPair cokernel(const GroupHom& h) {
    const auto& dst = h.target();
    IntMatrix rel = dst->relations().vstack(h.matrix().transposed());
    auto group = FgAbGroup::make(dst->numGenerators(), std::move(rel));
    return SubgroupPair(group,
                        GroupHom(dst, group, IntMatrix::identity(dst->numGenerators())));
}

bool inImage(const GroupHom& h, const IntVec& v) { return preimage(h, v).has_value(); }

std::optional<IntVec> preimage(const GroupHom& h, const IntVec& v) {
    IntMatrix augmented = h.matrix().hstack(h.target()->relations().transposed());
    auto sol = solveLinear(augmented, v);
    if (!sol) return std::nullopt;
    return IntVec(sol->begin(), sol->begin() + h.source()->numGenerators());
}

GroupPtr tensorZn(const GroupPtr& g, const Int& n) {
    if (n < 2) throw BadModulus("modulus must be >= 2");
    IntMatrix extra(g->numGenerators(), g->numGenerators());
    for (std::size_t i = 0; i < g->numGenerators(); ++i) extra.at(i, i) = n;
    return FgAbGroup::make(g->numGenerators(), g->relations().vstack(extra));
}

GroupHom tensorReduction(const GroupPtr& g, const GroupPtr& tensored) {
    return GroupHom(g, tensored, IntMatrix::identity(g->numGenerators()));
}

SubgroupPair torZn(const GroupPtr& g, const Int& n) {
    if (n < 2) throw BadModulus("modulus must be >= 2");
    return kernel(GroupHom::multiplication(g, n));
}

GroupHom inducedOnSubgroup(const GroupHom& f, const SubgroupPair& srcSub,
                           const SubgroupPair& dstSub) {
    const IntMatrix& inclDst = dstSub.map.matrix();
    IntMatrix augmented = inclDst.hstack(f.target()->relations().transposed());
    SmithForm snf = smithNormalForm(augmented);
    IntMatrix m(dstSub.group->numGenerators(), srcSub.group->numGenerators());
    for (std::size_t j = 0; j < srcSub.group->numGenerators(); ++j) {
        IntVec w = f.matrix() * srcSub.map.matrix().col(j);
        auto sol = solveLinear(snf, w);
        if (!sol) throw IllFormedHom("map does not restrict to the subgroup");
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = (*sol)[i];
    }
    GroupHom result(srcSub.group, dstSub.group, std::move(m));
    result.requireWellDefined();
    return result;
}

GrothendieckGroup grothendieckOfPresentation(std::size_t numGenerators, IntMatrix relations) {
    return GrothendieckGroup{FgAbGroup::make(numGenerators, std::move(relations))};
}

}  // namespace cuntz
