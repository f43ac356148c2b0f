#pragma once

#include "cuntz/cu.hpp"

namespace cuntz {

struct StageMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncompatibleCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sequential diagram S_1 -> S_2 -> ... in the Cu~ category: an explicit
/// prefix of stages and connecting maps plus a tail rule that extends the
/// diagram lazily past the prefix.
class Diagram {
public:
    enum class Tail { Identity, Coordinate };

    static Diagram identityExtended(std::vector<CuPtr> stages, std::vector<CuMap> maps);
    static Diagram constant(CuPtr s);
    /// The frozen-coordinates diagram: stage i is coordStage(i), connecting
    /// maps append zero coordinates.
    static Diagram coordinate();

    std::size_t prefixLength() const { return stages_.size(); }
    CuPtr stage(std::size_t i) const;            // 1-based
    CuMap step(std::size_t i) const;             // beta_{i,i+1}
    CuMap between(std::size_t i, std::size_t j) const;  // composite, i <= j
    CuElem push(std::size_t i, std::size_t j, const CuElem& e) const;

private:
    std::vector<CuPtr> stages_;
    std::vector<CuMap> maps_;
    Tail tail_ = Tail::Identity;
};

/// Eventually-increasing sequence: zero before `start`, the listed entries
/// from `start` on, then either push-forward of the last entry or a
/// generator program for the tail.
struct EvSeq {
    std::size_t start = 1;
    std::vector<CuElem> entries;
    std::function<CuElem(const Diagram&, std::size_t)> tailGen;  // may be empty

    std::size_t explicitEnd() const { return start + entries.size(); }  // exclusive
    CuElem at(const Diagram& d, std::size_t i) const;

    static EvSeq constantFrom(std::size_t i, CuElem e) { return {i, {std::move(e)}, {}}; }
};

/// Checks beta_{ij}(s_i) <= s_j for all start <= i < j <= depth; returns a
/// witnessed False on the first violated pair.
struct IncreasingReport {
    Decision decision;
    std::string witness;
};
IncreasingReport isEventuallyIncreasing(const Diagram& d, const EvSeq& f,
                                        std::size_t depth = 64);

/// The pre-order on eventually-increasing sequences: every canonical
/// way-below approximant of a tail entry of f is eventually way-below the
/// entries of g.
Decision seqLeq(const Diagram& d, const EvSeq& f, const EvSeq& g, std::size_t depth = 64);
bool seqEquiv(const Diagram& d, const EvSeq& f, const EvSeq& g, std::size_t depth = 64);

/// Replaces f by an equivalent eventually-way-below-increasing sequence
/// (the diagonal over canonical approximant chains).
EvSeq rapidize(const Diagram& d, const EvSeq& f, std::size_t depth = 64);

/// Staircase supremum of an increasing list of classes; `divergent` marks a
/// list that keeps growing past its end (like CuChain::divergent).
EvSeq supOfClasses(const Diagram& d, const std::vector<EvSeq>& classes, bool divergent,
                   std::size_t depth = 64);

EvSeq embedStage(const Diagram& d, std::size_t i, const CuElem& s);

EvSeq addSeqs(const Diagram& d, const EvSeq& f, const EvSeq& g);

/// The inductive limit presented on classes of eventually-increasing
/// sequences.
class LimitObject {
public:
    explicit LimitObject(Diagram d, std::size_t depth = 64)
        : d_(std::move(d)), depth_(depth) {}

    const Diagram& diagram() const { return d_; }
    EvSeq zero() const { return embedStage(d_, 1, d_.stage(1)->zero()); }
    EvSeq add(const EvSeq& f, const EvSeq& g) const { return addSeqs(d_, f, g); }
    Decision leq(const EvSeq& f, const EvSeq& g) const { return seqLeq(d_, f, g, depth_); }
    bool equal(const EvSeq& f, const EvSeq& g) const { return seqEquiv(d_, f, g, depth_); }
    Decision wayBelow(const EvSeq& f, const EvSeq& g) const;
    EvSeq supChain(const std::vector<EvSeq>& classes, bool divergent) const {
        return supOfClasses(d_, classes, divergent, depth_);
    }

    /// For identity-extended diagrams: the stable value of a class in the
    /// final prefix stage.
    CuElem stableValue(const EvSeq& f) const;

private:
    Diagram d_;
    std::size_t depth_;
};

/// Compatible cone over a diagram with apex T: per-stage Cu~-morphisms into T.
struct Cone {
    CuPtr apex;
    std::function<CuMap(std::size_t)> psi;  // 1-based stage index
};

/// Verifies psi_{i+1} o beta_{i,i+1} = psi_i on sampled elements.
void requireConeCompatible(const Diagram& d, const Cone& cone, std::size_t depth = 16,
                           std::size_t stagesToCheck = 8);

/// The universal map omega([s]) = sup_i psi_i(s_i), evaluated in the apex.
CuElem universalMap(const Diagram& d, const Cone& cone, const EvSeq& f,
                    std::size_t depth = 64);

}  // namespace cuntz
