#include "cuntz/limits.hpp"

#include <algorithm>
#include <sstream>

namespace cuntz {

Diagram Diagram::identityExtended(std::vector<CuPtr> stages, std::vector<CuMap> maps) {
    if (stages.empty()) throw StageMismatch("diagram needs at least one stage");
    if (maps.size() + 1 != stages.size())
        throw StageMismatch("diagram needs one connecting map per adjacent stage pair");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (maps[i].source != stages[i] || maps[i].target != stages[i + 1])
            throw StageMismatch("connecting map endpoints do not match stages");
    }
    Diagram d;
    d.stages_ = std::move(stages);
    d.maps_ = std::move(maps);
    d.tail_ = Tail::Identity;
    return d;
}

Diagram Diagram::constant(CuPtr s) { return identityExtended({std::move(s)}, {}); }

Diagram Diagram::coordinate() {
    Diagram d;
    d.stages_ = {CuObject::coordStage(1)};
    d.tail_ = Tail::Coordinate;
    return d;
}

CuPtr Diagram::stage(std::size_t i) const {
    if (i == 0) throw StageMismatch("stage indices start at 1");
    if (i <= stages_.size()) return stages_[i - 1];
    if (tail_ == Tail::Identity) return stages_.back();
    return CuObject::coordStage(i);
}

CuMap Diagram::step(std::size_t i) const {
    if (i == 0) throw StageMismatch("stage indices start at 1");
    if (i < stages_.size()) return maps_[i - 1];
    if (tail_ == Tail::Identity) return CuMap::identity(stages_.back());
    return CuMap::coordAppend(stage(i), stage(i + 1));
}

CuMap Diagram::between(std::size_t i, std::size_t j) const {
    if (i > j) throw StageMismatch("composite maps run forward only");
    CuMap acc = CuMap::identity(stage(i));
    for (std::size_t k = i; k < j; ++k) acc = composeMaps(step(k), acc);
    return acc;
}

CuElem Diagram::push(std::size_t i, std::size_t j, const CuElem& e) const {
    if (i > j) throw StageMismatch("composite maps run forward only");
    CuElem cur = e;
    for (std::size_t k = i; k < j; ++k) cur = step(k)(cur);
    return cur;
}

CuElem EvSeq::at(const Diagram& d, std::size_t i) const {
    if (i == 0) throw StageMismatch("stage indices start at 1");
    if (i < start) return d.stage(i)->zero();
    std::size_t off = i - start;
    if (off < entries.size()) return entries[off];
    if (tailGen) return tailGen(d, i);
    if (entries.empty()) return d.stage(i)->zero();
    return d.push(explicitEnd() - 1, i, entries.back());
}

IncreasingReport isEventuallyIncreasing(const Diagram& d, const EvSeq& f,
                                        std::size_t depth) {
    std::size_t hi = std::max(f.explicitEnd() + 2, f.start + 2);
    hi = std::min(hi, f.start + depth);
    for (std::size_t i = f.start; i + 1 < hi; ++i) {
        CuElem cur = f.at(d, i);
        CuElem nxt = f.at(d, i + 1);
        Decision ok = d.stage(i + 1)->leq(d.step(i)(cur), nxt, depth);
        if (ok.isTrue()) continue;
        std::ostringstream why;
        why << "beta(s_" << i << ") = " << d.stage(i + 1)->show(d.step(i)(cur))
            << " vs s_" << (i + 1) << " = " << d.stage(i + 1)->show(nxt);
        return {ok.isFalse() ? Decision::no() : Decision::unknown(), why.str()};
    }
    return {Decision::yes(), ""};
}

namespace {

// The tail window where both sequences have entered their rule-generated
// (hence regular) regime.
std::size_t tailStart(const EvSeq& f, const EvSeq& g, std::size_t depth) {
    std::size_t k = std::max({f.start, f.explicitEnd(), g.start, g.explicitEnd()});
    if (k + 4 > depth) k = depth > 4 ? depth - 4 : 1;
    return std::max<std::size_t>(k, 1);
}

}  // namespace

Decision seqLeq(const Diagram& d, const EvSeq& f, const EvSeq& g, std::size_t depth) {
    std::size_t k = tailStart(f, g, depth);
    std::size_t hi = std::min(depth, k + 8);
    for (std::size_t i = k; i < hi; ++i) {
        CuElem si = f.at(d, i);
        // Approximants reach half the depth bound so the j-search below has
        // room to find their witnesses; probing only shallow approximants
        // would let a bounded candidate spuriously dominate a divergent one.
        CuChain approx = d.stage(i)->approxChain(si, std::max<std::size_t>(depth / 2, 1));
        std::vector<CuElem> xs;
        std::size_t n = approx.entries.size();
        for (std::size_t t = 0; t < 6; ++t)
            xs.push_back(approx.entries[std::min(n - 1, t * std::max<std::size_t>(n / 5, 1))]);
        xs.push_back(approx.entries.back());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (const CuElem& x : xs) {
            bool found = false;
            CuElem pushed = x;
            for (std::size_t j = i; j <= depth; ++j) {
                if (j > i) pushed = d.step(j - 1)(pushed);
                if (d.stage(j)->wayBelow(pushed, g.at(d, j), depth).isTrue()) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                // Past-depth witnesses could only exist while either tail is
                // still developing; rule-generated tails are stationary or
                // monotone, so deep failure is conclusive.
                return depth >= hi + 8 ? Decision::no() : Decision::unknown();
            }
        }
    }
    return Decision::yes();
}

bool seqEquiv(const Diagram& d, const EvSeq& f, const EvSeq& g, std::size_t depth) {
    return seqLeq(d, f, g, depth).isTrue() && seqLeq(d, g, f, depth).isTrue();
}

EvSeq rapidize(const Diagram& d, const EvSeq& f, std::size_t depth) {
    EvSeq g;
    g.start = f.start;
    std::size_t explicitLen = std::min<std::size_t>(depth / 2 + 1, depth);
    for (std::size_t off = 0; off < explicitLen; ++off) {
        std::size_t i = f.start + off;
        CuChain a = d.stage(i)->approxChain(f.at(d, i), off + 1);
        g.entries.push_back(a.entries[std::min(off, a.entries.size() - 1)]);
    }
    std::size_t fStart = f.start;
    g.tailGen = [fStart, f](const Diagram& dd, std::size_t i) {
        std::size_t off = i - fStart;
        CuChain a = dd.stage(i)->approxChain(f.at(dd, i), off + 1);
        return a.entries[std::min(off, a.entries.size() - 1)];
    };
    return g;
}

EvSeq embedStage(const Diagram& d, std::size_t i, const CuElem& s) {
    d.stage(i)->requireElem(s);
    return EvSeq::constantFrom(i, s);
}

EvSeq addSeqs(const Diagram& d, const EvSeq& f, const EvSeq& g) {
    EvSeq h;
    h.start = std::min(f.start, g.start);
    std::size_t end = std::max(f.explicitEnd(), g.explicitEnd());
    for (std::size_t i = h.start; i < end; ++i)
        h.entries.push_back(d.stage(i)->add(f.at(d, i), g.at(d, i)));
    if (f.tailGen || g.tailGen) {
        h.tailGen = [f, g](const Diagram& dd, std::size_t i) {
            return dd.stage(i)->add(f.at(dd, i), g.at(dd, i));
        };
    }
    return h;
}

EvSeq supOfClasses(const Diagram& d, const std::vector<EvSeq>& classes, bool divergent,
                   std::size_t depth) {
    if (classes.empty()) throw StageMismatch("supremum of an empty class list");
    if (classes.size() == 1 && !divergent) return classes.front();

    EvSeq s;
    s.start = classes.front().start;
    for (const EvSeq& c : classes) s.start = std::min(s.start, c.start);
    std::size_t explicitLen = std::min<std::size_t>(depth / 2 + 1, depth);

    // Greedy staircase: advance to the next class at the least index where
    // the pushed staircase value fits under it.
    std::size_t m = 0;
    for (std::size_t off = 0; off < explicitLen; ++off) {
        std::size_t j = s.start + off;
        while (m + 1 < classes.size()) {
            CuElem cand = classes[m + 1].at(d, j);
            bool fits = off == 0
                ? d.stage(j)->leq(classes[m].at(d, j), cand, depth).isTrue()
                : d.stage(j)->leq(d.step(j - 1)(s.entries.back()), cand, depth).isTrue();
            if (fits) ++m; else break;
        }
        s.entries.push_back(classes[m].at(d, j));
    }
    if (divergent) {
        // A list that keeps growing past its end: the stage-level supremum of
        // the pushed column continues the staircase.
        auto cls = classes;
        s.tailGen = [cls](const Diagram& dd, std::size_t j) {
            CuChain col;
            for (const EvSeq& c : cls) col.entries.push_back(c.at(dd, j));
            col.divergent = true;
            return dd.stage(j)->supChain(col);
        };
    } else if (classes.back().tailGen) {
        auto last = classes.back();
        s.tailGen = [last](const Diagram& dd, std::size_t j) { return last.at(dd, j); };
    }
    return s;
}

Decision LimitObject::wayBelow(const EvSeq& f, const EvSeq& g) const {
    // f << g iff f factors under a compactly-supported approximant of g:
    // some canonical x << g_i at a single stage already dominates f.
    std::size_t k = std::max(g.start, g.explicitEnd());
    if (k + 2 > depth_) k = depth_ > 2 ? depth_ - 2 : 1;
    bool sawUndecided = false;
    for (std::size_t i = k; i < std::min(depth_, k + 6); ++i) {
        CuChain a = d_.stage(i)->approxChain(g.at(d_, i), 6);
        for (auto it = a.entries.rbegin(); it != a.entries.rend(); ++it) {
            Decision under = seqLeq(d_, f, embedStage(d_, i, *it), depth_);
            if (under.isTrue()) return Decision::yes();
            if (under.isUndecided()) sawUndecided = true;
        }
    }
    return sawUndecided ? Decision::unknown() : Decision::no();
}

CuElem LimitObject::stableValue(const EvSeq& f) const {
    std::size_t i = std::max({f.explicitEnd(), f.start + 1, d_.prefixLength()});
    return f.at(d_, i);
}

void requireConeCompatible(const Diagram& d, const Cone& cone, std::size_t depth,
                           std::size_t stagesToCheck) {
    for (std::size_t i = 1; i <= stagesToCheck; ++i) {
        CuMap lo = cone.psi(i);
        CuMap hi = cone.psi(i + 1);
        if (lo.source != d.stage(i) || lo.target != cone.apex)
            throw IncompatibleCone("cone leg endpoints do not match");
        for (const CuElem& x : d.stage(i)->sample(32)) {
            CuElem viaStep = hi(d.step(i)(x));
            if (!cone.apex->equal(lo(x), viaStep, depth))
                throw IncompatibleCone("cone legs do not commute with a connecting map");
        }
    }
}

CuElem universalMap(const Diagram& d, const Cone& cone, const EvSeq& f,
                    std::size_t depth) {
    std::size_t k = std::max(f.start, std::size_t{1});
    CuChain chain;
    for (std::size_t i = k; i <= std::max(k + 2, depth); ++i)
        chain.entries.push_back(cone.psi(i)(f.at(d, i)));
    // Entries before the sequence becomes increasing cannot affect the
    // supremum of an eventually-increasing image; drop them.
    std::size_t drop = 0;
    for (std::size_t t = 0; t + 1 < chain.entries.size(); ++t) {
        if (!cone.apex->leq(chain.entries[t], chain.entries[t + 1], depth).isTrue())
            drop = t + 1;
    }
    chain.entries.erase(chain.entries.begin(), chain.entries.begin() + drop);
    if (chain.entries.size() >= 2 &&
        !cone.apex->equal(chain.entries[chain.entries.size() - 2], chain.entries.back()))
        chain.divergent = true;
    return cone.apex->supChain(chain, depth);
}

}  // namespace cuntz
