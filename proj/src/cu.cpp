#include "cuntz/cu.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cuntz {

namespace {

Int intMax(const Int& a, const Int& b) { return a < b ? b : a; }

std::string joinViolations(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

}  // namespace

std::string FiniteMonoid::label(std::size_t i) const {
    if (i < labels.size()) return labels[i];
    return "#" + std::to_string(i);
}

std::vector<std::string> FiniteMonoid::validate() const {
    std::vector<std::string> bad;
    if (addTable.size() != count * count || leqTable.size() != count * count) {
        bad.push_back("table sizes do not match element count");
        return bad;
    }
    for (std::size_t v : addTable)
        if (v >= count) {
            bad.push_back("addition table entry out of range");
            return bad;
        }
    for (std::size_t i = 0; i < count; ++i) {
        if (add(zeroIdx, i) != i || add(i, zeroIdx) != i)
            bad.push_back("zero is not neutral at " + label(i));
        if (!leq(i, i)) bad.push_back("order not reflexive at " + label(i));
    }
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            if (add(i, j) != add(j, i))
                bad.push_back("addition not commutative at (" + label(i) + "," + label(j) + ")");
            if (i != j && leq(i, j) && leq(j, i))
                bad.push_back("order not antisymmetric at (" + label(i) + "," + label(j) + ")");
        }
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            for (std::size_t k = 0; k < count; ++k) {
                if (add(add(i, j), k) != add(i, add(j, k))) {
                    bad.push_back("addition not associative");
                    i = j = count - 1;
                    break;
                }
                if (leq(i, j) && leq(j, k) && !leq(i, k)) {
                    bad.push_back("order not transitive");
                    i = j = count - 1;
                    break;
                }
            }
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (leq(i, j))
                for (std::size_t k = 0; k < count; ++k)
                    if (!leq(add(i, k), add(j, k))) {
                        bad.push_back("addition not monotone: " + label(i) + "<=" + label(j) +
                                      " but +" + label(k) + " breaks it");
                        return bad;
                    }
    return bad;
}

FiniteMonoid FiniteMonoid::product(const FiniteMonoid& a, const FiniteMonoid& b) {
    FiniteMonoid p;
    p.count = a.count * b.count;
    p.zeroIdx = a.zeroIdx * b.count + b.zeroIdx;
    p.addTable.resize(p.count * p.count);
    p.leqTable.resize(p.count * p.count);
    p.labels.resize(p.count);
    for (std::size_t i1 = 0; i1 < a.count; ++i1)
        for (std::size_t i2 = 0; i2 < b.count; ++i2) {
            std::size_t i = i1 * b.count + i2;
            p.labels[i] = "(" + a.label(i1) + "," + b.label(i2) + ")";
            for (std::size_t j1 = 0; j1 < a.count; ++j1)
                for (std::size_t j2 = 0; j2 < b.count; ++j2) {
                    std::size_t j = j1 * b.count + j2;
                    p.addTable[i * p.count + j] = a.add(i1, j1) * b.count + b.add(i2, j2);
                    p.leqTable[i * p.count + j] = a.leq(i1, j1) && b.leq(i2, j2);
                }
        }
    return p;
}

FiniteMonoid FiniteMonoid::ek(std::size_t k) {
    FiniteMonoid m;
    m.count = k + 2;  // 0..k and inf
    m.zeroIdx = 0;
    const std::size_t infIdx = k + 1;
    m.addTable.resize(m.count * m.count);
    m.leqTable.resize(m.count * m.count);
    m.labels.resize(m.count);
    for (std::size_t i = 0; i < m.count; ++i)
        m.labels[i] = (i == infIdx) ? "inf" : std::to_string(i);
    for (std::size_t i = 0; i < m.count; ++i)
        for (std::size_t j = 0; j < m.count; ++j) {
            std::size_t s = (i == infIdx || j == infIdx || i + j > k) ? infIdx : i + j;
            m.addTable[i * m.count + j] = s;
            m.leqTable[i * m.count + j] = (j == infIdx) || (i != infIdx && i <= j);
        }
    return m;
}

FiniteMonoid FiniteMonoid::submonoid(std::vector<std::size_t> generators,
                                     std::vector<std::size_t>* originalIndex) const {
    std::set<std::size_t> closure{zeroIdx};
    for (std::size_t g : generators) closure.insert(g);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::size_t> cur(closure.begin(), closure.end());
        for (std::size_t a : cur)
            for (std::size_t b : cur)
                if (closure.insert(add(a, b)).second) grew = true;
    }
    std::vector<std::size_t> elems(closure.begin(), closure.end());
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
    FiniteMonoid m;
    m.count = elems.size();
    m.zeroIdx = pos[zeroIdx];
    m.addTable.resize(m.count * m.count);
    m.leqTable.resize(m.count * m.count);
    m.labels.resize(m.count);
    for (std::size_t i = 0; i < m.count; ++i) {
        m.labels[i] = label(elems[i]);
        for (std::size_t j = 0; j < m.count; ++j) {
            m.addTable[i * m.count + j] = pos[add(elems[i], elems[j])];
            m.leqTable[i * m.count + j] = leq(elems[i], elems[j]);
        }
    }
    if (originalIndex) *originalIndex = elems;
    return m;
}

namespace {

bool isoExtend(const FiniteMonoid& a, const FiniteMonoid& b, std::vector<std::size_t>& img,
               std::vector<char>& used, std::size_t next) {
    if (next == a.count) {
        // full structural check
        for (std::size_t i = 0; i < a.count; ++i)
            for (std::size_t j = 0; j < a.count; ++j)
                if (img[a.add(i, j)] != b.add(img[i], img[j])) return false;
        return true;
    }
    for (std::size_t cand = 0; cand < b.count; ++cand) {
        if (used[cand]) continue;
        if ((next == a.zeroIdx) != (cand == b.zeroIdx)) continue;
        bool ok = true;
        for (std::size_t prev = 0; prev < next && ok; ++prev) {
            if (a.leq(prev, next) != b.leq(img[prev], cand)) ok = false;
            if (a.leq(next, prev) != b.leq(cand, img[prev])) ok = false;
            std::size_t s = a.add(prev, next);
            if (s <= next) {
                std::size_t t = b.add(img[prev], cand);
                if (s == next ? (t != cand) : (t != img[s])) ok = false;
            }
        }
        if (a.leq(next, next) != b.leq(cand, cand)) ok = false;
        if (ok) {
            std::size_t s = a.add(next, next);
            if (s < next && b.add(cand, cand) != img[s]) ok = false;
            if (s == next && b.add(cand, cand) != cand) ok = false;
        }
        if (!ok) continue;
        img[next] = cand;
        used[cand] = 1;
        if (isoExtend(a, b, img, used, next + 1)) return true;
        used[cand] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> monoidIsomorphism(const FiniteMonoid& a,
                                                          const FiniteMonoid& b) {
    if (a.count != b.count) return std::nullopt;
    std::vector<std::size_t> img(a.count, 0);
    std::vector<char> used(a.count, 0);
    if (isoExtend(a, b, img, used, 0)) return img;
    return std::nullopt;
}

CompactMonoid CompactMonoid::finite(FiniteMonoid m) {
    CompactMonoid c;
    c.kind = Kind::Finite;
    c.table = std::move(m);
    return c;
}

CompactMonoid CompactMonoid::product(std::vector<CompactMonoid> fs) {
    CompactMonoid c;
    c.kind = Kind::Product;
    c.factors = std::move(fs);
    return c;
}

// ---------------------------------------------------------------------------
// CuObject constructors

CuPtr CuObject::finite(FiniteMonoid m, bool requireValid) {
    if (requireValid) {
        auto bad = m.validate();
        if (!bad.empty()) throw InvalidMonoid(joinViolations(bad));
    }
    auto s = std::make_shared<CuObject>();
    s->kind = CuKind::Finite;
    s->mon = std::move(m);
    return s;
}

CuPtr CuObject::ek(std::size_t k) { return finite(FiniteMonoid::ek(k)); }

CuPtr CuObject::zExt() {
    auto s = std::make_shared<CuObject>();
    s->kind = CuKind::Ext;
    s->negatives = true;
    return s;
}

CuPtr CuObject::nExt() {
    auto s = std::make_shared<CuObject>();
    s->kind = CuKind::Ext;
    s->negatives = false;
    return s;
}

CuPtr CuObject::directSum(std::vector<CuPtr> parts) {
    auto s = std::make_shared<CuObject>();
    s->kind = CuKind::Tuple;
    s->legs = std::move(parts);
    return s;
}

CuPtr CuObject::coproductSharedZero(std::vector<CuPtr> parts) {
    // In commutative monoids the coproduct is the direct sum.
    return directSum(std::move(parts));
}

CuPtr CuObject::completion(CompactMonoid m) {
    if (m.kind == CompactMonoid::Kind::Product)
        throw UnsupportedKind("completion over product monoids is not supported");
    auto s = std::make_shared<CuObject>();
    s->kind = CuKind::Completion;
    s->base = std::move(m);
    return s;
}

CuPtr CuObject::coordStage(std::size_t d) {
    if (d == 0) throw UnsupportedKind("coordinate stage needs at least one coordinate");
    auto s = std::make_shared<CuObject>();
    s->kind = CuKind::Coord;
    s->dim = d;
    return s;
}

CuPtr cuCompletion(const CompactMonoid& m) { return CuObject::completion(m); }

// ---------------------------------------------------------------------------
// element constructors and validation

CuElem CuObject::zero() const {
    CuElem e;
    switch (kind) {
        case CuKind::Finite: e.idx = mon.zeroIdx; break;
        case CuKind::Ext: break;
        case CuKind::Tuple:
            for (const auto& leg : legs) e.parts.push_back(leg->zero());
            break;
        case CuKind::Completion:
            if (base.kind == CompactMonoid::Kind::Finite) e.idx = base.table.zeroIdx;
            break;
        case CuKind::Coord: e.chainVals.assign(dim, Int(0)); break;
    }
    return e;
}

CuElem CuObject::finiteElem(std::size_t i) const {
    CuElem e;
    e.idx = i;
    return e;
}

CuElem CuObject::extElem(const Int& v) const {
    CuElem e;
    e.value = v;
    return e;
}

CuElem CuObject::extInf() const {
    CuElem e;
    e.inf = true;
    return e;
}

CuElem CuObject::tupleElem(std::vector<CuElem> parts) const {
    CuElem e;
    e.parts = std::move(parts);
    return e;
}

CuElem CuObject::compactElem(const Int& v) const {
    CuElem e;
    e.value = v;
    return e;
}

CuElem CuObject::compactIdx(std::size_t i) const {
    CuElem e;
    e.idx = i;
    return e;
}

CuElem CuObject::chainClass(std::vector<Int> vals, bool arith) const {
    if (kind != CuKind::Completion) throw ForeignElement("chain class outside a completion");
    if (vals.empty()) return zero();
    // a chain that stabilizes is just its top compact element
    bool unbounded = arith && base.kind == CompactMonoid::Kind::Linear && vals.size() >= 2 &&
                     vals.back() > vals[vals.size() - 2];
    if (!unbounded) {
        if (base.kind == CompactMonoid::Kind::Finite)
            return compactIdx(static_cast<std::size_t>(vals.back()));
        return compactElem(vals.back());
    }
    // all unbounded chains in a linear monoid are mutually dominating; use a
    // canonical representative
    CuElem e;
    e.isChain = true;
    e.chainVals = {Int(0), Int(1)};
    e.arith = true;
    return e;
}

CuElem CuObject::coordElem(std::vector<Int> coords, bool firstInf) const {
    if (kind != CuKind::Coord || coords.size() != dim)
        throw ForeignElement("bad coordinate element");
    CuElem e;
    e.chainVals = std::move(coords);
    e.inf = firstInf;
    bool allZero = !firstInf;
    for (const Int& c : e.chainVals)
        if (c != 0) allZero = false;
    if (!allZero && !firstInf && e.chainVals[0] < 1)
        throw ForeignElement("first coordinate must be positive or inf");
    return e;
}

void CuObject::requireElem(const CuElem& e) const {
    switch (kind) {
        case CuKind::Finite:
            if (e.idx >= mon.count) throw ForeignElement("index out of range");
            break;
        case CuKind::Ext:
            if (!e.inf && !negatives && e.value < 0)
                throw ForeignElement("negative value in N u {inf}");
            break;
        case CuKind::Tuple:
            if (e.parts.size() != legs.size()) throw ForeignElement("leg count mismatch");
            for (std::size_t i = 0; i < legs.size(); ++i) legs[i]->requireElem(e.parts[i]);
            break;
        case CuKind::Completion:
            if (e.isChain) {
                if (base.kind != CompactMonoid::Kind::Linear || !e.arith)
                    throw ForeignElement("non-canonical chain class");
            } else if (base.kind == CompactMonoid::Kind::Finite && e.idx >= base.table.count) {
                throw ForeignElement("compact index out of range");
            } else if (base.kind == CompactMonoid::Kind::Linear && !base.negatives &&
                       e.value < 0) {
                throw ForeignElement("negative compact in completion of N");
            }
            break;
        case CuKind::Coord:
            if (e.chainVals.size() != dim) throw ForeignElement("coordinate count mismatch");
            break;
    }
}

// ---------------------------------------------------------------------------
// core operations

namespace {

bool coordIsZero(const CuElem& e) {
    if (e.inf) return false;
    for (const Int& c : e.chainVals)
        if (c != 0) return false;
    return true;
}

bool completionUnbounded(const CuElem& e) { return e.isChain; }

}  // namespace

CuElem CuObject::add(const CuElem& a, const CuElem& b) const {
    requireElem(a);
    requireElem(b);
    switch (kind) {
        case CuKind::Finite: return finiteElem(mon.add(a.idx, b.idx));
        case CuKind::Ext:
            if (a.inf || b.inf) return extInf();
            return extElem(a.value + b.value);
        case CuKind::Tuple: {
            std::vector<CuElem> parts;
            for (std::size_t i = 0; i < legs.size(); ++i)
                parts.push_back(legs[i]->add(a.parts[i], b.parts[i]));
            return tupleElem(std::move(parts));
        }
        case CuKind::Completion:
            if (completionUnbounded(a) || completionUnbounded(b)) {
                CuElem e;
                e.isChain = true;
                e.chainVals = {Int(0), Int(1)};
                e.arith = true;
                return e;
            }
            if (base.kind == CompactMonoid::Kind::Finite)
                return compactIdx(base.table.add(a.idx, b.idx));
            return compactElem(a.value + b.value);
        case CuKind::Coord: {
            CuElem e;
            e.inf = a.inf || b.inf;
            e.chainVals.resize(dim);
            for (std::size_t i = 0; i < dim; ++i) e.chainVals[i] = a.chainVals[i] + b.chainVals[i];
            return e;
        }
    }
    throw UnsupportedKind("unreachable");
}

Decision CuObject::leq(const CuElem& a, const CuElem& b, std::size_t depth) const {
    requireElem(a);
    requireElem(b);
    switch (kind) {
        case CuKind::Finite: return Decision::of(mon.leq(a.idx, b.idx));
        case CuKind::Ext:
            if (b.inf) return Decision::yes();
            if (a.inf) return Decision::no();
            return Decision::of(a.value <= b.value);
        case CuKind::Tuple: {
            bool undecided = false;
            for (std::size_t i = 0; i < legs.size(); ++i) {
                Decision d = legs[i]->leq(a.parts[i], b.parts[i], depth);
                if (d.isFalse()) return Decision::no();
                if (d.isUndecided()) undecided = true;
            }
            return undecided ? Decision::unknown() : Decision::yes();
        }
        case CuKind::Completion:
            if (completionUnbounded(a)) return Decision::of(completionUnbounded(b));
            if (completionUnbounded(b)) return Decision::yes();
            if (base.kind == CompactMonoid::Kind::Finite)
                return Decision::of(base.table.leq(a.idx, b.idx));
            return Decision::of(a.value <= b.value);
        case CuKind::Coord: {
            // first coordinates compare in N u {inf}; the others are frozen
            if (!b.inf) {
                if (a.inf) return Decision::no();
                if (a.chainVals[0] > b.chainVals[0]) return Decision::no();
            }
            for (std::size_t i = 1; i < dim; ++i)
                if (a.chainVals[i] != b.chainVals[i]) return Decision::no();
            return Decision::yes();
        }
    }
    throw UnsupportedKind("unreachable");
}

bool CuObject::equal(const CuElem& a, const CuElem& b, std::size_t depth) const {
    return leq(a, b, depth).isTrue() && leq(b, a, depth).isTrue();
}

Decision CuObject::wayBelow(const CuElem& a, const CuElem& b, std::size_t depth) const {
    switch (kind) {
        case CuKind::Finite:
            // finite posets: all chains stabilize, so everything is compact
            return leq(a, b, depth);
        case CuKind::Ext:
            if (a.inf) return Decision::no();  // witness chain 1,2,3,...
            if (b.inf) return Decision::yes();
            return Decision::of(a.value <= b.value);
        case CuKind::Tuple: {
            bool undecided = false;
            for (std::size_t i = 0; i < legs.size(); ++i) {
                Decision d = legs[i]->wayBelow(a.parts[i], b.parts[i], depth);
                if (d.isFalse()) return Decision::no();
                if (d.isUndecided()) undecided = true;
            }
            return undecided ? Decision::unknown() : Decision::yes();
        }
        case CuKind::Completion:
            if (completionUnbounded(a)) return Decision::no();
            return leq(a, b, depth);
        case CuKind::Coord:
            if (a.inf) return Decision::no();
            return leq(a, b, depth);
    }
    throw UnsupportedKind("unreachable");
}

CuElem CuObject::supChain(const CuChain& chain, std::size_t depth) const {
    if (chain.entries.empty()) throw NotIncreasing("empty chain");
    for (std::size_t i = 0; i + 1 < chain.entries.size(); ++i)
        if (!leq(chain.entries[i], chain.entries[i + 1], depth).isTrue())
            throw NotIncreasing("entry " + std::to_string(i) + " does not precede its successor");
    const CuElem& last = chain.entries.back();
    bool growing = chain.divergent && chain.entries.size() >= 2 &&
                   !equal(chain.entries[chain.entries.size() - 2], last, depth);
    switch (kind) {
        case CuKind::Finite:
            if (growing) throw NotIncreasing("divergent chain in a finite object");
            return last;
        case CuKind::Ext:
            if (growing) return extInf();
            return last;
        case CuKind::Tuple: {
            std::vector<CuElem> parts;
            for (std::size_t i = 0; i < legs.size(); ++i) {
                CuChain legChain;
                for (const auto& e : chain.entries) legChain.entries.push_back(e.parts[i]);
                legChain.divergent = chain.divergent;
                parts.push_back(legs[i]->supChain(legChain, depth));
            }
            return tupleElem(std::move(parts));
        }
        case CuKind::Completion: {
            for (const auto& e : chain.entries)
                if (completionUnbounded(e)) return e;
            if (growing && base.kind == CompactMonoid::Kind::Linear) {
                std::vector<Int> vals;
                for (const auto& e : chain.entries) vals.push_back(e.value);
                return chainClass(std::move(vals), true);
            }
            if (growing) throw NotIncreasing("divergent chain over a finite monoid");
            return last;
        }
        case CuKind::Coord: {
            CuElem sup = last;
            if (growing && !coordIsZero(last)) sup.inf = true;
            return sup;
        }
    }
    throw UnsupportedKind("unreachable");
}

CuChain CuObject::approxChain(const CuElem& e, std::size_t depth) const {
    requireElem(e);
    CuChain c;
    switch (kind) {
        case CuKind::Finite:
            c.entries = {e};
            return c;
        case CuKind::Ext:
            if (!e.inf) {
                c.entries = {e};
                return c;
            }
            for (std::size_t i = 0; i <= depth; ++i) c.entries.push_back(extElem(Int(i)));
            c.divergent = true;
            return c;
        case CuKind::Tuple: {
            std::vector<CuChain> legChains;
            std::size_t len = 1;
            for (std::size_t i = 0; i < legs.size(); ++i) {
                legChains.push_back(legs[i]->approxChain(e.parts[i], depth));
                len = std::max(len, legChains.back().entries.size());
                c.divergent = c.divergent || legChains.back().divergent;
            }
            for (std::size_t n = 0; n < len; ++n) {
                std::vector<CuElem> parts;
                for (auto& lc : legChains)
                    parts.push_back(lc.entries[std::min(n, lc.entries.size() - 1)]);
                c.entries.push_back(tupleElem(std::move(parts)));
            }
            return c;
        }
        case CuKind::Completion:
            if (!completionUnbounded(e)) {
                c.entries = {e};
                return c;
            }
            for (std::size_t i = 0; i <= depth; ++i) c.entries.push_back(compactElem(Int(i)));
            c.divergent = true;
            return c;
        case CuKind::Coord:
            if (!e.inf) {
                c.entries = {e};
                return c;
            }
            for (std::size_t i = 1; i <= depth + 1; ++i) {
                std::vector<Int> coords = e.chainVals;
                coords[0] = Int(i);
                c.entries.push_back(coordElem(std::move(coords)));
            }
            c.divergent = true;
            return c;
    }
    throw UnsupportedKind("unreachable");
}

std::vector<CuElem> CuObject::sample(std::size_t budget) const {
    std::vector<CuElem> out;
    switch (kind) {
        case CuKind::Finite:
            for (std::size_t i = 0; i < mon.count; ++i) out.push_back(finiteElem(i));
            return out;
        case CuKind::Ext: {
            long long bound = 4;
            for (long long v = negatives ? -bound : 0; v <= bound; ++v)
                out.push_back(extElem(Int(v)));
            out.push_back(extInf());
            return out;
        }
        case CuKind::Tuple: {
            std::vector<std::vector<CuElem>> legSamples;
            for (const auto& leg : legs) legSamples.push_back(leg->sample(budget));
            out.push_back(zero());
            std::vector<std::size_t> idx(legs.size(), 0);
            while (out.size() < budget) {
                std::vector<CuElem> parts;
                for (std::size_t i = 0; i < legs.size(); ++i)
                    parts.push_back(legSamples[i][idx[i]]);
                CuElem t = tupleElem(std::move(parts));
                if (!(t == zero())) out.push_back(t);
                std::size_t i = 0;
                for (; i < idx.size(); ++i) {
                    if (++idx[i] < legSamples[i].size()) break;
                    idx[i] = 0;
                }
                if (i == idx.size()) break;
            }
            return out;
        }
        case CuKind::Completion: {
            if (base.kind == CompactMonoid::Kind::Finite) {
                for (std::size_t i = 0; i < base.table.count; ++i) out.push_back(compactIdx(i));
                return out;
            }
            long long bound = 4;
            for (long long v = base.negatives ? -bound : 0; v <= bound; ++v)
                out.push_back(compactElem(Int(v)));
            out.push_back(chainClass({Int(0), Int(1)}, true));
            return out;
        }
        case CuKind::Coord: {
            out.push_back(zero());
            std::vector<std::vector<Int>> tails;
            tails.emplace_back(dim, Int(0));
            for (std::size_t slot = 1; slot < dim; ++slot) {
                std::vector<Int> t(dim, Int(0));
                t[slot] = 1;
                tails.push_back(t);
            }
            for (long long first : {1, 2, 3}) {
                for (const auto& tail : tails) {
                    std::vector<Int> coords = tail;
                    coords[0] = first;
                    out.push_back(coordElem(std::move(coords)));
                    if (out.size() >= budget) return out;
                }
            }
            for (const auto& tail : tails) {
                std::vector<Int> coords = tail;
                coords[0] = 0;
                out.push_back(coordElem(std::move(coords), true));
                if (out.size() >= budget) return out;
            }
            return out;
        }
    }
    throw UnsupportedKind("unreachable");
}

bool CuObject::weaklyCancellativeByConstruction() const {
    switch (kind) {
        case CuKind::Finite: return false;
        case CuKind::Ext: return true;  // finite part cancellative; inf is never compact
        case CuKind::Tuple:
            for (const auto& leg : legs)
                if (!leg->weaklyCancellativeByConstruction()) return false;
            return true;
        case CuKind::Completion: return base.kind == CompactMonoid::Kind::Linear;
        case CuKind::Coord: return true;
    }
    return false;
}

std::string CuObject::show(const CuElem& e) const {
    std::ostringstream os;
    switch (kind) {
        case CuKind::Finite: return mon.label(e.idx);
        case CuKind::Ext:
            if (e.inf) return "inf";
            os << e.value;
            return os.str();
        case CuKind::Tuple: {
            os << "(";
            for (std::size_t i = 0; i < legs.size(); ++i)
                os << (i ? "," : "") << legs[i]->show(e.parts[i]);
            os << ")";
            return os.str();
        }
        case CuKind::Completion:
            if (completionUnbounded(e)) return "[unbounded chain]";
            if (base.kind == CompactMonoid::Kind::Finite) return base.table.label(e.idx);
            os << e.value;
            return os.str();
        case CuKind::Coord: {
            os << "(";
            for (std::size_t i = 0; i < dim; ++i) {
                if (i) os << ",";
                if (i == 0 && e.inf)
                    os << "inf";
                else
                    os << e.chainVals[i];
            }
            os << ")";
            return os.str();
        }
    }
    return "?";
}

CompactMonoid CuObject::compacts() const {
    switch (kind) {
        case CuKind::Finite: return CompactMonoid::finite(mon);
        case CuKind::Ext: return negatives ? CompactMonoid::linearZ() : CompactMonoid::linearN();
        case CuKind::Tuple: {
            std::vector<CompactMonoid> fs;
            bool allFinite = true;
            for (const auto& leg : legs) {
                fs.push_back(leg->compacts());
                allFinite = allFinite && fs.back().kind == CompactMonoid::Kind::Finite;
            }
            if (allFinite) {
                FiniteMonoid p = fs[0].table;
                for (std::size_t i = 1; i < fs.size(); ++i)
                    p = FiniteMonoid::product(p, fs[i].table);
                return CompactMonoid::finite(p);
            }
            return CompactMonoid::product(std::move(fs));
        }
        case CuKind::Completion: return base;
        case CuKind::Coord: throw UnsupportedKind("coordinate stages have no compact monoid");
    }
    throw UnsupportedKind("unreachable");
}

CuElem CuObject::fromCompact(const std::vector<Int>& coords) const {
    switch (kind) {
        case CuKind::Finite: return finiteElem(static_cast<std::size_t>(coords.at(0)));
        case CuKind::Ext: return extElem(coords.at(0));
        case CuKind::Tuple: {
            std::vector<CuElem> parts;
            for (std::size_t i = 0; i < legs.size(); ++i)
                parts.push_back(legs[i]->fromCompact({coords.at(i)}));
            return tupleElem(std::move(parts));
        }
        case CuKind::Completion:
            if (base.kind == CompactMonoid::Kind::Finite)
                return compactIdx(static_cast<std::size_t>(coords.at(0)));
            return compactElem(coords.at(0));
        case CuKind::Coord: throw UnsupportedKind("coordinate stages have no compact monoid");
    }
    throw UnsupportedKind("unreachable");
}

// ---------------------------------------------------------------------------
// checkers

AxiomReport checkAxioms(const CuPtr& s, std::size_t budget, std::size_t depth) {
    auto fail = [&](const std::string& what) { return AxiomReport{false, what}; };
    if (!s->wayBelow(s->zero(), s->zero(), depth).isTrue())
        return fail("0 << 0 does not hold");
    std::vector<CuElem> xs = s->sample(256);

    // (O2): every element is the supremum of its canonical way-below chain
    for (const auto& e : xs) {
        CuChain c = s->approxChain(e, 8);
        for (std::size_t i = 0; i + 1 < c.entries.size(); ++i)
            if (s->wayBelow(c.entries[i], c.entries[i + 1], depth).isFalse())
                return fail("O2: approximant chain of " + s->show(e) +
                            " is not way-below increasing");
        CuElem sup = s->supChain(c, depth);
        if (!s->equal(sup, e, depth))
            return fail("O2: approximant chain of " + s->show(e) + " has supremum " +
                        s->show(sup));
    }

    // (O1): increasing two-step chains have least upper bounds
    std::size_t spent = 0;
    for (const auto& a : xs)
        for (const auto& b : xs) {
            if (spent++ > budget) break;
            if (!s->leq(a, b, depth).isTrue()) continue;
            CuElem sup = s->supChain({{a, b}, false}, depth);
            if (!s->leq(a, sup, depth).isTrue() || !s->leq(b, sup, depth).isTrue())
                return fail("O1: sup of (" + s->show(a) + "," + s->show(b) +
                            ") is not an upper bound");
            for (const auto& u : xs)
                if (s->leq(a, u, depth).isTrue() && s->leq(b, u, depth).isTrue() &&
                    s->leq(sup, u, depth).isFalse())
                    return fail("O1: sup of (" + s->show(a) + "," + s->show(b) +
                                ") is not least (" + s->show(u) + " is smaller)");
        }

    // (O3): way-below is compatible with addition
    std::vector<std::pair<CuElem, CuElem>> wb;
    for (const auto& a : xs)
        for (const auto& b : xs)
            if (s->wayBelow(a, b, depth).isTrue()) {
                wb.emplace_back(a, b);
                if (wb.size() > 64) break;
            }
    spent = 0;
    for (const auto& [a, b] : wb)
        for (const auto& [c, d] : wb) {
            if (spent++ > budget) break;
            if (s->wayBelow(s->add(a, c), s->add(b, d), depth).isFalse())
                return fail("O3: " + s->show(a) + "<<" + s->show(b) + " and " + s->show(c) +
                            "<<" + s->show(d) + " but sums are not way-below");
        }

    // (O4): suprema are compatible with addition
    spent = 0;
    for (const auto& a : xs)
        for (const auto& b : xs) {
            if (spent++ > budget / 4) break;
            CuChain ca = s->approxChain(a, 6), cb = s->approxChain(b, 6);
            CuChain sum;
            std::size_t len = std::max(ca.entries.size(), cb.entries.size());
            for (std::size_t i = 0; i < len; ++i)
                sum.entries.push_back(
                    s->add(ca.entries[std::min(i, ca.entries.size() - 1)],
                           cb.entries[std::min(i, cb.entries.size() - 1)]));
            sum.divergent = ca.divergent || cb.divergent;
            CuElem lhs = s->supChain(sum, depth);
            CuElem rhs = s->add(s->supChain(ca, depth), s->supChain(cb, depth));
            if (!s->equal(lhs, rhs, depth))
                return fail("O4: sup(chain(" + s->show(a) + ")+chain(" + s->show(b) +
                            ")) = " + s->show(lhs) + " but sum of sups = " + s->show(rhs));
        }
    return {};
}

Decision positivelyDirected(const CuPtr& s, std::size_t budget, std::size_t depth) {
    std::vector<CuElem> xs = s->sample(256);
    CuElem zero = s->zero();
    std::size_t spent = 0;
    for (const auto& x : xs) {
        bool found = false;
        for (const auto& p : xs) {
            if (spent++ > budget) return Decision::unknown();
            if (s->leq(zero, s->add(x, p), depth).isTrue()) {
                found = true;
                break;
            }
        }
        if (!found) return s->sampleIsExhaustive() ? Decision::no() : Decision::unknown();
    }
    return Decision::yes();
}

WeakCancelResult weakCancellation(const CuPtr& s, std::size_t budget, std::size_t depth) {
    std::vector<CuElem> xs = s->sample(64);
    std::size_t spent = 0;
    // Scan triples in increasing ball order so the reported witness is the
    // smallest one (no gratuitous top elements in the counterexample).
    for (std::size_t bound = 0; bound < xs.size(); ++bound)
        for (std::size_t i = 0; i <= bound; ++i)
            for (std::size_t j = 0; j <= bound; ++j)
                for (std::size_t k = 0; k <= bound; ++k) {
                    if (std::max({i, j, k}) != bound) continue;
                    if (spent++ > budget)
                        return {Tri::Undecided, {}, {}, {}};
                    const CuElem &x = xs[i], &y = xs[j], &z = xs[k];
                    if (s->wayBelow(s->add(x, z), s->add(y, z), depth).isTrue() &&
                        s->leq(x, y, depth).isFalse())
                        return {Tri::False, x, y, z};
                }
    if (s->sampleIsExhaustive() || s->weaklyCancellativeByConstruction())
        return {Tri::True, {}, {}, {}};
    return {Tri::Undecided, {}, {}, {}};
}

CuElem infinityTimes(const CuPtr& s, const CuElem& x, std::size_t depth) {
    CuChain chain;
    CuElem cur = x;
    chain.entries.push_back(cur);
    std::size_t steps = std::min<std::size_t>(depth, 32);
    for (std::size_t i = 1; i < steps; ++i) {
        CuElem next = s->add(cur, x);
        if (!s->leq(cur, next, depth).isTrue())
            throw NotIncreasing("multiples of " + s->show(x) + " are not increasing");
        chain.entries.push_back(next);
        if (s->equal(cur, next, depth)) break;
        cur = next;
    }
    chain.divergent =
        chain.entries.size() >= 2 &&
        !s->equal(chain.entries[chain.entries.size() - 2], chain.entries.back(), depth);
    return s->supChain(chain, depth);
}

Decision CuIdeal::contains(const CuElem& y, std::size_t depth) const {
    return parent->leq(y, infinity, depth);
}

CuIdeal idealGenerated(const CuPtr& s, const CuElem& x, std::size_t depth) {
    return CuIdeal{s, x, infinityTimes(s, x, depth)};
}

bool IdealLattice::contains(std::size_t i, std::size_t j) const {
    return std::includes(members[j].begin(), members[j].end(), members[i].begin(),
                         members[i].end());
}

std::size_t IdealLattice::join(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < members.size(); ++k)
        if (contains(i, k) && contains(j, k)) {
            bool least = true;
            for (std::size_t l = 0; l < members.size(); ++l)
                if (contains(i, l) && contains(j, l) && !contains(k, l)) least = false;
            if (least) return k;
        }
    throw UnsupportedKind("ideal join missing");
}

std::size_t IdealLattice::meet(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < members.size(); ++k)
        if (contains(k, i) && contains(k, j)) {
            bool greatest = true;
            for (std::size_t l = 0; l < members.size(); ++l)
                if (contains(l, i) && contains(l, j) && !contains(l, k)) greatest = false;
            if (greatest) return k;
        }
    throw UnsupportedKind("ideal meet missing");
}

IdealLattice idealLattice(const CuPtr& s) {
    if (s->kind != CuKind::Finite) throw UnsupportedKind("ideal lattice needs a finite object");
    IdealLattice lat;
    lat.parent = s;
    for (std::size_t i = 0; i < s->mon.count; ++i) {
        CuIdeal ideal = idealGenerated(s, s->finiteElem(i));
        std::vector<std::size_t> set;
        for (std::size_t j = 0; j < s->mon.count; ++j)
            if (ideal.contains(s->finiteElem(j)).isTrue()) set.push_back(j);
        bool seen = false;
        for (const auto& m : lat.members)
            if (m == set) seen = true;
        if (!seen) {
            lat.members.push_back(std::move(set));
            lat.generator.push_back(i);
        }
    }
    return lat;
}

Decision isAlgebraic(const CuPtr& s, std::size_t budget, std::size_t depth) {
    std::vector<CuElem> xs = s->sample(budget);
    for (const auto& e : xs) {
        CuChain c = s->approxChain(e, 8);
        for (const auto& entry : c.entries)
            if (!s->wayBelow(entry, entry, depth).isTrue())
                return s->sampleIsExhaustive() ? Decision::no() : Decision::unknown();
        if (!s->equal(s->supChain(c, depth), e, depth))
            return s->sampleIsExhaustive() ? Decision::no() : Decision::unknown();
    }
    return Decision::yes();
}

// ---------------------------------------------------------------------------
// morphisms

CuMap CuMap::identity(CuPtr s) {
    return CuMap{s, s, [](const CuElem& e) { return e; }};
}

CuMap CuMap::fromTable(CuPtr src, CuPtr dst, std::vector<std::size_t> table) {
    if (src->kind != CuKind::Finite || dst->kind != CuKind::Finite)
        throw UnsupportedKind("table maps need finite objects");
    if (table.size() != src->mon.count) throw UnsupportedKind("table size mismatch");
    auto d = dst;
    return CuMap{src, dst, [d, table = std::move(table)](const CuElem& e) {
                     return d->finiteElem(table[e.idx]);
                 }};
}

CuMap CuMap::coordAppend(CuPtr src, CuPtr dst) {
    if (src->kind != CuKind::Coord || dst->kind != CuKind::Coord || dst->dim < src->dim)
        throw UnsupportedKind("coordinate append needs growing coordinate stages");
    auto d = dst;
    return CuMap{src, dst, [d](const CuElem& e) {
                     std::vector<Int> coords = e.chainVals;
                     coords.resize(d->dim, Int(0));
                     CuElem out;
                     out.chainVals = std::move(coords);
                     out.inf = e.inf;
                     return out;
                 }};
}

CuMap composeMaps(const CuMap& g, const CuMap& f) {
    auto ff = f.fn;
    auto gf = g.fn;
    return CuMap{f.source, g.target, [ff, gf](const CuElem& e) { return gf(ff(e)); }};
}

MorphismReport checkCuMorphism(const CuMap& m, std::size_t budget, std::size_t depth) {
    const auto& S = m.source;
    const auto& T = m.target;
    auto fail = [](const std::string& what) { return MorphismReport{false, what}; };
    if (!T->equal(m(S->zero()), T->zero(), depth)) return fail("zero not preserved");
    std::vector<CuElem> xs = S->sample(32);
    std::size_t spent = 0;
    for (const auto& a : xs) {
        // suprema of canonical chains
        CuChain c = S->approxChain(a, 6);
        CuChain mc;
        for (const auto& e : c.entries) mc.entries.push_back(m(e));
        mc.divergent = c.divergent;
        if (!T->equal(m(S->supChain(c, depth)), T->supChain(mc, depth), depth))
            return fail("supremum of the chain under " + S->show(a) + " not preserved");
        for (const auto& b : xs) {
            if (spent++ > budget) return {};
            if (!T->equal(m(S->add(a, b)), T->add(m(a), m(b)), depth))
                return fail("addition not preserved at (" + S->show(a) + "," + S->show(b) + ")");
            if (S->leq(a, b, depth).isTrue() && T->leq(m(a), m(b), depth).isFalse())
                return fail("order not preserved at (" + S->show(a) + "," + S->show(b) + ")");
            if (S->wayBelow(a, b, depth).isTrue() && T->wayBelow(m(a), m(b), depth).isFalse())
                return fail("way-below not preserved at (" + S->show(a) + "," + S->show(b) + ")");
        }
    }
    return {};
}

}  // namespace cuntz
