#include "cuntz/total.hpp"

#include <algorithm>
#include <sstream>

namespace cuntz {

namespace {

std::string vecStr(const IntVec& v) {
    if (v.size() == 1) return v[0].str();
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

IntVec negVec(const IntVec& v) {
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

/// Elements of a group, clamping free coordinates to [-freeBound, freeBound]
/// when the group is infinite.
std::vector<IntVec> groupElements(const FgAbGroup& g, const Int& freeBound,
                                  bool* exhaustive) {
    if (g.isFinite()) return g.elements();
    if (exhaustive) *exhaustive = false;
    std::vector<IntVec> canon;
    canon.push_back(IntVec{});
    const auto& factors = g.invariantFactors();
    for (const Int& d : factors) {
        std::vector<IntVec> next;
        for (const IntVec& c : canon)
            for (Int v = 0; v < d; ++v) {
                IntVec cc = c;
                cc.push_back(v);
                next.push_back(std::move(cc));
            }
        canon = std::move(next);
    }
    for (std::size_t r = 0; r < g.freeRank(); ++r) {
        std::vector<IntVec> next;
        for (const IntVec& c : canon)
            for (Int v = -freeBound; v <= freeBound; ++v) {
                IntVec cc = c;
                cc.push_back(v);
                next.push_back(std::move(cc));
            }
        canon = std::move(next);
    }
    std::vector<IntVec> out;
    for (const IntVec& c : canon) out.push_back(g.fromCanonical(c));
    return out;
}

std::vector<IntVec> imageElements(const GroupHom& h, const Int& freeBound,
                                  bool* exhaustive) {
    bool srcExhaustive = true;
    std::vector<IntVec> src = groupElements(*h.source(), freeBound, &srcExhaustive);
    if (!srcExhaustive && !h.target()->isFinite() && exhaustive) *exhaustive = false;
    std::vector<IntVec> out;
    for (const IntVec& v : src) {
        IntVec w = h.apply(v);
        bool seen = false;
        for (const IntVec& o : out)
            if (h.target()->elementsEqual(o, w)) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(std::move(w));
    }
    return out;
}

LambdaHom zeroLambdaHom(const TotalK& src, const TotalK& dst) {
    return inducedLambdaHom(GroupHom::zero(src.k[0], dst.k[0]),
                            GroupHom::zero(src.k[1], dst.k[1]), src, dst);
}

}  // namespace

std::size_t AlgebraDescriptor::idealIndexOf(const CuElem& x, std::size_t depth) const {
    CuIdeal ix = idealGenerated(cu, x, depth);
    for (std::size_t j = 0; j < ideals.size(); ++j) {
        CuIdeal ij = idealGenerated(cu, ideals[j].generator, depth);
        if (ix.contains(ideals[j].generator, depth).isTrue() &&
            ij.contains(x, depth).isTrue())
            return j;
    }
    throw ForeignElement("element generates an ideal that is not listed");
}

bool AlgebraDescriptor::idealContained(std::size_t i, std::size_t j,
                                       std::size_t depth) const {
    return idealGenerated(cu, ideals[j].generator, depth)
        .contains(ideals[i].generator, depth)
        .isTrue();
}

std::size_t AlgebraDescriptor::zeroIdeal() const {
    for (std::size_t i = 0; i < ideals.size(); ++i)
        if (cu->equal(ideals[i].generator, cu->zero())) return i;
    throw ForeignElement("no zero ideal listed");
}

std::size_t AlgebraDescriptor::topIdeal() const {
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        bool top = true;
        for (std::size_t j = 0; j < ideals.size() && top; ++j)
            top = idealContained(j, i);
        if (top) return i;
    }
    throw ForeignElement("no top ideal listed");
}

LambdaHom AlgebraDescriptor::deltaBetween(std::size_t i, std::size_t j) const {
    if (i == j) return identityLambdaHom(*ideals[i].k);
    auto it = delta.find({i, j});
    if (it == delta.end()) {
        std::ostringstream why;
        why << "missing delta map for ideal pair (" << i << "," << j << ")";
        throw IncompatibleSquares(why.str());
    }
    return it->second;
}

ValidationReport validateDescriptor(const AlgebraDescriptor& d) {
    ValidationReport rep;
    auto fail = [&](std::string w) {
        rep.pass = false;
        rep.failures.push_back(std::move(w));
    };
    if (!d.cu || d.ideals.empty()) {
        fail("descriptor lacks a cu model or ideal list");
        return rep;
    }
    std::size_t zero = d.ideals.size(), top = d.ideals.size();
    try {
        zero = d.zeroIdeal();
    } catch (const ForeignElement&) {
        fail("no zero ideal listed");
    }
    try {
        top = d.topIdeal();
    } catch (const ForeignElement&) {
        fail("no top ideal listed");
    }
    if (zero < d.ideals.size()) {
        const TotalK& k = *d.ideals[zero].k;
        if (!k.k[0]->isTrivial() || !k.k[1]->isTrivial())
            fail("zero ideal carries nontrivial K-theory");
    }
    for (std::size_t i = 0; i < d.ideals.size(); ++i) {
        if (d.ideals[i].k->support != d.support)
            fail("ideal " + std::to_string(i) + " has mismatched modulus support");
        for (std::size_t j = 0; j < d.ideals.size(); ++j) {
            if (i == j || !d.idealContained(i, j)) continue;
            auto it = d.delta.find({i, j});
            if (it == d.delta.end()) {
                fail("missing delta for comparable pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
                continue;
            }
            CheckReport lin = checkLambdaLinear(it->second);
            if (!lin.pass)
                fail("delta (" + std::to_string(i) + "," + std::to_string(j) +
                     ") not Lambda-linear: " + lin.failure);
        }
    }
    // Functoriality over all composable proper triples.
    for (std::size_t i = 0; i < d.ideals.size(); ++i)
        for (std::size_t j = 0; j < d.ideals.size(); ++j)
            for (std::size_t k = 0; k < d.ideals.size(); ++k) {
                if (i == j || j == k || i == k) continue;
                if (!d.idealContained(i, j) || !d.idealContained(j, k)) continue;
                auto ij = d.delta.find({i, j});
                auto jk = d.delta.find({j, k});
                auto ik = d.delta.find({i, k});
                if (ij == d.delta.end() || jk == d.delta.end() || ik == d.delta.end())
                    continue;
                if (!lambdaHomsEqual(composeLambda(jk->second, ij->second), ik->second))
                    fail("functoriality fails for ideal triple (" + std::to_string(i) +
                         "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
    if (d.unital != d.unit.has_value()) fail("unit present iff flagged unital");
    if (d.unit && top < d.ideals.size()) {
        if (!d.cu->wayBelow(*d.unit, *d.unit).isTrue()) fail("unit is not compact");
        if (d.idealIndexOf(*d.unit) != top) fail("unit fullness");
    }
    if (d.realRankZero && !isAlgebraic(d.cu).isTrue())
        fail("real_rank_zero requires an algebraic cu");
    if (d.cu->kind == CuKind::Finite) {
        IdealLattice lat = idealLattice(d.cu);
        if (lat.members.size() != d.ideals.size())
            fail("ideal list does not match the principal-ideal lattice");
    }
    return rep;
}

TotalCu::TotalCu(std::shared_ptr<const AlgebraDescriptor> d, Mode mode, Variant variant)
    : d_(std::move(d)), mode_(mode), variant_(variant) {}

std::size_t TotalCu::payloadIdeal(const TotalElem& e) const {
    return variant_ == Variant::Image ? d_->topIdeal() : e.ideal;
}

KData TotalCu::kdataZero(std::size_t ideal) const {
    const TotalK& k = *d_->ideals[ideal].k;
    KData out;
    out.u = IntVec(k.k[1]->numGenerators(), 0);
    if (mode_ == Mode::Total)
        for (const Int& p : d_->support)
            out.mods[p] = {IntVec(k.at(0, p).group->numGenerators(), 0),
                           IntVec(k.at(1, p).group->numGenerators(), 0)};
    return out;
}

KData TotalCu::kdataApply(const LambdaHom& h, const KData& k) const {
    KData out;
    out.u = h.f[1].apply(k.u);
    if (mode_ == Mode::Total)
        for (const Int& p : d_->support) {
            const auto& pair = k.mods.at(p);
            out.mods[p] = {h.mod(0, p).apply(pair.first), h.mod(1, p).apply(pair.second)};
        }
    return out;
}

KData TotalCu::kdataAdd(std::size_t /*ideal*/, const KData& a, const KData& b) const {
    KData out;
    out.u = addVec(a.u, b.u);
    if (mode_ == Mode::Total)
        for (const auto& [p, pair] : a.mods)
            out.mods[p] = {addVec(pair.first, b.mods.at(p).first),
                           addVec(pair.second, b.mods.at(p).second)};
    return out;
}

bool TotalCu::kdataEqual(std::size_t ideal, const KData& a, const KData& b) const {
    const TotalK& k = *d_->ideals[ideal].k;
    if (!k.k[1]->elementsEqual(a.u, b.u)) return false;
    if (mode_ == Mode::Total)
        for (const Int& p : d_->support) {
            if (!k.at(0, p).group->elementsEqual(a.mods.at(p).first, b.mods.at(p).first))
                return false;
            if (!k.at(1, p).group->elementsEqual(a.mods.at(p).second, b.mods.at(p).second))
                return false;
        }
    return true;
}

KData TotalCu::pushToTop(const TotalElem& e) const {
    if (variant_ == Variant::Image) return e.k;
    return kdataApply(d_->deltaBetween(e.ideal, d_->topIdeal()), e.k);
}

TotalElem TotalCu::zero() const {
    std::size_t z = d_->zeroIdeal();
    return {z, d_->cu->zero(), kdataZero(variant_ == Variant::Image ? d_->topIdeal() : z)};
}

TotalElem TotalCu::make(const CuElem& x, KData k) const {
    std::size_t i = d_->idealIndexOf(x);
    const TotalK& tk = *d_->ideals[i].k;
    if (k.u.size() != tk.k[1]->numGenerators())
        throw ShapeMismatch("K_1 payload has wrong coordinate count");
    if (mode_ == Mode::K1Only) k.mods.clear();
    if (mode_ == Mode::Total)
        for (const Int& p : d_->support)
            if (!k.mods.count(p)) k.mods[p] = {IntVec(tk.at(0, p).group->numGenerators(), 0),
                                               IntVec(tk.at(1, p).group->numGenerators(), 0)};
    if (variant_ == Variant::Image)
        k = kdataApply(d_->deltaBetween(i, d_->topIdeal()), k);
    return {i, x, std::move(k)};
}

TotalElem TotalCu::unitElem() const {
    if (!d_->unit) throw NotUnital("descriptor has no unit");
    std::size_t i = d_->idealIndexOf(*d_->unit);
    return make(*d_->unit, kdataZero(i));
}

TotalElem TotalCu::add(const TotalElem& a, const TotalElem& b) const {
    CuElem x = d_->cu->add(a.x, b.x);
    std::size_t i = d_->idealIndexOf(x);
    KData k;
    if (variant_ == Variant::Image) {
        k = kdataAdd(d_->topIdeal(), a.k, b.k);
    } else {
        k = kdataAdd(i, kdataApply(d_->deltaBetween(a.ideal, i), a.k),
                     kdataApply(d_->deltaBetween(b.ideal, i), b.k));
    }
    return {i, x, std::move(k)};
}

Decision TotalCu::leq(const TotalElem& a, const TotalElem& b) const {
    Decision c = d_->cu->leq(a.x, b.x);
    if (!c.isTrue()) return c;
    if (variant_ == Variant::Image)
        return Decision::of(kdataEqual(d_->topIdeal(), a.k, b.k));
    if (!d_->idealContained(a.ideal, b.ideal)) return Decision::no();
    return Decision::of(
        kdataEqual(b.ideal, kdataApply(d_->deltaBetween(a.ideal, b.ideal), a.k), b.k));
}

bool TotalCu::equal(const TotalElem& a, const TotalElem& b) const {
    return leq(a, b).isTrue() && leq(b, a).isTrue();
}

Decision TotalCu::wayBelow(const TotalElem& a, const TotalElem& b) const {
    Decision c = d_->cu->wayBelow(a.x, b.x);
    if (!c.isTrue()) return c;
    if (variant_ == Variant::Image)
        return Decision::of(kdataEqual(d_->topIdeal(), a.k, b.k));
    if (!d_->idealContained(a.ideal, b.ideal)) return Decision::no();
    return Decision::of(
        kdataEqual(b.ideal, kdataApply(d_->deltaBetween(a.ideal, b.ideal), a.k), b.k));
}

TotalElem TotalCu::supChain(const std::vector<TotalElem>& entries, bool divergent) const {
    if (entries.empty()) return zero();
    CuChain ch;
    for (std::size_t t = 0; t + 1 < entries.size(); ++t)
        if (!leq(entries[t], entries[t + 1]).isTrue())
            throw NotIncreasing("total-Cu chain is not increasing");
    for (const TotalElem& e : entries) ch.entries.push_back(e.x);
    ch.divergent = divergent;
    CuElem sx = d_->cu->supChain(ch);
    std::size_t i = d_->idealIndexOf(sx);
    const TotalElem& last = entries.back();
    KData k = variant_ == Variant::Image
                  ? last.k
                  : kdataApply(d_->deltaBetween(last.ideal, i), last.k);
    return {i, sx, std::move(k)};
}

std::string TotalCu::show(const TotalElem& e) const {
    std::ostringstream out;
    out << "(" << d_->cu->show(e.x) << "; u=" << vecStr(e.k.u);
    for (const auto& [p, pair] : e.k.mods)
        out << "; s_" << p << "=" << vecStr(pair.first) << ",s^" << p << "="
            << vecStr(pair.second);
    out << ")";
    return out.str();
}

TotalCu::Universe TotalCu::elements(const Int& freeBound, std::size_t budget) const {
    Universe uni;
    uni.exhaustive = d_->cu->sampleIsExhaustive();
    std::size_t top = d_->topIdeal();
    for (const CuElem& x : d_->cu->sample(budget)) {
        std::size_t i = d_->idealIndexOf(x);
        const TotalK& tk = *d_->ideals[i].k;
        std::vector<IntVec> us;
        if (variant_ == Variant::Image)
            us = imageElements(d_->deltaBetween(i, top).f[1], freeBound, &uni.exhaustive);
        else
            us = groupElements(*tk.k[1], freeBound, &uni.exhaustive);
        std::vector<KData> fibers;
        for (const IntVec& u : us) {
            KData base;
            base.u = u;
            fibers.push_back(std::move(base));
        }
        if (mode_ == Mode::Total)
            for (const Int& p : d_->support)
                for (int deg = 0; deg < 2; ++deg) {
                    std::vector<IntVec> vals;
                    if (variant_ == Variant::Image)
                        vals = imageElements(d_->deltaBetween(i, top).mod(deg, p),
                                             freeBound, &uni.exhaustive);
                    else
                        vals = tk.at(deg, p).group->elements();
                    std::vector<KData> next;
                    for (const KData& f : fibers)
                        for (const IntVec& v : vals) {
                            KData g = f;
                            if (deg == 0)
                                g.mods[p].first = v;
                            else
                                g.mods[p].second = v;
                            next.push_back(std::move(g));
                        }
                    fibers = std::move(next);
                }
        for (KData& f : fibers) {
            std::size_t payload = variant_ == Variant::Image ? top : i;
            (void)payload;
            uni.elems.push_back({i, x, std::move(f)});
        }
    }
    return uni;
}

TotalCu::Universe TotalCu::compactElements(const Int& freeBound, std::size_t budget) const {
    Universe all = elements(freeBound, budget);
    Universe out;
    out.exhaustive = all.exhaustive;
    for (TotalElem& e : all.elems)
        if (d_->cu->wayBelow(e.x, e.x).isTrue()) out.elems.push_back(std::move(e));
    return out;
}

TotalCu assembleTotalCu(std::shared_ptr<const AlgebraDescriptor> d) {
    return TotalCu(std::move(d), TotalCu::Mode::Total, TotalCu::Variant::Standard);
}
TotalCu assembleCu1(std::shared_ptr<const AlgebraDescriptor> d) {
    return TotalCu(std::move(d), TotalCu::Mode::K1Only, TotalCu::Variant::Standard);
}
TotalCu assembleTotalCuImageVariant(std::shared_ptr<const AlgebraDescriptor> d) {
    return TotalCu(std::move(d), TotalCu::Mode::Total, TotalCu::Variant::Image);
}

namespace {

struct GrBuilt {
    GroupPtr group;
    // Consumes a flat coordinate list (one slot per finite/linear factor).
    std::function<IntVec(const std::vector<Int>&, std::size_t&)> rho;
};

GrBuilt buildGr(const CompactMonoid& m) {
    switch (m.kind) {
        case CompactMonoid::Kind::Finite: {
            std::size_t n = m.table.count;
            std::vector<IntVec> rows;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    IntVec r(n, 0);
                    r[i] += 1;
                    r[j] += 1;
                    r[m.table.add(i, j)] -= 1;
                    rows.push_back(std::move(r));
                }
            IntMatrix rel(rows.size(), n);
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t c = 0; c < n; ++c) rel.at(r, c) = rows[r][c];
            GroupPtr g = grothendieckOfPresentation(n, rel).group;
            return {g, [n](const std::vector<Int>& coords, std::size_t& pos) {
                        IntVec v(n, 0);
                        std::size_t idx = static_cast<std::size_t>(coords[pos++]);
                        v[idx] = 1;
                        return v;
                    }};
        }
        case CompactMonoid::Kind::Linear:
            return {FgAbGroup::freeGroup(1),
                    [](const std::vector<Int>& coords, std::size_t& pos) {
                        return IntVec{coords[pos++]};
                    }};
        case CompactMonoid::Kind::Product: {
            std::vector<GrBuilt> parts;
            std::size_t gens = 0, rels = 0;
            for (const CompactMonoid& f : m.factors) {
                parts.push_back(buildGr(f));
                gens += parts.back().group->numGenerators();
                rels += parts.back().group->relations().rows();
            }
            IntMatrix rel(rels, gens);
            std::size_t ro = 0, co = 0;
            for (const GrBuilt& p : parts) {
                const IntMatrix& r = p.group->relations();
                for (std::size_t i = 0; i < r.rows(); ++i)
                    for (std::size_t j = 0; j < r.cols(); ++j)
                        rel.at(ro + i, co + j) = r.at(i, j);
                ro += r.rows();
                co += r.cols();
            }
            GroupPtr g = FgAbGroup::make(gens, std::move(rel));
            return {g, [parts](const std::vector<Int>& coords, std::size_t& pos) {
                        IntVec v;
                        for (const GrBuilt& p : parts) {
                            IntVec w = p.rho(coords, pos);
                            v.insert(v.end(), w.begin(), w.end());
                        }
                        return v;
                    }};
        }
    }
    throw UnsupportedKind("unreachable");
}

void compactCoords(const CuPtr& cu, const CuElem& e, std::vector<Int>& out) {
    switch (cu->kind) {
        case CuKind::Finite:
            out.push_back(Int(e.idx));
            return;
        case CuKind::Ext:
            if (e.inf) throw NotAlgebraic("infinity is not compact here");
            out.push_back(e.value);
            return;
        case CuKind::Completion:
            if (e.isChain) throw NotAlgebraic("chain class is not compact");
            if (cu->base.kind == CompactMonoid::Kind::Finite)
                out.push_back(Int(e.idx));
            else
                out.push_back(e.value);
            return;
        case CuKind::Tuple:
            for (std::size_t i = 0; i < cu->legs.size(); ++i)
                compactCoords(cu->legs[i], e.parts[i], out);
            return;
        case CuKind::Coord:
            throw UnsupportedKind("coordinate stages have no compact-monoid chart");
    }
    throw UnsupportedKind("unreachable");
}

}  // namespace

CompactsGr grOfCuCompacts(const CuPtr& cu) {
    GrBuilt b = buildGr(cu->compacts());
    return {b.group, [cu, b](const CuElem& e) {
                std::vector<Int> coords;
                compactCoords(cu, e, coords);
                std::size_t pos = 0;
                return b.rho(coords, pos);
            }};
}

ConeSymmetryReport coneSymmetryCheck(const CuPtr& cu, std::size_t budget) {
    CompactsGr cg = grOfCuCompacts(cu);
    std::vector<std::pair<CuElem, IntVec>> vals;
    for (const CuElem& e : cu->sample(budget))
        if (cu->wayBelow(e, e).isTrue()) vals.push_back({e, cg.rho(e)});
    // Smallest witness first: order pairs by total coordinate magnitude.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = 0; b < vals.size(); ++b) pairs.push_back({a, b});
    auto weight = [&](const std::pair<std::size_t, std::size_t>& p) {
        Int w = 0;
        for (const Int& v : vals[p.first].second) w += abs(v);
        for (const Int& v : vals[p.second].second) w += abs(v);
        return w;
    };
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        Int wx = weight(x), wy = weight(y);
        if (wx != wy) return wx < wy;
        // Prefer reporting the positive representative first.
        return cg.group->canonical(vals[x.first].second) >
               cg.group->canonical(vals[y.first].second);
    });
    for (const auto& [a, b] : pairs) {
        const IntVec& va = vals[a].second;
        if (cg.group->isZeroElement(va)) continue;
        if (cg.group->elementsEqual(va, negVec(vals[b].second))) {
            IntVec ca = cg.group->canonical(va);
            return {false, "(" + vecStr(ca) + ", " + vecStr(negVec(ca)) + ")"};
        }
    }
    return {true, ""};
}

namespace {

GroupPtr directSum(const std::vector<GroupPtr>& parts, std::vector<std::size_t>* offsets) {
    std::size_t gens = 0, rels = 0;
    for (const GroupPtr& p : parts) {
        if (offsets) offsets->push_back(gens);
        gens += p->numGenerators();
        rels += p->relations().rows();
    }
    IntMatrix rel(rels, gens);
    std::size_t ro = 0, co = 0;
    for (const GroupPtr& p : parts) {
        const IntMatrix& r = p->relations();
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) rel.at(ro + i, co + j) = r.at(i, j);
        ro += r.rows();
        co += p->numGenerators();
    }
    return FgAbGroup::make(gens, std::move(rel));
}

/// The graded groups of the top ideal in display order: K1, then mod slots.
std::vector<GroupPtr> payloadGroups(const TotalCu& T) {
    const AlgebraDescriptor& d = T.descriptor();
    const TotalK& tk = *d.ideals[d.topIdeal()].k;
    std::vector<GroupPtr> gs = {tk.k[1]};
    if (T.mode() == TotalCu::Mode::Total)
        for (const Int& p : d.support) {
            gs.push_back(tk.at(0, p).group);
            gs.push_back(tk.at(1, p).group);
        }
    return gs;
}

IntVec flattenRest(const TotalCu& T, const KData& k) {
    IntVec out = k.u;
    if (T.mode() == TotalCu::Mode::Total)
        for (const auto& [p, pair] : k.mods) {
            out.insert(out.end(), pair.first.begin(), pair.first.end());
            out.insert(out.end(), pair.second.begin(), pair.second.end());
        }
    return out;
}

bool restEqual(const TotalCu& T, const KData& a, const KData& b) {
    return T.kdataEqual(T.descriptor().topIdeal(), a, b);
}

}  // namespace

AlphaReport alphaMap(const TotalCu& T, const Int& freeBound, std::size_t budget) {
    const AlgebraDescriptor& d = T.descriptor();
    AlphaReport rep;
    CompactsGr cg = grOfCuCompacts(d.cu);
    TotalCu::Universe uni = T.compactElements(freeBound, budget);
    rep.exhaustive = uni.exhaustive;
    rep.domainSize = uni.elems.size();
    std::vector<IntVec> k0s;
    std::vector<KData> rests;
    for (const TotalElem& e : uni.elems) {
        k0s.push_back(cg.rho(e.x));
        rests.push_back(T.pushToTop(e));
    }
    std::size_t cap = uni.elems.size();
    // Additivity on pairs of compacts.
    for (std::size_t a = 0; a < cap && rep.additive; ++a)
        for (std::size_t b = a; b < cap && rep.additive; ++b) {
            TotalElem s = T.add(uni.elems[a], uni.elems[b]);
            if (!cg.group->elementsEqual(cg.rho(s.x), addVec(k0s[a], k0s[b])))
                rep.additive = false;
            if (!restEqual(T, T.pushToTop(s),
                           T.kdataAdd(d.topIdeal(), rests[a], rests[b])))
                rep.additive = false;
        }
    // Injectivity; prefer a witness pair inside one fiber of the cu part.
    rep.injective = Decision::yes();
    for (int sameFiber = 1; sameFiber >= 0 && !rep.injective.isFalse(); --sameFiber)
        for (std::size_t a = 0; a < cap && !rep.injective.isFalse(); ++a)
            for (std::size_t b = a + 1; b < cap; ++b) {
                if (d.cu->equal(uni.elems[a].x, uni.elems[b].x) != (sameFiber == 1))
                    continue;
                if (cg.group->elementsEqual(k0s[a], k0s[b]) &&
                    restEqual(T, rests[a], rests[b]) &&
                    !T.equal(uni.elems[a], uni.elems[b])) {
                    rep.injective = Decision::no();
                    rep.injectivityWitness =
                        T.show(uni.elems[a]) + " vs " + T.show(uni.elems[b]);
                    break;
                }
            }
    // Order: alpha(a) <= alpha(b) iff rho-difference lies in the K0 cone and
    // the graded payloads agree.
    auto k0Leq = [&](const IntVec& x, const IntVec& y) {
        IntVec diff = subVec(y, x);
        if (cg.group->isZeroElement(diff)) return true;
        for (const IntVec& v : k0s)
            if (cg.group->elementsEqual(diff, v)) return true;
        return false;
    };
    rep.orderIso = Decision::yes();
    for (std::size_t a = 0; a < cap && !rep.orderIso.isFalse(); ++a)
        for (std::size_t b = 0; b < cap; ++b) {
            bool lhs = T.leq(uni.elems[a], uni.elems[b]).isTrue();
            bool rhs = k0Leq(k0s[a], k0s[b]) && restEqual(T, rests[a], rests[b]);
            if (lhs != rhs) {
                rep.orderIso = Decision::no();
                rep.orderWitness = T.show(uni.elems[a]) + " vs " + T.show(uni.elems[b]);
                break;
            }
        }
    return rep;
}

GrCompactsResult grCompacts(const TotalCu& T, const Int& freeBound, std::size_t budget) {
    const AlgebraDescriptor& d = T.descriptor();
    if (!isAlgebraic(d.cu).isTrue()) throw NotAlgebraic("cu model is not algebraic");
    if (!d.unit) throw NotUnital("descriptor has no unit");
    GrCompactsResult res;
    CompactsGr cg = grOfCuCompacts(d.cu);
    std::vector<GroupPtr> parts = {cg.group};
    for (const GroupPtr& g : payloadGroups(T)) parts.push_back(g);
    res.gr = directSum(parts, nullptr);
    res.unitClass = cg.rho(*d.unit);
    res.unitClass.resize(res.gr->numGenerators(), 0);
    res.k0Matches = cg.group->isomorphicTo(*d.ideals[d.topIdeal()].k->k[0]);
    res.symmetry = coneSymmetryCheck(d.cu, budget);
    // Cross-check against a raw presentation of the compact monoid when the
    // whole universe is small and exhaustive.
    try {
        MaterializedTotalCu mat = materializeTotalCu(T, 64);
        std::vector<std::size_t> compacts;
        for (std::size_t i = 0; i < mat.elems.size(); ++i)
            if (d.cu->wayBelow(mat.elems[i].x, mat.elems[i].x).isTrue())
                compacts.push_back(i);
        std::vector<IntVec> rows;
        std::size_t n = compacts.size();
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t t = 0; t < n; ++t) pos[compacts[t]] = t;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                std::size_t s = mat.monoid.add(compacts[a], compacts[b]);
                if (!pos.count(s)) continue;
                IntVec r(n, 0);
                r[a] += 1;
                r[b] += 1;
                r[pos[s]] -= 1;
                rows.push_back(std::move(r));
            }
        IntMatrix rel(rows.size(), n);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < n; ++c) rel.at(r, c) = rows[r][c];
        GroupPtr raw = grothendieckOfPresentation(n, rel).group;
        res.presentationVerified = raw->isomorphicTo(*res.gr);
    } catch (const SizeExceeded&) {
        res.presentationVerified = false;
    }
    return res;
}

RecoverReport recoverTotalK(const TotalCu& T, const Int& freeBound, std::size_t budget) {
    const AlgebraDescriptor& d = T.descriptor();
    if (!d.unit || !d.cu->wayBelow(*d.unit, *d.unit).isTrue())
        throw NotInCuU("compact order-unit");
    TotalCu::Universe uni = T.elements(freeBound, budget);
    // Positively directed: every element plus some other is above zero.
    for (const TotalElem& a : uni.elems) {
        bool ok = false;
        for (const TotalElem& p : uni.elems)
            if (T.leq(T.zero(), T.add(a, p)).isTrue()) {
                ok = true;
                break;
            }
        if (!ok) throw NotInCuU("positively directed");
    }
    // rho(S_c) intersect -rho(S_c) = {0} on the total compacts.
    CompactsGr cg = grOfCuCompacts(d.cu);
    TotalCu::Universe comp = T.compactElements(freeBound, budget);
    for (const TotalElem& a : comp.elems)
        for (const TotalElem& b : comp.elems) {
            IntVec va = flattenRest(T, T.pushToTop(a));
            IntVec k0a = cg.rho(a.x);
            IntVec vb = flattenRest(T, T.pushToTop(b));
            IntVec k0b = cg.rho(b.x);
            const TotalK& tk = *d.ideals[d.topIdeal()].k;
            (void)tk;
            bool zeroA = cg.group->isZeroElement(k0a) &&
                         restEqual(T, T.pushToTop(a), T.kdataZero(d.topIdeal()));
            if (zeroA) continue;
            bool negK0 = cg.group->elementsEqual(k0a, negVec(k0b));
            bool negRest = va.size() == vb.size();
            if (negRest) {
                KData sum = T.kdataAdd(d.topIdeal(), T.pushToTop(a), T.pushToTop(b));
                negRest = restEqual(T, sum, T.kdataZero(d.topIdeal()));
            }
            if (negK0 && negRest)
                throw NotInCuU("rho(S_c) intersect -rho(S_c) != {0}: witness " +
                               T.show(a) + ", " + T.show(b));
        }
    // The unit is an order unit for the compacts (in the Grothendieck sense).
    TotalElem u = T.unitElem();
    for (const TotalElem& a : comp.elems) {
        bool ok = false;
        TotalElem power = u;
        for (int n = 1; n <= 8 && !ok; ++n) {
            for (const TotalElem& b : comp.elems)
                if (T.equal(T.add(a, b), power)) {
                    ok = true;
                    break;
                }
            power = T.add(power, u);
        }
        if (!ok && comp.exhaustive) throw NotInCuU("compact order-unit");
    }
    GrCompactsResult gc = grCompacts(T, freeBound, budget);
    RecoverReport rep;
    rep.gr = gc.gr;
    rep.unitClass = gc.unitClass;
    std::vector<GroupPtr> refParts = {d.ideals[d.topIdeal()].k->k[0]};
    for (const GroupPtr& g : payloadGroups(T)) refParts.push_back(g);
    GroupPtr ref = directSum(refParts, nullptr);
    rep.matchesDescriptor = gc.k0Matches && rep.gr->isomorphicTo(*ref);
    if (!gc.symmetry.trivial)
        rep.notes.push_back("cone symmetry witness " + gc.symmetry.witness);
    if (gc.presentationVerified) rep.notes.push_back("presentation cross-check passed");
    return rep;
}

TotalCuMorphism inducedMorphism(const TotalCu& S, const TotalCu& T,
                                const DescriptorMap& phi, std::size_t budget) {
    const AlgebraDescriptor& a = S.descriptor();
    const AlgebraDescriptor& b = T.descriptor();
    MorphismReport cuRep = checkCuMorphism(phi.cuPart, budget);
    if (!cuRep.pass)
        throw IncompatibleSquares("cu part is not a Cu~-morphism: " + cuRep.failure);
    std::vector<std::size_t> img(a.ideals.size());
    for (std::size_t i = 0; i < a.ideals.size(); ++i) {
        img[i] = b.idealIndexOf(phi.cuPart(a.ideals[i].generator));
        auto it = phi.idealHoms.find(i);
        if (it == phi.idealHoms.end())
            throw IncompatibleSquares("missing K-hom for ideal " + std::to_string(i));
        const LambdaHom& h = it->second;
        if (h.source != a.ideals[i].k.get() || h.target != b.ideals[img[i]].k.get())
            throw IncompatibleSquares("K-hom endpoints do not match ideal " +
                                      std::to_string(i));
        CheckReport lin = checkLambdaLinear(h);
        if (!lin.pass)
            throw IncompatibleSquares("K-hom for ideal " + std::to_string(i) +
                                      " is not Lambda-linear: " + lin.failure);
    }
    for (std::size_t i = 0; i < a.ideals.size(); ++i)
        for (std::size_t j = 0; j < a.ideals.size(); ++j) {
            if (i == j || !a.idealContained(i, j)) continue;
            LambdaHom viaTarget =
                composeLambda(b.deltaBetween(img[i], img[j]), phi.idealHoms.at(i));
            LambdaHom viaSource =
                composeLambda(phi.idealHoms.at(j), a.deltaBetween(i, j));
            if (!lambdaHomsEqual(viaTarget, viaSource))
                throw IncompatibleSquares("delta squares fail for ideal pair (" +
                                          std::to_string(i) + "," + std::to_string(j) +
                                          ")");
        }
    TotalCuMorphism m;
    auto homs = phi.idealHoms;
    CuMap cuPart = phi.cuPart;
    const TotalCu* tptr = &T;
    m.fn = [homs, cuPart, tptr](const TotalElem& e) {
        const LambdaHom& h = homs.at(e.ideal);
        return tptr->make(cuPart(e.x), tptr->kdataApply(h, e.k));
    };
    // Sampled preservation checks.
    TotalCu::Universe uni = S.elements(1, 16);
    if (!T.equal(m.fn(S.zero()), T.zero())) m.notes.push_back("zero not preserved");
    std::size_t cap = std::min<std::size_t>(uni.elems.size(), 12);
    for (std::size_t x = 0; x < cap; ++x)
        for (std::size_t y = 0; y < cap; ++y) {
            if (!T.equal(m.fn(S.add(uni.elems[x], uni.elems[y])),
                         T.add(m.fn(uni.elems[x]), m.fn(uni.elems[y]))))
                m.notes.push_back("addition not preserved");
            if (S.leq(uni.elems[x], uni.elems[y]).isTrue() &&
                !T.leq(m.fn(uni.elems[x]), m.fn(uni.elems[y])).isTrue())
                m.notes.push_back("order not preserved");
        }
    return m;
}

PositivityReport checkPositivityEquivalence(const TotalCu& S, const TotalCu& T,
                                            const KTotalHom& phi, const Int& freeBound,
                                            std::size_t budget) {
    const AlgebraDescriptor& a = S.descriptor();
    const AlgebraDescriptor& b = T.descriptor();
    if (!a.realRankZero || !b.realRankZero)
        throw MissingFlags("positivity equivalence requires real_rank_zero flags");
    PositivityReport rep;
    CompactsGr cgA = grOfCuCompacts(a.cu);
    CompactsGr cgB = grOfCuCompacts(b.cu);
    TotalCu::Universe compA = S.compactElements(freeBound, budget);
    TotalCu::Universe compB = T.compactElements(freeBound, budget);
    std::vector<IntVec> coneBk0;
    std::vector<KData> coneBrest;
    for (const TotalElem& e : compB.elems) {
        coneBk0.push_back(cgB.rho(e.x));
        coneBrest.push_back(T.pushToTop(e));
    }
    auto inConeB = [&](const IntVec& k0, const KData& rest) {
        for (std::size_t i = 0; i < coneBk0.size(); ++i)
            if (cgB.group->elementsEqual(coneBk0[i], k0) &&
                restEqual(T, coneBrest[i], rest))
                return true;
        return false;
    };
    // (i): the cone maps into the cone.
    rep.coneToCone = true;
    for (const TotalElem& e : compA.elems) {
        IntVec k0 = phi.k0.apply(cgA.rho(e.x));
        KData rest = T.kdataApply(phi.rest, S.pushToTop(e));
        if (!inConeB(k0, rest)) {
            rep.coneToCone = false;
            rep.notes.push_back("cone image misses cone at " + S.show(e));
            break;
        }
    }
    // (ii a): K0-positivity.
    bool k0Pos = true;
    for (const TotalElem& e : compA.elems) {
        IntVec k0 = phi.k0.apply(cgA.rho(e.x));
        bool found = cgB.group->isZeroElement(k0);
        for (const IntVec& v : coneBk0)
            if (cgB.group->elementsEqual(v, k0)) found = true;
        if (!found) {
            k0Pos = false;
            rep.notes.push_back("K0 positivity fails at " + S.show(e));
            break;
        }
    }
    // (ii b): each ideal's image lands inside some ideal's image.
    bool idealsOk = true;
    for (std::size_t i = 0; i < a.ideals.size() && idealsOk; ++i) {
        LambdaHom intoA = a.deltaBetween(i, a.topIdeal());
        bool placed = false;
        for (std::size_t j = 0; j < b.ideals.size() && !placed; ++j) {
            LambdaHom intoB = b.deltaBetween(j, b.topIdeal());
            bool inside = true;
            bool exh = true;
            for (const IntVec& u : groupElements(*a.ideals[i].k->k[1], freeBound, &exh))
                if (!inImage(intoB.f[1], phi.rest.f[1].apply(intoA.f[1].apply(u))))
                    inside = false;
            if (S.mode() == TotalCu::Mode::Total)
                for (const Int& p : a.support)
                    for (int deg = 0; deg < 2 && inside; ++deg)
                        for (const IntVec& v : a.ideals[i].k->at(deg, p).group->elements())
                            if (!inImage(intoB.mod(deg, p),
                                         phi.rest.mod(deg, p).apply(
                                             intoA.mod(deg, p).apply(v))))
                                inside = false;
            placed = inside;
        }
        if (!placed) {
            idealsOk = false;
            rep.notes.push_back("ideal " + std::to_string(i) +
                                " image fits in no target ideal");
        }
    }
    rep.componentwise = k0Pos && idealsOk;
    rep.agree = rep.coneToCone == rep.componentwise;
    return rep;
}

ExactnessReport checkKPureExactness(const AlgebraDescriptor& d) {
    if (d.quotients.empty())
        throw MissingQuotientData("descriptor has no quotient payloads");
    ExactnessReport rep;
    auto fail = [&](std::string w) {
        rep.pass = false;
        rep.failures.push_back(std::move(w));
    };
    std::size_t top = d.topIdeal();
    for (const auto& [i, q] : d.quotients) {
        LambdaHom into = d.deltaBetween(i, top);
        for (const Int& p : d.support)
            for (int deg = 0; deg < 2; ++deg) {
                std::ostringstream at;
                at << "ideal " << i << ", K_" << deg << "(;Z_" << p << ")";
                const GroupHom& inj = into.mod(deg, p);
                const GroupHom& sur = q.fromTop.mod(deg, p);
                if (!inj.isInjective()) fail(at.str() + ": not injective into K(A)");
                if (!compose(sur, inj).isZeroMap())
                    fail(at.str() + ": composite to the quotient is nonzero");
                SubgroupPair ker = kernel(sur);
                for (std::size_t g = 0; g < ker.group->numGenerators(); ++g) {
                    IntVec e(ker.group->numGenerators(), 0);
                    e[g] = 1;
                    if (!inImage(inj, ker.map.apply(e)))
                        fail(at.str() + ": kernel of the quotient map escapes the ideal");
                }
                if (!sur.isSurjective()) fail(at.str() + ": quotient map not surjective");
            }
    }
    return rep;
}

WeakTotalResult totalWeakCancellation(const TotalCu& T, const Int& freeBound,
                                      std::size_t budget) {
    TotalCu::Universe uni = T.elements(freeBound, budget);
    for (const TotalElem& a : uni.elems)
        for (const TotalElem& b : uni.elems)
            for (const TotalElem& c : uni.elems) {
                if (T.wayBelow(T.add(a, c), T.add(b, c)).isTrue() &&
                    !T.leq(a, b).isTrue())
                    return {Tri::False,
                            T.show(a) + ", " + T.show(b) + ", " + T.show(c)};
            }
    return {uni.exhaustive ? Tri::True : Tri::Undecided, ""};
}

MaterializedTotalCu materializeTotalCu(const TotalCu& T, std::size_t maxSize) {
    TotalCu::Universe uni = T.elements(Int(maxSize), 4 * maxSize);
    if (!uni.exhaustive || uni.elems.size() > maxSize)
        throw SizeExceeded("universe is not a small finite monoid");
    MaterializedTotalCu out;
    out.elems = uni.elems;
    std::size_t n = out.elems.size();
    FiniteMonoid m;
    m.count = n;
    m.addTable.assign(n * n, 0);
    m.leqTable.assign(n * n, 0);
    auto indexOf = [&](const TotalElem& e) {
        for (std::size_t i = 0; i < n; ++i)
            if (T.equal(out.elems[i], e)) return i;
        throw SizeExceeded("universe is not closed under addition");
    };
    out.zeroIdx = indexOf(T.zero());
    m.zeroIdx = out.zeroIdx;
    for (std::size_t i = 0; i < n; ++i) {
        m.labels.push_back(T.show(out.elems[i]));
        for (std::size_t j = 0; j < n; ++j) {
            m.addTable[i * n + j] = indexOf(T.add(out.elems[i], out.elems[j]));
            m.leqTable[i * n + j] = T.leq(out.elems[i], out.elems[j]).isTrue() ? 1 : 0;
        }
    }
    out.monoid = std::move(m);
    if (T.descriptor().unital) out.unitIdx = indexOf(T.unitElem());
    return out;
}

namespace {

/// Bounded compact chart: order plus partial addition within the bound.
struct CompactChart {
    std::size_t n = 0;
    std::vector<char> leq;
    std::vector<std::ptrdiff_t> add;  // -1 = sum escapes the chart
    std::size_t zero = 0;
    std::optional<std::size_t> unit;
    bool exhaustive = false;
    std::vector<std::string> labels;
};

CompactChart chartOf(const TotalCu& T, const Int& bound, std::size_t budget) {
    TotalCu::Universe uni = T.compactElements(bound, budget);
    CompactChart ch;
    // Deterministic order for reproducible (lexicographically least) isos.
    std::vector<std::size_t> order(uni.elems.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::string> shows;
    for (const TotalElem& e : uni.elems) shows.push_back(T.show(e));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return shows[a] < shows[b];
    });
    std::vector<TotalElem> elems;
    for (std::size_t i : order) elems.push_back(uni.elems[i]);
    ch.n = elems.size();
    ch.exhaustive = uni.exhaustive;
    ch.leq.assign(ch.n * ch.n, 0);
    ch.add.assign(ch.n * ch.n, -1);
    for (std::size_t i = 0; i < ch.n; ++i) {
        ch.labels.push_back(T.show(elems[i]));
        if (T.equal(elems[i], T.zero())) ch.zero = i;
        if (T.descriptor().unital && T.equal(elems[i], T.unitElem())) ch.unit = i;
        for (std::size_t j = 0; j < ch.n; ++j) {
            ch.leq[i * ch.n + j] = T.leq(elems[i], elems[j]).isTrue() ? 1 : 0;
            TotalElem s = T.add(elems[i], elems[j]);
            for (std::size_t k = 0; k < ch.n; ++k)
                if (T.equal(s, elems[k])) {
                    ch.add[i * ch.n + j] = static_cast<std::ptrdiff_t>(k);
                    break;
                }
        }
    }
    return ch;
}

CompactChart chartOfMonoid(const FiniteMonoid& m, std::size_t unitIdx) {
    CompactChart ch;
    ch.n = m.count;
    ch.exhaustive = true;
    ch.zero = m.zeroIdx;
    ch.unit = unitIdx;
    ch.leq.assign(ch.n * ch.n, 0);
    ch.add.assign(ch.n * ch.n, -1);
    for (std::size_t i = 0; i < ch.n; ++i) {
        ch.labels.push_back(m.label(i));
        for (std::size_t j = 0; j < ch.n; ++j) {
            ch.leq[i * ch.n + j] = m.leq(i, j) ? 1 : 0;
            ch.add[i * ch.n + j] = static_cast<std::ptrdiff_t>(m.add(i, j));
        }
    }
    return ch;
}

bool chartSearch(const CompactChart& A, const CompactChart& B,
                 std::vector<std::size_t>& out, std::size_t budget) {
    std::size_t n = A.n;
    std::vector<std::size_t> f(n, n);
    std::vector<char> used(n, 0);
    std::size_t nodes = 0;
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (++nodes > budget) throw SizeExceeded("isomorphism search budget exceeded");
        if (i == n) return true;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            if (i == A.zero && cand != B.zero) continue;
            if (A.unit && i == *A.unit && cand != *B.unit) continue;
            bool ok = true;
            for (std::size_t j = 0; j <= i && ok; ++j) {
                if (f[j] == n) continue;
                if (A.leq[i * n + j] != B.leq[cand * n + f[j]]) ok = false;
                if (A.leq[j * n + i] != B.leq[f[j] * n + cand]) ok = false;
                std::ptrdiff_t sa = A.add[i * n + j];
                std::ptrdiff_t sb = B.add[cand * n + f[j]];
                if ((sa < 0) != (sb < 0)) ok = false;
                if (ok && sa >= 0 && f[sa] != n &&
                    f[static_cast<std::size_t>(sa)] != static_cast<std::size_t>(sb))
                    ok = false;
            }
            if (!ok) continue;
            f[i] = cand;
            used[cand] = 1;
            // Re-check sums whose value became determined.
            bool consistent = true;
            for (std::size_t x = 0; x <= i && consistent; ++x)
                for (std::size_t y = 0; y <= i && consistent; ++y) {
                    if (f[x] == n || f[y] == n) continue;
                    std::ptrdiff_t sa = A.add[x * n + y];
                    if (sa >= 0 && f[static_cast<std::size_t>(sa)] != n) {
                        std::ptrdiff_t sb = B.add[f[x] * n + f[y]];
                        if (sb < 0 ||
                            f[static_cast<std::size_t>(sa)] !=
                                static_cast<std::size_t>(sb))
                            consistent = false;
                    }
                }
            if (consistent && go(i + 1)) return true;
            f[i] = n;
            used[cand] = 0;
        }
        return false;
    };
    if (!go(0)) return false;
    out = f;
    return true;
}

IsoResult chartsIsomorphic(const CompactChart& A, const CompactChart& B,
                           std::size_t budget) {
    IsoResult res;
    if (A.n != B.n || A.unit.has_value() != B.unit.has_value()) {
        if (A.exhaustive && B.exhaustive) {
            res.status = IsoResult::Status::NotFound;
            res.detail = "compact charts differ in size";
        } else {
            res.status = IsoResult::Status::Undecided;
            res.detail = "size mismatch within bound";
        }
        return res;
    }
    try {
        std::vector<std::size_t> f;
        if (chartSearch(A, B, f, budget)) {
            res.status = IsoResult::Status::Found;
            res.mapping = std::move(f);
        } else if (A.exhaustive && B.exhaustive) {
            res.status = IsoResult::Status::NotFound;
            res.detail = "exhaustive search found no unit-preserving isomorphism";
        } else {
            res.status = IsoResult::Status::Undecided;
            res.detail = "no isomorphism within bound";
        }
    } catch (const SizeExceeded& e) {
        res.status = IsoResult::Status::Undecided;
        res.detail = e.what();
    }
    return res;
}

}  // namespace

IsoResult totalCuIsomorphic(const TotalCu& S, const TotalCu& T, const Int& bound,
                            std::size_t budget) {
    std::size_t sampleBudget = std::min<std::size_t>(budget, 32);
    return chartsIsomorphic(chartOf(S, bound, sampleBudget),
                            chartOf(T, bound, sampleBudget), budget);
}

IsoResult totalCuIsomorphicToMonoid(const TotalCu& S, const FiniteMonoid& m,
                                    std::size_t unitIdx, std::size_t budget) {
    return chartsIsomorphic(chartOf(S, Int(64), 4 * m.count + 16),
                            chartOfMonoid(m, unitIdx), budget);
}

// ---------------------------------------------------------------------------
// Fixtures.
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<TotalK> makeTotalK(GroupPtr k0, GroupPtr k1, const std::set<Int>& support) {
    return std::make_shared<TotalK>(buildTotalK(std::move(k0), std::move(k1), support));
}

/// Simple descriptor: ideals {0, A} with the given top K-theory.
std::shared_ptr<AlgebraDescriptor> makeSimple(std::string name, CuPtr cu,
                                              CuElem topGen, GroupPtr k0, GroupPtr k1,
                                              const std::set<Int>& support) {
    auto d = std::make_shared<AlgebraDescriptor>();
    d->name = std::move(name);
    d->cu = cu;
    d->support = support;
    auto kZero = makeTotalK(FgAbGroup::trivial(), FgAbGroup::trivial(), support);
    auto kTop = makeTotalK(std::move(k0), std::move(k1), support);
    d->ideals.push_back({cu->zero(), kZero});
    d->ideals.push_back({topGen, kTop});
    d->delta.emplace(std::make_pair<std::size_t, std::size_t>(0, 1),
                     zeroLambdaHom(*kZero, *kTop));
    auto kTrivQuot = makeTotalK(FgAbGroup::trivial(), FgAbGroup::trivial(), support);
    d->quotients.emplace(0, AlgebraDescriptor::QuotientEntry{
                                kTop, identityLambdaHom(*kTop)});
    d->quotients.emplace(1, AlgebraDescriptor::QuotientEntry{
                                kTrivQuot, zeroLambdaHom(*kTop, *kTrivQuot)});
    return d;
}

}  // namespace

std::shared_ptr<const AlgebraDescriptor> fixtureElliottThomsenE() {
    // Cu model: 0 < q < ooq (ideal I_q) and q <= 1 < oo; 1 is full.
    FiniteMonoid m;
    m.count = 5;
    m.zeroIdx = 0;
    m.labels = {"0", "q", "ooq", "1", "oo"};
    auto idx = [](std::size_t i, std::size_t j) { return i * 5 + j; };
    std::vector<std::vector<std::size_t>> add = {
        {0, 1, 2, 3, 4},
        {1, 2, 2, 4, 4},
        {2, 2, 2, 4, 4},
        {3, 4, 4, 4, 4},
        {4, 4, 4, 4, 4},
    };
    m.addTable.assign(25, 0);
    m.leqTable.assign(25, 0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) m.addTable[idx(i, j)] = add[i][j];
    auto setLeq = [&](std::size_t i, std::size_t j) { m.leqTable[idx(i, j)] = 1; };
    for (std::size_t i = 0; i < 5; ++i) {
        setLeq(i, i);
        setLeq(0, i);
        setLeq(i, 4);
    }
    setLeq(1, 2);
    setLeq(1, 3);
    CuPtr cu = CuObject::finite(m);

    std::set<Int> support = {Int(2)};
    auto d = std::make_shared<AlgebraDescriptor>();
    d->name = "elliott_thomsen_E";
    d->cu = cu;
    d->support = support;
    d->unital = true;
    d->unit = cu->finiteElem(3);

    // K(E) from delta_0 = (1,-1,0): K0(E) = ker(delta_0) = Z^2, K1(E) = 0.
    GroupPtr z3 = FgAbGroup::freeGroup(3);
    GroupPtr z1 = FgAbGroup::freeGroup(1);
    IntMatrix d0m(1, 3);
    d0m.at(0, 0) = 1;
    d0m.at(0, 1) = -1;
    d0m.at(0, 2) = 0;
    GroupHom delta0(z3, z1, d0m);
    SubgroupPair ker = kernel(delta0);
    SubgroupPair cok = cokernel(delta0);

    auto kZero = makeTotalK(FgAbGroup::trivial(), FgAbGroup::trivial(), support);
    auto kIq = makeTotalK(FgAbGroup::trivial(), FgAbGroup::freeGroup(1), support);
    auto kTop = makeTotalK(ker.group, cok.group, support);
    d->ideals.push_back({cu->zero(), kZero});
    d->ideals.push_back({cu->finiteElem(1), kIq});
    d->ideals.push_back({cu->finiteElem(3), kTop});
    d->delta.emplace(std::make_pair<std::size_t, std::size_t>(0, 1),
                     zeroLambdaHom(*kZero, *kIq));
    d->delta.emplace(std::make_pair<std::size_t, std::size_t>(0, 2),
                     zeroLambdaHom(*kZero, *kTop));
    d->delta.emplace(std::make_pair<std::size_t, std::size_t>(1, 2),
                     zeroLambdaHom(*kIq, *kTop));

    // Quotient E/I_q has K0 = Z^3 (the delta_0 domain); K0(E) includes as the
    // kernel.
    auto kQuot = makeTotalK(z3, FgAbGroup::trivial(), support);
    LambdaHom toQuot = inducedLambdaHom(
        ker.map, GroupHom::zero(cok.group, FgAbGroup::trivial()), *kTop, *kQuot);
    d->quotients.emplace(1, AlgebraDescriptor::QuotientEntry{kQuot, toQuot});
    auto kQuot0 = kTop;
    d->quotients.emplace(0, AlgebraDescriptor::QuotientEntry{kQuot0,
                                                             identityLambdaHom(*kTop)});
    return d;
}

std::shared_ptr<const AlgebraDescriptor> fixtureEk(std::size_t k) {
    CuPtr cu = CuObject::ek(k);
    auto d = makeSimple("e_" + std::to_string(k), cu, cu->finiteElem(1),
                        FgAbGroup::trivial(), FgAbGroup::trivial(), {});
    d->unital = true;
    d->unit = cu->finiteElem(1);
    d->realRankZero = true;
    return d;
}

std::shared_ptr<const AlgebraDescriptor> fixtureZInfty() {
    CuPtr cu = CuObject::completion(CompactMonoid::linearN());
    auto d = makeSimple("z_infty", cu, cu->compactElem(1), FgAbGroup::freeGroup(1),
                        FgAbGroup::trivial(), {});
    d->unital = true;
    d->unit = cu->compactElem(1);
    d->realRankZero = true;
    d->kPure = true;
    return d;
}

std::shared_ptr<const AlgebraDescriptor> fixtureKPure(std::size_t which) {
    CuPtr cu = CuObject::completion(CompactMonoid::linearN());
    GroupPtr k1;
    std::set<Int> support;
    std::string name = "kpure_rr0_sample_" + std::to_string(which);
    switch (which) {
        case 0:
            k1 = FgAbGroup::cyclicProduct({Int(2)});
            break;
        case 1:
            k1 = FgAbGroup::cyclicProduct({Int(3)});
            break;
        default:
            k1 = FgAbGroup::cyclicProduct({Int(2)});
            support = {Int(2)};
            break;
    }
    auto d = makeSimple(name, cu, cu->compactElem(1), FgAbGroup::freeGroup(1), k1,
                        support);
    d->unital = true;
    d->unit = cu->compactElem(1);
    d->realRankZero = true;
    d->kPure = true;
    return d;
}

std::shared_ptr<const AlgebraDescriptor> fixtureKPureAlt() {
    CuPtr cu = CuObject::completion(CompactMonoid::linearN());
    // Z_2 on two generators with a = b.
    IntMatrix rel(2, 2);
    rel.at(0, 0) = 1;
    rel.at(0, 1) = -1;
    rel.at(1, 0) = 2;
    rel.at(1, 1) = 0;
    GroupPtr k1 = FgAbGroup::make(2, std::move(rel));
    auto d = makeSimple("kpure_rr0_sample_alt", cu, cu->compactElem(1),
                        FgAbGroup::freeGroup(1), k1, {});
    d->unital = true;
    d->unit = cu->compactElem(1);
    d->realRankZero = true;
    d->kPure = true;
    return d;
}

std::shared_ptr<const AlgebraDescriptor> fixtureFiniteSample() {
    CuPtr cu = CuObject::ek(1);
    auto d = makeSimple("finite_sample", cu, cu->finiteElem(1), FgAbGroup::trivial(),
                        FgAbGroup::cyclicProduct({Int(2)}), {});
    d->unital = true;
    d->unit = cu->finiteElem(1);
    d->realRankZero = true;
    d->kPure = true;
    return d;
}

}  // namespace cuntz
