#include "cuntz/bockstein.hpp"

#include <sstream>

namespace cuntz {

namespace {

IntMatrix blockDiag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

GroupPtr directSum(const GroupPtr& a, const GroupPtr& b) {
    return FgAbGroup::make(a->numGenerators() + b->numGenerators(),
                           blockDiag(a->relations(), b->relations()));
}

// Does image(f) = kernel(g), for composable homs f: A -> B, g: B -> C?
bool imageEqualsKernel(const GroupHom& f, const GroupHom& g, std::string* why) {
    if (!compose(g, f).isZeroMap()) {
        if (why) *why = "composite is nonzero (image not inside kernel)";
        return false;
    }
    auto ker = kernel(g);
    for (std::size_t j = 0; j < ker.group->numGenerators(); ++j) {
        if (!inImage(f, ker.map.matrix().col(j))) {
            if (why) *why = "kernel generator outside the image";
            return false;
        }
    }
    return true;
}

std::string posName(const char* seq, int i, const Int& n, const std::string& detail) {
    std::ostringstream os;
    os << seq << " at i=" << i << ", n=" << n << ": " << detail;
    return os.str();
}

}  // namespace

const ModSlot& TotalK::at(int i, const Int& n) const {
    auto it = slot[i % 2].find(n);
    if (it == slot[i % 2].end()) throw BadModulus("modulus not in support");
    return it->second;
}

TotalK buildTotalK(GroupPtr k0, GroupPtr k1, const std::set<Int>& support) {
    TotalK t;
    t.k[0] = std::move(k0);
    t.k[1] = std::move(k1);
    t.support = support;
    for (const Int& n : support) {
        if (n < 2) throw BadModulus("support moduli must be >= 2");
        for (int i = 0; i < 2; ++i) {
            GroupPtr tensorPart = tensorZn(t.k[i], n);
            SubgroupPair torPart = torZn(t.k[(i + 1) % 2], n);
            GroupPtr sum = directSum(tensorPart, torPart.group);
            const std::size_t gT = tensorPart->numGenerators();
            const std::size_t gR = torPart.group->numGenerators();
            // rho: identity into the tensor block
            IntMatrix rhoM(gT + gR, t.k[i]->numGenerators());
            for (std::size_t j = 0; j < gT; ++j) rhoM.at(j, j) = 1;
            // beta: zero on the tensor block, torsion inclusion on the rest
            IntMatrix betaM(t.k[(i + 1) % 2]->numGenerators(), gT + gR);
            for (std::size_t r = 0; r < betaM.rows(); ++r)
                for (std::size_t j = 0; j < gR; ++j)
                    betaM.at(r, gT + j) = torPart.map.matrix().at(r, j);
            GroupHom rho(t.k[i], sum, std::move(rhoM));
            GroupHom beta(sum, t.k[(i + 1) % 2], std::move(betaM));
            rho.requireWellDefined();
            beta.requireWellDefined();
            t.slot[i].emplace(n, ModSlot(sum, tensorPart, std::move(torPart),
                                         std::move(rho), std::move(beta)));
        }
    }
    return t;
}

GroupHom TotalK::kappaUp(int i, const Int& m, const Int& mn) const {
    if (mn % m != 0) throw BadModulus("kappa moduli must divide");
    const Int n = mn / m;
    const ModSlot& src = at(i, m);
    const ModSlot& dst = at(i, mn);
    // tensor summand: multiplication by n
    IntMatrix tensorBlock = IntMatrix::identity(src.tensorPart->numGenerators());
    for (std::size_t j = 0; j < tensorBlock.rows(); ++j) tensorBlock.at(j, j) = n;
    // Tor summand: inclusion of m-torsion into mn-torsion
    GroupHom torBlock = inducedOnSubgroup(GroupHom::identity(k[(i + 1) % 2]),
                                          src.torPart, dst.torPart);
    GroupHom result(src.group, dst.group, blockDiag(tensorBlock, torBlock.matrix()));
    result.requireWellDefined();
    return result;
}

GroupHom TotalK::kappaDown(int i, const Int& n, const Int& mn) const {
    if (mn % n != 0) throw BadModulus("kappa moduli must divide");
    const Int m = mn / n;
    const ModSlot& src = at(i, mn);
    const ModSlot& dst = at(i, n);
    // tensor summand: reduction, the identity on generators
    IntMatrix tensorBlock = IntMatrix::identity(src.tensorPart->numGenerators());
    // Tor summand: multiplication by m maps mn-torsion into n-torsion
    GroupHom torBlock = inducedOnSubgroup(GroupHom::multiplication(k[(i + 1) % 2], m),
                                          src.torPart, dst.torPart);
    GroupHom result(src.group, dst.group, blockDiag(tensorBlock, torBlock.matrix()));
    result.requireWellDefined();
    return result;
}

CheckReport checkSixTerm(const TotalK& t, const Int& n) {
    std::string why;
    for (int i = 0; i < 2; ++i) {
        const ModSlot& s = t.at(i, n);
        GroupHom timesN = GroupHom::multiplication(t.k[i], n);
        // ... K_i -x n-> K_i -rho-> K_i(;Z_n) -beta-> K_{i+1} -x n-> K_{i+1} ...
        if (!imageEqualsKernel(timesN, s.rho, &why))
            return CheckReport::fail(posName("six-term", i, n, "at K after x n: " + why));
        if (!imageEqualsKernel(s.rho, s.beta, &why))
            return CheckReport::fail(posName("six-term", i, n, "at K(;Z_n): " + why));
        GroupHom timesNNext = GroupHom::multiplication(t.k[(i + 1) % 2], n);
        if (!imageEqualsKernel(s.beta, timesNNext, &why))
            return CheckReport::fail(posName("six-term", i, n, "at K before x n: " + why));
    }
    return CheckReport::ok();
}

CheckReport checkKappaSequence(const TotalK& t) {
    std::string why;
    for (const Int& m : t.support)
        for (const Int& n : t.support) {
            Int mn = m * n;
            if (!t.hasModulus(mn)) continue;
            for (int i = 0; i < 2; ++i) {
                GroupHom up = t.kappaUp(i, m, mn);
                GroupHom down = t.kappaDown(i, n, mn);
                if (!imageEqualsKernel(up, down, &why))
                    return CheckReport::fail(posName("kappa sequence", i, mn, why));
                // beta_{m,n} factors as rho_m after beta_n
                GroupHom betaMN = compose(t.at(i + 1, m).rho, t.at(i, n).beta);
                if (!betaMN.wellDefined())
                    return CheckReport::fail(
                        posName("kappa sequence", i, mn, "beta_{m,n} ill-formed"));
            }
        }
    return CheckReport::ok();
}

const GroupHom& LambdaHom::mod(int i, const Int& n) const {
    auto it = fMod[i % 2].find(n);
    if (it == fMod[i % 2].end()) throw BadModulus("modulus not in support");
    return it->second;
}

LambdaHom identityLambdaHom(const TotalK& t) {
    LambdaHom h;
    h.source = &t;
    h.target = &t;
    h.f.push_back(GroupHom::identity(t.k[0]));
    h.f.push_back(GroupHom::identity(t.k[1]));
    for (const Int& n : t.support)
        for (int i = 0; i < 2; ++i)
            h.fMod[i].emplace(n, GroupHom::identity(t.at(i, n).group));
    return h;
}

CheckReport checkLambdaLinear(const LambdaHom& h) {
    const TotalK& s = *h.source;
    const TotalK& d = *h.target;
    if (s.support != d.support) throw ShapeMismatch("support sets differ");
    for (const Int& n : s.support) {
        for (int i = 0; i < 2; ++i) {
            const ModSlot& ss = s.at(i, n);
            const ModSlot& dd = d.at(i, n);
            if (!compose(h.mod(i, n), ss.rho).equalTo(compose(dd.rho, h.f[i])))
                return CheckReport::fail(posName("lambda-linearity", i, n, "rho square"));
            if (!compose(h.f[(i + 1) % 2], ss.beta).equalTo(compose(dd.beta, h.mod(i, n))))
                return CheckReport::fail(posName("lambda-linearity", i, n, "beta square"));
        }
    }
    for (const Int& m : s.support)
        for (const Int& n : s.support) {
            Int mn = m * n;
            if (!s.hasModulus(mn)) continue;
            for (int i = 0; i < 2; ++i) {
                if (!compose(h.mod(i, mn), s.kappaUp(i, m, mn))
                         .equalTo(compose(d.kappaUp(i, m, mn), h.mod(i, m))))
                    return CheckReport::fail(posName("lambda-linearity", i, mn, "kappa-up square"));
                if (!compose(h.mod(i, n), s.kappaDown(i, n, mn))
                         .equalTo(compose(d.kappaDown(i, n, mn), h.mod(i, mn))))
                    return CheckReport::fail(
                        posName("lambda-linearity", i, mn, "kappa-down square"));
            }
        }
    return CheckReport::ok();
}

LambdaHom inducedLambdaHom(const GroupHom& f0, const GroupHom& f1, const TotalK& src,
                           const TotalK& dst) {
    if (src.support != dst.support) throw ShapeMismatch("support sets differ");
    f0.requireWellDefined();
    f1.requireWellDefined();
    LambdaHom h;
    h.source = &src;
    h.target = &dst;
    h.f.push_back(GroupHom(src.k[0], dst.k[0], f0.matrix()));
    h.f.push_back(GroupHom(src.k[1], dst.k[1], f1.matrix()));
    for (const Int& n : src.support)
        for (int i = 0; i < 2; ++i) {
            const ModSlot& ss = src.at(i, n);
            const ModSlot& dd = dst.at(i, n);
            // tensor summand: the same matrix, now between the reductions
            const IntMatrix& tensorBlock = h.f[i].matrix();
            // Tor summand: restriction of f_{i+1} to the torsion subgroups
            GroupHom torBlock =
                inducedOnSubgroup(h.f[(i + 1) % 2], ss.torPart, dd.torPart);
            GroupHom comp(ss.group, dd.group, blockDiag(tensorBlock, torBlock.matrix()));
            comp.requireWellDefined();
            h.fMod[i].emplace(n, std::move(comp));
        }
    return h;
}

LambdaHom composeLambda(const LambdaHom& g, const LambdaHom& f) {
    LambdaHom h;
    h.source = f.source;
    h.target = g.target;
    h.f.push_back(compose(g.f[0], f.f[0]));
    h.f.push_back(compose(g.f[1], f.f[1]));
    for (const Int& n : f.source->support)
        for (int i = 0; i < 2; ++i) h.fMod[i].emplace(n, compose(g.mod(i, n), f.mod(i, n)));
    return h;
}

bool lambdaHomsEqual(const LambdaHom& a, const LambdaHom& b) {
    if (!a.f[0].equalTo(b.f[0]) || !a.f[1].equalTo(b.f[1])) return false;
    for (const Int& n : a.source->support)
        for (int i = 0; i < 2; ++i)
            if (!a.mod(i, n).equalTo(b.mod(i, n))) return false;
    return true;
}

}  // namespace cuntz
