#pragma once

#include "cuntz/abelian.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace cuntz {

/// One coefficient slot K_i(;Z_n), built as (K_i tensor Z_n) + Tor(K_{i+1}, Z_n).
/// Generators of the summand group are the tensor generators followed by the
/// torsion-subgroup generators, so summand inclusions are coordinate blocks.
struct ModSlot {
    GroupPtr group;            // the direct sum
    GroupPtr tensorPart;       // K_i tensor Z_n
    SubgroupPair torPart;      // Tor(K_{i+1}, Z_n) with inclusion into K_{i+1}
    GroupHom rho;              // K_i -> group (reduce into first summand)
    GroupHom beta;             // group -> K_{i+1} (torsion part included)
    ModSlot(GroupPtr g, GroupPtr t, SubgroupPair tor, GroupHom r, GroupHom b)
        : group(std::move(g)), tensorPart(std::move(t)), torPart(std::move(tor)),
          rho(std::move(r)), beta(std::move(b)) {}
};

/// Z2 x Z+ graded group with Bockstein operations.
struct TotalK {
    GroupPtr k[2];                       // K_0, K_1
    std::set<Int> support;               // moduli n >= 2
    std::map<Int, ModSlot> slot[2];      // slot[i][n] = K_i(;Z_n)

    const ModSlot& at(int i, const Int& n) const;
    bool hasModulus(const Int& n) const { return support.count(n) > 0; }

    /// kappa_{mn,m}: K_i(;Z_m) -> K_i(;Z_mn) (requires m, m*n in support).
    GroupHom kappaUp(int i, const Int& m, const Int& mn) const;
    /// kappa_{n,mn}: K_i(;Z_mn) -> K_i(;Z_n) (requires n, m*n in support).
    GroupHom kappaDown(int i, const Int& n, const Int& mn) const;
};

TotalK buildTotalK(GroupPtr k0, GroupPtr k1, const std::set<Int>& support);

/// Outcome of an exactness or linearity verification: empty string = pass,
/// otherwise a description of the first failing position.
struct CheckReport {
    bool pass = true;
    std::string failure;
    static CheckReport ok() { return {}; }
    static CheckReport fail(std::string where) { return {false, std::move(where)}; }
};

/// Exactness of K_i -x n-> K_i -rho-> K_i(;Z_n) -beta-> K_{i+1} -x n-> ...
/// at all six positions, by double inclusion on generators.
CheckReport checkSixTerm(const TotalK& t, const Int& n);

/// Exactness of the second sequence at the kappa positions, plus the
/// factorization beta_{m,n} = rho_m after beta_n, for all m,n with m,n,mn in
/// the support.
CheckReport checkKappaSequence(const TotalK& t);

/// Graded morphism with one component per group of the grading.
struct LambdaHom {
    const TotalK* source = nullptr;
    const TotalK* target = nullptr;
    std::vector<GroupHom> f;         // index i = 0,1: component on K_i
    std::map<Int, GroupHom> fMod[2]; // on K_i(;Z_n)

    const GroupHom& mod(int i, const Int& n) const;
};

LambdaHom identityLambdaHom(const TotalK& t);

/// Checks every commuting square against rho, beta, and both kappa families.
CheckReport checkLambdaLinear(const LambdaHom& h);

/// Functorial extension of (f0, f1) to all coefficient slots, acting
/// summandwise via tensor/Tor functoriality.
LambdaHom inducedLambdaHom(const GroupHom& f0, const GroupHom& f1, const TotalK& src,
                           const TotalK& dst);

LambdaHom composeLambda(const LambdaHom& g, const LambdaHom& f);
bool lambdaHomsEqual(const LambdaHom& a, const LambdaHom& b);

}  // namespace cuntz
