#include "cuntz/descriptor_io.hpp"

#include "json.hpp"

#include <fstream>

namespace cuntz {

namespace {

using nlohmann::json;

long long toInt64(const Int& v) {
    if (v > Int(std::numeric_limits<long long>::max()) ||
        v < Int(std::numeric_limits<long long>::min()))
        throw SchemaError("integer too large for the file format");
    return v.convert_to<long long>();
}

Int intField(const json& j, const char* where) {
    if (!j.is_number_integer()) throw SchemaError(std::string(where) + ": expected an integer");
    return Int(j.get<long long>());
}

json vecToJson(const IntVec& v) {
    json out = json::array();
    for (const Int& x : v) out.push_back(toInt64(x));
    return out;
}

IntVec vecFromJson(const json& j, const char* where) {
    if (!j.is_array()) throw SchemaError(std::string(where) + ": expected an array");
    IntVec out;
    for (const json& x : j) out.push_back(intField(x, where));
    return out;
}

json matrixToJson(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(toInt64(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrixFromJson(const json& j, std::size_t rows, std::size_t cols,
                         const char* where) {
    if (!j.is_array() || j.size() != rows)
        throw SchemaError(std::string(where) + ": expected " + std::to_string(rows) +
                          " matrix rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(std::string(where) + ": expected rows of length " +
                              std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = intField(row[c], where);
    }
    return m;
}

json groupToJson(const FgAbGroup& g) {
    json out;
    out["generators"] = g.numGenerators();
    out["relations"] = matrixToJson(g.relations());
    return out;
}

GroupPtr groupFromJson(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("generators") || !j.contains("relations"))
        throw SchemaError(std::string(where) + ": expected {generators, relations}");
    std::size_t n = j["generators"].get<std::size_t>();
    const json& rel = j["relations"];
    if (!rel.is_array()) throw SchemaError(std::string(where) + ": bad relations");
    return FgAbGroup::make(n, matrixFromJson(rel, rel.size(), n, where));
}

json elemToJson(const CuElem& e) {
    json out = json::object();
    if (e.idx != 0) out["idx"] = e.idx;
    if (e.value != 0) out["value"] = toInt64(e.value);
    if (e.inf) out["inf"] = true;
    if (!e.parts.empty()) {
        json parts = json::array();
        for (const CuElem& p : e.parts) parts.push_back(elemToJson(p));
        out["parts"] = std::move(parts);
    }
    if (e.isChain) {
        out["chain"] = vecToJson(e.chainVals);
        out["arith"] = e.arith;
    }
    return out;
}

CuElem elemFromJson(const json& j, const char* where) {
    if (!j.is_object()) throw SchemaError(std::string(where) + ": expected an element object");
    CuElem e;
    if (j.contains("idx")) e.idx = j["idx"].get<std::size_t>();
    if (j.contains("value")) e.value = intField(j["value"], where);
    if (j.contains("inf")) e.inf = j["inf"].get<bool>();
    if (j.contains("parts"))
        for (const json& p : j["parts"]) e.parts.push_back(elemFromJson(p, where));
    if (j.contains("chain")) {
        e.isChain = true;
        e.chainVals = vecFromJson(j["chain"], where);
        e.arith = j.value("arith", false);
    }
    return e;
}

json compactsToJson(const CompactMonoid& m);

json monoidToJson(const FiniteMonoid& m) {
    json out;
    out["zero"] = m.zeroIdx;
    json add = json::array(), leq = json::array();
    for (std::size_t i = 0; i < m.count; ++i) {
        json arow = json::array(), lrow = json::array();
        for (std::size_t j = 0; j < m.count; ++j) {
            arow.push_back(m.add(i, j));
            lrow.push_back(m.leq(i, j) ? 1 : 0);
        }
        add.push_back(std::move(arow));
        leq.push_back(std::move(lrow));
    }
    out["add"] = std::move(add);
    out["leq"] = std::move(leq);
    if (!m.labels.empty()) out["labels"] = m.labels;
    return out;
}

FiniteMonoid monoidFromJson(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("add") || !j.contains("leq"))
        throw SchemaError(std::string(where) + ": expected {zero, add, leq}");
    FiniteMonoid m;
    const json& add = j["add"];
    m.count = add.size();
    m.zeroIdx = j.value("zero", 0);
    m.addTable.assign(m.count * m.count, 0);
    m.leqTable.assign(m.count * m.count, 0);
    const json& leq = j["leq"];
    if (leq.size() != m.count) throw SchemaError(std::string(where) + ": leq shape");
    for (std::size_t i = 0; i < m.count; ++i) {
        if (add[i].size() != m.count || leq[i].size() != m.count)
            throw SchemaError(std::string(where) + ": table shape");
        for (std::size_t c = 0; c < m.count; ++c) {
            m.addTable[i * m.count + c] = add[i][c].get<std::size_t>();
            m.leqTable[i * m.count + c] = leq[i][c].get<int>() ? 1 : 0;
        }
    }
    if (j.contains("labels")) m.labels = j["labels"].get<std::vector<std::string>>();
    return m;
}

json compactsToJson(const CompactMonoid& m) {
    json out;
    switch (m.kind) {
        case CompactMonoid::Kind::Finite:
            out["type"] = "finite";
            out["monoid"] = monoidToJson(m.table);
            return out;
        case CompactMonoid::Kind::Linear:
            out["type"] = m.negatives ? "linear_z" : "linear_n";
            return out;
        case CompactMonoid::Kind::Product: {
            out["type"] = "product";
            json fs = json::array();
            for (const CompactMonoid& f : m.factors) fs.push_back(compactsToJson(f));
            out["factors"] = std::move(fs);
            return out;
        }
    }
    throw SchemaError("unreachable");
}

CompactMonoid compactsFromJson(const json& j, const char* where) {
    std::string type = j.value("type", "");
    if (type == "finite") return CompactMonoid::finite(monoidFromJson(j["monoid"], where));
    if (type == "linear_n") return CompactMonoid::linearN();
    if (type == "linear_z") return CompactMonoid::linearZ();
    if (type == "product") {
        std::vector<CompactMonoid> fs;
        for (const json& f : j["factors"]) fs.push_back(compactsFromJson(f, where));
        return CompactMonoid::product(std::move(fs));
    }
    throw SchemaError(std::string(where) + ": unknown compact-monoid type");
}

json cuToJson(const CuPtr& cu) {
    json out;
    switch (cu->kind) {
        case CuKind::Finite:
            out["kind"] = "finite";
            out["monoid"] = monoidToJson(cu->mon);
            return out;
        case CuKind::Ext:
            out["kind"] = cu->negatives ? "z_ext" : "n_ext";
            return out;
        case CuKind::Tuple: {
            out["kind"] = "direct_sum";
            json legs = json::array();
            for (const CuPtr& l : cu->legs) legs.push_back(cuToJson(l));
            out["legs"] = std::move(legs);
            return out;
        }
        case CuKind::Completion:
            out["kind"] = "completion";
            out["base"] = compactsToJson(cu->base);
            return out;
        case CuKind::Coord:
            out["kind"] = "coord";
            out["dim"] = cu->dim;
            return out;
    }
    throw SchemaError("unreachable");
}

CuPtr cuFromJson(const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "finite") return CuObject::finite(monoidFromJson(j["monoid"], "cu"));
    if (kind == "z_ext") return CuObject::zExt();
    if (kind == "n_ext") return CuObject::nExt();
    if (kind == "direct_sum") {
        std::vector<CuPtr> legs;
        for (const json& l : j["legs"]) legs.push_back(cuFromJson(l));
        return CuObject::directSum(std::move(legs));
    }
    if (kind == "completion") return CuObject::completion(compactsFromJson(j["base"], "cu"));
    if (kind == "coord") return CuObject::coordStage(j["dim"].get<std::size_t>());
    throw SchemaError("cu: unknown kind '" + kind + "'");
}

json homPairToJson(const LambdaHom& h) {
    json out;
    out["f0"] = matrixToJson(h.f[0].matrix());
    out["f1"] = matrixToJson(h.f[1].matrix());
    return out;
}

LambdaHom homPairFromJson(const json& j, const TotalK& src, const TotalK& dst,
                          const char* where) {
    IntMatrix m0 = matrixFromJson(j.at("f0"), dst.k[0]->numGenerators(),
                                  src.k[0]->numGenerators(), where);
    IntMatrix m1 = matrixFromJson(j.at("f1"), dst.k[1]->numGenerators(),
                                  src.k[1]->numGenerators(), where);
    return inducedLambdaHom(GroupHom(src.k[0], dst.k[0], std::move(m0)),
                            GroupHom(src.k[1], dst.k[1], std::move(m1)), src, dst);
}

}  // namespace

std::string serializeDescriptor(const AlgebraDescriptor& d) {
    json out;
    out["format_version"] = 1;
    out["name"] = d.name;
    out["flags"] = {{"k_pure", d.kPure},
                    {"real_rank_zero", d.realRankZero},
                    {"unital", d.unital}};
    json support = json::array();
    for (const Int& p : d.support) support.push_back(toInt64(p));
    out["support"] = std::move(support);
    out["cu"] = cuToJson(d.cu);
    json ideals = json::array();
    for (const auto& entry : d.ideals) {
        json e;
        e["generator"] = elemToJson(entry.generator);
        e["k0"] = groupToJson(*entry.k->k[0]);
        e["k1"] = groupToJson(*entry.k->k[1]);
        ideals.push_back(std::move(e));
    }
    out["ideals"] = std::move(ideals);
    json deltas = json::array();
    for (const auto& [pair, hom] : d.delta) {
        json e = homPairToJson(hom);
        e["from"] = pair.first;
        e["to"] = pair.second;
        deltas.push_back(std::move(e));
    }
    out["deltas"] = std::move(deltas);
    if (d.unit) out["unit"] = elemToJson(*d.unit);
    json quots = json::array();
    for (const auto& [ideal, q] : d.quotients) {
        json e = homPairToJson(q.fromTop);
        e["ideal"] = ideal;
        e["k0"] = groupToJson(*q.k->k[0]);
        e["k1"] = groupToJson(*q.k->k[1]);
        quots.push_back(std::move(e));
    }
    out["quotients"] = std::move(quots);
    return out.dump(2) + "\n";
}

std::shared_ptr<const AlgebraDescriptor> parseDescriptor(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("top level: expected an object");
    if (j.value("format_version", 0) != 1)
        throw SchemaError("format_version: expected 1");
    auto d = std::make_shared<AlgebraDescriptor>();
    d->name = j.value("name", "");
    if (j.contains("flags")) {
        const json& f = j["flags"];
        d->realRankZero = f.value("real_rank_zero", false);
        d->kPure = f.value("k_pure", false);
        d->unital = f.value("unital", false);
    }
    if (j.contains("support"))
        for (const json& p : j["support"]) d->support.insert(intField(p, "support"));
    if (!j.contains("cu")) throw SchemaError("cu: missing");
    d->cu = cuFromJson(j["cu"]);
    if (!j.contains("ideals") || !j["ideals"].is_array() || j["ideals"].empty())
        throw SchemaError("ideals: expected a non-empty list");
    for (const json& e : j["ideals"]) {
        AlgebraDescriptor::IdealEntry entry{
            elemFromJson(e.at("generator"), "ideals.generator"),
            std::make_shared<TotalK>(buildTotalK(groupFromJson(e.at("k0"), "ideals.k0"),
                                                 groupFromJson(e.at("k1"), "ideals.k1"),
                                                 d->support))};
        d->cu->requireElem(entry.generator);
        d->ideals.push_back(std::move(entry));
    }
    if (j.contains("deltas"))
        for (const json& e : j["deltas"]) {
            std::size_t from = e.at("from").get<std::size_t>();
            std::size_t to = e.at("to").get<std::size_t>();
            if (from >= d->ideals.size() || to >= d->ideals.size())
                throw SchemaError("deltas: ideal index out of range");
            d->delta.emplace(std::make_pair(from, to),
                             homPairFromJson(e, *d->ideals[from].k, *d->ideals[to].k,
                                             "deltas"));
        }
    if (j.contains("unit")) d->unit = elemFromJson(j["unit"], "unit");
    if (j.contains("quotients"))
        for (const json& e : j["quotients"]) {
            std::size_t ideal = e.at("ideal").get<std::size_t>();
            if (ideal >= d->ideals.size())
                throw SchemaError("quotients: ideal index out of range");
            auto k = std::make_shared<TotalK>(
                buildTotalK(groupFromJson(e.at("k0"), "quotients.k0"),
                            groupFromJson(e.at("k1"), "quotients.k1"), d->support));
            std::size_t top = d->topIdeal();
            LambdaHom fromTop = homPairFromJson(e, *d->ideals[top].k, *k, "quotients");
            d->quotients.emplace(ideal,
                                 AlgebraDescriptor::QuotientEntry{k, std::move(fromTop)});
        }
    ValidationReport rep = validateDescriptor(*d);
    if (!rep.pass) throw SchemaError("validation failed: " + rep.failures.front());
    return d;
}

std::shared_ptr<const AlgebraDescriptor> loadDescriptorFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parseDescriptor(text);
}

void saveDescriptorFile(const AlgebraDescriptor& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << serializeDescriptor(d);
}

}  // namespace cuntz
