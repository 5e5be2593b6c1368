#include "serialhom/io.hpp"

#include <algorithm>

namespace serialhom {

namespace {

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    for (const char* k : keys) {
        if (!j.contains(k)) throw ParseError(where + "." + k, "missing");
    }
    for (const auto& [k, v] : j.items()) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char* e) { return k == e; }) == keys.end())
            throw ParseError(where + "." + k, "unknown field");
    }
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
    return j.get<int>();
}

std::vector<int> get_int_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array");
    std::vector<int> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

json algebra_to_json(const SerialAlgebra& a) {
    json j;
    if (a.cyclic_presentation()) {
        j["kind"] = "cyclic";
        j["n"] = a.vertices();
        j["delta"] = a.delta();
    } else {
        j["kind"] = "kupisch";
        j["successor"] = a.successor_vector();
        j["loewy"] = a.loewy_vector();
    }
    return j;
}

SerialAlgebra algebra_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("algebra", "expected an object");
    if (!j.contains("kind")) throw ParseError("algebra.kind", "missing");
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (kind == "cyclic") {
        require_keys(j, "algebra", {"kind", "n", "delta"});
        try {
            return SerialAlgebra::cyclic(get_int(j["n"], "algebra.n"),
                                         get_int_list(j["delta"], "algebra.delta"));
        } catch (const std::invalid_argument& e) {
            throw ParseError("algebra", e.what());
        }
    }
    if (kind == "kupisch") {
        require_keys(j, "algebra", {"kind", "successor", "loewy"});
        try {
            return SerialAlgebra::kupisch(get_int_list(j["successor"], "algebra.successor"),
                                          get_int_list(j["loewy"], "algebra.loewy"));
        } catch (const std::invalid_argument& e) {
            throw ParseError("algebra", e.what());
        }
    }
    throw ParseError("algebra.kind", "expected \"cyclic\" or \"kupisch\"");
}

json module_sum_to_json(const ModuleSum& m) {
    json arr = json::array();
    for (const Uniserial& u : m.summands) {
        json e;
        e["top"] = u.top;
        e["len"] = u.len;
        arr.push_back(std::move(e));
    }
    return arr;
}

ModuleSum module_sum_from_json(const json& j, const SerialAlgebra& a) {
    if (!j.is_array()) throw ParseError("module", "expected an array");
    std::vector<Uniserial> summands;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string where = "module[" + std::to_string(i) + "]";
        require_keys(j[i], where, {"top", "len"});
        Uniserial u{get_int(j[i]["top"], where + ".top"), get_int(j[i]["len"], where + ".len")};
        try {
            validate(a, u);
        } catch (const std::invalid_argument& e) {
            throw ParseError(where, e.what());
        }
        summands.push_back(u);
    }
    return ModuleSum(std::move(summands));
}

std::string rational_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(Int(s.substr(0, slash)), den);
    } catch (const std::exception&) {
        throw ParseError("coeff", "not a rational: " + s);
    }
}

json certificate_to_json(const CertificateFile& c) {
    json j;
    j["algebra"] = algebra_to_json(c.algebra);
    j["module"] = module_sum_to_json(c.module);
    j["claimed_score"] = c.claimed_score;
    j["degrees"] = json::array({c.complex.lo(), c.complex.hi()});
    json terms = json::array();
    for (int d = c.complex.lo(); d <= c.complex.hi(); ++d) terms.push_back(c.complex.term(d));
    j["terms"] = std::move(terms);
    json diffs = json::array();
    for (int d = c.complex.lo() + 1; d <= c.complex.hi(); ++d) {
        json entries = json::array();
        for (const DiffEntry& e : c.complex.diff(d)) {
            json je;
            je["row"] = e.row;
            je["col"] = e.col;
            je["len"] = e.len;
            je["coeff"] = rational_to_string(e.coeff);
            entries.push_back(std::move(je));
        }
        diffs.push_back(std::move(entries));
    }
    j["diffs"] = std::move(diffs);
    return j;
}

CertificateFile certificate_from_json(const json& j) {
    require_keys(j, "certificate", {"algebra", "module", "claimed_score", "degrees", "terms", "diffs"});
    SerialAlgebra a = algebra_from_json(j["algebra"]);
    ModuleSum m = module_sum_from_json(j["module"], a);
    if (!j["claimed_score"].is_number_integer())
        throw ParseError("certificate.claimed_score", "expected an integer");
    const long long score = j["claimed_score"].get<long long>();
    std::vector<int> degrees = get_int_list(j["degrees"], "certificate.degrees");
    if (degrees.size() != 2) throw ParseError("certificate.degrees", "expected [lo, hi]");
    const int lo = degrees[0], hi = degrees[1];
    if (hi < lo) throw ParseError("certificate.degrees", "hi below lo");
    if (!j["terms"].is_array() || static_cast<int>(j["terms"].size()) != hi - lo + 1)
        throw ParseError("certificate.terms", "expected one vertex list per degree");
    std::vector<std::vector<Vertex>> terms;
    for (size_t i = 0; i < j["terms"].size(); ++i)
        terms.push_back(get_int_list(j["terms"][i], "certificate.terms[" + std::to_string(i) + "]"));
    if (!j["diffs"].is_array() || static_cast<int>(j["diffs"].size()) != hi - lo)
        throw ParseError("certificate.diffs", "expected one entry list per differential");
    std::vector<std::vector<DiffEntry>> diffs;
    for (size_t k = 0; k < j["diffs"].size(); ++k) {
        const std::string where = "certificate.diffs[" + std::to_string(k) + "]";
        if (!j["diffs"][k].is_array()) throw ParseError(where, "expected an array");
        std::vector<DiffEntry> entries;
        for (size_t i = 0; i < j["diffs"][k].size(); ++i) {
            const json& je = j["diffs"][k][i];
            const std::string ewhere = where + "[" + std::to_string(i) + "]";
            require_keys(je, ewhere, {"row", "col", "len", "coeff"});
            DiffEntry e;
            e.row = get_int(je["row"], ewhere + ".row");
            e.col = get_int(je["col"], ewhere + ".col");
            e.len = get_int(je["len"], ewhere + ".len");
            if (!je["coeff"].is_string()) throw ParseError(ewhere + ".coeff", "expected a string rational");
            e.coeff = rational_from_string(je["coeff"].get<std::string>());
            entries.push_back(std::move(e));
        }
        diffs.push_back(std::move(entries));
    }
    try {
        ProjComplex complex(a, lo, std::move(terms), std::move(diffs));
        return CertificateFile{std::move(a), std::move(m), score, std::move(complex)};
    } catch (const std::invalid_argument& e) {
        // structurally well-formed JSON describing an invalid complex is a
        // checker failure, not a parse failure
        throw std::domain_error(e.what());
    }
}

json ext_table_to_json(const ExtTable& t) {
    json pairs = json::array();
    for (const ExtTableEntry& e : t.pairs) {
        json je;
        je["M"] = to_string(e.m);
        je["N"] = to_string(e.n);
        je["ext"] = e.ext;
        je["tail"] = e.tail;
        pairs.push_back(std::move(je));
    }
    json out;
    out["pairs"] = std::move(pairs);
    return out;
}

json extnat_to_json(const ExtNat& v) {
    if (v.is_infinite()) return json("inf");
    return json(v.value());
}

}  // namespace serialhom
