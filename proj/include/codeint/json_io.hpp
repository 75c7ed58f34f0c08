#pragma once

#include <string>

#include <json.hpp>

#include "codeint/analysis.hpp"
#include "codeint/mult_code.hpp"
#include "codeint/oracle_model.hpp"

namespace codeint {

using Json = nlohmann::ordered_json;

// Words serialize as arrays of arrays of integers (one inner array per
// symbol); CodeParams as {p, s, k, alphas}.

inline Json word_to_json(const Word& w) {
    Json arr = Json::array();
    for (std::uint32_t i = 0; i < w.n; ++i) {
        Json sym = Json::array();
        for (std::uint32_t j = 0; j < w.s; ++j) sym.push_back(w.at(i, j));
        arr.push_back(std::move(sym));
    }
    return arr;
}

inline Word word_from_json(const Json& j, const PrimeField& field) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("word_from_json: expected array");
    const std::uint32_t n = static_cast<std::uint32_t>(j.size());
    const std::uint32_t s = static_cast<std::uint32_t>(j.at(0).size());
    Word w(n, s);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& sym = j.at(i);
        if (!sym.is_array() || sym.size() != s)
            throw std::invalid_argument("word_from_json: ragged symbol array");
        for (std::uint32_t jj = 0; jj < s; ++jj) {
            const std::int64_t v = sym.at(jj).get<std::int64_t>();
            if (v < 0 || static_cast<std::uint64_t>(v) >= field.modulus())
                throw std::invalid_argument("word_from_json: element out of range");
            w.at(i, jj) = static_cast<FieldElem>(v);
        }
    }
    return w;
}

inline Json params_to_json(const CodeParams& params) {
    Json j;
    j["p"] = params.q();
    j["s"] = params.s();
    j["k"] = params.k();
    j["alphas"] = params.alphas();
    return j;
}

inline CodeParams params_from_json(const Json& j) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "p" && key != "s" && key != "k" && key != "alphas" && key != "n")
            throw std::invalid_argument("params_from_json: unknown key '" + key + "'");
    }
    const std::uint64_t p = j.at("p").get<std::uint64_t>();
    const std::uint32_t s = j.at("s").get<std::uint32_t>();
    const std::uint32_t k = j.at("k").get<std::uint32_t>();
    PrimeField field(p);
    std::vector<FieldElem> alphas;
    if (j.contains("alphas")) {
        for (const auto& a : j.at("alphas")) alphas.push_back(a.get<FieldElem>());
    }
    if (j.contains("n")) {
        const std::uint32_t n = j.at("n").get<std::uint32_t>();
        if (alphas.empty()) {
            if (n > p) throw std::invalid_argument("params_from_json: n exceeds field size");
            for (std::uint32_t i = 0; i < n; ++i) alphas.push_back(i);
        } else if (alphas.size() != n) {
            throw std::invalid_argument("params_from_json: n disagrees with alphas length");
        }
    }
    if (alphas.empty()) throw std::invalid_argument("params_from_json: need alphas or n");
    return CodeParams(field, s, k, std::move(alphas));
}

inline Json oracle_set_to_json(const OracleSet& e) {
    Json j;
    j["kind"] = e.kind == OracleSet::Kind::full ? "full" : "explicit";
    j["lambda"] = e.lambda;
    if (e.kind == OracleSet::Kind::explicit_pairs) {
        Json pairs = Json::array();
        for (const auto& [xbits, flat] : e.pairs) {
            Json entry;
            entry["x"] = BitString(e.lambda, xbits).to_string();
            Json v = Json::array();
            // flat words carry no shape; emit as a flat integer array
            for (FieldElem f : flat) v.push_back(f);
            entry["v"] = std::move(v);
            pairs.push_back(std::move(entry));
        }
        j["pairs"] = std::move(pairs);
    }
    return j;
}

// List families serialize as arrays of symbol-index arrays.
inline Json list_family_to_json(const ListFamily& fam) {
    Json j = Json::array();
    for (const auto& list : fam.lists) j.push_back(list);
    return j;
}

inline ListFamily list_family_from_json(const Json& j) {
    ListFamily fam;
    for (const auto& list : j) {
        std::vector<std::uint64_t> l;
        for (const auto& sym : list) l.push_back(sym.get<std::uint64_t>());
        fam.lists.push_back(std::move(l));
    }
    return fam;
}

}  // namespace codeint
