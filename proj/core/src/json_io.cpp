#include "drx/json_io.hpp"
#include "drx/errors.hpp"
#include "drx/parser.hpp"

#include <stdexcept>

namespace drx {

namespace {

std::string fp_poly_str(const std::vector<std::uint32_t>& c) {
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += "g";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace

json fq_to_json(const Fq& f) {
    json j;
    j["p"] = f.p();
    j["m"] = f.m();
    if (f.m() > 1) j["modulus"] = fp_poly_str(f.modulus());
    return j;
}

FqPtr fq_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p")) throw std::invalid_argument("bad field descriptor");
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    std::uint32_t m = j.value("m", 1u);
    std::vector<std::uint32_t> modulus;
    if (j.contains("modulus") && !j.at("modulus").is_null())
        modulus = parse_fp_poly(p, j.at("modulus").get<std::string>());
    return Fq::make(p, m, std::move(modulus));
}

json skew_matrix_to_json(const SkewMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

SkewMatrix skew_matrix_from_json(const FqPtr& f, const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be a non-empty array");
    std::size_t rows = j.size();
    std::size_t cols = j.at(0).size();
    SkewMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument("ragged matrix JSON");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(i, c, parse_skew_poly(f, row.at(c).get<std::string>()));
    }
    return m;
}

json tmodule_to_json(const TModule& e) {
    json j;
    j["q"] = fq_to_json(*e.field());
    j["dim"] = e.dim();
    j["phi_t"] = skew_matrix_to_json(e.phi_t());
    return j;
}

TModule tmodule_from_json(const json& j) {
    FqPtr f = fq_from_json(j.at("q"));
    std::size_t dim = j.at("dim").get<std::size_t>();
    return TModule(dim, skew_matrix_from_json(f, j.at("phi_t")));
}

json drinfeld_to_json(const DrinfeldModule& e) {
    json j;
    j["q"] = fq_to_json(*e.field());
    json coeffs = json::array();
    for (const auto& a : e.coeffs()) coeffs.push_back(a.str());
    j["drinfeld"] = std::move(coeffs);
    return j;
}

DrinfeldModule drinfeld_from_json(const json& j) {
    FqPtr f = fq_from_json(j.at("q"));
    std::vector<KElement> coeffs;
    for (const auto& s : j.at("drinfeld")) coeffs.push_back(parse_k_element(f, s.get<std::string>()));
    return make_drinfeld(std::move(coeffs));
}

TModule tmodule_from_json_any(const json& j) {
    if (j.contains("drinfeld")) return drinfeld_from_json(j).underlying();
    return tmodule_from_json(j);
}

json biderivation_to_json(const Biderivation& d) {
    json j;
    j["source"] = tmodule_to_json(d.source());
    j["target"] = tmodule_to_json(d.target());
    j["delta_t"] = skew_matrix_to_json(d.value());
    return j;
}

Biderivation biderivation_from_json(const json& j) {
    TModule src = tmodule_from_json_any(j.at("source"));
    TModule tgt = tmodule_from_json_any(j.at("target"));
    if (*src.field() != *tgt.field())
        throw std::invalid_argument("source and target over different fields");
    SkewMatrix v = skew_matrix_from_json(src.field(), j.at("delta_t"));
    return Biderivation(std::move(src), std::move(tgt), std::move(v));
}

json ext_class_to_json(const ExtClassEC& c) {
    json j;
    j["kind"] = "e-vs-c";
    j["rank"] = c.context.rank();
    json coords = json::array();
    for (const auto& b : c.coords) coords.push_back(b.str());
    j["coords"] = std::move(coords);
    j["value"] = c.value().str();
    return j;
}

json ext_class_to_json(const ExtClassDualC& c) {
    json j;
    j["kind"] = "dual-vs-c";
    j["rank"] = c.context.rank();
    json coords = json::array();
    for (const auto& b : c.coords) coords.push_back(b.str());
    j["coords"] = std::move(coords);
    j["value"] = skew_matrix_to_json(c.value());
    return j;
}

json ext_class_to_json(const ExtClassCtens& c) {
    json j;
    j["kind"] = "carlitz";
    j["m"] = c.m;
    j["n"] = c.n;
    json coords = json::array();
    for (const auto& b : c.coords) coords.push_back(b.str());
    j["coords"] = std::move(coords);
    return j;
}

SkewMatrix class_value_matrix(const ExtClassEC& c) {
    SkewMatrix m(c.context.field(), 1, 1);
    m.set(0, 0, c.value());
    return m;
}

SkewMatrix class_value_matrix(const ExtClassDualC& c) { return c.value(); }

SkewMatrix class_value_matrix(const ExtClassCtens& c) { return c.value(); }

} // namespace drx
