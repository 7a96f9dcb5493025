#ifndef DRX_JSON_IO_HPP
#define DRX_JSON_IO_HPP

#include "drx/biderivation.hpp"
#include "drx/ext_engine.hpp"

#include <json.hpp>

namespace drx {

using nlohmann::json;

json fq_to_json(const Fq& f);
FqPtr fq_from_json(const json& j);

json skew_matrix_to_json(const SkewMatrix& m);   // array of arrays of strings
SkewMatrix skew_matrix_from_json(const FqPtr& f, const json& j);

/// {"q": {...}, "dim": n, "phi_t": [[...]]}
json tmodule_to_json(const TModule& e);
TModule tmodule_from_json(const json& j);

/// Shorthand {"q": {...}, "drinfeld": ["a1", ...]}.
json drinfeld_to_json(const DrinfeldModule& e);
DrinfeldModule drinfeld_from_json(const json& j);

/// Accepts either form; Drinfeld shorthand yields the underlying presentation.
TModule tmodule_from_json_any(const json& j);

/// {"source": tmodule, "target": tmodule, "delta_t": [[...]]}
json biderivation_to_json(const Biderivation& d);
Biderivation biderivation_from_json(const json& j);

json ext_class_to_json(const ExtClassEC& c);
json ext_class_to_json(const ExtClassDualC& c);
json ext_class_to_json(const ExtClassCtens& c);

SkewMatrix class_value_matrix(const ExtClassEC& c);
SkewMatrix class_value_matrix(const ExtClassDualC& c);
SkewMatrix class_value_matrix(const ExtClassCtens& c);

/// Reduction certificate {input, reduced, witness, check}; check is recomputed
/// from the pieces, never copied in.
template <class Reduced>
json certificate_to_json(const Biderivation& input, const Reduced& red) {
    SkewMatrix reduced_value = class_value_matrix(red.cls);
    bool check = input.value() - reduced_value ==
                 inner(red.witness, input.source(), input.target()).value();
    json j;
    j["input"] = biderivation_to_json(input);
    j["reduced"] = ext_class_to_json(red.cls);
    j["witness"] = skew_matrix_to_json(red.witness.u);
    j["check"] = check;
    return j;
}

} // namespace drx

#endif
