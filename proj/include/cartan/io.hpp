#pragma once

// JSON documents for specs, realizations, coframes and prolongation reports.
// Every number that is a field element is written as an exact string.

#include <filesystem>
#include <optional>
#include <string_view>

#include "json.hpp"

#include "cartan/prolong.hpp"

namespace cartan::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
Json load_file(const std::filesystem::path& path);

/// {"char": p, "i": bool}
Field field_from_json(const Json& j);
Json field_to_json(const Field& f);
/// "5", "0,i", "7,i"
Field parse_field(std::string_view text);

/// Spec document: {field, generators: [{name, degree, parity, coordinate?}],
/// brackets: [{i, j, k, coeff}]}. Bracket indices are generator names or
/// 1-based positions. `field` replaces the document's field when given.
GradedAlgebraSpec spec_from_json(const Json& doc, const std::optional<Field>& field = {});
Json spec_to_json(const GradedAlgebraSpec& spec);

/// {"column_preference": [...], "shuffle_seed": n}, both optional.
RealizeOptions realize_options_from_json(const Json& doc);

/// When the document carries "realization": {"forms": [...]} or {"fields": [...]},
/// the data is ingested; otherwise the forms are solved for.
Realization realization_from_json(const Json& doc, const std::optional<Field>& field = {},
                                  const RealizeOptions& options = {});
/// {spec..., realization: {forms, fields, V}}; re-ingestible.
Json realization_to_json(const Realization& r);

Json coframe_to_json(const Realization& r, const Coframe& c);

/// {"beginning": [{"degree": k, one of "complete": true | "fields": [...] |
/// "generating": [...] | "coefficients": [[...]]}]}. Entries for one degree
/// accumulate. Generating entries are strings (one generating coordinate) or
/// arrays of strings; coefficients are over complete_component(k).
BeginningPart beginning_from_json(const Json& doc, const Prolongation& engine);

Json operator_to_json(const Prolongation& engine, const DiffOperator& op);
Json component_to_json(const ProlongComponent& c);
Json complete_to_json(const Prolongation& engine, const CompleteResult& r);
Json partial_to_json(const Prolongation& engine, const PartialResult& r);

} // namespace cartan::io
