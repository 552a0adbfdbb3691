#pragma once

#include <string>

#include <json.hpp>

#include "canram/canonical.hpp"
#include "canram/category.hpp"
#include "canram/diagram.hpp"
#include "canram/preadjunction.hpp"
#include "canram/rational.hpp"
#include "canram/structures.hpp"
#include "canram/transfers.hpp"

namespace canram {

using Json = nlohmann::json;

// External position indexing: 0 keeps indices as stored, 1 shifts all vertex
// positions (and leg indices) up by one on output and down by one on input.
// An explicit "indexing" field inside a structure object wins over the
// option. Color ids, sizes, and signature indices are never shifted.
struct JsonOptions {
    int indexing = 0;
};

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json structure_to_json(const OrderedStructure& s, const JsonOptions& opts = {});
OrderedStructure structure_from_json(const Json& j, const JsonOptions& opts = {});

Json embedding_map_to_json(std::span<const int> map, const JsonOptions& opts = {});
std::vector<int> embedding_map_from_json(const Json& j, const JsonOptions& opts = {});

Json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

Json tight_set_to_json(const TightSet& s);
TightSet tight_set_from_json(const Json& j);

Json witness_to_json(const CanonicalWitness& w, const JsonOptions& opts = {});

Json verdict_to_json(const CanVerdict& v);
Json erc_report_to_json(const ErcReport& r);

Json encoding_signature_to_json(const EncodingSignature& e);
EncodingSignature encoding_signature_from_json(const Json& j);

Json compression_to_json(const CompressionResult& c);

Json validation_to_json(const ValidationReport& r);

Json diagram_to_json(const BinaryDiagram& d, const JsonOptions& opts = {});
Json cocone_to_json(const Cocone& c, const JsonOptions& opts = {});

Json cpa_report_to_json(const CpaSweepReport& r);
Json transfer_report_to_json(const TransferSweepReport& r);

// File helpers; wrap parser failures in input_error.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

} // namespace canram
