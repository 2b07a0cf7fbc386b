#ifndef POLYADIC_IO_HPP
#define POLYADIC_IO_HPP

#include <string>

#include <json.hpp>

#include "polyadic/analysis.hpp"
#include "polyadic/chain.hpp"
#include "polyadic/gallery.hpp"
#include "polyadic/homomorphism.hpp"
#include "polyadic/system.hpp"

namespace polyadic {

using Json = nlohmann::json;

/// Elements serialize as an integer (finite carrier index), a double (real
/// scalar) or a [re, im] pair (complex scalar).
Json element_to_json(const Element& g);
Element element_from_json(const Json& j, bool finite_carrier);

/// Parses a CLI element argument: a carrier index for finite systems, a real
/// scalar otherwise.
Element parse_element_arg(const std::string& text, const PolyadicSystem& sys);

/// System files are UTF-8 JSON:
///   {"kind":"derived_modular","m":5,"n":3,"c":2}
///   {"kind":"cayley","n":3,"m":4,"table":[... m^n ints, last index fastest]}
///   {"kind":"closed_form","family":"qadd"|"copula"|"qprod"|"binary_center",
///    "params":{...}}
Json system_to_json(const PolyadicSystem& sys);
PolyadicSystem system_from_json(const Json& j);
PolyadicSystem load_system_file(const std::string& path);

/// Inline grammar for --system style arguments: "derived:m=5,n=3,c=2",
/// "qadd:n=3,hbar=0.5", "qprod:hbar=0.5", "copula", or "gallery:<family>";
/// anything else is treated as a path to a JSON system file.
PolyadicSystem parse_system_arg(const std::string& arg);

/// Map files are either a JSON array of target indices (finite image table)
/// or {"kind":"identity"} | {"kind":"scale","lambda":x} | {"kind":"power","s":x}.
CarrierMap map_from_json(const Json& j);
CarrierMap load_map_file(const std::string& path);
CarrierMap parse_map_arg(const std::string& arg);

Json witness_to_json(const Witness& w);
Json check_result_to_json(const CheckResult& r);
Json classification_to_json(const ClassificationReport& rep);
Json qvalue_to_json(const QValue& q);
Json chain_check_to_json(const ChainCheck& entry);
Json invariance_to_json(const InvarianceReport& rep);
Json decomposition_to_json(const ChainDecomposition& d);
Json reference_report_to_json(const ReferenceReport& rep);
Json gallery_report_to_json(const GalleryReport& rep);
Json compatibility_to_json(const DeformedCompatibility& rep);

}  // namespace polyadic

#endif  // POLYADIC_IO_HPP
