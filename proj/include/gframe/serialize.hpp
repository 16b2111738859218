#pragma once

#include <string>

#include <json.hpp>

#include "gframe/controlled_frames.hpp"
#include "gframe/stability.hpp"
#include "gframe/theorems.hpp"

namespace gframe {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; doubles are written in shortest round-trip
// form, so parse(serialize(x)) == x bit for bit.
Json to_json(cplx z);
Json to_json(const AlgebraDescriptor& d);
Json to_json(const AlgebraElement& a);
Json to_json(const ModuleVector& x);
Json to_json(const AdjointableOperator& t);
Json to_json(const MeasureSpace& m);
Json to_json(const GFrameSystem& s);
Json to_json(const TheoremReport& r);

// Parsers throw InputError naming the JSON pointer of the offending value.
cplx complex_from_json(const Json& j, const std::string& path = "");
AlgebraDescriptor descriptor_from_json(const Json& j, const std::string& path = "");
AlgebraElement element_from_json(const Json& j, const std::string& path = "");
ModuleVector vector_from_json(const Json& j, const std::string& path = "");
AdjointableOperator operator_from_json(const Json& j, const std::string& path = "");
MeasureSpace measure_from_json(const Json& j, const std::string& path = "");
GFrameSystem system_from_json(const Json& j, const std::string& path = "");

// Text parse errors carry line and column; `source` prefixes every message.
Json parse_json_text(const std::string& text, const std::string& source);
Json load_json_file(const std::string& path);

std::string dump(const Json& j);
GFrameSystem parse_system(const std::string& text, const std::string& source = "<string>");
std::string serialize_system(const GFrameSystem& s);
GFrameSystem load_system(const std::string& path);

// {"theta": op, "K": op, "Q": op, "P": op, "v": element}, all optional.
TheoremAux aux_from_json(const Json& j, const std::string& path = "");

// {"kind", "params": {...}, "systemA", "systemB", "samples", "seed"}; the
// system paths are resolved relative to base_dir.
struct PerturbationRun {
    PerturbationParams params;
    std::string system_a;
    std::string system_b;
    int samples = kDefaultStabilitySamples;
    std::uint64_t seed = 0;
};
PerturbationRun perturbation_from_json(const Json& j, const std::string& base_dir = "");

}  // namespace gframe
