#pragma once
#include <json.hpp>
#include <string>

#include "hkforge/diagram.hpp"
#include "hkforge/multiplet.hpp"

namespace hkforge {

using Json = nlohmann::json;

// Reads either the coefficient form {"j", "coeffs"} or the root form {"j", "scale", "roots"}.
Multiplet multiplet_from_json(const Json& j);
Json multiplet_to_json(const Multiplet& m);
Json constellation_to_json(const RootConstellation& c);
Json sphere_point_to_json(const SpherePoint& p);
SpherePoint sphere_point_from_json(const Json& j);
Json complex_to_json(cplx z);

// Vertices take their tensor from an optional "tensor" key, else "o2" for rank 2 and "o4" for rank 4.
Diagram diagram_from_json(const Json& j);

Json load_json_file(const std::string& path);
Multiplet load_multiplet(const std::string& path);

}  // namespace hkforge
