#pragma once

#include <functional>
#include <string>
#include <vector>

#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

/// Built-in surface with its reference data and expected behavior.
struct CatalogEntry {
    struct ExpectedSingularity {
        SingularitySite site;
        SingularityVerdict verdict;
    };

    std::string name;
    SurfaceKind kind = SurfaceKind::Maximal;
    WeierstrassData data;
    std::function<LVec3(Complex)> reference;  // closed-form immersion; empty if unavailable
    std::vector<ExpectedSingularity> singularities;
    bool conjugate_exact = true;        // Im-periods of phi3 vanish
    std::string expected_type;          // harmonic-measure verdict, empty when unspecified
    std::string description;
};

struct UnknownSurface : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& catalog_names();

/// Names: plane, lorentzian-catenoid, enneper, minimal-catenoid.
CatalogEntry get_catalog_surface(const std::string& name);

/// Graph height of the Lorentzian catenoid over the plane x3 = 0 at planar
/// radius r (the entire graph u(r) = -asinh(r)).
double catenoid_graph_height(double r);

}  // namespace maxsurf
