// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#ifndef RISD2D_SCENE_HPP
#define RISD2D_SCENE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace risd2d {

struct Position
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Position &, const Position &) = default;
};

double distance(const Position &a, const Position &b);

// RIS on the Y-Z plane. Element {lz, ly} (1-based) sits at
// (0, y_offset + ly*d_ye, lz*d_ze).
struct RisGeometry
{
    int n_per_side = 4;
    double d_ye = 0.03;
    double d_ze = 0.03;
    double y_offset = 0.0;

    int element_count() const { return n_per_side * n_per_side; }
};

Position element_position(const RisGeometry &geom, int lz, int ly);

// Row-major flat index of element {lz, ly}, both 1-based.
inline int element_index(const RisGeometry &geom, int lz, int ly)
{
    return (lz - 1) * geom.n_per_side + (ly - 1);
}

enum class LinkKind
{
    Cellular,
    D2D,
};

struct Link
{
    int index = 1; // 1-based; link 1 is the cellular uplink
    Position tx;
    Position rx;
    LinkKind kind = LinkKind::D2D;
};

struct Area
{
    double x_min = 0.0;
    double x_max = 100.0;
    double y_min = -100.0;
    double y_max = 100.0;

    bool contains(const Position &p) const
    {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
};

struct ScenarioParams
{
    int d2d_count = 3;
    RisGeometry ris;
    Area area;
    double max_pair_distance = 10.0;
    double cell_distance = 10.0; // cellular user to BS separation
    int max_retries = 10000;     // per D2D receiver
};

struct Scenario
{
    std::vector<Link> links; // links[0] is cellular
    RisGeometry ris;
    Area area;
    std::uint64_t seed = 0;

    int link_count() const { return static_cast<int>(links.size()); }
};

class ScenarioError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Places the cellular pair straddling the X axis at x = cell_distance/2 and
// scatters D2D pairs uniformly over the area. Deterministic in `seed`.
Scenario sample_scenario(const ScenarioParams &params, std::uint64_t seed);

// Throws ScenarioError naming the first broken invariant.
void validate_scenario(const Scenario &scn, const ScenarioParams &params);

} // namespace risd2d

#endif
