// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/scene.hpp"

#include <cmath>
#include <string>

#include <boost/random/uniform_01.hpp>

#include "risd2d/rng.hpp"
#include "risd2d/units.hpp"

namespace risd2d {

double distance(const Position &a, const Position &b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Position element_position(const RisGeometry &geom, int lz, int ly)
{
    if (lz < 1 || lz > geom.n_per_side || ly < 1 || ly > geom.n_per_side)
        throw std::out_of_range("element_position: index {" + std::to_string(lz) + "," +
                                std::to_string(ly) + "} outside 1.." +
                                std::to_string(geom.n_per_side));
    return {0.0, geom.y_offset + ly * geom.d_ye, lz * geom.d_ze};
}

Scenario sample_scenario(const ScenarioParams &params, std::uint64_t seed)
{
    if (params.d2d_count < 0)
        throw std::invalid_argument("sample_scenario: negative D2D count");
    if (!(params.area.x_max > params.area.x_min) || !(params.area.y_max > params.area.y_min))
        throw std::invalid_argument("sample_scenario: empty area");
    if (!(params.max_pair_distance > 0.0))
        throw std::invalid_argument("sample_scenario: max_pair_distance must be positive");
    if (params.ris.n_per_side < 1 || !(params.ris.d_ye > 0.0) || !(params.ris.d_ze > 0.0))
        throw std::invalid_argument("sample_scenario: invalid RIS geometry");

    Scenario scn;
    scn.ris = params.ris;
    scn.area = params.area;
    scn.seed = seed;

    const double half = 0.5 * params.cell_distance;
    Link cell;
    cell.index = 1;
    cell.kind = LinkKind::Cellular;
    cell.tx = {half, -half, 0.0};
    cell.rx = {half, half, 0.0};
    if (!scn.area.contains(cell.tx) || !scn.area.contains(cell.rx))
        throw ScenarioError("sample_scenario: cellular pair does not fit in the area");
    scn.links.push_back(cell);

    Rng rng = make_stream(seed, Stream::Scenario);
    boost::random::uniform_01<double> unit;
    const Area &a = params.area;

    for (int d = 0; d < params.d2d_count; ++d) {
        Link link;
        link.index = d + 2;
        link.kind = LinkKind::D2D;
        link.tx = {a.x_min + (a.x_max - a.x_min) * unit(rng),
                   a.y_min + (a.y_max - a.y_min) * unit(rng), 0.0};

        bool placed = false;
        for (int attempt = 0; attempt < params.max_retries; ++attempt) {
            const double r = params.max_pair_distance * std::sqrt(unit(rng));
            const double phi = kTwoPi * unit(rng);
            Position rx{link.tx.x + r * std::cos(phi), link.tx.y + r * std::sin(phi), 0.0};
            if (a.contains(rx) && distance(rx, link.tx) <= params.max_pair_distance) {
                link.rx = rx;
                placed = true;
                break;
            }
        }
        if (!placed)
            throw ScenarioError("sample_scenario: could not place receiver of D2D link " +
                                std::to_string(link.index) + " after " +
                                std::to_string(params.max_retries) + " retries");
        scn.links.push_back(link);
    }
    return scn;
}

void validate_scenario(const Scenario &scn, const ScenarioParams &params)
{
    int cellular = 0;
    for (std::size_t k = 0; k < scn.links.size(); ++k) {
        const Link &l = scn.links[k];
        const std::string tag = "link " + std::to_string(l.index);
        if (l.index != static_cast<int>(k) + 1)
            throw ScenarioError(tag + ": indices must be 1..D+1 in order");
        for (const Position *p : {&l.tx, &l.rx}) {
            if (!std::isfinite(p->x) || !std::isfinite(p->y) || p->z != 0.0 || p->x < 0.0)
                throw ScenarioError(tag + ": node off the front half-plane");
            if (!scn.area.contains(*p))
                throw ScenarioError(tag + ": node outside area");
        }
        const double sep = distance(l.tx, l.rx);
        if (l.kind == LinkKind::Cellular) {
            ++cellular;
            if (std::abs(sep - params.cell_distance) > 1e-9 * params.cell_distance)
                throw ScenarioError(tag + ": cellular separation differs from configured");
        } else if (sep > params.max_pair_distance) {
            throw ScenarioError(tag + ": D2D separation exceeds max_pair_distance");
        }
    }
    if (cellular != 1)
        throw ScenarioError("scenario must contain exactly one cellular link");
}

} // namespace risd2d
