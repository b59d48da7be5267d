#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "block_unitary.hpp"
#include "error.hpp"
#include "poly_track.hpp"

namespace qsvt {

struct DemoInstance {
    std::string name;
    std::string description;
    BlockUnitary unitary;
    PhaseSchedule schedule;
};

inline std::vector<std::string> demo_names() {
    return {"identity", "swap", "sigma-0.6-dilation", "homogeneous-pi2", "degenerate-sigma"};
}

inline DemoInstance demo_instance(const std::string &name) {
    constexpr double pi = std::numbers::pi;
    if (name == "identity")
        return {name, "U = I on C^2, H = K = first coordinate, empty schedule", decompose(identity(2), 1, 1), {}};
    if (name == "swap") {
        ComplexMatrix u(2, 2);
        u << 0.0, 1.0, 1.0, 0.0;
        return {name, "U = [[0,1],[1,0]], H = K = first coordinate (A = 0), one pair (pi/3, pi/6), final phase 0",
                decompose(u, 1, 1), PhaseSchedule({{pi / 3, pi / 6}}, 0.0)};
    }
    if (name == "sigma-0.6-dilation") {
        ComplexMatrix a(1, 1);
        a << 0.6;
        return {name, "dilation of A = (0.6), one pair theta = 0, phi = pi/2", dilate(a, false),
                PhaseSchedule({{0.0, pi / 2}})};
    }
    if (name == "homogeneous-pi2")
        return {name, "Haar U of dimension 8 (seed 42), H = first 3, K = first 5 coordinates, two pairs (0, pi/2); "
                      "the even product is -I",
                decompose(haar_unitary(8, 42), 3, 5), PhaseSchedule::homogeneous(2, 0.0, pi / 2)};
    if (name == "degenerate-sigma") {
        const ComplexMatrix a = 0.6 * identity(2);
        return {name, "dilation of A = 0.6 I_2 (sigma = 0.6 twice), two pairs and a final phase", dilate(a, false),
                PhaseSchedule({{pi / 3, pi / 6}, {1.0, 2.0}}, 0.5)};
    }
    throw Error(Errc::UnknownDemo, "no demo named '" + name + "'");
}

} // namespace qsvt
