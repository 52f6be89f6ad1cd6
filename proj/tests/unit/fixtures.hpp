#pragma once

#include <cmath>
#include <vector>

#include "tdho/ermakov.hpp"
#include "tdho/profiles.hpp"

namespace fixtures {

inline tdho::FrequencyProfile example1_profile() { return tdho::FrequencyProfile::tanh_step(10.0, 100.0, 5.0); }
inline tdho::FrequencyProfile example2_profile() {
    return tdho::FrequencyProfile::sech_bump(2.0, std::sqrt(102.0), 7.0);
}

/// Reference at the start of the span, Ω = ω(t_min): the convention of the CLI presets.
inline tdho::ErmakovSolution solve_in_region(const tdho::FrequencyProfile& p, double t_min, double t_max,
                                             std::vector<double> grid = {}) {
    tdho::ErmakovOptions o;
    o.reference_time = t_min;
    o.reference_frequency = p.omega(t_min);
    o.output_times = std::move(grid);
    return tdho::solve(p, t_min, t_max, o);
}

inline const tdho::ErmakovSolution& example1() {
    static const auto sol = solve_in_region(example1_profile(), -2.0, 2.0, tdho::uniform_grid(-2.0, 2.0, 1201));
    return sol;
}

inline const tdho::ErmakovSolution& example2() {
    static const auto sol = solve_in_region(example2_profile(), -3.0, 3.0, tdho::uniform_grid(-3.0, 3.0, 1201));
    return sol;
}

}  // namespace fixtures
