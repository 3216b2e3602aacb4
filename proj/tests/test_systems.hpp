#pragma once

// Small admissible circle systems shared by the test suites.

#include "schottky/config.hpp"

namespace testsys {

using namespace schottky;

inline CirclePair make_pair(const OrientedCircle& c, const OrientedCircle& cp, int label,
                            double twist = 0.0) {
    return CirclePair{c, cp, pair_circles(c, cp, twist), label};
}

/// The rank-1 workhorse: |z+2| = 1 paired with |z-2| = 1.
inline CircleSystem one_pair_system() {
    CircleSystem sys;
    sys.pairs.push_back(
        make_pair(OrientedCircle({-2.0, 0.0}, 1.0), OrientedCircle({2.0, 0.0}, 1.0), 0));
    return sys;
}

inline CircleSystem two_pair_system() {
    CircleSystem sys = one_pair_system();
    sys.pairs.push_back(
        make_pair(OrientedCircle({10.0, 0.0}, 1.0), OrientedCircle({14.0, 0.0}, 1.0), 1));
    return sys;
}

inline CircleSystem three_pair_system() {
    CircleSystem sys = two_pair_system();
    sys.pairs.push_back(
        make_pair(OrientedCircle({-2.0, 8.0}, 1.0), OrientedCircle({2.0, 8.0}, 1.0), 2));
    return sys;
}

} // namespace testsys
