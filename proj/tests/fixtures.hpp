#pragma once

// The three canonical desk instances used throughout the suite.
//   I1: single point with loop cost 5
//   I2: zero-cost 2-cycle, alpha = 0, Aubry = {0,1}
//   I3: zero-cost loop at 0, alpha = 0, Aubry = {0}, u0 = (0,2)

#include "weakkam/space.hpp"

namespace fixtures {

template <class S>
weakkam::Space<S> I1() {
    return weakkam::validate_space<S>({"a"}, {{S(5)}});
}

template <class S>
weakkam::Space<S> I2() {
    return weakkam::validate_space<S>({"a", "b"}, {{S(1), S(0)}, {S(0), S(2)}});
}

template <class S>
weakkam::Space<S> I3() {
    return weakkam::validate_space<S>({"a", "b"}, {{S(0), S(2)}, {S(3), S(1)}});
}

}  // namespace fixtures
