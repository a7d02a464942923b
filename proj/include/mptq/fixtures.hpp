#pragma once

// Named example sets used by the CLI and the acceptance suite.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mptq/setops.hpp"

namespace mptq {

using FixtureSet = std::variant<MultiplicativeSet, AdditiveSet>;

struct Fixture {
    std::string name;
    std::string description;
    FixtureSet set;
};

const std::vector<Fixture>& fixtures();
std::optional<Fixture> find_fixture(const std::string& name);

AdditiveSet conway_set();                        // {0,2,3,4,7,11,12,14}
MultiplicativeSet s4_set();                      // 2^conway
std::vector<MultiplicativeSet> grid_sets();      // five MPTQ sets in {2^a 3^b : a,b <= 6}

}  // namespace mptq
