#include "mptq/fixtures.hpp"

#include "mptq/transforms.hpp"

namespace mptq {

AdditiveSet conway_set()
{
    return AdditiveSet{0, 2, 3, 4, 7, 11, 12, 14};
}

MultiplicativeSet s4_set()
{
    return exp_power(conway_set(), FactoredNonzero::from_integer(2));
}

std::vector<MultiplicativeSet> grid_sets()
{
    return {
        MultiplicativeSet::of({12, 27, 36, 96, 108, 144, 162, 243, 648, 864, 1944}),
        MultiplicativeSet::of({8, 18, 32, 36, 48, 216, 324, 432, 486, 864, 1944}),
        MultiplicativeSet::of({4, 9, 12, 32, 36, 48, 54, 81, 216, 288, 648}),
        MultiplicativeSet::of({1, 6, 8, 9, 24, 72, 108, 288, 324, 432, 2592}),
        MultiplicativeSet::of({3, 18, 24, 27, 72, 108, 324, 864, 972, 1296, 7776}),
    };
}

const std::vector<Fixture>& fixtures()
{
    static const std::vector<Fixture> all = [] {
        std::vector<Fixture> v;
        v.push_back({"conway", "MSTD set with 26 sums and 25 differences", conway_set()});
        v.push_back({"s1", "symmetric about 1296, balanced",
                     MultiplicativeSet::of({3, 4, 6, 8, 9, 27, 48, 144, 162, 216, 324, 432})});
        v.push_back({"s2", "s1 with 72 adjoined, MPTQ",
                     MultiplicativeSet::of({3, 4, 6, 8, 9, 27, 48, 72, 144, 162, 216, 324, 432})});
        v.push_back({"s3", "(2,5) prime switch of s2",
                     MultiplicativeSet::of({3, 25, 15, 125, 9, 27, 1875, 1125, 5625, 405, 3375, 2025, 16875})});
        v.push_back({"s4", "2-exponential of conway", s4_set()});
        auto grid = grid_sets();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            v.push_back({"grid" + std::to_string(i + 1), "MPTQ set in the 2^a 3^b grid", grid[i]});
        }
        v.push_back({"near-miss", "quotient-dominated, one more quotient than products",
                     MultiplicativeSet::of({1, 2, 3, 6, 9})});
        v.push_back({"two-sequences", "set with two multiplier sequences",
                     MultiplicativeSet::of({5, 1280, -10, -40, 40, 2560, 160, 320})});
        return v;
    }();
    return all;
}

std::optional<Fixture> find_fixture(const std::string& name)
{
    for (const auto& f : fixtures()) {
        if (f.name == name) return f;
    }
    return std::nullopt;
}

}  // namespace mptq
