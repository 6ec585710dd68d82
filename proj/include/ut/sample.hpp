#pragma once

#include <cstddef>
#include <vector>

namespace ut {

// Observations held in ascending order, each strictly inside (0,1).
struct Sample {
    std::vector<double> sorted;
    std::size_t n;
    explicit Sample(std::vector<double> values);
};

}  // namespace ut
