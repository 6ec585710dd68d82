#pragma once

#include <string>
#include <vector>

namespace ut {

struct DatasetFile {
    std::string path;
    std::vector<double> values;  // file order
    long skipped;                // "-" placeholder tokens
    long comments;               // "#" comment lines
};

// Accepts a file path or the built-in tag "risk73".
DatasetFile parse_dataset(const std::string& path_or_tag);

}  // namespace ut
