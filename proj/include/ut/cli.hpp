#pragma once

#include <string>
#include <vector>

namespace ut {

// Exit codes: 0 success, 1 domain/parse error, 2 non-convergence.
int cmd_dispatch(int argc, char** argv);
int cmd_dispatch(const std::vector<std::string>& args);

}  // namespace ut
