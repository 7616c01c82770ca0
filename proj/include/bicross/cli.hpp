#pragma once

#include <string>
#include <vector>

#include "bicross/group.hpp"
#include "bicross/matched_pair.hpp"
#include "bicross/report.hpp"

namespace bicross::cli {

struct RunConfig {
    std::string group_spec;
    std::string factor;  // empty, a factorization index, or an alias such as z6z6
    CheckOptions opt;
    std::string output_dir = ".";
    bool no_verify = false;
    bool quiet = false;
};

// Index into exact_factorizations(x) for a selector; throws FactorizationError when unresolvable.
std::size_t resolve_factor(const FiniteGroup& x, const std::vector<std::pair<Subgroup, Subgroup>>& facs,
                           const std::string& selector);

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
int run(int argc, char** argv);

}  // namespace bicross::cli
