#pragma once

#include <string>

#include <json.hpp>

#include "bicross/group.hpp"
#include "bicross/hopf.hpp"
#include "bicross/linalg.hpp"
#include "bicross/matched_pair.hpp"
#include "bicross/report.hpp"
#include "bicross/representations.hpp"

namespace bicross::json_io {

using json = nlohmann::ordered_json;

// {"name","order","cayley"}; reading also accepts {"name","degree","permutation_generators"}.
json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& j);
// A builtin spec (cyclic:n, ...) or a path to a group JSON file.
FiniteGroup load_group(const std::string& spec);

json matched_pair_to_json(const MatchedPair& mp);

// {"rows","cols","entries":[[row,col,"num/den"]]}
json matrix_to_json(const LinearMap& m);
LinearMap matrix_from_json(const json& j);

// {"coeffs":["num/den",...]} lowest degree first.
json polynomial_to_json(const Polynomial& p);

json hopf_to_json(const HopfAlgebraData& h);

// {"dim","gradeG","gradeM","actM":[matrix...],"actG":[matrix...]}
json module_to_json(const BicrossedBimodule& w);
BicrossedBimodule module_from_json(const json& j);

// {"rank","dim","terms":[[i1,...,ir,"num/den"]]}
json element_to_json(const TensorElement& x, std::size_t dim);

json report_to_json(const Report& r);

}  // namespace bicross::json_io
