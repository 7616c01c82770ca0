#include "bicross/json_io.hpp"

#include <filesystem>
#include <fstream>

#include "bicross/errors.hpp"

namespace bicross::json_io {

namespace {

Rational rational_from(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw SpecError("expected a rational as \"num/den\" or an integer");
}

json vec_entries(const SparseVec& v) {
    json out = json::array();
    for (const auto& t : v) out.push_back(json::array({t.key, t.coef.str()}));
    return out;
}

}  // namespace

json group_to_json(const FiniteGroup& g) {
    return json{{"name", g.name()}, {"order", g.order()}, {"cayley", g.cayley()}};
}

FiniteGroup group_from_json(const json& j) {
    try {
        const std::string name = j.value("name", std::string("group"));
        if (j.contains("cayley")) {
            FiniteGroup g(name, j.at("cayley").get<std::vector<std::vector<int>>>());
            if (j.contains("order") && j.at("order").get<int>() != g.order())
                throw SpecError("order does not match the Cayley table");
            return g;
        }
        if (j.contains("permutation_generators")) {
            const int degree = j.at("degree").get<int>();
            auto gens = j.at("permutation_generators").get<std::vector<Perm>>();
            return group_from_generators(degree, gens, kDefaultOrderCap, name);
        }
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed group JSON: ") + e.what());
    }
    throw SpecError("group JSON needs \"cayley\" or \"permutation_generators\"");
}

FiniteGroup load_group(const std::string& spec) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(spec, ec)) {
        std::ifstream in(spec);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw SpecError("cannot parse " + spec + ": " + e.what());
        }
        return group_from_json(j);
    }
    return builtin_group(spec);
}

json matched_pair_to_json(const MatchedPair& mp) {
    return json{{"X", mp.X.name()},
                {"G", mp.G.elements},
                {"M", mp.M.elements},
                {"act_left", mp.act_left},
                {"act_right", mp.act_right}};
}

json matrix_to_json(const LinearMap& m) {
    json entries = json::array();
    for (const auto& [r, c, v] : m.entries()) entries.push_back(json::array({r, c, v.str()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

LinearMap matrix_from_json(const json& j) {
    try {
        const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> e;
        for (const auto& x : j.at("entries")) {
            const auto r = x.at(0).get<std::size_t>(), c = x.at(1).get<std::size_t>();
            if (r >= rows || c >= cols) throw ShapeError("matrix entry out of range");
            e.emplace_back(r, c, rational_from(x.at(2)));
        }
        return LinearMap::from_entries(rows, cols, e);
    } catch (const json::exception& ex) {
        throw SpecError(std::string("malformed matrix JSON: ") + ex.what());
    }
}

json polynomial_to_json(const Polynomial& p) {
    json c = json::array();
    for (const auto& r : p.coeffs()) c.push_back(r.str());
    return json{{"coeffs", std::move(c)}};
}

json hopf_to_json(const HopfAlgebraData& h) {
    json basis = json::array();
    for (const auto& l : h.labels) basis.push_back(l.str());
    json product = json::array(), coproduct = json::array();
    for (std::size_t i = 0; i < h.dim; ++i)
        for (std::size_t j = 0; j < h.dim; ++j)
            for (const auto& t : h.mul(i, j)) product.push_back(json::array({i, j, t.key, t.coef.str()}));
    for (std::size_t i = 0; i < h.dim; ++i)
        for (const auto& t : h.delta(i))
            coproduct.push_back(json::array({i, t.key / h.dim, t.key % h.dim, t.coef.str()}));
    json counit = json::array();
    for (const auto& c : h.counit) counit.push_back(c.str());
    // Antipode entries as [row, col, value]: S(e_col) has coefficient value at e_row.
    json out{{"name", h.name},
             {"dim", h.dim},
             {"basis", std::move(basis)},
             {"product", std::move(product)},
             {"coproduct", std::move(coproduct)},
             {"unit", vec_entries(h.unit)},
             {"counit", std::move(counit)},
             {"antipode", matrix_to_json(h.antipode).at("entries")}};
    if (h.star) out["star"] = matrix_to_json(*h.star).at("entries");
    return out;
}

json module_to_json(const BicrossedBimodule& w) {
    json am = json::array(), ag = json::array();
    for (const auto& m : w.act_M) am.push_back(matrix_to_json(m));
    for (const auto& m : w.act_G) ag.push_back(matrix_to_json(m));
    return json{{"dim", w.dim}, {"gradeG", w.grade_G}, {"gradeM", w.grade_M}, {"actM", am}, {"actG", ag}};
}

BicrossedBimodule module_from_json(const json& j) {
    try {
        BicrossedBimodule w;
        w.dim = j.at("dim").get<std::size_t>();
        w.grade_G = j.at("gradeG").get<std::vector<int>>();
        w.grade_M = j.at("gradeM").get<std::vector<int>>();
        for (const auto& m : j.at("actM")) w.act_M.push_back(matrix_from_json(m));
        for (const auto& m : j.at("actG")) w.act_G.push_back(matrix_from_json(m));
        return w;
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed module JSON: ") + e.what());
    }
}

json element_to_json(const TensorElement& x, std::size_t dim) {
    json terms = json::array();
    for (const auto& t : x.v) {
        json row = json::array();
        for (auto i : split_key(t.key, dim, x.rank)) row.push_back(i);
        row.push_back(t.coef.str());
        terms.push_back(std::move(row));
    }
    return json{{"rank", x.rank}, {"dim", dim}, {"terms", std::move(terms)}};
}

json report_to_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json jc{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}, {"sampled", c.sampled}};
        if (!c.note.empty()) jc["note"] = c.note;
        if (c.counterexample)
            jc["counterexample"] = json{{"indices", c.counterexample->indices},
                                        {"lhs", c.counterexample->lhs},
                                        {"rhs", c.counterexample->rhs}};
        checks.push_back(std::move(jc));
    }
    return json{{"title", r.title}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

}  // namespace bicross::json_io
