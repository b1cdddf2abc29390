#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "matmeasure/accont.hpp"
#include "matmeasure/borel_set.hpp"
#include "matmeasure/complex_matrix.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/cyclic.hpp"
#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/vector_function.hpp"

namespace matmeasure {

using json = nlohmann::json;

// Shared convention: complex numbers as [re, im], matrices as row-major
// arrays of such pairs.

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("expected a complex number as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a matrix as an array of rows");
    const int n = static_cast<int>(j.size());
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (!j[static_cast<size_t>(i)].is_array() || static_cast<int>(j[static_cast<size_t>(i)].size()) != n)
            throw ParseError("matrix row " + std::to_string(i) + " has wrong length");
        for (int k = 0; k < n; ++k)
            m(i, k) = complex_from_json(j[static_cast<size_t>(i)][static_cast<size_t>(k)]);
    }
    return m;
}

inline json to_json(const std::vector<Complex>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

inline std::vector<Complex> vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected a vector as an array of complex pairs");
    std::vector<Complex> v;
    for (const auto& e : j) v.push_back(complex_from_json(e));
    return v;
}

inline json to_json(const MatrixMeasure& m) {
    json j;
    j["d"] = m.d();
    j["atoms"] = json::array();
    for (const auto& a : m.atoms())
        j["atoms"].push_back(json{{"t", a.t}, {"weight", to_json(a.weight)}});
    j["segments"] = json::array();
    for (const auto& s : m.segments())
        j["segments"].push_back(json{{"a", s.a}, {"b", s.b}, {"density", to_json(s.density)}});
    return j;
}

inline MatrixMeasure measure_from_json(const json& j, double tol = kDefaultTol) {
    if (!j.contains("d")) throw ParseError("measure: missing 'd'");
    MatrixMeasure m(j["d"].get<int>());
    for (const auto& a : j.value("atoms", json::array()))
        m.add_atom(a.at("t").get<double>(), matrix_from_json(a.at("weight")), tol);
    for (const auto& s : j.value("segments", json::array()))
        m.add_segment(s.at("a").get<double>(), s.at("b").get<double>(),
                      matrix_from_json(s.at("density")), tol);
    return m;
}

inline json to_json(const VectorFunction& f) {
    json j;
    j["d"] = f.d();
    j["atoms"] = json::object();
    for (const auto& av : f.point_values()) {
        std::ostringstream key;
        key.precision(17);
        key << av.t;
        j["atoms"][key.str()] = to_json(av.value);
    }
    j["segments"] = json::array();
    for (const auto& s : f.segments()) {
        json polys = json::array();
        for (const auto& p : s.polys) {
            json coeffs = json::array();
            for (const auto& c : p) coeffs.push_back(to_json(c));
            polys.push_back(std::move(coeffs));
        }
        j["segments"].push_back(json{{"a", s.a}, {"b", s.b}, {"polys", std::move(polys)}});
    }
    return j;
}

inline VectorFunction function_from_json(const json& j) {
    VectorFunction f(j.at("d").get<int>());
    const json atoms = j.value("atoms", json::object());
    for (auto it = atoms.begin(); it != atoms.end(); ++it)
        f.set_value(std::stod(it.key()), vector_from_json(it.value()));
    for (const auto& s : j.value("segments", json::array())) {
        std::vector<Poly> polys;
        for (const auto& pc : s.at("polys")) {
            Poly p;
            for (const auto& c : pc) p.push_back(complex_from_json(c));
            polys.push_back(std::move(p));
        }
        f.add_segment(s.at("a").get<double>(), s.at("b").get<double>(), std::move(polys));
    }
    return f;
}

struct OperatorInput {
    HermitianOperator op;
    VectorSystem phi;
};

inline OperatorInput operator_from_json(const json& j, double tol = kDefaultTol) {
    if (!j.contains("matrix")) throw ParseError("operator: missing 'matrix'");
    HermitianOperator op(matrix_from_json(j["matrix"]), tol);
    VectorSystem phi;
    for (const auto& v : j.value("vectors", json::array())) {
        auto vec = vector_from_json(v);
        if (static_cast<int>(vec.size()) != op.n())
            throw ParseError("operator: vector length does not match matrix size");
        phi.vectors.push_back(std::move(vec));
    }
    return OperatorInput{std::move(op), std::move(phi)};
}

inline json to_json(const XmueReport& r) {
    return json{{"n", r.n},
                {"k", r.k},
                {"rank", r.rank},
                {"isometry_residual", r.isometry_residual},
                {"coisometry_residual", r.coisometry_residual},
                {"conjugation_residual", r.conjugation_residual},
                {"projection_residual", r.projection_residual}};
}

inline json to_json(const AcReport& r) {
    return json{{"mu_sing_G", r.mu_sing_G},
                {"is_ac_in_G", r.is_ac_in_G},
                {"hypotheses_hold", r.hypotheses_hold},
                {"leb_closure_G", r.leb_closure_G.to_string()},
                {"sigma_ac", r.sigma_ac.to_string()},
                {"sigma_p", r.sigma_p.to_string()},
                {"inclusion_holds", r.inclusion_holds}};
}

}  // namespace matmeasure
