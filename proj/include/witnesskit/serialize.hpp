#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "witnesskit/linalg.hpp"
#include "witnesskit/maps.hpp"
#include "witnesskit/mdi.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

// JSON forms:
//   matrix   {"dim": n, "re": [[...]], "im": [[...]]}     row-major
//   state    matrix object, optionally with "dims": {"dA": .., "dB": ..}
//   map      matrix object (the Choi matrix) plus "dimIn", "dimOut"
//   witness  {"W": matrix, "H": matrix, "A": matrix, "denom": x, "dims": {...}}
//   coeffs   2-D array of reals

namespace witnesskit::io {

using json = nlohmann::json;

inline json to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json rr = json::array(), ir = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline json to_json(BipartiteDims d) { return {{"dA", d.dA}, {"dB", d.dB}}; }

inline json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline json to_json(const DensityMatrix& rho) {
  json j = to_json(rho.matrix());
  if (rho.dims()) j["dims"] = to_json(*rho.dims());
  return j;
}

inline json to_json(const LinearMap& m) {
  json j = to_json(m.choi());
  j["dimIn"] = m.dim_in();
  j["dimOut"] = m.dim_out();
  return j;
}

inline json to_json(const NonlinearWitness& f) {
  return {{"W", to_json(f.W)}, {"H", to_json(f.H)}, {"A", to_json(f.A)}, {"denom", f.denom}, {"dims", to_json(f.dims)}};
}

namespace detail {

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline CMatrix matrix_from_json(const json& j) {
  return detail::guarded("matrix", [&] {
    const std::size_t n = j.at("dim").get<std::size_t>();
    const json& re = j.at("re");
    const json* im = j.contains("im") ? &j.at("im") : nullptr;
    if (n == 0 || re.size() != n || (im && im->size() != n))
      throw ParseError("matrix: row count does not match dim " + std::to_string(n));
    CMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (re.at(r).size() != n || (im && im->at(r).size() != n))
        throw ParseError("matrix: row " + std::to_string(r) + " has wrong length");
      for (std::size_t c = 0; c < n; ++c)
        m(r, c) = cplx(re.at(r).at(c).get<double>(), im ? im->at(r).at(c).get<double>() : 0.0);
    }
    if (!m.all_finite()) throw ParseError("matrix: non-finite entry");
    return m;
  });
}

inline BipartiteDims dims_from_json(const json& j) {
  return detail::guarded("dims", [&] {
    return BipartiteDims{j.at("dA").get<std::size_t>(), j.at("dB").get<std::size_t>()};
  });
}

inline RealMatrix real_matrix_from_json(const json& j) {
  return detail::guarded("coefficients", [&] {
    if (!j.is_array() || j.empty()) throw ParseError("coefficients: expected a 2-D array");
    RealMatrix m(j.size(), j.at(0).size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (j.at(r).size() != m.cols()) throw ParseError("coefficients: ragged rows");
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = j.at(r).at(c).get<double>();
    }
    return m;
  });
}

inline DensityMatrix state_from_json(const json& j, std::optional<BipartiteDims> fallback = std::nullopt) {
  CMatrix m = matrix_from_json(j);
  std::optional<BipartiteDims> dims = fallback;
  if (j.contains("dims")) dims = dims_from_json(j.at("dims"));
  return DensityMatrix(std::move(m), dims);
}

inline LinearMap map_from_json(const json& j) {
  CMatrix choi = matrix_from_json(j);
  return detail::guarded("map", [&] {
    return LinearMap(j.at("dimIn").get<std::size_t>(), j.at("dimOut").get<std::size_t>(), std::move(choi));
  });
}

inline NonlinearWitness witness_from_json(const json& j) {
  return detail::guarded("witness", [&] {
    NonlinearWitness f{matrix_from_json(j.at("W")), matrix_from_json(j.at("H")), matrix_from_json(j.at("A")),
                       j.at("denom").get<double>(), dims_from_json(j.at("dims"))};
    const std::size_t n = f.dims.total();
    if (f.W.dim() != n || f.H.dim() != n || f.A.dim() != n)
      throw ParseError("witness: operator dimensions disagree with dims");
    for (const CMatrix* m : {&f.W, &f.H, &f.A})
      if (!is_hermitian(*m)) throw ParseError("witness: operators must be Hermitian");
    if (!(f.denom > 0.0)) throw ParseError("witness: denom must be positive");
    return f;
  });
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace witnesskit::io
