#pragma once

// JSON encodings shared by the library and the CLI.
//
//   space      {"p": int, "q": int, "gram": [[...], ...]}
//   vector     {"coords": [...]}
//   tensor     {"space": {...}, "entries": [m^4 reals, row-major a,b,c,d]}
//   structure  [{"re": .., "im": .., "sizes": [..]}, ...] in canonical order
//
// Tensor loading validates the curvature symmetries; arbitrary arrays that
// fail validation are rejected, they are never symmetrized silently.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ossv/curvature.hpp"
#include "ossv/indefinite.hpp"
#include "ossv/osserman.hpp"
#include "ossv/spectral.hpp"

namespace ossv::io {

using nlohmann::json;

inline json vector_to_json(const Vector& v) {
  json coords = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) coords.push_back(v[i]);
  return json{{"coords", coords}};
}

inline Vector vector_from_json(const json& j) {
  if (!j.contains("coords") || !j["coords"].is_array())
    throw std::invalid_argument("vector JSON: missing \"coords\" array");
  const auto& coords = j["coords"];
  Vector v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords[i].get<double>();
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix JSON: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw std::invalid_argument("matrix JSON: ragged rows");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
  }
  return m;
}

inline json space_to_json(const SignatureSpace& space) {
  return json{{"p", space.p()}, {"q", space.q()}, {"gram", matrix_to_json(space.gram())}};
}

inline SignatureSpace space_from_json(const json& j) {
  if (!j.contains("p") || !j.contains("q"))
    throw std::invalid_argument("space JSON: missing \"p\" or \"q\"");
  const int p = j["p"].get<int>();
  const int q = j["q"].get<int>();
  if (j.contains("gram")) return SignatureSpace(p, q, matrix_from_json(j["gram"]));
  return SignatureSpace(p, q);
}

inline json tensor_to_json(const CurvatureTensor& r) {
  return json{{"space", space_to_json(r.space())}, {"entries", r.entries()}};
}

inline CurvatureTensor tensor_from_json(const json& j, double symmetry_tol = kSymmetryTol) {
  if (!j.contains("space") || !j.contains("entries"))
    throw std::invalid_argument("tensor JSON: missing \"space\" or \"entries\"");
  SignatureSpace space = space_from_json(j["space"]);
  std::vector<double> entries = j["entries"].get<std::vector<double>>();
  CurvatureTensor r(std::move(space), std::move(entries));
  const SymmetryReport report = validate_symmetries(r, symmetry_tol);
  if (!report.passed) {
    std::ostringstream msg;
    msg << "tensor JSON: curvature symmetries violated (max violation "
        << report.max_violation() << ", tol " << symmetry_tol << ")";
    throw std::invalid_argument(msg.str());
  }
  return r;
}

inline json eigenvalue_to_json(const Eigenvalue& ev) {
  return json{{"re", ev.re}, {"im", ev.im}, {"multiplicity", ev.multiplicity}};
}

inline json spectrum_to_json(const std::vector<Eigenvalue>& evs) {
  json out = json::array();
  for (const auto& ev : evs) out.push_back(eigenvalue_to_json(ev));
  return out;
}

inline json jordan_structure_to_json(const JordanStructure& s) {
  json out = json::array();
  for (const auto& b : s.blocks)
    out.push_back(json{{"re", b.eigenvalue.re}, {"im", b.eigenvalue.im}, {"sizes", b.sizes}});
  return out;
}

inline JordanStructure jordan_structure_from_json(const json& j) {
  JordanStructure s;
  for (const auto& entry : j) {
    JordanBlocks b;
    b.eigenvalue.re = entry["re"].get<double>();
    b.eigenvalue.im = entry["im"].get<double>();
    b.sizes = entry["sizes"].get<std::vector<int>>();
    int sum = 0;
    for (int size : b.sizes) sum += size;
    b.eigenvalue.multiplicity = sum * (b.eigenvalue.im == 0.0 ? 1 : 2);
    s.blocks.push_back(std::move(b));
  }
  return s;
}

inline json verdict_to_json(const OssermanVerdict& v) {
  json out{{"kind", to_string(v.kind)},
           {"samples_used", v.samples_used},
           {"reference_spectrum", spectrum_to_json(v.reference_spectrum)},
           {"reference_structure", jordan_structure_to_json(v.reference_structure)}};
  if (v.witness) {
    out["witness"] = json{{"first_index", v.witness->first_index},
                          {"second_index", v.witness->second_index},
                          {"first_point", vector_to_json(v.witness->first_point)},
                          {"second_point", vector_to_json(v.witness->second_point)},
                          {"first_structure", jordan_structure_to_json(v.witness->first_structure)},
                          {"second_structure", jordan_structure_to_json(v.witness->second_structure)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline json theorem_report_to_json(const TheoremReport& r) {
  json samples = json::array();
  for (const auto& d : r.samples)
    samples.push_back(json{{"index", d.index},
                           {"point", vector_to_json(d.point)},
                           {"structure", jordan_structure_to_json(d.structure)},
                           {"all_real", d.all_real},
                           {"diagonalizable", d.diagonalizable}});
  return json{{"hypothesis_met", r.hypothesis_met},
              {"eigenvalues_all_real", r.eigenvalues_all_real},
              {"diagonalizable_everywhere", r.diagonalizable_everywhere},
              {"sjo", verdict_to_json(r.sjo_verdict)},
              {"samples", samples}};
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return json::parse(in);
}

inline void save_tensor(const std::string& path, const CurvatureTensor& r) {
  save_json(path, tensor_to_json(r));
}

inline CurvatureTensor load_tensor(const std::string& path, double symmetry_tol = kSymmetryTol) {
  return tensor_from_json(load_json(path), symmetry_tol);
}

}  // namespace ossv::io
