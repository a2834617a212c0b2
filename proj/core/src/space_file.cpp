#include "mflag/space_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mflag {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw GeometryError(ErrorCode::ParseError, where + ": " + what);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

Vec as_vector(const json& j, const std::string& where, int expected) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    fail(where, "expected " + std::to_string(expected) + " entries, got " +
                    std::to_string(j.size()));
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v[static_cast<Eigen::Index>(k)] = as_number(j[k], where + "[" + std::to_string(k) + "]");
  }
  return v;
}

Mat as_matrix(const json& j, const std::string& where, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    fail(where, "expected " + std::to_string(n) + " rows");
  }
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    m.row(r) = as_vector(j[r], where + "[" + std::to_string(r) + "]", n).transpose();
  }
  return m;
}

json vector_json(const Vec& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json matrix_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

}  // namespace

SpaceFile parse_space_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GeometryError(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  SpaceFile f;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    f.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) fail("dim", "expected an integer");
  f.dim = doc["dim"].get<int>();
  if (f.dim < 1 || f.dim > kMaxDim) fail("dim", "must be in [1, " + std::to_string(kMaxDim) + "]");
  const int n = f.dim;

  if (doc.contains("basis_names")) {
    const auto& names = doc["basis_names"];
    if (!names.is_array() || static_cast<int>(names.size()) != n) {
      fail("basis_names", "expected " + std::to_string(n) + " strings");
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (!names[k].is_string()) fail("basis_names[" + std::to_string(k) + "]", "expected a string");
      f.basis_names.push_back(names[k].get<std::string>());
    }
  }

  if (doc.contains("brackets")) {
    const auto& brackets = doc["brackets"];
    if (!brackets.is_array()) fail("brackets", "expected an array");
    for (std::size_t k = 0; k < brackets.size(); ++k) {
      const std::string where = "brackets[" + std::to_string(k) + "]";
      const auto& b = brackets[k];
      if (!b.is_object()) fail(where, "expected an object with i, j, coeffs");
      for (const char* key : {"i", "j"}) {
        if (!b.contains(key) || !b[key].is_number_integer()) {
          fail(where + "." + key, "expected an integer");
        }
      }
      if (!b.contains("coeffs")) fail(where + ".coeffs", "missing");
      const int i = b["i"].get<int>();
      const int j = b["j"].get<int>();
      if (i < 1 || j > n || i >= j) fail(where, "indices must satisfy 1 <= i < j <= dim");
      f.brackets.push_back({i - 1, j - 1, as_vector(b["coeffs"], where + ".coeffs", n)});
    }
  }

  if (!doc.contains("g")) fail("g", "missing");
  f.g = as_matrix(doc["g"], "g", n);
  if (doc.contains("g0")) f.g0 = as_matrix(doc["g0"], "g0", n);

  if (doc.contains("h_basis")) {
    const auto& h = doc["h_basis"];
    if (!h.is_array()) fail("h_basis", "expected an array of vectors");
    for (std::size_t k = 0; k < h.size(); ++k) {
      f.h_basis.push_back(as_vector(h[k], "h_basis[" + std::to_string(k) + "]", n));
    }
  }
  if (doc.contains("X")) f.X = as_vector(doc["X"], "X", n);

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    if (t.contains("structural")) f.tol_structural = as_number(t["structural"], "tolerances.structural");
    if (t.contains("agree")) f.tol_agree = as_number(t["agree"], "tolerances.agree");
    if (t.contains("fd_step")) f.tol_fd_step = as_number(t["fd_step"], "tolerances.fd_step");
    for (const auto& [key, value] : t.items()) {
      if (key != "structural" && key != "agree" && key != "fd_step") {
        fail("tolerances." + key, "unknown tolerance");
      }
    }
  }
  return f;
}

SpaceFile read_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorCode::ParseError, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_space_file(ss.str());
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::ParseError,
                        path + ": " + std::string(e.what()).substr(sizeof("ParseError: ") - 1));
  }
}

std::string emit_space_file(const SpaceFile& f) {
  json doc = json::object();
  doc["name"] = f.name;
  doc["dim"] = f.dim;
  if (!f.basis_names.empty()) doc["basis_names"] = f.basis_names;
  json brackets = json::array();
  for (const auto& b : f.brackets) {
    brackets.push_back({{"i", b.i + 1}, {"j", b.j + 1}, {"coeffs", vector_json(b.coeffs)}});
  }
  doc["brackets"] = brackets;
  if (f.g0) doc["g0"] = matrix_json(*f.g0);
  doc["g"] = matrix_json(f.g);
  if (!f.h_basis.empty()) {
    json h = json::array();
    for (const auto& v : f.h_basis) h.push_back(vector_json(v));
    doc["h_basis"] = h;
  }
  if (f.X) doc["X"] = vector_json(*f.X);
  if (f.tol_structural || f.tol_agree || f.tol_fd_step) {
    json t = json::object();
    if (f.tol_structural) t["structural"] = *f.tol_structural;
    if (f.tol_agree) t["agree"] = *f.tol_agree;
    if (f.tol_fd_step) t["fd_step"] = *f.tol_fd_step;
    doc["tolerances"] = t;
  }
  return doc.dump(2) + "\n";
}

SpaceFile space_file_from(const MatsumotoSpace& space) {
  const auto& alg = space.algebra;
  SpaceFile f;
  f.name = space.name;
  f.dim = alg.dim();
  f.basis_names = alg.basis_names();
  for (int i = 0; i < f.dim; ++i) {
    for (int j = i + 1; j < f.dim; ++j) {
      const Vec c = alg.ad(i).col(j);
      if (!c.isZero(0.0)) f.brackets.push_back({i, j, c});
    }
  }
  f.g0 = space.metrics.g0.matrix();
  f.g = space.metrics.g.matrix();
  for (Eigen::Index c = 0; c < space.split.h_basis.cols(); ++c) {
    f.h_basis.push_back(space.split.h_basis.col(c));
  }
  f.X = space.drift;
  return f;
}

Tolerances apply_overrides(Tolerances base, const SpaceFile& file) {
  if (file.tol_structural) base.structural = *file.tol_structural;
  if (file.tol_agree) base.agree = *file.tol_agree;
  if (file.tol_fd_step) base.fd_step = *file.tol_fd_step;
  return base;
}

MatsumotoSpace build_space(const SpaceFile& file, const Tolerances& tol) {
  auto alg = build_algebra(file.dim, file.brackets, file.basis_names, tol.structural);
  const InnerProduct g(file.g, tol.structural);
  const InnerProduct g0 = file.g0 ? InnerProduct(*file.g0, tol.structural) : g;
  auto split = reductive_split(file.h_basis, g0, alg, tol.structural);
  const double ext = extension_residual(g, split, g0);
  if (ext > tol.structural * std::max(1.0, g.matrix().cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorCode::InconsistentExtension,
                        "g must equal g0 on h with zero h/m cross terms (residual " +
                            std::to_string(ext) + ")");
  }
  auto pack = phi_from_metrics(g0, g, alg, tol.structural);
  const Vec X = file.X.value_or(Vec::Zero(file.dim));
  return make_matsumoto_space(file.name, std::move(alg), std::move(pack), std::move(split), X,
                              tol.structural);
}

}  // namespace mflag
