#include "thmm/io.hpp"

#include <fstream>
#include <sstream>

namespace thmm {

namespace {

cplx scalar_from_json(const Json& x) {
  if (x.is_number()) return {x.get<double>(), 0.0};
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
    return {x[0].get<double>(), x[1].get<double>()};
  }
  throw InvalidArgument("matrix entry must be a number or an [re, im] pair");
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidArgument(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

template <typename T>
T get(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("field \"") + name + "\" has the wrong type");
  }
}

Interval interval_from_json(const Json& j) {
  try {
    return Interval(get<double>(j, "a"), get<double>(j, "b"));
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidArgument(e.what());
  }
}

void check_q(const Matrix& m, int q, const std::string& what) {
  if (m.rows() != q || m.cols() != q) {
    throw InvalidArgument(what + " is not " + std::to_string(q) + "x" + std::to_string(q));
  }
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw InvalidArgument("matrix must be a non-empty list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument("matrix rows have different lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = scalar_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json measure_to_json(const DiscreteMatrixMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& at : mu.atoms) atoms.push_back({{"t", at.t}, {"weight", matrix_to_json(at.weight)}});
  return {{"q", mu.q}, {"a", mu.interval.a}, {"b", mu.interval.b}, {"atoms", atoms}};
}

DiscreteMatrixMeasure measure_from_json(const Json& j) {
  DiscreteMatrixMeasure mu;
  mu.interval = interval_from_json(j);
  mu.q = get<int>(j, "q");
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw InvalidArgument("\"atoms\" must be a list");
  for (const Json& at : atoms) {
    Atom a{get<double>(at, "t"), matrix_from_json(field(at, "weight"))};
    check_q(a.weight, mu.q, "atom weight");
    mu.atoms.push_back(std::move(a));
  }
  mu.validate();
  return mu;
}

Json moments_to_json(const MomentSequence& seq) {
  Json s = Json::array();
  for (const MatrixQ& x : seq.moments()) s.push_back(matrix_to_json(x));
  return {{"q", seq.q()}, {"a", seq.a()}, {"b", seq.b()}, {"m", seq.order()}, {"moments", s}};
}

MomentSequence moments_from_json(const Json& j) {
  const Interval iv = interval_from_json(j);
  const int q = get<int>(j, "q");
  const Json& s = field(j, "moments");
  if (!s.is_array() || s.empty()) throw InvalidArgument("\"moments\" must be a non-empty list");
  std::vector<MatrixQ> moments;
  for (const Json& x : s) {
    moments.push_back(matrix_from_json(x));
    check_q(moments.back(), q, "moment s_" + std::to_string(moments.size() - 1));
  }
  if (j.contains("m") && get<int>(j, "m") != static_cast<int>(moments.size()) - 1) {
    throw InvalidArgument("\"m\" does not match the number of moments");
  }
  return MomentSequence(iv, std::move(moments));
}

Json verdict_to_json(const SolvabilityVerdict& v) {
  Json eigs = Json::array();
  for (const auto& e : v.min_eigs) {
    eigs.push_back({{"name", e.name}, {"min_eig", e.min_eig}, {"norm", e.norm}, {"pd", e.pd},
                    {"psd", e.psd}});
  }
  return {{"parity", to_string(v.parity)},
          {"n", v.n},
          {"pd", v.pd},
          {"psd", v.psd},
          {"min_eigs", eigs},
          {"h1tilde_invertible", optional_bool(v.h1tilde_invertible)},
          {"gamma_invertible", optional_bool(v.gamma_invertible)},
          {"assumptions_hold", v.assumptions_hold()},
          {"failures", v.failures}};
}

Json report_to_json(const IdentityReport& r) {
  Json inst = {{"q", r.instance.q}, {"m", r.instance.m}, {"a", r.instance.a}, {"b", r.instance.b}};
  inst["seed"] = r.instance.seed ? Json(*r.instance.seed) : Json(nullptr);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x = {{"id", e.id},
              {"residual", e.residual ? Json(*e.residual) : Json(nullptr)},
              {"tol", e.tol},
              {"pass", e.pass()},
              {"status", to_string(e.status)}};
    if (!e.note.empty()) x["note"] = e.note;
    entries.push_back(std::move(x));
  }
  return {{"instance", inst}, {"entries", entries}, {"overall", r.overall}};
}

Json resolvent_to_json(const ResolventEval& e) {
  return {{"z", {e.z.real(), e.z.imag()}},
          {"matrix", matrix_to_json(e.M)},
          {"alpha", matrix_to_json(e.alpha())},
          {"beta", matrix_to_json(e.beta())},
          {"gamma", matrix_to_json(e.gamma())},
          {"delta", matrix_to_json(e.delta())}};
}

Json expansion_to_json(const ExpansionComparison& c) {
  Json coeffs = Json::array();
  for (std::size_t j = 0; j < c.series.coeffs.size(); ++j) {
    coeffs.push_back(
        {{"index", j},
         {"source", c.series.source[j] == CoefficientSource::ClosedForm ? "closed-form" : "extracted"},
         {"value", matrix_to_json(c.series.coeffs[j])},
         {"diff", c.diff[j]}});
  }
  return {{"center", to_string(c.series.center)},
          {"parity", to_string(c.series.parity)},
          {"n", c.series.n},
          {"coefficients", coeffs},
          {"max_diff", c.max_diff()}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("cannot write " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace thmm
