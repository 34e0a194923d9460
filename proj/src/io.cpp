#include "starscat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace starscat {

using nlohmann::json;

nlohmann::json cmatrix_to_json(const CMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw ValidationError(what + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  CMatrix M;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.empty())
      throw ValidationError(what + " row " + std::to_string(r + 1) +
                            " must be a non-empty array");
    if (r == 0) {
      cols = row.size();
      M.resize(rows, cols);
    } else if (row.size() != cols) {
      throw ValidationError(what + " rows have inconsistent lengths");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ValidationError(what + " entries must be [re, im] number pairs");
      M(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return M;
}

namespace {

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ValidationError(std::string("missing or non-integer field \"") + key + "\"");
  return j[key].get<int>();
}

double require_double(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ValidationError(std::string("missing or non-numeric field \"") + key + "\"");
  return j[key].get<double>();
}

const json& require_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError(std::string("missing field \"") + key + "\"");
  return j[key];
}

}  // namespace

json coupling_to_json(const CouplingST& c) {
  validate_st(c);
  json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["T"] = cmatrix_to_json(c.T);
  return j;
}

CouplingST coupling_from_json(const json& j) {
  if (!j.is_object())
    throw ValidationError("coupling document must be a JSON object");
  CouplingST c;
  c.n = require_int(j, "n");
  c.m = require_int(j, "m");
  c.T = cmatrix_from_json(require_field(j, "T"), "T");
  validate_st(c);
  return c;
}

json smatrix_to_json(const CMatrix& S) {
  json j;
  j["n"] = static_cast<int>(S.rows());
  j["S"] = cmatrix_to_json(S);
  return j;
}

CMatrix smatrix_from_json(const json& j) {
  if (!j.is_object())
    throw ValidationError("scattering-matrix document must be a JSON object");
  const int n = require_int(j, "n");
  CMatrix S = cmatrix_from_json(require_field(j, "S"), "S");
  if (S.rows() != n || S.cols() != n)
    throw ValidationError("\"S\" must be square of size n = " + std::to_string(n));
  return S;
}

json graph_to_json(const ApproxGraph& g) {
  validate_graph(g);
  json j;
  j["n"] = g.n;
  j["d"] = g.d;
  json alpha = json::array();
  for (Eigen::Index i = 0; i < g.alpha.size(); ++i) alpha.push_back(g.alpha(i));
  j["alpha"] = std::move(alpha);
  json conns = json::array();
  for (const Connector& c : g.connectors) {
    json e;
    e["j"] = c.from + 1;
    e["k"] = c.to + 1;
    e["gamma"] = c.gamma;
    e["A"] = c.potential;
    conns.push_back(std::move(e));
  }
  j["connectors"] = std::move(conns);
  return j;
}

ApproxGraph graph_from_json(const json& j) {
  if (!j.is_object())
    throw ValidationError("graph document must be a JSON object");
  ApproxGraph g;
  g.n = require_int(j, "n");
  g.d = require_double(j, "d");
  const json& alpha = require_field(j, "alpha");
  if (!alpha.is_array())
    throw ValidationError("\"alpha\" must be an array");
  g.alpha = RVector::Zero(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!alpha[i].is_number())
      throw ValidationError("\"alpha\" entries must be numbers");
    g.alpha(static_cast<Eigen::Index>(i)) = alpha[i].get<double>();
  }
  const json& conns = require_field(j, "connectors");
  if (!conns.is_array())
    throw ValidationError("\"connectors\" must be an array");
  for (const json& e : conns) {
    Connector c;
    c.from = require_int(e, "j") - 1;
    c.to = require_int(e, "k") - 1;
    c.gamma = require_double(e, "gamma");
    c.potential = require_double(e, "A");
    if (!(c.gamma > 0.0))
      throw ValidationError("connector gamma must be positive");
    c.length = g.d / c.gamma;
    g.connectors.push_back(c);
  }
  validate_graph(g);
  return g;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out = "d,error\n";
  for (const ConvergenceRow& row : report.rows) {
    out += fmt17(row.d);
    out += ',';
    out += row.ok ? fmt17(row.error) : "nan";
    out += '\n';
  }
  out += "# fitted_order = ";
  out += fmt17(report.fitted_order);
  out += '\n';
  return out;
}

std::string format_cmatrix(const CMatrix& M) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "% 11.6f %+11.6fi", M(i, j).real(),
                    M(i, j).imag());
      if (j > 0) out += "   ";
      out += buf;
    }
    out += '\n';
  }
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw ValidationError("cannot open file for writing: " + path);
  out << text;
  if (!out.good())
    throw ValidationError("write failed: " + path);
}

}  // namespace starscat
