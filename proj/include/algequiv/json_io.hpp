#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "algequiv/equiv.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/statespace.hpp"

namespace algequiv {

using nlohmann::json;

// RatFunc schema: numerator/denominator as lists of
//   {"z_power": int, "coefficient_terms": [{"params": {name: exp}, "value": "p/q"}]}.

inline json zpoly_to_json(const ZPoly& p) {
  json out = json::array();
  for (int i = 0; i <= p.degree(); ++i) {
    const ParamPoly& c = p.coeff(i);
    if (c.is_zero()) continue;
    json terms = json::array();
    for (auto& [m, coef] : c.terms()) {
      json params = json::object();
      for (auto& [name, exp] : m) params[name] = exp;
      terms.push_back({{"params", params}, {"value", coef.get_str()}});
    }
    out.push_back({{"z_power", i}, {"coefficient_terms", terms}});
  }
  return out;
}

inline ZPoly zpoly_from_json(const json& j) {
  ZPoly out;
  for (auto& ent : j) {
    int zp = ent.at("z_power").get<int>();
    ParamPoly c;
    for (auto& term : ent.at("coefficient_terms")) {
      Monomial m;
      for (auto& [name, exp] : term.at("params").items())
        m.emplace_back(name, exp.get<int>());
      std::sort(m.begin(), m.end());
      c.add_term(m, rat_parse(term.at("value").get<std::string>()));
    }
    ParamPoly prev = out.coeff(zp);
    out.set_coeff(zp, prev + c);
  }
  return out;
}

inline json to_json(const RatFunc& f) {
  return json{{"num", zpoly_to_json(f.num())}, {"den", zpoly_to_json(f.den())}};
}

inline RatFunc ratfunc_from_json(const json& j) {
  if (j.is_string()) return parse_ratfunc(j.get<std::string>());
  return RatFunc(zpoly_from_json(j.at("num")), zpoly_from_json(j.at("den")));
}

inline json to_json(const OracleSig& sig) {
  json out{{"name", sig.name}, {"kind", kind_name(sig.kind)}};
  if (!sig.step.empty()) out["step"] = sig.step;
  return out;
}

inline OracleSig oracle_from_json(const json& j) {
  OracleSig sig;
  if (j.is_string()) {
    sig.name = j.get<std::string>();
    return sig;
  }
  sig.name = j.at("name").get<std::string>();
  std::string kind = j.value("kind", "generic");
  if (kind == "subdiff") sig.kind = OracleKind::subdiff;
  else if (kind == "subdiff_conj") sig.kind = OracleKind::subdiff_conj;
  else if (kind == "prox") sig.kind = OracleKind::prox;
  else if (kind == "prox_conj") sig.kind = OracleKind::prox_conj;
  else if (kind == "generic") sig.kind = OracleKind::generic;
  else raise(Errc::io, "unknown oracle kind '" + kind + "'");
  sig.step = j.value("step", "");
  return sig;
}

// StateSpace schema: matrices as string-expression grids, e.g.
//   {"A": [["1", "0"], ["1", "0"]], "B": [["-eta"], ["0"]], ...,
//    "oracles": [...], "params": ["eta"], "states": ["x1", "x1__1"]}.

inline json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

inline RatMatrix matrix_from_json(const json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  RatMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(static_cast<int>(j.at(i).size()) == cols, Errc::io, "ragged matrix rows");
    for (int c = 0; c < cols; ++c) {
      const json& e = j.at(i).at(c);
      out(i, c) = e.is_string() ? parse_ratfunc(e.get<std::string>()) : ratfunc_from_json(e);
    }
  }
  return out;
}

inline json to_json(const StateSpace& ss) {
  json out{{"A", matrix_to_json(ss.A)}, {"B", matrix_to_json(ss.B)},
           {"C", matrix_to_json(ss.C)}, {"D", matrix_to_json(ss.D)}};
  json oracles = json::array();
  for (auto& o : ss.oracles) oracles.push_back(to_json(o));
  out["oracles"] = oracles;
  out["params"] = ss.params;
  if (!ss.state_names.empty()) out["states"] = ss.state_names;
  return out;
}

inline StateSpace statespace_from_json(const json& j) {
  StateSpace ss;
  ss.A = matrix_from_json(j.at("A"));
  ss.B = matrix_from_json(j.at("B"));
  ss.C = matrix_from_json(j.at("C"));
  ss.D = matrix_from_json(j.at("D"));
  // n = 0 state spaces serialize A as []; fix the implied widths.
  if (ss.A.rows() == 0) {
    ss.A = RatMatrix(0, 0);
    ss.B = RatMatrix(0, ss.D.cols());
    ss.C = RatMatrix(ss.D.rows(), 0);
  }
  for (auto& o : j.at("oracles")) ss.oracles.push_back(oracle_from_json(o));
  if (j.contains("params"))
    for (auto& p : j.at("params")) ss.params.push_back(p.get<std::string>());
  else {
    std::set<std::string> names;
    auto scan = [&names](const RatMatrix& m) {
      for (int i = 0; i < m.rows(); ++i)
        for (int c = 0; c < m.cols(); ++c) m(i, c).collect_names(names);
    };
    scan(ss.A);
    scan(ss.B);
    scan(ss.C);
    scan(ss.D);
    ss.params.assign(names.begin(), names.end());
  }
  if (j.contains("states"))
    for (auto& s : j.at("states")) ss.state_names.push_back(s.get<std::string>());
  ss.validate();
  return ss;
}

inline json to_json(const TransferMatrix& tf, bool structured = false) {
  json out;
  json oracles = json::array();
  for (auto& o : tf.oracles) oracles.push_back(to_json(o));
  out["oracles"] = oracles;
  if (structured) {
    json rows = json::array();
    for (int i = 0; i < tf.H.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < tf.H.cols(); ++j) row.push_back(to_json(tf.H(i, j)));
      rows.push_back(row);
    }
    out["H"] = rows;
  } else {
    out["H"] = matrix_to_json(tf.H);
  }
  return out;
}

inline TransferMatrix transfer_from_json(const json& j) {
  TransferMatrix tf;
  tf.H = matrix_from_json(j.at("H"));
  for (auto& o : j.at("oracles")) tf.oracles.push_back(oracle_from_json(o));
  require(static_cast<int>(tf.oracles.size()) == tf.H.rows(), Errc::io,
          "oracle count must match the row count");
  return tf;
}

inline json to_json(const ShiftCertificate& cert) {
  json b = json::object();
  for (auto& [ij, v] : cert.b)
    b[std::to_string(ij.first) + "," + std::to_string(ij.second)] = v;
  return json{{"m", cert.m.m}, {"b", b}};
}

}  // namespace algequiv
