// algequiv: equivalence toolkit for first-order optimization algorithms.
//
// Exit codes: 0 success (or "equivalent" verdicts), 1 "not equivalent"
// verdicts, 2 any error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algequiv/algequiv.hpp"
#include "algequiv/verify.hpp"

namespace {

using namespace algequiv;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::map<std::string, Rational> parse_bindings(const std::vector<std::string>& params) {
  std::map<std::string, Rational> out;
  for (auto& p : params) {
    auto eq = p.find('=');
    require(eq != std::string::npos, Errc::io, "--param expects name=p/q, got '" + p + "'");
    out[p.substr(0, eq)] = rat_parse(p.substr(eq + 1));
  }
  return out;
}

StateSpace load_ss(const std::string& path, const std::map<std::string, Rational>& binds) {
  StateSpace ss;
  if (has_suffix(path, ".json")) {
    json j = json::parse(read_file(path));
    require(j.contains("A"), Errc::io, "'" + path + "' is not a state-space JSON file");
    ss = statespace_from_json(j);
  } else {
    ss = lower_text(read_file(path));
  }
  return binds.empty() ? ss : ss.subst(binds);
}

TransferMatrix load_tf(const std::string& path, const std::map<std::string, Rational>& binds) {
  TransferMatrix tf;
  if (has_suffix(path, ".json")) {
    json j = json::parse(read_file(path));
    if (j.contains("A")) {
      tf = transfer_function(statespace_from_json(j));
    } else {
      tf = transfer_from_json(j);
    }
  } else {
    tf = transfer_function(lower_text(read_file(path)));
  }
  return binds.empty() ? tf : tf.subst(binds);
}

void print_tf_text(std::ostream& os, const TransferMatrix& tf) {
  os << "oracles:";
  for (auto& o : tf.oracles) {
    os << " " << o.name;
    if (o.kind != OracleKind::generic) os << ":" << kind_name(o.kind);
  }
  os << "\n";
  for (int i = 0; i < tf.H.rows(); ++i)
    for (int j = 0; j < tf.H.cols(); ++j)
      os << "H[" << i + 1 << "][" << j + 1 << "] = " << tf.H(i, j).str() << "\n";
}

OracleKind parse_kind(const std::string& s) {
  if (s == "prox") return OracleKind::prox;
  if (s == "prox_conj" || s == "conj") return OracleKind::prox_conj;
  if (s == "subdiff") return OracleKind::subdiff;
  if (s == "subdiff_conj") return OracleKind::subdiff_conj;
  raise(Errc::io, "unknown oracle kind '" + s + "' (use prox, prox_conj, subdiff, subdiff_conj)");
}

// "prox:conj" or "prox:prox_conj" etc.; `conj` names the conjugate partner.
std::pair<OracleKind, OracleKind> parse_relation(const std::string& rel) {
  auto colon = rel.find(':');
  require(colon != std::string::npos, Errc::io, "--relation expects from:to");
  std::string from = rel.substr(0, colon), to = rel.substr(colon + 1);
  OracleKind kf = parse_kind(from);
  OracleKind kt;
  if (to == "conj") {
    kt = kf == OracleKind::prox ? OracleKind::prox_conj
         : kf == OracleKind::prox_conj ? OracleKind::prox
         : kf == OracleKind::subdiff ? OracleKind::subdiff_conj
                                     : OracleKind::subdiff;
  } else {
    kt = parse_kind(to);
  }
  return {kf, kt};
}

RatFunc relation_step(const TransferMatrix& tf, int channel) {
  const std::string& s = tf.oracles[channel - 1].step;
  return s.empty() ? RatFunc::param("t") : parse_ratfunc(s);
}

OracleImpl parse_oracle_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      auto eq = item.find('=');
      require(eq != std::string::npos, Errc::io, "oracle spec field '" + item + "' needs key=value");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  if (kind == "linear") return OracleImpl::linear(rat_parse(kv.count("L") ? kv["L"] : "1"));
  if (kind == "affine")
    return OracleImpl::affine(rat_parse(kv.count("L") ? kv["L"] : "1"),
                              rat_parse(kv.count("c") ? kv["c"] : "0"));
  if (kind == "soft")
    return OracleImpl::soft_threshold(kv.count("lambda") ? std::stod(kv["lambda"]) : 1.0);
  if (kind == "quadgrad")
    return OracleImpl::quad_gradient(kv.count("Q") ? std::stod(kv["Q"]) : 1.0,
                                     kv.count("q") ? std::stod(kv["q"]) : 0.0);
  raise(Errc::io, "unknown oracle spec '" + spec +
                      "' (use linear:L=p/q, affine:L=p/q,c=p/q, soft:lambda=x, quadgrad:Q=x,q=x)");
}

std::vector<Rational> parse_vector(const std::string& csv, int expected) {
  std::vector<Rational> out;
  if (!csv.empty()) {
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rat_parse(item));
  }
  if (out.empty()) out.assign(expected, Rational(0));
  require(static_cast<int>(out.size()) == expected, Errc::dimension_mismatch,
          "expected " + std::to_string(expected) + " components");
  return out;
}

struct Options {
  std::string file_a, file_b;
  std::vector<std::string> params;
  std::string format = "text";
  int cap = 5;
  std::string relation;
  int channel = 1;
  int steps = 25;
  std::uint64_t seed = 1;
  std::vector<std::string> oracle_specs;
  std::string x0;
  std::string name;
  bool list = false, verify = false;
};

int cmd_tf(const Options& opt) {
  TransferMatrix tf = load_tf(opt.file_a, parse_bindings(opt.params));
  if (opt.format == "json") {
    std::cout << to_json(tf, true).dump(2) << "\n";
  } else {
    print_tf_text(std::cout, tf);
  }
  return 0;
}

int cmd_check_oracle(const Options& opt) {
  auto binds = parse_bindings(opt.params);
  TransferMatrix h1 = load_tf(opt.file_a, binds), h2 = load_tf(opt.file_b, binds);
  bool eq = oracle_equivalent(h1, h2);
  if (opt.format == "json") {
    std::cout << json{{"equivalent", eq}}.dump(2) << "\n";
  } else if (eq) {
    std::cout << "oracle-equivalent\n";
    if (h1.p() == 1) std::cout << "equal: " << h1.H(0, 0).str() << "\n";
  } else {
    std::cout << "not oracle-equivalent\n";
  }
  return eq ? 0 : 1;
}

int cmd_check_shift(const Options& opt) {
  auto binds = parse_bindings(opt.params);
  TransferMatrix h1 = load_tf(opt.file_a, binds), h2 = load_tf(opt.file_b, binds);
  auto cert = shift_equivalent(h1, h2);
  if (opt.format == "json") {
    json out{{"equivalent", cert.has_value()}};
    if (cert) {
      json c = to_json(*cert);
      out["m"] = c["m"];
      out["b"] = c["b"];
    }
    std::cout << out.dump(2) << "\n";
  } else if (cert) {
    std::cout << "shift-equivalent, m = (";
    for (std::size_t i = 0; i < cert->m.m.size(); ++i)
      std::cout << (i ? "," : "") << cert->m.m[i];
    std::cout << ")\n";
  } else {
    std::cout << "not shift-equivalent\n";
  }
  return cert ? 0 : 1;
}

int cmd_enumerate(const Options& opt) {
  TransferMatrix h = load_tf(opt.file_a, parse_bindings(opt.params));
  auto cls = enumerate_shift_class(h, opt.cap);
  if (opt.format == "json") {
    json out = json::array();
    for (auto& [m, tf] : cls) out.push_back({{"m", m.m}, {"H", matrix_to_json(tf.H)}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [m, tf] : cls) {
      std::cout << "m = (";
      for (std::size_t i = 0; i < m.m.size(); ++i) std::cout << (i ? "," : "") << m.m[i];
      std::cout << ")\n";
      print_tf_text(std::cout, tf);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_check_lft(const Options& opt) {
  auto binds = parse_bindings(opt.params);
  TransferMatrix h1 = load_tf(opt.file_a, binds), h2 = load_tf(opt.file_b, binds);
  auto [from, to] = parse_relation(opt.relation);
  RatFunc t = relation_step(h1, opt.channel);
  LftMatrix m = embed_common(prox_table(from, to, t), opt.channel, h1.p());
  bool holds = lft_equivalent(h1, h2, m);
  if (opt.format == "json") {
    std::cout << json{{"holds", holds},
                      {"residual_zero", holds},
                      {"M", matrix_to_json(m.full())}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (holds ? "LFT-equivalent" : "not LFT-equivalent under this relation") << "\n";
  }
  return holds ? 0 : 1;
}

int cmd_transform_lft(const Options& opt) {
  TransferMatrix h = load_tf(opt.file_a, parse_bindings(opt.params));
  auto [from, to] = parse_relation(opt.relation);
  OracleKind declared = h.oracles[opt.channel - 1].kind;
  require(declared == OracleKind::generic || declared == from, Errc::oracle_mismatch,
          "channel " + std::to_string(opt.channel) + " is declared as " +
              kind_name(declared) + ", not " + kind_name(from));
  TransferMatrix out;
  if (from == OracleKind::prox || from == OracleKind::subdiff) {
    TransferMatrix in = h;
    in.oracles[opt.channel - 1].kind = from;
    out = prox_family_transform(in, opt.channel, to);
  } else {
    RatFunc t = relation_step(h, opt.channel);
    LftMatrix m = embed_common(prox_table(to, from, t), opt.channel, h.p());
    auto labels = h.oracles;
    labels[opt.channel - 1] = detail::derived_sig(labels[opt.channel - 1], to, t);
    out = lft_transform(h, m, labels);
  }
  if (opt.format == "json") {
    std::cout << to_json(out, true).dump(2) << "\n";
  } else {
    print_tf_text(std::cout, out);
  }
  return 0;
}

int cmd_minreal(const Options& opt) {
  TransferMatrix h = load_tf(opt.file_a, parse_bindings(opt.params));
  require(h.is_numeric(), Errc::free_parameter,
          "minreal needs every parameter bound; pass --param name=p/q");
  StateSpace ss = ho_kalman(h);
  json out = to_json(ss);
  out["source"] = emit_source(ss, opt.name.empty() ? "minreal" : opt.name);
  if (opt.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_json(ss).dump(2) << "\n\n" << out["source"].get<std::string>();
  }
  return 0;
}

int cmd_emit(const Options& opt) {
  StateSpace ss = load_ss(opt.file_a, parse_bindings(opt.params));
  std::cout << emit_source(ss, opt.name.empty() ? "emitted" : opt.name);
  return 0;
}

int cmd_simulate(const Options& opt) {
  StateSpace ss = load_ss(opt.file_a, parse_bindings(opt.params));
  require(static_cast<int>(opt.oracle_specs.size()) == ss.p(), Errc::dimension_mismatch,
          "need exactly " + std::to_string(ss.p()) + " --oracle specs");
  std::vector<OracleImpl> oracles;
  for (auto& s : opt.oracle_specs) oracles.push_back(parse_oracle_spec(s));
  bool exact = true;
  for (auto& o : oracles) exact = exact && o.exact();
  int n = ss.n(), p = ss.p();

  auto header = [&](std::ostream& os) {
    os << "k";
    for (int i = 1; i <= p; ++i) os << ",y_" << i;
    for (int i = 1; i <= p; ++i) os << ",u_" << i;
    for (int i = 1; i <= n; ++i) os << ",x_" << i;
    os << "\n";
  };
  if (exact) {
    Trajectory tr = simulate(ss, oracles, parse_vector(opt.x0, n), opt.steps);
    header(std::cout);
    for (int k = 0; k < tr.steps(); ++k) {
      std::cout << k;
      for (auto& v : tr.y[k]) std::cout << "," << v.get_str();
      for (auto& v : tr.u[k]) std::cout << "," << v.get_str();
      for (auto& v : tr.x[k]) std::cout << "," << v.get_str();
      std::cout << "\n";
    }
  } else {
    std::vector<Rational> x0q = parse_vector(opt.x0, n);
    std::vector<double> x0(x0q.size());
    for (std::size_t i = 0; i < x0q.size(); ++i) x0[i] = x0q[i].get_d();
    FloatTrajectory tr = simulate_float(ss, oracles, x0, opt.steps);
    header(std::cout);
    std::cout.precision(17);
    for (std::size_t k = 0; k < tr.y.size(); ++k) {
      std::cout << k;
      for (auto v : tr.y[k]) std::cout << "," << v;
      for (auto v : tr.u[k]) std::cout << "," << v;
      for (auto v : tr.x[k]) std::cout << "," << v;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_corpus(const Options& opt) {
  if (opt.verify) return report_acceptance(std::cout) == 0 ? 0 : 1;
  if (!opt.name.empty()) {
    std::cout << corpus_entry(opt.name).text;
    return 0;
  }
  for (auto& e : corpus()) std::cout << e.name << "  -  " << e.title << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact equivalence checks for first-order optimization algorithms"};
  app.require_subcommand(1);
  Options opt;

  auto add_params = [&](CLI::App* c) {
    c->add_option("--param", opt.params, "bind a parameter, e.g. --param eta=1/4");
    c->add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  auto* tf = app.add_subcommand("tf", "print the transfer function of an algorithm");
  tf->add_option("file", opt.file_a, "input .alg or .json")->required();
  add_params(tf);

  auto* co = app.add_subcommand("check-oracle", "decide oracle equivalence");
  co->add_option("file1", opt.file_a)->required();
  co->add_option("file2", opt.file_b)->required();
  add_params(co);

  auto* cs = app.add_subcommand("check-shift", "decide shift equivalence");
  cs->add_option("file1", opt.file_a)->required();
  cs->add_option("file2", opt.file_b)->required();
  add_params(cs);

  auto* en = app.add_subcommand("enumerate-shifts", "enumerate the shift-equivalence class");
  en->add_option("file", opt.file_a)->required();
  en->add_option("--cap", opt.cap, "bound on each shift (default 5)");
  add_params(en);

  auto* cl = app.add_subcommand("check-lft", "decide LFT equivalence for a table relation");
  cl->add_option("file1", opt.file_a)->required();
  cl->add_option("file2", opt.file_b)->required();
  cl->add_option("--relation", opt.relation, "oracle relation, e.g. prox:conj")->required();
  cl->add_option("--channel", opt.channel, "1-based transformed channel")->required();
  add_params(cl);

  auto* tl = app.add_subcommand("transform-lft", "rewrite one oracle channel via an LFT");
  tl->add_option("file", opt.file_a)->required();
  tl->add_option("--relation", opt.relation, "oracle relation, e.g. prox:conj")->required();
  tl->add_option("--channel", opt.channel, "1-based transformed channel")->required();
  add_params(tl);

  auto* mr = app.add_subcommand("minreal", "minimal realization via exact Ho-Kalman");
  mr->add_option("file", opt.file_a)->required();
  mr->add_option("--name", opt.name, "name for the emitted algorithm");
  add_params(mr);

  auto* em = app.add_subcommand("emit", "emit update-equation source for a realization");
  em->add_option("file", opt.file_a)->required();
  em->add_option("--name", opt.name, "name for the emitted algorithm");
  add_params(em);

  auto* si = app.add_subcommand("simulate", "run an algorithm against concrete oracles");
  si->add_option("--alg,file", opt.file_a)->required();
  si->add_option("--oracle", opt.oracle_specs,
                 "one per channel: linear:L=p/q affine:L=p/q,c=p/q soft:lambda=x quadgrad:Q=x,q=x")
      ->required();
  si->add_option("--steps", opt.steps, "number of steps (default 25)");
  si->add_option("--seed", opt.seed, "seed for randomized oracles");
  si->add_option("--x0", opt.x0, "comma-separated initial state");
  si->add_flag("--emit-csv", opt.list, "CSV output (the default)");
  add_params(si);

  auto* cp = app.add_subcommand("corpus", "list, show, or verify the built-in corpus");
  cp->add_option("--show", opt.name, "print the source of one entry");
  cp->add_flag("--list", opt.list, "list entries (default)");
  cp->add_flag("--verify", opt.verify, "replay the full acceptance battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tf->parsed()) return cmd_tf(opt);
    if (co->parsed()) return cmd_check_oracle(opt);
    if (cs->parsed()) return cmd_check_shift(opt);
    if (en->parsed()) return cmd_enumerate(opt);
    if (cl->parsed()) return cmd_check_lft(opt);
    if (tl->parsed()) return cmd_transform_lft(opt);
    if (mr->parsed()) return cmd_minreal(opt);
    if (em->parsed()) return cmd_emit(opt);
    if (si->parsed()) return cmd_simulate(opt);
    if (cp->parsed()) return cmd_corpus(opt);
  } catch (const algequiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
