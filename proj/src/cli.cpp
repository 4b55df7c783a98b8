/* Copyright 2026 The wjit Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "wjit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "wjit/error.hpp"
#include "wjit/hitting.hpp"
#include "wjit/interp.hpp"
#include "wjit/numtheory.hpp"
#include "wjit/oracle.hpp"
#include "wjit/witt.hpp"

namespace wjit {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& s, const std::string& what) {
  std::vector<std::uint64_t> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(what + ": '" + item + "' is not a non-negative integer");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

bool valid_name(const std::string& s) {
  static const std::regex re("[A-Za-z_][A-Za-z0-9_]*");
  return std::regex_match(s, re);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<FqPoly> Problem::polys() const {
  std::vector<FqPoly> out;
  for (const auto& e : entries) out.push_back(e.poly);
  return out;
}

std::vector<Circuit<FqContext>> Problem::circuits() const {
  std::vector<Circuit<FqContext>> out;
  for (const auto& e : entries) out.push_back(e.circuit ? *e.circuit : Circuit<FqContext>::from_poly(e.poly));
  return out;
}

nlohmann::json Problem::to_json() const {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& e : entries)
    polys.push_back({{"name", e.name}, {"kind", e.circuit ? "circuit" : "poly"}, {"source", e.source},
                     {"expanded", format_poly(e.poly, vars)}});
  return {{"field", {{"p", field->p()}, {"e", field->degree()}, {"modulus", field->modulus()}}},
          {"vars", vars},
          {"polys", polys}};
}

std::size_t infer_circuit_arity(std::string_view text) {
  static const std::regex re(R"(\bvar\s+(\d+))");
  std::size_t n = 0;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it)
    n = std::max<std::size_t>(n, std::stoull((*it)[1].str()));
  return n;
}

Problem parse_problem(std::string_view text, const std::filesystem::path& base_dir) {
  Problem pb;
  std::istringstream in{std::string(text)};
  std::set<std::string> names;
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      const auto words = split_ws(line);
      if (words[0] == "field") {
        if (pb.field) throw ParseError("duplicate field line");
        std::optional<std::uint64_t> p, e;
        std::optional<std::vector<std::uint64_t>> modulus;
        for (std::size_t k = 1; k < words.size(); ++k) {
          const auto eq = words[k].find('=');
          if (eq == std::string::npos) throw ParseError("expected key=value, got '" + words[k] + "'");
          const auto key = words[k].substr(0, eq), val = words[k].substr(eq + 1);
          if (key == "p") p = parse_u64_list(val, "p").at(0);
          else if (key == "e") e = parse_u64_list(val, "e").at(0);
          else if (key == "modulus") modulus = parse_u64_list(val, "modulus");
          else throw ParseError("unknown field key '" + key + "'");
        }
        if (!p) throw ParseError("field line needs p=");
        if (!is_prime(*p)) throw ParseError("p = " + std::to_string(*p) + " is not prime");
        if (modulus) {
          if (e && *e + 1 != modulus->size()) throw ParseError("modulus length must be e + 1");
          pb.field = FqContext::with_modulus(*p, *modulus);
        } else {
          if (e && *e == 0) throw ParseError("e must be >= 1");
          pb.field = FqContext::create(*p, static_cast<unsigned>(e.value_or(1)));
        }
      } else if (words[0] == "vars") {
        if (!pb.field) throw ParseError("vars line before field line");
        if (!pb.vars.empty()) throw ParseError("duplicate vars line");
        if (words.size() < 2) throw ParseError("vars line lists no variables");
        for (std::size_t k = 1; k < words.size(); ++k) {
          if (!valid_name(words[k])) throw ParseError("invalid variable name '" + words[k] + "'");
          if (!names.insert(words[k]).second) throw ParseError("duplicate name '" + words[k] + "'");
          pb.vars.push_back(words[k]);
        }
      } else {
        if (pb.vars.empty()) throw ParseError("definition before the vars line");
        const bool is_circuit = words[0] == "circuit";
        const std::string body = is_circuit ? trim(line.substr(7)) : line;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError("expected '<name> = ...'");
        const std::string name = trim(body.substr(0, eq)), rhs = trim(body.substr(eq + 1));
        if (!valid_name(name)) throw ParseError("invalid name '" + name + "'");
        if (!names.insert(name).second) throw ParseError("duplicate name '" + name + "'");
        if (rhs.empty()) throw ParseError("empty definition of " + name);
        ProblemEntry entry{name, rhs, FqPoly(pb.field, pb.vars.size()), std::nullopt, lineno};
        if (is_circuit) {
          const auto path = base_dir / rhs;
          const auto ctext = read_file(path);
          try {
            entry.circuit = parse_circuit(pb.field, ctext, pb.vars.size());
          } catch (const ParseError& pe) {
            throw ParseError(path.string() + ": " + pe.what());
          }
          entry.poly = entry.circuit->to_sparse_poly(kDefaultWjpTermCap);
        } else {
          entry.poly = parse_poly(pb.field, rhs, pb.vars);
        }
        pb.entries.push_back(std::move(entry));
      }
    } catch (const ParseError& e) {
      throw ParseError(e.line() ? e.what() : e.what(), lineno);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!pb.field) throw ParseError("missing field line");
  if (pb.vars.empty()) throw ParseError("missing vars line");
  if (pb.entries.empty()) throw ParseError("no polynomials");
  return pb;
}

Problem load_problem(const std::filesystem::path& path) {
  return parse_problem(read_file(path), path.parent_path());
}

namespace {

std::string index_text(const std::vector<std::size_t>& I) {
  std::string s = "{";
  for (std::size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k] + 1);
  return s + "}";
}

std::string describe(const IndependenceVerdict& v) {
  std::ostringstream os;
  os << v.method << ": " << (!v.conclusive ? "inconclusive" : v.independent ? "independent" : "dependent");
  std::vector<std::string> parts;
  if (v.level) parts.push_back("level " + std::to_string(*v.level));
  if (v.witness) {
    std::string a = "(";
    for (std::size_t k = 0; k < v.witness->alpha.size(); ++k) a += (k ? "," : "") + std::to_string(v.witness->alpha[k]);
    parts.push_back("witness I = " + index_text(v.witness->index_set) + ", alpha = " + a + "), v_p = " +
                    std::to_string(v.witness->coeff_valuation) + " < " + std::to_string(v.witness->threshold));
  }
  if (!v.note.empty()) parts.push_back(v.note);
  for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? "; " : " (") << parts[k];
  if (!parts.empty()) os << ")";
  return os.str();
}

int verdict_code(const IndependenceVerdict& v) {
  if (!v.conclusive) return kExitInconclusive;
  return v.independent ? kExitPositive : kExitNegative;
}

struct MethodRun {
  std::optional<IndependenceVerdict> verdict;
  nlohmann::json json;
  std::string text;
  int code = kExitError;
};

MethodRun run_method(const std::string& method, const Problem& pb, std::optional<unsigned> level,
                     Algo5Mode mode) {
  MethodRun run;
  const auto fs = pb.polys();
  try {
    IndependenceVerdict v;
    nlohmann::json extra;
    if (method == "wj") {
      WjOptions opts;
      opts.level = level;
      v = witt_jacobian_independent(fs, opts);
    } else if (method == "jacobian") {
      v = classical_jacobian_independent(fs);
    } else if (method == "perron") {
      auto res = independence_oracle(fs);
      v = res.verdict;
      if (res.annihilator) {
        const auto ys = default_variable_names(fs.size(), "y");
        extra["annihilator"] = {{"text", format_poly(res.annihilator->poly, ys)},
                                {"terms", poly_to_json(res.annihilator->poly)}};
      }
    } else if (method == "padic") {
      v = padic_jacobian_necessity(fs);
    } else if (method == "algo5") {
      v = algo5_independence(pb.circuits(), Algo5Options{mode});
    } else {
      throw DomainError("unknown method " + method);
    }
    run.json = v.to_json();
    if (!extra.is_null()) run.json.update(extra);
    run.text = describe(v);
    if (extra.contains("annihilator")) run.text += "\n  annihilator: " + extra["annihilator"]["text"].get<std::string>();
    run.code = verdict_code(v);
    run.verdict = std::move(v);
  } catch (const Refusal& e) {
    run.json = {{"method", method}, {"refusal", e.what()}};
    run.text = method + ": refused: " + e.what();
    run.code = kExitInconclusive;
  } catch (const CapExceeded& e) {
    run.json = {{"method", method}, {"cap_exceeded", e.what()}};
    run.text = method + ": cap exceeded: " + e.what();
    run.code = kExitInconclusive;
  }
  return run;
}

int cmd_indep(const std::string& file, const std::string& method, std::optional<unsigned> level,
              const std::string& mode_text, bool json, std::ostream& out) {
  const auto pb = load_problem(file);
  const Algo5Mode mode = mode_text == "exhaustive" ? Algo5Mode::exhaustive : Algo5Mode::support_guided;
  if (method != "all") {
    auto run = run_method(method, pb, level, mode);
    if (json) out << run.json.dump() << "\n";
    else out << run.text << "\n";
    return run.code;
  }
  nlohmann::json results = nlohmann::json::array();
  std::optional<bool> decided;
  bool agree = true;
  int code = kExitInconclusive;
  for (const std::string m : {"wj", "jacobian", "perron", "padic", "algo5"}) {
    auto run = run_method(m, pb, m == "wj" ? level : std::nullopt, mode);
    results.push_back(run.json);
    if (!json) out << run.text << "\n";
    if (!run.verdict || !run.verdict->conclusive) continue;
    if (decided && *decided != run.verdict->independent) agree = false;
    if (!decided) {
      decided = run.verdict->independent;
      code = verdict_code(*run.verdict);
    }
  }
  if (!agree) {
    const nlohmann::json artifact{{"disagreement", true}, {"results", results}, {"inputs", pb.to_json()}};
    if (json) out << artifact.dump() << "\n";
    else out << "DISAGREEMENT\n" << artifact.dump(2) << "\n";
    return kExitDisagreement;
  }
  if (json) {
    out << nlohmann::json{{"agree", true},
                          {"independent", decided ? nlohmann::json(*decided) : nlohmann::json(nullptr)},
                          {"results", results}}
               .dump()
        << "\n";
  } else {
    out << "all methods agree\n";
  }
  return code;
}

std::vector<std::size_t> parse_index_set(const std::string& text, std::size_t n) {
  std::vector<std::size_t> I;
  for (auto i : parse_u64_list(text, "index set")) {
    if (i == 0 || i > n) throw ParseError("index set entries must lie in 1.." + std::to_string(n));
    I.push_back(i - 1);
  }
  check_index_set(I, n);
  return I;
}

int cmd_wjp(const std::string& file, const std::string& index_set, std::optional<unsigned> level, bool json,
            std::ostream& out) {
  const auto pb = load_problem(file);
  const auto fs = pb.polys();
  const auto I = parse_index_set(index_set, pb.vars.size());
  const unsigned l = level.value_or(choose_level(fs.size(), std::max<std::uint64_t>(max_degree(fs), 1), pb.field->p()));
  const auto gr = GrContext::create(pb.field, l + 1);
  std::vector<GrPoly> gs;
  for (const auto& f : fs) gs.push_back(lift_poly(f, gr));
  const auto w = wjp(gs, I, l);
  const auto rep = check_degeneracy(w, l, DegeneracyMode::bounded);
  if (json) {
    out << nlohmann::json{{"level", l},
                          {"precision", l + 1},
                          {"I", parse_u64_list(index_set, "index set")},
                          {"wjp", poly_to_json(w)},
                          {"text", format_poly(w, pb.vars)},
                          {"degenerate", rep.degenerate}}
               .dump()
        << "\n";
  } else {
    out << format_poly(w, pb.vars) << "\n";
  }
  return rep.degenerate ? kExitNegative : kExitPositive;
}

int cmd_degeneracy(std::uint64_t p, unsigned e, unsigned level, std::optional<unsigned> precision,
                   const std::string& mode_text, std::optional<std::size_t> arity, const std::string& poly_text,
                   bool json, std::ostream& out) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  const DegeneracyMode mode = mode_text == "unbounded" ? DegeneracyMode::unbounded : DegeneracyMode::bounded;
  const auto gr = GrContext::create(FqContext::create(p, e), precision.value_or(level + 1));
  std::size_t n = arity.value_or(0);
  if (!arity) {
    static const std::regex re(R"(x(\d+))");
    for (auto it = std::sregex_iterator(poly_text.begin(), poly_text.end(), re); it != std::sregex_iterator(); ++it)
      n = std::max<std::size_t>(n, std::stoull((*it)[1].str()));
    n = std::max<std::size_t>(n, 1);
  }
  const auto f = parse_poly(gr, poly_text, n);
  const auto rep = check_degeneracy(f, level, mode);
  if (json) {
    nlohmann::json j{{"degenerate", rep.degenerate}, {"level", level}, {"precision", gr->precision()},
                     {"mode", mode_text}};
    if (rep.alpha)
      j["witness"] = {{"alpha", std::vector<Exponent>(rep.alpha->begin(), rep.alpha->end())},
                      {"coeff_valuation", rep.valuation},
                      {"threshold", rep.threshold}};
    out << j.dump() << "\n";
  } else if (rep.degenerate) {
    out << "degenerate\n";
  } else {
    std::string a;
    for (auto x : *rep.alpha) a += (a.empty() ? "" : ",") + std::to_string(x);
    out << "not degenerate: alpha = (" << a << "), v_p = " << rep.valuation << " < " << rep.threshold << "\n";
  }
  return rep.degenerate ? kExitNegative : kExitPositive;
}

struct HittingArgs {
  std::optional<std::uint64_t> n, r, s, delta, d;
  HittingOverrides overrides;
  std::uint64_t p = 2;
  unsigned e = 1;
  std::optional<std::uint64_t> limit;
  std::string problem, circuit;
};

int cmd_hitting(const HittingArgs& a, std::ostream& out) {
  std::optional<Problem> pb;
  FqPtr base;
  if (!a.problem.empty()) {
    pb = load_problem(a.problem);
    base = pb->field;
  } else {
    if (!is_prime(a.p)) throw DomainError("p = " + std::to_string(a.p) + " is not prime");
    base = FqContext::create(a.p, a.e);
  }
  std::optional<Circuit<FqContext>> C;
  std::vector<FqPoly> fs;
  if (pb) {
    fs = pb->polys();
    if (!a.circuit.empty()) {
      const auto text = read_file(a.circuit);
      C = parse_circuit(base, text, fs.size());
    }
  } else if (!a.circuit.empty()) {
    throw DomainError("hitting-set: --circuit needs --problem");
  }
  auto need = [](const std::optional<std::uint64_t>& v, std::optional<std::uint64_t> dflt, const char* what) {
    if (v) return *v;
    if (dflt) return *dflt;
    throw DomainError(std::string("hitting-set: --") + what + " is required");
  };
  std::optional<std::uint64_t> dn, dr, ds, ddelta, dd;
  if (pb) {
    dn = pb->vars.size();
    dr = std::min<std::uint64_t>(fs.size(), pb->vars.size());
    std::uint64_t s = 1;
    for (const auto& f : fs) s = std::max<std::uint64_t>(s, f.num_terms());
    ds = s;
    ddelta = std::max<std::uint64_t>(max_degree(fs), 1);
    if (C) dd = std::max<std::uint64_t>(C->degree_bound() * *ddelta, 1);
  }
  const auto params = HittingParams::create(need(a.n, dn, "n"), need(a.r, dr, "r"), need(a.s, ds, "s"),
                                            need(a.delta, ddelta, "delta"), need(a.d, dd, "d"), a.overrides);
  if (pb && params.n != pb->vars.size()) throw DomainError("hitting-set: --n differs from the problem's variables");
  const auto field = hitting_field(base, params);
  HittingSetStream stream(params, field);
  nlohmann::json summary{{"params", params.to_json()},
                         {"field", {{"p", field->p()}, {"t", field->degree()}}},
                         {"raw_cardinality", stream.raw_cardinality()}};
  if (C) {
    const auto hit = hits(*C, fs, stream);
    if (hit) out << hit->to_json(*field).dump() << "\n";
    summary["hit"] = hit.has_value();
    summary["examined"] = stream.emitted();
    out << nlohmann::json{{"summary", summary}}.dump() << "\n";
    return hit ? kExitPositive : kExitNegative;
  }
  std::uint64_t printed = 0;
  while (auto pt = stream.next()) {
    if (a.limit && printed >= *a.limit) break;
    out << pt->to_json(*field).dump() << "\n";
    ++printed;
  }
  summary["emitted"] = printed;
  summary["complete"] = !a.limit || printed < *a.limit;
  if (!a.limit || printed < *a.limit) summary["cardinality"] = stream.emitted();
  out << nlohmann::json{{"summary", summary}}.dump() << "\n";
  return kExitPositive;
}

int cmd_coeff(const std::string& circuit_file, const std::string& alpha_text, std::uint64_t p, unsigned e,
              unsigned precision, std::optional<std::size_t> arity, bool json, std::ostream& out) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (precision == 0) throw DomainError("coeff: precision must be >= 1");
  const auto text = read_file(circuit_file);
  const std::size_t n = arity.value_or(std::max<std::size_t>(infer_circuit_arity(text), 1));
  const auto base = FqContext::create(p, e);
  const auto C = parse_circuit(base, text, n);
  const auto alpha_list = parse_u64_list(alpha_text, "alpha");
  if (alpha_list.size() != n) throw DomainError("coeff: alpha needs " + std::to_string(n) + " entries");
  ExponentVec alpha(alpha_list.begin(), alpha_list.end());
  const std::uint64_t D = std::max<std::uint64_t>(C.degree_bound(), total_degree(alpha)) + 1;
  const unsigned t = choose_t(e, D, n, p);
  const auto field = t == e ? base : FqContext::create(p, t);
  const auto gr = GrContext::create(field, precision);
  const FieldEmbedding emb(base, field);
  const auto lifted = C.map_constants(gr, [&](FqElem c) { return gr->lift(emb(c)); });
  const auto plan = InterpPlan::create(gr, D);
  std::vector<std::uint64_t> dpow(n);
  for (std::size_t i = 0; i < n; ++i) dpow[i] = i == 0 ? 1 % plan.order : mulmod(dpow[i - 1], D, plan.order);
  std::vector<GrElem> values, point(n);
  for (std::uint64_t j = 0; j < plan.order; ++j) {
    for (std::size_t i = 0; i < n; ++i) point[i] = plan.xi_powers[mulmod(j, dpow[i], plan.order)];
    values.push_back(lifted.evaluate(point));
  }
  const GrElem c = interp_coeff_from_values(values, kronecker_index(alpha, D), plan);
  if (json) {
    out << nlohmann::json{{"alpha", alpha_list},
                          {"coefficient", gr->to_json(c)},
                          {"text", gr->format(c)},
                          {"ring", {{"p", p}, {"m", precision}, {"t", t}}},
                          {"D", D}}
               .dump()
        << "\n";
  } else {
    out << gr->format(c) << "\n";
  }
  return kExitPositive;
}

int cmd_witt_demo(std::uint64_t p, unsigned t, unsigned len, bool json, std::ostream& out) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  const auto field = FqContext::create(p, t);
  const auto W = WittRing<FqContext>::create(field, p, len);
  const std::uint64_t q = field->order();
  mpz_class size;
  mpz_ui_pow_ui(size.get_mpz_t(), q, len);
  if (size > 64) throw CapExceeded("witt-demo: tables limited to 64 elements, W has " + size.get_str());
  const std::uint64_t N = to_u64(size);
  std::vector<WittVec<FqContext>> elems;
  for (std::uint64_t k = 0; k < N; ++k) {
    std::vector<FqElem> cs;
    for (std::uint64_t r = k, i = 0; i < len; ++i, r /= q) cs.push_back(field->element_at(r % q));
    elems.push_back(W->from_coords(cs));
  }
  auto index_of = [&](const WittVec<FqContext>& a) {
    for (std::uint64_t k = 0; k < N; ++k)
      if (W->equal(elems[k], a)) return k;
    throw InternalError("witt-demo: result outside the element list");
  };
  std::vector<std::vector<std::uint64_t>> add(N, std::vector<std::uint64_t>(N)), mul = add;
  for (std::uint64_t a = 0; a < N; ++a)
    for (std::uint64_t b = 0; b < N; ++b) {
      add[a][b] = index_of(W->add(elems[a], elems[b]));
      mul[a][b] = index_of(W->mul(elems[a], elems[b]));
    }
  std::vector<std::string> names;
  for (const auto& x : elems) names.push_back(W->format(x));
  if (json) {
    out << nlohmann::json{{"ring", {{"p", p}, {"t", t}, {"length", len}}}, {"elements", names}, {"add", add},
                          {"mul", mul}}
               .dump()
        << "\n";
    return kExitPositive;
  }
  out << "W_" << len << "(F_" << q << "), " << N << " elements\n";
  for (std::uint64_t k = 0; k < N; ++k) out << "  " << k << ": " << names[k] << "\n";
  auto table = [&](const char* title, const std::vector<std::vector<std::uint64_t>>& tab) {
    out << title << "\n";
    for (const auto& row : tab) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "  ") << row[k];
      out << "\n";
    }
  };
  table("addition:", add);
  table("multiplication:", mul);
  return kExitPositive;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic independence over finite fields via the Witt-Jacobian criterion", "wjit"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::string file, method = "wj", mode = "support-guided", index_set = "1", dmode = "bounded", poly_text;
  std::optional<unsigned> level, precision;
  std::optional<std::size_t> arity;

  auto* indep = app.add_subcommand("indep", "Decide algebraic independence of a problem file");
  indep->add_option("file", file, "Problem file")->required();
  indep->add_option("--method", method, "wj, jacobian, perron, padic, algo5 or all")
      ->check(CLI::IsMember({"wj", "jacobian", "perron", "padic", "algo5", "all"}));
  indep->add_option("--level", level, "Witt-Jacobian level (default: the admissible minimum)");
  indep->add_option("--mode", mode, "algo5 mode")->check(CLI::IsMember({"exhaustive", "support-guided"}));
  indep->add_flag("--json", json);

  std::string circuits_file;
  auto* algo5 = app.add_subcommand("algo5", "Simulate the interpolation algorithm on a problem file");
  algo5->add_option("--circuits,file", circuits_file, "Problem file")->required();
  algo5->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "support-guided"}));
  algo5->add_flag("--json", json);

  auto* wjp_cmd = app.add_subcommand("wjp", "Print the Witt-Jacobian polynomial of a problem file");
  wjp_cmd->add_option("file", file)->required();
  wjp_cmd->add_option("--index-set", index_set, "Comma-separated 1-based variable indices");
  auto* wlevel = wjp_cmd->add_option("--level", level, "Level l; the ring has precision l + 1");
  wjp_cmd->add_option("--precision", precision, "Ring precision (level + 1)")->excludes(wlevel);
  wjp_cmd->add_flag("--json", json);

  std::uint64_t p = 2;
  unsigned e = 1, dlevel = 0;
  auto* degen = app.add_subcommand("degeneracy", "Check degeneracy of a polynomial over a Galois ring");
  degen->add_option("poly", poly_text, "Polynomial in x1..xn with ring coefficients")->required();
  degen->add_option("--p", p)->required();
  degen->add_option("--e", e);
  degen->add_option("--level", dlevel)->required();
  degen->add_option("--precision", precision, "Ring precision m (default level + 1)");
  degen->add_option("--mode", dmode)->check(CLI::IsMember({"bounded", "unbounded"}));
  degen->add_option("--arity", arity);
  degen->add_flag("--json", json);

  HittingArgs ha;
  auto* hit = app.add_subcommand("hitting-set", "Stream the hitting set as JSON lines");
  hit->add_option("--n", ha.n);
  hit->add_option("--r", ha.r);
  hit->add_option("--s", ha.s);
  hit->add_option("--delta", ha.delta);
  hit->add_option("--d", ha.d);
  hit->add_option("--override-s1", ha.overrides.s1);
  hit->add_option("--override-s2", ha.overrides.s2);
  hit->add_option("--override-N", ha.overrides.N);
  hit->add_option("--p", ha.p);
  hit->add_option("--e", ha.e);
  hit->add_option("--limit", ha.limit, "Print at most this many points");
  hit->add_option("--problem", ha.problem, "Problem file with f_1..f_m");
  hit->add_option("--circuit", ha.circuit, "Circuit file over y1..ym; search for a nonzero point");
  hit->add_flag("--json", json);

  std::string circuit_file, alpha;
  unsigned cprecision = 1;
  auto* coeff = app.add_subcommand("coeff", "Coefficient of x^alpha in a circuit by interpolation");
  coeff->add_option("--circuit", circuit_file)->required();
  coeff->add_option("--alpha", alpha, "Comma-separated exponents")->required();
  coeff->add_option("--p", p)->required();
  coeff->add_option("--e", e);
  coeff->add_option("--precision", cprecision, "Galois ring precision m");
  coeff->add_option("--arity", arity);
  coeff->add_flag("--json", json);

  unsigned wt = 1, wlen = 2;
  auto* demo = app.add_subcommand("witt-demo", "Addition and multiplication tables of a small Witt ring");
  demo->add_option("--p", p)->required();
  demo->add_option("--t", wt);
  demo->add_option("--len", wlen);
  demo->add_flag("--json", json);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitPositive : kExitError;
  }

  try {
    if (indep->parsed()) return cmd_indep(file, method, level, mode, json, out);
    if (algo5->parsed()) return cmd_indep(circuits_file, "algo5", std::nullopt, mode, json, out);
    if (wjp_cmd->parsed()) {
      if (precision && *precision == 0) throw DomainError("wjp: precision must be >= 1");
      if (precision) level = *precision - 1;
      return cmd_wjp(file, index_set, level, json, out);
    }
    if (degen->parsed()) return cmd_degeneracy(p, e, dlevel, precision, dmode, arity, poly_text, json, out);
    if (hit->parsed()) return cmd_hitting(ha, out);
    if (coeff->parsed()) return cmd_coeff(circuit_file, alpha, p, e, cprecision, arity, json, out);
    if (demo->parsed()) return cmd_witt_demo(p, wt, wlen, json, out);
  } catch (const Refusal& ex) {
    err << "refused: " << ex.what() << "\n";
    return kExitInconclusive;
  } catch (const CapExceeded& ex) {
    err << "cap exceeded: " << ex.what() << "\n";
    return kExitInconclusive;
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << "\n";
    return kExitError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace wjit
