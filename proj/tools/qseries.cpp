// qseries: expand, verify and tabulate q-series identities.
//
// Exit codes: 0 success, 1 verification or table mismatch, 2 input error,
// 3 unknown corpus id.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qseries/corpus.hpp"
#include "qseries/dsl.hpp"
#include "qseries/oracle.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qseries;

enum ExitCode { kOk = 0, kMismatch = 1, kInputError = 2, kUnknownId = 3 };

enum class Format { Text, Csv, Json };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "message" plus the offending text with a caret line under the span.
std::string annotate(const Error& e, const std::string& text) {
  std::string out = std::string(to_string(e.kind())) + ": " + e.what();
  if (!e.has_span() || text.empty()) return out;
  auto span = e.span();
  std::size_t start = std::min(span.start, text.size());
  std::size_t end = std::max(start + 1, std::min(span.end, text.size()));
  out += "\n  " + text + "\n  " + std::string(start, ' ') + std::string(end - start, '^');
  return out;
}

std::map<std::string, QMonomial> parse_params(const std::vector<std::string>& params) {
  std::map<std::string, QMonomial> out;
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + p + "' is not of the form sym=c*q^m");
    std::string name = p.substr(0, eq);
    std::string value = p.substr(eq + 1);
    std::optional<QMonomial> m;
    try {
      m = dsl::eval_monomial(*dsl::parse(value), {});
    } catch (const Error& e) {
      throw InputError("parameter " + name + ": " + annotate(e, value));
    }
    if (!m) throw InputError("parameter " + name + " = '" + value + "' is not a monomial c*q^m");
    out[name] = *m;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string knobs_text(const std::map<std::string, int>& knobs) {
  std::string s;
  for (const auto& [k, v] : knobs) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

std::string env_text(const dsl::Environment& env) {
  std::string s;
  for (const auto& [k, v] : env.values) s += (s.empty() ? "" : " ") + k + "=" + v.to_string();
  if (!env.poly_f.empty()) {
    s += (s.empty() ? "f=[" : " f=[");
    for (std::size_t i = 0; i < env.poly_f.size(); ++i) s += (i ? "," : "") + env.poly_f[i].get_str();
    s += "]";
  }
  return s;
}

json report_json(const corpus::VerificationReport& r) {
  json j;
  j["id"] = r.id;
  j["variant"] = std::string(corpus::to_string(r.variant));
  j["knobs"] = json::object();
  for (const auto& [k, v] : r.knobs) j["knobs"][k] = v;
  j["env"] = json::object();
  for (const auto& [k, v] : r.env.values) j["env"][k] = v.to_string();
  if (!r.env.poly_f.empty()) {
    j["env"]["f"] = json::array();
    for (const auto& c : r.env.poly_f) j["env"]["f"].push_back(c.get_str());
  }
  j["seed"] = r.seed;
  j["trial"] = r.trial;
  j["order"] = r.order;
  j["mode"] = r.exact ? "exact" : "series";
  j["outcome"] = std::string(corpus::to_string(r.outcome));
  if (r.mismatch)
    j["mismatch"] = {{"exponent", r.mismatch->exponent}, {"lhs", r.mismatch->lhs.get_str()},
                     {"rhs", r.mismatch->rhs.get_str()}};
  if (r.error_kind) j["error"] = {{"kind", std::string(to_string(*r.error_kind))}, {"message", r.error_message}};
  return j;
}

std::string report_text(const corpus::VerificationReport& r) {
  std::ostringstream os;
  os << corpus::to_string(r.outcome) << " " << r.id << " [" << corpus::to_string(r.variant) << "]";
  if (!r.knobs.empty()) os << " {" << knobs_text(r.knobs) << "}";
  os << " trial=" << r.trial << " seed=" << r.seed << " order=" << (r.exact ? std::string("exact") : std::to_string(r.order));
  if (!r.env.values.empty() || !r.env.poly_f.empty()) os << " env{" << env_text(r.env) << "}";
  if (r.mismatch)
    os << " first mismatch at q^" << r.mismatch->exponent << ": lhs " << r.mismatch->lhs.get_str() << ", rhs "
       << r.mismatch->rhs.get_str();
  if (r.error_kind) os << " " << r.error_message;
  return os.str();
}

int cmd_expand(const std::string& text, int order, const std::vector<std::string>& params, Format fmt) {
  dsl::Environment env;
  env.values = parse_params(params);
  QSeries s;
  try {
    auto e = dsl::parse(text);
    std::set<std::string> declared;
    for (const auto& [k, v] : env.values) declared.insert(k);
    dsl::check_symbols(*e, declared);
    s = dsl::eval(*e, env, order);
  } catch (const Error& e) {
    throw InputError(annotate(e, text));
  }
  if (s.prec() < order)
    throw InputError("PrecisionExceeded: result only known to O(q^" + std::to_string(s.prec() + 1) + ")");
  if (fmt == Format::Json) {
    json j{{"expr", text}, {"order", order}, {"val", s.val()}, {"coefficients", json::array()}};
    for (int e = s.val(); e <= order; ++e) j["coefficients"].push_back({{"exponent", e}, {"coeff", s.coefficient(e).get_str()}});
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  if (fmt == Format::Csv) std::cout << "exponent,coefficient\n";
  for (int e = s.val(); e <= order; ++e)
    std::cout << e << (fmt == Format::Csv ? "," : ":") << s.coefficient(e).get_str() << "\n";
  return kOk;
}

int cmd_verify(const std::string& id, std::optional<int> order, int trials, std::uint64_t seed, Format fmt) {
  corpus::RunOptions opts{order, trials, seed};
  std::vector<corpus::VerificationReport> reports;
  if (id == "all") {
    reports = corpus::verify_all(opts);
  } else {
    auto entries = corpus::lookup(id);
    if (entries.empty()) {
      std::cerr << "unknown corpus id '" << id << "' (see 'qseries list')\n";
      return kUnknownId;
    }
    for (const auto* e : entries) {
      auto part = corpus::verify_entry(*e, opts);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  }
  bool failed = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.gating_failure(); });
  if (fmt == Format::Json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    std::cout << arr.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    std::cout << "id,variant,knobs,trial,seed,order,mode,outcome,exponent,lhs,rhs,error\n";
    for (const auto& r : reports) {
      std::cout << r.id << "," << corpus::to_string(r.variant) << "," << csv_field(knobs_text(r.knobs)) << ","
                << r.trial << "," << r.seed << "," << r.order << "," << (r.exact ? "exact" : "series") << ","
                << corpus::to_string(r.outcome) << ",";
      if (r.mismatch)
        std::cout << r.mismatch->exponent << "," << r.mismatch->lhs.get_str() << "," << r.mismatch->rhs.get_str();
      else
        std::cout << ",,";
      std::cout << "," << csv_field(r.error_message) << "\n";
    }
  } else {
    int pass = 0, fail = 0, error = 0;
    for (const auto& r : reports) {
      std::cout << report_text(r) << "\n";
      (r.outcome == corpus::Outcome::Pass ? pass : r.outcome == corpus::Outcome::Fail ? fail : error)++;
    }
    std::cout << reports.size() << " reports: " << pass << " PASS, " << fail << " FAIL, " << error << " ERROR"
              << (failed ? " (failures in gating entries)" : "") << "\n";
  }
  return failed ? kMismatch : kOk;
}

int cmd_table(const std::string& kind, int m, int upto, Format fmt) {
  oracle::CountTable table;
  std::string expr;
  if (kind == "r" || kind == "t") {
    if (m < 1) throw InputError("--m must be at least 1 for table " + kind);
    table = kind == "r" ? oracle::r_m(m, upto) : oracle::t_m(m, upto);
    expr = (kind == "r" ? "thetaphi^" : "thetapsi^") + std::to_string(m);
  } else if (kind == "p") {
    table = oracle::partitions(upto);
    expr = "1/qpochinf(q,1)";
  } else {
    throw InputError("table kind must be r, t or p");
  }
  if (upto < 0) throw InputError("--upto must be nonnegative");
  QSeries s = dsl::eval(*dsl::parse(expr), {}, upto);
  bool all = true;
  json arr = json::array();
  if (fmt == Format::Csv) std::cout << "n,oracle,series,match\n";
  for (int n = 0; n <= upto; ++n) {
    const mpz_class& o = table.values[static_cast<std::size_t>(n)];
    Coeff c = s.coefficient(n);
    bool match = c == Coeff(o);
    all = all && match;
    if (fmt == Format::Json)
      arr.push_back({{"n", n}, {"oracle", o.get_str()}, {"series", c.get_str()}, {"match", match}});
    else
      std::cout << n << "," << o.get_str() << "," << c.get_str() << "," << (match ? "match" : "MISMATCH") << "\n";
  }
  if (fmt == Format::Json) std::cout << arr.dump(2) << "\n";
  return all ? kOk : kMismatch;
}

int cmd_list(Format fmt) {
  const auto& corpus = corpus::builtin_corpus();
  if (fmt == Format::Json) {
    json arr = json::array();
    for (const auto& s : corpus) {
      json j{{"id", s.id},
             {"variant", std::string(corpus::to_string(s.variant))},
             {"ref", s.ref},
             {"quote", s.quote},
             {"lhs", s.lhs},
             {"rhs", s.rhs},
             {"symbols", s.signature.symbols},
             {"constraints", s.signature.constraints},
             {"test_polynomial", s.signature.uses_poly},
             {"knobs", json::array()},
             {"finite", s.finite},
             {"default_order", s.default_order()}};
      for (const auto& k : s.knobs) j["knobs"].push_back({{"name", k.name}, {"lo", k.lo}, {"hi", k.hi}});
      if (!s.note.empty()) j["note"] = s.note;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
    return kOk;
  }
  if (fmt == Format::Csv) std::cout << "id,variant,ref,quote,finite\n";
  for (const auto& s : corpus) {
    if (fmt == Format::Csv) {
      std::cout << s.id << "," << corpus::to_string(s.variant) << "," << csv_field(s.ref) << "," << csv_field(s.quote)
                << "," << (s.finite ? "yes" : "no") << "\n";
    } else {
      std::cout << s.id;
      if (s.variant != corpus::Variant::Main) std::cout << " [" << corpus::to_string(s.variant) << "]";
      std::cout << "  " << s.ref << "  \"" << s.quote << "\"\n";
    }
  }
  return kOk;
}

int cmd_bench(const std::string& op, const std::string& id, int size, Format fmt) {
  using clock = std::chrono::steady_clock;
  if (size < 0) throw InputError("--size must be nonnegative");
  json rec{{"op", op}, {"size", size}};
  double seconds = 0;
  if (op == "mul") {
    std::mt19937_64 rng(1);
    std::vector<Coeff> a, b;
    for (int i = 0; i <= size; ++i) {
      a.emplace_back(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 9) + 1);
      b.emplace_back(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 9) + 1);
      a.back().canonicalize();
      b.back().canonicalize();
    }
    QSeries x = QSeries::from_coeffs(0, a, size), y = QSeries::from_coeffs(0, b, size);
    auto t0 = clock::now();
    QSeries z = x * y;
    seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rec["prec"] = z.prec();
  } else if (op == "verify") {
    auto entries = corpus::lookup(id);
    if (entries.empty()) {
      std::cerr << "unknown corpus id '" << id << "'\n";
      return kUnknownId;
    }
    const auto& spec = *entries.front();
    auto knobs = corpus::knob_assignments(spec).front();
    auto env = corpus::sample_env(corpus::expand_symbols(spec, knobs), corpus::expand_constraints(spec, knobs),
                                  spec.signature.uses_poly, corpus::env_seed(1, spec.id, knobs, 0));
    auto t0 = clock::now();
    auto r = corpus::verify(spec, knobs, env, size);
    seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rec["id"] = id;
    rec["outcome"] = std::string(corpus::to_string(r.outcome));
  } else {
    throw InputError("bench op must be mul or verify");
  }
  rec["seconds"] = seconds;
  if (fmt == Format::Json)
    std::cout << rec.dump() << "\n";
  else
    std::cout << "bench " << op << (id.empty() ? "" : " " + id) << " size=" << size << " seconds=" << seconds << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series expansion and identity verification"};
  app.require_subcommand(1);

  std::string format = "text";
  std::optional<int> order;
  int trials = 3;
  std::uint64_t seed = 1;
  std::vector<std::string> params;
  int upto = 100, m = 1, size = 100;
  std::string expr, id, kind, op, bench_id;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  };

  auto* expand = app.add_subcommand("expand", "Expand a DSL expression");
  expand->add_option("expr", expr, "expression")->required();
  expand->add_option("--order", order, "highest exponent shown");
  expand->add_option("--param", params, "binding sym=c*q^m (repeatable)");
  add_format(expand);

  auto* verify = app.add_subcommand("verify", "Verify corpus identities");
  verify->add_option("id", id, "corpus id or 'all'")->required();
  verify->add_option("--order", order, "verification order (default per entry)");
  verify->add_option("--trials", trials, "sampled environments per knob setting")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "base seed");
  add_format(verify);

  auto* table = app.add_subcommand("table", "Compare representation counts with series coefficients");
  table->add_option("kind", kind, "r (squares), t (triangular numbers) or p (partitions)")->required();
  table->add_option("--m", m, "number of summands");
  table->add_option("--upto", upto, "largest n");
  add_format(table);

  auto* list = app.add_subcommand("list", "Print the corpus manifest");
  add_format(list);

  auto* bench = app.add_subcommand("bench", "Time a series multiplication or a verification");
  bench->add_option("op", op, "mul or verify")->required();
  bench->add_option("id", bench_id, "corpus id for 'verify'");
  bench->add_option("--size", size, "window length or order");
  add_format(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Format fmt = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
  try {
    if (*expand) return cmd_expand(expr, order.value_or(20), params, fmt);
    if (*verify) return cmd_verify(id, order, trials, seed, fmt);
    if (*table) return cmd_table(kind, m, upto, fmt);
    if (*list) return cmd_list(fmt);
    if (*bench) return cmd_bench(op, bench_id, size, fmt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << annotate(e, "") << "\n";
    return kInputError;
  }
  return kInputError;
}
