#include <algorithm>

#include "qseries/corpus.hpp"

namespace qseries::corpus {

namespace {

const std::string kRepeatKnob = "m";

int knob_value(const std::map<std::string, int>& knobs, const std::string& name) {
  auto it = knobs.find(name);
  if (it == knobs.end()) throw Error(ErrorKind::UnboundSymbol, "template refers to unknown knob '" + name + "'");
  return it->second;
}

std::string replace_hash(const std::string& text, int j) {
  std::string out;
  for (char ch : text) {
    if (ch == '#')
      out += std::to_string(j);
    else
      out += ch;
  }
  return out;
}

// Index of the ')' closing the '(' at open.
std::size_t matching_paren(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  throw Error(ErrorKind::SyntaxError, "unbalanced template '" + s + "'");
}

std::vector<std::string> expand_hash_list(const std::vector<std::string>& items, int m) {
  std::vector<std::string> out;
  for (const auto& s : items) {
    if (s.find('#') == std::string::npos) {
      out.push_back(s);
      continue;
    }
    for (int j = 1; j <= m; ++j) out.push_back(replace_hash(s, j));
  }
  return out;
}

int repeat_count(const std::map<std::string, int>& knobs) {
  auto it = knobs.find(kRepeatKnob);
  return it == knobs.end() ? 0 : it->second;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

dsl::Environment with_knobs(dsl::Environment env, const std::map<std::string, int>& knobs) {
  for (const auto& [k, v] : knobs) env.values[k] = QMonomial(Coeff(v), 0);
  return env;
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "PASS";
    case Outcome::Fail:
      return "FAIL";
    case Outcome::Error:
      return "ERROR";
  }
  return "?";
}

std::vector<std::map<std::string, int>> knob_assignments(const IdentitySpec& spec) {
  std::vector<std::map<std::string, int>> out{{}};
  for (const auto& k : spec.knobs) {
    std::vector<std::map<std::string, int>> next;
    for (const auto& partial : out)
      for (int v = k.lo; v <= k.hi; ++v) {
        auto a = partial;
        a[k.name] = v;
        next.push_back(std::move(a));
      }
    out = std::move(next);
  }
  return out;
}

std::string expand_template(const std::string& tmpl, const std::map<std::string, int>& knobs) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '$') {
      out += tmpl[i++];
      continue;
    }
    if (tmpl.compare(i, 2, "${") == 0) {
      auto close = tmpl.find('}', i);
      if (close == std::string::npos) throw Error(ErrorKind::SyntaxError, "unterminated ${ in template");
      out += std::to_string(knob_value(knobs, tmpl.substr(i + 2, close - i - 2)));
      i = close + 1;
      continue;
    }
    bool is_list = tmpl.compare(i, 6, "$list(") == 0;
    bool is_prod = tmpl.compare(i, 6, "$prod(") == 0;
    if (!is_list && !is_prod) throw Error(ErrorKind::SyntaxError, "unknown template directive at " + std::to_string(i));
    std::size_t open = i + 5;
    std::size_t close = matching_paren(tmpl, open);
    std::string inner = tmpl.substr(open + 1, close - open - 1);
    auto semi = inner.find(';');
    if (semi == std::string::npos) throw Error(ErrorKind::SyntaxError, "template repetition needs 'knob; text'");
    std::string knob = inner.substr(0, semi);
    knob.erase(std::remove(knob.begin(), knob.end(), ' '), knob.end());
    std::string body = inner.substr(semi + 1);
    body.erase(0, body.find_first_not_of(' '));
    int m = knob_value(knobs, knob);
    for (int j = 1; j <= m; ++j) out += is_list ? ", " + replace_hash(body, j) : "*(" + replace_hash(body, j) + ")";
    i = close + 1;
  }
  return out;
}

std::vector<std::string> expand_symbols(const IdentitySpec& spec, const std::map<std::string, int>& knobs) {
  return expand_hash_list(spec.signature.symbols, repeat_count(knobs));
}

std::vector<std::string> expand_constraints(const IdentitySpec& spec, const std::map<std::string, int>& knobs) {
  return expand_hash_list(spec.signature.constraints, repeat_count(knobs));
}

std::uint64_t env_seed(std::uint64_t seed, const std::string& id, const std::map<std::string, int>& knobs, int trial) {
  std::string key = id;
  for (const auto& [k, v] : knobs) key += "|" + k + "=" + std::to_string(v);
  key += "|trial=" + std::to_string(trial);
  return splitmix(seed ^ fnv1a(key));
}

VerificationReport verify(const IdentitySpec& spec, const std::map<std::string, int>& knobs,
                          const dsl::Environment& env, int order) {
  VerificationReport r;
  r.id = spec.id;
  r.variant = spec.variant;
  r.knobs = knobs;
  r.env = env;
  r.order = order;
  r.exact = spec.finite;
  try {
    auto lhs = dsl::parse(expand_template(spec.lhs, knobs));
    auto rhs = dsl::parse(expand_template(spec.rhs, knobs));
    std::set<std::string> declared;
    for (const auto& s : expand_symbols(spec, knobs)) declared.insert(s);
    for (const auto& [k, v] : knobs) declared.insert(k);
    dsl::check_symbols(*lhs, declared);
    dsl::check_symbols(*rhs, declared);
    auto full = with_knobs(env, knobs);

    if (spec.finite) {
      RatFunc l = dsl::eval_exact(*lhs, full);
      RatFunc rr = dsl::eval_exact(*rhs, full);
      RatFunc diff = l - rr;
      if (!diff.is_zero()) {
        int e = diff.val();
        r.outcome = Outcome::Fail;
        r.mismatch = Mismatch{e, l.to_series(e).coefficient(e), rr.to_series(e).coefficient(e)};
      }
      return r;
    }

    QSeries l = dsl::eval(*lhs, full, order);
    QSeries rr = dsl::eval(*rhs, full, order);
    for (const QSeries* s : {&l, &rr})
      if (s->prec() < order)
        throw Error(ErrorKind::PrecisionExceeded, "a side is only known to O(q^" + std::to_string(s->prec() + 1) +
                                                      "), order " + std::to_string(order) + " requested");
    int from = std::min({l.val(), rr.val(), 0});
    for (int e = from; e <= order; ++e) {
      Coeff a = l.coefficient(e), b = rr.coefficient(e);
      if (a != b) {
        r.outcome = Outcome::Fail;
        r.mismatch = Mismatch{e, a, b};
        break;
      }
    }
  } catch (const Error& e) {
    r.outcome = Outcome::Error;
    r.error_kind = e.kind();
    r.error_message = e.what();
  } catch (const std::exception& e) {
    r.outcome = Outcome::Error;
    r.error_kind = ErrorKind::EvalError;
    r.error_message = e.what();
  }
  return r;
}

std::vector<VerificationReport> verify_entry(const IdentitySpec& spec, const RunOptions& opts) {
  std::vector<VerificationReport> out;
  if (opts.trials <= 0) return out;
  const int order = opts.order.value_or(spec.default_order());
  for (const auto& knobs : knob_assignments(spec)) {
    const auto symbols = expand_symbols(spec, knobs);
    const auto constraints = expand_constraints(spec, knobs);
    const bool fixed = symbols.empty() && !spec.signature.uses_poly;
    std::optional<VerificationReport> cached;
    for (int trial = 0; trial < opts.trials; ++trial) {
      const auto seed = env_seed(opts.seed, spec.id, knobs, trial);
      VerificationReport r;
      if (fixed && cached) {
        r = *cached;
      } else {
        try {
          auto env = sample_env(symbols, constraints, spec.signature.uses_poly, seed);
          r = verify(spec, knobs, env, order);
        } catch (const Error& e) {
          r.id = spec.id;
          r.variant = spec.variant;
          r.knobs = knobs;
          r.order = order;
          r.exact = spec.finite;
          r.outcome = Outcome::Error;
          r.error_kind = e.kind();
          r.error_message = e.what();
        }
        // Every environment of a parameter-free entry is the same one.
        if (fixed) cached = r;
      }
      r.seed = seed;
      r.trial = trial;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<VerificationReport> verify_all(const RunOptions& opts) {
  std::vector<VerificationReport> out;
  for (const auto& spec : builtin_corpus()) {
    auto part = verify_entry(spec, opts);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace qseries::corpus
