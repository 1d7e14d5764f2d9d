#pragma once

// The identity corpus: every entry is a pair of DSL templates plus the
// parameter signature under which the two sides must agree.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/dsl.hpp"

namespace qseries::corpus {

enum class Variant {
  Main,         // the identity as stated (or as derived from a stated one)
  AsPrinted,    // verbatim transcription of a display suspected to be misprinted
  Conjectured,  // a guessed correction of an AS-PRINTED display
};

std::string_view to_string(Variant v);

/// Gating variants decide the exit status; the others are report-only.
inline bool is_gating(Variant v) { return v == Variant::Main; }

struct Knob {
  std::string name;
  int lo = 0;
  int hi = 0;
};

/// Parameter signature: the symbols to sample and constraints over them.
///
/// Constraint grammar (one per string):
///   val(EXPR) >= K     val(EXPR) <= K     coeff(EXPR) != C
/// where EXPR is a monomial expression in the signature's symbols and the
/// knobs. A constraint containing '#' is instantiated for # = 1..m where m is
/// the value of the entry's repeat knob.
struct ParamSignature {
  std::vector<std::string> symbols;
  std::vector<std::string> constraints;
  /// The entry needs a random test polynomial for polyF.
  bool uses_poly = false;
};

struct IdentitySpec {
  std::string id;
  Variant variant = Variant::Main;
  std::string ref;    // theorem / display label
  std::string quote;  // short anchor text
  std::string lhs;    // DSL templates, see expand_template
  std::string rhs;
  ParamSignature signature;
  std::vector<Knob> knobs;
  /// Verified as an exact Laurent-polynomial equality.
  bool finite = false;
  /// Why a variant differs from its Main entry, if it does.
  std::string note;

  /// No sampled symbols, no test polynomial and no integer knobs.
  bool parameter_free() const { return signature.symbols.empty() && !signature.uses_poly && knobs.empty(); }
  int default_order() const { return parameter_free() ? 100 : 40; }
};

/// All knob assignments of an entry, in lexicographic order.
std::vector<std::map<std::string, int>> knob_assignments(const IdentitySpec& spec);

/// Template expansion:
///   ${k}              value of knob k
///   $list(k; text)    ", text_1, ..., text_m" (empty when m = 0)
///   $prod(k; text)    "*(text_1)*...*(text_m)" (empty when m = 0)
/// where text_j is text with every '#' replaced by j and m is knob k.
std::string expand_template(const std::string& tmpl, const std::map<std::string, int>& knobs);

/// Symbols of the signature after knob expansion ('#' symbols instantiated).
std::vector<std::string> expand_symbols(const IdentitySpec& spec, const std::map<std::string, int>& knobs);
std::vector<std::string> expand_constraints(const IdentitySpec& spec, const std::map<std::string, int>& knobs);

const std::vector<IdentitySpec>& builtin_corpus();
/// All variants of an id, in manifest order; empty when unknown.
std::vector<const IdentitySpec*> lookup(const std::string& id);

/// Deterministic sampling of monomial values satisfying the constraints.
dsl::Environment sample_env(const std::vector<std::string>& symbols, const std::vector<std::string>& constraints,
                            bool uses_poly, std::uint64_t seed);
/// Checks every constraint against env.
bool satisfies(const std::vector<std::string>& constraints, const dsl::Environment& env);

enum class Outcome { Pass, Fail, Error };
std::string_view to_string(Outcome o);

struct Mismatch {
  int exponent = 0;
  Coeff lhs;
  Coeff rhs;
};

struct VerificationReport {
  std::string id;
  Variant variant = Variant::Main;
  std::map<std::string, int> knobs;
  dsl::Environment env;
  std::uint64_t seed = 0;
  int trial = 0;
  int order = 0;
  bool exact = false;
  Outcome outcome = Outcome::Pass;
  std::optional<Mismatch> mismatch;
  std::optional<ErrorKind> error_kind;
  std::string error_message;

  bool gating_failure() const { return is_gating(variant) && outcome != Outcome::Pass; }
};

/// Verify one knob assignment under env. Never throws for evaluator errors.
VerificationReport verify(const IdentitySpec& spec, const std::map<std::string, int>& knobs,
                          const dsl::Environment& env, int order);

struct RunOptions {
  std::optional<int> order;  // default: per-entry default order
  int trials = 3;
  std::uint64_t seed = 1;
};

/// Reports for one entry: every knob assignment times every trial.
std::vector<VerificationReport> verify_entry(const IdentitySpec& spec, const RunOptions& opts);
std::vector<VerificationReport> verify_all(const RunOptions& opts);

/// Seed of the environment for (entry, knobs, trial).
std::uint64_t env_seed(std::uint64_t seed, const std::string& id, const std::map<std::string, int>& knobs, int trial);

/// Single-token edits of corpus entries that must break the identity.
struct Mutation {
  std::string id;
  std::string from;
  std::string to;
  std::string description;
};
const std::vector<Mutation>& mutation_list();
/// The Main entry with the first occurrence of m.from replaced, searching the
/// rhs before the lhs.
IdentitySpec apply_mutation(const Mutation& m);

}  // namespace qseries::corpus
