#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qseries {

enum class ErrorKind {
  ZeroSeries,
  PrecisionExceeded,
  DivergentProduct,
  PoleInBottom,
  ValuationStall,
  CapExceeded,
  SyntaxError,
  UnboundSymbol,
  EvalError,
  NotFinite,
  UnsatisfiableSignature,
};

std::string_view to_string(ErrorKind kind);

/// Byte offsets into DSL source text, half-open.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, SourceSpan span)
      : std::runtime_error(what), kind_(kind), span_(span), has_span_(true) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool has_span() const noexcept { return has_span_; }
  SourceSpan span() const noexcept { return span_; }

 private:
  ErrorKind kind_;
  SourceSpan span_{};
  bool has_span_ = false;
};

}  // namespace qseries
