#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agc/contract.hpp"
#include "agc/errors.hpp"

namespace agc {

/// 1-based line/column positions plus byte offsets into the source text.
struct SourceSpan {
  std::string file;
  std::size_t start_line = 1;
  std::size_t start_col = 1;
  std::size_t end_line = 1;
  std::size_t end_col = 1;
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string message, std::vector<std::string> expected = {})
      : Error(std::move(message)), span_(std::move(span)), expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

/// Type error located in a source file.
class SpannedTypeError : public TypeError {
 public:
  SpannedTypeError(const TypeError& e, SourceSpan span)
      : TypeError(e.kind(), e.what(), e.node()), span_(std::move(span)) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Graph or contract error located in a source file.
class SpannedGraphError : public GraphError {
 public:
  SpannedGraphError(const GraphError& e, SourceSpan span)
      : GraphError(e.kind(), e.what()), span_(std::move(span)) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Parses a `.agc` file. Every returned contract is validated and typechecked.
/// Throws ParseError, SpannedTypeError or SpannedGraphError.
std::vector<Contract> parse_contract_file(std::string_view text,
                                          const std::string& file = "<input>");

/// Parses a `.sys` file against already-parsed contracts and returns a
/// validated graph. Throws ParseError or SpannedGraphError.
SystemGraph parse_system_file(std::string_view text, const std::vector<Contract>& contracts,
                              const std::string& file = "<input>");

/// Standalone formula, typechecked against `env`.
Formula parse_formula(std::string_view text, const TypeEnv& env,
                      const std::string& file = "<input>");

std::string print_contract(const Contract& c);
std::string print_contracts(const std::vector<Contract>& cs);
std::string print_system(const SystemGraph& g);

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// `file:line:col: error: message` plus an expected-token list when known.
std::string format_diagnostic(const std::exception& e);

/// Span carried by a DSL error, if any.
std::optional<SourceSpan> span_of(const std::exception& e);

}  // namespace agc
