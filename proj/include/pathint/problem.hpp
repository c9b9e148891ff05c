#pragma once
/// Strict JSON problem files.
///
/// One document describes an action jet at a critical point, optionally a
/// coordinate change ("map") and/or a vector field, plus task parameters.
/// Unknown fields anywhere in the document are rejected, so golden inputs
/// cannot drift silently.
///
/// Schema sketch (every scalar is a string parsed exactly — "p", "-p",
/// "p/q", or a decimal like "0.25"):
///
///   {
///     "description": "optional free text",
///     "dimension": 2,
///     "truncation_order": 6,
///     "action": {
///       "value": "0",                      // optional: f at the critical point
///       "coefficients": [                  // derivative-tensor entries f^(n)
///         {"multi_index": [1, 1], "value": "1"},
///         {"multi_index": [1, 1, 2, 2], "value": "1/3"}
///       ]
///     },
///     "map": {                             // optional; starts from the identity
///       "coefficients": [
///         {"component": 1, "multi_index": [2, 2], "value": "1"}
///       ]
///     },
///     "vector_field": {                    // optional; starts from zero
///       "coefficients": [
///         {"component": 1, "multi_index": [1, 1], "value": "1"}
///       ]
///     },
///     "task": {                            // optional
///       "max_order": 2,
///       "regime": "laplace",               // or "oscillatory"
///       "kappa": ["1/5", "1/10", "0.05"],
///       "halfwidth_sigmas": 8.0,
///       "rel_tol": 1e-10,
///       "max_evaluations": 20000000
///     }
///   }
///
/// Conventions:
///   - Multi-indices are 1-based, sorted ascending, entries in 1..dimension.
///   - Values are derivative coefficients: the monomial x^4/4! is the
///     order-4 entry {"multi_index": [1,1,1,1], "value": "1"}.
///   - Order-1 action entries are rejected; jets live at a critical point.
///   - "map" entries overwrite the identity jet (so a file can supply a
///     non-identity linear part); "vector_field" entries overwrite zero.

#include <optional>
#include <string>
#include <vector>

#include "pathint/jets.hpp"
#include "pathint/rational.hpp"

namespace pathint {

enum class Regime { kLaplace, kOscillatory };

const char* regime_name(Regime regime);

struct Task {
  int max_order = 2;
  Regime regime = Regime::kLaplace;
  std::vector<Rational> kappa;        // sample couplings for quadrature
  double halfwidth_sigmas = 8.0;      // integration box half-width, in sigma
  double rel_tol = 1e-10;             // quadrature relative tolerance
  long max_evaluations = 20000000;    // quadrature evaluation budget
};

struct Problem {
  explicit Problem(ActionJet<Rational> a) : action(std::move(a)) {}

  std::string description;
  int dimension = 1;
  int truncation_order = 2;
  ActionJet<Rational> action;
  std::optional<MapJet<Rational>> map;
  std::optional<MapJet<Rational>> vector_field;
  Task task;
};

/// Parses "p", "-p", "p/q", or a decimal string ("0.05" -> 1/20) exactly.
/// Throws ParseError on anything else.
Rational parse_rational_string(const std::string& text);

/// Parses a problem document from JSON text. Throws ParseError on any
/// malformed, missing, duplicated, or unknown field.
Problem parse_problem_text(const std::string& text);

/// Reads and parses the file at `path`. Unreadable file -> ParseError.
Problem load_problem(const std::string& path);

}  // namespace pathint
