#include "pathint/problem.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace pathint {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

void check_object(const json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown field '" + it.key() + "' in " + where);
  }
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  return j.get<std::string>();
}

Rational get_rational(const json& j, const std::string& where) {
  return parse_rational_string(get_string(j, where));
}

// Reads a 1-based sorted multi-index and returns it 0-based.
std::vector<int> get_multi_index(const json& j, int dimension,
                                 int truncation_order,
                                 const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + " must be a nonempty array");
  if (static_cast<int>(j.size()) > truncation_order)
    fail(where + " has order " + std::to_string(j.size()) +
         " beyond truncation order " + std::to_string(truncation_order));
  std::vector<int> index;
  index.reserve(j.size());
  int previous = 0;
  for (const auto& entry : j) {
    const int i = get_int(entry, where + " entry");
    if (i < 1 || i > dimension)
      fail(where + " entry " + std::to_string(i) + " out of range 1.." +
           std::to_string(dimension));
    if (i < previous) fail(where + " must be sorted ascending");
    previous = i;
    index.push_back(i - 1);
  }
  return index;
}

ActionJet<Rational> parse_action(const json& j, int dimension,
                                 int truncation_order) {
  check_object(j, "action", {"value", "coefficients"});
  Rational value(0);
  if (j.contains("value")) value = get_rational(j.at("value"), "action.value");
  ActionJet<Rational> action(dimension, truncation_order, value);
  if (!j.contains("coefficients")) fail("action.coefficients is required");
  const json& list = j.at("coefficients");
  if (!list.is_array()) fail("action.coefficients must be an array");
  std::set<std::vector<int>> seen;
  for (const auto& entry : list) {
    check_object(entry, "action coefficient", {"multi_index", "value"});
    if (!entry.contains("multi_index") || !entry.contains("value"))
      fail("action coefficient needs multi_index and value");
    std::vector<int> index =
        get_multi_index(entry.at("multi_index"), dimension, truncation_order,
                        "action multi_index");
    if (index.size() == 1)
      fail("order-1 action coefficients are not allowed: the jet is taken "
           "at a critical point");
    if (!seen.insert(index).second) fail("duplicate action multi_index");
    action.coefficient(static_cast<int>(index.size()))
        .set(index, get_rational(entry.at("value"), "action value"));
  }
  return action;
}

MapJet<Rational> parse_map(const json& j, int dimension, int truncation_order,
                           const std::string& where, bool start_from_zero) {
  check_object(j, where, {"coefficients"});
  MapJet<Rational> map = MapJet<Rational>::identity(dimension, truncation_order);
  if (start_from_zero) {
    for (int a = 0; a < dimension; ++a)
      map.coefficient(a, 1).set({a}, Rational(0));
  }
  if (!j.contains("coefficients")) fail(where + ".coefficients is required");
  const json& list = j.at("coefficients");
  if (!list.is_array()) fail(where + ".coefficients must be an array");
  std::set<std::pair<int, std::vector<int>>> seen;
  for (const auto& entry : list) {
    check_object(entry, where + " coefficient",
                 {"component", "multi_index", "value"});
    if (!entry.contains("component") || !entry.contains("multi_index") ||
        !entry.contains("value"))
      fail(where + " coefficient needs component, multi_index, and value");
    const int component = get_int(entry.at("component"), where + " component");
    if (component < 1 || component > dimension)
      fail(where + " component " + std::to_string(component) +
           " out of range 1.." + std::to_string(dimension));
    std::vector<int> index =
        get_multi_index(entry.at("multi_index"), dimension, truncation_order,
                        where + " multi_index");
    if (!seen.insert({component, index}).second)
      fail("duplicate " + where + " coefficient");
    map.coefficient(component - 1, static_cast<int>(index.size()))
        .set(index, get_rational(entry.at("value"), where + " value"));
  }
  return map;
}

Task parse_task(const json& j) {
  check_object(j, "task",
               {"max_order", "regime", "kappa", "halfwidth_sigmas", "rel_tol",
                "max_evaluations"});
  Task task;
  if (j.contains("max_order")) {
    task.max_order = get_int(j.at("max_order"), "task.max_order");
    if (task.max_order < 0) fail("task.max_order must be >= 0");
  }
  if (j.contains("regime")) {
    const std::string regime = get_string(j.at("regime"), "task.regime");
    if (regime == "laplace") {
      task.regime = Regime::kLaplace;
    } else if (regime == "oscillatory") {
      task.regime = Regime::kOscillatory;
    } else {
      fail("task.regime must be \"laplace\" or \"oscillatory\"");
    }
  }
  if (j.contains("kappa")) {
    const json& list = j.at("kappa");
    if (!list.is_array()) fail("task.kappa must be an array of strings");
    for (const auto& entry : list)
      task.kappa.push_back(get_rational(entry, "task.kappa entry"));
  }
  if (j.contains("halfwidth_sigmas")) {
    const json& value = j.at("halfwidth_sigmas");
    if (!value.is_number()) fail("task.halfwidth_sigmas must be a number");
    task.halfwidth_sigmas = value.get<double>();
    if (!(task.halfwidth_sigmas > 0)) fail("task.halfwidth_sigmas must be > 0");
  }
  if (j.contains("rel_tol")) {
    const json& value = j.at("rel_tol");
    if (!value.is_number()) fail("task.rel_tol must be a number");
    task.rel_tol = value.get<double>();
    if (!(task.rel_tol > 0)) fail("task.rel_tol must be > 0");
  }
  if (j.contains("max_evaluations")) {
    const json& value = j.at("max_evaluations");
    if (!value.is_number_integer()) fail("task.max_evaluations must be an integer");
    task.max_evaluations = value.get<long>();
    if (task.max_evaluations < 1) fail("task.max_evaluations must be >= 1");
  }
  return task;
}

}  // namespace

const char* regime_name(Regime regime) {
  return regime == Regime::kLaplace ? "laplace" : "oscillatory";
}

Rational parse_rational_string(const std::string& text) {
  const std::size_t dot = text.find('.');
  if (dot == std::string::npos) return Rational::from_string(text);
  // Decimal literal: (sign) digits '.' digits, converted exactly.
  std::string head = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  std::string sign;
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    sign = head.substr(0, 1);
    head = head.substr(1);
  }
  auto all_digits = [](const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(head) || !all_digits(frac))
    throw ParseError("bad rational literal: '" + text + "'");
  return Rational::from_string(sign + head + frac + "/1" +
                               std::string(frac.size(), '0'));
}

Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  check_object(doc, "problem",
               {"description", "dimension", "truncation_order", "action",
                "map", "vector_field", "task"});
  if (!doc.contains("dimension")) fail("dimension is required");
  if (!doc.contains("truncation_order")) fail("truncation_order is required");
  if (!doc.contains("action")) fail("action is required");
  const int dimension = get_int(doc.at("dimension"), "dimension");
  if (dimension < 1) fail("dimension must be >= 1");
  const int truncation_order =
      get_int(doc.at("truncation_order"), "truncation_order");
  if (truncation_order < 2) fail("truncation_order must be >= 2");

  Problem problem(parse_action(doc.at("action"), dimension, truncation_order));
  problem.dimension = dimension;
  problem.truncation_order = truncation_order;
  if (doc.contains("description"))
    problem.description = get_string(doc.at("description"), "description");
  if (doc.contains("map"))
    problem.map = parse_map(doc.at("map"), dimension, truncation_order, "map",
                            /*start_from_zero=*/false);
  if (doc.contains("vector_field"))
    problem.vector_field =
        parse_map(doc.at("vector_field"), dimension, truncation_order,
                  "vector_field", /*start_from_zero=*/true);
  if (doc.contains("task")) problem.task = parse_task(doc.at("task"));
  return problem;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read problem file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str());
}

}  // namespace pathint
