#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polarize/forms.hpp"
#include "polarize/group_table.hpp"
#include "polarize/moments.hpp"

namespace polarize {

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

/// Schema: { "order": N, "identity": idx, "table": [[...]] }, with an
/// optional "name". The table is fully validated (Latin square, identity,
/// associativity) and errors name the first failing triple.
inline GroupTable group_table_from_json(const nlohmann::json& j) {
  GroupTable t;
  try {
    t.order = j.at("order").get<std::size_t>();
    t.identity = j.at("identity").get<std::size_t>();
    t.mul = j.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    t.name = j.value("name", std::string("group"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("group table schema error: ") + e.what());
  }
  t.validate();
  return t;
}

inline GroupTable ingest_group_table(const std::string& path) {
  return group_table_from_json(load_json_file(path));
}

/// Schema: { "group": str, "classes": [{"size", "representative_index"}],
/// "chars": [{"degree", "fs_indicator", "values": [[re, im], ...]}] }.
inline CharacterTable character_table_from_json(const nlohmann::json& j) {
  CharacterTable ct;
  try {
    ct.group_name = j.value("group", std::string("group"));
    for (const auto& c : j.at("classes")) {
      CharacterTable::ConjClass cls;
      cls.size = c.at("size").get<std::size_t>();
      cls.representative = c.at("representative_index").get<std::size_t>();
      ct.classes.push_back(cls);
    }
    for (const auto& c : j.at("chars")) {
      CharacterTable::Irr irr;
      irr.degree = c.at("degree").get<std::size_t>();
      irr.fs_indicator = c.at("fs_indicator").get<int>();
      for (const auto& v : c.at("values")) {
        if (!v.is_array() || v.size() != 2)
          throw ValidationError("character values must be [re, im] pairs");
        irr.values.emplace_back(v[0].get<double>(), v[1].get<double>());
      }
      ct.chars.push_back(std::move(irr));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("character table schema error: ") + e.what());
  }
  return ct;
}

/// Scalar from JSON: "p/q" strings are exact, plain integers work on both
/// backends, and other numbers are only accepted under the float backend.
template <typename S>
S scalar_from_json(const nlohmann::json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if constexpr (scalar_traits<S>::exact) {
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash))) / Rational(BigInt(s.substr(slash + 1)));
      } else {
        if (slash == std::string::npos) return std::stod(s);
        return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
      }
    } catch (const std::exception&) {
      throw ValidationError("cannot parse scalar string: " + s);
    }
  }
  if (v.is_number_integer()) return scalar_traits<S>::from_int(v.get<long long>());
  if (v.is_number_float()) {
    if constexpr (scalar_traits<S>::exact) {
      throw ValidationError("non-integer JSON numbers need the float backend or a \"p/q\" string");
    } else {
      return v.get<double>();
    }
  }
  throw ValidationError("scalar must be a number or a \"p/q\" string");
}

/// User-supplied quadrance on a finite grid of module vectors.
/// Schema: { "algebra": spec, "rank": m, "entries": [{"x": [[coords]...],
/// "q": [coords]}] }. The evaluator only answers on grid points.
struct QuadranceTableData {
  std::string algebra_spec;
  std::size_t rank = 1;
  nlohmann::json entries;
};

inline QuadranceTableData quadrance_table_from_json(const nlohmann::json& j) {
  QuadranceTableData q;
  try {
    q.algebra_spec = j.at("algebra").get<std::string>();
    q.rank = j.at("rank").get<std::size_t>();
    q.entries = j.at("entries");
    if (!q.entries.is_array() || q.entries.empty())
      throw ValidationError("quadrance table needs a nonempty entries array");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("quadrance table schema error: ") + e.what());
  }
  return q;
}

template <typename S>
struct TableQuadrance {
  Quadrance<S> quadrance;
  std::vector<ModuleVector<S>> grid;
};

template <typename S>
TableQuadrance<S> make_table_quadrance(const AlgebraPtr<S>& algebra,
                                       const QuadranceTableData& data) {
  TableQuadrance<S> out{Quadrance<S>{algebra, data.rank, QuadranceProvenance::UserTable, {}}, {}};
  auto values = std::make_shared<std::vector<Element<S>>>();
  auto keys = std::make_shared<std::vector<ModuleVector<S>>>();
  for (const auto& entry : data.entries) {
    const auto& xj = entry.at("x");
    if (!xj.is_array() || xj.size() != data.rank)
      throw ValidationError("quadrance table entry has wrong rank");
    std::vector<Element<S>> parts;
    for (const auto& coord_list : xj) {
      if (!coord_list.is_array() || coord_list.size() != algebra->dim())
        throw ValidationError("quadrance table coordinates have wrong dimension");
      std::vector<S> coords;
      for (const auto& c : coord_list) coords.push_back(scalar_from_json<S>(c));
      parts.push_back(algebra->element(std::move(coords)));
    }
    const auto& qj = entry.at("q");
    if (!qj.is_array() || qj.size() != algebra->dim())
      throw ValidationError("quadrance table value has wrong dimension");
    std::vector<S> qc;
    for (const auto& c : qj) qc.push_back(scalar_from_json<S>(c));
    keys->emplace_back(algebra, std::move(parts));
    values->push_back(algebra->element(std::move(qc)));
  }
  out.grid = *keys;
  out.quadrance.eval = [keys, values](const ModuleVector<S>& x) -> Element<S> {
    for (std::size_t i = 0; i < keys->size(); ++i) {
      bool same = true;
      for (std::size_t r = 0; r < x.rank() && same; ++r) same = (*keys)[i][r] == x[r];
      if (same) return (*values)[i];
    }
    throw LookupError("quadrance table has no entry for the requested point");
  };
  return out;
}

/// Classical parallelogram check over every grid pair (x, y) whose x+y and
/// x-y also lie on the grid. Throws ParallelogramViolation with the first
/// witnessing pair; returns the max residual and the number of pairs tried.
template <typename S>
std::pair<S, std::size_t> check_parallelogram_on_grid(const TableQuadrance<S>& table,
                                                      double tol = 1e-8) {
  const auto& q = table.quadrance;
  const double tol_eff = scalar_traits<S>::exact ? 0.0 : tol;
  S worst = scalar_traits<S>::zero();
  std::size_t pairs = 0;
  const S two = scalar_traits<S>::from_int(2);
  for (const auto& x : table.grid)
    for (const auto& y : table.grid) {
      Element<S> qsum = q.parent->zero();
      try {
        qsum = q(x + y) + q(x - y);
      } catch (const LookupError&) {
        continue;  // pair not derivable from the grid
      }
      ++pairs;
      const S r = (qsum - (q(x) + q(y)).scaled(two)).max_abs();
      if (r > worst) worst = r;
      if (to_double(r) > tol_eff)
        throw ParallelogramViolation(
            "table quadrance violates the classical parallelogram identity",
            "{\"x\": \"" + x.to_string() + "\", \"y\": \"" + y.to_string() +
                "\", \"residual\": \"" + scalar_traits<S>::to_string(r) + "\"}");
    }
  if (pairs == 0)
    throw ValidationError("quadrance grid contains no derivable (x, y, x+y, x-y) pair");
  return {worst, pairs};
}

}  // namespace polarize
