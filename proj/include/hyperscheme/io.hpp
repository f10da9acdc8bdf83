#ifndef HYPERSCHEME_IO_HPP_
#define HYPERSCHEME_IO_HPP_

// JSON formats for schemes, hypergroups, and group tables. Rationals are
// written as "p/q" strings; reading accepts numbers or such strings.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "hypergroup.hpp"
#include "rational.hpp"
#include "scheme.hpp"

namespace hyperscheme {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::kInvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline bool is_exact_entry(const Json& v) { return v.is_string() || v.is_number_integer() || v.is_number_unsigned(); }

inline Rational rational_entry(const Json& v) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::kInvalidInput, e.what());
  }
  throw Error(ErrorKind::kInvalidInput, "expected an integer or \"p/q\" string");
}

inline double double_entry(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(rational_entry(v));
  throw Error(ErrorKind::kInvalidInput, "expected a number");
}

inline std::size_t index_entry(const Json& v) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorKind::kInvalidInput, "expected a nonnegative integer index");
  return v.get<std::size_t>();
}

}  // namespace detail

template <typename T>
Json scalar_to_json(const T& v) {
  if constexpr (is_exact_v<T>) {
    return to_string(v);
  } else {
    return v;
  }
}

// ---------------------------------------------------------------------------
// Schemes

struct SchemeFile {
  RelationPartition partition;
  /// Present when the file carries kernels (omega_x defaults to counting).
  std::optional<GeneralizedScheme<double>> generalized;
};

inline SchemeFile parse_scheme(const Json& j) {
  const std::size_t n = detail::index_entry(detail::field(j, "n_points"));
  const Json& rel = detail::field(j, "relations");
  if (!rel.is_array() || rel.size() != n)
    throw Error(ErrorKind::kInvalidInput, "'relations' must have n_points rows");
  std::vector<std::vector<long long>> rows;
  for (const auto& row : rel) {
    if (!row.is_array()) throw Error(ErrorKind::kInvalidInput, "'relations' rows must be arrays");
    std::vector<long long> r;
    for (const auto& v : row) r.push_back(static_cast<long long>(detail::index_entry(v)));
    rows.push_back(std::move(r));
  }
  SchemeFile out;
  out.partition = RelationPartition::from_rows(rows);
  if (!j.contains("kernels")) return out;

  GeneralizedScheme<double> gs;
  gs.partition = out.partition;
  for (const auto& k : j.at("kernels")) {
    if (!k.is_array() || k.size() != n) throw Error(ErrorKind::kInvalidInput, "kernel must be n_points x n_points");
    Matrix<double> m(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      if (!k[x].is_array() || k[x].size() != n)
        throw Error(ErrorKind::kInvalidInput, "kernel must be n_points x n_points");
      for (std::size_t y = 0; y < n; ++y) m(x, y) = detail::double_entry(k[x][y]);
    }
    gs.kernels.push_back(std::move(m));
  }
  if (gs.kernels.size() != out.partition.n_relations)
    throw Error(ErrorKind::kInvalidInput, "expected one kernel per relation");
  if (j.contains("omega_x")) {
    for (const auto& v : j.at("omega_x")) gs.omega_x.push_back(detail::double_entry(v));
    if (gs.omega_x.size() != n) throw Error(ErrorKind::kInvalidInput, "omega_x has wrong length");
  } else {
    gs.omega_x.assign(n, 1.0);
  }
  out.generalized = std::move(gs);
  return out;
}

inline Json partition_to_json(const RelationPartition& p) {
  Json j;
  j["n_points"] = p.n_points;
  j["relations"] = p.rows();
  return j;
}

template <typename T>
Json scheme_to_json(const GeneralizedScheme<T>& gs) {
  Json j = partition_to_json(gs.partition);
  Json kernels = Json::array();
  for (const auto& k : gs.kernels) {
    Json m = Json::array();
    for (std::size_t x = 0; x < k.rows(); ++x) {
      Json row = Json::array();
      for (std::size_t y = 0; y < k.cols(); ++y) row.push_back(scalar_to_json(k(x, y)));
      m.push_back(std::move(row));
    }
    kernels.push_back(std::move(m));
  }
  j["kernels"] = std::move(kernels);
  Json omega = Json::array();
  for (const auto& w : gs.omega_x) omega.push_back(scalar_to_json(w));
  j["omega_x"] = std::move(omega);
  return j;
}

// ---------------------------------------------------------------------------
// Hypergroups

struct HypergroupFile {
  /// Present when every coefficient is an integer or "p/q" string.
  std::optional<FiniteHypergroup<Rational>> exact;
  FiniteHypergroup<double> numeric;
};

inline HypergroupFile parse_hypergroup(const Json& j) {
  const std::size_t n = detail::index_entry(detail::field(j, "n"));
  if (n == 0) throw Error(ErrorKind::kInvalidInput, "hypergroup must be nonempty");
  const std::size_t e = detail::index_entry(detail::field(j, "identity"));
  std::vector<std::size_t> inv;
  for (const auto& v : detail::field(j, "involution")) inv.push_back(detail::index_entry(v));
  const Json& conv = detail::field(j, "conv");
  bool exact = true;
  auto check_shape = [&](const Json& a) {
    if (!a.is_array() || a.size() != n) throw Error(ErrorKind::kInvalidInput, "'conv' must be n x n x n");
  };
  check_shape(conv);
  for (const auto& a : conv) {
    check_shape(a);
    for (const auto& b : a) {
      check_shape(b);
      for (const auto& v : b) exact = exact && detail::is_exact_entry(v);
    }
  }
  HypergroupFile out;
  out.numeric = FiniteHypergroup<double>{e, inv, Tensor3<double>(n), false};
  FiniteHypergroup<Rational> q{e, inv, Tensor3<Rational>(n), false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const Json& v = conv[i][k][l];
        if (exact) {
          q.conv(i, k, l) = detail::rational_entry(v);
          out.numeric.conv(i, k, l) = to_double(q.conv(i, k, l));
        } else {
          out.numeric.conv(i, k, l) = detail::double_entry(v);
        }
      }
  if (j.contains("scheme_derived") && j.at("scheme_derived").is_boolean())
    out.numeric.scheme_derived = q.scheme_derived = j.at("scheme_derived").get<bool>();
  if (exact) out.exact = std::move(q);
  return out;
}

template <typename T>
Json hypergroup_to_json(const FiniteHypergroup<T>& h) {
  Json j;
  j["n"] = h.size();
  j["identity"] = h.identity;
  j["involution"] = h.involution;
  Json conv = Json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    Json a = Json::array();
    for (std::size_t k = 0; k < h.size(); ++k) {
      Json b = Json::array();
      for (std::size_t l = 0; l < h.size(); ++l) b.push_back(scalar_to_json(h(i, k, l)));
      a.push_back(std::move(b));
    }
    conv.push_back(std::move(a));
  }
  j["conv"] = std::move(conv);
  j["scheme_derived"] = h.scheme_derived;
  return j;
}

// ---------------------------------------------------------------------------
// Groups

/// {"table": [[...], ...]} with entries in [0, N).
inline GroupTable parse_group(const Json& j) {
  GroupTable t;
  for (const auto& row : detail::field(j, "table")) {
    if (!row.is_array()) throw Error(ErrorKind::kInvalidInput, "'table' rows must be arrays");
    std::vector<std::size_t> r;
    for (const auto& v : row) r.push_back(detail::index_entry(v));
    t.push_back(std::move(r));
  }
  return t;
}

/// "0,3" -> {0, 3}.
inline std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (v < 0 || item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidInput, "malformed index list '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::kInvalidInput, "empty index list");
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_IO_HPP_
