#include "torsionlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace torsionlab::io {

namespace {

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Shortest %g form that reads back as the same double.
std::string shortest(double x) {
  for (int d = 1; d < 17; ++d) {
    std::string s = format_number(x, d);
    if (std::strtod(s.c_str(), nullptr) == x) return s;
  }
  return format_number(x, 17);
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string \"p/q\", got " + j.dump());
}

RationalMatrix matrix_from_rows(const Json& rows, std::size_t nr, std::size_t nc, const std::string& what) {
  if (!rows.is_array() || rows.size() != nr) {
    throw std::invalid_argument(what + ": expected " + std::to_string(nr) + " rows");
  }
  RationalMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (!rows[r].is_array() || rows[r].size() != nc) {
      throw std::invalid_argument(what + ": row " + std::to_string(r) + " must have " + std::to_string(nc) + " entries");
    }
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rational_from_json(rows[r][c]);
  }
  return m;
}

Json matrix_rows(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json number(double x, int digits) {
  if (!std::isfinite(x)) return nullptr;
  return rounded(x, digits);
}

}  // namespace

double rounded(double x, int digits) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x, digits).c_str(), nullptr);
}

LogMagnitude scalar_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return LogMagnitude::from_rational(rational_from_json(j));
  if (j.is_number()) return LogMagnitude::from_real(j.get<double>());
  if (j.is_object()) {
    LogMagnitude m = LogMagnitude::from_rational(j.contains("rat") ? rational_from_json(j.at("rat")) : Rational(1));
    if (j.contains("sqrt")) {
      for (const auto& r : j.at("sqrt")) m = m * LogMagnitude::sqrt_of(rational_from_json(r));
    }
    return m;
  }
  throw std::invalid_argument("unrecognized scalar " + j.dump());
}

Json scalar_to_json(const LogMagnitude& m, int digits) {
  if (!m.is_exact()) return rounded(std::exp(static_cast<double>(m.value())), digits);
  const Rational square = m.square;
  const mpz_class num = square.get_num(), den = square.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    return to_string(Rational(sqrt(num), sqrt(den)));
  }
  Json j;
  j["rat"] = "1";
  j["sqrt"] = Json::array({to_string(square)});
  return j;
}

ComplexDocument complex_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ranks")) throw std::invalid_argument("complex document needs \"ranks\"");
  ComplexDocument doc;
  for (const auto& r : j.at("ranks")) {
    if (!r.is_number_integer() || r.get<long>() < 0) throw std::invalid_argument("ranks must be non-negative integers");
    doc.complex.ranks.push_back(r.get<std::size_t>());
  }
  if (doc.complex.ranks.empty()) throw std::invalid_argument("ranks must not be empty");
  const int m = doc.complex.length();
  const Json boundaries = j.value("boundaries", Json::array());
  if (!boundaries.is_array() || static_cast<int>(boundaries.size()) != m) {
    throw std::invalid_argument("expected " + std::to_string(m) + " boundary matrices");
  }
  for (int q = 1; q <= m; ++q) {
    doc.complex.boundaries.push_back(matrix_from_rows(boundaries[q - 1], doc.complex.rank(q - 1), doc.complex.rank(q),
                                                      "boundary " + std::to_string(q)));
  }
  if (j.contains("homology")) {
    HomologyBasisData h;
    h.cycles.resize(m + 1);
    h.scales.resize(m + 1);
    for (int q = 0; q <= m; ++q) h.cycles[q] = RationalMatrix(doc.complex.rank(q), 0);
    for (const auto& [key, entry] : j.at("homology").items()) {
      int q;
      try {
        q = std::stoi(key);
      } catch (const std::exception&) {
        throw std::invalid_argument("homology key '" + key + "' is not a degree");
      }
      if (q < 0 || q > m) throw std::invalid_argument("homology degree " + key + " out of range");
      const Json cycles = entry.value("cycles", Json::array());
      const std::size_t rank = entry.value("rank", cycles.size());
      if (rank != cycles.size()) throw std::invalid_argument("homology degree " + key + ": rank does not match cycles");
      // Stored as a list of cycle vectors; transpose into columns.
      h.cycles[q] = matrix_from_rows(cycles, rank, doc.complex.rank(q), "cycles " + key).transpose();
      if (entry.contains("scales")) {
        if (entry.at("scales").size() != rank) throw std::invalid_argument("homology degree " + key + ": scale count");
        for (const auto& s : entry.at("scales")) h.scales[q].push_back(scalar_from_json(s));
      }
    }
    doc.homology = h;
  }
  return doc;
}

Json complex_to_json(const ChainComplexData& c, const HomologyBasisData* h) {
  Json j;
  j["ranks"] = c.ranks;
  Json boundaries = Json::array();
  for (const auto& d : c.boundaries) boundaries.push_back(matrix_rows(d));
  j["boundaries"] = boundaries;
  if (h != nullptr) {
    Json hom = Json::object();
    for (int q = 0; q <= c.length(); ++q) {
      const std::size_t rank = h->rank(q);
      if (rank == 0) continue;
      Json entry;
      entry["cycles"] = matrix_rows(h->cycles[q].transpose());
      entry["rank"] = rank;
      Json scales = Json::array();
      for (std::size_t k = 0; k < rank; ++k) scales.push_back(scalar_to_json(h->scale(q, k)));
      entry["scales"] = scales;
      hom[std::to_string(q)] = entry;
    }
    j["homology"] = hom;
  }
  return j;
}

std::string zero_table_csv(const ZeroTable& table, int digits) {
  // Enough digits to resolve the refinement tolerance at the largest zero.
  int zero_digits = digits;
  if (!table.zeros.empty() && table.tol > 0.0) {
    const int needed = static_cast<int>(std::ceil(std::log10(table.zeros.back() / table.tol))) + 1;
    zero_digits = std::min(17, std::max(digits, needed));
  }
  std::ostringstream out;
  out << "kind,nu_n,l1,l2,tol\n";
  out << to_string(table.kind) << ',' << shortest(table.order) << ',' << shortest(table.l1) << ','
      << shortest(table.l2) << ',' << shortest(table.tol) << '\n';
  out << "k,a_k\n";
  for (std::size_t k = 0; k < table.zeros.size(); ++k) {
    out << k + 1 << ',' << format_number(table.zeros[k], zero_digits) << '\n';
  }
  return out.str();
}

ZeroTable zero_table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "kind,nu_n,l1,l2,tol") throw std::invalid_argument("missing zero-table header");
  if (!std::getline(in, line)) throw std::invalid_argument("missing zero-table parameters");
  ZeroTable t;
  {
    std::istringstream row(line);
    std::string kind, field;
    std::getline(row, kind, ',');
    t.kind = parse_cross_product_kind(kind);
    double* targets[] = {&t.order, &t.l1, &t.l2, &t.tol};
    for (double* target : targets) {
      if (!std::getline(row, field, ',')) throw std::invalid_argument("short zero-table parameter row");
      *target = std::stod(field);
    }
  }
  if (!std::getline(in, line) || line != "k,a_k") throw std::invalid_argument("missing k,a_k header");
  std::size_t expected = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed zero row '" + line + "'");
    if (std::stoul(line.substr(0, comma)) != expected++) throw std::invalid_argument("zero rows out of order");
    t.zeros.push_back(std::stod(line.substr(comma + 1)));
  }
  return t;
}

Json to_json(const ZetaEvaluation& e, int digits) {
  Json j;
  j["value_at_0_derivative"] = number(e.value_at_0_derivative, digits);
  j["method"] = to_string(e.method);
  j["error_estimate"] = number(e.error_estimate, 3);
  if (e.method == ZetaMethod::continuation_oracle) {
    j["zeros_used"] = e.zeros_used;
    j["tail_correction"] = number(e.tail_correction, digits);
    j["richardson"] = number(e.richardson, digits);
  }
  return j;
}

Json to_json(const VerificationReport& r, int digits) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j;
    j["check"] = e.check;
    j["lhs"] = number(e.lhs, digits);
    j["rhs"] = number(e.rhs, digits);
    j["abs_diff"] = number(e.abs_diff, 3);
    j["tol"] = e.tol;
    j["pass"] = e.pass;
    j["notes"] = e.notes;
    entries.push_back(j);
  }
  return entries;
}

Json to_json(const ConeSweep& s, int digits) {
  Json j;
  Json points = Json::array();
  for (std::size_t i = 0; i < s.l1_values.size(); ++i) {
    points.push_back({{"l1", number(s.l1_values[i], digits)}, {"upsilon", number(s.upsilon[i], digits)}});
  }
  j["points"] = points;
  Json inc = Json::array();
  for (double d : s.increments) inc.push_back(number(d, 3));
  j["increments"] = inc;
  j["increments_decreasing"] = s.increments_decreasing;
  j["rate_exponent"] = number(s.rate_exponent, 6);
  j["fitted_limit"] = number(s.fitted_limit, digits);
  j["printed_limit"] = number(s.printed_limit, digits);
  j["derived_limit"] = number(s.derived_limit, digits);
  j["discrepancy_limit"] = number(s.discrepancy_limit, digits);
  return j;
}

Json to_json(const CylinderSweep& s, int digits) {
  Json j;
  j["b1"] = s.b1;
  j["h"] = s.h;
  j["target"] = number(s.target, digits);
  Json points = Json::array();
  for (std::size_t i = 0; i < s.alphas.size(); ++i) {
    points.push_back({{"alpha", s.alphas[i]},
                      {"torsion", number(s.torsion[i], digits)},
                      {"error", number(s.errors[i], 3)}});
  }
  j["points"] = points;
  j["errors_decreasing"] = s.errors_decreasing;
  return j;
}

}  // namespace torsionlab::io
