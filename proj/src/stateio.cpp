#include "entcap/stateio.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace entcap {

namespace {

using nlohmann::json;

constexpr double kIngestTol = 1e-8;

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(errc::parse_error, message);
}

const json& need(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    parse_fail(std::string("missing field '") + key + "'");
  }
  return *it;
}

double get_number(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (!v.is_number()) {
    parse_fail(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

long long get_integer(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (!v.is_number_integer()) {
    parse_fail(std::string("field '") + key + "' must be an integer");
  }
  return v.get<long long>();
}

std::size_t get_dimension(const json& doc, const char* key) {
  const long long v = get_integer(doc, key);
  if (v < 1 || v > 4096) {
    parse_fail(std::string("field '") + key + "' out of range [1, 4096]");
  }
  return static_cast<std::size_t>(v);
}

std::uint64_t get_seed(const json& doc, const char* key) {
  const json& v = need(doc, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v.get<long long>());
  }
  parse_fail(std::string("field '") + key +
             "' must be a non-negative integer");
}

std::vector<std::vector<double>> get_square_array(const json& doc,
                                                  const char* key,
                                                  std::size_t n) {
  const json& v = need(doc, key);
  if (!v.is_array() || v.size() != n) {
    std::ostringstream os;
    os << "field '" << key << "' must be a " << n << "x" << n << " array";
    parse_fail(os.str());
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (const json& row : v) {
    if (!row.is_array() || row.size() != n) {
      std::ostringstream os;
      os << "field '" << key << "' must be a " << n << "x" << n << " array";
      parse_fail(os.str());
    }
    std::vector<double> vals;
    vals.reserve(n);
    for (const json& x : row) {
      if (!x.is_number()) {
        parse_fail(std::string("field '") + key +
                   "' must contain numbers only");
      }
      vals.push_back(x.get<double>());
    }
    rows.push_back(std::move(vals));
  }
  return rows;
}

ComplexMatrix read_complex_matrix(const json& doc, const char* re_key,
                                  const char* im_key, std::size_t n) {
  const auto re = get_square_array(doc, re_key, n);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(re[i][j], 0.0);
  }
  if (doc.contains(im_key)) {
    const auto im = get_square_array(doc, im_key, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) += cplx(0.0, im[i][j]);
    }
  }
  return m;
}

// Accept within 1e-8 of the state invariants, then snap: hermitize,
// renormalize the trace, clip round-off negatives.
ComplexMatrix snap_density_like(ComplexMatrix m, const char* what) {
  if (!m.all_finite()) {
    throw Error(errc::invalid_state,
                std::string(what) + " has non-finite entries");
  }
  const double defect = m.hermiticity_defect();
  if (defect > kIngestTol) {
    std::ostringstream os;
    os << what << " hermiticity defect " << defect << " exceeds 1e-8";
    throw Error(errc::invalid_state, os.str());
  }
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = cplx(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kIngestTol) {
    std::ostringstream os;
    os << what << " trace " << tr << " is off by " << std::abs(tr - 1.0)
       << ", beyond 1e-8";
    throw Error(errc::invalid_state, os.str());
  }
  m *= cplx(1.0 / tr, 0.0);
  HermitianSpectrum es = eig_hermitian(m);
  const double lo = es.eigenvalues.front();
  if (lo < -kIngestTol) {
    std::ostringstream os;
    os << what << " has eigenvalue " << lo << ", below -1e-8";
    throw Error(errc::invalid_state, os.str());
  }
  if (lo < 0.0) {
    double total = 0.0;
    for (double& v : es.eigenvalues) {
      if (v < 0.0) v = 0.0;
      total += v;
    }
    for (double& v : es.eigenvalues) v /= total;
    m = from_spectrum(es.eigenvectors, es.eigenvalues);
  }
  return m;
}

std::string format_parameter(double v) {
  // Short round-trip form for echoed inputs (not measure values).
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void ReportRecord::add_text(const std::string& key,
                            const std::string& value) {
  fields.push_back({key, value, false});
}

void ReportRecord::add_number(const std::string& key, double value) {
  fields.push_back({key, format_value(value), true});
}

void ReportRecord::add_count(const std::string& key, long long value) {
  fields.push_back({key, std::to_string(value), true});
}

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  std::string s = buf;
  if (s == "-0.000000000") s.erase(0, 1);
  return s;
}

void write_records(std::ostream& out, const std::vector<ReportRecord>& rows,
                   OutputFormat format) {
  if (rows.empty()) return;
  if (format == OutputFormat::csv) {
    std::string header;
    for (const ReportField& f : rows.front().fields) {
      if (!header.empty()) header += ',';
      header += f.key;
    }
    out << header << '\n';
    for (const ReportRecord& row : rows) {
      std::string line;
      for (std::size_t k = 0; k < row.fields.size(); ++k) {
        if (k > 0) line += ',';
        if (k >= rows.front().fields.size() ||
            row.fields[k].key != rows.front().fields[k].key) {
          throw Error(errc::validation_error,
                      "report rows have mismatched columns");
        }
        line += row.fields[k].value;
      }
      out << line << '\n';
    }
    return;
  }
  for (const ReportRecord& row : rows) {
    std::string line = "{";
    for (std::size_t k = 0; k < row.fields.size(); ++k) {
      if (k > 0) line += ',';
      line += '"';
      line += row.fields[k].key;
      line += "\":";
      if (row.fields[k].numeric) {
        line += row.fields[k].value;
      } else {
        line += '"';
        for (char c : row.fields[k].value) {
          if (c == '"' || c == '\\') line += '\\';
          line += c;
        }
        line += '"';
      }
    }
    line += '}';
    out << line << '\n';
  }
}

StateSpec parse_state_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed state spec: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("state spec must be a JSON object");
  const json& fam = need(doc, "family");
  if (!fam.is_string()) parse_fail("field 'family' must be a string");
  const std::string family = fam.get<std::string>();

  StateSpec spec;
  spec.family = family;

  if (family == "max_entangled") {
    const std::size_t d = get_dimension(doc, "d");
    spec.parameters.push_back({"d", std::to_string(d), true});
    spec.state = max_entangled(d);
  } else if (family == "isotropic") {
    const std::size_t d = get_dimension(doc, "d");
    const double fidelity = get_number(doc, "F");
    spec.parameters.push_back({"d", std::to_string(d), true});
    spec.parameters.push_back({"F", format_parameter(fidelity), true});
    spec.state = isotropic(fidelity, d);
  } else if (family == "max_correlated") {
    const json& re = need(doc, "alpha_re");
    if (!re.is_array() || re.empty()) {
      parse_fail("field 'alpha_re' must be a non-empty square array");
    }
    const std::size_t d = re.size();
    ComplexMatrix alpha = read_complex_matrix(doc, "alpha_re", "alpha_im", d);
    alpha = snap_density_like(std::move(alpha), "coefficient matrix");
    spec.parameters.push_back({"d", std::to_string(d), true});
    spec.state = max_correlated(MaxCorrelatedCoeffs(std::move(alpha)));
  } else if (family == "bell_diagonal") {
    const json& p = need(doc, "p");
    if (!p.is_array() || p.size() != 4) {
      parse_fail("field 'p' must be an array of 4 probabilities");
    }
    std::array<double, 4> weights{};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!p[k].is_number()) parse_fail("field 'p' must contain numbers");
      weights[k] = p[k].get<double>();
      spec.parameters.push_back(
          {"p" + std::to_string(k), format_parameter(weights[k]), true});
    }
    spec.state = bell_diagonal(weights);
  } else if (family == "eisert") {
    const long long j = get_integer(doc, "J");
    if (j < 1 || j > 1000000) {
      throw Error(errc::bad_j, "spin quantum number must be >= 1");
    }
    eisert_params(static_cast<int>(j));  // validates
    spec.eisert_j = static_cast<int>(j);
    spec.parameters.push_back({"J", std::to_string(j), true});
  } else if (family == "random") {
    const std::size_t d_a = get_dimension(doc, "d_a");
    const std::size_t d_b = get_dimension(doc, "d_b");
    const long long rank = get_integer(doc, "rank");
    const std::uint64_t seed = get_seed(doc, "seed");
    if (rank < 1) throw Error(errc::bad_rank, "rank must be >= 1");
    spec.parameters.push_back({"d_a", std::to_string(d_a), true});
    spec.parameters.push_back({"d_b", std::to_string(d_b), true});
    spec.parameters.push_back({"rank", std::to_string(rank), true});
    spec.parameters.push_back({"seed", std::to_string(seed), true});
    spec.state =
        random_density(d_a, d_b, static_cast<std::size_t>(rank), seed);
  } else if (family == "dense") {
    const std::size_t d_a = get_dimension(doc, "d_a");
    const std::size_t d_b = get_dimension(doc, "d_b");
    const std::size_t n = d_a * d_b;
    ComplexMatrix m = read_complex_matrix(doc, "re", "im", n);
    m = snap_density_like(std::move(m), "dense state");
    spec.parameters.push_back({"d_a", std::to_string(d_a), true});
    spec.parameters.push_back({"d_b", std::to_string(d_b), true});
    spec.state = DensityMatrix(std::move(m), {d_a, d_b});
  } else {
    parse_fail("unknown family '" + family + "'");
  }
  return spec;
}

}  // namespace entcap
