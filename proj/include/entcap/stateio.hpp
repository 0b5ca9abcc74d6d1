// State-spec ingestion and report formatting for the command-line
// front end. Specs are JSON documents naming either a built-in family
// or a dense matrix given as separate real/imaginary parts; reports
// are flat key-value records emitted as CSV or JSON lines with fixed
// 9-decimal formatting so identical inputs give identical bytes.

#ifndef ENTCAP_STATEIO_HPP
#define ENTCAP_STATEIO_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "entcap/states.hpp"

namespace entcap {

struct ReportField {
  std::string key;
  std::string value;
  bool numeric = false;  // controls JSON quoting only
};

struct ReportRecord {
  std::vector<ReportField> fields;

  void add_text(const std::string& key, const std::string& value);
  void add_number(const std::string& key, double value);
  void add_count(const std::string& key, long long value);
};

// %.9f with "-0.000000000" normalized to "0.000000000"; non-finite
// values print as inf/-inf/nan.
std::string format_value(double value);

enum class OutputFormat { csv, jsonl };

// CSV: header row from the first record, comma-separated, LF endings,
// no quoting (all emitted labels stay inside [A-Za-z0-9_.-]).
// JSONL: one object per line, keys in record order.
void write_records(std::ostream& out, const std::vector<ReportRecord>& rows,
                   OutputFormat format);

struct StateSpec {
  std::string family;  // family name, or "dense"
  std::vector<ReportField> parameters;  // echoed into report rows
  std::optional<DensityMatrix> state;   // absent only for family "eisert"
  int eisert_j = 0;
};

// Parses and validates a JSON state spec:
//   {"family":"max_entangled","d":2}
//   {"family":"isotropic","d":2,"F":0.9}
//   {"family":"max_correlated","alpha_re":[[..]],"alpha_im":[[..]]}
//   {"family":"bell_diagonal","p":[p0,p1,p2,p3]}
//   {"family":"eisert","J":2}
//   {"family":"random","d_a":2,"d_b":2,"rank":3,"seed":7}
//   {"family":"dense","d_a":2,"d_b":2,"re":[[..]],"im":[[..]]}
// Dense input is accepted within 1e-8 of the state invariants and
// snapped (hermitized, clipped, renormalized) before construction.
StateSpec parse_state_spec(const std::string& text);

}  // namespace entcap

#endif  // ENTCAP_STATEIO_HPP
