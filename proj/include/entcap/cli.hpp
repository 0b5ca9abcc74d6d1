// Command implementations behind the CLI front end. Each returns the
// process exit code: 0 success/all-pass, 1 usage error, 2 validation
// error, 3 verification failures present.

#ifndef ENTCAP_CLI_HPP
#define ENTCAP_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "entcap/stateio.hpp"

namespace entcap {

struct SweepRequest {
  std::string family;
  std::size_t d = 2;       // local dimension for isotropic
  std::string parameter;   // F | p | J
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  std::string measures;    // comma list from {ib, chi, chi_star, er}
};

int cmd_compute(const std::string& spec_text, const std::string& measures,
                bool explicit_construction, OutputFormat format,
                std::ostream& out, std::ostream& err);

// samples overrides every suite's default sample count
// (ib_le_er 200, fannes 500, continuity 200, convexity 100).
int cmd_verify(const std::string& suites, std::optional<int> samples,
               std::uint64_t seed, OutputFormat format, std::ostream& out,
               std::ostream& err);

int cmd_sweep(const SweepRequest& request, OutputFormat format,
              std::ostream& out, std::ostream& err);

int cmd_family(const std::string& name, int j, bool explicit_construction,
               OutputFormat format, std::ostream& out, std::ostream& err);

}  // namespace entcap

#endif  // ENTCAP_CLI_HPP
