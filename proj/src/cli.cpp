#include "entcap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entcap/capacity.hpp"
#include "entcap/matcore.hpp"
#include "entcap/parallel.hpp"
#include "entcap/relent.hpp"
#include "entcap/states.hpp"
#include "entcap/verify.hpp"

namespace entcap {

namespace {

// Same slack the sandwich flags use for solver-derived comparisons.
constexpr double kFlagSlack = 2e-3;
constexpr std::size_t kSolverDimCap = 16;
constexpr std::size_t kGridCap = 100000;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const std::size_t lo = token.find_first_not_of(" \t");
    if (lo == std::string::npos) {
      out.push_back("");
      continue;
    }
    const std::size_t hi = token.find_last_not_of(" \t");
    out.push_back(token.substr(lo, hi - lo + 1));
  }
  return out;
}

struct MeasureSelection {
  bool ib = false;
  bool chi = false;
  bool chi_star = false;
  bool er = false;
  bool sandwich = false;

  bool any() const { return ib || chi || chi_star || er || sandwich; }
};

bool parse_measures(const std::string& text, bool allow_sandwich,
                    MeasureSelection& sel, std::string& rejected) {
  for (const auto& token : split_list(text)) {
    if (token == "ib") {
      sel.ib = true;
    } else if (token == "chi") {
      sel.chi = true;
    } else if (token == "chi_star") {
      sel.chi_star = true;
    } else if (token == "er") {
      sel.er = true;
    } else if (token == "sandwich" && allow_sandwich) {
      sel.sandwich = true;
    } else {
      rejected = token;
      return false;
    }
  }
  if (!sel.any()) {
    rejected = text;
    return false;
  }
  return true;
}

void append_er_summary(ReportRecord& row, double value, int iterations,
                       bool converged) {
  row.add_number("er", value);
  row.add_count("er_iterations", iterations);
  row.add_text("er_converged", converged ? "true" : "false");
}

// Measure columns in canonical order ib, chi, chi_star, er. `sandwich`
// supersedes the individual ib / chi_star / er selections and adds the
// hashing bound (when certified) and the inequality flags. Solver
// failures are recorded in-row, never fatal.
void append_measures(ReportRecord& row, const MeasureSelection& sel,
                     const DensityMatrix& rho, const std::string& label) {
  if (sel.sandwich) {
    const MeasureReport report = sandwich_report(rho, label);
    row.add_number("ib", report.i_b);
    if (sel.chi) row.add_number("chi", holevo(weyl_ensemble(rho)));
    row.add_number("chi_star", report.chi_star);
    if (report.e_r) {
      append_er_summary(row, report.e_r->value, report.e_r->iterations,
                        report.e_r->converged);
    } else {
      row.add_text("er", "skipped_dim_gt_16");
    }
    if (report.hashing_lower) {
      row.add_number("hashing_lower", *report.hashing_lower);
    }
    for (const auto& flag : report.flags) {
      row.add_text("flag_" + flag.name, flag.holds ? "pass" : "fail");
      row.add_number("margin_" + flag.name, flag.margin);
    }
    return;
  }
  if (sel.ib) row.add_number("ib", coherent_information(rho));
  if (sel.chi) row.add_number("chi", holevo(weyl_ensemble(rho)));
  if (sel.chi_star) row.add_number("chi_star", dc_capacity(rho));
  if (sel.er) {
    if (rho.dim() > kSolverDimCap) {
      row.add_text("er", "skipped_dim_gt_16");
      return;
    }
    try {
      const ErResult result = relative_entropy_of_entanglement(rho);
      append_er_summary(row, result.value, result.iterations,
                        result.converged);
    } catch (const Error& e) {
      row.add_text("er", std::string("error_") + errc_name(e.code()));
    }
  }
}

// The multiplet family defaults to the exact closed forms; the explicit
// construction (dims 16 and 256) is opt-in. E_R always comes from the
// closed form -- the optimizer adds nothing on this family. chi needs a
// concrete matrix, so on the closed-form path it is marked skipped.
void append_eisert_measures(ReportRecord& row, const MeasureSelection& sel,
                            int j, bool explicit_construction) {
  const EisertParams params = eisert_params(j);
  const EisertMeasures closed = eisert_measures_closed(params);
  std::optional<DensityMatrix> state;
  if (explicit_construction) state.emplace(eisert_state_explicit(j));

  const double ib = state ? coherent_information(*state) : closed.i_b;
  if (sel.ib || sel.sandwich) row.add_number("ib", ib);
  if (sel.chi) {
    if (state) {
      row.add_number("chi", holevo(weyl_ensemble(*state)));
    } else {
      row.add_text("chi", "skipped_closed_form_path");
    }
  }
  if (sel.chi_star || sel.sandwich) {
    row.add_number("chi_star", static_cast<double>(params.n_pairs) + ib);
  }
  if (sel.er || sel.sandwich) row.add_number("er", closed.e_r);
  if (sel.sandwich) {
    row.add_text("flag_ib_le_er",
                 ib <= closed.e_r + kFlagSlack ? "pass" : "fail");
    row.add_number("margin_ib_le_er", closed.e_r - ib);
  }
}

}  // namespace

int cmd_compute(const std::string& spec_text, const std::string& measures,
                bool explicit_construction, OutputFormat format,
                std::ostream& out, std::ostream& err) {
  MeasureSelection sel;
  std::string rejected;
  if (!parse_measures(measures, /*allow_sandwich=*/true, sel, rejected)) {
    err << "unknown measure '" << rejected
        << "' (expected ib, chi, chi_star, er, sandwich)\n";
    return 1;
  }
  try {
    const StateSpec spec = parse_state_spec(spec_text);
    ReportRecord row;
    row.add_text("family", spec.family);
    for (const auto& field : spec.parameters) row.fields.push_back(field);
    if (spec.family == "eisert") {
      append_eisert_measures(row, sel, spec.eisert_j, explicit_construction);
    } else {
      append_measures(row, sel, *spec.state, spec.family);
    }
    write_records(out, {row}, format);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(const std::string& suites, std::optional<int> samples,
               std::uint64_t seed, OutputFormat format, std::ostream& out,
               std::ostream& err) {
  bool run_ib_le_er = false;
  bool run_fannes = false;
  bool run_continuity = false;
  bool run_convexity = false;
  bool run_eisert = false;
  for (const auto& token : split_list(suites)) {
    if (token == "all") {
      run_ib_le_er = run_fannes = run_continuity = run_convexity =
          run_eisert = true;
    } else if (token == "ib_le_er") {
      run_ib_le_er = true;
    } else if (token == "fannes") {
      run_fannes = true;
    } else if (token == "continuity") {
      run_continuity = true;
    } else if (token == "convexity") {
      run_convexity = true;
    } else if (token == "eisert") {
      run_eisert = true;
    } else {
      err << "unknown suite '" << token
          << "' (expected all, ib_le_er, fannes, continuity, convexity, "
             "eisert)\n";
      return 1;
    }
  }
  if (!(run_ib_le_er || run_fannes || run_continuity || run_convexity ||
        run_eisert)) {
    err << "empty suite selection\n";
    return 1;
  }
  if (samples && *samples < 0) {
    err << "sample count must be nonnegative\n";
    return 1;
  }
  try {
    std::vector<CheckOutcome> outcomes;
    if (run_ib_le_er) {
      outcomes.push_back(check_ib_le_er(samples.value_or(200), seed));
    }
    if (run_fannes) {
      outcomes.push_back(check_fannes(samples.value_or(500), seed));
    }
    if (run_continuity) {
      outcomes.push_back(check_ib_continuity(samples.value_or(200), seed));
    }
    if (run_convexity) {
      outcomes.push_back(check_er_convexity(samples.value_or(100), seed));
    }
    if (run_eisert) {
      outcomes.push_back(check_eisert(1));
      outcomes.push_back(check_eisert(2));
    }

    std::vector<ReportRecord> rows;
    rows.reserve(outcomes.size());
    int total_failures = 0;
    for (const auto& outcome : outcomes) {
      ReportRecord row;
      row.add_text("check", outcome.name);
      row.add_count("samples", outcome.samples);
      row.add_count("failures", outcome.failures);
      row.add_number("worst_violation", outcome.worst_violation);
      rows.push_back(std::move(row));
      total_failures += outcome.failures;
      for (const auto& line : outcome.details) {
        err << outcome.name << ": " << line << "\n";
      }
    }
    write_records(out, rows, format);
    return total_failures == 0 ? 0 : 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_sweep(const SweepRequest& request, OutputFormat format,
              std::ostream& out, std::ostream& err) {
  MeasureSelection sel;
  std::string rejected;
  if (!parse_measures(request.measures, /*allow_sandwich=*/false, sel,
                      rejected)) {
    err << "unknown sweep measure '" << rejected
        << "' (expected ib, chi, chi_star, er)\n";
    return 1;
  }
  enum class Family { isotropic, bell, eisert };
  Family family;
  std::string expected_parameter;
  if (request.family == "isotropic") {
    family = Family::isotropic;
    expected_parameter = "F";
  } else if (request.family == "bell_diagonal") {
    family = Family::bell;
    expected_parameter = "p";
  } else if (request.family == "eisert") {
    family = Family::eisert;
    expected_parameter = "J";
  } else {
    err << "unknown sweep family '" << request.family
        << "' (expected isotropic, bell_diagonal, eisert)\n";
    return 1;
  }
  if (request.parameter != expected_parameter) {
    err << "family " << request.family << " sweeps over "
        << expected_parameter << ", not '" << request.parameter << "'\n";
    return 1;
  }

  try {
    if (!(request.step > 0.0)) {
      throw Error(errc::bad_range, "step must be positive");
    }
    if (request.to < request.from - 1e-12) {
      throw Error(errc::bad_range, "sweep range has to < from");
    }
    const double span = (request.to - request.from) / request.step;
    const std::size_t count =
        static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    if (count > kGridCap) {
      throw Error(errc::bad_range, "sweep grid exceeds " +
                                       std::to_string(kGridCap) + " points");
    }

    switch (family) {
      case Family::isotropic: {
        if (request.d < 2) {
          throw Error(errc::bad_range, "isotropic sweep needs d >= 2");
        }
        const double lo = 1.0 / static_cast<double>(request.d * request.d);
        if (request.from < lo - 1e-12 || request.to > 1.0 + 1e-12) {
          throw Error(errc::bad_range,
                      "F range must stay inside [1/d^2, 1]");
        }
        break;
      }
      case Family::bell: {
        if (request.from < -1e-12 || request.to > 1.0 + 1e-12) {
          throw Error(errc::bad_range, "p range must stay inside [0, 1]");
        }
        break;
      }
      case Family::eisert: {
        const double j0 = std::round(request.from);
        const double dj = std::round(request.step);
        if (std::abs(request.from - j0) > 1e-9 ||
            std::abs(request.step - dj) > 1e-9 || j0 < 1.0 || dj < 1.0) {
          throw Error(errc::bad_range,
                      "J sweep needs integer from >= 1 and step >= 1");
        }
        break;
      }
    }

    std::vector<ReportRecord> rows(count);
    parallel_for(count, [&](std::size_t k) {
      const double value =
          request.from + static_cast<double>(k) * request.step;
      ReportRecord row;
      row.add_text("family", request.family);
      switch (family) {
        case Family::isotropic: {
          const double lo = 1.0 / static_cast<double>(request.d * request.d);
          const double f = std::min(1.0, std::max(lo, value));
          row.add_count("d", static_cast<long long>(request.d));
          row.add_number("F", f);
          append_measures(row, sel, isotropic(f, request.d), "isotropic");
          break;
        }
        case Family::bell: {
          const double p = std::min(1.0, std::max(0.0, value));
          row.add_number("p", p);
          append_measures(row, sel, bell_diagonal({p, 1.0 - p, 0.0, 0.0}),
                          "bell_diagonal");
          break;
        }
        case Family::eisert: {
          const int j = static_cast<int>(std::llround(value));
          row.add_count("J", j);
          append_eisert_measures(row, sel, j, false);
          break;
        }
      }
      rows[k] = std::move(row);
    });
    write_records(out, rows, format);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_family(const std::string& name, int j, bool explicit_construction,
               OutputFormat format, std::ostream& out, std::ostream& err) {
  if (name != "eisert") {
    err << "unknown family '" << name << "' (expected eisert)\n";
    return 1;
  }
  try {
    const EisertParams params = eisert_params(j);
    const EisertMeasures closed = eisert_measures_closed(params);

    ReportRecord row;
    row.add_text("family", "eisert");
    row.add_count("J", j);
    row.add_count("n_pairs", params.n_pairs);
    long long rank = 0;
    for (const long long d_j : params.multiplicities) rank += d_j * d_j;
    row.add_count("rank", rank);
    for (std::size_t idx = 0; idx < params.multiplicities.size(); ++idx) {
      row.add_count("d_" + std::to_string(idx), params.multiplicities[idx]);
    }
    for (std::size_t idx = 0; idx < params.probabilities.size(); ++idx) {
      row.add_number("p_" + std::to_string(idx),
                     params.probabilities[idx].to_double());
    }
    row.add_number("ib", closed.i_b);
    row.add_number("er", closed.e_r);

    if (explicit_construction) {
      const DensityMatrix state = eisert_state_explicit(j);
      row.add_number("ib_explicit", coherent_information(state));

      // Spectral cross-check: eigenvalues must match the multiset
      // {p_j with multiplicity d_j^2}, padded with zeros.
      std::vector<double> expected;
      expected.reserve(state.dim());
      for (std::size_t idx = 0; idx < params.multiplicities.size(); ++idx) {
        const long long d_j = params.multiplicities[idx];
        const double p_j = params.probabilities[idx].to_double();
        for (long long c = 0; c < d_j * d_j; ++c) expected.push_back(p_j);
      }
      expected.resize(state.dim(), 0.0);
      std::sort(expected.begin(), expected.end());
      double deviation = 0.0;
      for (std::size_t k = 0; k < expected.size(); ++k) {
        deviation =
            std::max(deviation, std::abs(state.spectrum()[k] - expected[k]));
      }
      row.add_number("spectrum_dev", deviation);
    }
    write_records(out, {row}, format);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace entcap
