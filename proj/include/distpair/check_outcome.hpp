#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace distpair {

enum class Verdict { pass, fail, indeterminate };

std::string to_string(Verdict verdict);

using Cell = std::variant<double, std::string>;

// One per-probe (or per-grid-point) row of a check, columns in insertion order.
struct DetailRow {
  std::vector<std::pair<std::string, Cell>> cells;

  DetailRow& add(std::string column, double value) {
    cells.emplace_back(std::move(column), value);
    return *this;
  }
  DetailRow& add(std::string column, std::string value) {
    cells.emplace_back(std::move(column), std::move(value));
    return *this;
  }
};

struct CheckOutcome {
  std::string name;
  Verdict verdict = Verdict::indeterminate;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string inputs_digest;
  std::vector<DetailRow> details;
};

// PASS iff residual <= tolerance and every sub-pairing converged;
// INDETERMINATE iff some sub-pairing did not converge; FAIL otherwise.
Verdict decide(double residual, double tolerance, bool all_converged);

// FAIL if any outcome failed, else INDETERMINATE if any was, else PASS.
Verdict aggregate(std::span<const CheckOutcome> outcomes);

// 0 when all pass, 1 if any FAIL, 3 if any INDETERMINATE and none FAIL.
int exit_code(std::span<const CheckOutcome> outcomes);

// 16 hex digits of the 64-bit FNV-1a hash of a canonical input description.
std::string digest(std::string_view canonical);

// Accumulates a canonical input description; numbers print with 17 significant digits.
class DigestBuilder {
 public:
  DigestBuilder& add(std::string_view key, double value);
  DigestBuilder& add(std::string_view key, std::string_view value);
  std::string str() const { return digest(text_); }

 private:
  std::string text_;
};

}  // namespace distpair
