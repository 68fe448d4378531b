#include "distpair/check_outcome.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace distpair {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::indeterminate:
      return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

Verdict decide(double residual, double tolerance, bool all_converged) {
  if (!all_converged) return Verdict::indeterminate;
  return residual <= tolerance ? Verdict::pass : Verdict::fail;
}

Verdict aggregate(std::span<const CheckOutcome> outcomes) {
  bool indeterminate = false;
  for (const CheckOutcome& o : outcomes) {
    if (o.verdict == Verdict::fail) return Verdict::fail;
    indeterminate = indeterminate || o.verdict == Verdict::indeterminate;
  }
  return indeterminate ? Verdict::indeterminate : Verdict::pass;
}

int exit_code(std::span<const CheckOutcome> outcomes) {
  switch (aggregate(outcomes)) {
    case Verdict::pass:
      return 0;
    case Verdict::fail:
      return 1;
    case Verdict::indeterminate:
      return 3;
  }
  return 1;
}

std::string digest(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DigestBuilder& DigestBuilder::add(std::string_view key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  text_.append(key).append("=").append(buf).append(";");
  return *this;
}

DigestBuilder& DigestBuilder::add(std::string_view key, std::string_view value) {
  text_.append(key).append("=").append(value).append(";");
  return *this;
}

}  // namespace distpair
