#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "plinth/poly.hpp"

namespace plinth {

enum class Status { pass, fail, inconclusive, budget_exceeded };

std::string to_string(Status s);

struct Size {
  u32 degree = 0;
  std::size_t terms = 0;
};

using Telemetry = std::map<std::string, Size>;

inline Size size_of(const Poly& f) { return Size{f.total_degree(), f.size()}; }

struct CheckRecord {
  std::string check_id;
  std::string anchor;  // name of the verified result
  std::map<std::string, std::string> params;
  Status status = Status::pass;
  std::string details;
  long long elapsed_ms = 0;
  Telemetry telemetry;
};

struct Outcome {
  Status status = Status::pass;
  std::string details;
  Telemetry telemetry;

  static Outcome pass(std::string d = {}) { return Outcome{Status::pass, std::move(d), {}}; }
  static Outcome fail(std::string d) { return Outcome{Status::fail, std::move(d), {}}; }
  static Outcome expect(bool ok, std::string d) { return Outcome{ok ? Status::pass : Status::fail, std::move(d), {}}; }
};

// Runs checks, timing each and turning exceptions into records:
// BudgetExceeded -> budget_exceeded, anything else -> fail.
class CheckRunner {
 public:
  explicit CheckRunner(std::map<std::string, std::string> params) : params_(std::move(params)) {}

  const CheckRecord& run(const std::string& id, const std::string& anchor, const std::function<Outcome()>& body);
  // Runs even when not selected.
  const CheckRecord& run_always(const std::string& id, const std::string& anchor,
                                const std::function<Outcome()>& body);
  // Skipped by selection: nothing is recorded.
  void select(std::vector<std::string> patterns) { patterns_ = std::move(patterns); }
  bool selected(const std::string& id) const;

  const std::vector<CheckRecord>& records() const { return records_; }
  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  std::map<std::string, std::string> params_;
  std::vector<std::string> patterns_;
  std::vector<CheckRecord> records_;
};

// Text used for failing artifacts; long polynomials are abbreviated.
std::string artifact(const Poly& f, std::size_t max_chars = 400);

}  // namespace plinth
