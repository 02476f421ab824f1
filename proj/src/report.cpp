#include "plinth/report.hpp"

#include <chrono>

#include "plinth/groebner.hpp"

namespace plinth {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
    case Status::budget_exceeded:
      return "budget-exceeded";
  }
  return "fail";
}

bool CheckRunner::selected(const std::string& id) const {
  if (patterns_.empty()) return true;
  for (const auto& p : patterns_) {
    if (p == "all" || p == id) return true;
    // A pattern selects every check whose id starts with "<pattern>.".
    if (id.size() > p.size() && id.compare(0, p.size(), p) == 0 && id[p.size()] == '.') return true;
  }
  return false;
}

const CheckRecord& CheckRunner::run(const std::string& id, const std::string& anchor,
                                    const std::function<Outcome()>& body) {
  static const CheckRecord skipped{};
  if (!selected(id)) return skipped;
  return run_always(id, anchor, body);
}

const CheckRecord& CheckRunner::run_always(const std::string& id, const std::string& anchor,
                                           const std::function<Outcome()>& body) {
  CheckRecord rec;
  rec.check_id = id;
  rec.anchor = anchor;
  rec.params = params_;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = body();
    rec.status = o.status;
    rec.details = std::move(o.details);
    rec.telemetry = std::move(o.telemetry);
  } catch (const BudgetExceeded& e) {
    rec.status = Status::budget_exceeded;
    rec.details = e.what();
  } catch (const NotDivisible& e) {
    rec.status = Status::fail;
    rec.details = std::string(e.what()) + "; remainder: " + artifact(e.remainder());
  } catch (const NotMember& e) {
    rec.status = Status::fail;
    rec.details = std::string(e.what()) + "; normal form: " + artifact(e.remainder());
  } catch (const std::exception& e) {
    rec.status = Status::fail;
    rec.details = e.what();
  }
  rec.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  records_.push_back(std::move(rec));
  return records_.back();
}

std::string artifact(const Poly& f, std::size_t max_chars) {
  std::string s = f.str();
  if (s.size() <= max_chars) return s;
  return s.substr(0, max_chars) + " ... (" + std::to_string(f.size()) + " terms, degree " +
         std::to_string(f.total_degree()) + ")";
}

}  // namespace plinth
