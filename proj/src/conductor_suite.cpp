#include <sstream>

#include "plinth/conductor.hpp"

namespace plinth::conductor {

std::vector<CheckRecord> run_suite(const SuiteOptions& opt) {
  CheckRunner run({{"p", std::to_string(opt.p)}, {"d", std::to_string(opt.d)}, {"l", std::to_string(opt.l)}});
  run.select(opt.checks);

  std::optional<Decomposition> dec;
  const CheckRecord& built = run.run_always("conductor.decomposition.identity", "generic decomposition", [&] {
    dec = generic_decomposition(opt.d, opt.p, opt.l);
    std::ostringstream os;
    os << "g = " << dec->g.str();
    for (std::size_t i = 0; i < dec->f.size(); ++i)
      os << "; f[" << i << "] = " << (dec->f[i].is_zero() ? "0" : artifact(dec->f[i]));
    Outcome o = Outcome::expect(dec->identity, os.str());
    if (!dec->identity) o.details += "; the sum does not reproduce (g')^p y^l inside S[y^p]";
    o.telemetry["target"] = size_of(dec->target);
    return o;
  });
  if (!dec || built.status != Status::pass) return run.take();

  run.run("conductor.decomposition.bounds", "xi-degree bounds", [&] {
    std::ostringstream os;
    os << "xi-degrees";
    for (std::size_t i = 0; i < dec->xi_degree.size(); ++i)
      os << (i ? ", " : " ") << dec->xi_degree[i] << " <= " << dec->p - i;
    return Outcome::expect(dec->bounds, os.str());
  });

  run.run("conductor.decomposition.unique", "uniqueness of the decomposition", [&] {
    return Outcome::expect(dec->unique, "independent ansatz; forward and reversed solves agree");
  });

  run.run("conductor.represent.generic", "elimination agrees with the decomposition", [&] {
    RelationIdeal rel(dec->g, "y", opt.budget);
    Representation r = represent(rel, opt.l);
    Poly diff = rel.reduce(r.lambda - as_tags(*dec, rel.tag_ring()));
    Outcome o = Outcome::expect(diff.is_zero(), "lambda = " + (r.lambda.is_zero() ? std::string("0") : artifact(r.lambda)));
    if (!diff.is_zero()) o.details += "; difference modulo the relations: " + artifact(diff);
    o.telemetry["lambda"] = size_of(r.lambda);
    return o;
  });
  return run.take();
}

}  // namespace plinth::conductor
