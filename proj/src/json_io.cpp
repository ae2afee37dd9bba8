#include "ordlim/json_io.hpp"

#include "ordlim/grammar.hpp"

namespace ordlim::io {

Json to_json(const Word& w) { return format_word(w); }

Json to_json(const Word& w, const cone::SignResult& r) {
  Json j;
  j["value"] = cone::to_string(r.value);
  Json cert = Json::array();
  if (r.certificate) {
    for (const ConeGenId& id : r.certificate->factors) cert.push_back(cone::format_id(id));
  }
  j["certificate"] = cert;
  j["word"] = format_word(w);
  j["basis"] = "chain";
  j["window"] = r.window;
  j["method"] = cone::to_string(r.method);
  j["budget_used"] = r.budget_used;
  return j;
}

Json to_json(const Word& w, const probes::Signed& s) {
  Json j;
  j["value"] = cone::to_string(s.value);
  j["certificate"] = s.certificate;
  j["word"] = format_word(w);
  j["basis"] = s.basis;
  j["budget_used"] = s.budget_used;
  return j;
}

Json to_json(const probes::ProbeReport& r) {
  Json j;
  j["probe"] = r.probe;
  j["verdict"] = probes::to_string(r.overall());
  std::size_t counts[3] = {0, 0, 0};
  for (const probes::Check& c : r.checks) ++counts[static_cast<int>(c.verdict)];
  j["counts"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"inconclusive", counts[2]}};
  Json checks = Json::array();
  for (const probes::Check& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["verdict"] = probes::to_string(c.verdict);
    cj["note"] = c.note;
    Json ev = Json::array();
    for (const probes::Evidence& e : c.evidence) {
      Json ej;
      ej["role"] = e.role;
      ej["word"] = format_word(e.word);
      if (e.sign) ej["sign"] = to_json(e.word, *e.sign);
      ev.push_back(std::move(ej));
    }
    cj["evidence"] = std::move(ev);
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["budgets"] = r.budgets;
  j["note"] = r.note;
  return j;
}

Json to_json(const convexity::DeductionTrace& t) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const convexity::Step& s = t.steps[i];
    Json j;
    j["index"] = i;
    j["rule"] = convexity::to_string(s.rule);
    j["premises"] = s.premises;
    j["conclusion"] = format_word(s.conclusion);
    if (s.rule == convexity::Rule::Root) j["exponent"] = s.exponent;
    if (s.rule == convexity::Rule::Sandwich && s.evidence.size() == 2 && !s.premises.empty()) {
      const Word& upper = t.steps[s.premises[0]].conclusion;
      j["evidence"] = Json::array({to_json(s.conclusion, s.evidence[0]),
                                   to_json(mul(invert(s.conclusion), upper), s.evidence[1])});
    }
    steps.push_back(std::move(j));
  }
  return steps;
}

Json to_json(const convexity::Deduction& d, const std::vector<Word>& seed, const std::vector<Word>& targets) {
  Json j;
  j["complete"] = d.complete;
  j["max_window"] = d.max_window;
  Json sj = Json::array();
  for (const Word& w : seed) sj.push_back(format_word(w));
  j["seed"] = std::move(sj);
  Json tj = Json::array();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    Json t;
    t["word"] = format_word(targets[i]);
    t["reached"] = static_cast<bool>(d.reached[i]);
    t["step"] = d.target_steps[i] ? Json(*d.target_steps[i]) : Json(nullptr);
    tj.push_back(std::move(t));
  }
  j["targets"] = std::move(tj);
  j["trace"] = to_json(d.trace);
  if (!d.complete) {
    Json f = Json::array();
    for (const Word& w : d.frontier) f.push_back(format_word(w));
    j["frontier"] = std::move(f);
  }
  return j;
}

Json to_json(const convexity::ConvexApprox& a) {
  Json j;
  Json seed = Json::array();
  for (const Word& w : a.seed) seed.push_back(format_word(w));
  j["seed"] = std::move(seed);
  j["window"] = a.window;
  j["radius"] = a.radius;
  j["truncated"] = a.truncated;
  j["work"] = a.work;
  Json members = Json::array();
  for (const Word& w : a.members) members.push_back(format_word(w));
  j["size"] = a.members.size();
  j["members"] = std::move(members);
  j["trace"] = to_json(a.trace);
  return j;
}

Json to_json(const probes::WitnessResult& w) {
  Json j;
  j["outcome"] = w.found ? "witness" : "not-found";
  Json ag = Json::array();
  for (std::size_t i = 0; i < w.agreement.size(); ++i) {
    Json a;
    const Word& f = w.agreement[i];
    a["element"] = format_word(f);
    if (i < w.agreement_signs.size()) {
      a["sign"] = to_json(f, w.agreement_signs[i].first);
      a["conjugate_sign"] = to_json(mul({invert(w.conjugator), f, w.conjugator}), w.agreement_signs[i].second);
    }
    ag.push_back(std::move(a));
  }
  if (w.found) {
    j["conjugator"] = format_word(w.conjugator);
    j["discriminator"] = format_word(w.discriminator);
    j["discriminator_sign"] = to_json(w.discriminator, w.disc_sign);
    j["discriminator_conjugate_sign"] =
        to_json(mul({invert(w.conjugator), w.discriminator, w.conjugator}), w.disc_conjugate_sign);
  }
  j["agreement"] = std::move(ag);
  j["conjugators_tried"] = w.conjugators_tried;
  j["discriminators_tried"] = w.discriminators_tried;
  return j;
}

Json to_json(const TietzeTrace& t, const AbelianReplay& replay) {
  Json j;
  j["k"] = t.k;
  j["l"] = t.l;
  if (t.obstruction) {
    j["obstruction"] = {{"d", t.obstruction->d},
                        {"reduced_k", t.obstruction->reduced_k},
                        {"reduced_l", t.obstruction->reduced_l}};
  } else {
    j["obstruction"] = nullptr;
  }
  j["swapped"] = t.swapped;
  Json steps = Json::array();
  for (const TietzeStep& s : t.steps) {
    Json sj;
    sj["resolution"] = {{"dividend", s.resolution.dividend},
                        {"quotient", s.resolution.quotient},
                        {"divisor", s.resolution.divisor},
                        {"remainder", s.resolution.remainder}};
    sj["substitution"] = {{"replaced", s.substitution.replaced},
                          {"introduced", s.substitution.introduced},
                          {"other", s.substitution.other},
                          {"quotient", s.substitution.quotient},
                          {"definition", format_word(s.substitution.definition)}};
    steps.push_back(std::move(sj));
  }
  j["resolutions"] = t.steps.size();
  j["steps"] = std::move(steps);
  j["final_relation"] = {{"lhs", t.final_relation.lhs},
                         {"lhs_exp", t.final_relation.lhs_exp},
                         {"rhs", t.final_relation.rhs},
                         {"rhs_exp", t.final_relation.rhs_exp}};
  j["exponent_one_relation"] = t.has_exponent_one_relation();
  j["abelian_replay"] = {{"consistent", replay.consistent},
                         {"steps_unimodular", replay.steps_unimodular},
                         {"final_a", replay.final_a},
                         {"final_b", replay.final_b},
                         {"generators_left", replay.generators_left}};
  return j;
}

}  // namespace ordlim::io
