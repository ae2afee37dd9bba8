#include "ordlim/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ordlim/config.hpp"
#include "ordlim/convexity.hpp"
#include "ordlim/errors.hpp"
#include "ordlim/grammar.hpp"
#include "ordlim/ito.hpp"
#include "ordlim/json_io.hpp"
#include "ordlim/probes.hpp"
#include "ordlim/rewriting.hpp"

namespace ordlim::cli {

namespace {

using io::Json;
using probes::Verdict;

constexpr const char* kVersion = "0.1.0";

const std::map<std::string, std::int64_t> kDefaultBudgets = {
    {"gamma", 100000}, {"sign", 20000}, {"step", 2000}, {"verify", 200000}, {"witness", 2000},
};

struct Options {
  std::string spec;
  std::vector<std::string> budget_args;
  std::optional<int> m, radius, horizon;
  std::string variant = "tpositive";
  std::string json_out;
  std::vector<std::string> words;
  std::vector<std::string> seeds, targets;
  std::int64_t k = 0, l = 0, t = 0;
};

struct Outcome {
  Json body;
  int code = 0;
};

int code_of(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 1;
}

Verdict worst(std::initializer_list<Verdict> vs) {
  Verdict out = Verdict::Pass;
  for (Verdict v : vs) {
    if (v == Verdict::Fail) return Verdict::Fail;
    if (v == Verdict::Inconclusive) out = Verdict::Inconclusive;
  }
  return out;
}

std::int64_t budget_scale() {
  const char* s = std::getenv("ORDLIM_BUDGET_SCALE");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long long v = std::strtoll(s, &end, 10);
  if (*end != '\0' || v < 1) throw InputError("ORDLIM_BUDGET_SCALE must be a positive integer");
  return v;
}

class Context {
 public:
  Context(const std::string& command, const Options& o) : command_(command), o_(o) {
    if (!o.spec.empty()) cfg_ = config::load(o.spec);
    scale_ = budget_scale();
    budgets_ = kDefaultBudgets;
    if (cfg_) {
      for (const auto& [name, v] : cfg_->budgets) set_budget(name, v);
    }
    for (const std::string& arg : o.budget_args) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos) throw InputError("--budget expects NAME=N, got " + arg);
      const std::string name = arg.substr(0, eq);
      const std::string num = arg.substr(eq + 1);
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != num.size() || num.empty()) throw InputError("--budget " + arg + ": N is not an integer");
      set_budget(name, v);
    }
  }

  std::size_t budget(const std::string& name) const {
    return static_cast<std::size_t>(budgets_.at(name) * scale_);
  }

  const ChainSpec& chain() const {
    if (!cfg_ || !cfg_->chain) throw InputError(command_ + " needs --spec with a chain");
    return *cfg_->chain;
  }
  const config::FamilySpec& family() const {
    if (!cfg_ || !cfg_->family) throw InputError(command_ + " needs --spec with a handles family");
    return *cfg_->family;
  }

  int m(int fallback) const { return pick(o_.m, cfg_ ? cfg_->m : std::nullopt, fallback, "--m"); }
  int radius(int fallback) const {
    return pick(o_.radius, cfg_ ? cfg_->radius : std::nullopt, fallback, "--radius");
  }
  int horizon(int fallback) const {
    return pick(o_.horizon, cfg_ ? cfg_->horizon : std::nullopt, fallback, "--horizon");
  }

  Word word(const std::string& text) const {
    return parse_word(text, cfg_ && cfg_->chain ? &*cfg_->chain : nullptr);
  }

  Json meta() const {
    Json j;
    j["tool"] = "ordlim";
    j["version"] = kVersion;
    j["command"] = command_;
    j["budget_scale"] = scale_;
    Json b;
    for (const auto& [name, v] : budgets_) b[name] = v * scale_;
    j["budgets"] = b;
    Json a;
    if (o_.m) a["m"] = *o_.m;
    if (o_.radius) a["radius"] = *o_.radius;
    if (o_.horizon) a["horizon"] = *o_.horizon;
    if (!o_.words.empty()) a["words"] = o_.words;
    j["args"] = a.is_null() ? Json::object() : a;
    return j;
  }

  Json spec_json() const {
    if (cfg_ && cfg_->chain) return cfg_->chain->key();
    if (cfg_ && cfg_->family) return "handles";
    return nullptr;
  }

  ito::HandleOptions handle_options() const { return {budget("sign")}; }

 private:
  void set_budget(const std::string& name, std::int64_t v) {
    if (!budgets_.count(name)) throw InputError("unknown budget name " + name);
    if (v < 1) throw InputError("budget " + name + " must be >= 1");
    budgets_[name] = v;
  }
  static int pick(std::optional<int> flag, std::optional<int> cfg, int fallback, const char* what) {
    const int v = flag ? *flag : (cfg ? *cfg : fallback);
    if (v < 0) throw InputError(std::string(what) + " must be >= 0");
    return v;
  }

  std::string command_;
  const Options& o_;
  std::optional<config::RunConfig> cfg_;
  std::int64_t scale_ = 1;
  std::map<std::string, std::int64_t> budgets_;
};

Outcome report_outcome(const probes::ProbeReport& r) { return {io::to_json(r), code_of(r.overall())}; }

Json handle_json(const ito::OrderedGroupHandle& h) {
  Json j;
  j["name"] = h.name();
  const PresState& p = h.presentation();
  Json gens = Json::array();
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    gens.push_back({{"id", p.generators[i]}, {"name", p.names[i]}});
  }
  j["presentation"] = {{"generators", gens}, {"relators", Json::array()}};
  for (const Word& r : p.relators) j["presentation"]["relators"].push_back(format_word(r));
  Json cone = Json::array();
  for (const Word& g : h.generators()) cone.push_back(format_word(g));
  j["cone_generators"] = cone;
  j["central"] = format_word(h.central());
  return j;
}

// ---------------------------------------------------------------------------
// certificate checking

struct CertChecker {
  std::optional<ChainSpec> chain;
  std::map<std::string, ito::OrderedGroupHandle> handles;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool valid(const Json& s) {
    const std::string value = s.at("value").get<std::string>();
    const Word w = parse_word(s.at("word").get<std::string>());
    const std::string basis = s.value("basis", "chain");
    std::function<Word(const std::string&)> factor;
    std::function<bool(const Word&, const Word&)> equal;
    std::optional<rewriting::TreeNormalizer> tn;
    if (basis == "chain") {
      if (!chain) throw InputError("certificate over a chain but the config has none");
      tn = rewriting::TreeNormalizer::for_chain(*chain);
      factor = [&](const std::string& name) { return parse_word(name, &*chain); };
      equal = [&](const Word& a, const Word& b) { return tn->equal(a, b); };
    } else {
      auto it = handles.find(basis);
      if (it == handles.end()) throw InputError("certificate basis " + basis + " is not built by this config");
      const ito::OrderedGroupHandle& h = it->second;
      factor = [&h](const std::string& name) {
        std::size_t used = 0;
        const int k = name.size() > 1 && name[0] == 'c' ? std::stoi(name.substr(1), &used) : 0;
        if (k < 1 || used + 1 != name.size() || static_cast<std::size_t>(k) > h.generators().size()) {
          throw InputError("bad certificate factor " + name);
        }
        return h.generators()[static_cast<std::size_t>(k - 1)];
      };
      equal = [&h](const Word& a, const Word& b) { return h.equal(a, b); };
    }
    const auto& cert = s.at("certificate");
    if (value == "zero") return cert.empty() && equal(w, Word{});
    if (value == "unknown") return cert.empty();
    if (cert.empty()) return false;
    Word prod;
    for (const auto& f : cert) prod = mul(prod, factor(f.get<std::string>()));
    if (value == "positive") return equal(prod, w);
    if (value == "negative") return equal(prod, invert(w));
    return false;
  }

  void walk(const Json& j, const std::string& path) {
    if (j.is_object()) {
      if (j.contains("value") && j.contains("certificate") && j.contains("word")) {
        ++checked;
        if (!valid(j)) failures.push_back(path);
      }
      for (const auto& [key, v] : j.items()) {
        if (key != "meta") walk(v, path + "/" + key);
      }
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], path + "/" + std::to_string(i));
    }
  }
};

void add_handles(CertChecker& c, const config::FamilySpec& fam, const ito::HandleOptions& opt, int m) {
  const ito::HandleFamily F = config::family(fam, opt);
  auto keep = [&](const ito::OrderedGroupHandle& h) { c.handles.emplace(h.name(), h); };
  // the ito-verify pair
  const ito::OrderedGroupHandle f0 = F(0), f1 = F(1);
  keep(f0);
  keep(f1);
  keep(ito::amalgamate(f0, f1, opt).handle);
  // the ito-build chain
  ito::OrderedGroupHandle g = f0;
  for (int j = 0; j < m; ++j) {
    const ito::OrderedGroupHandle right = F(j + 1), left = F(-j - 1);
    keep(right);
    keep(left);
    const ito::OrderedGroupHandle gp = ito::amalgamate(g, right, opt).handle;
    keep(gp);
    g = ito::amalgamate(left, gp, opt).handle;
    keep(g);
  }
}

// ---------------------------------------------------------------------------
// commands

using Command = std::function<Outcome(const Context&, const Options&)>;

Outcome cmd_nf(const Context& c, const Options& o) {
  if (o.words.size() != 1) throw InputError("nf takes one word");
  const Word w = c.word(o.words[0]);
  const auto tn = rewriting::TreeNormalizer::for_chain(c.chain());
  const Word nf = tn.normalize(w);
  Json j;
  j["input"] = format_word(w);
  j["normal_form"] = format_word(nf);
  j["identity"] = nf.empty();
  j["window"] = w.window();
  return {j, 0};
}

Outcome cmd_sign(const Context& c, const Options& o) {
  if (o.words.size() != 1) throw InputError("sign takes one word");
  const Word w = c.word(o.words[0]);
  const int m = c.m(w.window());
  if (m < w.window()) throw InputError("--m is below the word's window");
  const cone::SignResult r = cone::sign_at(c.chain(), w, m, c.budget("sign"));
  return {io::to_json(w, r), r.value == cone::Sign::Unknown ? 3 : 0};
}

Outcome cmd_cmp(const Context& c, const Options& o) {
  if (o.words.size() != 2) throw InputError("cmp takes two words");
  const Word a = c.word(o.words[0]), b = c.word(o.words[1]);
  const cone::CompareResult r = cone::compare(c.chain(), Element::of(a), Element::of(b), c.budget("sign"));
  Json j;
  j["a"] = format_word(a);
  j["b"] = format_word(b);
  j["order"] = r.order ? Json(to_string(*r.order)) : Json("unknown");
  j["evidence"] = io::to_json(mul(invert(a), b), r.evidence);
  return {j, r.order ? 0 : 3};
}

Outcome cmd_props(const Context& c, const Options&) {
  return report_outcome(probes::verify_dehornoy_props(c.chain(), c.m(1), c.budget("sign")));
}

Outcome cmd_minimal(const Context& c, const Options&) {
  return report_outcome(probes::minimal_positive_probe(c.chain(), c.m(1), c.radius(6), c.budget("sign")));
}

Outcome cmd_density(const Context& c, const Options&) {
  return report_outcome(probes::density_probe(c.chain(), c.m(2), c.budget("sign")));
}

Outcome cmd_conditions(const Context& c, const Options&) {
  convexity::DeduceOptions d{c.budget("step"), c.budget("sign"), -1};
  return report_outcome(convexity::replay_conditions(c.chain(), c.m(1), d));
}

Outcome cmd_witness(const Context& c, const Options& o) {
  std::vector<std::string> names = o.words;
  if (names.empty()) names = {"a(-1,1)", "a(0,1)", "a(1,1)"};
  std::vector<Word> F;
  for (const std::string& s : names) F.push_back(c.word(s));
  probes::WitnessOptions w;
  w.conj_window = w.disc_window = c.m(2);
  w.conj_radius = w.disc_radius = c.radius(2);
  w.budget = c.budget("witness");
  const probes::WitnessResult r = probes::nonisolation_witness(c.chain(), F, w);
  Json j = io::to_json(r);
  int code = 3;
  if (r.found) {
    const bool ok = probes::verify_witness(c.chain(), r, c.budget("sign"));
    j["verified"] = ok;
    code = ok ? 0 : 2;
  }
  j["options"] = {{"conj_window", w.conj_window},
                  {"conj_radius", w.conj_radius},
                  {"disc_window", w.disc_window},
                  {"disc_radius", w.disc_radius}};
  return {j, code};
}

Outcome cmd_euclid(const Context&, const Options& o) {
  const TietzeTrace t = euclid_normalize(o.k, o.l);
  return {io::to_json(t, replay_abelian(t)), 0};
}

Outcome cmd_soul(const Context& c, const Options&) {
  convexity::DeduceOptions d{c.budget("step"), c.budget("sign"), -1};
  return report_outcome(convexity::conradian_soul_evidence(c.chain(), c.radius(3), c.horizon(3), d, c.m(1)));
}

Outcome cmd_gamma(const Context& c, const Options& o) {
  std::vector<Word> seed;
  int top = 0;
  for (const std::string& s : o.words) {
    seed.push_back(c.word(s));
    top = std::max(top, seed.back().window());
  }
  if (seed.empty()) throw InputError("gamma takes at least one seed word");
  const convexity::ConvexApprox a =
      convexity::gamma_ball(c.chain(), seed, c.m(top), c.radius(4), c.budget("gamma"), c.budget("sign"));
  return {io::to_json(a), a.truncated ? 3 : 0};
}

Outcome cmd_deduce(const Context& c, const Options& o) {
  std::vector<Word> seed, targets;
  for (const std::string& s : o.seeds) seed.push_back(c.word(s));
  for (const std::string& s : o.targets) targets.push_back(c.word(s));
  if (targets.empty()) throw InputError("deduce needs at least one --target");
  convexity::DeduceOptions d{c.budget("step"), c.budget("sign"), o.m ? *o.m : -1};
  const convexity::Deduction r = convexity::deduce_containment(c.chain(), seed, targets, d);
  Json j = io::to_json(r, seed, targets);
  const convexity::TraceCheck tc = convexity::replay(c.chain(), seed, r.trace);
  j["replay"] = {{"valid", tc.valid}, {"failed_step", tc.valid ? Json(nullptr) : Json(tc.failed_step)},
                 {"reason", tc.reason}};
  return {j, !tc.valid ? 2 : (r.complete ? 0 : 3)};
}

Outcome cmd_hnn(const Context& c, const Options& o) {
  if (o.words.size() > 1) throw InputError("hnn-sign takes at most one word");
  std::string v = o.variant;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
  probes::HnnVariant variant;
  if (v == "tpositive" || v == "tpos") {
    variant = probes::HnnVariant::TPositive;
  } else if (v == "tnegative" || v == "tneg") {
    variant = probes::HnnVariant::TNegative;
  } else {
    throw InputError("--variant must be tpositive or tnegative");
  }
  const Word w = o.words.empty() ? Word{} : c.word(o.words[0]);
  const probes::HnnSign s = probes::hnn_sign(c.chain(), {Element::of(w), o.t}, variant, c.budget("sign"));
  Json j;
  j["value"] = cone::to_string(s.value);
  j["part"] = format_word(w);
  j["t_exp"] = o.t;
  j["variant"] = variant == probes::HnnVariant::TPositive ? "tpositive" : "tnegative";
  j["basis"] = s.basis;
  if (s.base) j["base_sign"] = io::to_json(w, *s.base);
  return {j, s.value == cone::Sign::Unknown ? 3 : 0};
}

Outcome cmd_ito_build(const Context& c, const Options&) {
  const int m = c.m(1);
  const ito::ChainBuild b = ito::iterate_chain(config::family(c.family(), c.handle_options()), m,
                                               c.handle_options());
  Json j;
  j["m"] = m;
  j["top"] = handle_json(b.top);
  Json mins = Json::array();
  for (const Word& w : b.minimal) mins.push_back(format_word(w));
  j["minimal"] = mins;
  j["report"] = io::to_json(b.report);
  return {j, code_of(b.report.overall())};
}

Outcome cmd_ito_verify(const Context& c, const Options&) {
  const ito::HandleFamily F = config::family(c.family(), c.handle_options());
  const ito::AmalgamHandle X = ito::amalgamate(F(0), F(1), c.handle_options());
  const probes::ProbeReport chain = ito::verify_ito_chain(X, c.budget("verify"));
  const probes::ProbeReport c6 = ito::factorization_probe(X, c.budget("verify"));
  Json j;
  j["g"] = handle_json(X.g);
  j["h"] = handle_json(X.h);
  j["x"] = handle_json(X.handle);
  j["inv_h"] = io::to_json(X.inv_h);
  j["chain"] = io::to_json(chain);
  j["factorization"] = io::to_json(c6);
  return {j, code_of(worst({X.inv_h.overall(), chain.overall(), c6.overall()}))};
}

Outcome cmd_check_cert(const Context& c, const Options& o) {
  if (o.words.size() != 1) throw InputError("check-cert takes one JSON file");
  std::ifstream in(o.words[0]);
  if (!in) throw InputError("cannot open " + o.words[0]);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(o.words[0] + ": " + e.what());
  }
  CertChecker checker;
  try {
    checker.chain = c.chain();
  } catch (const InputError&) {
  }
  if (!checker.chain) {
    int m = 1;
    if (doc.contains("meta") && doc["meta"].contains("args") && doc["meta"]["args"].contains("m")) {
      m = doc["meta"]["args"]["m"].get<int>();
    }
    add_handles(checker, c.family(), c.handle_options(), m);
  }
  checker.walk(doc, "");
  Json j;
  j["file"] = std::filesystem::path(o.words[0]).filename().string();
  j["certificates"] = checker.checked;
  j["invalid"] = checker.failures;
  j["valid"] = checker.failures.empty();
  return {j, checker.failures.empty() ? 0 : 2};
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + tmp);
    f << text;
    if (!f) throw InputError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordlim: orderings of chain groups and their limits", "ordlim"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--spec,--config", o.spec, "config file or inline JSON");
  app.add_option("--budget", o.budget_args, "NAME=N, repeatable (names: gamma, sign, step, verify, witness)")
      ->allow_extra_args(false);
  app.add_option("--m", o.m, "window or level count");
  app.add_option("--radius", o.radius, "ball radius");
  app.add_option("--horizon", o.horizon, "level horizon");
  app.add_option("--variant", o.variant, "hnn-sign ordering: tpositive or tnegative");
  app.add_option("--json-out", o.json_out, "write JSON here instead of stdout");

  const std::vector<std::pair<std::string, Command>> commands = {
      {"nf", cmd_nf},           {"sign", cmd_sign},          {"cmp", cmd_cmp},
      {"props", cmd_props},     {"minimal", cmd_minimal},    {"density", cmd_density},
      {"witness", cmd_witness}, {"euclid", cmd_euclid},      {"soul", cmd_soul},
      {"gamma", cmd_gamma},     {"deduce", cmd_deduce},      {"hnn-sign", cmd_hnn},
      {"ito-build", cmd_ito_build}, {"ito-verify", cmd_ito_verify}, {"check-cert", cmd_check_cert},
      {"conditions", cmd_conditions},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) {
    CLI::App* s = app.add_subcommand(name);
    subs[name] = s;
    if (name == "euclid") {
      s->add_option("--k", o.k)->required();
      s->add_option("--l", o.l)->required();
    } else if (name == "deduce") {
      s->add_option("--seed", o.seeds, "seed word, repeatable")->allow_extra_args(false);
      s->add_option("--target", o.targets, "target word, repeatable")->allow_extra_args(false);
    } else if (name == "hnn-sign") {
      s->add_option("--t", o.t, "exponent of t");
      s->add_option("words", o.words);
    } else {
      s->add_option("words", o.words);
    }
  }

  std::vector<std::string> argv_store{"ordlim"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "ordlim: " << e.what() << "\n";
    return 1;
  }

  std::string name;
  Command fn;
  for (const auto& [n, f] : commands) {
    if (subs[n]->parsed()) {
      name = n;
      fn = f;
    }
  }

  Json body;
  int code = 1;
  try {
    const Context ctx(name, o);
    Outcome r;
    try {
      r = fn(ctx, o);
    } catch (const ResourceExhausted& e) {
      r.body["error"] = e.what();
      r.body["verdict"] = "inconclusive";
      r.code = 3;
    }
    body["command"] = name;
    body["spec"] = ctx.spec_json();
    for (auto& [k, v] : r.body.items()) body[k] = v;
    body["meta"] = ctx.meta();
    code = r.code;
  } catch (const Error& e) {
    err << "ordlim " << name << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "ordlim " << name << ": " << e.what() << "\n";
    return 1;
  }

  const std::string text = body.dump(2) + "\n";
  try {
    if (o.json_out.empty()) {
      out << text;
    } else {
      write_atomic(o.json_out, text);
    }
  } catch (const std::exception& e) {
    err << "ordlim: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace ordlim::cli
