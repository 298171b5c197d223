// Command-line front end. Exit status: 0 success, 2 mathematical rejection,
// 1 usage, parse or resource errors.

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "affc/dyndeg.hpp"
#include "affc/errors.hpp"
#include "affc/text.hpp"

namespace {

using affc::Field;
using affc::PolyMap;
using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "affc-report/1";
constexpr int kOk = 0, kError = 1, kRejected = 2;

struct Options {
  std::uint64_t characteristic = 0;
  int ext = 1;
  bool json = false;
  int rmax = 10;
  std::size_t budget = affc::kDefaultTermBudget;
  std::vector<std::string> inputs;
};

struct Report {
  Json body = Json::object();
  std::vector<std::string> lines;
  int status = kOk;
};

std::string read_input(const std::string& s) {
  if (s != "-") return s;
  std::string all((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  while (!all.empty() && std::isspace(static_cast<unsigned char>(all.back()))) all.pop_back();
  return all;
}

const Field* field_of(const Options& o) {
  if (o.ext < 1) throw CLI::ValidationError("--ext", "must be at least 1");
  if (o.characteristic == 0) {
    if (o.ext != 1) throw CLI::ValidationError("--ext", "extensions need --char p");
    return Field::rationals();
  }
  return Field::finite(o.characteristic, o.ext);
}

Json affine_json(const affc::AffineMap& a) {
  Json m = Json::array(), t = Json::array();
  for (const auto& row : a.A) {
    Json r = Json::array();
    for (const auto& s : row) r.push_back(s.str());
    m.push_back(r);
  }
  for (const auto& s : a.t) t.push_back(s.str());
  return {{"matrix", m}, {"translation", t}};
}

Json estimate_json(const affc::Estimate& e, bool complete) {
  return {{"complete", complete},
          {"degrees", e.degrees},
          {"expanded", e.expanded},
          {"fekete_upper", {{"lo", e.fekete.lo.get_str()}, {"hi", e.fekete.hi.get_str()}, {"r", e.fekete_r}}},
          {"ratio", e.ratio.get_str()}};
}

Json certificate_json(const affc::DynDegCertificate& c) {
  Json mu = Json::array();
  for (const auto& w : c.mu.w) mu.push_back(w.str());
  Json out = {{"mu", mu},
              {"theta", c.theta.str()},
              {"leading_part", c.leading_part.str()},
              {"evidence", affc::evidence_name(c.evidence)},
              {"proven", c.proven()}};
  if (!c.exponent_matrix.empty()) out["exponent_matrix"] = c.exponent_matrix;
  if (!c.projection.empty()) out["projection"] = c.projection;
  if (c.iterations_checked) out["iterations_checked"] = c.iterations_checked;
  return out;
}

std::string affine_str(const affc::AffineMap& a) { return a.to_polymap().str(); }

PolyMap parse_map(const Options& o, std::size_t i, const Field* F) {
  return PolyMap::parse(read_input(o.inputs.at(i)), F);
}

Report is_plane(const Options& o, const Field* F) {
  Report r;
  affc::Poly f = affc::parse_poly(read_input(o.inputs.at(0)), F);
  affc::PlaneVerdict v = affc::is_plane_deg3(f);
  r.body["plane"] = v.is_plane;
  if (v.is_plane) {
    r.body["case"] = affc::plane_case_name(v.kase);
    r.body["field"] = v.field->name();
    r.body["normal_form"] = v.normal_form.str();
    r.body["witness"] = affine_json(v.witness);
    r.lines = {"yes (case " + std::string(affc::plane_case_name(v.kase)) + ")", "normal form: " + v.normal_form.str(),
               "witness: " + affine_str(v.witness)};
  } else {
    r.status = kRejected;
    r.body["reason"] = v.reason;
    r.body["detail"] = v.detail;
    r.lines = {"no: " + v.reason + (v.detail.empty() ? "" : " (" + v.detail + ")")};
  }
  return r;
}

Report classify(const Options& o, const Field* F) {
  Report r;
  affc::Classification c = affc::classify_system(parse_map(o, 0, F));
  r.body["accepted"] = c.accepted;
  if (c.accepted) {
    const auto& out = c.outcome;
    Json params = Json::object();
    for (const auto& [k, v] : out.parameters) params[k] = v.str();
    r.body["family"] = out.family;
    r.body["field"] = out.field->name();
    r.body["normal_form"] = out.normal_form.str();
    r.body["alpha"] = affine_json(out.alpha);
    r.body["beta"] = affine_json(out.beta);
    r.body["parameters"] = params;
    r.body["distinguisher"] = affc::family_distinguisher(parse_map(o, 0, F));
    r.lines = {"family " + std::to_string(out.family) + " over " + out.field->name(),
               "normal form: " + out.normal_form.str(), "alpha: " + affine_str(out.alpha),
               "beta: " + affine_str(out.beta)};
    for (const auto& [k, v] : out.parameters) r.lines.push_back(k + " = " + v.str());
  } else {
    const auto& rej = c.rejection;
    r.status = kRejected;
    r.body["stage"] = rej.stage;
    r.body["detail"] = rej.detail;
    if (!rej.datum.is_zero()) r.body["datum"] = rej.datum.str();
    r.lines = {"rejected: " + rej.stage + " (" + rej.detail + ")"};
    if (!rej.datum.is_zero()) r.lines.push_back("datum: " + rej.datum.str());
  }
  return r;
}

Report dyndeg(const Options& o, const Field* F) {
  Report r;
  affc::LambdaValue v = affc::lambda_deg3(parse_map(o, 0, F), o.rmax);
  r.body["value"] = v.value.str();
  r.body["approx"] = v.value.approx();
  r.body["provenance"] = affc::provenance_name(v.provenance);
  r.body["case"] = v.tag;
  r.body["representative"] = v.analysed.str();
  if (v.certificate) r.body["certificate"] = certificate_json(*v.certificate);
  if (v.bounds) r.body["bounds"] = estimate_json(*v.bounds, true);
  std::string head = v.provenance == affc::LambdaValue::Provenance::UpperBoundOnly ? "lambda <= " : "lambda = ";
  r.lines = {head + v.value.str(), std::string("provenance: ") + affc::provenance_name(v.provenance) +
                                       (v.tag.empty() ? "" : " (" + v.tag + ")")};
  if (v.certificate)
    r.lines.push_back(std::string("certificate: ") + affc::evidence_name(v.certificate->evidence) +
                      ", leading part " + v.certificate->leading_part.str());
  return r;
}

Report compose(const Options& o, const Field* F) {
  Report r;
  PolyMap h = affc::compose(parse_map(o, 0, F), parse_map(o, 1, F));
  r.body["map"] = h.str();
  r.body["degree"] = h.degree();
  r.lines = {h.str()};
  return r;
}

Report iterate(const Options& o, const Field* F) {
  Report r;
  PolyMap f = parse_map(o, 0, F);
  std::vector<int> degs;
  bool complete = true;
  try {
    degs = affc::iterate_degrees(f, o.rmax, o.budget);
  } catch (const affc::BudgetExceeded& e) {
    degs = e.partial;
    complete = false;
  }
  r.body["complete"] = complete;
  r.body["degrees"] = degs;
  std::ostringstream s;
  for (std::size_t i = 0; i < degs.size(); ++i) s << (i ? " " : "") << degs[i];
  r.lines = {"deg f^r, r = 1.." + std::to_string(degs.size()) + ": " + s.str()};
  if (!complete) r.lines.push_back("term budget exceeded; later iterates not computed");
  return r;
}

Report invert(const Options& o, const Field* F) {
  Report r;
  PolyMap inv = affc::invert_deg3_automorphism(parse_map(o, 0, F));
  r.body["inverse"] = inv.str();
  r.body["field"] = inv.field()->name();
  r.lines = {inv.str()};
  return r;
}

Report decompose(const Options& o, const Field* F) {
  Report r;
  affc::TameWord w = affc::tame_decompose(parse_map(o, 0, F));
  Json letters = Json::array();
  for (const auto& l : w.letters) {
    bool aff = l.kind == affc::TameLetter::Kind::Affine;
    letters.push_back({{"kind", aff ? "affine" : "triangular"}, {"map", l.as_map().str()}});
    r.lines.push_back(std::string(aff ? "affine     " : "triangular ") + l.as_map().str());
  }
  r.body["letters"] = letters;
  r.body["composition"] = "first letter applied last";
  return r;
}

Report enumerate(const Options& o, const Field* F) {
  Report r;
  int d = std::stoi(o.inputs.at(0));
  Json values = Json::array();
  for (const auto& e : affc::enumerate_lambda_set(d, F)) {
    values.push_back({{"value", e.value.str()},
                      {"approx", e.value.approx()},
                      {"representative", e.representative.str()},
                      {"source", e.source}});
    r.lines.push_back(e.value.str() + "  " + e.representative.str() + "  [" + e.source + "]");
  }
  r.body["degree"] = d;
  r.body["values"] = values;
  return r;
}

Report estimate(const Options& o, const Field* F) {
  Report r;
  PolyMap f = parse_map(o, 0, F);
  affc::Estimate e;
  bool complete = true;
  try {
    e = affc::estimate(f, o.rmax, o.budget);
  } catch (const affc::BudgetExceeded& b) {
    if (b.partial.empty()) throw;
    e = affc::estimate_from_degrees(b.partial);
    complete = false;
  }
  r.body["estimate"] = estimate_json(e, complete);
  r.lines = {"lambda <= " + e.fekete.hi.get_str() + " (deg f^" + std::to_string(e.fekete_r) + ")",
             "ratio estimate " + e.ratio.get_str()};
  if (!complete) r.lines.push_back("stopped after " + std::to_string(e.degrees.size()) + " exact iterates");
  return r;
}

Json error_json(const std::string& kind, const std::string& msg) { return {{"kind", kind}, {"message", msg}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine linear systems, cubic automorphisms of A^3 and their dynamical degrees"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--char", o.characteristic, "Field characteristic, 0 or a prime")->capture_default_str();
  app.add_option("--ext", o.ext, "Extension degree k for F_{p^k}")->capture_default_str();
  app.add_flag("--json", o.json, "Emit a JSON report");
  app.add_option("--rmax", o.rmax, "Number of iterates")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--budget", o.budget, "Term budget for iterates")->capture_default_str();

  using Handler = Report (*)(const Options&, const Field*);
  struct Verb {
    const char* name;
    const char* help;
    int arity;
    Handler run;
  };
  const Verb verbs[] = {
      {"is-plane", "Decide whether {f = 0} is an affine plane (deg f <= 3)", 1, is_plane},
      {"classify", "Normal form of a linear system of affine spaces", 1, classify},
      {"dyndeg", "Dynamical degree of a cubic automorphism of A^3", 1, dyndeg},
      {"compose", "Composition f o g", 2, compose},
      {"iterate", "Degrees of the iterates f^r", 1, iterate},
      {"invert", "Inverse of a cubic automorphism of A^3", 1, invert},
      {"decompose-tame", "Affine and triangular letters composing to f", 1, decompose},
      {"enumerate-lambda", "Dynamical degrees of automorphisms of A^3 of degree d", 1, enumerate},
      {"estimate", "Fekete upper bound and ratio estimate from iterate degrees", 1, estimate},
  };
  const Verb* chosen = nullptr;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("input", o.inputs, v.arity == 2 ? "Maps f and g (\"-\" reads stdin)" : "Input (\"-\" reads stdin)")
        ->required()
        ->expected(v.arity);
    sub->callback([&chosen, &v] { chosen = &v; });
    // Global flags may also follow the verb.
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // With --json and a recognizable verb, usage errors are reported as JSON too.
    std::vector<std::string> args(argv + 1, argv + argc);
    const Verb* named = nullptr;
    for (const auto& v : verbs)
      if (std::find(args.begin(), args.end(), v.name) != args.end()) named = &v;
    bool json = std::find(args.begin(), args.end(), "--json") != args.end();
    if (!json || !named || e.get_exit_code() == 0) return app.exit(e) == 0 ? kOk : kError;
    Json err = {{"schema", kSchema}, {"verb", named->name}, {"error", error_json("usage", e.what())}, {"exit", kError}};
    std::cout << err.dump(2) << "\n";
    return kError;
  }

  Json out = {{"schema", kSchema}, {"verb", chosen->name}};
  Report rep;
  try {
    const Field* F = field_of(o);
    out["field"] = F->name();
    rep = chosen->run(o, F);
  } catch (const affc::ParseError& e) {
    rep.status = kError;
    rep.body["error"] = error_json("parse", e.what());
    rep.body["error"]["offset"] = e.offset;
    rep.lines = {e.what()};
  } catch (const affc::NotInvertible& e) {
    rep.status = kRejected;
    rep.body["rejected"] = e.what();
    rep.lines = {std::string("rejected: ") + e.what()};
  } catch (const affc::FieldExtensionNeeded& e) {
    rep.status = kError;
    rep.body["error"] = error_json("field-extension-needed", e.what());
    rep.body["error"]["minpoly"] = e.minpoly;
    rep.lines = {std::string("error: ") + e.what() + "; retry over a finite field with --char"};
  } catch (const affc::BudgetExceeded& e) {
    rep.status = kError;
    rep.body["error"] = error_json("budget", e.what());
    rep.lines = {std::string("error: ") + e.what()};
  } catch (const CLI::ValidationError& e) {
    rep.status = kError;
    rep.body["error"] = error_json("usage", e.what());
    rep.lines = {std::string("usage error: ") + e.what()};
  } catch (const std::exception& e) {
    rep.status = kError;
    rep.body["error"] = error_json("failure", e.what());
    rep.lines = {std::string("error: ") + e.what()};
  }
  for (auto& [k, v] : rep.body.items()) out[k] = v;
  out["exit"] = rep.status;
  if (o.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::ostream& s = rep.status == kError ? std::cerr : std::cout;
    for (const auto& l : rep.lines) s << l << "\n";
  }
  return rep.status;
}
