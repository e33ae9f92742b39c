#include "ellbun/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ellbun/bundle.hpp"
#include "ellbun/error.hpp"
#include "ellbun/expr.hpp"
#include "ellbun/generic_analyzer.hpp"
#include "ellbun/hom_ext.hpp"
#include "ellbun/quot_param.hpp"

namespace ellbun::cli {

namespace {

using nlohmann::json;
using Inputs = std::map<std::string, std::string>;

struct Context {
  Curve curve;
};

struct Outcome {
  json result;
  std::vector<std::string> diagnostics;
  std::vector<std::string> text;
  bool hypotheses_failed = false;
};

using Handler = std::function<Outcome(const Context&, const Inputs&)>;

struct OptionSpec {
  std::string flag;  // e.g. "--H"
  std::string help;
  bool required = true;
  std::string fallback;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<std::string> positionals;
  std::vector<OptionSpec> options;
  Handler handler;
};

// ---------------------------------------------------------------------------
// JSON encoders

json to_json(const Charge& c) { return json::array({c.rank, c.degree}); }

json to_json(const PicClass& L) { return {{"degree", L.degree}, {"point", to_string(L.aj)}}; }

json to_json(const HNType& t) {
  json v = json::array();
  for (const auto& c : t.vertices) v.push_back(to_json(c));
  return v;
}

json to_json(std::span<const Charge> type) {
  json v = json::array();
  for (const auto& c : type) v.push_back(to_json(c));
  return v;
}

json to_json(const StableClass& S) {
  return {{"class", render(S)}, {"charge", to_json(S.charge)}, {"det", to_json(S.det)}};
}

json points_json(std::span<const CurvePoint> pts) {
  json v = json::array();
  for (const auto& p : pts) v.push_back(to_string(p));
  return v;
}

std::string charge_text(const Charge& c) { return "(" + std::to_string(c.rank) + "," + std::to_string(c.degree) + ")"; }

std::string pic_text(const PicClass& L) { return "(" + std::to_string(L.degree) + ", " + to_string(L.aj) + ")"; }

std::string vertices_text(std::span<const Charge> vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + charge_text(vs[i]);
  return s + "]";
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

// ---------------------------------------------------------------------------
// Argument helpers

Int parse_int(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  Int v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::ParseError, "option " + name + ": expected an integer, got \"" + text + "\"");
  }
  return v;
}

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty() && text.find_first_not_of(" ") == std::string::npos) break;
    out.push_back(parse_int("profile", item));
  }
  return out;
}

Charge parse_charge(const std::string& text) {
  std::string t = text;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c) || c == '(' || c == ')'; }),
          t.end());
  const auto comma = t.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "expected a charge \"r,d\", got \"" + text + "\"");
  return {parse_int("rank", t.substr(0, comma)), parse_int("degree", t.substr(comma + 1))};
}

Bundle bundle_arg(const Context& ctx, const Inputs& in, const std::string& key) {
  return parse_bundle(ctx.curve, in.at(key));
}

Outcome single(json result, std::string text) {
  Outcome o;
  o.result = std::move(result);
  o.text.push_back(std::move(text));
  return o;
}

// ---------------------------------------------------------------------------
// Handlers

Outcome cmd_curve(const Context& ctx, const Inputs&) {
  const auto& cfg = ctx.curve.config();
  const auto tt = ctx.curve.two_torsion();
  Outcome o;
  o.result = {{"p", cfg.p}, {"a", cfg.a}, {"b", cfg.b}, {"order", ctx.curve.order()}, {"two_torsion", points_json(tt)}};
  o.text.push_back("y^2 = x^3 + " + std::to_string(cfg.a) + "x + " + std::to_string(cfg.b) + " over F_" + std::to_string(cfg.p));
  o.text.push_back("group order: " + std::to_string(ctx.curve.order()));
  o.text.push_back("2-torsion: " + std::to_string(tt.size()) + " point(s)");
  return o;
}

Outcome cmd_points(const Context& ctx, const Inputs&) {
  const auto& pts = ctx.curve.points();
  Outcome o;
  o.result = {{"count", pts.size()}, {"points", points_json(pts)}};
  for (const auto& p : pts) o.text.push_back(to_string(p));
  return o;
}

Outcome cmd_info(const Context& ctx, const Inputs& in) {
  const Bundle B = bundle_arg(ctx, in, "bundle");
  const Charge c = charge(B);
  const PicClass d = det(ctx.curve, B);
  Outcome o;
  json summands = json::array();
  for (const auto& s : B.summands()) summands.push_back({{"base", render(s.base)}, {"h", s.h}});
  o.result = {{"bundle", render(B)},
              {"charge", to_json(c)},
              {"rank", c.rank},
              {"degree", c.degree},
              {"slope", c.rank > 0 ? json(slope(c).str()) : json(nullptr)},
              {"chi", chi(B)},
              {"det", to_json(d)},
              {"length", length(B)},
              {"semistable", is_semistable(B)},
              {"stable", is_stable(B)},
              {"basic", is_basic(B)},
              {"summands", summands}};
  o.text.push_back("bundle:     " + render(B));
  o.text.push_back("charge:     " + charge_text(c));
  o.text.push_back("slope:      " + (c.rank > 0 ? slope(c).str() : std::string("undefined")));
  o.text.push_back("det:        " + pic_text(d));
  o.text.push_back("length:     " + std::to_string(length(B)));
  o.text.push_back(std::string("semistable: ") + (is_semistable(B) ? "yes" : "no") + ", stable: " +
                   (is_stable(B) ? "yes" : "no") + ", basic: " + (is_basic(B) ? "yes" : "no"));
  return o;
}

Outcome cmd_hn(const Context& ctx, const Inputs& in) {
  const Bundle B = bundle_arg(ctx, in, "bundle");
  const auto pieces = hn(B);
  const HNType t = hn_type(B);
  Outcome o;
  json jp = json::array();
  for (const auto& p : pieces) {
    jp.push_back({{"slope", p.slope.str()}, {"part", render(p.part)}});
    o.text.push_back("slope " + p.slope.str() + ": " + render(p.part));
  }
  o.result = {{"pieces", jp}, {"vertices", to_json(t)}, {"mu_max", mu_max(B).str()}, {"mu_min", mu_min(B).str()}};
  o.text.push_back("vertices: " + vertices_text(t.vertices));
  return o;
}

Outcome cmd_dual(const Context& ctx, const Inputs& in) {
  const Bundle B = dual(ctx.curve, bundle_arg(ctx, in, "bundle"));
  return single({{"bundle", render(B)}}, render(B));
}

Outcome cmd_gr(const Context& ctx, const Inputs& in) {
  const Bundle B = gr(bundle_arg(ctx, in, "bundle"));
  return single({{"bundle", render(B)}}, render(B));
}

Outcome cmd_tensor(const Context& ctx, const Inputs& in) {
  const PicClass L = parse_line_class(ctx.curve, in.at("line"));
  const Bundle B = tensor_line(ctx.curve, bundle_arg(ctx, in, "bundle"), L);
  return single({{"bundle", render(B)}}, render(B));
}

Outcome cmd_det(const Context& ctx, const Inputs& in) {
  const PicClass d = det(ctx.curve, bundle_arg(ctx, in, "bundle"));
  return single(to_json(d), pic_text(d));
}

Outcome cmd_compare(const Context& ctx, const Inputs& in) {
  const auto order = compare_hnp(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B"));
  return single({{"order", std::string(to_string(order))}}, std::string(to_string(order)));
}

Outcome cmd_euler(const Context& ctx, const Inputs& in) {
  const Int e = euler(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B"));
  return single({{"euler", e}}, std::to_string(e));
}

Outcome cmd_hom(const Context& ctx, const Inputs& in) {
  const Int h = homext(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B")).hom;
  return single({{"hom", h}}, std::to_string(h));
}

Outcome cmd_ext(const Context& ctx, const Inputs& in) {
  const Int e = homext(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B")).ext;
  return single({{"ext", e}}, std::to_string(e));
}

Outcome cmd_gamma(const Context& ctx, const Inputs& in) {
  const Int g = gamma_dim(bundle_arg(ctx, in, "bundle"));
  return single({{"gamma", g}}, std::to_string(g));
}

Outcome cmd_h1(const Context& ctx, const Inputs& in) {
  const Int h = h1_dim(bundle_arg(ctx, in, "bundle"));
  return single({{"h1", h}}, std::to_string(h));
}

Outcome cmd_end(const Context& ctx, const Inputs& in) {
  const Bundle B = bundle_arg(ctx, in, "bundle");
  const Int e = end_dim(B);
  Outcome o;
  o.result = {{"end", e}, {"aut", aut_dim(B)}, {"length", length(B)}, {"basic", is_basic(B)}};
  o.text.push_back(std::to_string(e));
  return o;
}

Outcome cmd_gg(const Context& ctx, const Inputs& in) {
  const bool g = is_globally_generated(bundle_arg(ctx, in, "bundle"));
  return single({{"globally_generated", g}}, g ? "true" : "false");
}

Outcome cmd_orth(const Context& ctx, const Inputs& in) {
  const bool g = orthogonal_gr(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B"));
  return single({{"orthogonal", g}}, g ? "true" : "false");
}

Outcome cmd_profile(const Context& ctx, const Inputs& in) {
  const StableClass S = parse_stable(ctx.curve, in.at("S"));
  const auto prof = hom_profile(S, bundle_arg(ctx, in, "F"), parse_int("--H", in.at("--H")));
  std::vector<std::string> parts;
  for (Int v : prof) parts.push_back(std::to_string(v));
  return single({{"profile", prof}}, join(parts, ","));
}

Outcome cmd_recover(const Context&, const Inputs& in) {
  const auto prof = parse_int_list(in.at("profile"));
  const auto mult = recover_multiplicities(prof);
  std::vector<std::string> parts;
  for (Int v : mult) parts.push_back(std::to_string(v));
  return single({{"multiplicities", mult}}, "{" + join(parts, ",") + "}");
}

Outcome cmd_deficiency(const Context&, const Inputs& in) {
  const Rational d = deficiency(parse_charge(in.at("src")), parse_charge(in.at("img")), parse_charge(in.at("tgt")));
  return single({{"deficiency", d.str()}}, d.str());
}

Outcome cmd_generic(const Context& ctx, const Inputs& in) {
  const Verdict v = analyze_generic(ctx.curve, bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B"));
  Outcome o;
  o.diagnostics = v.diagnostics;
  o.hypotheses_failed = v.kind == VerdictKind::HypothesesNotMet;
  json kc = nullptr;
  o.text.push_back("verdict: " + std::string(to_string(v.kind)));
  if (v.kc) {
    const auto& k = *v.kc;
    kc = {{"charge", to_json(k.charge)},
          {"det", to_json(k.det)},
          {"semistable_basic", k.semistable_basic},
          {"unique_stable", k.unique_stable ? json(render(*k.unique_stable)) : json(nullptr)},
          {"torsion_degree", k.torsion_degree ? json(*k.torsion_degree) : json(nullptr)}};
    const char* what = v.kind == VerdictKind::GenericEpi ? "kernel" : "cokernel";
    if (k.torsion_degree) {
      o.text.push_back(std::string(what) + ": torsion of degree " + std::to_string(*k.torsion_degree) +
                       ", det point " + to_string(k.det.aj));
    } else {
      o.text.push_back(std::string(what) + ": charge " + charge_text(k.charge) + ", det " + pic_text(k.det) +
                       (k.semistable_basic ? ", semistable basic" : ""));
      if (k.unique_stable) o.text.push_back("unique stable " + std::string(what) + ": " + render(*k.unique_stable));
    }
  }
  for (const auto& n : v.notes) o.text.push_back("hypothesis failed: " + n);
  o.result = {{"kind", std::string(to_string(v.kind))}, {"kc", kc}, {"notes", v.notes}};
  return o;
}

Outcome cmd_images(const Context& ctx, const Inputs& in) {
  const auto reps = enumerate_image_types(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B"));
  Outcome o;
  json arr = json::array();
  for (const auto& r : reps) {
    arr.push_back({{"type", to_json(r.type)},
                   {"total", to_json(r.total)},
                   {"deficiency", r.deficiency.str()},
                   {"mu_min_equals_source", r.mu_min_equals_source},
                   {"mu_max_equals_target", r.mu_max_equals_target},
                   {"is_tau_extr", r.is_tau_extr}});
    o.text.push_back(vertices_text(r.type) + "  deficiency " + r.deficiency.str() + (r.is_tau_extr ? "  [tau_extr]" : ""));
  }
  o.result = {{"reports", arr}, {"count", reps.size()}};
  return o;
}

Outcome cmd_tauextr(const Context& ctx, const Inputs& in) {
  const HNType t = tau_extr(bundle_arg(ctx, in, "A"), bundle_arg(ctx, in, "B"));
  return single({{"vertices", to_json(t)}}, vertices_text(t.vertices));
}

Outcome cmd_prescribed(const Context& ctx, const Inputs& in) {
  const std::string& dir = in.at("--direction");
  Direction direction;
  if (dir == "emb") {
    direction = Direction::EmbeddingsDense;
  } else if (dir == "epi") {
    direction = Direction::EpisDense;
  } else {
    throw Error(ErrorCode::ParseError, "--direction must be 'emb' or 'epi', got \"" + dir + "\"");
  }
  const auto rep = check_prescribed(ctx.curve, bundle_arg(ctx, in, "K"), bundle_arg(ctx, in, "E"),
                                    bundle_arg(ctx, in, "F"), direction);
  Outcome o;
  o.diagnostics = rep.failed;
  o.hypotheses_failed = !rep.ok;
  o.result = {{"ok", rep.ok}, {"failed", rep.failed}, {"statement", rep.statement}};
  if (rep.ok) {
    o.result["verdict"] = rep.verdict;
    o.result["hom_KE"] = rep.hom_KE;
    o.result["hom_EF"] = rep.hom_EF;
    o.text.push_back(rep.statement + ": " + rep.verdict);
    o.text.push_back("dim Hom(K,E) = " + std::to_string(rep.hom_KE) + ", dim Hom(E,F) = " + std::to_string(rep.hom_EF));
  } else {
    o.result["verdict"] = nullptr;
    o.text.push_back("hypotheses not met: " + join(rep.failed, ", "));
  }
  return o;
}

Outcome cmd_triple(const Context& ctx, const Inputs& in) {
  const std::array<Bundle, 3> terms = {bundle_arg(ctx, in, "E0"), bundle_arg(ctx, in, "E1"), bundle_arg(ctx, in, "E2")};
  const auto rep = check_triple(ctx.curve, terms, static_cast<int>(parse_int("--i0", in.at("--i0"))));
  Outcome o;
  o.diagnostics = rep.failed;
  o.hypotheses_failed = !rep.ok;
  o.result = {{"ok", rep.ok}, {"failed", rep.failed}, {"homs", rep.homs}, {"third_index", rep.third_index}};
  if (rep.ok) {
    o.result["third_gcd"] = rep.third_gcd;
    o.result["third_stable"] = rep.third_stable;
    o.text.push_back("E" + std::to_string(rep.third_index) + " is stable; cyclic homs all 1");
  } else {
    o.text.push_back("hypotheses not met: " + join(rep.failed, ", "));
  }
  return o;
}

Outcome cmd_quot31(const Context& ctx, const Inputs& in) {
  const Bundle E = bundle_arg(ctx, in, "E");
  const QuotDatum q = pair_to_quot31(ctx.curve, E, parse_pair(ctx.curve, in.at("--pair")));
  const bool additive = ctx.curve.pic_add(det(ctx.curve, q.kernel), q.quotient) == det(ctx.curve, E);
  Outcome o;
  o.result = {{"kernel", render(q.kernel)},
              {"quotient", to_json(q.quotient)},
              {"kernel_basic", is_basic(q.kernel)},
              {"det_additive", additive}};
  o.text.push_back("kernel:   " + render(q.kernel));
  o.text.push_back("quotient: " + render(StableClass{{1, 1}, q.quotient}));
  return o;
}

Outcome cmd_quot31_fiber(const Context& ctx, const Inputs& in) {
  const Bundle E = bundle_arg(ctx, in, "E");
  const CurvePoint q = parse_point(ctx.curve, in.at("--q"));
  const auto pairs = fiber31(ctx.curve, E, q);
  const CurvePoint c = ctx.curve.sub(E.summands().front().base.det.aj, q);
  Outcome o;
  json arr = json::array();
  json diag = json::array();
  for (const auto& p : pairs) {
    arr.push_back(json::array({to_string(p.first()), to_string(p.second())}));
    if (p.diagonal()) diag.push_back(to_string(p.first()));
    o.text.push_back("{" + to_string(p.first()) + ", " + to_string(p.second()) + "}");
  }
  o.result = {{"c", to_string(c)}, {"size", pairs.size()}, {"pairs", arr}, {"diagonal", diag}};
  o.text.push_back(std::to_string(pairs.size()) + " pair(s), " + std::to_string(diag.size()) + " diagonal");
  return o;
}

Outcome cmd_twist(const Context& ctx, const Inputs& in) {
  const StableClass S = parse_stable(ctx.curve, in.at("S"));
  const StableClass M = twist_middle(ctx.curve, S, parse_point(ctx.curve, in.at("--pt")));
  Outcome o;
  o.result = to_json(M);
  o.result["hom_S_middle"] = homext(Bundle(S), Bundle(M)).hom;
  o.text.push_back(render(M));
  return o;
}

std::vector<CommandSpec> command_table() {
  return {
      {"curve", "Validate the curve and print its group order", {}, {}, cmd_curve},
      {"points", "List the points of the curve group", {}, {}, cmd_points},
      {"info", "Charge, slope, determinant and stability data of a bundle", {"bundle"}, {}, cmd_info},
      {"hn", "Harder-Narasimhan splitting and polygon vertices", {"bundle"}, {}, cmd_hn},
      {"dual", "Dual bundle", {"bundle"}, {}, cmd_dual},
      {"gr", "Generalized associated graded", {"bundle"}, {}, cmd_gr},
      {"tensor", "Twist a bundle by a line bundle \"(e;PT)\" or \"L(e;PT)\"", {"bundle", "line"}, {}, cmd_tensor},
      {"det", "Determinant (degree, Abel-Jacobi point)", {"bundle"}, {}, cmd_det},
      {"compare", "Shatz order of the HN polygons of A and B", {"A", "B"}, {}, cmd_compare},
      {"euler", "Euler pairing <A -> B>", {"A", "B"}, {}, cmd_euler},
      {"hom", "dim Hom(A, B)", {"A", "B"}, {}, cmd_hom},
      {"ext", "dim Ext^1(A, B)", {"A", "B"}, {}, cmd_ext},
      {"gamma", "dim of the space of global sections", {"bundle"}, {}, cmd_gamma},
      {"h1", "dim H^1", {"bundle"}, {}, cmd_h1},
      {"end", "dim End (= dim Aut)", {"bundle"}, {}, cmd_end},
      {"gg", "Global generation of a semistable bundle", {"bundle"}, {}, cmd_gg},
      {"orth", "Whether gr(A) and gr(B) share no stable class", {"A", "B"}, {}, cmd_orth},
      {"profile", "hom(_hS, F) for h = 1..H", {"S", "F"}, {{"--H", "window length", true, ""}}, cmd_profile},
      {"recover", "Self-extension lengths from a comma-separated hom profile", {"profile"}, {}, cmd_recover},
      {"deficiency", "Image-stratum deficiency for charges \"r,d\"", {"src", "img", "tgt"}, {}, cmd_deficiency},
      {"generic", "Classify the generic morphism A -> B", {"A", "B"}, {}, cmd_generic},
      {"images", "Candidate image types of morphisms A -> B with deficiencies", {"A", "B"}, {}, cmd_images},
      {"tauextr", "HN type of the generic image of A -> B", {"A", "B"}, {}, cmd_tauextr},
      {"thm-prescribed", "Check hypotheses for prescribed extensions 0 -> K -> E -> F -> 0", {"K", "E", "F"},
       {{"--direction", "emb | epi", true, ""}}, cmd_prescribed},
      {"thm-triple", "Stability transfer along E0 -> E1 -> E2", {"E0", "E1", "E2"},
       {{"--i0", "index of the first stable term (mod 3)", true, ""}}, cmd_triple},
      {"quot31", "Quotient of a charge-(3,1) stable bundle attached to a point pair", {"E"},
       {{"--pair", "\"PT,PT\"", true, ""}}, cmd_quot31},
      {"quot31-fiber", "Point pairs whose quotient is the degree-1 line bundle at q", {"E"},
       {{"--q", "point", true, ""}}, cmd_quot31_fiber},
      {"twist", "Stable middle term of the universal extension of O_pt by S", {"S"},
       {{"--pt", "point", true, ""}}, cmd_twist},
  };
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kExitParse;
    case ErrorCode::HypothesesNotMet: return kExitHypotheses;
    default: return kExitDomain;
  }
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// Scenario runner

struct ScenarioResult {
  std::string name;
  bool pass = false;
  std::string reason;
};

/// Every key of `expect` must be present in `actual` with a matching value;
/// arrays must match elementwise; scalars must be equal.
bool subset_match(const json& expect, const json& actual, const std::string& path, std::string& why) {
  if (expect.is_object()) {
    if (!actual.is_object()) {
      why = path + ": expected an object";
      return false;
    }
    for (const auto& [k, v] : expect.items()) {
      if (!actual.contains(k)) {
        why = path + "." + k + ": missing";
        return false;
      }
      if (!subset_match(v, actual.at(k), path + "." + k, why)) return false;
    }
    return true;
  }
  if (expect.is_array()) {
    if (!actual.is_array() || actual.size() != expect.size()) {
      why = path + ": expected " + expect.dump() + ", got " + actual.dump();
      return false;
    }
    for (std::size_t i = 0; i < expect.size(); ++i) {
      if (!subset_match(expect[i], actual[i], path + "[" + std::to_string(i) + "]", why)) return false;
    }
    return true;
  }
  if (expect != actual) {
    why = path + ": expected " + expect.dump() + ", got " + actual.dump();
    return false;
  }
  return true;
}

std::string curve_arg(const json& rec, std::size_t index) {
  if (!rec.contains("curve")) return "";
  const json& c = rec.at("curve");
  if (c.is_string()) return c.get<std::string>();
  if (c.is_object() && c.contains("p") && c.contains("a") && c.contains("b") && c.at("p").is_number_integer() &&
      c.at("a").is_number_integer() && c.at("b").is_number_integer()) {
    return std::to_string(c.at("p").get<Int>()) + "," + std::to_string(c.at("a").get<Int>()) + "," +
           std::to_string(c.at("b").get<Int>());
  }
  throw Error(ErrorCode::BadScenarioFile, "scenario " + std::to_string(index) + ": 'curve' must be \"p,a,b\" or {p,a,b}");
}

std::vector<ScenarioResult> execute_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadScenarioFile, "cannot open scenario file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadScenarioFile, "scenario file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::BadScenarioFile, "scenario file must hold a JSON array");

  // Validate everything before running anything.
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    const std::string where = "scenario " + std::to_string(i);
    if (!rec.is_object()) throw Error(ErrorCode::BadScenarioFile, where + ": not an object");
    if (!rec.contains("name") || !rec.at("name").is_string()) {
      throw Error(ErrorCode::BadScenarioFile, where + ": 'name' must be a string");
    }
    if (!rec.contains("command") || !rec.at("command").is_string()) {
      throw Error(ErrorCode::BadScenarioFile, where + ": 'command' must be a string");
    }
    if (rec.contains("args")) {
      const json& a = rec.at("args");
      if (!a.is_array() || !std::all_of(a.begin(), a.end(), [](const json& x) { return x.is_string(); })) {
        throw Error(ErrorCode::BadScenarioFile, where + ": 'args' must be an array of strings");
      }
    }
    if (!rec.contains("expect") || !rec.at("expect").is_object()) {
      throw Error(ErrorCode::BadScenarioFile, where + ": 'expect' must be an object");
    }
    const json& ex = rec.at("expect");
    if (ex.contains("exit_code") && !ex.at("exit_code").is_number_integer()) {
      throw Error(ErrorCode::BadScenarioFile, where + ": 'expect.exit_code' must be an integer");
    }
    curve_arg(rec, i);
  }

  std::vector<ScenarioResult> results;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& rec = doc[i];
    ScenarioResult r;
    r.name = rec.at("name").get<std::string>();
    std::vector<std::string> argv{rec.at("command").get<std::string>()};
    if (rec.contains("args")) {
      for (const auto& a : rec.at("args")) argv.push_back(a.get<std::string>());
    }
    argv.push_back("--json");
    const std::string curve = curve_arg(rec, i);
    if (!curve.empty()) {
      argv.push_back("--curve");
      argv.push_back(curve);
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(argv, out, err, std::nullopt);

    json expect = rec.at("expect");
    const int want_code = expect.contains("exit_code") ? expect.at("exit_code").get<int>() : kExitOk;
    expect.erase("exit_code");
    if (code != want_code) {
      r.reason = "exit code " + std::to_string(code) + ", expected " + std::to_string(want_code);
    } else {
      json actual;
      try {
        actual = json::parse(out.str());
      } catch (const json::exception&) {
        r.reason = "command output is not JSON";
      }
      if (r.reason.empty()) r.pass = subset_match(expect, actual, "$", r.reason);
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace

int run_suite(const std::string& path, std::ostream& out) {
  const auto results = execute_suite(path);
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << (r.pass ? "PASS  " : "FAIL  ") << r.name;
    if (!r.pass) out << "  (" << r.reason << ")";
    out << '\n';
    if (r.pass) ++passed;
  }
  out << results.size() << " scenarios, " << passed << " passed, " << (results.size() - passed) << " failed\n";
  return passed == results.size() ? kExitOk : kExitSuiteFailed;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::optional<std::string>& env_curve) {
  CLI::App app{"Invariant calculus for vector bundles on an elliptic curve", "ellbun"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string curve_flag;
  std::string suite_path;
  bool as_json = false;
  app.add_option("--curve", curve_flag, "Curve as p,a,b (default 101,1,1; env ELLBUN_CURVE)");
  app.add_flag("--json", as_json, "Render {command, inputs, result, diagnostics} as JSON");
  app.add_option("--suite", suite_path, "Run a JSON scenario file");

  const auto table = command_table();
  std::map<std::string, Inputs> values;
  std::vector<std::pair<CLI::App*, const CommandSpec*>> subs;
  for (const auto& spec : table) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    Inputs& store = values[spec.name];
    for (const auto& pos : spec.positionals) sub->add_option(pos, store[pos], pos)->required();
    for (const auto& opt : spec.options) {
      store[opt.flag] = opt.fallback;
      auto* o = sub->add_option(opt.flag, store[opt.flag], opt.help);
      if (opt.required) o->required();
    }
    subs.emplace_back(sub, &spec);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  const CommandSpec* chosen = nullptr;
  for (const auto& [sub, spec] : subs) {
    if (sub->parsed()) chosen = spec;
  }
  const std::string name = chosen ? chosen->name : (suite_path.empty() ? "" : "suite");
  json inputs = json::object();
  if (chosen) inputs = values.at(chosen->name);
  if (!suite_path.empty()) inputs["suite"] = suite_path;

  auto fail = [&](ErrorCode code, const std::string& msg) {
    if (as_json) {
      emit(out, {{"command", name},
                 {"inputs", inputs},
                 {"result", nullptr},
                 {"error", {{"code", std::string(to_string(code))}, {"message", msg}}},
                 {"diagnostics", json::array()}});
    } else {
      err << "error [" << to_string(code) << "]: " << msg << '\n';
    }
    return exit_code_for(code);
  };

  try {
    CurveConfig cfg;
    if (!curve_flag.empty()) {
      cfg = parse_curve_config(curve_flag);
    } else if (env_curve && !env_curve->empty()) {
      cfg = parse_curve_config(*env_curve);
    }
    const Context ctx{Curve(cfg)};

    if (!suite_path.empty() && !chosen) {
      if (!as_json) return run_suite(suite_path, out);
      const auto results = execute_suite(suite_path);
      json rows = json::array();
      std::size_t passed = 0;
      for (const auto& r : results) {
        rows.push_back({{"name", r.name}, {"pass", r.pass}, {"reason", r.reason}});
        passed += r.pass ? 1 : 0;
      }
      emit(out, {{"command", "suite"},
                 {"inputs", inputs},
                 {"result", {{"total", results.size()}, {"passed", passed}, {"failed", results.size() - passed}, {"scenarios", rows}}},
                 {"diagnostics", json::array()}});
      return passed == results.size() ? kExitOk : kExitSuiteFailed;
    }
    if (!chosen) {
      err << app.help();
      return kExitParse;
    }

    const Outcome o = chosen->handler(ctx, values.at(chosen->name));
    if (as_json) {
      emit(out, {{"command", name}, {"inputs", inputs}, {"result", o.result}, {"diagnostics", o.diagnostics}});
    } else {
      for (const auto& line : o.text) out << line << '\n';
    }
    return o.hypotheses_failed ? kExitHypotheses : kExitOk;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  }
}

}  // namespace ellbun::cli
