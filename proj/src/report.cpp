#include "shiftlab/report.hpp"

#include "shiftlab/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace shiftlab {

const std::vector<std::string>& known_analyses() {
  static const std::vector<std::string> names = {"attainment", "bound",    "classify", "decompose",    "functional-sweep",
                                                 "norm",       "probe",    "quasi-matrix", "spectrum", "validate"};
  return names;
}

std::int64_t horizon_from_env() {
  const char* env = std::getenv("SHIFTLAB_HORIZON");
  if (!env || !*env) return kDefaultHorizon;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (*end != '\0' || v < 1) throw std::invalid_argument("SHIFTLAB_HORIZON must be a positive integer");
  return v;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json opt_vertex(const std::optional<VertexId>& v) { return v ? Json(v->str()) : Json(nullptr); }
Json rat(const Rational& r) { return to_string(r); }
Json opt_rat(const std::optional<Rational>& r) { return r ? rat(*r) : Json(nullptr); }

Json vertex_list(const std::vector<VertexId>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.str());
  return out;
}

}  // namespace

Json to_json(const FinVector& f) {
  Json out = Json::array();
  for (const auto& [v, c] : f.coefficients()) out.push_back({{"vertex", v.str()}, {"coeff", rat(c)}});
  return out;
}

Json to_json(const SupResult& r) {
  Json tails = Json::array();
  for (const auto& t : r.tail_evidence) {
    Json e = {{"ray", t.ray_id},
              {"behavior", to_string(t.behavior)},
              {"first_index", t.first_index},
              {"limit", rat(t.limit)}};
    if (t.behavior == TailBehavior::HorizonScan) e["horizon"] = t.horizon;
    tails.push_back(e);
  }
  return {{"value_sq", rat(r.value_sq)}, {"attained", r.attained}, {"witness", opt_vertex(r.witness)},
          {"tail_evidence", tails}};
}

Json to_json(const ClassReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.fail_witnesses) {
    witnesses.push_back({{"vertex", w.vertex.str()}, {"lhs", rat(w.lhs)}, {"rhs", rat(w.rhs)}});
  }
  Json tails = Json::array();
  for (const auto& t : r.tail_status) {
    Json e = {{"ray", t.ray_id}, {"status", to_string(t.status)}, {"limit_holds", t.limit_holds}};
    if (t.status == TailStatus::VerifiedToHorizonPlusLimit) e["horizon"] = t.horizon;
    tails.push_back(e);
  }
  return {{"class", r.class_name},
          {"scope", r.scope},
          {"verdict", to_string(r.verdict)},
          {"fail_witnesses", witnesses},
          {"tail_status", tails}};
}

Json to_json(const SpectrumReport& r) {
  Json eig = Json::array();
  for (const auto& e : r.eigenvalues) {
    eig.push_back({{"value", rat(e.value)},
                   {"multiplicity", e.multiplicity ? Json(*e.multiplicity) : Json("INFINITE")}});
  }
  Json fams = Json::array();
  for (const auto& f : r.families) {
    fams.push_back({{"ray", f.ray_id},
                    {"first_index", f.first_index},
                    {"first_value", rat(f.first_value)},
                    {"limit", rat(f.limit)},
                    {"direction", to_string(f.direction)}});
  }
  Json acc = Json::array();
  for (const auto& a : r.accumulation_points) {
    acc.push_back({{"value", rat(a.value)}, {"approach", to_string(a.approach)}, {"ray", a.ray_id}});
  }
  Json ess = Json::array();
  for (const auto& x : r.sigma_ess) ess.push_back(rat(x));
  return {{"eigenvalues", eig},
          {"monotone_families", fams},
          {"accumulation_points", acc},
          {"sigma_ess", ess},
          {"m_e", opt_rat(r.m_e)},
          {"m", opt_rat(r.m)},
          {"m_attained", r.m_attained},
          {"norm", rat(r.norm)},
          {"norm_attained", r.norm_attained}};
}

Json to_json(const ProbeReport& r) {
  Json firsts = Json::array();
  for (const auto& v : r.first_values) firsts.push_back(rat(v));
  return {{"applicable", true},
          {"family", r.family},
          {"ray_low", r.ray_low},
          {"ray_high", r.ray_high},
          {"a", rat(r.a)},
          {"b", rat(r.b)},
          {"restriction_sup_sq", rat(r.restriction_sup_sq)},
          {"attained", r.attained},
          {"witness_j", r.witness_j ? Json(*r.witness_j) : Json(nullptr)},
          {"verified_terms", r.verified_terms},
          {"strictly_increasing", r.strictly_increasing},
          {"below_limit", r.below_limit},
          {"first_values", firsts},
          {"restriction_norm_attaining", r.attained}};
}

namespace {

Json to_json(const AttainmentReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.corollary_checks) {
    checks.push_back({{"name", c.name}, {"holds", c.holds}, {"witness", opt_vertex(c.witness)}});
  }
  Json out = {{"power", r.power},
              {"norm_sq_of_power", to_json(r.norm_sq_of_power)},
              {"norm_sq", rat(r.norm_sq)},
              {"attaining_vertices", vertex_list(r.attaining_vertices)},
              {"corollary_checks", checks}};
  if (r.power == 1) out["adjoint_witness"] = r.adjoint_witness ? to_json(*r.adjoint_witness) : Json(nullptr);
  return out;
}

Json to_json(const SweepResult& s) {
  Json out = {{"kind", to_string(s.kind)},
              {"direction", to_string(s.direction)},
              {"trials_run", s.trials_run},
              {"passed", s.passed}};
  if (!s.passed) {
    out["violation_trial"] = *s.violation_trial;
    out["violation"] = to_json(*s.violation);
    out["lhs_sq"] = rat(s.violation_check->lhs_sq);
    out["rhs_sq"] = rat(s.violation_check->rhs_sq);
  }
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const QuasiMatrixResult& r) {
  Json out = {{"verdict", r.pass ? "PASS" : "FAIL"},
              {"label", r.label},
              {"min_gap", r.min_gap},
              {"min_pencil_eigenvalue", r.min_pencil_eigenvalue},
              {"vectors_probed", r.vectors_probed},
              {"pencil_consistent", r.pencil_consistent}};
  if (r.witness) {
    out["witness"] = vector_json(*r.witness);
    out["witness_lhs"] = r.witness_lhs;
    out["witness_rhs"] = r.witness_rhs;
  }
  return out;
}

Json to_json(const InvarianceReport& r) {
  return {{"t_defect", r.t_defect},       {"tstar_defect", r.tstar_defect}, {"t_invariant", r.t_invariant},
          {"tstar_invariant", r.tstar_invariant}, {"reducing", r.reducing},         {"ratio_spread", r.ratio_spread},
          {"ratio_max", r.ratio_max}};
}

Json matrix_rows(const Matrix& m) { return matrix_to_json(m)["rows"]; }

Json to_json(const Residual& r) {
  return {{"norm", r.norm},          {"dim_m", r.basis_m.cols()}, {"U", matrix_rows(r.U)},
          {"A", matrix_rows(r.A)},   {"B", matrix_rows(r.B)},     {"C", matrix_rows(r.C)}};
}

Json to_json(const BlockForm& f) {
  Json blocks = Json::array();
  for (const auto& b : f.blocks) {
    blocks.push_back({{"alpha", b.alpha}, {"dim", b.basis.cols()}, {"U", matrix_rows(b.U)}});
  }
  Json out = {{"blocks", blocks},
              {"reassembly_error", f.reassembly_error},
              {"max_unitary_defect", f.max_unitary_defect},
              {"complete", !f.residual}};
  if (f.residual) {
    out["residual"] = to_json(*f.residual);
    out["stopped_at_stage"] = *f.stopped_at_stage;
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Context {
  const AnalysisRequest& request;
  std::optional<ValidatedTree> tree;
  std::optional<DenseMatrix> matrix;
  std::string fixture_name;
  Json analyses = Json::object();
  std::vector<Flag> flags;
  std::vector<std::string> human;

  void expect(const std::string& analysis, const std::string& expectation, bool holds, const std::string& observed) {
    flags.push_back({analysis, expectation, observed, !holds});
  }
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void run_validate(Context& c) {
  if (c.tree) {
    std::vector<std::string> rays;
    for (const auto& r : c.tree->rays()) rays.push_back(r.id);
    c.analyses["validate"] = {{"kind", "tree"},
                              {"valid", true},
                              {"root", c.tree->root().str()},
                              {"core_vertices", c.tree->core_size()},
                              {"rays", rays},
                              {"finite", c.tree->is_finite()}};
    c.human.push_back("validate: tree with " + std::to_string(c.tree->core_size()) + " core vertices and " +
                      std::to_string(rays.size()) + " rays");
  } else {
    c.analyses["validate"] = {{"kind", "matrix"}, {"valid", true}, {"n", c.matrix->n()}};
    c.human.push_back("validate: " + std::to_string(c.matrix->n()) + "x" + std::to_string(c.matrix->n()) +
                      " matrix");
  }
}

void run_norm(Context& c) {
  Json out;
  for (int n = 1; n <= 3; ++n) out["power_" + std::to_string(n)] = to_json(operator_norm_sq(*c.tree, n));
  c.analyses["norm"] = out;
  const auto& p1 = out["power_1"];
  c.human.push_back("norm: ‖S‖² = " + p1["value_sq"].get<std::string>() +
                    (p1["attained"].get<bool>() ? " attained at " + p1["witness"].get<std::string>()
                                                : " not attained"));
}

void run_attainment(Context& c) {
  const auto a1 = norm_attainment(*c.tree);
  const auto a2 = power_attainment(*c.tree, 2);
  const auto a3 = power_attainment(*c.tree, 3);
  Json limits = Json::array();
  bool falsified = false;
  for (const auto& l : weight_limit_classify(*c.tree)) {
    limits.push_back({{"ray", l.ray_id},
                      {"limit", rat(l.limit)},
                      {"direction", to_string(l.direction)},
                      {"outcome", to_string(l.outcome)},
                      {"larger_weight_at", opt_vertex(l.larger_weight_at)}});
    falsified = falsified || contradicts_dichotomy(l.outcome);
  }
  c.analyses["attainment"] = {
      {"norm", to_json(a1)}, {"power_2", to_json(a2)}, {"power_3", to_json(a3)}, {"weight_limits", limits}};
  std::string observed;
  for (const auto& l : limits) {
    observed += (observed.empty() ? "" : ", ") + l["ray"].get<std::string>() + " " + l["outcome"].get<std::string>();
  }
  c.expect("attainment",
           "a norm-attaining shift whose weights converge to λ has a decreasing approach or a weight > λ", !falsified,
           observed.empty() ? "no rays" : observed);
  c.human.push_back("attainment: S " + std::string(a1.norm_sq_of_power.attained ? "attains" : "does not attain") +
                    " its norm; S² attained: " + yes_no(a2.norm_sq_of_power.attained) +
                    "; S³ attained: " + yes_no(a3.norm_sq_of_power.attained));
}

void run_classify(Context& c) {
  const auto h = hyponormal_basis_test(*c.tree, c.request.horizon);
  const auto s = star_paranormal_vertex_test(*c.tree, c.request.horizon);
  const auto q = quasi_star_vertex_test(*c.tree, c.request.horizon);
  const auto hier = hierarchy_spot_check(*c.tree, c.request.horizon);
  Json flagged = Json::array();
  for (const auto& w : hier.flagged) {
    flagged.push_back({{"vertex", w.vertex.str()}, {"lhs", rat(w.lhs)}, {"rhs", rat(w.rhs)}});
  }
  c.analyses["classify"] = {{"hyponormal", to_json(h)},
                            {"star_paranormal", to_json(s)},
                            {"quasi_star_paranormal", to_json(q)},
                            {"hierarchy", {{"hyponormal_basis_pass", hier.hyponormal_basis_pass}, {"flagged", flagged}}}};
  auto line = [](const ClassReport& r) {
    std::string out = r.class_name + " " + to_string(r.verdict) + " (" + r.scope + ")";
    if (!r.fail_witnesses.empty()) {
      const auto& w = r.fail_witnesses.front();
      out += " at " + w.vertex.str() + ": " + to_string(w.lhs) + " > " + to_string(w.rhs);
    }
    return out;
  };
  c.human.push_back("classify: " + line(h));
  c.human.push_back("classify: " + line(s));
  c.human.push_back("classify: " + line(q));

  if (q.verdict == Verdict::PassAll) {
    const auto a3 = power_attainment(*c.tree, 3);
    const bool attained = operator_norm_sq(*c.tree, 1).attained;
    const bool cube = a3.corollary_checks.back().holds;
    c.expect("classify", "quasi-*-paranormal and norm attaining implies ‖S³e_v‖ = ‖S‖³ at some vertex",
             !attained || cube, attained ? (cube ? "holds" : "no such vertex") : "S not norm attaining");
  }
}

void run_sweep(Context& c) {
  Json out = Json::array();
  for (auto kind : {InequalityKind::StarParanormalDef, InequalityKind::QuasiDef}) {
    for (auto dir : {Direction::Forward, Direction::Adjoint}) {
      const auto s = random_functional_sweep(*c.tree, kind, dir, c.request.trials, c.request.seed);
      out.push_back(to_json(s));
      std::string line = "functional-sweep: " + to_string(kind) + " " + to_string(dir) + " ";
      if (s.passed) {
        line += "PASS (" + std::to_string(s.trials_run) + " trials)";
      } else {
        line += "violation at " + to_json(*s.violation).dump() + ": " + to_string(s.violation_check->lhs_sq) +
                " > " + to_string(s.violation_check->rhs_sq);
      }
      c.human.push_back(line);
    }
  }
  c.analyses["functional-sweep"] = out;
}

void run_bound(Context& c) {
  Json out;
  for (auto mode : {BoundMode::StarParanormal, BoundMode::QuasiFirst, BoundMode::QuasiSecond}) {
    out[to_string(mode)] = to_json(densely_defined_bound(*c.tree, mode, c.request.horizon));
  }
  c.analyses["bound"] = out;
  c.human.push_back("bound: star_paranormal sup = " + out["star_paranormal"]["value_sq"].get<std::string>());
}

void run_spectrum(Context& c) {
  const auto s = diag_spectrum(*c.tree);
  c.analyses["spectrum"] = to_json(s);
  std::string ess;
  for (const auto& x : s.sigma_ess) ess += (ess.empty() ? "" : ", ") + to_string(x);
  c.human.push_back("spectrum: sigma_ess = {" + ess + "}, ‖N‖ = " + to_string(s.norm) +
                    ", m = " + (s.m ? to_string(*s.m) : std::string("n/a")));
}

void run_probe(Context& c) {
  try {
    const auto p = an_restriction_probe(*c.tree);
    c.analyses["probe"] = to_json(p);
    c.human.push_back("probe: " + p.family + " restriction sup² = " + to_string(p.restriction_sup_sq) +
                      (p.attained ? " attained" : " NOT attained"));
  } catch (const ProbeError& e) {
    c.analyses["probe"] = {{"applicable", false}, {"reason", e.what()}};
    c.human.push_back("probe: not applicable");
  }
}

std::optional<DenseMatrix> matrix_for(Context& c, const std::string& analysis) {
  if (c.matrix) return c.matrix;
  if (c.tree->is_finite()) return shift_matrix(*c.tree);
  c.analyses[analysis] = {{"applicable", false}, {"reason", "tree has infinite rays"}};
  c.human.push_back(analysis + ": not applicable (infinite tree)");
  return std::nullopt;
}

QuasiBudget budget_for(const AnalysisRequest& r) {
  QuasiBudget b;
  b.seed = r.seed;
  return b;
}

void run_quasi_matrix(Context& c) {
  const auto m = matrix_for(c, "quasi-matrix");
  if (!m) return;
  const auto fwd = quasi_star_matrix_test(*m, budget_for(c.request));
  const auto adj = quasi_star_matrix_test(DenseMatrix(m->data().transpose()), budget_for(c.request));
  c.analyses["quasi-matrix"] = {{"T", to_json(fwd)}, {"T_star", to_json(adj)}};
  c.human.push_back("quasi-matrix: T " + std::string(fwd.pass ? "PASS" : "FAIL") + ", T* " +
                    (adj.pass ? "PASS" : "FAIL") + " (sampled verification)");
}

void run_decompose(Context& c) {
  const auto m = matrix_for(c, "decompose");
  if (!m) return;
  Json out;
  const auto quasi = quasi_star_matrix_test(*m, budget_for(c.request));
  const auto normal = normality_check(*m);
  out["normality"] = {{"normal", normal.normal},
                      {"defect", normal.defect},
                      {"invertible", normal.invertible},
                      {"smallest_singular_value", normal.smallest_singular_value}};
  if (m->norm() == 0) {
    out["zero_operator"] = true;
    c.analyses["decompose"] = out;
    c.human.push_back("decompose: T = 0");
    return;
  }
  const auto M = norm_space(*m, NormSide::M);
  const auto Mstar = norm_space(*m, NormSide::MStar);
  const auto invM = invariance_reducing_check(*m, M);
  const auto invMstar = invariance_reducing_check(*m, Mstar);
  const double contain = containment_defect(Mstar, M);
  const auto block = block_decompose(*m, budget_for(c.request));
  const auto peel = peel_decomposition(*m);
  out["hypothesis"] = quasi.pass ? "quasi-*-paranormal (sampled)" : "fails: not quasi-*-paranormal";
  out["M"] = {{"dim", M.dim()}, {"invariance", to_json(invM)}};
  out["M_star"] = {{"dim", Mstar.dim()}, {"invariance", to_json(invMstar)}, {"containment_defect", contain}};
  out["block"] = {{"blocks", to_json(block.blocks)},
                  {"vacuous", block.check.vacuous},
                  {"u_isometry_defect", block.check.u_isometry_defect},
                  {"lower_left_norm", block.check.lower_left_norm},
                  {"ustar_a_norm", block.check.ustar_a_norm},
                  {"b_norm", block.check.b_norm},
                  {"b_norm_flagged", block.check.b_norm_flagged}};
  out["peel"] = to_json(peel);
  c.analyses["decompose"] = out;

  if (quasi.pass) {
    c.expect("decompose", "quasi-*-paranormal implies M is invariant", invM.t_invariant,
             "defect " + std::to_string(invM.t_defect));
    c.expect("decompose", "quasi-*-paranormal implies M_* ⊆ M", contain <= kStructuralTol * std::max(1.0, m->norm()),
             "defect " + std::to_string(contain));
    if (normal.invertible) {
      c.expect("decompose", "invertible quasi-*-paranormal implies normal", normal.normal,
               "defect " + std::to_string(normal.defect));
    }
  }
  std::string line = "decompose: M dim " + std::to_string(M.dim()) + (invM.t_invariant ? " invariant" : " NOT invariant");
  if (!quasi.pass) line += " (hypothesis fails, no theorem applies)";
  line += "; peel " + std::string(peel.residual ? "stopped with residual" : "complete") + ", " +
          std::to_string(peel.blocks.size()) + " blocks";
  c.human.push_back(line);
}

// Expectations registered for the built-in corpus.
void fixture_expectations(Context& c) {
  const auto& a = c.analyses;
  auto has = [&](const char* k) { return a.contains(k); };
  auto verdict = [&](const char* cls) { return a["classify"][cls]["verdict"].get<std::string>(); };
  auto sweep = [&](const char* kind, const char* dir) -> Json {
    for (const auto& s : a["functional-sweep"]) {
      if (s["kind"] == kind && s["direction"] == dir) return s;
    }
    return Json();
  };
  auto sigma_is_1_2 = [&]() { return a["spectrum"]["sigma_ess"] == Json::array({"1", "2"}); };
  const auto& f = c.fixture_name;

  if (f == "A") {
    if (has("classify")) {
      c.expect("classify", "not hyponormal", verdict("hyponormal") == "FAIL", verdict("hyponormal"));
      c.expect("classify", "*-paranormal vertex criterion holds", verdict("star_paranormal") == "PASS_ALL",
               verdict("star_paranormal"));
    }
    if (has("attainment")) {
      const bool att = a["attainment"]["norm"]["norm_sq_of_power"]["attained"];
      c.expect("attainment", "norm attaining", att, att ? "attained" : "not attained");
    }
    if (has("functional-sweep")) {
      const bool p = sweep("star_paranormal_def", "forward")["passed"];
      c.expect("functional-sweep", "*-paranormal", p, p ? "no violation" : "violation");
    }
  } else if (f == "B") {
    if (has("classify")) {
      c.expect("classify", "quasi-*-paranormal", verdict("quasi_star_paranormal") == "PASS_ALL",
               verdict("quasi_star_paranormal"));
    }
    if (has("functional-sweep")) {
      const bool p = sweep("quasi_def", "forward")["passed"];
      c.expect("functional-sweep", "quasi-*-paranormal", p, p ? "no violation" : "violation");
    }
  } else if (f == "C") {
    if (has("attainment")) {
      const bool att = a["attainment"]["norm"]["norm_sq_of_power"]["attained"];
      const bool att2 = a["attainment"]["power_2"]["norm_sq_of_power"]["attained"];
      c.expect("attainment", "norm attaining", att, att ? "attained" : "not attained");
      c.expect("attainment", "square not norm attaining", !att2, att2 ? "attained" : "not attained");
    }
    if (has("functional-sweep")) {
      const bool p = sweep("quasi_def", "adjoint")["passed"];
      c.expect("functional-sweep", "adjoint not quasi-*-paranormal", !p, p ? "no violation" : "violation");
    }
  } else if (f == "D" || f == "E") {
    if (has("spectrum")) {
      c.expect("spectrum", "sigma_ess = {1, 2}", sigma_is_1_2(), a["spectrum"]["sigma_ess"].dump());
      c.expect("spectrum", "norm 2", a["spectrum"]["norm"] == "2", a["spectrum"]["norm"].get<std::string>());
    }
    if (f == "D" && has("probe") && a["probe"]["applicable"].get<bool>()) {
      const bool att = a["probe"]["attained"];
      c.expect("probe", "absolutely norm attaining: every restriction attains its norm", att,
               att ? "restriction attains its norm" : "restriction sup " +
                                                          a["probe"]["restriction_sup_sq"].get<std::string>() +
                                                          " not attained");
    }
    if (f == "E" && has("spectrum")) {
      bool from_above = true;
      for (const auto& p : a["spectrum"]["accumulation_points"]) from_above = from_above && p["approach"] == "from_above";
      c.expect("spectrum", "accumulation points are limits of decreasing sequences", from_above,
               from_above ? "from above" : "approached from below");
    }
  }
}

}  // namespace

AnalysisReport run(const AnalysisRequest& request) {
  if (request.fixture.has_value() == request.input_path.has_value()) {
    throw std::invalid_argument("exactly one of fixture or input path is required");
  }
  if (request.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (request.trials < 1) throw std::invalid_argument("trials must be >= 1");

  Context c{request, std::nullopt, std::nullopt, "", Json::object(), {}, {}};
  std::string source;
  if (request.fixture) {
    const auto& fx = fixture(*request.fixture);
    c.tree = validate_tree(fx.spec);
    c.fixture_name = fx.name;
    source = "fixture:" + fx.name;
  } else {
    const auto doc = read_json_file(*request.input_path);
    if (doc.is_object() && doc.contains("rows")) {
      c.matrix = matrix_from_json(doc);
    } else {
      c.tree = validate_tree(tree_spec_from_json(doc));
    }
    source = "input";
  }

  std::vector<std::string> selected = request.analyses;
  if (selected.empty()) {
    selected = c.tree ? std::vector<std::string>{"attainment", "bound", "classify", "functional-sweep", "norm", "probe",
                                                 "spectrum", "validate"}
                      : std::vector<std::string>{"decompose", "quasi-matrix", "validate"};
  }
  std::set<std::string> unique(selected.begin(), selected.end());
  const std::map<std::string, std::function<void(Context&)>> table = {
      {"attainment", run_attainment}, {"bound", run_bound},         {"classify", run_classify},
      {"decompose", run_decompose},   {"functional-sweep", run_sweep}, {"norm", run_norm},
      {"probe", run_probe},           {"quasi-matrix", run_quasi_matrix}, {"spectrum", run_spectrum},
      {"validate", run_validate}};
  const std::set<std::string> matrix_capable = {"decompose", "quasi-matrix", "validate"};
  for (const auto& name : unique) {
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown analysis '" + name + "'");
    if (c.matrix && !matrix_capable.count(name)) {
      c.analyses[name] = {{"applicable", false}, {"reason", "input is a matrix"}};
      continue;
    }
    try {
      it->second(c);
    } catch (const std::exception& e) {
      throw AnalysisFailure(name, e.what());
    }
  }
  fixture_expectations(c);

  AnalysisReport report;
  Json flags = Json::array();
  for (const auto& f : c.flags) {
    flags.push_back({{"analysis", f.analysis},
                     {"expectation", f.expectation},
                     {"observed", f.observed},
                     {"status", f.falsified ? "FALSIFIED" : "consistent"}});
    if (f.falsified) report.exit_status = 2;
  }
  report.flags = c.flags;
  report.json = {{"provenance",
                  {{"tool", "shiftlab"},
                   {"version", kToolVersion},
                   {"source", source},
                   {"seed", request.seed},
                   {"horizon", request.horizon},
                   {"trials", request.trials}}},
                 {"analyses", c.analyses},
                 {"flags", flags},
                 {"exit_status", report.exit_status}};

  std::ostringstream human;
  human << "shiftlab " << kToolVersion << " | " << source << "\n";
  for (const auto& line : c.human) human << "  " << line << "\n";
  for (const auto& f : c.flags) {
    human << "  [" << (f.falsified ? "FALSIFIED" : "consistent") << "] " << f.analysis << ": " << f.expectation
          << " -> " << f.observed << "\n";
  }
  report.human = human.str();
  return report;
}

}  // namespace shiftlab
