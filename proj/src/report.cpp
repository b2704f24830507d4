#include "origami/report.hpp"

#include "origami/io.hpp"

#include "json.hpp"

namespace origami {

using nlohmann::json;

namespace {

std::string dec(const Rational& q) { return format_rational(q); }
std::string dec(const Integer& z) { return z.get_str(); }

json range(const Rational& lo, const Rational& hi) { return json::array({dec(lo), dec(hi)}); }

json checks(const std::vector<Check>& list) {
  json out = json::array();
  for (const Check& c : list) {
    out.push_back({{"name", c.name},
                   {"expression", c.expression},
                   {"lhs", dec(c.lhs)},
                   {"rhs", dec(c.rhs)},
                   {"strict", c.strict},
                   {"holds", c.holds}});
  }
  return out;
}

json header(const ReportContext& ctx, const std::string& kind, bool success, const std::vector<std::string>& failures) {
  return {{"kind", kind},
          {"tool_version", kToolVersion},
          {"inputs", ctx.inputs},
          {"outcome", success ? "certified" : "failed"},
          {"failures", failures}};
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

json flatness_body(const FlatnessCertificate& c) {
  return {{"max_delta", dec(c.max_delta)},
          {"max_delta_at", {{"vertex", c.max_delta_at[0]}, {"link_position", c.max_delta_at[1]}}},
          {"alpha_range", range(c.alpha_range[0], c.alpha_range[1])},
          {"beta_range", range(c.beta_range[0], c.beta_range[1])},
          {"joint_range", range(c.joint_range[0], c.joint_range[1])},
          {"lipschitz_bound", dec(c.lipschitz_bound)},
          {"max_degree", c.max_degree},
          {"epsilon", dec(c.epsilon)},
          {"vertex_bounds", [&] {
             json v = json::array();
             for (const Rational& b : c.vertex_bounds) v.push_back(dec(b));
             return v;
           }()},
          {"sign_agreements", c.sign_agreements},
          {"windings_ok", c.windings_ok},
          {"pair_count", c.pair_count}};
}

json pair_json(const FacePair& p) {
  return {{"faces", {p.first, p.second}}, {"kind", to_string(p.kind)}};
}

json embedding_body(const EmbeddingCertificate& c, const EmbedParameters& p) {
  json witnesses = json::array();
  for (const SeparationWitness& w : c.witnesses) {
    json entry = pair_json(w.pair);
    entry["normal"] = {dec(w.normal[0]), dec(w.normal[1]), dec(w.normal[2])};
    entry["source"] = w.source;
    entry["index"] = w.index;
    entry["sign"] = w.sign;
    entry["margins"] = {dec(w.margin1), dec(w.margin2)};
    witnesses.push_back(std::move(entry));
  }
  json unwitnessed = json::array();
  for (const FacePair& f : c.unwitnessed) unwitnessed.push_back(pair_json(f));
  return {{"parameters",
           {{"scale", dec(p.scale)},
            {"delta", dec(p.delta)},
            {"cap", dec(p.cap)},
            {"disjoint_limit", p.limits.disjoint},
            {"shared_limit", p.limits.shared},
            {"extended_limit", p.limits.extended}}},
          {"threshold", dec(c.threshold)},
          {"lambda", dec(c.lambda)},
          {"pairs",
           {{"disjoint", c.disjoint_pairs}, {"shared_vertex", c.shared_vertex_pairs}, {"shared_edge", c.shared_edge_pairs}}},
          {"witnessed",
           {{"rho", c.witnessed_by_rho}, {"manual", c.witnessed_by_manual}, {"rho_extended", c.witnessed_by_extended}}},
          {"min_margin", dec(c.min_margin)},
          {"witnesses", witnesses},
          {"unwitnessed", unwitnessed}};
}

json expansion_body(const ExpansionRun& r) {
  const CrudeBounds& b = r.crude;
  const ExpansionCertificate& c = r.certificate;
  return {{"jacobian", {{"deviation_from_printed_transpose", dec(r.jacobian_deviation)}, {"zero_pattern", r.zero_pattern}}},
          {"crude_bounds",
           {{"certified", b.certified},
            {"failures", b.failures},
            {"checks", checks(b.checks)},
            {"informational", checks(b.informational)},
            {"ball_radius", dec(b.ball_radius)},
            {"outer_radius", dec(b.outer_radius)},
            {"edge_norm", range(b.edge_norm.lo, b.edge_norm.hi)},
            {"tangent_norm", range(b.tangent_norm.lo, b.tangent_norm.hi)},
            {"tangent_cap", dec(b.tangent_cap)},
            {"numerator", range(b.numerator.lo, b.numerator.hi)},
            {"denominator", range(b.denominator.lo, b.denominator.hi)},
            {"edge_length", range(b.edge_length.lo, b.edge_length.hi)},
            {"length_slack", dec(b.length_slack)},
            {"cosine", range(b.cosine.lo, b.cosine.hi)},
            {"cosine_slack", dec(b.cosine_slack)},
            {"sine_floor", dec(b.sine_floor)},
            {"psi_lipschitz", dec(b.psi_lipschitz)}}},
          {"second_order",
           {{"certified", r.chain.certified},
            {"failures", r.chain.failures},
            {"checks", checks(r.chain.checks)},
            {"cap", dec(r.chain.cap)},
            {"printed_total", dec(r.chain.printed_total)},
            {"corrected_total", dec(r.chain.corrected_total)}}},
          {"expansion",
           {{"certified", c.certified},
            {"checks", checks(c.checks)},
            {"sigma_min_bound", dec(c.sigma_min_bound)},
            {"smallest_root_lower", dec(c.smallest_root_lower)},
            {"e_inf", dec(c.e_inf)},
            {"frobenius_cap", dec(c.frobenius_cap)},
            {"frobenius_cap_sharp", dec(c.frobenius_cap_sharp)},
            {"lambda", dec(c.lambda)},
            {"radius", dec(c.radius)},
            {"angle_sine_bound", dec(c.angle_sine_bound)},
            {"printed_sine_ratio", dec(c.printed_sine_ratio)}}}};
}

json scalars(const std::vector<Scalar>& v, int sig) {
  json out = json::array();
  for (const Scalar& x : v) out.push_back(x.to_string(sig));
  return out;
}

json config_json(const SearchConfig& cfg) {
  return {{"rng_algorithm", kRngAlgorithm},
          {"rng_seed", cfg.rng_seed},
          {"initial_step", dec(cfg.initial_step)},
          {"rejections_per_halving", cfg.rejections_per_halving},
          {"max_steps", cfg.max_steps},
          {"precision", cfg.precision},
          {"newton_precision", cfg.newton_precision},
          {"newton_tol", dec(cfg.newton_tol)},
          {"newton_max_steps", cfg.newton_max_steps},
          {"truncation_digits", cfg.truncation_digits}};
}

}  // namespace

void add_input(ReportContext& ctx, const std::string& role, const std::string& path) {
  ctx.inputs[role] = sha256_hex(read_file(path));
}

std::string flatness_report(const ReportContext& ctx, const FlatnessCertificate& c) {
  json j = header(ctx, "flatness", c.certified, c.failures);
  j["parameters"] = {{"precision", ctx.precision}};
  j["certificate"] = flatness_body(c);
  return render(j);
}

std::string embedding_report(const ReportContext& ctx, const EmbeddingCertificate& c, const EmbedParameters& p) {
  json j = header(ctx, "embedding", c.certified, c.failures);
  j["certificate"] = embedding_body(c, p);
  return render(j);
}

std::string expansion_report(const ReportContext& ctx, const ExpansionRun& run) {
  json j = header(ctx, "expansion", run.certificate.certified, run.certificate.failures);
  j["parameters"] = {{"precision", ctx.precision}};
  j["certificate"] = expansion_body(run);
  return render(j);
}

std::string existence_report(const ReportContext& ctx, const FlatnessCertificate& flat,
                             const EmbeddingCertificate& embed, const EmbedParameters& ep, const ExpansionRun& run,
                             const ExistenceReport& e) {
  json j = header(ctx, "existence", e.established, e.failures);
  j["parameters"] = {{"precision", ctx.precision}};
  j["flatness"] = flatness_body(flat);
  j["flatness"]["certified"] = flat.certified;
  j["embedding"] = embedding_body(embed, ep);
  j["embedding"]["certified"] = embed.certified;
  j["expansion"] = expansion_body(run);
  j["existence"] = {{"checks", checks(e.checks)},
                    {"defect_norm_cap", dec(e.defect_norm_cap)},
                    {"defect_norm_bound", dec(e.defect_norm_bound)},
                    {"solution_radius", dec(e.solution_radius)},
                    {"expansion_radius", dec(e.expansion_radius)},
                    {"embedding_slack", dec(e.embedding_slack)},
                    {"statement", e.statement}};
  return render(j);
}

std::string search_report(const ReportContext& ctx, const SearchConfig& cfg, const HillClimbResult& r,
                          const std::string& output_sha256) {
  json j = header(ctx, "search", true, {});
  j["outcome"] = "completed";
  j["parameters"] = config_json(cfg);
  j["result"] = {{"steps", r.steps},
                 {"accepted", r.accepted},
                 {"final_step", dec(r.final_step)},
                 {"initial_objective", r.history.front().to_string(10)},
                 {"final_objective", r.history.back().to_string(10)},
                 {"history", scalars(r.history, 10)},
                 {"output_sha256", output_sha256}};
  return render(j);
}

std::string refine_report(const ReportContext& ctx, const SearchConfig& cfg, const NewtonResult& r,
                          const std::string& output_sha256) {
  json j = header(ctx, "refine", r.converged, {});
  j["outcome"] = r.converged ? "converged" : "not converged";
  if (!r.converged) j["failures"] = {"defect norm above newton_tol after newton_max_steps iterations"};
  j["parameters"] = config_json(cfg);
  j["result"] = {{"iterations", r.iterations},
                 {"defect_norms", scalars(r.defect_norms, 10)},
                 {"output_sha256", output_sha256}};
  return render(j);
}

}  // namespace origami
