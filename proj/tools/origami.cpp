// Command-line front end: certificate verification, search, refinement, slicing and export.

#include "origami/io.hpp"
#include "origami/report.hpp"
#include "origami/search.hpp"
#include "origami/slice.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace origami;

namespace {

enum Exit { kSuccess = 0, kFailure = 1, kInputError = 2 };

struct Options {
  std::string mesh, links, report, out, matrix, normals, lattice, plane = "xy";
  int precision = kDefaultDigits;
  std::uint64_t seed = 1;
  long extended_limit = 1000000;
  long steps = 1000;
  int digits = 32;
  int truncate = 0;
  std::string tol = "1e-35";
  int max_iterations = 10;
  std::string step = "1/64";
  int halving = 200;
  int search_precision = 50;
};

std::string sci(const Rational& q) { return Scalar(q, 40).to_string(6); }

void write_report(const Options& o, const std::string& text) {
  if (!o.report.empty()) write_file_atomic(o.report, text);
}

void print_failures(const std::vector<std::string>& failures) {
  for (const auto& f : failures) std::cout << "  FAIL " << f << "\n";
}

ReportContext context(const Options& o) {
  ReportContext ctx;
  ctx.precision = o.precision;
  if (!o.mesh.empty()) add_input(ctx, "mesh", o.mesh);
  if (!o.links.empty()) add_input(ctx, "links", o.links);
  if (!o.matrix.empty()) add_input(ctx, "matrix", o.matrix);
  if (!o.normals.empty()) add_input(ctx, "normals", o.normals);
  if (!o.lattice.empty()) add_input(ctx, "lattice", o.lattice);
  return ctx;
}

EmbedParameters embed_parameters(const Options& o) {
  if (o.extended_limit < 0) throw InputError("--extended-limit must be nonnegative");
  EmbedParameters p;
  p.limits.extended = o.extended_limit;
  return p;
}

ManualNormals manual_normals(const Options& o) {
  return o.normals.empty() ? builtin_manual_normals() : load_normals(o.normals);
}

RationalMatrix expansion_matrix(const Options& o) {
  return o.matrix.empty() ? builtin_expansion_matrix() : load_matrix(o.matrix);
}

int cmd_validate(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const ValidationReport r = validate(s.triangulation);
  std::cout << "vertices " << r.vertices << ", edges " << r.edges << ", faces " << r.faces << ", Euler characteristic "
            << r.euler << ", genus " << r.genus << "\n";
  print_failures(r.face_errors);
  print_failures(r.edge_errors);
  print_failures(r.link_errors);
  bool in_ball = true;
  try {
    check_in_ball(s);
  } catch (const InputError& e) {
    in_ball = false;
    std::cout << "  FAIL " << e.what() << "\n";
  }
  const bool ok = r.valid && in_ball;
  std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? kSuccess : kFailure;
}

int cmd_verify_flat(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const FlatnessCertificate c = certify_flatness(s, load_links(o.links));
  std::cout << "flatness: max delta " << sci(c.max_delta) << ", K " << format_rational(c.lipschitz_bound)
            << ", epsilon " << sci(c.epsilon) << "\n";
  print_failures(c.failures);
  std::cout << (c.certified ? "certified" : "not certified") << "\n";
  write_report(o, flatness_report(context(o), c));
  return c.certified ? kSuccess : kFailure;
}

void print_embedding(const EmbeddingCertificate& c) {
  std::cout << "embedding: pairs " << c.disjoint_pairs << "/" << c.shared_vertex_pairs << "/" << c.shared_edge_pairs
            << ", witnesses " << c.witnesses.size() << " (rho " << c.witnessed_by_rho << ", manual "
            << c.witnessed_by_manual << ", extended " << c.witnessed_by_extended << "), lambda "
            << sci(c.lambda) << "\n";
  for (const FacePair& p : c.unwitnessed) {
    std::cout << "  FAIL no separating normal for faces " << p.first << " and " << p.second << " ("
              << to_string(p.kind) << ")\n";
  }
}

int cmd_verify_embed(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const EmbedParameters p = embed_parameters(o);
  const EmbeddingCertificate c = certify_embeddedness(s, p, manual_normals(o));
  print_embedding(c);
  print_failures(c.failures);
  std::cout << (c.certified ? "certified" : "not certified") << "\n";
  write_report(o, embedding_report(context(o), c, p));
  return c.certified ? kSuccess : kFailure;
}

void print_expansion(const ExpansionRun& r) {
  std::cout << "expansion: max |dTheta - M^T| " << sci(r.jacobian_deviation) << ", sigma_min >= "
            << sci(r.certificate.sigma_min_bound) << ", lambda " << sci(r.certificate.lambda) << "\n";
}

int cmd_verify_expansion(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const ExpansionRun r = run_expansion(s, expansion_matrix(o), o.precision);
  print_expansion(r);
  print_failures(r.certificate.failures);
  std::cout << (r.certificate.certified ? "certified" : "not certified") << "\n";
  write_report(o, expansion_report(context(o), r));
  return r.certificate.certified ? kSuccess : kFailure;
}

int cmd_verify_all(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const FlatnessCertificate flat = certify_flatness(s, load_links(o.links));
  std::cout << "flatness: epsilon " << sci(flat.epsilon) << (flat.certified ? "" : " (not certified)")
            << "\n";
  const EmbedParameters p = embed_parameters(o);
  const EmbeddingCertificate embed = certify_embeddedness(s, p, manual_normals(o));
  print_embedding(embed);
  const ExpansionRun run = run_expansion(s, expansion_matrix(o), o.precision);
  print_expansion(run);
  const ExistenceReport e = conclude_existence(flat, embed, run.certificate);
  print_failures(flat.failures);
  print_failures(embed.failures);
  print_failures(run.certificate.failures);
  print_failures(e.failures);
  if (e.established) std::cout << e.statement << "\n";
  std::cout << (e.established ? "certified" : "not certified") << "\n";
  write_report(o, existence_report(context(o), flat, embed, p, run, e));
  return e.established ? kSuccess : kFailure;
}

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.rng_seed = o.seed;
  cfg.max_steps = o.steps;
  cfg.initial_step = parse_rational(o.step);
  cfg.rejections_per_halving = o.halving;
  cfg.precision = o.search_precision;
  cfg.newton_precision = o.precision;
  cfg.newton_tol = parse_rational(o.tol);
  cfg.newton_max_steps = o.max_iterations;
  if (o.truncate > 0) cfg.truncation_digits = o.truncate;
  cfg.validate();
  return cfg;
}

int cmd_refine(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const SearchConfig cfg = search_config(o);
  NewtonResult r;
  try {
    r = newton_refine(s, cfg);
  } catch (const NewtonError& e) {
    std::cout << "  FAIL " << e.what() << "\nnot converged\n";
    return kFailure;
  }
  for (std::size_t k = 0; k < r.defect_norms.size(); ++k) {
    std::cout << "iteration " << k << ": |Theta| " << r.defect_norms[k].to_string(6) << "\n";
  }
  EmbeddedSurface result = o.truncate > 0 ? truncate_coords(r.surface, o.truncate) : r.surface;
  const std::string text = format_mesh(result);
  if (!o.out.empty()) write_file_atomic(o.out, text);
  std::cout << (r.converged ? "converged" : "not converged") << "\n";
  write_report(o, refine_report(context(o), cfg, r, sha256_hex(text)));
  return r.converged ? kSuccess : kFailure;
}

int cmd_search(const Options& o) {
  if (o.lattice.empty() == o.mesh.empty()) throw InputError("search needs exactly one of --lattice and --mesh");
  const EmbeddedSurface start = o.lattice.empty() ? load_mesh(o.mesh) : prepare_from_lattice(load_lattice(o.lattice));
  const SearchConfig cfg = search_config(o);
  const HillClimbResult r = hill_climb(start, cfg);
  std::cout << "objective " << r.history.front().to_string(6) << " -> " << r.history.back().to_string(6) << " after "
            << r.steps << " steps (" << r.accepted << " accepted, seed " << cfg.rng_seed << ", " << kRngAlgorithm
            << ")\n";
  const std::string text = format_mesh(r.surface);
  if (!o.out.empty()) write_file_atomic(o.out, text);
  write_report(o, search_report(context(o), cfg, r, sha256_hex(text)));
  return kSuccess;
}

int cmd_slice(const Options& o) {
  const EmbeddedSurface s = load_mesh(o.mesh);
  const SlicePolyline p = slice(s, named_plane(o.plane));
  std::cout << "plane " << o.plane << ": " << p.loops.size() << " loop(s)\n";
  const std::string svg = format_svg(p);
  if (o.out.empty()) {
    std::cout << svg;
  } else {
    write_file_atomic(o.out, svg);
  }
  return kSuccess;
}

int cmd_export(const Options& o) {
  const std::string off = format_off(load_mesh(o.mesh), o.digits);
  if (o.out.empty()) {
    std::cout << off;
  } else {
    write_file_atomic(o.out, off);
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified numerics for origami surfaces in the Klein model"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto mesh = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--mesh", o.mesh, "Mesh file (origami-mesh-v1)")->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  auto links = [&](CLI::App* c) {
    c->add_option("--links", o.links, "Reference link vectors (origami-links-v1)")->required()->check(CLI::ExistingFile);
  };
  auto report = [&](CLI::App* c) { c->add_option("--report", o.report, "Write a JSON report to this path"); };
  auto precision = [&](CLI::App* c) {
    c->add_option("--precision", o.precision, "Working precision in decimal digits")->capture_default_str()->check(
        CLI::Range(10, 5000));
  };
  auto embed = [&](CLI::App* c) {
    c->add_option("--extended-limit", o.extended_limit,
                  "Continue the quasi-random normal search up to this index for unwitnessed pairs (0: off)")
        ->capture_default_str();
    c->add_option("--normals", o.normals, "Manual normal table (origami-normals-v1)")->check(CLI::ExistingFile);
  };
  auto matrix = [&](CLI::App* c) {
    c->add_option("--matrix", o.matrix, "Expansion matrix (origami-matrix-v1)")->check(CLI::ExistingFile);
  };
  auto newton = [&](CLI::App* c) {
    c->add_option("--tol", o.tol, "Newton stopping tolerance on |Theta|")->capture_default_str();
    c->add_option("--max-iterations", o.max_iterations, "Newton iteration budget")->capture_default_str();
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check the triangulation and the ball constraint");
  mesh(validate_cmd);

  CLI::App* flat = app.add_subcommand("verify-flat", "Certify that every cone angle is close to 2 pi");
  mesh(flat);
  links(flat);
  precision(flat);
  report(flat);

  CLI::App* emb = app.add_subcommand("verify-embed", "Certify robust embeddedness by separating planes");
  mesh(emb);
  embed(emb);
  report(emb);

  CLI::App* exp = app.add_subcommand("verify-expansion", "Certify that the cone-defect map is expansive");
  mesh(exp);
  matrix(exp);
  precision(exp);
  report(exp);

  CLI::App* all = app.add_subcommand("verify-all", "Run every certificate and conclude existence");
  mesh(all);
  links(all);
  embed(all);
  matrix(all);
  precision(all);
  report(all);

  CLI::App* refine = app.add_subcommand("refine", "Newton refinement of the z-coordinates");
  mesh(refine);
  precision(refine);
  newton(refine);
  refine->add_option("--truncate", o.truncate, "Truncate z toward zero at 10^-N after refining (0: keep all digits)");
  refine->add_option("--out", o.out, "Write the refined mesh here");
  report(refine);

  CLI::App* search = app.add_subcommand("search", "Hill climbing on the largest cone defect");
  mesh(search, false);
  search->add_option("--lattice", o.lattice, "Lattice embedding (origami-lattice-v1)")->check(CLI::ExistingFile);
  search->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  search->add_option("--steps", o.steps, "Number of proposals")->capture_default_str();
  search->add_option("--step", o.step, "Initial proposal half-width")->capture_default_str();
  search->add_option("--halving", o.halving, "Consecutive rejections before the step is halved")->capture_default_str();
  search->add_option("--search-precision", o.search_precision, "Digits for objective evaluations")
      ->capture_default_str();
  search->add_option("--out", o.out, "Write the final mesh here");
  report(search);

  CLI::App* sl = app.add_subcommand("slice", "Cross-section with a coordinate plane as SVG");
  mesh(sl);
  sl->add_option("--plane", o.plane, "Plane through the origin")
      ->check(CLI::IsMember({"xy", "xz", "yz"}))
      ->capture_default_str();
  sl->add_option("--out", o.out, "SVG path (default: standard output)");

  CLI::App* ex = app.add_subcommand("export", "Export the mesh in OFF format");
  mesh(ex);
  ex->add_option("--digits", o.digits, "Decimal digits kept in coordinates")->capture_default_str()->check(
      CLI::PositiveNumber);
  ex->add_option("--out", o.out, "OFF path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o);
    if (flat->parsed()) return cmd_verify_flat(o);
    if (emb->parsed()) return cmd_verify_embed(o);
    if (exp->parsed()) return cmd_verify_expansion(o);
    if (all->parsed()) return cmd_verify_all(o);
    if (refine->parsed()) return cmd_refine(o);
    if (search->parsed()) return cmd_search(o);
    if (sl->parsed()) return cmd_slice(o);
    if (ex->parsed()) return cmd_export(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OpenChainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kInputError;
}
