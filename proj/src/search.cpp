#include "origami/search.hpp"

#include "origami/jacobian/defect.hpp"

#include <random>

namespace origami {

const char* const kRngAlgorithm = "mt19937_64";

namespace {

Rational exact_or_upper_sqrt(const Rational& x) {
  Integer n = x.get_num(), d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
  }
  return sqrt_bounds(x, pow10(-45), 60).hi().to_rational();
}

// Uniform dyadic offset in [-step, step): step * (u - 2^63) / 2^63.
Rational offset(std::uint64_t u, const Rational& step) {
  Integer centered;
  mpz_set_ui(centered.get_mpz_t(), static_cast<unsigned long>(u >> 32));
  centered <<= 32;
  centered += static_cast<unsigned long>(u & 0xffffffffUL);
  Integer half;
  mpz_ui_pow_ui(half.get_mpz_t(), 2, 63);
  centered -= half;
  Rational r(centered, half);
  r.canonicalize();
  return step * r;
}

bool inside_ball(const std::vector<Point3>& coords) {
  for (const Point3& p : coords) {
    if (!in_open_ball(p)) return false;
  }
  return true;
}

Scalar objective_from(const std::vector<std::vector<int>>& links, const std::vector<Point3>& coords, int digits) {
  const std::vector<ScalarPoint> pts = to_scalar(coords, digits);
  const Scalar full = pi(digits) * 2;
  Scalar worst(0L, digits);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    worst = max(worst, abs(cone_angle(links, pts, static_cast<int>(i)) - full));
  }
  return worst;
}

}  // namespace

void SearchConfig::validate() const {
  if (rng_seed == 0) throw InputError("search: rng_seed must be positive");
  if (initial_step <= 0) throw InputError("search: initial_step must be positive");
  if (rejections_per_halving <= 0) throw InputError("search: rejections_per_halving must be positive");
  if (max_steps < 0) throw InputError("search: max_steps must be nonnegative");
  if (precision <= 0 || newton_precision <= 0) throw InputError("search: precisions must be positive");
  if (newton_max_steps <= 0) throw InputError("search: newton_max_steps must be positive");
  if (truncation_digits <= 0) throw InputError("search: truncation_digits must be positive");
  if (newton_tol <= 0 || newton_tol < pow10(10 - newton_precision)) {
    throw InputError("search: newton_tol must be at least 10^(10 - newton_precision)");
  }
}

EmbeddedSurface prepare_from_lattice(const LatticeInput& in) {
  const std::size_t n = in.points.size();
  if (n < 4) throw InputError("lattice input needs at least 4 points, got " + std::to_string(n));
  if (in.triangulation.n_vertices != static_cast<int>(n)) {
    throw InputError("lattice faces refer to " + std::to_string(in.triangulation.n_vertices) + " vertices but " +
                     std::to_string(n) + " points were given");
  }

  Point3 centroid{Rational(0), Rational(0), Rational(0)};
  for (const auto& p : in.points) {
    for (int k = 0; k < 3; ++k) centroid[k] += Rational(p[k]);
  }
  for (int k = 0; k < 3; ++k) {
    centroid[k] /= static_cast<long>(n);
    centroid[k].canonicalize();
  }

  std::vector<Point3> shifted;
  Rational max_sq(0);
  for (const auto& p : in.points) {
    Point3 q{Rational(p[0]) - centroid.x, Rational(p[1]) - centroid.y, Rational(p[2]) - centroid.z};
    const Rational sq = dot(q, q);
    if (sq > max_sq) max_sq = sq;
    shifted.push_back(q);
  }
  if (max_sq == 0) throw InputError("lattice points all coincide");

  Rational scale = 1 / (2 * exact_or_upper_sqrt(max_sq));
  scale.canonicalize();
  EmbeddedSurface s;
  s.triangulation = in.triangulation;
  for (const Point3& q : shifted) {
    Point3 r = scale * q;
    for (int k = 0; k < 3; ++k) r[k].canonicalize();
    s.coords.push_back(r);
  }
  return s;
}

Scalar objective(const EmbeddedSurface& s, int digits) {
  return objective_from(all_links(s.triangulation), s.coords, digits);
}

HillClimbResult hill_climb(const EmbeddedSurface& start, const SearchConfig& cfg) {
  cfg.validate();
  check_in_ball(start);
  const auto links = all_links(start.triangulation);
  const Rational floor = pow10(-(cfg.precision / 2));

  HillClimbResult out;
  out.surface = start;
  out.final_step = cfg.initial_step;
  Scalar best = objective_from(links, start.coords, cfg.precision);
  out.history.push_back(best);

  std::mt19937_64 rng(cfg.rng_seed);
  int rejections = 0;
  for (long step = 0; step < cfg.max_steps; ++step) {
    ++out.steps;
    std::vector<Point3> proposal = out.surface.coords;
    for (Point3& p : proposal) {
      for (int k = 0; k < 3; ++k) p[k] += offset(rng(), out.final_step);
    }
    bool accepted = false;
    if (inside_ball(proposal)) {
      Scalar value = objective_from(links, proposal, cfg.precision);
      if (value < best) {
        best = value;
        out.surface.coords = std::move(proposal);
        out.history.push_back(best);
        ++out.accepted;
        accepted = true;
      }
    }
    if (accepted) {
      rejections = 0;
    } else if (++rejections >= cfg.rejections_per_halving) {
      rejections = 0;
      Rational halved = out.final_step / 2;
      if (halved >= floor) out.final_step = halved;
    }
  }
  return out;
}

NewtonResult newton_refine(const EmbeddedSurface& s, const SearchConfig& cfg) {
  cfg.validate();
  check_in_ball(s);
  const int digits = cfg.newton_precision;
  const Triangulation& t = s.triangulation;
  const int n = t.n_vertices;
  std::vector<ScalarPoint> pts = to_scalar(s.coords, digits);

  NewtonResult out;
  int increases = 0;
  for (;;) {
    DefectVector d = theta_map(t, pts);
    Scalar norm = defect_norm(d);
    if (!out.defect_norms.empty() && norm > out.defect_norms.back()) {
      if (++increases >= 2) {
        throw NewtonError("Newton iteration diverges: defect norm increased twice in a row (now " + norm.to_string(6) +
                          ")");
      }
    } else {
      increases = 0;
    }
    out.defect_norms.push_back(norm);
    if (norm.compare(cfg.newton_tol) <= 0) {
      out.converged = true;
      break;
    }
    if (out.iterations >= cfg.newton_max_steps) break;

    ScalarMatrix j;
    try {
      j = dtheta_analytic(t, pts);
    } catch (const DegenerateGeometry& e) {
      throw NewtonError(std::string("Newton step at a degenerate surface: ") + e.what());
    }
    ScalarVector delta;
    try {
      delta = lu_solve(std::move(j), d.theta);
    } catch (const SingularMatrix&) {
      throw NewtonError("singular Jacobian at Newton iteration " + std::to_string(out.iterations));
    }
    const Scalar one(1L, digits);
    for (int i = 0; i < n; ++i) {
      pts[i].z -= delta[i];
      if (dot(pts[i], pts[i]) >= one) {
        throw NewtonError("Newton step " + std::to_string(out.iterations) + " moved vertex " + std::to_string(i) +
                          " out of the ball");
      }
    }
    ++out.iterations;
  }

  out.surface = s;
  if (out.iterations == 0) return out;
  for (int i = 0; i < n; ++i) out.surface.coords[i].z = parse_rational(pts[i].z.to_string());
  return out;
}

EmbeddedSurface truncate_coords(const EmbeddedSurface& s, int digits, TruncateWhich which) {
  if (digits < 0) throw InputError("truncation digits must be nonnegative");
  EmbeddedSurface out = s;
  for (Point3& p : out.coords) {
    p.z = truncate_decimal(p.z, digits);
    if (which == TruncateWhich::all) {
      p.x = truncate_decimal(p.x, digits);
      p.y = truncate_decimal(p.y, digits);
    }
  }
  return out;
}

}  // namespace origami
