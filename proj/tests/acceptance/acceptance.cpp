// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Seeds are fixed so every run sees the same samples.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stategeom/gns.hpp"
#include "stategeom/group_actions.hpp"
#include "stategeom/isotropy.hpp"
#include "stategeom/orbit_atlas.hpp"
#include "stategeom/sampling.hpp"
#include "stategeom/state_model.hpp"
#include "stategeom/tangent_flow.hpp"
#include "test_support.hpp"

using namespace stategeom;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Triple {
  Operator g1, g2;
  StateDensity rho;
};

std::vector<Triple> random_triples(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Triple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = uniform_index(rng, 2, 12);
    const std::size_t k = uniform_index(rng, 1, n);
    Operator g1 = random_invertible(n, rng);
    Operator g2 = random_invertible(n, rng);
    out.push_back({std::move(g1), std::move(g2), random_state(n, k, rng)});
  }
  return out;
}

// 1. Left-action laws, identity and scale invariance.
void action_laws(Outcome& o) {
  double compose_phi = 0, compose_alpha = 0, ident = 0, scale = 0;
  Rng rng(101);
  for (const Triple& t : random_triples(500, 1)) {
    const std::size_t n = t.rho.dim();
    const auto g1 = GroupElement::certify(t.g1);
    const auto g2 = GroupElement::certify(t.g2);
    const auto g12 = GroupElement::certify(t.g1 * t.g2);

    compose_phi = std::max(compose_phi, (phi(g1, phi(g2, t.rho)).matrix() - phi(g12, t.rho).matrix()).norm());
    compose_alpha = std::max(
        compose_alpha, (alpha(g1, alpha(g2, t.rho)).matrix() - alpha(g12, t.rho).matrix()).norm());

    const auto id = GroupElement::certify(identity(n));
    ident = std::max(ident, (phi(id, t.rho).matrix() - t.rho.matrix()).norm());
    ident = std::max(ident, (alpha(id, t.rho).matrix() - t.rho.matrix()).norm());

    const Complex lambda = std::polar(uniform(rng, 0.1, 10.0), uniform(rng, 0.0, 2 * M_PI));
    const auto scaled = GroupElement::certify(lambda * t.g1);
    scale = std::max(scale, (phi(scaled, t.rho).matrix() - phi(g1, t.rho).matrix()).norm());
  }
  o.require(compose_phi <= 1e-9, "phi composition");
  o.require(compose_alpha <= 1e-9, "alpha composition");
  o.require(ident <= 1e-12, "identity law");
  o.require(scale <= 1e-12, "scale invariance");
  o.detail << "phi compose " << compose_phi << ", alpha compose " << compose_alpha << ", identity "
           << ident << ", scale " << scale;
}

// 2. Positivity, trace and rank preservation over the same triples.
void preservation(Outcome& o) {
  double min_eig = INFINITY, trace_err = 0;
  std::size_t rank_changes = 0;
  for (const Triple& t : random_triples(500, 1)) {
    const std::size_t k = oracle::numeric_rank(t.rho.matrix());
    for (const Operator& g : {t.g1, t.g2, Operator(t.g1 * t.g2)}) {
      const Operator out = phi(GroupElement::certify(g), t.rho).matrix();
      min_eig = std::min(min_eig, oracle::min_eigenvalue(out));
      trace_err = std::max(trace_err, std::abs(out.trace().real() - 1.0));
      if (oracle::numeric_rank(out) != k) ++rank_changes;
      const Operator lin = alpha(GroupElement::certify(g), t.rho).matrix();
      if (oracle::numeric_rank(lin) != k) ++rank_changes;
    }
  }
  o.require(min_eig >= -1e-10, "min eigenvalue");
  o.require(trace_err <= 1e-10, "trace");
  o.require(rank_changes == 0, "rank");
  o.detail << "min eigenvalue " << min_eig << ", trace error " << trace_err << ", rank changes "
           << rank_changes;
}

// 3. Isotropy dimensions against the brute-force null space.
void isotropy_dimensions(Outcome& o) {
  Rng rng(3);
  std::size_t cases = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k <= n; ++k)
      for (int s = 0; s < 20; ++s) {
        const auto rho = random_state(n, k, rng);
        const std::size_t formula = k * k + 2 * (n - k) * (n - k) + 2 * k * (n - k);
        const std::size_t na = oracle::null_space(oracle::alpha_constraints(rho.matrix())).dim;
        const std::size_t np = oracle::null_space(oracle::phi_constraints(rho.matrix())).dim;
        const auto split = spectral_split(rho);
        const bool ok = na == formula && np == formula + 1 &&
                        isotropy_basis_alpha(split).dim_real() == na &&
                        isotropy_basis_phi(split).dim_real() == np;
        ++cases;
        if (!ok) ++mismatches;
      }
  o.require(mismatches == 0, "dimension mismatch");
  o.detail << cases << " states, " << mismatches << " mismatches";
}

// 4. The isotropy and complement bases together span the realification.
void direct_sum(Outcome& o) {
  Rng rng(3);
  double worst = INFINITY;
  std::size_t failures = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k <= n; ++k)
      for (int s = 0; s < 20; ++s) {
        const auto split = spectral_split(random_state(n, k, rng));
        std::vector<Operator> joint = isotropy_basis_alpha(split).vectors;
        const auto comp = complement_basis_alpha(split).vectors;
        joint.insert(joint.end(), comp.begin(), comp.end());
        if (joint.size() != 2 * n * n) {
          ++failures;
          continue;
        }
        Eigen::MatrixXd m(2 * n * n, joint.size());
        for (std::size_t j = 0; j < joint.size(); ++j) m.col(Eigen::Index(j)) = oracle::realify(joint[j]);
        const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().minCoeff();
        worst = std::min(worst, smin);
        if (!(smin > 1e-8)) ++failures;
      }
  o.require(failures == 0, "joint basis rank");
  o.detail << "smallest singular value " << worst << ", failures " << failures;
}

// 5. Connecting elements for same-rank pairs.
void connecting_elements(Outcome& o) {
  Rng rng(5);
  double residual = 0, norm_excess = 0;
  for (int s = 0; s < 200; ++s) {
    const std::size_t n = uniform_index(rng, 2, 10);
    const std::size_t k = uniform_index(rng, 1, n);
    const auto r0 = random_state(n, k, rng);
    const auto r1 = random_state(n, k, rng);
    const auto cert = connect_phi(r0, r1);
    residual = std::max(residual,
                        (oracle::normalized_congruence(cert.g.matrix(), r0.matrix()) - r1.matrix()).norm());
    const double opnorm = oracle::numeric_rank(cert.g.matrix()) == n
                              ? Eigen::JacobiSVD<Operator>(cert.g.matrix()).singularValues()(0)
                              : INFINITY;
    norm_excess = std::max(norm_excess, opnorm / std::sqrt(cert.bound_constant + 1) - 1.0);
  }
  o.require(residual <= 1e-9, "residual");
  o.require(norm_excess <= 1e-10, "norm bound");
  o.detail << "max residual " << residual << ", max ||g||/sqrt(C+1) - 1 " << norm_excess;
}

// 6. Convexity of the tracial orbit, quantum and classical.
void tracial_convexity(Outcome& o) {
  Rng rng(6);
  double quantum = 0, classical = 0;
  std::normal_distribution<double> normal;
  for (int s = 0; s < 200; ++s) {
    const std::size_t n = uniform_index(rng, 2, 8);
    const auto tau = validate_state(identity(n) / double(n));
    const Operator g1 = random_invertible(n, rng);
    const Operator g2 = random_invertible(n, rng);
    const double lambda = uniform(rng, 0, 1);
    const auto r = convex_recombine(tau, GroupElement::certify(g1), GroupElement::certify(g2), lambda);
    const Operator target = lambda * oracle::normalized_congruence(g1, tau.matrix()) +
                            (1 - lambda) * oracle::normalized_congruence(g2, tau.matrix());
    quantum = std::max(quantum, (oracle::normalized_congruence(r.p.matrix(), tau.matrix()) - target).norm());
    quantum = std::max(quantum, r.residual);

    const std::size_t m = uniform_index(rng, 2, 8);
    const auto p = random_probability(m, rng);
    ComplexVector w1(m), w2(m);
    for (std::size_t j = 0; j < m; ++j) {
      w1(Eigen::Index(j)) = Complex(normal(rng), normal(rng));
      w2(Eigen::Index(j)) = Complex(normal(rng), normal(rng));
    }
    const auto c = classical_recombine(p, w1, w2, lambda);
    const auto q = [&](const ComplexVector& w) {
      RealVector v = w.cwiseAbs2().cwiseProduct(p.values());
      return RealVector(v / v.sum());
    };
    const RealVector expected = lambda * q(w1) + (1 - lambda) * q(w2);
    classical = std::max(classical, (q(c.weights) - expected).cwiseAbs().maxCoeff());
  }
  o.require(quantum <= 1e-9, "quantum recombination");
  o.require(classical <= 1e-12, "classical recombination");
  o.detail << "quantum residual " << quantum << ", classical residual " << classical;
}

// 7. Finite differences, tangent kernel and tangent rank.
void tangent_correctness(Outcome& o) {
  Rng rng(7);
  double fd = 0, cross = 0;
  std::size_t rank_errors = 0, faithful_checked = 0;
  for (int s = 0; s < 200; ++s) {
    const std::size_t n = uniform_index(rng, 2, 6);
    const std::size_t k = uniform_index(rng, 1, n);
    const auto rho = random_state(n, k, rng);
    Operator a = random_ginibre(n, n, rng);
    a *= uniform(rng, 0.01, 2.0) / operator_norm(a);
    fd = std::max(fd, fd_tangent_check(rho, a));

    if (s % 4 != 0) continue;
    // kernel of the realified tangent map versus the isotropy basis
    const auto units = oracle::real_units(n);
    Eigen::MatrixXd t(2 * n * n, units.size());
    for (std::size_t j = 0; j < units.size(); ++j)
      t.col(Eigen::Index(j)) = oracle::realify(tangent_phi(rho, units[j]).value);
    const auto ns = oracle::null_space(t, 1e-9);
    const auto split = spectral_split(rho);
    const RealBasis basis = isotropy_basis_phi(split);
    if (ns.dim != basis.dim_real()) ++rank_errors;
    for (const Operator& v : basis.vectors) {
      const Eigen::VectorXd x = oracle::realify(v) / v.norm();
      cross = std::max(cross, oracle::distance_to_span(x, ns.basis));
      cross = std::max(cross, tangent_phi(rho, v).value.norm() / v.norm());
    }
    const std::size_t rank = tangent_map_rank(rho, Action::Phi);
    if (rank != orbit_dimension(split, Action::Phi)) ++rank_errors;
    if (k == n) {
      ++faithful_checked;
      if (rank != n * n - 1) ++rank_errors;
    }
  }
  o.require(fd <= 1e-6, "finite difference");
  o.require(cross <= 1e-8, "kernel cross-agreement");
  o.require(rank_errors == 0, "tangent rank");
  o.detail << "max fd error " << fd << ", kernel cross-agreement " << cross << ", rank errors "
           << rank_errors << " (" << faithful_checked << " faithful)";
}

// 8. GNS dimension, reconstruction, transport and purity.
void gns_checks(Outcome& o) {
  Rng rng(8);
  std::size_t dim_errors = 0, purity_errors = 0;
  double recon = 0, transport = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      const auto rho = random_state(n, k, rng);
      const auto t = gns_construct(rho);
      if (t.dim != n * k) ++dim_errors;
      const auto v = verify_gns(t, rho.matrix(), rng, 200);
      recon = std::max(recon, v.reconstruction);
      if (v.cyclic_rank != t.dim) ++dim_errors;

      const auto g = GroupElement::certify(random_invertible(n, rng));
      const auto moved = gns_transform(t, g, rho);
      const Operator target = oracle::normalized_congruence(g.matrix(), rho.matrix());
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          const Operator e = oracle::unit(n, r, c);
          transport = std::max(transport, std::abs(moved.expectation(e) - (target * e).trace()));
        }
    }
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = uniform_index(rng, 2, 6);
    const auto pure = random_state(n, 1, rng);
    const auto out = phi(GroupElement::certify(random_invertible(n, rng)), pure);
    const auto report = purity_check(out);
    if (!report.pure || report.commutant_dim != 1 || report.gns_dim != n) ++purity_errors;
  }
  o.require(dim_errors == 0, "GNS dimension");
  o.require(recon <= 1e-9, "reconstruction");
  o.require(transport <= 1e-9, "transport");
  o.require(purity_errors == 0, "purity");
  o.detail << "dimension errors " << dim_errors << ", reconstruction " << recon << ", transport "
           << transport << ", purity errors " << purity_errors;
}

// 9. Dirac vectors are fixed by every classical weight.
void classical_fixed_points(Outcome& o) {
  Rng rng(9);
  std::normal_distribution<double> normal;
  std::size_t moved = 0;
  for (int s = 0; s < 100; ++s) {
    const std::size_t m = uniform_index(rng, 1, 10);
    const std::size_t j = uniform_index(rng, 0, m - 1);
    RealVector dirac = RealVector::Zero(Eigen::Index(m));
    dirac(Eigen::Index(j)) = 1.0;
    ComplexVector w(m);
    for (std::size_t i = 0; i < m; ++i) w(Eigen::Index(i)) = Complex(normal(rng), normal(rng));
    if (classical_phi(w, validate_probability(dirac)).values() != dirac) ++moved;
  }
  o.require(moved == 0, "fixed point");
  o.detail << "100 weight vectors, " << moved << " moved";
}

// 10. Truncation sweep evidence.
void truncation(Outcome& o) {
  const std::vector<std::size_t> dims{2, 4, 8, 16, 24, 32, 48, 64};

  using K = SpectrumSpec::Kind;
  double c_dev = 0;
  for (const SpectrumSpec spec : {SpectrumSpec{K::Gibbs, 0.5}, SpectrumSpec{K::Gibbs, 0.9},
                                  SpectrumSpec{K::Power, 1.5}, SpectrumSpec{K::Uniform, 0}}) {
    const auto report = truncation_sweep(spec, spec, dims);
    for (const auto& row : report.rows) c_dev = std::max(c_dev, std::abs(row.bound_constant - 1.0));
    o.require(!report.any_divergence(), "identical spectra flagged");
  }
  o.require(c_dev <= 1e-12, "C = 1 for identical spectra");

  std::ostringstream flagged;
  for (const auto& [r0, r1] : std::vector<std::pair<double, double>>{{0.5, 0.7}, {0.3, 0.4}, {0.25, 0.5}}) {
    const auto report = truncation_sweep({K::Gibbs, r0}, {K::Gibbs, r1}, dims);
    const auto first = report.first_divergence();
    o.require(first && *first <= 64, "divergence flagged by n = 64");
    flagged << r0 << "->" << r1 << " at n=" << (first ? std::to_string(*first) : "none") << "; ";
  }
  // Close ratios grow like (r1/r0)^(n-1) too slowly to cross the ceiling by 64.
  const auto slow = truncation_sweep({K::Gibbs, 0.8}, {K::Gibbs, 0.9}, {64});
  o.detail << "max |C - 1| " << c_dev << "; first divergence " << flagged.str()
           << "0.8->0.9 reaches C=" << slow.rows.front().bound_constant << " at n=64";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"action laws", action_laws},
      {"positivity, trace and rank preservation", preservation},
      {"isotropy dimensions", isotropy_dimensions},
      {"direct-sum decomposition", direct_sum},
      {"connecting element", connecting_elements},
      {"tracial-orbit convexity", tracial_convexity},
      {"tangent correctness", tangent_correctness},
      {"GNS construction", gns_checks},
      {"classical fixed points", classical_fixed_points},
      {"truncation sweep", truncation},
  };

  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, name,
                o.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
