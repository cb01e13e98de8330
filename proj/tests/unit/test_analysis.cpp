#include "doctest.h"
#include "oracles.hpp"
#include "snsr/analysis/analysis.hpp"
#include "snsr/analysis/bands.hpp"

using namespace snsr;

namespace {

struct Setup {
  Graph g;
  Laplacian l;
  SpectralBasis basis;
  BandPartition partition;
};

Setup setup(Index n, double p, std::uint64_t seed) {
  Graph g = oracle::random_graph(n, p, seed, true);
  Laplacian l = build_laplacian(g);
  SpectralBasis b = eigendecompose(l);
  BandPartition part = BandPartition::three_band(b.max_eigenvalue());
  return {std::move(g), std::move(l), std::move(b), std::move(part)};
}

// Direct band sums from the oracle eigendecomposition.
Vector oracle_bands(const Setup& s, const Vector& y) {
  const oracle::Eig e = oracle::eig(oracle::laplacian(s.g));
  const Vector yh = e.vectors.transpose() * y;
  Vector out = Vector::Zero(3);
  const double lm = s.partition.upper();
  for (Eigen::Index i = 0; i < yh.size(); ++i) {
    const double lam = std::max(0.0, e.values[i]);
    const int b = lam < lm / 3.0 ? 0 : (lam < 2.0 * lm / 3.0 ? 1 : 2);
    out[b] += yh[i] * yh[i];
  }
  return out;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("band partition") {
  const BandPartition p = BandPartition::three_band(3.0);
  CHECK(p.band_count() == 3);
  CHECK(p.band_of(0.0) == 0);
  CHECK(p.band_of(0.999) == 0);
  CHECK(p.band_of(1.0) == 1);
  CHECK(p.band_of(2.0) == 2);
  CHECK(p.band_of(3.0) == 2);
  CHECK(p.band_of(-1e-14) == 0);
  CHECK_THROWS_AS(p.band_of(4.0), Error);
  CHECK_THROWS_AS(BandPartition({0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(BandPartition({0.5, 1.0}), Error);
  CHECK_THROWS_AS(BandPartition({0.0}), Error);
}

TEST_CASE("band_energy examples") {
  const Setup s = setup(10, 0.5, 1);
  REQUIRE(s.g.is_connected());
  const BandReport r0 = band_energy(s.basis, s.basis.eigenvectors().col(0), s.partition);
  CHECK(r0.fractions[0] == doctest::Approx(1.0));
  CHECK(r0.energies[1] + r0.energies[2] <= 1e-20);
  const BandReport z = band_energy(s.basis, Vector::Zero(10), s.partition);
  CHECK(z.degenerate);
  CHECK(z.energies.isZero(0.0));
  CHECK(z.fractions.isZero(0.0));
}

TEST_CASE("band energies partition the total energy") {
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Setup s = setup(10, 0.4, 10 + seed);
    const Vector y = oracle::gaussian(10, rng);
    const BandReport r = band_energy(s.basis, y, s.partition);
    CHECK(oracle::rel_err(r.total(), y.squaredNorm()) <= 1e-10);
    CHECK(r.energies.minCoeff() >= 0.0);
    CHECK(r.fractions.sum() == doctest::Approx(1.0));
    CHECK((r.energies - oracle_bands(s, y)).cwiseAbs().maxCoeff() <= 1e-9 * y.squaredNorm());
  }
}

TEST_CASE("dirichlet_energy") {
  const Laplacian p2 = build_laplacian(Graph::create(2, {{0, 1, 1.0}}));
  CHECK(dirichlet_energy(p2, (Vector(2) << 1.0, -1.0).finished()) == doctest::Approx(4.0));
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Setup s = setup(12, 0.4, 30 + seed);
    CHECK(std::abs(dirichlet_energy(s.l, Vector::Constant(12, 3.0))) <= 1e-12);
    const Vector y = oracle::gaussian(12, rng);
    const oracle::Eig e = oracle::eig(oracle::laplacian(s.g));
    const Vector yh = e.vectors.transpose() * y;
    double spectral = 0.0;
    for (Index i = 0; i < 12; ++i) spectral += e.values[i] * yh[i] * yh[i];
    CHECK(oracle::rel_err(dirichlet_energy(s.l, y), spectral) <= 1e-9);
  }
}

TEST_CASE("proof_band_agreement examples") {
  const Setup s = setup(8, 0.6, 4);
  REQUIRE(s.g.is_connected());
  const Vector low = s.basis.eigenvectors().col(0);
  const Vector high = s.basis.eigenvectors().col(7);
  const BandReport rl = band_energy(s.basis, low, s.partition);
  const BandReport rh = band_energy(s.basis, high, s.partition);
  CHECK(proof_band_agreement({{rl, {0}}, {rl, {0, 1}}}) == doctest::Approx(1.0));
  CHECK(proof_band_agreement({{rh, {0}}, {rl, {2}}}) == doctest::Approx(0.0).epsilon(1e-12));
  const BandReport half = band_energy(s.basis, low + high, s.partition);
  CHECK(proof_band_agreement({{half, {0}}}) == doctest::Approx(0.5));
  const BandReport zero = band_energy(s.basis, Vector::Zero(8), s.partition);
  CHECK(proof_band_agreement({{zero, {0}}, {rl, {0}}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(proof_band_agreement({{zero, {0}}}), Error);
  CHECK_THROWS_AS(proof_band_agreement({}), Error);
}

TEST_CASE("spectral_covariance") {
  const Setup s = setup(9, 0.5, 5);
  std::mt19937_64 rng(6);
  const Vector x = oracle::gaussian(9, rng);
  const SpectralCovariance zero = spectral_covariance(s.basis, Vector::Zero(9), x, true);
  CHECK(zero.vertex_matrix->isZero(0.0));

  const Vector u0 = s.basis.eigenvectors().col(0);
  const SpectralCovariance single = spectral_covariance(s.basis, Vector::Unit(9, 0), u0, true);
  CHECK((*single.vertex_matrix - u0 * u0.transpose()).cwiseAbs().maxCoeff() <= 1e-12);

  const Vector var = oracle::gaussian(9, rng).cwiseAbs();
  const SpectralCovariance c = spectral_covariance(s.basis, var, x, true);
  CHECK(std::abs(c.vertex_matrix->trace() - c.trace()) <= 1e-10 * (1 + c.trace()));
  CHECK(oracle::eig(*c.vertex_matrix).values.minCoeff() >= -1e-9);
  CHECK_FALSE(spectral_covariance(s.basis, var, x).vertex_matrix);
  CHECK_THROWS_AS(spectral_covariance(s.basis, -var, x), Error);
}

TEST_CASE("response_variance uses the closed-form Chebyshev terms") {
  const Setup s = setup(7, 0.6, 7);
  const double lm = 1.1 * s.basis.max_eigenvalue();
  const Vector tv = (Vector(4) << 0.1, 0.2, 0.0, 0.3).finished();
  const Vector v = response_variance(s.basis, tv, lm);
  for (Index i = 0; i < 7; ++i) {
    const double z = 2.0 * s.basis.eigenvalues()[i] / lm - 1.0;
    double want = 0.0;
    for (int k = 0; k < 4; ++k) want += tv[k] * std::pow(oracle::chebyshev_t(k, z), 2);
    CHECK(v[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("robustness certificate examples") {
  CHECK(robustness_certificate(AnalyticResponse::diffusion(1.0), 2.0).bound == doctest::Approx(1.05));
  CHECK(robustness_certificate(AnalyticResponse::identity(), 2.0).bound == doctest::Approx(1.05));
  CHECK(robustness_certificate(AnalyticResponse::highpass(1.0), 3.0).bound == doctest::Approx(1.05 * 0.75));
  const ChebyshevFilter f = fit_chebyshev(AnalyticResponse::diffusion(1.0), 12, 2.0);
  const RobustnessCertificate c = robustness_certificate(f);
  CHECK_FALSE(c.closed_form);
  CHECK(c.grid_points == kCertificateGrid);
  CHECK(c.bound == doctest::Approx(1.05).epsilon(1e-6));
}

TEST_CASE("certificates are sound on random filters") {
  std::mt19937_64 rng(8);
  for (int f_id = 0; f_id < 5; ++f_id) {
    const Setup s = setup(16, 0.3, 40 + f_id);
    const double lm = estimate_lambda_max(s.l).value;
    const ChebyshevFilter f(oracle::gaussian(7, rng), lm);
    const RobustnessCertificate cert = robustness_certificate(f);
    for (Index i = 0; i < 16; ++i) CHECK(std::abs(f.response(s.basis.eigenvalues()[i])) <= cert.bound);
    const ScaledLaplacian lt = scale_laplacian(s.l, lm);
    for (int pair = 0; pair < 200; ++pair) {
      const Vector x = oracle::gaussian(16, rng);
      const Vector xp = x + 0.1 * oracle::gaussian(16, rng);
      const double lhs = (cheb_apply(f, lt, x).y - cheb_apply(f, lt, xp).y).norm();
      CHECK(lhs <= cert.bound * (x - xp).norm());
    }
  }
}

TEST_CASE("spectral_perturb") {
  const Setup s = setup(15, 0.4, 9);
  std::mt19937_64 rng(10);
  const Vector x = oracle::gaussian(15, rng);
  CHECK((spectral_perturb(s.basis, x, 2, 0.0, s.partition, 1) - x).cwiseAbs().maxCoeff() <= 1e-12);
  for (int band = 0; band < 3; ++band) {
    const std::vector<int> members = s.partition.assign(s.basis);
    if (std::count(members.begin(), members.end(), band) == 0) continue;
    const Vector p = spectral_perturb(s.basis, x, band, 0.7, s.partition, 5);
    CHECK(std::abs((p - x).norm() - 0.7) <= 1e-10);
    const BandReport before = band_energy(s.basis, x, s.partition);
    const BandReport after = band_energy(s.basis, p, s.partition);
    for (int b = 0; b < 3; ++b) {
      if (b != band) CHECK(std::abs(after.energies[b] - before.energies[b]) <= 1e-10);
    }
    const Vector again = spectral_perturb(s.basis, x, band, 0.7, s.partition, 5);
    CHECK((again.array() == p.array()).all());
  }
  const BandPartition wide({0.0, 1e-6, 1e-5, 100.0});
  CHECK_THROWS_AS(spectral_perturb(s.basis, x, 1, 1.0, wide, 1), Error);
}

TEST_CASE("spectral_edit") {
  const Setup s = setup(12, 0.5, 11);
  REQUIRE(s.g.is_connected());
  std::mt19937_64 rng(12);
  const Vector x = oracle::gaussian(12, rng);
  CHECK((spectral_edit(s.basis, x, {{0, 1.0}, {1, 1.0}, {2, 1.0}}, s.partition) - x).norm() <= 1e-12);
  CHECK(spectral_edit(s.basis, Vector::Constant(12, 2.0), {{0, 0.0}}, s.partition).cwiseAbs().maxCoeff() <= 1e-10);
  const BandReport before = band_energy(s.basis, x, s.partition);
  const BandReport after = band_energy(s.basis, spectral_edit(s.basis, x, {{1, 2.0}}, s.partition), s.partition);
  CHECK(after.energies[1] == doctest::Approx(4.0 * before.energies[1]));
  CHECK(after.energies[0] == doctest::Approx(before.energies[0]));
  const Vector twice = spectral_edit(s.basis, spectral_edit(s.basis, x, {{0, 0.5}, {2, 3.0}}, s.partition),
                                     {{0, 4.0}, {1, -1.0}}, s.partition);
  const Vector once = spectral_edit(s.basis, x, {{0, 2.0}, {1, -1.0}, {2, 3.0}}, s.partition);
  CHECK((twice - once).norm() <= 1e-10 * (1 + once.norm()));
  CHECK_THROWS_AS(spectral_edit(s.basis, x, {{1, 2.0}, {1, 3.0}}, s.partition), Error);
}

TEST_CASE("cospectral_loss is a squared metric") {
  CHECK(cospectral_loss(Vector::Unit(3, 0), Vector::Unit(3, 1)) == 2.0);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector a = oracle::gaussian(10, rng);
    const Vector b = oracle::gaussian(10, rng);
    const Vector c = oracle::gaussian(10, rng);
    CHECK(cospectral_loss(a, a) == 0.0);
    CHECK(cospectral_loss(a, b) == cospectral_loss(b, a));
    CHECK(cospectral_loss(a, b) > 0.0);
    // ||a-b||^2 + ||a+b-2c||^2 = 2||a-c||^2 + 2||b-c||^2 with midpoint m = (a+b)/2
    const Vector m = 0.5 * (a + b);
    const double lhs = cospectral_loss(a, c) + cospectral_loss(b, c);
    const double rhs = 2.0 * cospectral_loss(m, c) + 0.5 * cospectral_loss(a, b);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + lhs));
  }
  CHECK_THROWS_AS(cospectral_loss(Vector::Ones(3), Vector::Ones(4)), Error);
}

TEST_CASE("spectrum resampling and cross-size transfer") {
  CHECK(transfer_slot(0.0, 2.0) == 0);
  CHECK(transfer_slot(2.0, 2.0) == kTransferGrid - 1);
  CHECK(transfer_slot(5.0, 2.0) == kTransferGrid - 1);
  CHECK(transfer_slot(1.0, 2.0) == 32);
  std::mt19937_64 rng(14);
  const Setup a = setup(12, 0.4, 15);
  const Setup b = setup(20, 0.3, 16);
  const Vector xa = oracle::gaussian(12, rng);
  const Vector xb = oracle::gaussian(20, rng);
  const Vector prof = resample_spectrum(a.basis.eigenvalues(), a.basis.forward(xa), a.basis.max_eigenvalue());
  CHECK(prof.size() == kTransferGrid);
  CHECK(prof.norm() == doctest::Approx(xa.norm()));
  CHECK(prof.minCoeff() >= 0.0);
  const double same = cospectral_transfer_loss(a.basis, xa, a.basis.max_eigenvalue(), a.basis, xa, a.basis.max_eigenvalue());
  CHECK(same == 0.0);
  const double ab = cospectral_transfer_loss(a.basis, xa, a.basis.max_eigenvalue(), b.basis, xb, b.basis.max_eigenvalue());
  const double ba = cospectral_transfer_loss(b.basis, xb, b.basis.max_eigenvalue(), a.basis, xa, a.basis.max_eigenvalue());
  CHECK(std::isfinite(ab));
  CHECK(ab == ba);
  CHECK(ab >= 0.0);
  const Vector xa2 = oracle::gaussian(12, rng);
  const double eq = cospectral_transfer_loss(a.basis, xa, 1.0, a.basis, xa2, 1.0);
  CHECK(eq == doctest::Approx((a.basis.forward(xa) - a.basis.forward(xa2)).squaredNorm()));
}

}
