#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eelkit/constructions.hpp"

using namespace eelkit;

namespace {
// Grid size used by these tests; large enough that all closed-form-dominated
// lemmas report their exact analytic supremum, small enough to stay fast.
constexpr std::size_t kGrid = 2000;
}  // namespace

TEST_CASE("certificate records echo their inputs", "[certify]") {
  const EelParams p = eel_params();
  CertificationRecord rec = certify_lemma(CertLemma::z_axis, p, kGrid);
  CHECK(rec.lemma == "z_axis");
  CHECK(rec.mu == p.mu);
  CHECK(rec.N == p.N);
  CHECK(rec.M == p.M);
  CHECK(rec.lambda == p.lambda);
  CHECK(rec.grid == kGrid);
  CHECK(cert_lemma_name(CertLemma::helix_self_expanded) == std::string("helix_self_expanded"));
  CHECK(cert_lemma_name(CertLemma::big_cylinder) == std::string("big_cylinder"));
}

TEST_CASE("helix self-expansion certificate has a thin negative margin", "[certify]") {
  // The binding constraint sits near the first negative lobe of sin; the
  // value below was frozen from an independent scan at this grid size.
  const EelParams p = eel_params();
  CertificationRecord rec = certify_lemma(CertLemma::helix_self_expanded, p, kGrid);
  CHECK(rec.max_violation < 0.0);
  CHECK(rec.max_violation == Catch::Approx(-7.01863142955e-05).epsilon(1e-9));
  REQUIRE(rec.argmax.size() == 1);
  CHECK(rec.argmax[0] == Catch::Approx(-4.4932).margin(0.01));
}

TEST_CASE("z-axis certificate equals its closed-form supremum", "[certify]") {
  const EelParams p = eel_params();
  CertificationRecord rec = certify_lemma(CertLemma::z_axis, p, kGrid);
  const double closed = 1.0 - std::sqrt(1.0 + p.mu * p.mu) / (p.mu * std::sqrt(5.0));
  CHECK(rec.max_violation == closed);
  CHECK(rec.max_violation <= -0.05);  // comfortable slack at the derived mu
}

TEST_CASE("small-cylinder certificate equals its closed-form supremum", "[certify]") {
  const EelParams p = eel_params();
  CertificationRecord rec = certify_lemma(CertLemma::small_cylinder, p, kGrid);
  const double mu2 = p.mu * p.mu;
  const double nm1 = static_cast<double>(p.N - 1);
  const double closed =
      std::sqrt(1.0 + mu2 * nm1 * nm1) / (nm1 * std::sqrt(1.0 + mu2)) - 1.0 / std::sqrt(5.0);
  CHECK(rec.max_violation == closed);
  CHECK(rec.max_violation < 0.0);
  CHECK(rec.max_violation == Catch::Approx(-0.00535236700131).epsilon(1e-9));
}

TEST_CASE("radial-segment certificate is tight at the contact point", "[certify]") {
  // Equality holds at tau = 0, x = 1 (the segment endpoint on the spiral), so
  // the best possible certificate value is exactly zero.
  const EelParams p = eel_params();
  CertificationRecord rec = certify_lemma(CertLemma::radial_segment, p, kGrid);
  CHECK(rec.max_violation == 0.0);
  CHECK(std::signbit(rec.max_violation));  // approaches from below
  REQUIRE(rec.argmax.size() == 2);
  CHECK(rec.argmax[0] == 0.0);
  CHECK(rec.argmax[1] == 1.0);
}

TEST_CASE("big-cylinder certificate equals its corner value", "[certify]") {
  const EelParams p = eel_params();
  CertificationRecord rec = certify_lemma(CertLemma::big_cylinder, p, kGrid);
  const double corner = 1.0 / p.M + p.mu - std::sqrt((1.0 + p.mu * p.mu) / 5.0);
  CHECK(rec.max_violation == corner);
  CHECK(rec.max_violation == Catch::Approx(-0.000990576516865).epsilon(1e-9));
  REQUIRE(rec.argmax.size() == 2);
  CHECK(rec.argmax[0] == 1.0);
  CHECK(rec.argmax[1] == 1.0);
}

TEST_CASE("certification fails honestly for constants that break the spiral", "[certify]") {
  // mu = 0.1 violates mu^2 >= sup(-sin t / t): the helix there is not
  // self-expanded and the certificate must report a positive violation.
  EelParams bad;
  bad.mu = 0.1;
  bad.N = derive_N(0.1);
  bad.M = derive_M(0.1);
  bad.lambda = 1.0 / std::sqrt(5.0);
  bad.alpha = std::acos(bad.lambda);
  CHECK(bad.M == 4.0);
  CHECK_THROWS_AS(validate_eel_params(bad), DomainError);

  CertificationRecord rec = certify_lemma(CertLemma::helix_self_expanded, bad, kGrid);
  CHECK(rec.max_violation > 0.5);
  CHECK(rec.max_violation < 1.0);
  REQUIRE(rec.argmax.size() == 1);
  // sup of sin t + mu^2 t over t < 0 sits at -(3 pi / 2 - mu^2), up to the
  // grid resolution of about 0.053 on this wide domain.
  CHECK(rec.argmax[0] == Catch::Approx(-4.7024).margin(0.06));
}

TEST_CASE("certify_lemma validates structure only", "[certify]") {
  const EelParams p = eel_params();
  CHECK_THROWS_AS(certify_lemma(CertLemma::z_axis, p, 1), DomainError);
  CHECK_THROWS_AS(certify_lemma(CertLemma::z_axis, p, 0), DomainError);
  auto broken = [&](auto mutate) {
    EelParams q = p;
    mutate(q);
    return q;
  };
  CHECK_THROWS_AS(certify_lemma(CertLemma::z_axis, broken([](EelParams& q) { q.mu = 0.6; }), kGrid),
                  DomainError);
  CHECK_THROWS_AS(certify_lemma(CertLemma::z_axis, broken([](EelParams& q) { q.N = 1; }), kGrid),
                  DomainError);
  CHECK_THROWS_AS(
      certify_lemma(CertLemma::z_axis, broken([](EelParams& q) { q.lambda = 1.0; }), kGrid),
      DomainError);
}

TEST_CASE("certificates are identical across thread counts", "[certify]") {
  const EelParams p = eel_params();
  for (CertLemma lemma : {CertLemma::helix_self_expanded, CertLemma::z_axis,
                          CertLemma::small_cylinder, CertLemma::radial_segment,
                          CertLemma::big_cylinder}) {
    CertificationRecord one = certify_lemma(lemma, p, 500, 1);
    CertificationRecord many = certify_lemma(lemma, p, 500, 5);
    CHECK(one.max_violation == many.max_violation);
    CHECK(one.argmax == many.argmax);
  }
}
