#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <limits>

#include "eelkit/checkers.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace eelkit;

namespace {

// Brute-force oracle comparison. Margins must agree to tol_margin; the
// witness must be the oracle's, or a genuine co-minimizer (the oracle's own
// evaluation at the checker's witness ties the oracle minimum). Ties happen
// at exactly degenerate configurations where rounding picks the winner.
struct Agreement {
  int mismatches = 0;
  double worst_gap = 0.0;

  void compare(const std::string& what, const std::string& name, const CheckReport& r,
               const oracle::Verdict& o, double tol_margin,
               const std::function<double(const std::vector<std::size_t>&)>& margin_at) {
    const bool oracle_passed = o.passed(r.tol);
    const double gap = (std::isinf(r.worst_margin) && std::isinf(o.margin))
                           ? 0.0
                           : std::fabs(r.worst_margin - o.margin);
    worst_gap = std::max(worst_gap, gap);
    bool witness_ok = r.witness == o.witness;
    if (!witness_ok && !r.witness.empty())
      witness_ok = margin_at(r.witness) - o.margin <= tol_margin;
    if (r.passed != oracle_passed || gap > tol_margin || !witness_ok) {
      ++mismatches;
      UNSCOPED_INFO(what << " disagrees on " << name << ": margin gap " << gap << ", verdicts "
                         << r.passed << "/" << oracle_passed);
    }
  }
};

}  // namespace

TEST_CASE("checkers match brute-force oracles on the small corpus", "[oracle]") {
  const auto small = corpus::small_corpus();
  REQUIRE(small.size() >= 100);
  const double lams[] = {0.2, 1.0 / std::sqrt(5.0), 0.9};
  Agreement agree;

  for (const auto& e : small) {
    const auto& c = e.curve;
    for (double lam : lams) {
      agree.compare("lambda_curve", e.name, check_lambda_curve(c, lam),
                    oracle::lambda_curve(c, lam), 1e-12, [&](const std::vector<std::size_t>& w) {
                      return oracle::lambda_curve_at(c, lam, w[0], w[1], w[2]);
                    });
      agree.compare("lambda_cone", e.name, check_lambda_cone(c, lam), oracle::lambda_cone(c, lam),
                    1e-12, [&](const std::vector<std::size_t>& w) {
                      return oracle::lambda_cone_at(c, lam, w[0], w[1]);
                    });
      agree.compare("noncollinear", e.name, check_noncollinear(c, lam),
                    oracle::noncollinear(c, lam), 1e-12, [&](const std::vector<std::size_t>& w) {
                      return oracle::noncollinear_at(c, lam, w[0], w[1], w[2]);
                    });
      // The oracle projects with gradient iterations, so its cone cosine is
      // only accurate to about 1e-7.
      agree.compare("conical_split", e.name, check_conical_split(c, lam),
                    oracle::conical_split(c, lam), 1e-7, [&](const std::vector<std::size_t>& w) {
                      return oracle::conical_split_at(c, lam, w[0]);
                    });
    }
    agree.compare("self_expanded", e.name, check_self_expanded(c), oracle::self_expanded(c), 1e-12,
                  [&](const std::vector<std::size_t>& w) {
                    return oracle::self_expanded_at(c, w[0], w[1], w[2]);
                  });
    agree.compare("self_contracted", e.name, check_self_contracted(c), oracle::self_contracted(c),
                  1e-12, [&](const std::vector<std::size_t>& w) {
                    return oracle::self_contracted_at(c, w[0], w[1], w[2]);
                  });
    for (std::size_t start : {std::size_t{0}, c.count() / 2}) {
      agree.compare("lyapunov", e.name, check_lyapunov(c, 0.5, start), oracle::lyapunov(c, 0.5, start),
                    1e-12, [&](const std::vector<std::size_t>& w) {
                      return oracle::lyapunov_at(c, 0.5, start, w[0], w[1]);
                    });
    }
  }

  CHECK(agree.mismatches == 0);
  CHECK(agree.worst_gap <= 1e-12);
}

TEST_CASE("oracle verdict helper applies the same pass rule", "[oracle]") {
  oracle::Verdict v;
  v.margin = -1e-10;
  CHECK(v.passed(1e-9));
  v.margin = -1e-8;
  CHECK_FALSE(v.passed(1e-9));
  v.margin = std::numeric_limits<double>::infinity();
  CHECK(v.passed(1e-9));
}
