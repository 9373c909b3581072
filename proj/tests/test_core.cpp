#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ordergrowth/gamma.hpp"
#include "ordergrowth/order_space.hpp"

namespace {

// Independent oracle: scan p upward over a window instead of bracketing.
long long gamma_by_scan(long long g, long long h, long long n) {
  for (long long p = -300; p <= 300; ++p)
    if (g * p >= h * n) return p;
  throw std::runtime_error("oracle window too small");
}

}  // namespace

TEST_CASE("gamma_n matches hand-computed values on the integers") {
  const auto m = og::integers_model();
  CHECK(og::gamma_n(m, 2ll, 3ll, 5) == 8);    // least p with 2p >= 15
  CHECK(og::gamma_n(m, 1ll, 1ll, 7) == 7);
  CHECK(og::gamma_n(m, 16ll, 24ll, 16) == 24);
  CHECK(og::gamma_n(m, 2ll, -3ll, 5) == -7);  // least p with 2p >= -15
  CHECK(og::gamma_n(m, 3ll, 0ll, 11) == 0);
}

TEST_CASE("gamma_n agrees with a direct predicate scan") {
  const auto m = og::integers_model();
  for (long long g : {1, 2, 3, 7})
    for (long long h : {-5, -1, 0, 1, 2, 9})
      for (long long n : {1, 2, 3, 5, 8}) {
        CAPTURE(g); CAPTURE(h); CAPTURE(n);
        CHECK(og::gamma_n(m, g, h, n) == gamma_by_scan(g, h, n));
      }
}

TEST_CASE("gamma_n repairs wrong hints") {
  const auto m = og::integers_model();
  og::GammaOptions high, low, tight;
  high.hint = {100, 200};
  low.hint = {-50, -40};
  tight.hint = {7, 8};
  CHECK(og::gamma_n(m, 2ll, 3ll, 5, high) == 8);
  CHECK(og::gamma_n(m, 2ll, 3ll, 5, low) == 8);
  CHECK(og::gamma_n(m, 2ll, 3ll, 5, tight) == 8);
}

TEST_CASE("gamma_n rejects bad inputs") {
  const auto m = og::integers_model();
  CHECK_THROWS_AS(og::gamma_n(m, -1ll, 3ll, 5), og::DomainError);   // g < e
  CHECK_THROWS_AS(og::gamma_n(m, 2ll, 3ll, 0), og::DomainError);    // n < 1
  CHECK_THROWS_AS(og::gamma_n(m, 0ll, 1ll, 1), og::BudgetExceeded); // 0p >= 1 never
}

TEST_CASE("relative_growth emits the certified doubling table") {
  const auto m = og::integers_model();
  const og::GrowthTrace tr = og::relative_growth(m, 16ll, 24ll, 16);
  REQUIRE(tr.rows.size() == 5);  // 1, 2, 4, 8, 16
  const og::GrowthRow& last = tr.rows.back();
  CHECK(last.n == 16);
  CHECK(last.gamma == 24);
  CHECK(last.quotient == 1.5);
  CHECK(last.lower == 1.5);
  CHECK(last.upper == 1.5);
  CHECK(tr.estimate.certified);
  CHECK(tr.estimate.value == 1.5);

  // quotients are non-increasing along the doubling schedule
  for (size_t i = 1; i < tr.rows.size(); ++i)
    CHECK(tr.rows[i].quotient <= tr.rows[i - 1].quotient + 1e-15);
}

TEST_CASE("growth brackets contain the true limit h/g") {
  const auto m = og::integers_model();
  for (long long g : {1, 2, 7, 16})
    for (long long h : {1, 3, 24, 50}) {
      CAPTURE(g); CAPTURE(h);
      const double limit = static_cast<double>(h) / static_cast<double>(g);
      const auto est = og::relative_growth(m, g, h, 64).estimate;
      CHECK(est.lower <= limit + 1e-12);
      CHECK(est.upper >= limit - 1e-12);
      CHECK(est.lower <= est.value + 1e-12);
      CHECK(est.value <= est.upper + 1e-12);
    }
}

TEST_CASE("relative_growth without a certificate still brackets the limit") {
  auto m = og::integers_model();
  m.certificate.reset();
  const og::GrowthTrace tr = og::relative_growth(m, 16ll, 24ll, 16);
  CHECK(!tr.estimate.certified);
  CHECK(tr.estimate.lower <= 1.5);
  CHECK(tr.estimate.upper >= 1.5);
  CHECK(tr.rows.back().lower == doctest::Approx(1.5 - 1.0 / 16));
  CHECK(tr.rows.back().upper == doctest::Approx(1.5));
}

TEST_CASE("is_dominant classifies integer elements") {
  const auto m = og::integers_model();
  const std::vector<long long> probes{1, 5, 100};
  CHECK(og::is_dominant(m, 2ll, probes, 64).state == og::TriState::yes);
  CHECK(og::is_dominant(m, 1ll, probes, 256).state == og::TriState::yes);
  CHECK(og::is_dominant(m, 0ll, probes, 64).state == og::TriState::no);   // g = e
  CHECK(og::is_dominant(m, -3ll, probes, 64).state == og::TriState::no);  // g < e
  CHECK(og::is_dominant(m, 1ll, {1000000}, 8).state == og::TriState::unknown);
  CHECK_THROWS_AS(og::is_dominant(m, 2ll, std::vector<long long>{}, 8), og::DomainError);
  CHECK_THROWS_AS(og::is_dominant(m, 2ll, probes, 0), og::DomainError);
}

TEST_CASE("order_distance is the log of the larger growth rate") {
  const auto m = og::integers_model();
  const auto d = og::order_distance(m, 2ll, 3ll, 256);
  CHECK(d.value == doctest::Approx(std::log(1.5)));
  CHECK(d.certified);
  CHECK(d.lower <= d.value + 1e-12);
  CHECK(d.value <= d.upper + 1e-12);

  const auto sym = og::order_distance(m, 3ll, 2ll, 256);
  CHECK(sym.value == doctest::Approx(d.value));

  const auto self = og::order_distance(m, 5ll, 5ll, 64);
  CHECK(self.value == doctest::Approx(0.0));

  // asymmetric pair where one quotient is exactly a power ratio
  const auto far = og::order_distance(m, 1000ll, 1ll, 64);
  CHECK(far.value == doctest::Approx(std::log(1000.0)));
}

TEST_CASE("order_distance refuses logs of nonpositive brackets") {
  auto m = og::integers_model();
  m.certificate.reset();
  // gamma_64(1000, 1) = 1, so the uncertified lower end 1/64 - 1/64 hits zero
  CHECK_THROWS_AS(og::order_distance(m, 1000ll, 1ll, 64), og::DomainError);
}

TEST_CASE("check_order_axioms passes on the honest integers") {
  const auto m = og::integers_model();
  const std::vector<long long> sample{-3, -1, 0, 0, 1, 2, 5, 9};
  const auto rep = og::check_order_axioms(m, sample, 2000);
  CHECK(rep.ok());
  CHECK(rep.uncertain == 0);
  CHECK(rep.trials == 2000);
}

TEST_CASE("check_order_axioms flags a corrupted equality oracle") {
  auto m = og::integers_model();
  m.equal = [](long long, long long) { return false; };
  const std::vector<long long> sample{0, 0, 1, 2};
  const auto rep = og::check_order_axioms(m, sample, 500);
  CHECK(!rep.ok());  // a <= b <= a with equal() lying
}

TEST_CASE("check_order_axioms flags a non-invariant order") {
  auto m = og::integers_model();
  m.leq = [](long long a, long long b) { return a <= b || (a == 5 && b == 3); };
  const std::vector<long long> sample{3, 4, 5, 6, 1};
  const auto rep = og::check_order_axioms(m, sample, 2000);
  CHECK(!rep.ok());
  CHECK_THROWS_AS(og::check_order_axioms(m, std::vector<long long>{}, 10), og::DomainError);
}

TEST_CASE("verify_collapse vanishes when the order is ruled by a homomorphism") {
  const auto m = og::integers_model();
  REQUIRE(m.certificate.has_value());
  const double worst = og::verify_collapse(m, m.certificate->f, {2, 3, 6}, 256);
  CHECK(worst <= 1e-9);
  CHECK_THROWS_AS(og::verify_collapse(m, m.certificate->f, {2}, 64), og::DomainError);
}
