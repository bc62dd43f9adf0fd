#include <cmath>
#include <fstream>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <doctest.h>

#include "efl/arith.hpp"
#include "efl/laurent.hpp"
#include "efl/testfn.hpp"
#include "efl/zeta.hpp"
#include "support.hpp"

using namespace efl;
using efl::test::kind_of;

namespace {

// Lambda(n) by trial factorization.
double trial_lambda(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

const VonMangoldtTable& big_table() {
  static const VonMangoldtTable t = sieve(10'000'000);
  return t;
}

}  // namespace

TEST_SUITE("arith-measure") {

TEST_CASE("sieve small tables") {
  const VonMangoldtTable t = sieve(10);
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);
  const std::vector<double> want{0, l2, l3, l2, l5, 0, l7, l2, l3, 0};
  REQUIRE(t.limit() == 10);
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(t.weights()[i] == want[i]);
  const VonMangoldtTable one = sieve(1);
  REQUIRE(one.limit() == 1);
  CHECK(one.weight(1) == 0.0);
}

TEST_CASE("psi(100) from a hand prime list") {
  const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  double want = 0.0;
  for (int p : primes) {
    for (long q = p; q <= 100; q *= p) want += std::log(static_cast<double>(p));
  }
  const VonMangoldtTable t = sieve(100);
  CHECK(std::abs(psi_arith(100.0, t) - want) < 1e-12);
  CHECK(std::abs(want - 94.0453) < 1e-4);
}

TEST_CASE("two sieves agree exactly") {
  const VonMangoldtTable t = sieve(100000);
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    if (t.weight(n) != trial_lambda(n)) FAIL("mismatch at n = " << n);
  }
}

TEST_CASE("psi_arith") {
  const VonMangoldtTable t = sieve(1'000'000);
  CHECK(psi_arith(1.5, t) == 0.0);
  CHECK(psi_arith(0.0, t) == 0.0);
  const double want = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(std::abs(psi_arith(10.5, t) - want) < 1e-14);
  CHECK(std::abs(psi_arith(10.5, t) - 7.8320141) < 1e-7);
  CHECK(std::abs(psi_arith(1e6, t) - 1e6) < 1350.0);
  CHECK(kind_of([&] { psi_arith(1e6 + 1, t); }) == ErrorKind::TableTooSmall);
}

TEST_CASE("psi is a non-decreasing step function with jumps Lambda(n)") {
  const VonMangoldtTable t = sieve(5000);
  double prev = 0.0;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const double before = psi_arith(n - 0.5, t);
    const double at = psi_arith(static_cast<double>(n), t);
    CHECK(before >= prev);
    CHECK(std::abs((at - before) - t.weight(n)) < 1e-9);
    prev = at;
  }
}

TEST_CASE("atomic density") {
  const AtomicDensity d = atomic_density(sieve(2000));
  REQUIRE(!d.atoms.empty());
  for (std::size_t i = 0; i < d.atoms.size(); ++i) {
    CHECK(d.atoms[i].weight > 0.0);
    CHECK(d.atoms[i].location == doctest::Approx(std::log(static_cast<double>(d.atoms[i].n))));
    if (i) CHECK(d.atoms[i].location > d.atoms[i - 1].location);
  }
}

TEST_CASE("memory budget") {
  SieveOptions opts;
  opts.memory_budget_bytes = 1000;
  CHECK(kind_of([&] { sieve(10000, opts); }) == ErrorKind::LimitTooLarge);
}

TEST_CASE("prime expectation cross-checks") {
  const VonMangoldtTable& t = big_table();
  const PrimeExpectation one = prime_expectation(poly_tf(0), 2.0, t);
  CHECK(!one.formal_divergent);
  CHECK(std::abs(one.corrected() - neg_zeta_log_deriv(2.0)) < 1e-7);

  // <t n^-s> = -f'(2)
  const PrimeExpectation lin = prime_expectation(poly_tf(1), 2.0, t);
  const TaylorExpansion d = derivatives_at(2.0, 1);
  CHECK(std::abs(lin.corrected() + d.coefficients[1]) < 1e-6);

  CHECK(prime_expectation(poly_tf(0), 0.5, sieve(100)).formal_divergent);
  CHECK(!prime_expectation(exp_tf(-1.0), 0.5, sieve(100)).formal_divergent);
}

TEST_CASE("prime expectation stays within its tail estimate") {
  for (std::uint64_t N : {10000ULL, 100000ULL, 1000000ULL}) {
    const VonMangoldtTable t = sieve(N);
    for (double s : {1.5, 2.0, 3.0}) {
      const PrimeExpectation pe = prime_expectation(poly_tf(0), s, t);
      CHECK_MESSAGE(std::abs(pe.value - neg_zeta_log_deriv(s)) <= 2.0 * std::abs(pe.tail_estimate),
                    "N = " << N << " s = " << s);
    }
  }
}

TEST_CASE("eta limit partial sums") {
  const VonMangoldtTable& t = big_table();
  const double gamma = boost::math::constants::euler<double>();
  CHECK(std::abs(eta_limit_partial(0, 1e7, t) + gamma) < 0.01);
  CHECK(std::abs(eta_limit_partial(0, 2.0, t) + std::log(2.0) / 2.0) < 1e-15);
  const LaurentCoefficients c = laurent_coefficients(4);
  CHECK(std::abs(eta_limit_partial(1, 1e7, t) + c.eta[1]) < 0.05);
  CHECK(kind_of([&] { eta_limit_partial(0, 2e7, t); }) == ErrorKind::TableTooSmall);

  // steps follow (psi(x) - x)/x: psi(1e5) - 1e5 = 51.56, psi(1e6) - 1e6 = -413.40
  CHECK(std::abs(psi_arith(1e5, t) - 1e5 - 51.564) < 1e-3);
  CHECK(std::abs(psi_arith(1e6, t) - 1e6 + 413.403) < 1e-3);
  for (int k = 0; k <= 3; ++k) {
    std::vector<double> steps;
    for (double x : {1e4, 1e5, 1e6}) {
      const double step = std::abs(eta_limit_partial(k, 2 * x, t) - eta_limit_partial(k, x, t));
      CHECK_MESSAGE(step < std::pow(std::log(2 * x), k) / std::sqrt(x), "k = " << k << " x = " << x);
      steps.push_back(step);
    }
    CHECK_MESSAGE(steps[2] < steps[0], "k = " << k);
    CHECK_MESSAGE(steps[1] < steps[0], "k = " << k);
  }
}

TEST_CASE("stieltjes partial sums") {
  CHECK(stieltjes_partial(0, 1.0) == 1.0);
  CHECK(std::abs(stieltjes_partial_corrected(0, 1e6) - boost::math::constants::euler<double>()) < 1e-6);
  CHECK(std::abs(stieltjes_partial_corrected(1, 1e6) + 0.0728158) < 1e-4);
}

TEST_CASE("table cache round trip") {
  const auto dir = test::scratch_dir("vmt");
  const VonMangoldtTable t = sieve(20000);
  write_table_cache(dir / "t.vmt", t);
  const VonMangoldtTable back = read_table_cache(dir / "t.vmt");
  REQUIRE(back.limit() == t.limit());
  for (std::uint64_t n = 1; n <= t.limit(); ++n) CHECK(back.weight(n) == t.weight(n));

  {
    std::fstream f(dir / "t.vmt", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(12 + 8 * 6);  // weight of n = 7
    const double wrong = 1.0;
    f.write(reinterpret_cast<const char*>(&wrong), sizeof wrong);
  }
  CHECK(kind_of([&] { read_table_cache(dir / "t.vmt"); }) == ErrorKind::ParseError);
  std::ofstream(dir / "bad.vmt") << "nope";
  CHECK(kind_of([&] { read_table_cache(dir / "bad.vmt"); }) == ErrorKind::ParseError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
