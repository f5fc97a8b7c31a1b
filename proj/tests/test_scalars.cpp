#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quadcomp/scalars.hpp"

using namespace quadcomp;

TEST_CASE("rational square test") {
  FieldRef Q = Field::rationals();
  CHECK(is_square(Q, Scalar(Q, mpq_class(4, 9))));
  CHECK_FALSE(is_square(Q, Scalar(Q, -1L)));
  CHECK_FALSE(is_square(Q, Scalar(Q, 2L)));
  CHECK(is_square(Q, Scalar(Q, 0L)));
}

TEST_CASE("square test refuses oversized input") {
  FieldRef Q = Field::rationals();
  mpq_class big(mpz_class(1) << 70);
  CHECK_THROWS_AS(is_square(Q, Scalar(Q, big)), Error);
  try {
    squarefree_part(mpq_class((mpz_class(1) << 64) + 1));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InputTooLarge);
  }
}

TEST_CASE("finite field squares agree with exhaustive search") {
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 1}, {3, 2}, {7, 1}, {2, 3}}) {
    FieldRef F = Field::finite(p, k);
    std::vector<bool> sq(F->order(), false);
    for (std::uint32_t y = 0; y < F->order(); ++y) {
      Scalar s = Scalar::from_index(F, y);
      sq[(s * s).index()] = true;
    }
    for (std::uint32_t x = 0; x < F->order(); ++x) CHECK(is_square(F, Scalar::from_index(F, x)) == sq[x]);
  }
  FieldRef F3 = Field::finite(3);
  CHECK_FALSE(is_square(F3, Scalar(F3, 2L)));
}

TEST_CASE("finite field axioms on GF(9) and GF(8)") {
  for (FieldRef F : {Field::finite(3, 2), Field::finite(2, 3)}) {
    for (std::uint32_t a = 0; a < F->order(); ++a)
      for (std::uint32_t b = 0; b < F->order(); ++b) {
        Scalar x = Scalar::from_index(F, a), y = Scalar::from_index(F, b);
        CHECK(x * y == y * x);
        CHECK((x + y) - y == x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
        Scalar z = Scalar::from_index(F, (a + b) % F->order());
        CHECK(x * (y + z) == x * y + x * z);
      }
  }
}

TEST_CASE("field parsing and literals") {
  CHECK(Field::parse("Q")->is_rational());
  CHECK(Field::parse("GF(3)") == Field::finite(3));
  CHECK(Field::parse("GF(2^2)")->order() == 4);
  CHECK_THROWS_AS(Field::parse("GF(4)"), Error);
  CHECK_THROWS_AS(Field::parse("R"), Error);
  FieldRef Q = Field::rationals();
  CHECK(Scalar::parse(Q, "-6/4").to_string() == "-3/2");
  CHECK(Scalar::parse(Q, "5").to_string() == "5");
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse(Q, "abc"), Error);
  FieldRef F4 = Field::finite(2, 2);
  CHECK(Scalar::parse(F4, "1:1").index() == 3);
}

TEST_CASE("Hilbert symbol examples") {
  CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::finite(2)) == -1);
  CHECK(oracle::hilbert_bruteforce(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(2, 3, Place::finite(3)) == -1);
  CHECK(oracle::hilbert_bruteforce(2, 3, 3) == -1);
  for (long b : {-7L, 2L, 3L, 5L, 30L})
    for (Place v : {Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(5)})
      CHECK(hilbert_symbol(1, b, v) == 1);
}

TEST_CASE("Hilbert symbol agrees with the congruence oracle") {
  for (long a = -30; a <= 30; ++a)
    for (long b = -30; b <= 30; ++b) {
      if (a == 0 || b == 0) continue;
      for (long p = 2; p <= 50; ++p) {
        if (!oracle::is_prime(p)) continue;
        if (p != 2 && (a % p) && (b % p)) continue;  // units at odd p: symbol is +1 on both sides
        CHECK(hilbert_symbol(a, b, Place::finite(p)) == oracle::hilbert_bruteforce(a, b, p));
      }
    }
}

TEST_CASE("Hilbert symbol is symmetric, bimultiplicative, satisfies the product formula") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-60, 60);
  for (int trial = 0; trial < 300; ++trial) {
    long a = dist(rng), a2 = dist(rng), b = dist(rng);
    if (!a || !a2 || !b) continue;
    for (Place v : relevant_places({a, a2, b})) {
      CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
      CHECK(hilbert_symbol(mpq_class(a * a2), b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v));
    }
  }
  for (long a = -50; a <= 50; ++a)
    for (long b = -50; b <= 50; ++b) {
      if (!a || !b) continue;
      int prod = 1;
      for (Place v : relevant_places({a, b})) prod *= hilbert_symbol(a, b, v);
      CHECK(prod == 1);
    }
}

TEST_CASE("rational arguments use the square class") {
  CHECK(hilbert_symbol(mpq_class(1, 2), 3, Place::finite(3)) == hilbert_symbol(2, 3, Place::finite(3)));
  CHECK(hilbert_symbol(mpq_class(-4, 9), mpq_class(-1, 4), Place::infinity()) == -1);
}

TEST_CASE("local squares") {
  CHECK(is_local_square(-1, Place::finite(5)));
  CHECK_FALSE(is_local_square(-1, Place::finite(3)));
  CHECK(is_local_square(17, Place::finite(2)));
  CHECK_FALSE(is_local_square(5, Place::finite(2)));
  CHECK_FALSE(is_local_square(-1, Place::infinity()));
}

TEST_CASE("quadratic extension descriptors") {
  FieldRef Q = Field::rationals();
  CHECK(quad_ext_info(Q, Scalar(Q, 1L)).split);
  CHECK(quad_ext_info(Q, Scalar(Q, 9L)).split);
  auto qi = quad_ext_info(Q, Scalar(Q, -1L));
  CHECK_FALSE(qi.split);
  CHECK(qi.splitting_at(Place::finite(5)) == LocalSplitting::Split);
  CHECK(qi.splitting_at(Place::finite(3)) == LocalSplitting::Inert);
  CHECK(qi.splitting_at(Place::finite(2)) == LocalSplitting::Ramified);
  CHECK(qi.splitting_at(Place::infinity()) == LocalSplitting::Ramified);
  auto q2 = quad_ext_info(Q, Scalar(Q, 8L));
  CHECK(*q2.squarefree == 2);
  CHECK(q2.splitting_at(Place::finite(5)) == LocalSplitting::Inert);
  CHECK(q2.splitting_at(Place::finite(7)) == LocalSplitting::Split);
  CHECK(quad_ext_info(Q, Scalar(Q, mpq_class(1, 2))).isomorphic(q2));
  CHECK_THROWS_AS(quad_ext_info(Q, Scalar(Q, 0L)), Error);

  FieldRef F2 = Field::finite(2);
  CHECK_FALSE(quad_ext_info(F2, Scalar(F2, 1L)).split);
  CHECK(quad_ext_info(F2, Scalar(F2, 0L)).split);
  FieldRef F4 = Field::finite(2, 2);
  CHECK(quad_ext_info(F4, Scalar(F4, 1L)).split);  // GF(4) contains the roots of X²+X+1
  FieldRef F3 = Field::finite(3);
  CHECK_FALSE(quad_ext_info(F3, Scalar(F3, 2L)).split);
}

TEST_CASE("splitting agrees with local squares for square-free m") {
  FieldRef Q = Field::rationals();
  for (long m : {-15L, -7L, -5L, -3L, -2L, -1L, 2L, 3L, 5L, 6L, 7L, 10L, 13L, 17L}) {
    auto e = quad_ext_info(Q, Scalar(Q, m));
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L}) {
      LocalSplitting s = e.splitting_at(Place::finite(p));
      CHECK((s == LocalSplitting::Split) == is_local_square(m, Place::finite(p)));
      CHECK((s == LocalSplitting::Ramified) == (m % p == 0 || (p == 2 && (((m % 4) + 4) % 4) != 1)));
    }
  }
}
